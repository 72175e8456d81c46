"""Train on the bundled three-sentence sample and print what fell out.

Small enough to finish in a second or two; useful as a smoke check that the
whole library hangs together, and as a minimal end-to-end reference.

    python3 scripts/train_sample.py --epochs 500 --dim 16 --seed 1
"""

from __future__ import annotations

import argparse

from epic_embed.corpus import build_vocabulary, top_frequencies
from epic_embed.embed import TrainConfig, evaluate_loss, init_model, train
from epic_embed.normalize import load_stopwords, normalize_corpus
from epic_embed.resources import data_path
from epic_embed.similarity import most_similar
from epic_embed.textprep import read_token_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mode", choices=("skipgram", "cbow"), default="skipgram")
    parser.add_argument("--objective", choices=("softmax", "negative_sampling"),
                        default="softmax")
    parser.add_argument("--dim", type=int, default=16)
    parser.add_argument("--window", type=int, default=2)
    parser.add_argument("--epochs", type=int, default=500)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    corpus = read_token_corpus(data_path("mini_corpus.txt"))
    corpus = normalize_corpus(corpus, "none", load_stopwords())
    vocab = build_vocabulary(corpus, min_count=1, punct_policy="paper_compat")
    print(f"{len(vocab)} words; most frequent: {top_frequencies(corpus, 4)}")

    config = TrainConfig(
        mode=args.mode, objective=args.objective, window=args.window,
        epochs=args.epochs, seed=args.seed, dim=args.dim,
    )
    before = evaluate_loss(corpus, init_model(vocab, config.dim, config.seed), config)
    model = train(corpus, vocab, config)
    after = evaluate_loss(corpus, model, config)
    print(f"mean loss {before:.4f} -> {after:.4f}")

    for word in ("wrathful", "gratified", "pritha"):
        neighbors = most_similar(model, word, n=3).neighbors
        listing = ", ".join(f"{w} ({score:+.3f})" for w, score in neighbors)
        print(f"{word}: {listing}")


if __name__ == "__main__":
    main()
