"""End-to-end experiment: e-book in, embeddings and neighbor tables out.

Runs the whole chain in memory (no workspace caching; use the epic-embed CLI
when you want resumable stages) and reports corpus statistics along the way.
Training a full-length book with the softmax objective is slow; stick with
negative sampling unless the corpus is tiny.

    python3 scripts/embed_ebook.py book.epub --epochs 3 --threads 4 \
        --query arjuna --query krishna --save vectors/book.w2vm
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from epic_embed.corpus import build_vocabulary, length_distribution, top_frequencies
from epic_embed.embed import TrainConfig, save_model, train
from epic_embed.ingest import load_sections
from epic_embed.normalize import load_stopwords, normalize_corpus
from epic_embed.similarity import most_similar
from epic_embed.textprep import (
    clean_text,
    sentence_lengths,
    split_sentences,
    tokenize_corpus,
)


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("book", help="EPUB or plain-text file")
    parser.add_argument("--mode", choices=("skipgram", "cbow"), default="skipgram")
    parser.add_argument("--objective", choices=("softmax", "negative_sampling"),
                        default="negative_sampling")
    parser.add_argument("--normalize", choices=("stem", "lemma", "none"),
                        default="lemma")
    parser.add_argument("--min-count", type=int, default=5)
    parser.add_argument("--dim", type=int, default=100)
    parser.add_argument("--window", type=int, default=5)
    parser.add_argument("--negatives", type=int, default=5)
    parser.add_argument("--epochs", type=int, default=5)
    parser.add_argument("--subsample", type=float, default=0.0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--query", action="append", default=[],
                        help="word to print neighbors for (repeatable)")
    parser.add_argument("--neighbors", type=int, default=10)
    parser.add_argument("--save", type=Path, help="write the binary model here")
    return parser.parse_args()


def main() -> None:
    args = parse_args()

    sections = load_sections(args.book)
    corpus = tokenize_corpus(split_sentences(clean_text(sections)))
    tokens = sum(len(sentence) for sentence in corpus)
    print(f"{len(sections)} sections, {len(corpus)} sentences, {tokens} tokens")

    distribution = length_distribution(sentence_lengths(corpus))
    print(f"sentence length: mean {distribution.mean:.2f}, "
          f"median {distribution.median}, max {distribution.max}")

    normalized = normalize_corpus(corpus, args.normalize, load_stopwords())
    vocab = build_vocabulary(normalized, min_count=args.min_count)
    print(f"vocabulary: {len(vocab)} words at min_count={args.min_count}")
    print(f"most frequent: {top_frequencies(normalized, 10)}")

    config = TrainConfig(
        mode=args.mode, objective=args.objective, window=args.window,
        negatives=args.negatives, epochs=args.epochs, subsample=args.subsample,
        seed=args.seed, dim=args.dim,
    )
    started = time.perf_counter()
    model = train(normalized, vocab, config, threads=args.threads)
    print(f"trained in {time.perf_counter() - started:.1f}s")

    for word in args.query:
        if word not in vocab:
            print(f"{word}: not in vocabulary")
            continue
        neighbors = most_similar(model, word, n=args.neighbors).neighbors
        listing = ", ".join(f"{w} ({score:.3f})" for w, score in neighbors)
        print(f"{word}: {listing}")

    if args.save:
        args.save.parent.mkdir(parents=True, exist_ok=True)
        save_model(model, args.save)
        print(f"model written to {args.save}")


if __name__ == "__main__":
    main()
