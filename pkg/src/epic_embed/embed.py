"""Shallow word-embedding training in plain numpy.

The model is a linear encoder/decoder pair: ``w_in`` holds one input vector
per vocabulary word (the embeddings handed out afterwards) and ``w_out`` the
output weights that score each word given a hidden vector. Two input modes
are supported — ``skipgram`` predicts each context word from the center word,
``cbow`` predicts the center word from the averaged context — and two
objectives: an exact softmax over the full vocabulary, and negative sampling
against a unigram^0.75 noise distribution. All updates are plain SGD; the
loss a step reports is always its pre-update value.
"""

from __future__ import annotations

import struct
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Vocabulary, read_vocabulary, write_vocabulary
from .errors import (
    EmptyTrainingData,
    IndexOutOfVocab,
    ModelFormatError,
    VocabTooSmall,
)

MODES = ("skipgram", "cbow")
OBJECTIVES = ("softmax", "negative_sampling")

_MAGIC = b"W2VM"
_FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sIQQ")

NOISE_EXPONENT = 0.75


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for :func:`train`.

    The learning rate decays linearly from ``lr_start`` to ``lr_end`` over
    the whole run. ``subsample`` enables frequency-based downsampling of very
    common words when positive (it is the threshold frequency; 0 disables).
    """

    mode: str = "skipgram"
    objective: str = "negative_sampling"
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    lr_start: float = 0.025
    lr_end: float = 0.0001
    seed: int = 1
    dim: int = 100
    subsample: float = 0.0

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, not {self.mode!r}")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}, not {self.objective!r}")
        if self.window < 1:
            raise ValueError(f"window must be at least 1, not {self.window}")
        if self.objective == "negative_sampling" and self.negatives < 1:
            raise ValueError(f"negatives must be at least 1, not {self.negatives}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be at least 1, not {self.epochs}")
        if self.dim < 1:
            raise ValueError(f"dim must be at least 1, not {self.dim}")
        if not (0 < self.lr_end <= self.lr_start):
            raise ValueError("learning rates must satisfy 0 < lr_end <= lr_start")
        if self.subsample < 0:
            raise ValueError(f"subsample must be non-negative, not {self.subsample}")


@dataclass
class EmbeddingModel:
    """Weight matrices plus the vocabulary they are indexed by.

    ``w_in`` has shape (vocabulary size, dim) and holds the embeddings;
    ``w_out`` has shape (dim, vocabulary size).
    """

    w_in: np.ndarray
    w_out: np.ndarray
    vocab: Vocabulary

    @property
    def vocab_size(self) -> int:
        return self.w_in.shape[0]

    @property
    def dim(self) -> int:
        return self.w_in.shape[1]


@dataclass(frozen=True)
class ForwardResult:
    """Hidden vector and output distribution of one forward pass."""

    hidden: np.ndarray
    probabilities: np.ndarray


def init_model(
    vocab: Vocabulary,
    dim: int,
    seed: int,
    dtype: np.dtype | type = np.float32,
) -> EmbeddingModel:
    """Create a fresh model: uniform input vectors, zero output weights.

    Input vectors are drawn uniformly from [-0.5/dim, 0.5/dim); the same seed
    always yields bit-identical matrices.
    """
    size = len(vocab)
    if size < 2:
        raise VocabTooSmall(f"need at least 2 words to train, got {size}")
    if dim < 1:
        raise ValueError(f"dim must be at least 1, not {dim}")
    rng = np.random.default_rng(seed)
    bound = 0.5 / dim
    w_in = rng.uniform(-bound, bound, size=(size, dim)).astype(dtype)
    w_out = np.zeros((dim, size), dtype=dtype)
    return EmbeddingModel(w_in=w_in, w_out=w_out, vocab=vocab)


def softmax(scores) -> np.ndarray:
    """Softmax with max subtraction, computed in float64."""
    x = np.asarray(scores, dtype=np.float64)
    shifted = x - x.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def _sigmoid(x: np.ndarray) -> np.ndarray:
    # tanh form avoids overflow warnings for large negative scores
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _check_index(index: int, size: int) -> int:
    index = int(index)
    if not 0 <= index < size:
        raise IndexOutOfVocab(index, size)
    return index


def forward(model: EmbeddingModel, context, mode: str) -> ForwardResult:
    """One forward pass over the given input word indices.

    ``skipgram`` takes exactly one index; ``cbow`` averages the input vectors
    of all given indices. Probabilities are an exact softmax over the whole
    vocabulary.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    indices = [_check_index(i, model.vocab_size) for i in context]
    if not indices:
        raise ValueError("context must hold at least one index")
    if mode == "skipgram" and len(indices) != 1:
        raise ValueError(f"skipgram takes exactly one input index, got {len(indices)}")
    hidden = _hidden_vector(model.w_in, indices)
    return ForwardResult(hidden=hidden, probabilities=softmax(hidden @ model.w_out))


def _hidden_vector(w_in: np.ndarray, inputs: list[int]) -> np.ndarray:
    if len(inputs) == 1:
        return w_in[inputs[0]].astype(np.float64)
    return w_in[inputs].mean(axis=0, dtype=np.float64)


def noise_distribution(vocab: Vocabulary) -> np.ndarray:
    """Unigram distribution raised to 0.75 and renormalized."""
    weights = np.asarray(vocab.counts, dtype=np.float64) ** NOISE_EXPONENT
    return weights / weights.sum()


def _noise_cdf(vocab: Vocabulary) -> np.ndarray:
    cdf = np.cumsum(noise_distribution(vocab))
    cdf[-1] = 1.0
    return cdf


def _draw_negatives(
    rng: np.random.Generator,
    cdf: np.ndarray,
    count: int,
    target: int,
) -> list[int]:
    # redraw on hitting the target; duplicates among negatives are fine
    negatives: list[int] = []
    while len(negatives) < count:
        draw = int(np.searchsorted(cdf, rng.random(), side="right"))
        if draw != target:
            negatives.append(draw)
    return negatives


def _apply_input_update(w_in: np.ndarray, inputs: list[int], delta: np.ndarray) -> None:
    """Subtract ``delta`` from each input row (split across cbow contexts)."""
    if len(inputs) == 1:
        w_in[inputs[0]] -= delta.astype(w_in.dtype)
    else:
        per_row = (delta / len(inputs)).astype(w_in.dtype)
        np.subtract.at(w_in, inputs, per_row)


def _softmax_step(
    model: EmbeddingModel, inputs: list[int], target: int, lr: float
) -> float:
    hidden = _hidden_vector(model.w_in, inputs)
    scores = hidden @ model.w_out
    peak = scores.max()
    log_norm = peak + np.log(np.exp(scores - peak).sum())
    loss = float(log_norm - scores[target])
    if lr != 0.0:
        errors = np.exp(scores - log_norm)
        errors[target] -= 1.0
        hidden_grad = model.w_out @ errors  # uses pre-update weights
        model.w_out -= (lr * np.outer(hidden, errors)).astype(model.w_out.dtype)
        _apply_input_update(model.w_in, inputs, lr * hidden_grad)
    return loss


def _negative_step(
    model: EmbeddingModel,
    inputs: list[int],
    target: int,
    lr: float,
    negatives: list[int],
) -> float:
    hidden = _hidden_vector(model.w_in, inputs)
    columns = [target, *negatives]
    sub = model.w_out[:, columns].astype(np.float64)
    scores = hidden @ sub
    # loss = -log sigmoid(s_target) - sum_k log sigmoid(-s_k), written with
    # logaddexp so extreme scores stay finite
    loss = float(np.logaddexp(0.0, -scores[0]) + np.logaddexp(0.0, scores[1:]).sum())
    if lr != 0.0:
        coeffs = _sigmoid(scores)
        coeffs[0] -= 1.0
        hidden_grad = sub @ coeffs
        delta = (lr * np.outer(hidden, coeffs)).astype(model.w_out.dtype)
        if len(set(columns)) == len(columns):
            model.w_out[:, columns] -= delta
        else:
            for position, column in enumerate(columns):
                model.w_out[:, column] -= delta[:, position]
        _apply_input_update(model.w_in, inputs, lr * hidden_grad)
    return loss


def train_step(
    model: EmbeddingModel,
    center: int,
    contexts,
    lr: float,
    config: TrainConfig,
    *,
    rng: np.random.Generator | None = None,
    noise_cdf: np.ndarray | None = None,
) -> float:
    """One SGD step on a (center, contexts) example; returns pre-update loss.

    In cbow mode the contexts are averaged to predict the center; in skipgram
    mode the center predicts each context in turn (sequential sub-steps whose
    losses are summed). ``lr=0`` evaluates the loss without touching the
    model. Negative sampling draws from ``rng`` — pass a freshly seeded
    generator to make the draw reproducible; by default one is created from
    ``config.seed``.
    """
    if lr < 0:
        raise ValueError(f"lr must be non-negative, not {lr}")
    size = model.vocab_size
    center = _check_index(center, size)
    contexts = [_check_index(i, size) for i in contexts]
    if not contexts:
        raise ValueError("contexts must hold at least one index")
    if config.objective == "negative_sampling":
        if rng is None:
            rng = np.random.default_rng(config.seed)
        if noise_cdf is None:
            noise_cdf = _noise_cdf(model.vocab)

    if config.mode == "cbow":
        examples = [(contexts, center)]
    else:
        examples = [([center], target) for target in contexts]

    loss = 0.0
    for inputs, target in examples:
        if config.objective == "softmax":
            loss += _softmax_step(model, inputs, target, lr)
        else:
            negatives = _draw_negatives(rng, noise_cdf, config.negatives, target)
            loss += _negative_step(model, inputs, target, lr, negatives)
    return loss


def _indexed_sentences(corpus, vocab: Vocabulary) -> list[list[int]]:
    lookup = vocab.word_to_index
    indexed = []
    for sentence in corpus:
        ids = [lookup[token] for token in sentence if token in lookup]
        if len(ids) >= 2:
            indexed.append(ids)
    return indexed


def _count_steps(sentences: list[list[int]], window: int, mode: str) -> int:
    total = 0
    for sentence in sentences:
        length = len(sentence)
        if mode == "skipgram":
            for position in range(length):
                total += min(position, window) + min(length - 1 - position, window)
        else:
            total += length
    return total


def _keep_probabilities(vocab: Vocabulary, threshold: float) -> np.ndarray | None:
    if threshold <= 0:
        return None
    counts = np.asarray(vocab.counts, dtype=np.float64)
    frequency = counts / counts.sum()
    ratio = threshold / frequency
    return np.minimum(1.0, np.sqrt(ratio) + ratio)


def train(
    corpus,
    vocab: Vocabulary,
    config: TrainConfig,
    threads: int = 1,
) -> EmbeddingModel:
    """Train a model over a tokenized corpus.

    Every sentence position is a center; its context is up to ``window``
    tokens each side, clipped at the sentence bounds. Tokens missing from the
    vocabulary are skipped before windows form. Skipgram performs one step
    per (center, context) pair, cbow one per center. With ``threads > 1``,
    sentence shards train concurrently against the shared matrices without
    locking, trading exact reproducibility for speed; results are
    deterministic only for ``threads=1``.
    """
    if threads < 1:
        raise ValueError(f"threads must be at least 1, not {threads}")
    sentences = _indexed_sentences(corpus, vocab)
    total = _count_steps(sentences, config.window, config.mode) * config.epochs
    if total == 0:
        raise EmptyTrainingData("no center/context pair can be formed from this corpus")
    model = init_model(vocab, config.dim, config.seed)
    cdf = _noise_cdf(vocab) if config.objective == "negative_sampling" else None
    keep = _keep_probabilities(vocab, config.subsample)

    if threads == 1:
        rng = np.random.default_rng((config.seed, 1))
        _train_shard(model, sentences, config, cdf, keep, rng, total, _StepCounter())
        return model

    shards = [sentences[i::threads] for i in range(threads)]
    counter = _StepCounter()
    workers = [
        threading.Thread(
            target=_train_shard,
            args=(
                model,
                shard,
                config,
                cdf,
                keep,
                np.random.default_rng((config.seed, 1, worker)),
                total,
                counter,
            ),
        )
        for worker, shard in enumerate(shards)
        if shard
    ]
    for worker in workers:
        worker.start()
    for worker in workers:
        worker.join()
    return model


class _StepCounter:
    """Shared step count for the learning-rate schedule; races are tolerated."""

    __slots__ = ("value",)

    def __init__(self) -> None:
        self.value = 0


def _train_shard(
    model: EmbeddingModel,
    sentences: list[list[int]],
    config: TrainConfig,
    cdf: np.ndarray | None,
    keep: np.ndarray | None,
    rng: np.random.Generator,
    total: int,
    counter: _StepCounter,
) -> None:
    window = config.window
    skipgram = config.mode == "skipgram"
    use_softmax = config.objective == "softmax"
    lr_start = config.lr_start
    lr_slope = (config.lr_end - config.lr_start) / max(total - 1, 1)
    for _ in range(config.epochs):
        for sentence in sentences:
            if keep is not None:
                sentence = [i for i in sentence if rng.random() < keep[i]]
                if len(sentence) < 2:
                    continue
            length = len(sentence)
            for position, center in enumerate(sentence):
                lo = max(0, position - window)
                hi = min(length, position + window + 1)
                contexts = sentence[lo:position] + sentence[position + 1 : hi]
                if not contexts:
                    continue
                if skipgram:
                    for target in contexts:
                        lr = lr_start + lr_slope * min(counter.value, total - 1)
                        counter.value += 1
                        if use_softmax:
                            _softmax_step(model, [center], target, lr)
                        else:
                            negatives = _draw_negatives(rng, cdf, config.negatives, target)
                            _negative_step(model, [center], target, lr, negatives)
                else:
                    lr = lr_start + lr_slope * min(counter.value, total - 1)
                    counter.value += 1
                    if use_softmax:
                        _softmax_step(model, contexts, center, lr)
                    else:
                        negatives = _draw_negatives(rng, cdf, config.negatives, center)
                        _negative_step(model, contexts, center, lr, negatives)


def evaluate_loss(corpus, model: EmbeddingModel, config: TrainConfig) -> float:
    """Mean per-step loss of a model over a corpus, without updating it.

    Uses the same window construction as :func:`train`; negative-sampling
    draws come from a generator seeded with ``config.seed``, so repeated
    calls agree.
    """
    sentences = _indexed_sentences(corpus, model.vocab)
    total = _count_steps(sentences, config.window, config.mode)
    if total == 0:
        raise EmptyTrainingData("no center/context pair can be formed from this corpus")
    cdf = _noise_cdf(model.vocab) if config.objective == "negative_sampling" else None
    rng = np.random.default_rng(config.seed)
    loss = 0.0
    steps = 0
    for sentence in sentences:
        length = len(sentence)
        for position, center in enumerate(sentence):
            lo = max(0, position - config.window)
            hi = min(length, position + config.window + 1)
            contexts = sentence[lo:position] + sentence[position + 1 : hi]
            if not contexts:
                continue
            if config.mode == "skipgram":
                for target in contexts:
                    loss += train_step(
                        model, center, [target], 0.0, config, rng=rng, noise_cdf=cdf
                    )
                    steps += 1
            else:
                loss += train_step(model, center, contexts, 0.0, config, rng=rng, noise_cdf=cdf)
                steps += 1
    return loss / steps


def save_model(model: EmbeddingModel, path: str | Path) -> Path:
    """Write the binary model file plus its vocabulary sidecar.

    The binary layout is a magic tag, format version, the two matrix shapes,
    then ``w_in`` and ``w_out`` row-major as little-endian float32. The
    vocabulary lands next to the model at ``<path>.vocab``.
    """
    path = Path(path)
    with open(path, "wb") as handle:
        handle.write(_HEADER.pack(_MAGIC, _FORMAT_VERSION, model.vocab_size, model.dim))
        handle.write(np.ascontiguousarray(model.w_in, dtype="<f4").tobytes())
        handle.write(np.ascontiguousarray(model.w_out, dtype="<f4").tobytes())
    write_vocabulary(model.vocab, _vocab_sidecar(path))
    return path


def _vocab_sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".vocab")


def load_model(path: str | Path) -> EmbeddingModel:
    """Read a model written by :func:`save_model`."""
    path = Path(path)
    with open(path, "rb") as handle:
        header = handle.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ModelFormatError(f"truncated model file: {path}")
        magic, version, size, dim = _HEADER.unpack(header)
        if magic != _MAGIC:
            raise ModelFormatError(f"bad magic {magic!r} in {path}")
        if version != _FORMAT_VERSION:
            raise ModelFormatError(f"unsupported format version {version} in {path}")
        body = handle.read()
    expected = (size * dim + dim * size) * 4
    if len(body) != expected:
        raise ModelFormatError(
            f"expected {expected} bytes of weights, found {len(body)} in {path}"
        )
    w_in = np.frombuffer(body[: size * dim * 4], dtype="<f4").reshape(size, dim).copy()
    w_out = np.frombuffer(body[size * dim * 4 :], dtype="<f4").reshape(dim, size).copy()
    vocab = read_vocabulary(_vocab_sidecar(path))
    if len(vocab) != size:
        raise ModelFormatError(
            f"vocabulary sidecar lists {len(vocab)} words, model holds {size}"
        )
    return EmbeddingModel(w_in=w_in, w_out=w_out, vocab=vocab)


def export_text_vectors(model: EmbeddingModel, path: str | Path) -> Path:
    """Write embeddings as text: a "V N" header line, then one word per line."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{model.vocab_size} {model.dim}\n")
        for index, word in enumerate(model.vocab.index_to_word):
            values = " ".join(f"{value:.6f}" for value in model.w_in[index])
            handle.write(f"{word} {values}\n")
    return path


def read_text_vectors(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read a text export back as (words, float64 matrix)."""
    with open(path, encoding="utf-8") as handle:
        first = handle.readline().split()
        if len(first) != 2:
            raise ModelFormatError(f"missing 'V N' header line in {path}")
        size, dim = int(first[0]), int(first[1])
        words: list[str] = []
        vectors = np.empty((size, dim), dtype=np.float64)
        for row in range(size):
            parts = handle.readline().split()
            if len(parts) != dim + 1:
                raise ModelFormatError(f"line {row + 2} of {path} has wrong field count")
            words.append(parts[0])
            vectors[row] = [float(part) for part in parts[1:]]
    return words, vectors
