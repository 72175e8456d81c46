"""Cosine similarity and nearest-neighbor queries over trained embeddings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embed import EmbeddingModel
from .errors import DimensionMismatch, UnknownWord, ZeroVector


def cosine(u, v) -> float:
    """Cosine similarity of two vectors, clamped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.ndim != 1 or v.ndim != 1 or u.shape != v.shape:
        raise DimensionMismatch(f"cannot compare shapes {u.shape} and {v.shape}")
    norm_u = np.linalg.norm(u)
    norm_v = np.linalg.norm(v)
    if norm_u == 0.0 or norm_v == 0.0:
        raise ZeroVector("cosine similarity is undefined for a zero vector")
    return float(np.clip(u @ v / (norm_u * norm_v), -1.0, 1.0))


@dataclass(frozen=True)
class SimilarityResult:
    """Ranked neighbors of a query word: (word, score) pairs, best first."""

    target: str
    neighbors: tuple[tuple[str, float], ...]


def _levenshtein_within(a: str, b: str, limit: int) -> int | None:
    """Edit distance of two words, or None once it exceeds ``limit``."""
    if abs(len(a) - len(b)) > limit:
        return None
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, 1):
        current = [i]
        best = i
        for j, ch_b in enumerate(b, 1):
            cost = min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ch_a != ch_b),
            )
            current.append(cost)
            best = min(best, cost)
        if best > limit:
            return None
        previous = current
    return previous[-1] if previous[-1] <= limit else None


def suggest_spellings(
    word: str,
    vocab,
    max_distance: int = 2,
    limit: int = 5,
) -> tuple[str, ...]:
    """Vocabulary words within a small edit distance, nearest first."""
    scored: list[tuple[int, int, str]] = []
    for index, candidate in enumerate(vocab.index_to_word):
        distance = _levenshtein_within(word, candidate, max_distance)
        if distance is not None:
            scored.append((distance, index, candidate))
    scored.sort()
    return tuple(candidate for _, _, candidate in scored[:limit])


def _require_index(model: EmbeddingModel, word: str) -> int:
    index = model.vocab.word_to_index.get(word)
    if index is None:
        raise UnknownWord(word, suggest_spellings(word, model.vocab))
    return index


def get_vector(model: EmbeddingModel, word: str) -> np.ndarray:
    """A copy of the word's embedding row."""
    return model.w_in[_require_index(model, word)].copy()


def most_similar(model: EmbeddingModel, word: str, n: int = 5) -> SimilarityResult:
    """The ``n`` vocabulary words closest to ``word`` by cosine similarity.

    Every other embedding row is scored; ties break toward the lower
    vocabulary index, and ``n`` is clamped to the vocabulary size minus one.
    The query word itself never appears among its neighbors.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, not {n}")
    index = _require_index(model, word)
    matrix = model.w_in.astype(np.float64)
    norms = np.linalg.norm(matrix, axis=1)
    if norms[index] == 0.0:
        raise ZeroVector(f"embedding for {word!r} is a zero vector")
    with np.errstate(divide="ignore", invalid="ignore"):
        scores = matrix @ matrix[index] / (norms * norms[index])
    scores = np.clip(scores, -1.0, 1.0)
    scores[norms == 0.0] = -np.inf  # zero rows can never be neighbors
    scores[index] = -np.inf
    order = np.argsort(-scores, kind="stable")
    n = min(n, model.vocab_size - 1)
    neighbors = tuple(
        (model.vocab.index_to_word[i], float(scores[i]))
        for i in order[:n]
        if np.isfinite(scores[i])
    )
    return SimilarityResult(target=word, neighbors=neighbors)
