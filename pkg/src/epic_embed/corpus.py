"""Corpus statistics: vocabulary building, frequencies, co-occurrence, lengths."""

from __future__ import annotations

import statistics
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .errors import EmptyVocabulary

PUNCT_POLICIES = ("drop_all", "paper_compat", "keep_all")


def is_punctuation(token: str) -> bool:
    """True for tokens without a single letter or digit."""
    return not any(ch.isalnum() for ch in token)


@dataclass(frozen=True)
class Vocabulary:
    """Dense word index in first-occurrence order.

    ``index_to_word[i]`` and ``counts[i]`` describe the word with index ``i``;
    counts are occurrence totals over the corpus the vocabulary was built
    from, before any filtering by index.
    """

    word_to_index: dict[str, int]
    index_to_word: tuple[str, ...]
    counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.index_to_word)

    @property
    def size(self) -> int:
        return len(self.index_to_word)

    def __contains__(self, word: str) -> bool:
        return word in self.word_to_index

    def index(self, word: str) -> int:
        return self.word_to_index[word]

    def word(self, index: int) -> str:
        return self.index_to_word[index]

    def count(self, word: str) -> int:
        return self.counts[self.word_to_index[word]]


def build_vocabulary(
    corpus,
    min_count: int = 1,
    punct_policy: str = "drop_all",
) -> Vocabulary:
    """Index the distinct tokens of a corpus.

    Words are numbered 0..V-1 in order of first occurrence; tokens seen fewer
    than ``min_count`` times are excluded and the survivors renumbered
    densely. ``punct_policy`` handles punctuation tokens: ``"drop_all"``
    removes them, ``"paper_compat"`` removes only the period, ``"keep_all"``
    indexes everything.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be at least 1, not {min_count}")
    if punct_policy not in PUNCT_POLICIES:
        raise ValueError(f"punct_policy must be one of {PUNCT_POLICIES}, not {punct_policy!r}")

    totals: Counter[str] = Counter()
    for sentence in corpus:
        totals.update(sentence)

    if punct_policy == "drop_all":
        allowed = lambda token: not is_punctuation(token)
    elif punct_policy == "paper_compat":
        allowed = lambda token: token != "."
    else:
        allowed = lambda token: True

    word_to_index: dict[str, int] = {}
    order: list[str] = []
    for sentence in corpus:
        for token in sentence:
            if token in word_to_index:
                continue
            if totals[token] >= min_count and allowed(token):
                word_to_index[token] = len(order)
                order.append(token)
    if not order:
        raise EmptyVocabulary("no token passed the vocabulary filters")
    return Vocabulary(
        word_to_index=word_to_index,
        index_to_word=tuple(order),
        counts=tuple(totals[word] for word in order),
    )


def write_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    """Write a vocabulary file: ``word<TAB>count<TAB>index``, index-sorted."""
    with open(path, "w", encoding="utf-8") as handle:
        for index, word in enumerate(vocab.index_to_word):
            handle.write(f"{word}\t{vocab.counts[index]}\t{index}\n")


def read_vocabulary(path: str | Path) -> Vocabulary:
    """Read a file written by :func:`write_vocabulary`."""
    words: list[str] = []
    counts: list[int] = []
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle):
            line = line.rstrip("\n")
            if not line:
                continue
            word, count, index = line.split("\t")
            if int(index) != len(words):
                raise ValueError(f"{path}:{number + 1}: indices must be dense and sorted")
            words.append(word)
            counts.append(int(count))
    if not words:
        raise EmptyVocabulary(f"vocabulary file is empty: {path}")
    return Vocabulary(
        word_to_index={word: i for i, word in enumerate(words)},
        index_to_word=tuple(words),
        counts=tuple(counts),
    )


def top_frequencies(corpus, k: int) -> list[tuple[str, int]]:
    """The ``k`` most frequent tokens with their counts.

    Ordered by descending count; ties go to the token that appeared first in
    the corpus.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, not {k}")
    counts: Counter[str] = Counter()
    first_seen: dict[str, int] = {}
    position = 0
    for sentence in corpus:
        for token in sentence:
            counts[token] += 1
            if token not in first_seen:
                first_seen[token] = position
            position += 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], first_seen[item[0]]))
    return ranked[:k]


def cooccurrence_pairs(
    corpus,
    k: int,
    *,
    once_per_sentence: bool = True,
) -> list[tuple[tuple[str, str], int]]:
    """The ``k`` most frequent unordered word pairs sharing a sentence.

    Each pair is reported as (w1, w2) with w1 < w2 lexicographically. By
    default a pair counts once per sentence regardless of how often the two
    words repeat inside it; with ``once_per_sentence=False`` every pairing of
    distinct token positions holding different words counts. Ties rank
    lexicographically.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, not {k}")
    counts: Counter[tuple[str, str]] = Counter()
    for sentence in corpus:
        if once_per_sentence:
            counts.update(combinations(sorted(set(sentence)), 2))
        else:
            for i, first in enumerate(sentence):
                for second in sentence[i + 1 :]:
                    if first != second:
                        counts[(min(first, second), max(first, second))] += 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


@dataclass(frozen=True)
class LengthDistribution:
    """Histogram and summary statistics of sentence lengths.

    ``histogram`` holds (bin lower bound, count) for non-empty fixed-width
    bins anchored at zero. ``argmax_sentence`` is the index of the first
    longest sentence. All statistics are None for an empty input.
    """

    histogram: tuple[tuple[int, int], ...]
    mean: float | None
    median: float | None
    max: int | None
    argmax_sentence: int | None
    skewness: float | None


def length_distribution(lengths, bin_width: int = 1) -> LengthDistribution:
    """Summarize a sequence of sentence lengths."""
    if bin_width < 1:
        raise ValueError(f"bin_width must be at least 1, not {bin_width}")
    lengths = list(lengths)
    if not lengths:
        return LengthDistribution((), None, None, None, None, None)
    bins: Counter[int] = Counter((length // bin_width) * bin_width for length in lengths)
    longest = max(lengths)
    mean = sum(lengths) / len(lengths)
    variance = sum((x - mean) ** 2 for x in lengths) / len(lengths)
    if variance == 0:
        skewness = 0.0
    else:
        third = sum((x - mean) ** 3 for x in lengths) / len(lengths)
        skewness = third / variance**1.5
    return LengthDistribution(
        histogram=tuple(sorted(bins.items())),
        mean=mean,
        median=float(statistics.median(lengths)),
        max=longest,
        argmax_sentence=lengths.index(longest),
        skewness=skewness,
    )


def write_histogram_csv(dist: LengthDistribution, path: str | Path) -> None:
    """Write a histogram as ``bin_lower,count`` CSV with a header row."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("bin_lower,count\n")
        for bin_lower, count in dist.histogram:
            handle.write(f"{bin_lower},{count}\n")
