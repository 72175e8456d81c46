"""Text preparation: cleaning, sentence splitting, and word tokenization.

The cleaning stage folds all sections into one lowercase string with uniform
spacing; sentence splitting and tokenization are rule-based and make no
attempt at statistical boundary detection.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .resources import data_path

_WHITESPACE_RE = re.compile(r"\s+")

# Both the straight apostrophe and the right single quotation mark count.
_APOSTROPHES = "'’"

_TERMINATORS = frozenset(".!?")


@dataclass(frozen=True)
class CleanCorpus:
    """One lowercase string with single spaces and no commas or apostrophes."""

    text: str


def load_abbreviations(path: str | Path | None = None) -> frozenset[str]:
    """Abbreviations that block a sentence split after a period.

    One entry per line, lowercase, no trailing period. Blank lines and lines
    starting with '#' are ignored.
    """
    source = Path(path) if path is not None else data_path("abbreviations.txt")
    entries = set()
    for line in source.read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            entries.add(word.rstrip("."))
    return frozenset(entries)


_DEFAULT_ABBREVIATIONS: frozenset[str] | None = None


def _default_abbreviations() -> frozenset[str]:
    global _DEFAULT_ABBREVIATIONS
    if _DEFAULT_ABBREVIATIONS is None:
        _DEFAULT_ABBREVIATIONS = load_abbreviations()
    return _DEFAULT_ABBREVIATIONS


def clean_text(
    sections,
    *,
    apostrophe: str = "delete",
    strict_clean: bool = False,
) -> CleanCorpus:
    """Fold sections into a single cleaned lowercase string.

    Commas are always removed. ``apostrophe`` selects what happens to
    apostrophes: ``"delete"`` joins the pieces ("translator's" becomes
    "translators"), ``"space"`` separates them. ``strict_clean`` additionally
    removes semicolons, which are otherwise retained as tokens. All runs of
    whitespace, including newlines and form feeds, collapse to single spaces.
    """
    if apostrophe not in ("delete", "space"):
        raise ValueError(f"apostrophe must be 'delete' or 'space', not {apostrophe!r}")
    text = " ".join(getattr(section, "text", section) for section in sections)
    text = text.lower()
    replacement = "" if apostrophe == "delete" else " "
    table = {ord(","): None}
    for ch in _APOSTROPHES:
        table[ord(ch)] = replacement or None
    if strict_clean:
        table[ord(";")] = None
    text = text.translate(table)
    text = _WHITESPACE_RE.sub(" ", text).strip()
    return CleanCorpus(text=text)


def _blocked_by_abbreviation(text: str, dot: int, abbreviations: frozenset[str]) -> bool:
    start = dot
    while start > 0 and text[start - 1].isalpha():
        start -= 1
    word = text[start:dot]
    if not word:
        return False
    return len(word) == 1 or word in abbreviations


def split_sentences(
    corpus: CleanCorpus | str,
    abbreviations: frozenset[str] | None = None,
) -> list[str]:
    """Split cleaned text into sentences.

    A sentence ends at '.', '!', or '?' followed by whitespace or the end of
    the text, except for a period directly after an abbreviation or a single
    letter. The terminator stays attached to its sentence; empty candidates
    are dropped.
    """
    text = corpus.text if isinstance(corpus, CleanCorpus) else corpus
    if abbreviations is None:
        abbreviations = _default_abbreviations()
    sentences: list[str] = []
    start = 0
    for i, ch in enumerate(text):
        if ch not in _TERMINATORS:
            continue
        if i + 1 < len(text) and not text[i + 1].isspace():
            continue
        if ch == "." and _blocked_by_abbreviation(text, i, abbreviations):
            continue
        candidate = text[start : i + 1].strip()
        if candidate:
            sentences.append(candidate)
        start = i + 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize_words(sentence: str) -> list[str]:
    """Split one sentence into word and punctuation tokens.

    Chunks are separated by spaces; leading and trailing punctuation of each
    chunk comes off as single-character tokens, so a sentence terminator is
    its own token. Interior hyphens stay put ("vaka-vadha" is one token).
    """
    tokens: list[str] = []
    for chunk in sentence.split():
        head = 0
        tail = len(chunk)
        while head < tail and not chunk[head].isalnum():
            head += 1
        while tail > head and not chunk[tail - 1].isalnum():
            tail -= 1
        tokens.extend(chunk[i] for i in range(head))
        if head < tail:
            tokens.append(chunk[head:tail])
        tokens.extend(chunk[i] for i in range(tail, len(chunk)))
    return tokens


def tokenize_corpus(sentences) -> list[list[str]]:
    """Tokenize each sentence, dropping any that yield no tokens."""
    corpus = []
    for sentence in sentences:
        tokens = tokenize_words(sentence)
        if tokens:
            corpus.append(tokens)
    return corpus


def sentence_lengths(corpus) -> list[int]:
    """Token count of each sentence of a tokenized corpus."""
    return [len(sentence) for sentence in corpus]


def write_token_corpus(corpus, path: str | Path) -> None:
    """Write a tokenized corpus: one sentence per line, tokens space-separated."""
    with open(path, "w", encoding="utf-8") as handle:
        for sentence in corpus:
            handle.write(" ".join(sentence))
            handle.write("\n")


def read_token_corpus(path: str | Path) -> list[list[str]]:
    """Read a corpus written by :func:`write_token_corpus`."""
    corpus = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            tokens = line.split()
            if tokens:
                corpus.append(tokens)
    return corpus
