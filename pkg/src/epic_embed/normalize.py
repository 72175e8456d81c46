"""Token normalization: stemming, dictionary-free lemmatization, stopwords.

Two interchangeable normalizers operate on single lowercase tokens: the
Porter stemmer (see :mod:`.porter`) and a light lemmatizer that combines an
exception table of irregular forms with per-part-of-speech suffix detachment
rules. Unlike a dictionary-backed lemmatizer there is no check that a
candidate is a real word, so the rule set errs on the side of caution and
leaves unknown shapes alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .porter import porter_stem
from .resources import data_path

__all__ = [
    "LemmaLexicon",
    "lemmatize",
    "load_stopwords",
    "normalize_corpus",
    "porter_stem",
    "remove_stopwords",
]

PARTS_OF_SPEECH = ("noun", "verb", "adj", "adv")

# Suffix detachment rules per part of speech, longest suffix first. The first
# matching rule that leaves a non-empty stem wins; nothing recurses.
_DETACHMENT_RULES: dict[str, tuple[tuple[str, str], ...]] = {
    "noun": (
        ("ches", "ch"),
        ("shes", "sh"),
        ("ses", "s"),
        ("xes", "x"),
        ("zes", "z"),
        ("ies", "y"),
        ("s", ""),
    ),
    "verb": (
        ("sses", "ss"),
        ("ches", "ch"),
        ("shes", "sh"),
        ("ies", "y"),
        ("ing", ""),
        ("ed", ""),
        ("es", "e"),
        ("s", ""),
    ),
    "adj": (
        ("iest", "y"),
        ("ier", "y"),
        ("est", ""),
        ("er", ""),
    ),
    "adv": (
        ("iest", "y"),
        ("ier", "y"),
        ("est", ""),
        ("er", ""),
    ),
}


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load a stopword list, one lowercase word per line.

    Blank lines and lines starting with '#' are ignored. With no path, the
    bundled list of common English function words is used.
    """
    source = Path(path) if path is not None else data_path("stopwords.txt")
    words = set()
    for line in source.read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


@dataclass(frozen=True)
class LemmaLexicon:
    """Irregular-form table plus suffix detachment rules.

    ``exceptions`` maps (surface form, part of speech) to the lemma and is
    consulted before any rule fires.
    """

    exceptions: dict[tuple[str, str], str] = field(default_factory=dict)
    rules: dict[str, tuple[tuple[str, str], ...]] = field(
        default_factory=lambda: dict(_DETACHMENT_RULES)
    )

    @classmethod
    def load(cls, path: str | Path | None = None) -> "LemmaLexicon":
        """Read exceptions from a tab-separated file: surface, lemma, pos."""
        source = Path(path) if path is not None else data_path("lemma_exceptions.tsv")
        exceptions: dict[tuple[str, str], str] = {}
        for number, line in enumerate(source.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 3:
                raise ValueError(f"{source}:{number}: expected 3 tab-separated fields")
            surface, lemma, pos = (part.strip() for part in fields)
            if pos not in PARTS_OF_SPEECH:
                raise ValueError(f"{source}:{number}: unknown part of speech {pos!r}")
            exceptions[(surface, pos)] = lemma
        return cls(exceptions=exceptions)


_DEFAULT_LEXICON: LemmaLexicon | None = None


def default_lexicon() -> LemmaLexicon:
    """The lexicon built from the bundled exception file."""
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        _DEFAULT_LEXICON = LemmaLexicon.load()
    return _DEFAULT_LEXICON


def lemmatize(word: str, pos: str = "noun", lexicon: LemmaLexicon | None = None) -> str:
    """Reduce one lowercase word to a base form.

    The exception table is consulted first; otherwise detachment rules for
    the given part of speech are tried longest suffix first, and the first
    match that leaves a non-empty stem is applied. A word no rule touches is
    returned unchanged, so punctuation tokens pass through as they are.
    """
    if pos not in PARTS_OF_SPEECH:
        raise ValueError(f"unknown part of speech {pos!r}")
    if lexicon is None:
        lexicon = default_lexicon()
    exception = lexicon.exceptions.get((word, pos))
    if exception is not None:
        return exception
    for suffix, replacement in lexicon.rules.get(pos, ()):
        if word.endswith(suffix) and len(word) > len(suffix):
            return word[: len(word) - len(suffix)] + replacement
    return word


def remove_stopwords(tokens, stops) -> list[str]:
    """Drop tokens whose lowercase form is in ``stops``; order is preserved."""
    return [token for token in tokens if token.lower() not in stops]


def normalize_corpus(
    corpus,
    mode: str = "lemma",
    stops=frozenset(),
    lexicon: LemmaLexicon | None = None,
) -> list[list[str]]:
    """Normalize a tokenized corpus sentence by sentence.

    Stopwords are removed first, then ``mode`` is applied per token:
    ``"stem"`` runs the Porter stemmer, ``"lemma"`` the lemmatizer with the
    default noun reading, ``"none"`` leaves tokens untouched. Sentences that
    end up empty are dropped.
    """
    if mode not in ("stem", "lemma", "none"):
        raise ValueError(f"mode must be 'stem', 'lemma', or 'none', not {mode!r}")
    if mode == "lemma" and lexicon is None:
        lexicon = default_lexicon()
    normalized = []
    for sentence in corpus:
        kept = remove_stopwords(sentence, stops)
        if mode == "stem":
            kept = [porter_stem(token) for token in kept]
        elif mode == "lemma":
            kept = [lemmatize(token, "noun", lexicon) for token in kept]
        if kept:
            normalized.append(kept)
    return normalized
