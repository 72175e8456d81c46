"""Exception types shared across the toolkit.

Every error raised on purpose derives from :class:`EpicEmbedError`, so callers
(including the command-line layer) can distinguish expected failures from bugs.
"""

from __future__ import annotations


class EpicEmbedError(Exception):
    """Base class for all toolkit errors."""


# --------------------------------------------------------------------------
# ingestion


class IngestError(EpicEmbedError):
    """A problem with an input archive. Carries the offending path."""

    def __init__(self, message: str, path: object) -> None:
        super().__init__(f"{message}: {path}")
        self.path = str(path)


class NotZip(IngestError):
    """The input file is not a ZIP archive."""

    def __init__(self, path: object) -> None:
        super().__init__("not a ZIP archive", path)


class MissingContainer(IngestError):
    """The archive has no META-INF/container.xml entry."""

    def __init__(self, path: object) -> None:
        super().__init__("archive has no META-INF/container.xml", path)


class MalformedOpf(IngestError):
    """The container or package document cannot be interpreted."""


class EmptySpine(IngestError):
    """The package document yields no readable content documents."""

    def __init__(self, path: object) -> None:
        super().__init__("spine contains no content documents", path)


# --------------------------------------------------------------------------
# corpus statistics


class EmptyVocabulary(EpicEmbedError):
    """No token survived the vocabulary filters."""


# --------------------------------------------------------------------------
# embedding training


class VocabTooSmall(EpicEmbedError):
    """The vocabulary is too small to train a model."""


class IndexOutOfVocab(EpicEmbedError):
    """A word index falls outside the model's vocabulary range."""

    def __init__(self, index: int, size: int) -> None:
        super().__init__(f"index {index} out of range for vocabulary of size {size}")
        self.index = index
        self.size = size


class EmptyTrainingData(EpicEmbedError):
    """The corpus contains no trainable center/context position."""


class ModelFormatError(EpicEmbedError):
    """A model file does not match the expected binary layout."""


# --------------------------------------------------------------------------
# similarity queries


class ZeroVector(EpicEmbedError):
    """Cosine similarity is undefined for an all-zero vector."""


class DimensionMismatch(EpicEmbedError):
    """The two vectors do not share a dimensionality."""


class UnknownWord(EpicEmbedError):
    """The query word is not in the model vocabulary.

    ``suggestions`` holds close spellings from the vocabulary, nearest first.
    """

    def __init__(self, word: str, suggestions: tuple[str, ...] = ()) -> None:
        hint = f" (did you mean: {', '.join(suggestions)}?)" if suggestions else ""
        super().__init__(f"word not in vocabulary: {word!r}{hint}")
        self.word = word
        self.suggestions = tuple(suggestions)
