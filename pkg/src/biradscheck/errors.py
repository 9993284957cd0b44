"""Exception types raised across the package."""

from __future__ import annotations


class BiradsError(Exception):
    """Base class for all package errors."""


class MissingFindings(BiradsError):
    """Report text has no recognizable findings section."""


class InvalidCategory(BiradsError):
    """Category value outside 0..6."""


class EmptyCorpus(BiradsError):
    """An operation requiring at least one report got none."""


class DuplicateTerm(BiradsError):
    """Lexicon file defines the same term twice."""


class MissingReplacement(BiradsError):
    """Unsanctioned lexicon entry has no replacement."""


class DanglingReplacement(BiradsError):
    """Replacement refers to a term that is not a sanctioned entry."""


class EmptyPatternSet(BiradsError):
    """Automaton construction got no usable patterns."""


class OverlappingSpans(BiradsError):
    """Replacement spans overlap."""


class SpanOutOfBounds(BiradsError):
    """Replacement span exceeds the text bounds."""


class EmptyAfterStopwords(BiradsError):
    """Sentence has no content tokens once stopwords are removed."""


class CategoryMismatch(BiradsError):
    """Report category differs from the centroid being extended."""


class MissingCategory(BiradsError):
    """Training corpus lacks reports for one or more categories."""

    def __init__(self, categories):
        self.categories = tuple(sorted(categories))
        missing = ", ".join(str(c) for c in self.categories)
        super().__init__(f"no reports for category: {missing}")


class WeightsInvalid(BiradsError):
    """Aggregation weights are negative or do not sum to one."""


class VersionMismatch(BiradsError):
    """Model file was written by an incompatible format version."""


class CorruptModel(BiradsError):
    """Model file fails its integrity digest."""


class ResourceMismatch(BiradsError):
    """Model was trained against different lexicon/resource files."""


class ConfigError(BiradsError):
    """Service configuration file is invalid."""
