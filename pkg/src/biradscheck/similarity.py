"""Word, sentence and report-vs-category semantic similarity.

Sentence similarity builds a word-pair similarity matrix (synset path
similarity with an edit-distance fallback), solves an exact
maximum-weight bipartite matching over it and normalizes the matching
weight by the longer sentence length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping

import numpy as np

from ._kernels import levenshtein, solve_assignment
from .errors import EmptyAfterStopwords, WeightsInvalid

if TYPE_CHECKING:
    from .corpus import Sentence
    from .lexicon import LexicalResource
    from .summarizer import Representation, TermStats


def word_similarity(a: str, b: str, resource: "LexicalResource") -> float:
    """Similarity of two stems in [0, 1].

    Equal stems give 1.0. When both appear in the lexical resource the
    value is 1/(1+d) for the shortest synset-forest distance d (0 when a
    synset is shared, 0.0 when the two trees are disjoint). Otherwise the
    fallback is 1 - editdist/max(len) .
    """
    if a == b:
        return 1.0
    if a in resource and b in resource:
        d = resource.word_distance(a, b)
        if d is None:
            return 0.0
        return 1.0 / (1.0 + d)
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


@dataclass(frozen=True)
class SimilarityMatrix:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: np.ndarray  # shape (len(rows), len(cols)), float64 in [0, 1]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))


def content_stems(sentence: "Sentence", stopwords: frozenset[str]) -> tuple[str, ...]:
    return tuple(t.stem for t in sentence.tokens if t.stem not in stopwords)


def build_matrix(
    x: "Sentence",
    y: "Sentence",
    resource: "LexicalResource",
    stopwords: frozenset[str] = frozenset(),
) -> SimilarityMatrix:
    """Word-pair similarity matrix of the two sentences' content stems."""
    xs = content_stems(x, stopwords)
    ys = content_stems(y, stopwords)
    if not xs or not ys:
        raise EmptyAfterStopwords("sentence has no content tokens")
    entries = np.empty((len(xs), len(ys)), dtype=np.float64)
    for i, a in enumerate(xs):
        for j, b in enumerate(ys):
            entries[i, j] = word_similarity(a, b, resource)
    return SimilarityMatrix(rows=xs, cols=ys, entries=entries)


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]
    total_weight: float


def max_weight_matching(entries) -> Matching:
    """Exact maximum-weight bipartite matching of size min(m, n).

    Rectangular inputs are padded to square with zero-weight rows/columns
    internally; padded pairs never appear in the result. The total weight
    is the sum of the matched entries, accumulated in ascending value
    order so that transposed inputs give the bit-identical total.
    """
    r = np.asarray(entries, dtype=np.float64)
    if r.ndim != 2:
        raise ValueError("similarity matrix must be 2-D")
    m, n = r.shape
    if m == 0 or n == 0:
        return Matching(pairs=(), total_weight=0.0)
    size = max(m, n)
    cost = np.zeros((size, size), dtype=np.float64)
    cost[:m, :n] = -r
    match = solve_assignment(np.ascontiguousarray(cost))
    pairs = tuple((i, j) for i, j in enumerate(match) if i < m and j < n)
    total = float(math.fsum(sorted(float(r[i, j]) for i, j in pairs)))
    return Matching(pairs=pairs, total_weight=total)


_SENTENCE_CACHE: dict[tuple, float] = {}
_SENTENCE_CACHE_LIMIT = 250_000


def sentence_similarity(
    x: "Sentence",
    y: "Sentence",
    resource: "LexicalResource",
    stopwords: frozenset[str] = frozenset(),
) -> float:
    """Maximum matching weight normalized by max(m, n), in [0, 1].

    The two sentences are ordered canonically before solving, so the
    value is bit-identical under argument swap.
    """
    xs = content_stems(x, stopwords)
    ys = content_stems(y, stopwords)
    if not xs or not ys:
        raise EmptyAfterStopwords("sentence has no content tokens")
    if (len(ys), ys) < (len(xs), xs):
        x, y = y, x
        xs, ys = ys, xs
    key = (resource.digest, xs, ys)
    cached = _SENTENCE_CACHE.get(key)
    if cached is not None:
        return cached
    matrix = build_matrix(x, y, resource, stopwords)
    matching = max_weight_matching(matrix.entries)
    value = matching.total_weight / max(len(xs), len(ys))
    value = min(1.0, max(0.0, value))
    if len(_SENTENCE_CACHE) >= _SENTENCE_CACHE_LIMIT:
        _SENTENCE_CACHE.clear()
    _SENTENCE_CACHE[key] = value
    return value


@dataclass(frozen=True)
class AggregationWeights:
    """How sentence, pattern and term similarity combine into one score."""

    w_sem: float = 0.6
    w_pat: float = 0.2
    w_term: float = 0.2

    def validate(self) -> "AggregationWeights":
        if min(self.w_sem, self.w_pat, self.w_term) < 0:
            raise WeightsInvalid("weights must be non-negative")
        if abs(self.w_sem + self.w_pat + self.w_term - 1.0) > 1e-9:
            raise WeightsInvalid("weights must sum to 1")
        return self


def _cosine(a: Mapping, b: Mapping) -> float:
    """Cosine over sparse vectors; identical vectors short-circuit to an
    exact 1.0, and a lone empty side scores 0.0."""
    if a == b:
        return 1.0
    if not a or not b:
        return 0.0
    dot = 0.0
    for key, value in a.items():
        other = b.get(key)
        if other is not None:
            dot += value * other
    if dot == 0.0:
        return 0.0
    na = math.sqrt(math.fsum(v * v for v in a.values()))
    nb = math.sqrt(math.fsum(v * v for v in b.values()))
    return min(1.0, max(0.0, dot / (na * nb)))


def _term_vector(term_table: Mapping[str, "TermStats"]) -> dict[str, float]:
    return {
        stats.term: stats.atf * stats.idf
        for stats in term_table.values()
        if not stats.stopword
    }


def _pattern_vector(representation: "Representation") -> dict:
    return {
        pattern: float(count)
        for pattern, (count, _) in representation.pattern_table.items()
    }


def semantic_component(
    report_repr: "Representation",
    centroid: "Representation",
    resource: "LexicalResource",
    stopwords: frozenset[str] = frozenset(),
) -> float:
    """Mean over report representatives of the best sentence similarity
    against the centroid's representatives. Representatives with no
    content tokens contribute 0."""
    report_reps = report_repr.representatives
    centroid_reps = centroid.representatives
    if not report_reps or not centroid_reps:
        return 0.0
    total = 0.0
    for rep in report_reps:
        best = 0.0
        for cen in centroid_reps:
            try:
                value = sentence_similarity(rep.sentence, cen.sentence, resource, stopwords)
            except EmptyAfterStopwords:
                continue
            if value > best:
                best = value
        total += best
    return total / len(report_reps)


def report_category_similarity(
    report_repr: "Representation",
    centroid: "Representation",
    weights: AggregationWeights,
    resource: "LexicalResource",
    stopwords: frozenset[str] = frozenset(),
) -> float:
    """Weighted combination of semantic, pattern and term similarity."""
    weights.validate()
    s_sem = semantic_component(report_repr, centroid, resource, stopwords)
    s_pat = _cosine(_pattern_vector(report_repr), _pattern_vector(centroid))
    s_term = _cosine(_term_vector(report_repr.term_table), _term_vector(centroid.term_table))
    value = weights.w_sem * s_sem + weights.w_pat * s_pat + weights.w_term * s_term
    return min(1.0, max(0.0, value))
