"""Seven-category training, scoring, consistency verdicts and model I/O.

A model bundle holds one centroid per category 0..6 plus the summarizer
and aggregation settings and the digest of the resources it was trained
with. The model file is a canonical JSON document protected by a payload
digest, so training twice on the same corpus yields byte-identical
files; see docs/model-format.md.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Mapping

from .corpus import (
    CATEGORIES,
    LabeledCorpus,
    Report,
    Sentence,
    Token,
    validate_category,
)
from .errors import CorruptModel, MissingCategory, MissingFindings, ResourceMismatch, VersionMismatch
from .normalizer import sanctioned_automaton
from .resources import Resources
from .similarity import AggregationWeights, report_category_similarity
from .summarizer import (
    CentroidVector,
    Representation,
    ScoredSentence,
    SummarizerConfig,
    TermStats,
    add_report,
    build_centroid,
    build_representation,
)
from .syntax import ChunkPattern, SentenceSyntax

FORMAT_VERSION = "1.0"


@dataclass(frozen=True)
class ModelBundle:
    centroids: dict[int, CentroidVector]
    config: SummarizerConfig
    weights: AggregationWeights
    lexicon_digest: str
    format_version: str = FORMAT_VERSION

    def __post_init__(self):
        if sorted(self.centroids) != list(CATEGORIES):
            missing = [c for c in CATEGORIES if c not in self.centroids]
            raise MissingCategory(missing or sorted(self.centroids))


def percent(score: float) -> str:
    """score*100 rendered at two decimal places, half-up."""
    return str((Decimal(repr(score)) * 100).quantize(Decimal("0.01"), ROUND_HALF_UP))


@dataclass(frozen=True)
class Scorecard:
    """Per-category similarity scores with the argmax category.

    Ties list every category sharing the maximum, highest first; the
    inferred category is the highest tied one.
    """

    scores: dict[int, float]
    inferred: int
    ties: tuple[int, ...]

    @classmethod
    def from_scores(cls, scores: Mapping[int, float]) -> "Scorecard":
        if sorted(scores) != list(CATEGORIES):
            raise ValueError("scorecard needs exactly the seven categories 0..6")
        best = max(scores.values())
        ties = tuple(c for c in sorted(scores, reverse=True) if scores[c] == best)
        return cls(scores=dict(scores), inferred=ties[0], ties=ties)

    def percentages(self) -> dict[int, str]:
        return {c: percent(s) for c, s in self.scores.items()}


CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
UNLABELED = "unlabeled"


@dataclass(frozen=True)
class ConsistencyVerdict:
    status: str
    reported: int | None
    scorecard: Scorecard


def verdict_from_scorecard(reported: int | None, scorecard: Scorecard) -> ConsistencyVerdict:
    if reported is None:
        return ConsistencyVerdict(UNLABELED, None, scorecard)
    validate_category(reported)
    status = CONSISTENT if reported == scorecard.inferred else INCONSISTENT
    return ConsistencyVerdict(status, reported, scorecard)


def train(
    corpus: LabeledCorpus,
    resources: Resources,
    config: SummarizerConfig = SummarizerConfig(),
    weights: AggregationWeights = AggregationWeights(),
) -> ModelBundle:
    """Build the seven per-category centroids. Deterministic for a fixed
    corpus order; raises MissingCategory when any category has no reports."""
    weights.validate()
    groups = corpus.by_category()
    missing = [c for c in CATEGORIES if not groups.get(c)]
    if missing:
        raise MissingCategory(missing)
    automaton = sanctioned_automaton(resources.lexicon)
    sanctioned = sorted(resources.lexicon.sanctioned_terms())
    centroids = {
        category: build_centroid(
            tuple(groups[category]),
            category,
            config,
            resources.stopwords,
            automaton,
            sanctioned,
            resources.tagger,
        )
        for category in CATEGORIES
    }
    return ModelBundle(
        centroids=centroids,
        config=config,
        weights=weights,
        lexicon_digest=resources.digest,
    )


def summarize_report(
    report: Report, model: ModelBundle, resources: Resources
) -> Representation:
    """Represent a single report in the same shape as a centroid, using
    the model's summarizer settings."""
    automaton = sanctioned_automaton(resources.lexicon)
    sanctioned = sorted(resources.lexicon.sanctioned_terms())
    return build_representation(
        (report,),
        model.config,
        resources.stopwords,
        automaton,
        sanctioned,
        resources.tagger,
    )


def classify(report: Report, model: ModelBundle, resources: Resources) -> Scorecard:
    """Score the report against all seven centroids; argmax wins, ties
    break toward the higher category."""
    if resources.digest != model.lexicon_digest:
        raise ResourceMismatch(
            "model was trained with different lexicon/resource files"
        )
    if not report.findings or not report.sentences:
        raise MissingFindings(f"report {report.id!r} has no findings text")
    repr_ = summarize_report(report, model, resources)
    scores = {
        category: report_category_similarity(
            repr_, model.centroids[category], model.weights,
            resources.synsets, resources.stopwords,
        )
        for category in CATEGORIES
    }
    return Scorecard.from_scores(scores)


def check_consistency(
    report: Report, model: ModelBundle, resources: Resources
) -> ConsistencyVerdict:
    """Classify and compare against the radiologist-reported category."""
    scorecard = classify(report, model, resources)
    return verdict_from_scorecard(report.reported_category, scorecard)


def extend_model(
    model: ModelBundle, report: Report, category: int, resources: Resources
) -> ModelBundle:
    """New bundle with `category`'s centroid recomputed over its corpus
    plus the accepted report (copy-rebuild, never in-place)."""
    validate_category(category)
    automaton = sanctioned_automaton(resources.lexicon)
    sanctioned = sorted(resources.lexicon.sanctioned_terms())
    labeled = replace(report, reported_category=category)
    new_centroid = add_report(
        model.centroids[category],
        labeled,
        model.config,
        resources.stopwords,
        automaton,
        sanctioned,
        resources.tagger,
    )
    centroids = dict(model.centroids)
    centroids[category] = new_centroid
    return replace(model, centroids=centroids)


# --- persistence ----------------------------------------------------------


def _sentence_to_doc(sentence: Sentence) -> dict:
    return {
        "index": sentence.index,
        "text": sentence.text,
        "tokens": [[t.surface, t.stem, t.position] for t in sentence.tokens],
    }


def _sentence_from_doc(doc: dict) -> Sentence:
    return Sentence(
        index=doc["index"],
        text=doc["text"],
        tokens=tuple(Token(surface=s, stem=st, position=p) for s, st, p in doc["tokens"]),
    )


def _syntax_to_doc(syntax: SentenceSyntax | None) -> dict | None:
    if syntax is None:
        return None
    return {
        "tagged_with_words": syntax.tagged_with_words,
        "tags_only": syntax.tags_only,
        "patterns": [
            [pattern.label, list(pattern.tags), count, list(positions)]
            for pattern, (count, positions) in sorted(
                syntax.pattern_occurrences.items(),
                key=lambda item: (item[0].label, item[0].tags),
            )
        ],
        "terms": [
            [term, list(positions)]
            for term, positions in sorted(syntax.important_term_locations.items())
        ],
    }


def _syntax_from_doc(doc: dict | None) -> SentenceSyntax | None:
    if doc is None:
        return None
    return SentenceSyntax(
        tagged_with_words=doc["tagged_with_words"],
        tags_only=doc["tags_only"],
        pattern_occurrences={
            ChunkPattern(label, tuple(tags)): (count, tuple(positions))
            for label, tags, count, positions in doc["patterns"]
        },
        important_term_locations={
            term: tuple(positions) for term, positions in doc["terms"]
        },
    )


def _representative_to_doc(rep: ScoredSentence) -> dict:
    return {
        "report_id": rep.report_id,
        "sentence": _sentence_to_doc(rep.sentence),
        "score": rep.score,
        "snapshot": [[stem, atf, idf] for stem, atf, idf in rep.term_snapshot],
        "syntax": _syntax_to_doc(rep.syntax),
    }


def _representative_from_doc(doc: dict) -> ScoredSentence:
    return ScoredSentence(
        report_id=doc["report_id"],
        sentence=_sentence_from_doc(doc["sentence"]),
        score=doc["score"],
        term_snapshot=tuple((s, a, i) for s, a, i in doc["snapshot"]),
        syntax=_syntax_from_doc(doc["syntax"]),
    )


def _report_to_doc(report: Report) -> dict:
    return {
        "id": report.id,
        "sections": dict(report.sections),
        "reported_category": report.reported_category,
        "sentences": [_sentence_to_doc(s) for s in report.sentences],
    }


def _report_from_doc(doc: dict) -> Report:
    return Report(
        id=doc["id"],
        sections=doc["sections"],
        reported_category=doc["reported_category"],
        sentences=tuple(_sentence_from_doc(s) for s in doc["sentences"]),
    )


def _centroid_to_doc(centroid: CentroidVector) -> dict:
    return {
        "category": centroid.category,
        "report_count": centroid.report_count,
        "reports": [_report_to_doc(r) for r in centroid.reports],
        "term_table": [
            [s.term, s.raw_tf, s.atf, s.df, s.idf, s.stopword]
            for s in centroid.term_table.values()
        ],
        "representatives": [_representative_to_doc(r) for r in centroid.representatives],
        "pattern_table": [
            [
                pattern.label,
                list(pattern.tags),
                count,
                [[rep_pos, list(positions)] for rep_pos, positions in locations],
            ]
            for pattern, (count, locations) in sorted(
                centroid.pattern_table.items(),
                key=lambda item: (item[0].label, item[0].tags),
            )
        ],
    }


def _centroid_from_doc(doc: dict) -> CentroidVector:
    return CentroidVector(
        term_table={
            term: TermStats(term=term, raw_tf=tf, atf=atf, df=df, idf=idf, stopword=stop)
            for term, tf, atf, df, idf, stop in doc["term_table"]
        },
        representatives=tuple(_representative_from_doc(r) for r in doc["representatives"]),
        pattern_table={
            ChunkPattern(label, tuple(tags)): (
                count,
                tuple((rep_pos, tuple(positions)) for rep_pos, positions in locations),
            )
            for label, tags, count, locations in doc["pattern_table"]
        },
        report_count=doc["report_count"],
        category=doc["category"],
        reports=tuple(_report_from_doc(r) for r in doc["reports"]),
    )


def _payload(model: ModelBundle) -> dict:
    return {
        "format_version": model.format_version,
        "lexicon_digest": model.lexicon_digest,
        "config": {
            "k": model.config.k,
            "boost_factor": model.config.boost_factor,
            "idf_formula_id": model.config.idf_formula_id,
        },
        "weights": {
            "semantic": model.weights.w_sem,
            "pattern": model.weights.w_pat,
            "term": model.weights.w_term,
        },
        "centroids": {str(c): _centroid_to_doc(v) for c, v in sorted(model.centroids.items())},
    }


def _canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def model_to_json(model: ModelBundle) -> str:
    payload = _payload(model)
    digest = hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest()
    return _canonical({"payload": payload, "payload_digest": digest}) + "\n"


def model_from_json(text: str) -> ModelBundle:
    try:
        doc = json.loads(text)
        payload = doc["payload"]
        stored_digest = doc["payload_digest"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CorruptModel(f"unreadable model document: {exc}") from exc
    actual = hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest()
    if actual != stored_digest:
        raise CorruptModel("payload digest mismatch")
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"model format {version!r}, expected {FORMAT_VERSION!r}")
    config = SummarizerConfig(
        k=payload["config"]["k"],
        boost_factor=payload["config"]["boost_factor"],
        idf_formula_id=payload["config"]["idf_formula_id"],
    )
    weights = AggregationWeights(
        w_sem=payload["weights"]["semantic"],
        w_pat=payload["weights"]["pattern"],
        w_term=payload["weights"]["term"],
    )
    centroids = {
        int(c): _centroid_from_doc(doc) for c, doc in payload["centroids"].items()
    }
    return ModelBundle(
        centroids=centroids,
        config=config,
        weights=weights,
        lexicon_digest=payload["lexicon_digest"],
        format_version=version,
    )


def save_model(model: ModelBundle, path: str | Path) -> None:
    """Write atomically (temp file + rename)."""
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(model_to_json(model), encoding="utf-8")
    tmp.replace(path)


def load_model(path: str | Path) -> ModelBundle:
    return model_from_json(Path(path).read_text(encoding="utf-8"))
