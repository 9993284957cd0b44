"""Precision/recall arithmetic and evaluation tables.

Undefined ratios (zero denominators) are reported as None and rendered
"n/a", never as 0. Displayed ratios are truncated (not rounded) to two
decimals using integer arithmetic on the raw counts; internal values
keep full float precision. CSV headers are documented in
docs/eval-format.md.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Sequence

from .corpus import CATEGORIES, LabeledCorpus

if TYPE_CHECKING:
    from .classifier import ModelBundle
    from .normalizer import TermEvalRow
    from .resources import Resources


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError("counts must be non-negative")

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


def precision_recall(counts: ConfusionCounts) -> tuple[float | None, float | None]:
    """P = tp/(tp+fp), R = tp/(tp+fn); None when the denominator is 0."""
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else None
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else None
    return precision, recall


def truncate_ratio(numerator: int, denominator: int) -> str:
    """Exact 2-decimal truncation of numerator/denominator ("n/a" for a
    zero denominator); integer arithmetic avoids float artifacts."""
    if denominator == 0:
        return "n/a"
    hundredths = (100 * numerator) // denominator
    return f"{hundredths // 100}.{hundredths % 100:02d}"


def render_precision(counts: ConfusionCounts) -> str:
    return truncate_ratio(counts.tp, counts.tp + counts.fp)


def render_recall(counts: ConfusionCounts) -> str:
    return truncate_ratio(counts.tp, counts.tp + counts.fn)


@dataclass(frozen=True)
class CategoryEval:
    counts: ConfusionCounts
    precision: float | None
    recall: float | None


@dataclass(frozen=True)
class EvalMetrics:
    """Per-category and micro-aggregate classifier metrics.

    ``counts_balanced`` records whether total fp equals total fn (the
    identity that holds when every report gets exactly one prediction
    over a fully labeled set); aggregates are computed from the summed
    counts either way.
    """

    per_category: dict[int, CategoryEval]
    aggregate: CategoryEval
    counts_balanced: bool

    @classmethod
    def from_counts(cls, counts: Mapping[int, ConfusionCounts]) -> "EvalMetrics":
        per_category = {}
        total = ConfusionCounts()
        for category in sorted(counts):
            c = counts[category]
            p, r = precision_recall(c)
            per_category[category] = CategoryEval(counts=c, precision=p, recall=r)
            total = total + c
        p, r = precision_recall(total)
        return cls(
            per_category=per_category,
            aggregate=CategoryEval(counts=total, precision=p, recall=r),
            counts_balanced=total.fp == total.fn,
        )


def evaluate_classifier(
    model: "ModelBundle", test: LabeledCorpus, resources: "Resources"
) -> EvalMetrics:
    """Classify every test report and tally per-category tp/fp/fn: tp when
    prediction and label agree on a category, otherwise one fp for the
    predicted category and one fn for the true one."""
    from .classifier import classify

    tp = {c: 0 for c in CATEGORIES}
    fp = {c: 0 for c in CATEGORIES}
    fn = {c: 0 for c in CATEGORIES}
    for report in test:
        predicted = classify(report, model, resources).inferred
        actual = report.reported_category
        if predicted == actual:
            tp[actual] += 1
        else:
            fp[predicted] += 1
            fn[actual] += 1
    return EvalMetrics.from_counts(
        {c: ConfusionCounts(tp=tp[c], fp=fp[c], fn=fn[c]) for c in CATEGORIES}
    )


CLASSIFIER_CSV_HEADER = ["category", "tp", "fp", "fn", "precision", "recall"]
NORMALIZER_CSV_HEADER = ["term", "occurrences", "tp", "fn", "fp"]


def _classifier_rows(metrics: EvalMetrics) -> list[list[str]]:
    rows = []
    for category, entry in sorted(metrics.per_category.items()):
        c = entry.counts
        rows.append(
            [str(category), str(c.tp), str(c.fp), str(c.fn),
             render_precision(c), render_recall(c)]
        )
    c = metrics.aggregate.counts
    rows.append(
        ["Total:", str(c.tp), str(c.fp), str(c.fn), render_precision(c), render_recall(c)]
    )
    return rows


def render_classifier_table(metrics: EvalMetrics) -> str:
    """Plain-text table, one space-joined row per category plus totals."""
    lines = [" ".join(["Category", "tp", "fp", "fn", "Precision", "Recall"])]
    lines += [" ".join(row) for row in _classifier_rows(metrics)]
    return "\n".join(lines) + "\n"


def classifier_csv(metrics: EvalMetrics) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CLASSIFIER_CSV_HEADER)
    for row in _classifier_rows(metrics):
        writer.writerow(["total" if row[0] == "Total:" else row[0]] + row[1:])
    return out.getvalue()


def render_normalizer_table(rows: Sequence["TermEvalRow"]) -> str:
    """Per-term normalization results (term, occurrences, tp, fn, fp)."""
    lines = [" ".join(["Term", "Occurrences", "tp", "fn", "fp"])]
    total = [0, 0, 0, 0]
    for row in rows:
        lines.append(f"{row.term} {row.occurrences} {row.tp} {row.fn} {row.fp}")
        total[0] += row.occurrences
        total[1] += row.tp
        total[2] += row.fn
        total[3] += row.fp
    lines.append(f"Total: {total[0]} {total[1]} {total[2]} {total[3]}")
    return "\n".join(lines) + "\n"


def normalizer_csv(rows: Sequence["TermEvalRow"]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(NORMALIZER_CSV_HEADER)
    for row in rows:
        writer.writerow([row.term, row.occurrences, row.tp, row.fn, row.fp])
    return out.getvalue()
