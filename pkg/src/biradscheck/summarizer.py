"""ATF/IDF term statistics, sentence scoring and centroid construction.

A category's centroid is its full term table, its top-K representative
sentences (score = sum of atf*idf over non-stopword tokens, doubled when
the sentence contains a sanctioned descriptor), and the aggregated chunk
patterns of those representatives.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .corpus import Report, Sentence
from .errors import CategoryMismatch, EmptyCorpus
from .syntax import ChunkPattern, RuleTagger, SentenceSyntax, extract_syntax

if TYPE_CHECKING:
    from .normalizer import PatternAutomaton


@dataclass(frozen=True)
class TermStats:
    term: str
    raw_tf: int
    atf: float
    df: int
    idf: float
    stopword: bool = False


@dataclass(frozen=True)
class SummarizerConfig:
    k: int = 12
    boost_factor: float = 2.0
    idf_formula_id: str = "ln1p-smoothed"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.boost_factor < 1:
            raise ValueError("boost_factor must be >= 1")


@dataclass(frozen=True)
class ScoredSentence:
    """A scored findings sentence; syntax is attached once the sentence is
    selected as a representative."""

    report_id: str
    sentence: Sentence
    score: float
    term_snapshot: tuple[tuple[str, float, float], ...]  # (stem, atf, idf)
    syntax: SentenceSyntax | None = None


PatternTable = dict[ChunkPattern, tuple[int, tuple[tuple[int, tuple[int, ...]], ...]]]


@dataclass(frozen=True)
class Representation:
    """Shared shape of a trained category centroid and a summarized report."""

    term_table: dict[str, TermStats]
    representatives: tuple[ScoredSentence, ...]
    pattern_table: PatternTable
    report_count: int


@dataclass(frozen=True)
class CentroidVector(Representation):
    category: int = 0
    reports: tuple[Report, ...] = field(default_factory=tuple)


def term_stats(
    category_corpus: Sequence[Report], stopwords: frozenset[str] = frozenset()
) -> dict[str, TermStats]:
    """One entry per distinct findings stem. Stopwords stay in the table,
    flagged, and participate in the ATF maximum (atf of the most frequent
    stem is 1.0 by definition); idf = ln((1+N)/(1+df)) + 1."""
    if not category_corpus:
        raise EmptyCorpus("term_stats needs at least one report")
    counts: dict[str, int] = {}
    docs: dict[str, int] = {}
    for report in category_corpus:
        seen: set[str] = set()
        for sentence in report.sentences:
            for token in sentence.tokens:
                counts[token.stem] = counts.get(token.stem, 0) + 1
                seen.add(token.stem)
        for stem in seen:
            docs[stem] = docs.get(stem, 0) + 1
    if not counts:
        return {}
    max_tf = max(counts.values())
    n = len(category_corpus)
    table: dict[str, TermStats] = {}
    for stem in sorted(counts):
        tf = counts[stem]
        df = docs[stem]
        table[stem] = TermStats(
            term=stem,
            raw_tf=tf,
            atf=tf / max_tf,
            df=df,
            idf=math.log((1 + n) / (1 + df)) + 1.0,
            stopword=stem in stopwords,
        )
    return table


def score_sentence(
    sentence: Sentence,
    stats: Mapping[str, TermStats],
    birads_automaton: "PatternAutomaton | None",
    config: SummarizerConfig,
    report_id: str = "",
) -> ScoredSentence:
    """base = sum of atf*idf over non-stopword tokens; multiplied once by
    the boost factor when the sentence contains a sanctioned term."""
    base = 0.0
    snapshot: list[tuple[str, float, float]] = []
    seen: set[str] = set()
    for token in sentence.tokens:
        entry = stats.get(token.stem)
        if entry is None or entry.stopword:
            continue
        base += entry.atf * entry.idf
        if token.stem not in seen:
            seen.add(token.stem)
            snapshot.append((token.stem, entry.atf, entry.idf))
    boosted = False
    if birads_automaton is not None and sentence.text:
        from .normalizer import _word_bounded

        boosted = any(
            _word_bounded(sentence.text, m.start, m.end)
            for m in birads_automaton.scan(sentence.text)
        )
    score = base * config.boost_factor if boosted else base
    return ScoredSentence(
        report_id=report_id,
        sentence=sentence,
        score=score,
        term_snapshot=tuple(snapshot),
    )


def select_representatives(
    scored: Sequence[ScoredSentence], k: int
) -> list[ScoredSentence]:
    """Top-k by score; equal scores keep their input order (lower sentence
    index first)."""
    ranked = sorted(scored, key=lambda s: -s.score)
    return list(ranked[: max(k, 0)])


def aggregate_patterns(representatives: Sequence[ScoredSentence]) -> PatternTable:
    table: PatternTable = {}
    for rep_pos, rep in enumerate(representatives, 1):
        if rep.syntax is None:
            continue
        for pattern, (count, positions) in rep.syntax.pattern_occurrences.items():
            total, locations = table.get(pattern, (0, ()))
            table[pattern] = (total + count, locations + ((rep_pos, positions),))
    return table


def _important_terms(
    table: Mapping[str, TermStats], sanctioned_terms: Iterable[str]
) -> list[str]:
    """Sanctioned descriptors plus high-ATF (>= 0.5) or top-decile-IDF stems."""
    terms = list(sanctioned_terms)
    content = [s for s in table.values() if not s.stopword]
    if content:
        idfs = sorted((s.idf for s in content), reverse=True)
        cutoff = idfs[max(0, (len(idfs) - 1) // 10)]
        for s in content:
            if (s.atf >= 0.5 or s.idf >= cutoff) and s.term not in terms:
                terms.append(s.term)
    return terms


def build_representation(
    reports: Sequence[Report],
    config: SummarizerConfig,
    stopwords: frozenset[str] = frozenset(),
    birads_automaton: "PatternAutomaton | None" = None,
    sanctioned_terms: Iterable[str] = (),
    tagger: RuleTagger | None = None,
) -> Representation:
    """Summarize a pool of reports: term table, top-K representatives with
    syntax, aggregated pattern table. Deterministic for a fixed report
    order."""
    if not reports:
        raise EmptyCorpus("cannot summarize an empty report pool")
    table = term_stats(reports, stopwords)
    scored: list[ScoredSentence] = []
    for report in reports:
        for sentence in report.sentences:
            scored.append(
                score_sentence(sentence, table, birads_automaton, config, report.id)
            )
    chosen = select_representatives(scored, config.k)
    important = _important_terms(table, sanctioned_terms)
    chosen = [
        replace(rep, syntax=extract_syntax(rep.sentence, important, tagger))
        for rep in chosen
    ]
    return Representation(
        term_table=table,
        representatives=tuple(chosen),
        pattern_table=aggregate_patterns(chosen),
        report_count=len(reports),
    )


def build_centroid(
    category_corpus: Sequence[Report],
    category: int,
    config: SummarizerConfig,
    stopwords: frozenset[str] = frozenset(),
    birads_automaton: "PatternAutomaton | None" = None,
    sanctioned_terms: Iterable[str] = (),
    tagger: RuleTagger | None = None,
) -> CentroidVector:
    """Train one category's centroid from its report corpus."""
    for report in category_corpus:
        if report.reported_category is not None and report.reported_category != category:
            raise CategoryMismatch(
                f"report {report.id!r} labeled {report.reported_category}, "
                f"centroid is for {category}"
            )
    rep = build_representation(
        category_corpus, config, stopwords, birads_automaton, sanctioned_terms, tagger
    )
    return CentroidVector(
        term_table=rep.term_table,
        representatives=rep.representatives,
        pattern_table=rep.pattern_table,
        report_count=rep.report_count,
        category=category,
        reports=tuple(category_corpus),
    )


def add_report(
    centroid: CentroidVector,
    report: Report,
    config: SummarizerConfig,
    stopwords: frozenset[str] = frozenset(),
    birads_automaton: "PatternAutomaton | None" = None,
    sanctioned_terms: Iterable[str] = (),
    tagger: RuleTagger | None = None,
) -> CentroidVector:
    """Extend a centroid with one more report: a full recompute over the
    remembered corpus plus the new report (no incremental approximation)."""
    if report.reported_category is not None and report.reported_category != centroid.category:
        raise CategoryMismatch(
            f"report {report.id!r} labeled {report.reported_category}, "
            f"centroid is for {centroid.category}"
        )
    return build_centroid(
        tuple(centroid.reports) + (report,),
        centroid.category,
        config,
        stopwords,
        birads_automaton,
        sanctioned_terms,
        tagger,
    )


def export_centroid_xml(centroid: CentroidVector) -> str:
    """Centroid as nested XML: category -> term table -> sentences (with
    their snapshots and patterns) -> aggregated patterns."""
    root = ET.Element("category", value=str(centroid.category))
    root.set("reports", str(centroid.report_count))
    terms_el = ET.SubElement(root, "terms")
    for stats in centroid.term_table.values():
        ET.SubElement(
            terms_el,
            "term",
            stem=stats.term,
            raw_tf=str(stats.raw_tf),
            atf=repr(stats.atf),
            df=str(stats.df),
            idf=repr(stats.idf),
            stopword="1" if stats.stopword else "0",
        )
    sentences_el = ET.SubElement(root, "sentences")
    for rep in centroid.representatives:
        s_el = ET.SubElement(
            sentences_el,
            "sentence",
            report=rep.report_id,
            index=str(rep.sentence.index),
            score=repr(rep.score),
        )
        ET.SubElement(s_el, "text").text = rep.sentence.text
        snap_el = ET.SubElement(s_el, "terms")
        for stem, atf, idf in rep.term_snapshot:
            ET.SubElement(snap_el, "term", stem=stem, atf=repr(atf), idf=repr(idf))
        if rep.syntax is not None:
            pat_el = ET.SubElement(s_el, "patterns")
            for pattern, (count, positions) in rep.syntax.pattern_occurrences.items():
                ET.SubElement(
                    pat_el,
                    "pattern",
                    form=pattern.render(),
                    occurrences=str(count),
                    locations=",".join(str(p) for p in positions),
                )
    agg_el = ET.SubElement(root, "patterns")
    for pattern, (count, locations) in centroid.pattern_table.items():
        loc_text = "; ".join(
            f"S{rep_pos}: {', '.join(str(p) for p in positions)}"
            for rep_pos, positions in locations
        )
        ET.SubElement(
            agg_el,
            "pattern",
            form=pattern.render(),
            occurrences=str(count),
            locations=loc_text,
        )
    return ET.tostring(root, encoding="unicode")
