"""Unsanctioned-term and misspelling detection.

The multi-pattern scanner is an Aho-Corasick automaton built over the
whole lexicon (sanctioned + unsanctioned terms). Raw matches may fall
inside words ("mass" in "massive"); detections are filtered to
word-boundary matches and resolved leftmost-longest, so multiword
descriptors beat their heads ("focal asymmetry" beats "asymmetry").
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from ._kernels import levenshtein
from .errors import EmptyPatternSet, OverlappingSpans, SpanOutOfBounds

if TYPE_CHECKING:
    from .lexicon import Lexicon

MISSPELLING = "misspelling"
UNSANCTIONED = "unsanctioned"


@dataclass(frozen=True)
class Match:
    pattern_id: int
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Detection:
    start: int
    end: int
    found_term: str
    kind: str
    suggestions: tuple[str, ...] = ()


class PatternAutomaton:
    """Aho-Corasick matcher over lowercase patterns (case-insensitive scan)."""

    def __init__(self, patterns: Sequence[str]):
        cleaned = [p.lower() for p in patterns]
        if not cleaned or any(not p for p in cleaned):
            raise EmptyPatternSet("patterns must be non-empty strings")
        self.patterns: tuple[str, ...] = tuple(cleaned)
        # state 0 is the root
        self._goto: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        self._out: list[tuple[int, ...]] = [()]
        for pid, pattern in enumerate(self.patterns):
            state = 0
            for ch in pattern:
                nxt = self._goto[state].get(ch)
                if nxt is None:
                    nxt = len(self._goto)
                    self._goto[state][ch] = nxt
                    self._goto.append({})
                    self._fail.append(0)
                    self._out.append(())
                state = nxt
            self._out[state] = self._out[state] + (pid,)
        queue: deque[int] = deque()
        for state in self._goto[0].values():
            queue.append(state)
        while queue:
            state = queue.popleft()
            for ch, nxt in self._goto[state].items():
                queue.append(nxt)
                fail = self._fail[state]
                while fail and ch not in self._goto[fail]:
                    fail = self._fail[fail]
                fallback = self._goto[fail].get(ch, 0)
                if fallback == nxt:
                    fallback = 0
                self._fail[nxt] = fallback
                # output sets are closed under failure links
                self._out[nxt] = self._out[nxt] + self._out[fallback]

    def pattern(self, pattern_id: int) -> str:
        return self.patterns[pattern_id]

    def scan(self, text: str) -> list[Match]:
        """Every occurrence of every pattern, sorted by start position then
        pattern length descending."""
        low = text.lower()
        if len(low) != len(text):  # rare unicode casing expansion
            low = "".join(ch.lower()[:1] or ch for ch in text)
        matches: list[Match] = []
        state = 0
        for i, ch in enumerate(low):
            while state and ch not in self._goto[state]:
                state = self._fail[state]
            state = self._goto[state].get(ch, 0)
            for pid in self._out[state]:
                end = i + 1
                matches.append(Match(pid, end - len(self.patterns[pid]), end))
        matches.sort(key=lambda m: (m.start, -(m.end - m.start)))
        return matches


def build_automaton(patterns: Sequence[str]) -> PatternAutomaton:
    if not patterns:
        raise EmptyPatternSet("no patterns given")
    return PatternAutomaton(patterns)


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit insert/delete/substitute costs."""
    return levenshtein(a, b)


def suggest_spelling(
    word: str,
    vocabulary: Mapping[str, int] | Iterable[str],
    max_distance: int = 2,
) -> list[str]:
    """Vocabulary words within max_distance of an out-of-vocabulary word,
    ranked by (distance asc, corpus frequency desc, lexicographic)."""
    if isinstance(vocabulary, Mapping):
        freq = vocabulary
    else:
        freq = {w: 0 for w in vocabulary}
    word = word.lower()
    ranked: list[tuple[int, int, str]] = []
    for candidate, count in freq.items():
        if abs(len(candidate) - len(word)) > max_distance:
            continue
        d = levenshtein(word, candidate)
        if d <= max_distance:
            ranked.append((d, -count, candidate))
    ranked.sort()
    return [c for _, _, c in ranked]


def _word_bounded(text: str, start: int, end: int) -> bool:
    if start > 0 and text[start - 1].isalnum():
        return False
    if end < len(text) and text[end].isalnum():
        return False
    return True


def _leftmost_longest(matches: list[Match]) -> list[Match]:
    kept: list[Match] = []
    last_end = -1
    for m in matches:  # already sorted (start asc, length desc)
        if m.start >= last_end:
            kept.append(m)
            last_end = m.end
    return kept


def detect_unsanctioned(text: str, lexicon: "Lexicon") -> list[Detection]:
    """One Detection per word-boundary occurrence of an unsanctioned term,
    after leftmost-longest overlap resolution against the full lexicon."""
    automaton = lexicon_automaton(lexicon)
    bounded = [m for m in automaton.scan(text) if _word_bounded(text, m.start, m.end)]
    detections = []
    for m in _leftmost_longest(bounded):
        term = automaton.pattern(m.pattern_id)
        entry = lexicon.lookup(term)
        if entry is not None and entry.kind == UNSANCTIONED:
            detections.append(
                Detection(
                    start=m.start,
                    end=m.end,
                    found_term=term,
                    kind=UNSANCTIONED,
                    suggestions=entry.replacements,
                )
            )
    return detections


_AUTOMATON_CACHE: dict[int, tuple["Lexicon", PatternAutomaton]] = {}


def lexicon_automaton(lexicon: "Lexicon") -> PatternAutomaton:
    """Automaton over every lexicon term, cached per lexicon object."""
    cached = _AUTOMATON_CACHE.get(id(lexicon))
    if cached is not None and cached[0] is lexicon:
        return cached[1]
    automaton = PatternAutomaton(sorted(lexicon.terms()))
    _AUTOMATON_CACHE[id(lexicon)] = (lexicon, automaton)
    return automaton


def sanctioned_automaton(lexicon: "Lexicon") -> PatternAutomaton:
    return PatternAutomaton(sorted(lexicon.sanctioned_terms()))


def apply_replacements(
    text: str, accepted: Sequence[tuple[tuple[int, int], str]]
) -> str:
    """Replace accepted spans right-to-left so earlier offsets survive."""
    spans = sorted(accepted, key=lambda item: item[0])
    last_end = -1
    for (start, end), _ in spans:
        if start < 0 or end > len(text) or start >= end:
            raise SpanOutOfBounds(f"span {start}..{end} outside text of length {len(text)}")
        if start < last_end:
            raise OverlappingSpans(f"span {start}..{end} overlaps a previous span")
        last_end = end
    for (start, end), replacement in reversed(spans):
        text = text[:start] + replacement + text[end:]
    return text


@dataclass(frozen=True)
class GoldSpan:
    report_id: str
    start: int
    end: int
    term: str


@dataclass(frozen=True)
class DetectionEval:
    tp: int
    fp: int
    fn: int
    precision: float | None
    recall: float | None


def load_gold(path: str | Path) -> list[GoldSpan]:
    """Gold annotation TSV: report_id<TAB>start<TAB>end<TAB>term."""
    spans = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ValueError(f"{path}:{line_no}: expected 4 tab-separated fields")
        spans.append(GoldSpan(parts[0], int(parts[1]), int(parts[2]), parts[3]))
    return spans


def evaluate_detection(
    gold: Iterable[GoldSpan], found: Mapping[str, Sequence[Detection]]
) -> DetectionEval:
    """Span-exact precision/recall of detections against gold annotations."""
    from .evaluation import ConfusionCounts, precision_recall

    gold_keys = {(g.report_id, g.start, g.end) for g in gold}
    found_keys = {
        (report_id, d.start, d.end)
        for report_id, detections in found.items()
        for d in detections
    }
    tp = len(gold_keys & found_keys)
    fp = len(found_keys - gold_keys)
    fn = len(gold_keys - found_keys)
    precision, recall = precision_recall(ConfusionCounts(tp=tp, fp=fp, fn=fn))
    return DetectionEval(tp=tp, fp=fp, fn=fn, precision=precision, recall=recall)


@dataclass(frozen=True)
class TermEvalRow:
    """One Table-style row of the per-term normalization evaluation."""

    term: str
    occurrences: int
    tp: int
    fn: int
    fp: int


def detection_term_table(
    gold: Iterable[GoldSpan],
    found: Mapping[str, Sequence[Detection]],
    terms: Sequence[str],
) -> list[TermEvalRow]:
    """Aggregate span-exact results per unsanctioned term."""
    gold_by_key: dict[tuple[str, int, int], str] = {
        (g.report_id, g.start, g.end): g.term for g in gold
    }
    tp: dict[str, int] = {t: 0 for t in terms}
    fp: dict[str, int] = {t: 0 for t in terms}
    occurrences: dict[str, int] = {t: 0 for t in terms}
    for g_term in gold_by_key.values():
        if g_term in occurrences:
            occurrences[g_term] += 1
    for report_id, detections in found.items():
        for d in detections:
            if d.found_term not in tp:
                continue
            if (report_id, d.start, d.end) in gold_by_key:
                tp[d.found_term] += 1
            else:
                fp[d.found_term] += 1
    return [
        TermEvalRow(
            term=t,
            occurrences=occurrences[t],
            tp=tp[t],
            fn=occurrences[t] - tp[t],
            fp=fp[t],
        )
        for t in terms
    ]
