"""Report parsing, tokenization and labeled-corpus management.

A report file is UTF-8 plain text carved into sections by header lines
(``EXAM:``, ``CLINICAL HISTORY:``, ``COMPARISON:``, ``FINDINGS:``,
``IMPRESSION:``, matched case-insensitively, inline or line-leading).
A corpus directory holds ``*.txt`` report files plus a ``corpus.tsv``
manifest (``id<TAB>filename<TAB>category``); the manifest category
overrides anything parsed from the impression.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping

from .errors import EmptyCorpus, InvalidCategory, MissingFindings

if TYPE_CHECKING:
    from .lexicon import Lexicon

CATEGORIES: tuple[int, ...] = (0, 1, 2, 3, 4, 5, 6)

SECTION_KINDS: tuple[str, ...] = (
    "exam-type",
    "clinical-history",
    "comparison",
    "findings",
    "impression",
)

_HEADER_TO_KIND = {
    "EXAM": "exam-type",
    "CLINICAL HISTORY": "clinical-history",
    "COMPARISON": "comparison",
    "FINDINGS": "findings",
    "IMPRESSION": "impression",
}

_KIND_TO_HEADER = {kind: header for header, kind in _HEADER_TO_KIND.items()}

_HEADER_RE = re.compile(
    r"(?i)(?:^|(?<=\s))(EXAM|CLINICAL HISTORY|COMPARISON|FINDINGS|IMPRESSION)\s*:",
)

# "BI-RADS 3", "BI-RADS category 3", "BIRADS assessment: 3", ...
_CATEGORY_RE = re.compile(
    r"(?i)\bBI-?RADS(?:\s+(?:category|assessment))?\s*:?\s*([0-6])\b"
)

# word shape shared by the tokenizer and the misspelling scanner
WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’-][A-Za-z0-9]+)*")
_WORD_RE = WORD_RE

# Sentence boundaries: ., ! or ? runs followed by whitespace. Periods after
# these tokens do not end a sentence ("5 cm. from the nipple").
_BOUNDARY_RE = re.compile(r"([.!?]+)(\s+)")
_ABBREVIATIONS = frozenset({"cm", "mm", "o'clock"})
_LAST_WORD_RE = re.compile(r"[\w'’-]+$")

_VOWELS = frozenset("aeiou")


def validate_category(value: int) -> int:
    """Check a BI-RADS final-assessment category (0..6)."""
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 6:
        raise InvalidCategory(f"category must be an integer in 0..6, got {value!r}")
    return value


@dataclass(frozen=True)
class Token:
    """One word (or fused multiword term) of a sentence."""

    surface: str
    stem: str
    position: int


@dataclass(frozen=True)
class Sentence:
    """A findings sentence with its 0-based position in the section."""

    index: int
    text: str
    tokens: tuple[Token, ...]

    def stems(self) -> tuple[str, ...]:
        return tuple(t.stem for t in self.tokens)


@dataclass(frozen=True)
class Report:
    """A sectioned mammography report.

    ``sentences`` is derived from the findings section at parse time and
    kept here so downstream stages never re-tokenize.
    """

    id: str
    sections: Mapping[str, str]
    reported_category: int | None = None
    sentences: tuple[Sentence, ...] = ()

    @property
    def findings(self) -> str:
        return self.sections.get("findings", "")


def _one_vowel_group(s: str) -> bool:
    groups = 0
    in_group = False
    for ch in s:
        if ch in _VOWELS:
            if not in_group:
                groups += 1
                in_group = True
        else:
            in_group = False
    return groups == 1


def _ends_cvc(s: str) -> bool:
    if len(s) < 3:
        return False
    c1, v, c2 = s[-3], s[-2], s[-1]
    return c1 not in _VOWELS and v in _VOWELS and c2 not in _VOWELS and c2 not in "wxy"


def _restore_e(s: str) -> str:
    # "not" (from "noted") -> "note"; leaves "group", "cast", "layer" alone.
    if _ends_cvc(s) and _one_vowel_group(s):
        return s + "e"
    return s


def stem_word(word: str) -> str:
    """Suffix-stripping stemmer used everywhere stems are compared.

    Ordered rules (first match wins, minimum stem length 3):
      -ies -> -y ("densities" -> "density")
      -sses -> -ss ("masses" -> "mass")
      -s -> "" unless the word ends in -ss ("calcifications" -> "calcification")
      -ing -> "" ("layering" -> "layer")
      -ed -> "" ("scattered" -> "scatter")
    After -s/-ing/-ed stripping, a final "e" is restored when the stem has a
    single vowel group ending consonant-vowel-consonant ("noted" -> "note").
    """
    w = word.lower()
    if w.endswith("ies") and len(w) - 2 >= 3:
        return w[:-3] + "y"
    if w.endswith("sses") and len(w) - 2 >= 3:
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss") and len(w) - 1 >= 3:
        return _restore_e(w[:-1])
    if w.endswith("ing") and len(w) - 3 >= 3:
        return _restore_e(w[:-3])
    if w.endswith("ed") and len(w) - 2 >= 3:
        return _restore_e(w[:-2])
    return w


def tokenize(sentence_text: str, lexicon: "Lexicon | None" = None) -> list[Token]:
    """Lowercased, punctuation-stripped, stemmed tokens.

    When a lexicon is given, multiword lexicon terms are fused into single
    tokens first (longest match over consecutive words); a fused token
    keeps the lexicon term itself as its stem.
    """
    words = [(m.group(0)) for m in _WORD_RE.finditer(sentence_text)]
    if not words:
        return []
    lowered = [w.lower() for w in words]
    tokens: list[Token] = []
    index = {}
    if lexicon is not None:
        index = lexicon.multiword_index()
    i = 0
    position = 0
    n = len(words)
    while i < n:
        fused = 0
        if index:
            for candidate in index.get(lowered[i], ()):  # longest first
                k = len(candidate)
                if i + k <= n and tuple(lowered[i : i + k]) == candidate:
                    fused = k
                    break
        if fused:
            surface = " ".join(words[i : i + fused])
            stemmed = " ".join(lowered[i : i + fused])
            tokens.append(Token(surface=surface, stem=stemmed, position=position))
            i += fused
        else:
            tokens.append(
                Token(surface=words[i], stem=stem_word(lowered[i]), position=position)
            )
            i += 1
        position += 1
    return tokens


def split_sentences(text: str) -> list[str]:
    """Split on ./!/? followed by whitespace, protecting the abbreviation
    list (cm., mm., o'clock.)."""
    pieces: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        punct = m.group(1)
        if punct.startswith("."):
            before = _LAST_WORD_RE.search(text, 0, m.start(1))
            if before and before.group(0).lower() in _ABBREVIATIONS:
                continue
        pieces.append(text[start : m.end(1)].strip())
        start = m.end(0)
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return [p for p in pieces if p]


def _split_sections(raw: str) -> dict[str, str]:
    sections: dict[str, str] = {}
    matches = list(_HEADER_RE.finditer(raw))
    for i, m in enumerate(matches):
        kind = _HEADER_TO_KIND[m.group(1).upper()]
        end = matches[i + 1].start() if i + 1 < len(matches) else len(raw)
        body = raw[m.end() : end].strip()
        if kind not in sections:  # first occurrence wins
            sections[kind] = body
    return sections


def parse_report(
    raw: str,
    lexicon: "Lexicon | None" = None,
    report_id: str = "",
) -> Report:
    """Parse raw report text into a sectioned, tokenized Report.

    Raises MissingFindings when no findings section is recognized. The
    reported category is taken from the first BI-RADS line in the
    impression, when present.
    """
    if not raw or not raw.strip():
        raise MissingFindings("empty report text")
    sections = _split_sections(raw)
    findings = sections.get("findings", "")
    if not findings:
        raise MissingFindings("no findings section recognized")
    reported: int | None = None
    impression = sections.get("impression", "")
    m = _CATEGORY_RE.search(impression)
    if m:
        reported = validate_category(int(m.group(1)))
    sentences = tuple(
        Sentence(index=i, text=text, tokens=tuple(tokenize(text, lexicon)))
        for i, text in enumerate(split_sentences(findings))
    )
    return Report(
        id=report_id,
        sections=sections,
        reported_category=reported,
        sentences=sentences,
    )


def serialize_report(report: Report) -> str:
    """Render a Report back to the header/section text format.

    Sections are written verbatim, so a re-parse reproduces sections and
    any impression-derived category exactly. A manifest-level category
    override is a corpus-store concern and is not embedded in the text.
    """
    lines = []
    for kind in SECTION_KINDS:
        body = report.sections.get(kind)
        if body is not None:
            lines.append(f"{_KIND_TO_HEADER[kind]}: {body}")
    return "\n\n".join(lines) + "\n"


@dataclass(frozen=True)
class LabeledCorpus:
    """Reports that all carry a reported category, with unique ids."""

    reports: tuple[Report, ...] = field(default_factory=tuple)

    def __post_init__(self):
        seen = set()
        for r in self.reports:
            if r.reported_category is None:
                raise InvalidCategory(f"report {r.id!r} is unlabeled")
            validate_category(r.reported_category)
            if r.id in seen:
                raise ValueError(f"duplicate report id {r.id!r}")
            seen.add(r.id)

    def __len__(self) -> int:
        return len(self.reports)

    def __iter__(self) -> Iterator[Report]:
        return iter(self.reports)

    def by_category(self) -> dict[int, list[Report]]:
        groups: dict[int, list[Report]] = {}
        for r in self.reports:
            groups.setdefault(r.reported_category, []).append(r)
        return groups


def split_train_test(
    corpus: LabeledCorpus, ratio: float, seed: int
) -> tuple[LabeledCorpus, LabeledCorpus]:
    """Stratified split: per category, floor(ratio * n) reports go to the
    training side; the shuffle within each category is deterministic for a
    given seed."""
    if not 0 < ratio <= 1:
        raise ValueError(f"ratio must be in (0, 1], got {ratio}")
    if not corpus.reports:
        raise EmptyCorpus("cannot split an empty corpus")
    rng = random.Random(seed)
    train: list[Report] = []
    test: list[Report] = []
    groups = corpus.by_category()
    for category in sorted(groups):
        reports = list(groups[category])
        rng.shuffle(reports)
        cut = int(ratio * len(reports))
        train.extend(reports[:cut])
        test.extend(reports[cut:])
    return LabeledCorpus(tuple(train)), LabeledCorpus(tuple(test))


def load_corpus(directory: str | Path, lexicon: "Lexicon | None" = None) -> LabeledCorpus:
    """Load a corpus directory (report files + corpus.tsv manifest)."""
    directory = Path(directory)
    manifest = directory / "corpus.tsv"
    if not manifest.is_file():
        raise FileNotFoundError(f"manifest not found: {manifest}")
    reports: list[Report] = []
    for line_no, line in enumerate(manifest.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{manifest}:{line_no}: expected 3 tab-separated fields")
        report_id, filename, category_text = parts
        category = validate_category(int(category_text))
        raw = (directory / filename).read_text(encoding="utf-8")
        report = parse_report(raw, lexicon, report_id=report_id)
        reports.append(replace(report, reported_category=category))
    if not reports:
        raise EmptyCorpus(f"manifest {manifest} lists no reports")
    return LabeledCorpus(tuple(reports))


def store_report(
    directory: str | Path, report: Report, category: int, raw_text: str
) -> Path:
    """Persist a report file and append its manifest row (used by the
    service submit flow)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    validate_category(category)
    filename = f"{report.id}.txt"
    path = directory / filename
    path.write_text(raw_text, encoding="utf-8")
    manifest = directory / "corpus.tsv"
    with manifest.open("a", encoding="utf-8") as fh:
        fh.write(f"{report.id}\t{filename}\t{category}\n")
    return path


def category_counts(reports: Iterable[Report]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for r in reports:
        counts[r.reported_category] = counts.get(r.reported_category, 0) + 1
    return counts
