"""Rule-based part-of-speech tagging and shallow chunking.

Tagging priority: closed-class words, then the domain tag lexicon
(``postags.tsv``), then suffix rules, then the NN default. The chunker
is a greedy left-to-right grammar producing phrase patterns such as
``[NP: DT JJ NN]``; chunk positions are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .corpus import stem_word

if TYPE_CHECKING:
    from .corpus import Sentence

TAGS: frozenset[str] = frozenset(
    {"DT", "JJ", "NN", "NNS", "VB", "VBZ", "VBN", "VBD", "IN", "RB", "WDT", "PRP$", "CC", "CD", "TO"}
)

CHUNK_LABELS: tuple[str, ...] = ("NP", "VP", "PP", "ADVP", "ADJP")

_CLOSED_CLASS: dict[str, str] = {
    "a": "DT", "an": "DT", "the": "DT", "this": "DT", "that": "DT",
    "these": "DT", "those": "DT", "no": "DT", "each": "DT", "any": "DT",
    "some": "DT", "all": "DT", "both": "DT",
    "which": "WDT",
    "its": "PRP$", "her": "PRP$", "his": "PRP$", "their": "PRP$",
    "and": "CC", "or": "CC", "but": "CC", "nor": "CC",
    "in": "IN", "of": "IN", "with": "IN", "at": "IN", "on": "IN", "by": "IN",
    "for": "IN", "from": "IN", "within": "IN", "without": "IN", "since": "IN",
    "during": "IN", "near": "IN", "under": "IN", "over": "IN", "as": "IN",
    "into": "IN", "between": "IN", "along": "IN", "through": "IN",
    "to": "TO",
    "is": "VBZ", "are": "VBZ", "was": "VBD", "were": "VBD",
    "be": "VB", "been": "VBN", "being": "VBN",
    "has": "VBZ", "have": "VB", "had": "VBD",
    "not": "RB", "there": "RB",
}

_TAG_FAMILY: dict[str, str] = {
    "NN": "NP", "NNS": "NP", "DT": "NP", "WDT": "NP", "PRP$": "NP", "CD": "NP",
    "VB": "VP", "VBZ": "VP", "VBD": "VP", "VBN": "VP",
    "IN": "PP", "TO": "PP",
    "RB": "ADVP", "CC": "ADVP",
    "JJ": "ADJP",
}

_NUMBER_RE = re.compile(r"^\d+(?:[.,]\d+)*$")


class RuleTagger:
    """Deterministic tagger: closed class, domain lexicon, suffixes, NN."""

    def __init__(self, tag_lexicon: Mapping[str, str] | None = None):
        self.tag_lexicon = {k.lower(): v for k, v in (tag_lexicon or {}).items()}
        for tag in self.tag_lexicon.values():
            if tag not in TAGS:
                raise ValueError(f"unknown tag {tag!r} in domain tag lexicon")

    def tag_word(self, word: str) -> str:
        low = word.lower()
        if _NUMBER_RE.match(low):
            return "CD"
        tag = _CLOSED_CLASS.get(low)
        if tag is not None:
            return tag
        tag = self.tag_lexicon.get(low)
        if tag is not None:
            return tag
        if low.endswith("ly") and len(low) > 3:
            return "RB"
        if (low.endswith("ing") or low.endswith("ed")) and len(low) > 4:
            return "VBN"
        if low.endswith("s") and not low.endswith("ss") and len(low) > 3:
            singular = stem_word(low)
            if self.tag_lexicon.get(singular, "NN") in ("NN", "NNS"):
                return "NNS"
        return "NN"

    def tag(self, words: Sequence[str]) -> list[tuple[str, str]]:
        return [(w, self.tag_word(w)) for w in words]


def pos_tag(words: Sequence[str], tagger: RuleTagger | None = None) -> list[tuple[str, str]]:
    """Tag surface words (pre-stemming) with the fixed Penn-style tag set."""
    return (tagger or RuleTagger()).tag(words)


def load_tag_lexicon(path: str | Path) -> dict[str, str]:
    """postags.tsv: word<TAB>tag, '#' comments."""
    table: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{line_no}: expected word<TAB>tag")
        word, tag = parts[0].strip().lower(), parts[1].strip()
        if tag not in TAGS:
            raise ValueError(f"{path}:{line_no}: unknown tag {tag!r}")
        table[word] = tag
    return table


@dataclass(frozen=True)
class ChunkPattern:
    label: str
    tags: tuple[str, ...]

    def render(self) -> str:
        return f"[{self.label}: {' '.join(self.tags)}]"


@dataclass(frozen=True)
class Chunk:
    pattern: ChunkPattern
    words: tuple[str, ...]


_NOUN = ("NN", "NNS")
_VERB = ("VBZ", "VBD", "VB", "VBN")


def chunk(tagged: Sequence[tuple[str, str]]) -> list[Chunk]:
    """Greedy left-to-right chunking.

    NP <- DT? JJ* (NN|NNS)+ | WDT | PRP$ JJ* NN; PP <- IN; VP <- run of a
    single verb tag (VBZ|VBD|VB|VBN); ADVP <- RB+; anything unmatched
    becomes a singleton chunk labeled by its tag family.
    """
    chunks: list[Chunk] = []
    i = 0
    n = len(tagged)

    def emit(label: str, start: int, end: int) -> None:
        words = tuple(w for w, _ in tagged[start:end])
        tags = tuple(t for _, t in tagged[start:end])
        chunks.append(Chunk(ChunkPattern(label, tags), words))

    while i < n:
        tag = tagged[i][1]
        # NP alternative 1: DT? JJ* (NN|NNS)+
        j = i
        if j < n and tagged[j][1] == "DT":
            j += 1
        while j < n and tagged[j][1] == "JJ":
            j += 1
        k = j
        while k < n and tagged[k][1] in _NOUN:
            k += 1
        if k > j:
            emit("NP", i, k)
            i = k
            continue
        # NP alternative 2: lone WDT
        if tag == "WDT":
            emit("NP", i, i + 1)
            i += 1
            continue
        # NP alternative 3: PRP$ JJ* NN
        if tag == "PRP$":
            j = i + 1
            while j < n and tagged[j][1] == "JJ":
                j += 1
            if j < n and tagged[j][1] == "NN":
                emit("NP", i, j + 1)
                i = j + 1
                continue
        if tag == "IN":
            emit("PP", i, i + 1)
            i += 1
            continue
        if tag in _VERB:
            # runs of one verb tag only: "seen/VBN is/VBZ" stays two chunks
            j = i
            while j < n and tagged[j][1] == tag:
                j += 1
            emit("VP", i, j)
            i = j
            continue
        if tag == "RB":
            j = i
            while j < n and tagged[j][1] == "RB":
                j += 1
            emit("ADVP", i, j)
            i = j
            continue
        emit(_TAG_FAMILY.get(tag, "NP"), i, i + 1)
        i += 1
    return chunks


@dataclass(frozen=True)
class SentenceSyntax:
    """Both context-structure strings plus pattern/term occurrence maps."""

    tagged_with_words: str
    tags_only: str
    pattern_occurrences: dict[ChunkPattern, tuple[int, tuple[int, ...]]]
    important_term_locations: dict[str, tuple[int, ...]]


def render_chunks_with_words(chunks: Sequence[Chunk]) -> str:
    parts = []
    for c in chunks:
        inner = " ".join(f"{w}/{t}" for w, t in zip(c.words, c.pattern.tags))
        parts.append(f"[{c.pattern.label} {inner}]")
    return " ".join(parts)


def render_chunks_tags_only(chunks: Sequence[Chunk]) -> str:
    parts = []
    for c in chunks:
        parts.append(f"[{c.pattern.label} {' '.join(c.pattern.tags)}]")
    return " ".join(parts)


def sentence_words(sentence: "Sentence") -> list[str]:
    """Surface words in order; fused multiword tokens are split back so
    tagging sees individual words."""
    words: list[str] = []
    for token in sentence.tokens:
        words.extend(token.surface.split(" "))
    return words


def extract_syntax(
    sentence: "Sentence",
    important_terms: Iterable[str] = (),
    tagger: RuleTagger | None = None,
) -> SentenceSyntax:
    """Tag + chunk one sentence and collect pattern and important-term
    occurrence positions (both 1-based)."""
    words = sentence_words(sentence)
    tagged = pos_tag(words, tagger)
    chunks = chunk(tagged)
    occurrences: dict[ChunkPattern, tuple[int, tuple[int, ...]]] = {}
    for position, c in enumerate(chunks, 1):
        count, positions = occurrences.get(c.pattern, (0, ()))
        occurrences[c.pattern] = (count + 1, positions + (position,))
    lowered = [w.lower() for w in words]
    stems = [stem_word(w) for w in lowered]
    term_locations: dict[str, tuple[int, ...]] = {}
    for term in important_terms:
        term_words = term.split(" ")
        k = len(term_words)
        positions = []
        for i in range(len(lowered) - k + 1):
            window = lowered[i : i + k]
            if window == term_words or (k == 1 and stems[i] == term):
                positions.append(i + 1)
        if positions:
            term_locations[term] = tuple(positions)
    return SentenceSyntax(
        tagged_with_words=render_chunks_with_words(chunks),
        tags_only=render_chunks_tags_only(chunks),
        pattern_occurrences=occurrences,
        important_term_locations=term_locations,
    )
