"""Sanctioned-descriptor lexicon and the bundled mini lexical resource.

File formats (UTF-8, ``#`` comment lines):
  lexicon.tsv   term<TAB>kind<TAB>replacement1|replacement2...
  synsets.tsv   synset_id<TAB>member1|member2...<TAB>parent_id_or_dash
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .corpus import stem_word
from .errors import DanglingReplacement, DuplicateTerm, MissingReplacement

SANCTIONED = "sanctioned"
UNSANCTIONED = "unsanctioned"


@dataclass(frozen=True)
class LexiconEntry:
    term: str
    kind: str
    replacements: tuple[str, ...] = ()


class Lexicon:
    """Immutable term table; unsanctioned entries map to sanctioned ones."""

    def __init__(self, entries: Iterable[LexiconEntry], version: str = ""):
        table: dict[str, LexiconEntry] = {}
        for entry in entries:
            if entry.term in table:
                raise DuplicateTerm(entry.term)
            table[entry.term] = entry
        for entry in table.values():
            if entry.kind == UNSANCTIONED:
                if not entry.replacements:
                    raise MissingReplacement(entry.term)
                for rep in entry.replacements:
                    target = table.get(rep)
                    if target is None or target.kind != SANCTIONED:
                        raise DanglingReplacement(f"{entry.term} -> {rep}")
        self._entries = table
        self.version = version
        self._multiword_index: dict[str, tuple[tuple[str, ...], ...]] | None = None

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self._entries.values())

    def lookup(self, term: str) -> LexiconEntry | None:
        """Exact-match entry for a lowercased term, or None."""
        return self._entries.get(term)

    def terms(self) -> list[str]:
        return list(self._entries)

    def sanctioned_terms(self) -> list[str]:
        return [e.term for e in self._entries.values() if e.kind == SANCTIONED]

    def unsanctioned_terms(self) -> list[str]:
        return [e.term for e in self._entries.values() if e.kind == UNSANCTIONED]

    def multiword_index(self) -> dict[str, tuple[tuple[str, ...], ...]]:
        """First word -> multiword terms starting with it, longest first.

        Drives the longest-match fusion step in corpus.tokenize.
        """
        if self._multiword_index is None:
            by_first: dict[str, list[tuple[str, ...]]] = {}
            for term in self._entries:
                words = tuple(term.split())
                if len(words) > 1:
                    by_first.setdefault(words[0], []).append(words)
            self._multiword_index = {
                first: tuple(sorted(terms, key=len, reverse=True))
                for first, terms in by_first.items()
            }
        return self._multiword_index


def load_lexicon(path: str | Path) -> Lexicon:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    version = ""
    entries: list[LexiconEntry] = []
    for line_no, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if stripped.lower().startswith("# version:"):
                version = stripped.split(":", 1)[1].strip()
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 2:
            raise ValueError(f"{path}:{line_no}: expected term<TAB>kind[<TAB>replacements]")
        term = parts[0].strip().lower()
        kind = parts[1].strip().lower()
        if kind not in (SANCTIONED, UNSANCTIONED):
            raise ValueError(f"{path}:{line_no}: unknown kind {kind!r}")
        replacements: tuple[str, ...] = ()
        if len(parts) >= 3 and parts[2].strip():
            replacements = tuple(
                r.strip().lower() for r in parts[2].split("|") if r.strip()
            )
        if kind == UNSANCTIONED and not replacements:
            raise MissingReplacement(f"{path}:{line_no}: {term}")
        entries.append(LexiconEntry(term=term, kind=kind, replacements=replacements))
    if not version:
        version = hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]
    return Lexicon(entries, version=version)


def serialize_lexicon(lexicon: Lexicon) -> str:
    lines = [f"# version: {lexicon.version}"] if lexicon.version else []
    for entry in sorted(lexicon, key=lambda e: e.term):
        reps = "|".join(entry.replacements)
        lines.append(f"{entry.term}\t{entry.kind}\t{reps}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Synset:
    id: str
    members: tuple[str, ...]
    parent: str | None


class LexicalResource:
    """Mini synset forest used for word-sense path similarity.

    Single-word members are stored stemmed (same stemmer as the
    tokenizer); multiword members are stored lowercased verbatim, matching
    the stems that fused lexicon tokens carry. Words absent from every
    synset are handled by the caller's edit-distance fallback.
    """

    def __init__(self, synsets: Iterable[Synset], digest: str = ""):
        self.synsets: dict[str, Synset] = {}
        for s in synsets:
            if s.id in self.synsets:
                raise ValueError(f"duplicate synset id {s.id!r}")
            self.synsets[s.id] = s
        self._by_member: dict[str, tuple[str, ...]] = {}
        by_member: dict[str, list[str]] = {}
        for s in self.synsets.values():
            if s.parent is not None and s.parent not in self.synsets:
                raise ValueError(f"synset {s.id!r} has unknown parent {s.parent!r}")
            for member in s.members:
                by_member.setdefault(member, []).append(s.id)
        self._by_member = {m: tuple(ids) for m, ids in by_member.items()}
        self._depth: dict[str, int] = {}
        self._root: dict[str, str] = {}
        for sid in self.synsets:
            self._resolve_depth(sid)
        self.digest = digest
        self._distance_cache: dict[tuple[str, str], int | None] = {}

    def _resolve_depth(self, sid: str) -> int:
        if sid in self._depth:
            return self._depth[sid]
        chain = []
        cur: str | None = sid
        seen = set()
        while cur is not None and cur not in self._depth:
            if cur in seen:
                raise ValueError(f"cycle in synset parents at {cur!r}")
            seen.add(cur)
            chain.append(cur)
            cur = self.synsets[cur].parent
        base_depth = -1 if cur is None else self._depth[cur]
        base_root = chain[-1] if cur is None else self._root[cur]
        for node in reversed(chain):
            base_depth += 1
            self._depth[node] = base_depth
            self._root[node] = base_root
        return self._depth[sid]

    def __contains__(self, stem: str) -> bool:
        return stem in self._by_member

    def members(self) -> list[str]:
        """Every member stem across all synsets."""
        return list(self._by_member)

    def synsets_of(self, stem: str) -> tuple[str, ...]:
        return self._by_member.get(stem, ())

    def _synset_distance(self, a: str, b: str) -> int | None:
        """Number of parent edges between two synsets; None across trees."""
        if a == b:
            return 0
        if self._root[a] != self._root[b]:
            return None
        da, db = self._depth[a], self._depth[b]
        x, y = a, b
        dist = 0
        while da > db:
            x = self.synsets[x].parent
            da -= 1
            dist += 1
        while db > da:
            y = self.synsets[y].parent
            db -= 1
            dist += 1
        while x != y:
            x = self.synsets[x].parent
            y = self.synsets[y].parent
            dist += 2
        return dist

    def word_distance(self, a: str, b: str) -> int | None:
        """Shortest forest distance over all synset pairs containing the
        two stems; None when either is absent or they are unreachable."""
        key = (a, b) if a <= b else (b, a)
        if key in self._distance_cache:
            return self._distance_cache[key]
        sa, sb = self.synsets_of(a), self.synsets_of(b)
        best: int | None = None
        for ia in sa:
            for ib in sb:
                d = self._synset_distance(ia, ib)
                if d is not None and (best is None or d < best):
                    best = d
        self._distance_cache[key] = best
        return best


def load_synsets(path: str | Path) -> LexicalResource:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    synsets: list[Synset] = []
    for line_no, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise ValueError(
                f"{path}:{line_no}: expected synset_id<TAB>members<TAB>parent_or_dash"
            )
        sid = parts[0].strip()
        members = tuple(
            _normalize_member(m) for m in parts[1].split("|") if m.strip()
        )
        if not members:
            raise ValueError(f"{path}:{line_no}: synset {sid!r} has no members")
        parent = parts[2].strip()
        synsets.append(
            Synset(id=sid, members=members, parent=None if parent == "-" else parent)
        )
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]
    return LexicalResource(synsets, digest=digest)


def _normalize_member(member: str) -> str:
    member = member.strip().lower()
    if " " in member:
        return member
    return stem_word(member)
