"""Bundled language resources: lexicon, synsets, stopwords, tag lexicon.

A Resources bundle carries a content digest over all four files; trained
models remember it so they cannot silently run against edited resources.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

from .corpus import stem_word
from .lexicon import LexicalResource, Lexicon, load_lexicon, load_synsets
from .syntax import RuleTagger, load_tag_lexicon

LEXICON_FILE = "lexicon.tsv"
SYNSETS_FILE = "synsets.tsv"
STOPWORDS_FILE = "stopwords.txt"
POSTAGS_FILE = "postags.tsv"


def data_dir() -> Path:
    return Path(importlib_resources.files("biradscheck") / "data")


def fixture_corpus_dir() -> Path:
    """Bundled 7-category synthetic corpus used by tests and demos."""
    return data_dir() / "fixture_corpus"


def normalizer_fixture_dir() -> Path:
    """Bundled gold-annotated corpus for the normalizer evaluation."""
    return data_dir() / "normalizer_fixture"


def load_stopwords(path: str | Path) -> frozenset[str]:
    """One word per line; both the word and its stem are stopwords so
    stemmed tokens match."""
    words: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if not word or word.startswith("#"):
            continue
        words.add(word)
        words.add(stem_word(word))
    return frozenset(words)


@dataclass(frozen=True)
class Resources:
    lexicon: Lexicon
    synsets: LexicalResource
    stopwords: frozenset[str]
    tagger: RuleTagger
    digest: str


def _digest(*paths: Path) -> str:
    h = hashlib.sha256()
    for path in paths:
        h.update(path.name.encode("utf-8"))
        h.update(b"\0")
        h.update(path.read_bytes())
        h.update(b"\0")
    return h.hexdigest()


def load_resources(directory: str | Path | None = None) -> Resources:
    """Load a resource directory (defaults to the bundled data files)."""
    base = Path(directory) if directory is not None else data_dir()
    lexicon_path = base / LEXICON_FILE
    synsets_path = base / SYNSETS_FILE
    stopwords_path = base / STOPWORDS_FILE
    postags_path = base / POSTAGS_FILE
    return Resources(
        lexicon=load_lexicon(lexicon_path),
        synsets=load_synsets(synsets_path),
        stopwords=load_stopwords(stopwords_path),
        tagger=RuleTagger(load_tag_lexicon(postags_path)),
        digest=_digest(lexicon_path, synsets_path, stopwords_path, postags_path),
    )
