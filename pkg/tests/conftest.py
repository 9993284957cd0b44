from __future__ import annotations

import pytest

from biradscheck.classifier import train
from biradscheck.corpus import load_corpus
from biradscheck.resources import fixture_corpus_dir, load_resources


@pytest.fixture(scope="session")
def resources():
    return load_resources()


@pytest.fixture(scope="session")
def fixture_corpus(resources):
    return load_corpus(fixture_corpus_dir(), resources.lexicon)


@pytest.fixture(scope="session")
def trained_model(fixture_corpus, resources):
    return train(fixture_corpus, resources)
