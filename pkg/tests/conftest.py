import random

import pytest

from menulight.store import Store

import corpusgen


@pytest.fixture
def store(tmp_path):
    with Store(tmp_path / "test.db") as s:
        yield s


@pytest.fixture
def corpus(tmp_path):
    """A generated fixture corpus plus its manifest."""
    dest = tmp_path / "corpus"
    manifest = corpusgen.build_corpus(dest, random.Random(20130501))
    return dest, manifest
