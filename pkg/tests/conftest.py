from __future__ import annotations

import random
from pathlib import Path

import pytest

from flextree import CharacterSet, Corpus, default_charset, normalize, train

REPO_ROOT = Path(__file__).resolve().parents[1]
CORPUS_PATH = REPO_ROOT / "data" / "english_corpus.txt"


@pytest.fixture(scope="session")
def charset() -> CharacterSet:
    return default_charset()


@pytest.fixture(scope="session")
def hello_model():
    return train("Hello", 2)


@pytest.fixture(scope="session")
def english_corpus() -> Corpus:
    raw = CORPUS_PATH.read_text(encoding="utf-8")
    return normalize(raw)


@pytest.fixture(scope="session")
def english_models(english_corpus):
    """Models of every order the aggregate tests need, trained once."""
    return {k: train(english_corpus, k) for k in (0, 1, 2, 3)}


def random_charset_text(rng: random.Random, max_len: int = 24) -> str:
    symbols = default_charset().symbols
    return "".join(rng.choice(symbols) for _ in range(rng.randint(0, max_len)))
