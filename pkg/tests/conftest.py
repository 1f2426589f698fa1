from __future__ import annotations
from pathlib import Path

import numpy as np
import pytest

from cacsa.inference.validation import validate_rules, validate_signature
from cacsa.signatures.seed_signatures import load_seed
from cacsa.terms.signature import Signature

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def validated(name: str) -> Signature:
    source = load_seed(name)
    errors = validate_signature(source.signature) + validate_rules(source.signature)
    assert not errors, [str(e) for e in errors]
    return source.signature


@pytest.fixture
def nat_sig() -> Signature:
    """nat with 0, s, minus and div."""
    return validated("nat+div")


@pytest.fixture
def bool_sig() -> Signature:
    return validated("bool")


@pytest.fixture
def list_sig() -> Signature:
    return validated("list")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS
