#!/usr/bin/env python3
"""
Shared fixtures for the harmonic-frobenius test suite.
"""

import random
import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from harmfrob.core.adjoint import AdjointEngine  # noqa: E402
from harmfrob.core.arith import PAdicField, RationalField  # noqa: E402
from harmfrob.core.harmonic import HarmonicEngine  # noqa: E402
from harmfrob.core.validation import RelationValidator  # noqa: E402
from harmfrob.storage import CacheManager  # noqa: E402


@pytest.fixture
def rationals():
    return RationalField()


@pytest.fixture
def padic_field():
    """Factory for Q_p at a working precision."""
    def make(prime: int = 5, precision: int = 10) -> PAdicField:
        return PAdicField(prime, precision)
    return make


@pytest.fixture(scope="session")
def harmonic_engine():
    """One engine per session so memoized prime values are shared."""
    return HarmonicEngine()


@pytest.fixture(scope="session")
def adjoint_engine(harmonic_engine):
    return AdjointEngine(harmonic_engine)


@pytest.fixture(scope="session")
def validator(adjoint_engine, harmonic_engine):
    return RelationValidator(adjoint_engine, harmonic_engine)


@pytest.fixture
def cache_dir(tmp_path):
    path = tmp_path / "cache"
    path.mkdir()
    return path


@pytest.fixture
def cache_manager(cache_dir):
    return CacheManager(cache_dir)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def clean_env(monkeypatch):
    """Remove HARMFROB_* variables so tests see only what they set."""
    import os
    for name in list(os.environ):
        if name.startswith("HARMFROB_"):
            monkeypatch.delenv(name, raising=False)
    return monkeypatch
