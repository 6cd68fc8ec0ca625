from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "tools"))


@pytest.fixture
def rng():
    """Seeded random source so sampled cases are stable across runs."""
    return random.Random(1234)


@pytest.fixture
def frac():
    """Shorthand for building exact scalars: frac(1, 2) == Fraction(1, 2)."""
    return Fraction


@pytest.fixture
def tmp_outputs(tmp_path, monkeypatch):
    """Temporary outputs directory patched into the config module."""
    import config

    d = tmp_path / "outputs"
    monkeypatch.setattr(config, "OUTPUTS_DIR", d)
    return d


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size verification runs (deselect with -m 'not slow')")
