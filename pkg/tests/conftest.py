from pathlib import Path

import numpy as np
import pytest

SPECS = Path(__file__).resolve().parents[1] / "specs"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def specs_dir():
    return SPECS


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def random_skew(rng, n):
    A = rng.standard_normal((n, n))
    return A - A.T
