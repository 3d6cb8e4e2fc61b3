"""
SKEWAID - Test Fixtures
Worked-example pencils and algebras loaded from fixtures/.
"""

import pytest

from algebra.genus2_lie import algebra_from_pencil
from config import FIXTURES_DIR
from formats.codec import load_input, to_pencil


def _pencil(name: str):
    return to_pencil(*load_input(FIXTURES_DIR / name))


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def ex34():
    """Regular pencil with the single quadratic pair (lam^2 + 1, 1)."""
    return _pencil("ex34_pencil.json")


@pytest.fixture
def ex36():
    """M2: one minimal index 2, no divisors."""
    return _pencil("ex36_pencil.json")


@pytest.fixture
def ex44():
    return _pencil("ex44_algebra.json")


@pytest.fixture
def real_split():
    return _pencil("real_split_pencil.json")


@pytest.fixture
def ex34_algebra(ex34):
    return algebra_from_pencil(ex34)


@pytest.fixture
def ex36_algebra(ex36):
    return algebra_from_pencil(ex36)
