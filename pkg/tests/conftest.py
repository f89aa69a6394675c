import pytest

from mzsv import PrecisionContext


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(digits=30)


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(digits=50)


def close(a, b, tol):
    """|a - b| <= tol over mpf/HPReal/float operands."""
    av = getattr(a, "mpf", a)
    bv = getattr(b, "mpf", b)
    return abs(av - bv) <= tol
