import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from garsia import AlgebraicNumber, IntPolynomial

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

LOG2, LOG3 = math.log(2), math.log(3)
# collapse of one digit to {0, 1} with weights (1/3, 2/3)
H13 = LOG3 - 2 / 3 * LOG2


@pytest.fixture
def golden():
    """The root of X^2 + X - 1 in (0, 1)."""
    return AlgebraicNumber.real_root(IntPolynomial((-1, 1, 1)), Fraction(1, 2), Fraction(1))


@pytest.fixture
def golden_conj():
    """The root of X^2 - X - 1 in (-1, 0)."""
    return AlgebraicNumber.real_root(IntPolynomial((-1, -1, 1)), Fraction(-1), Fraction(0))


def entropy_of(probs):
    """Oracle: plain -sum p log p."""
    return -sum(float(p) * math.log(float(p)) for p in probs if p)
