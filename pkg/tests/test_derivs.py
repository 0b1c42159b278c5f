import itertools
import math
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import LOG2, LOG3, entropy_of
from garsia import STANDARD_FORMS, IfsSpec, IntPolynomial, PoleError, RationalMap, garsia_entropy
from garsia import derivs
from garsia.derivs import (
    DerivSystem,
    b_state,
    b_state_recursive,
    deriv_dim_upper,
    deriv_entropies,
    deriv_entropy,
    deriv_entropy_rate_upper,
    multiplicity_lemma_check,
    multiplicity_threshold,
    theta,
    translation_vector,
    vanishing_collision,
)
from garsia.exactnum import eval_map, eval_poly
from garsia.selfsim import DigitPair, entropy_rate_upper

x = sympy.Symbol("x")
THIRD = (Fraction(1, 3),) * 3
GEOM = RationalMap(IntPolynomial((1,)), IntPolynomial((1, -1)))


def sym(P):
    return sympy.Add(*[c * x**k for k, c in enumerate(P.coeffs)])


def oracle_state(R, lam, K, digits, forms=STANDARD_FORMS):
    """Oracle: differentiate sum_k (a + b R(x)) x^k with sympy."""
    Rx = sym(R.num) / sym(R.den)
    A = sympy.Add(*[(forms[j][0] + forms[j][1] * Rx) * x**k for k, j in enumerate(digits)])
    pt = sympy.Rational(lam.numerator, lam.denominator)
    out = []
    for a in range(K):
        v = sympy.simplify(sympy.diff(A, x, a).subs(x, pt))
        out.append(Fraction(int(sympy.numer(v)), int(sympy.denom(v))))
    return tuple(out)


def oracle_entropy(sys, n):
    """Oracle: group all digit strings by their exact derivative vector."""
    law = Counter()
    for digits in itertools.product(range(sys.m), repeat=n):
        prob = math.prod(sys.weights[j] for j in digits)
        law[b_state_recursive(sys, digits)] += prob
    return entropy_of(law.values())


maps = st.builds(
    lambda num, den: RationalMap(IntPolynomial(num), IntPolynomial(den + [1])),
    st.lists(st.integers(-2, 2), min_size=1, max_size=3),
    st.lists(st.integers(-2, 2), max_size=2),
)
points = st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10), max_denominator=10)


class TestTheta:
    def test_examples(self):
        assert theta(Fraction(1, 2), 1).rows == ((Fraction(1, 2),),)
        h = Fraction(1, 2)
        assert theta(h, 3).rows == ((h, 0, 0), (1, h, 0), (0, 2, h))

    @given(points, st.integers(1, 6))
    def test_structure_and_eigenvalues(self, lam, K):
        rows = theta(lam, K).rows
        M = sympy.Matrix(K, K, lambda i, j: sympy.Rational(rows[i][j].numerator, rows[i][j].denominator))
        assert M.is_lower
        assert set(M.eigenvals()) == {sympy.Rational(lam.numerator, lam.denominator)}
        for i in range(1, K):
            assert rows[i][i - 1] == i

    def test_rejects_k0(self):
        with pytest.raises(ValueError):
            theta(Fraction(1, 2), 0)

    def test_json(self):
        assert theta(Fraction(1, 2), 2).to_json() == [["1/2", "0"], ["1", "1/2"]]


class TestTranslation:
    def test_constant_map(self):
        sys = DerivSystem(RationalMap(IntPolynomial((5,))), Fraction(1, 3), 3)
        assert translation_vector(sys, 1) == (1, 0, 0)

    def test_identity_map(self):
        sys = DerivSystem(RationalMap(IntPolynomial((0, 1))), Fraction(1, 2), 2)
        assert translation_vector(sys, 2) == (Fraction(1, 2), 1)

    def test_geometric(self):
        sys = DerivSystem(GEOM, Fraction(1, 2), 3)
        assert translation_vector(sys, 2) == (2, 4, 16)

    def test_pole(self):
        with pytest.raises(PoleError):
            DerivSystem(GEOM, Fraction(1), 2)


class TestState:
    def test_empty_and_single(self):
        sys = DerivSystem(GEOM, Fraction(1, 2), 3)
        assert b_state(sys, []) == (0, 0, 0)
        for j in range(3):
            assert b_state(sys, [j]) == translation_vector(sys, j)

    def test_geometric_third(self):
        sys = DerivSystem(GEOM, Fraction(1, 3), 3)
        for digits in [(0, 1, 2), (2, 2, 1), (1, 0, 2)]:
            assert b_state(sys, digits) == oracle_state(GEOM, Fraction(1, 3), 3, digits)

    @given(maps, points, st.integers(1, 4), st.lists(st.integers(0, 2), min_size=1, max_size=6))
    def test_recursion_against_sympy(self, R, lam, K, digits):
        if eval_poly(R.den, lam) == 0:
            return
        sys = DerivSystem(R, lam, K)
        assert b_state_recursive(sys, digits) == oracle_state(R, lam, K, digits)

    def test_golden_field(self, golden):
        sys = DerivSystem(GEOM, golden, 3)
        b = b_state(sys, (2, 0, 1, 2))
        assert len(b) == 3


class TestEntropy:
    def test_k1_reduces_to_point_system(self):
        R = RationalMap(IntPolynomial((1, 1)), IntPolynomial((2, -1)))
        lam = Fraction(1, 2)
        sys = DerivSystem(R, lam, 1)
        point = IfsSpec(STANDARD_FORMS, THIRD, lam, eval_map(R, lam))
        for n in range(1, 6):
            assert deriv_entropy(sys, n) == pytest.approx(garsia_entropy(point, n), abs=1e-12)

    def test_simple_zero_splits(self):
        # F = 1 - 2X from Q = Y1 - X Y2 with R = 2 has a simple zero at 1/2
        R = RationalMap(IntPolynomial((2,)))
        h1 = deriv_entropy(DerivSystem(R, Fraction(1, 2), 1), 2)
        h2 = deriv_entropy(DerivSystem(R, Fraction(1, 2), 2), 2)
        assert h1 < h2 - 1e-9
        q = DigitPair(IntPolynomial((1,)), IntPolynomial((0, -1)))
        assert vanishing_collision(DerivSystem(R, Fraction(1, 2), 1), q)
        assert not vanishing_collision(DerivSystem(R, Fraction(1, 2), 2), q)

    def test_identical_relation_never_splits(self):
        # 1 + X^2 = (1 + X - X^3) R is reachable at level 4
        R = RationalMap(IntPolynomial((1, 0, 1)), IntPolynomial((1, 1, 0, -1)))
        h = [deriv_entropy(DerivSystem(R, Fraction(2, 7), K), 4) for K in (1, 3, 6)]
        assert h[0] == pytest.approx(h[2], abs=1e-12) and h[0] < 4 * LOG3 - 1e-3

    def test_free(self):
        # 5 divides no nonzero P1, so P1 (1 - 2X) + 5 P2 never vanishes identically
        R = RationalMap(IntPolynomial((5,)), IntPolynomial((1, -2)))
        sys = DerivSystem(R, Fraction(2, 7), 3)
        assert oracle_entropy(sys, 4) == pytest.approx(4 * LOG3, abs=1e-12)
        assert deriv_entropy(sys, 4) == pytest.approx(4 * LOG3, abs=1e-12)

    @given(maps, points, st.integers(1, 3), st.integers(1, 4))
    def test_against_oracle(self, R, lam, K, n):
        if eval_poly(R.den, lam) == 0:
            return
        sys = DerivSystem(R, lam, K)
        assert deriv_entropy(sys, n) == pytest.approx(oracle_entropy(sys, n), abs=1e-12)

    @given(maps, points, st.integers(1, 3))
    def test_collision_rule_matches_vanishing_order(self, R, lam, K):
        if eval_poly(R.den, lam) == 0:
            return
        sys = DerivSystem(R, lam, K)
        strings = list(itertools.product(range(3), repeat=2))
        for d1, d2 in itertools.combinations(strings, 2):
            same = b_state_recursive(sys, d1) == b_state_recursive(sys, d2)
            q = DigitPair.from_digits(STANDARD_FORMS, d1) - DigitPair.from_digits(STANDARD_FORMS, d2)
            assert same == vanishing_collision(sys, q)

    @given(maps, points, st.integers(1, 5))
    def test_nondecreasing_in_k(self, R, lam, n):
        if eval_poly(R.den, lam) == 0:
            return
        hs = [deriv_entropy(DerivSystem(R, lam, K), n) for K in range(1, 5)]
        assert all(b >= a - 1e-12 for a, b in zip(hs, hs[1:]))
        rates = [deriv_entropy_rate_upper(DerivSystem(R, lam, K), n) for K in range(1, 5)]
        assert all(b >= a - 1e-12 for a, b in zip(rates, rates[1:]))

    @given(maps, points, st.integers(1, 3))
    def test_subadditive(self, R, lam, K):
        if eval_poly(R.den, lam) == 0:
            return
        hs = deriv_entropies(DerivSystem(R, lam, K), 6)
        for a in range(1, 4):
            for b in range(1, 7 - a):
                assert hs[a + b - 1] <= hs[a - 1] + hs[b - 1] + 1e-9

    def test_rate_examples(self):
        sys = DerivSystem(RationalMap(IntPolynomial((1,))), Fraction(1, 2), 1)
        point = IfsSpec(STANDARD_FORMS, THIRD, Fraction(1, 2), Fraction(1))
        assert deriv_entropy_rate_upper(sys, 5) == pytest.approx(entropy_rate_upper(point, 5), abs=1e-12)
        # at K = 2 the level-2 collision of (1/2, 2) disappears
        big = DerivSystem(RationalMap(IntPolynomial((2,))), Fraction(1, 2), 2)
        assert deriv_entropy_rate_upper(big, 2) == pytest.approx(LOG3, abs=1e-12)
        assert deriv_dim_upper(big, 2) == pytest.approx(LOG3 / LOG2, abs=1e-12)


class TestMultiplicity:
    def test_threshold(self):
        assert multiplicity_threshold(0.1, 2, 1) == 138
        assert multiplicity_threshold(0.2, 2, 1) < 138
        with pytest.raises(ValueError):
            multiplicity_threshold(0.6, 2, 1)

    def test_feasible_instances_are_vacuous(self):
        R = RationalMap(IntPolynomial((2,)))
        rep = multiplicity_lemma_check(IntPolynomial((1,)), IntPolynomial((0, -1)), R, Fraction(1, 2), 0.1, 2, 2)
        assert rep.verdict == "vacuous"
        assert "vanishing order" in rep.hypothesis_status

    def test_identical_relation_certified(self, monkeypatch):
        monkeypatch.setattr(derivs, "multiplicity_threshold", lambda eps, N, l: 3)
        R = RationalMap(IntPolynomial((1,)))
        rep = multiplicity_lemma_check(IntPolynomial((1,)), IntPolynomial((-1,)), R, Fraction(1, 2), 0.1, 4, 1)
        assert rep.verdict == "certified"

    def test_small_threshold_can_fail(self, monkeypatch):
        # with a threshold far below the real one the conclusion is false
        monkeypatch.setattr(derivs, "multiplicity_threshold", lambda eps, N, l: 2)
        R = RationalMap(IntPolynomial((2,)))
        rep = multiplicity_lemma_check(IntPolynomial((1,)), IntPolynomial((0, -1)), R, Fraction(1, 2), 0.1, 2, 2)
        assert rep.verdict == "violated"
