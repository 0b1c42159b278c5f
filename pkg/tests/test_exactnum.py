from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from garsia import (
    X,
    AlgebraicNumber,
    IntPolynomial,
    NumberField,
    NotPowerSeries,
    PoleError,
    RationalMap,
    eval_map,
    series_prefix,
    vanishing_order,
)
from garsia.exactnum import (
    as_fraction,
    eval_poly,
    format_fraction,
    map_derivatives,
    squarefree_decomposition,
    sturm_count,
    taylor_shift,
)

x_sym = sympy.Symbol("x")
coeff_lists = st.lists(st.integers(-5, 5), min_size=0, max_size=6)
small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=7)


def sym(P: IntPolynomial):
    return sympy.Add(*[sympy.Integer(c) * x_sym**k for k, c in enumerate(P.coeffs)])


class TestIntPolynomial:
    def test_normalizes_trailing_zeros(self):
        P = IntPolynomial((1, 2, 0, 0))
        assert P.coeffs == (1, 2)
        assert P.degree == 1

    def test_zero_polynomial(self):
        Z = IntPolynomial(())
        assert Z.is_zero
        assert Z.coeffs == ()

    def test_membership(self):
        P = IntPolynomial((1, -2, 1))
        assert P.in_P(2, 3)
        assert not P.in_P(1, 3)
        assert not P.in_P(2, 2)

    def test_height_l1_content(self):
        P = IntPolynomial((4, -6, 2))
        assert (P.height, P.l1, P.content) == (6, 12, 2)
        assert P.primitive().coeffs == (2, -3, 1)

    def test_json_roundtrip(self):
        P = IntPolynomial((3, 0, -1))
        assert P.to_json() == [3, 0, -1]
        assert IntPolynomial.from_json(P.to_json()) == P

    def test_generator_constant(self):
        assert (X * X - X - 1).coeffs == (-1, -1, 1)

    @given(coeff_lists, coeff_lists)
    def test_product_matches_sympy(self, a, b):
        P, Q = IntPolynomial(a), IntPolynomial(b)
        assert sympy.expand(sym(P * Q) - sym(P) * sym(Q)) == 0

    @given(coeff_lists, coeff_lists, small_fracs)
    def test_eval_is_ring_homomorphism(self, a, b, x):
        P, Q = IntPolynomial(a), IntPolynomial(b)
        assert eval_poly(P * Q, x) == eval_poly(P, x) * eval_poly(Q, x)
        assert eval_poly(P + Q, x) == eval_poly(P, x) + eval_poly(Q, x)

    @given(coeff_lists)
    def test_derivative_matches_sympy(self, a):
        P = IntPolynomial(a)
        assert sympy.expand(sym(P.derivative()) - sympy.diff(sym(P), x_sym)) == 0


class TestEvalPoly:
    def test_examples(self):
        assert eval_poly(IntPolynomial((1, 1)), Fraction(1, 2)) == Fraction(3, 2)
        assert eval_poly(IntPolynomial(()), 7) == 0
        assert eval_poly(IntPolynomial((-1, -1, 1)), 2) == 1

    @given(coeff_lists, small_fracs)
    def test_against_sympy(self, a, x):
        P = IntPolynomial(a)
        expected = sym(P).subs(x_sym, sympy.Rational(x.numerator, x.denominator))
        assert eval_poly(P, x) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


class TestFractions:
    def test_parse_and_format(self):
        assert as_fraction("3/6") == Fraction(1, 2)
        assert format_fraction(Fraction(1, 2)) == "1/2"
        assert format_fraction(Fraction(4)) == "4"


class TestNumberField:
    def test_golden_arithmetic(self):
        K = NumberField(IntPolynomial((-1, 1, 1)))
        g = K.gen()
        assert (g * g + g - 1).is_zero
        assert g * g == 1 - g

    def test_inverse(self):
        K = NumberField(IntPolynomial((-2, 0, 1)))
        s = K.gen()
        y = s + 1
        assert (y * y.inverse() - 1).is_zero

    @given(st.lists(small_fracs, min_size=3, max_size=3), st.lists(small_fracs, min_size=3, max_size=3))
    def test_field_axioms_cubic(self, a, b):
        K = NumberField(IntPolynomial((-2, 0, 0, 1)))  # Q(2^(1/3))
        u, v = K.element(a), K.element(b)
        assert u * v == v * u
        assert (u + v) * v == u * v + v * v
        if not v.is_zero:
            assert (u / v) * v == u


class TestAlgebraicNumber:
    def test_real_root_isolation(self, golden):
        assert abs(float(golden) - 0.6180339887498949) < 1e-15

    def test_rejects_interval_with_two_roots(self):
        with pytest.raises(ValueError):
            AlgebraicNumber.real_root(IntPolynomial((-1, 0, 1)), -2, 2)

    def test_from_root_complex(self):
        i = AlgebraicNumber.from_root(IntPolynomial((1, 0, 1)), 1j)
        assert not i.real
        assert abs(complex(i) - 1j) < 1e-12

    def test_json_roundtrip(self, golden):
        again = AlgebraicNumber.from_json(golden.to_json())
        assert again.min_poly == golden.min_poly
        assert abs(float(again) - float(golden)) < 1e-15

    def test_sturm_count(self):
        P = IntPolynomial((0, -1, 0, 1))  # x^3 - x
        assert sturm_count(P, Fraction(-2), Fraction(2)) == 3
        assert sturm_count(P, Fraction(0), Fraction(2)) == 1


class TestEvalMap:
    def test_rational_point(self):
        assert eval_map(RationalMap(IntPolynomial((1, 1)), IntPolynomial((1, -1))), Fraction(1, 2)) == 3

    def test_pole(self):
        with pytest.raises(PoleError):
            eval_map(RationalMap(IntPolynomial((1,)), IntPolynomial((1, -1))), 1)

    def test_golden_conjugate_root(self, golden_conj):
        value = eval_map(RationalMap(IntPolynomial((-1, -1, 1))), golden_conj)
        assert value.is_zero

    def test_number_field_value(self, golden):
        # 1/(1 - g) = (1 + g)/(1 - g^2) = (1 + g)/g
        value = eval_map(RationalMap(IntPolynomial((1,)), IntPolynomial((1, -1))), golden)
        g = golden.element()
        assert value * (1 - g) == 1


class TestSeriesPrefix:
    def test_geometric(self):
        assert series_prefix(RationalMap(IntPolynomial((1,)), IntPolynomial((1, -1))), 4) == [1, 1, 1, 1]

    def test_polynomial(self):
        assert series_prefix(RationalMap(IntPolynomial((1, -1))), 3) == [1, -1, 0]

    def test_not_power_series(self):
        with pytest.raises(NotPowerSeries):
            series_prefix(RationalMap(IntPolynomial((1,)), IntPolynomial((0, 1))), 3)

    @given(st.lists(st.integers(-1, 1), min_size=1, max_size=4),
           st.sampled_from([-1, 1]), st.lists(st.integers(-1, 1), max_size=3))
    def test_unit_bound_and_reconstruction(self, num, d0, dtail):
        den = IntPolynomial([d0] + dtail)
        R = RationalMap(IntPolynomial(num), den, 1)
        c = series_prefix(R, 10)
        for j, cj in enumerate(c):
            assert cj.denominator == 1
            assert abs(cj) <= 2**j
        # den * prefix == num modulo X^10
        prod = [sum(den[i] * c[k - i] for i in range(0, min(k, den.degree) + 1)) for k in range(10)]
        assert prod == [R.num[k] if k <= R.num.degree else 0 for k in range(10)]

    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.lists(st.integers(-3, 3), max_size=3))
    def test_against_sympy_series(self, num, dtail):
        R = RationalMap(IntPolynomial(num), IntPolynomial([2] + dtail))
        expr = sym(R.num) / sym(R.den)
        s = sympy.series(expr, x_sym, 0, 6).removeO()
        expected = [sympy.Rational(s.coeff(x_sym, k)) for k in range(6)]
        got = series_prefix(R, 6)
        assert [Fraction(int(e.p), int(e.q)) for e in expected] == got


class TestDerivatives:
    def test_taylor_shift(self):
        # 1 + 2x + 3x^2 at x = 1: value 6, first coefficient 8, second 3
        assert taylor_shift((1, 2, 3), Fraction(1), 3) == [6, 8, 3]

    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=4),
           st.lists(st.integers(-3, 3), min_size=1, max_size=3),
           st.fractions(min_value=0, max_value=1, max_denominator=9), st.integers(1, 4))
    def test_map_derivatives_against_sympy(self, num, den, x, K):
        den = IntPolynomial(den)
        if den.is_zero or eval_poly(den, x) == 0:
            return
        R = RationalMap(IntPolynomial(num), den)
        expr = sym(R.num) / sym(den)
        pt = sympy.Rational(x.numerator, x.denominator)
        expected = [sympy.diff(expr, x_sym, a).subs(x_sym, pt) for a in range(K)]
        got = map_derivatives(R, x, K)
        assert got == [Fraction(int(sympy.numer(e)), int(sympy.denom(e))) for e in expected]


class TestVanishingOrder:
    def test_examples(self, golden_conj):
        m = IntPolynomial((-1, -1, 1))
        assert vanishing_order(m * m, golden_conj) == 2
        assert vanishing_order(m, Fraction(1, 2)) == 0
        assert vanishing_order(m**3 * IntPolynomial((-1, 1)), golden_conj) == 3

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            vanishing_order(IntPolynomial(()), Fraction(1))

    @given(st.integers(0, 4), st.lists(st.integers(-3, 3), min_size=1, max_size=3))
    def test_divisibility_characterization(self, k, cofactor):
        H = IntPolynomial(cofactor)
        m = IntPolynomial((-1, 1, 1))
        if H.is_zero:
            return
        eta = AlgebraicNumber.real_root(m, Fraction(1, 2), 1)
        P = m**k * H
        order = vanishing_order(P, eta)
        assert order >= k
        assert P.exact_div(m**order) is not None
        assert P.exact_div(m ** (order + 1)) is None

    def test_squarefree_decomposition(self):
        P = IntPolynomial((-1, 1)) ** 2 * IntPolynomial((1, 0, 1))
        parts = squarefree_decomposition(P)
        mult = {tuple(f.primitive().coeffs): k for f, k in parts}
        assert mult[(-1, 1)] == 2
        assert mult[(1, 0, 1)] == 1
