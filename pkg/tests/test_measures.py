import itertools
import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LOG2, LOG3, entropy_of
from garsia import DiscreteDistribution, GuardrailExceeded, convolve, scale_entropy, shannon_entropy
from garsia.measures import (
    convolve_power,
    diff_of_entropy_bounds,
    kv_inequality_gap,
    scale_entropy_between,
    weighted_log_bound,
)


@st.composite
def measures(draw, max_atoms=5, lo=-6, hi=6, den=None):
    pts = draw(st.lists(st.integers(lo, hi), min_size=1, max_size=max_atoms, unique=True))
    d = den if den is not None else draw(st.integers(1, 6))
    ws = draw(st.lists(st.integers(1, 9), min_size=len(pts), max_size=len(pts)))
    tot = sum(ws)
    return DiscreteDistribution({Fraction(p, d): Fraction(w, tot) for p, w in zip(pts, ws)})


def brute_convolve(mu, nu):
    """Oracle: enumerate all atom pairs."""
    acc = Counter()
    for (x, p), (y, q) in itertools.product(mu.items(), nu.items()):
        acc[x + y] += p * q
    return dict(acc)


def riemann_scale_entropy(nu, r, N=10_000):
    """Oracle: midpoint rule over the grid offset t."""
    ys = [(x / r, float(p)) for x, p in nu.items()]
    total = 0.0
    for i in range(N):
        t = (i + 0.5) / N
        cells = Counter()
        for y, p in ys:
            cells[math.floor(float(y) + t)] += p
        total += entropy_of(cells.values())
    return total / N


class TestDistribution:
    def test_rejects_bad_total(self):
        with pytest.raises(ValueError):
            DiscreteDistribution({0: Fraction(1, 2)})

    def test_merge_and_json(self):
        d = DiscreteDistribution.from_pairs([(Fraction(1), "1/4"), (Fraction(1), "1/4"), (Fraction(0), "1/2")])
        assert len(d) == 2
        assert DiscreteDistribution.from_json(d.to_json()) == d
        assert d.to_json()[0] == {"value": "0", "prob": "1/2"}


class TestShannon:
    def test_examples(self):
        assert shannon_entropy(DiscreteDistribution.uniform([0, 1, 2])) == pytest.approx(LOG3, abs=1e-15)
        assert shannon_entropy(DiscreteDistribution.delta(5)) == 0.0
        probs = [Fraction(k, 9) for k in (2, 2, 1, 1, 1, 1, 1)]
        d = DiscreteDistribution(dict(enumerate(probs)))
        assert shannon_entropy(d) == pytest.approx(2 * LOG3 - 4 / 9 * LOG2, abs=1e-14)

    @given(measures(), st.fractions(min_value=-5, max_value=5, max_denominator=5))
    def test_translation_and_permutation_invariance(self, nu, a):
        assert sorted(nu.translate(a).probabilities()) == sorted(nu.probabilities())
        assert shannon_entropy(nu.translate(a)) == pytest.approx(shannon_entropy(nu), abs=1e-12)
        assert shannon_entropy(nu) == pytest.approx(entropy_of(nu.probabilities()), abs=1e-12)

    @given(measures(), measures(), st.fractions(min_value=0, max_value=1, max_denominator=10))
    def test_concavity(self, mu, nu, alpha):
        mixed = mu.mix(nu, alpha)
        a = float(alpha)
        assert shannon_entropy(mixed) >= a * shannon_entropy(mu) + (1 - a) * shannon_entropy(nu) - 1e-12


class TestConvolve:
    def test_examples(self):
        u01 = DiscreteDistribution.uniform([0, 1])
        c = convolve(u01, u01)
        assert c.atoms == {0: Fraction(1, 4), 1: Fraction(1, 2), 2: Fraction(1, 4)}
        c2 = convolve(u01, DiscreteDistribution.uniform([0, 2]))
        assert c2 == DiscreteDistribution.uniform([0, 1, 2, 3])
        assert shannon_entropy(c2) == pytest.approx(math.log(4), abs=1e-15)
        mu = DiscreteDistribution.uniform([Fraction(1, 3), Fraction(2)])
        assert convolve(DiscreteDistribution.delta(Fraction(5)), mu) == mu.translate(5)

    @given(measures(), measures())
    def test_against_oracle(self, mu, nu):
        c = convolve(mu, nu)
        assert c.atoms == brute_convolve(mu, nu)
        assert len(c) <= len(mu) * len(nu)

    @given(measures(), measures())
    def test_entropy_grows(self, mu, nu):
        h = shannon_entropy(convolve(mu, nu))
        assert h >= max(shannon_entropy(mu), shannon_entropy(nu)) - 1e-12

    def test_guardrail(self):
        u = DiscreteDistribution.uniform(range(10))
        with pytest.raises(GuardrailExceeded):
            convolve(u, u, atom_limit=50)

    def test_power(self):
        u01 = DiscreteDistribution.uniform([0, 1])
        assert convolve_power(u01, 0) == DiscreteDistribution.delta(0)
        assert convolve_power(u01, 3).atoms == {0: Fraction(1, 8), 1: Fraction(3, 8),
                                                2: Fraction(3, 8), 3: Fraction(1, 8)}


class TestScaleEntropy:
    def test_point_mass(self):
        assert scale_entropy(DiscreteDistribution.delta(Fraction(3, 7)), Fraction(1, 3)).value == 0.0

    def test_adjacent_cells(self):
        r = Fraction(2, 5)
        rep = scale_entropy(DiscreteDistribution.uniform([Fraction(0), r]), r)
        assert rep.value == pytest.approx(LOG2, abs=1e-15)

    def test_half_shared(self):
        r = Fraction(2, 5)
        rep = scale_entropy(DiscreteDistribution.uniform([Fraction(0), r / 2]), r)
        assert rep.value == pytest.approx(LOG2 / 2, abs=1e-15)
        assert rep.breakpoint_count == 1

    def test_between_examples(self):
        u01 = DiscreteDistribution.uniform([Fraction(0), Fraction(1)])
        assert scale_entropy_between(u01, Fraction(1, 3), Fraction(1, 3)) == 0.0
        d = scale_entropy_between(u01, Fraction(1, 2), Fraction(2))
        assert 0 <= d <= 2 * math.log(4)
        quarter = DiscreteDistribution.uniform([Fraction(k, 4) for k in range(4)])
        d = scale_entropy_between(quarter, Fraction(1, 4), Fraction(1))
        direct = scale_entropy(quarter, Fraction(1, 4)).value - scale_entropy(quarter, Fraction(1)).value
        assert d == pytest.approx(direct, abs=1e-15)
        assert scale_entropy(quarter, Fraction(1, 4)).value == pytest.approx(math.log(4), abs=1e-14)

    @given(measures(max_atoms=6, lo=-30, hi=30),
           st.fractions(min_value=Fraction(1, 20), max_value=2, max_denominator=20),
           st.fractions(min_value=1, max_value=4, max_denominator=7))
    def test_difference_bounds(self, nu, r1, factor):
        r2 = r1 * factor
        d = scale_entropy_between(nu, r1, r2)
        lo, hi = diff_of_entropy_bounds(r1, r2)
        assert lo - 1e-9 <= d <= hi + 1e-9

    @given(measures(max_atoms=5, lo=-12, hi=12), st.fractions(min_value=Fraction(1, 5), max_value=3,
                                                           max_denominator=9))
    def test_against_riemann_sum(self, nu, r):
        assert scale_entropy(nu, r).value == pytest.approx(riemann_scale_entropy(nu, r, 4000), abs=1e-3)

    @given(measures(max_atoms=5))
    def test_fine_scale_limit(self, nu):
        # below the minimal gap every atom sits alone except when straddling a boundary
        pts = sorted(nu.values())
        gap = min((b - a for a, b in zip(pts, pts[1:])), default=Fraction(1))
        r = gap / 1000
        assert scale_entropy(nu, r).value == pytest.approx(shannon_entropy(nu), abs=1e-9)

    def test_rejects_nonpositive_scale(self):
        with pytest.raises(ValueError):
            scale_entropy(DiscreteDistribution.delta(Fraction(0)), 0)


class TestInequalities:
    def test_kv_examples(self):
        u01 = DiscreteDistribution.uniform([0, 1])
        lhs, rhs = kv_inequality_gap(u01, DiscreteDistribution.delta(0), 3)
        assert lhs == pytest.approx(0, abs=1e-15) and rhs == pytest.approx(0, abs=1e-15)
        lhs, rhs = kv_inequality_gap(u01, u01, 2)
        assert lhs == pytest.approx(entropy_of([1 / 8, 3 / 8, 3 / 8, 1 / 8]) - LOG2, abs=1e-14)
        assert rhs == pytest.approx(2 * (entropy_of([1 / 4, 1 / 2, 1 / 4]) - LOG2), abs=1e-14)
        assert lhs <= rhs

    @given(measures(max_atoms=4, lo=-3, hi=3, den=1), measures(max_atoms=4, lo=-3, hi=3, den=1), st.integers(1, 4))
    def test_kv_property(self, mu, nu, n):
        lhs, rhs = kv_inequality_gap(mu, nu, n)
        assert lhs <= rhs + 1e-9

    def test_weighted_log_examples(self):
        lhs, rhs = weighted_log_bound([1, 2, 3], [1, 2, 3])
        assert lhs == pytest.approx(rhs, abs=1e-14)
        lhs, rhs = weighted_log_bound([1, 1], [1, 3])
        assert lhs == pytest.approx(-math.log(3))
        assert rhs == pytest.approx(-2 * math.log(2))
        assert lhs >= rhs

    @given(st.lists(st.tuples(st.floats(0.01, 10), st.floats(0.01, 10)), min_size=1, max_size=8))
    def test_weighted_log_property(self, pairs):
        y, z = zip(*pairs)
        lhs, rhs = weighted_log_bound(y, z)
        assert lhs >= rhs - 1e-9
