"""Digit systems over the formal power series field Q[[X]].

Here the contraction is multiplication by ``X`` and the random series is

    A_R = sum_j (a_{xi_j} + b_{xi_j} R(X)) X^j.

Entropies are taken over initial coefficient blocks: ``H(A; n)`` is the
entropy of the first ``n`` coefficients. Those depend only on the first ``n``
digits, so every quantity here is a finite enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ._levels import DEFAULT_LIMITS, LevelEngine, Limits
from .errors import NotPowerSeries
from .exactnum import RationalMap, format_fraction, series_prefix
from .measures import DiscreteDistribution, convolve, shannon_entropy
from .selfsim import DigitPair, _best_witness, _collision_groups, curve_entropies, curve_vectors, IfsSpec


class Coeffs(tuple):
    """Coefficient vector with elementwise addition."""

    def __add__(self, other):
        if len(self) != len(other):
            raise ValueError("coefficient vectors of different lengths")
        return Coeffs(a + b for a, b in zip(self, other))

    def truncate(self, n) -> Coeffs:
        return Coeffs(self[:n])


@dataclass(frozen=True)
class SeriesDistribution:
    """Law of the first ``length`` coefficients of the truncated random series.

    ``depth`` digits are used; ``atoms`` maps :class:`Coeffs` to probability.
    """

    R: RationalMap
    depth: int
    length: int
    atoms: DiscreteDistribution

    def truncated(self, n) -> DiscreteDistribution:
        return self.atoms.map(lambda c: c.truncate(n))

    def to_json(self):
        return [{"coeffs": [format_fraction(x) for x in c], "prob": format_fraction(p)}
                for c, p in sorted(self.atoms.items())]


def _prefix_vectors(R: RationalMap, forms, depth: int, length: int):
    if not R.is_power_series:
        raise NotPowerSeries("denominator vanishes at 0")
    s = series_prefix(R, length)
    vectors = []
    for k in range(depth):
        row = []
        for a, b in forms:
            v = [Fraction(0)] * length
            for i in range(k, length):
                v[i] = b * s[i - k]
            if k < length:
                v[k] += a
            row.append(tuple(v))
        vectors.append(row)
    return vectors


def series_law(R: RationalMap, forms, p, depth: int, length: int,
               limits: Limits = DEFAULT_LIMITS) -> SeriesDistribution:
    """Exact law of the first ``length`` coefficients using ``depth`` digits."""
    eng = LevelEngine(_prefix_vectors(R, forms, depth, length), p, limits)
    level = None
    for level in eng.run(keep_keys=True):
        pass
    atoms = DiscreteDistribution({Coeffs(c): Fraction(int(w), level.denominator)
                                  for c, w in zip(eng.decode(level), level.weights)})
    return SeriesDistribution(R, depth, length, atoms)


def truncated_series_entropy(R: RationalMap, forms, p, n: int, l: int,
                             limits: Limits = DEFAULT_LIMITS) -> float:
    """Entropy of the first ``l`` coefficients of the sum over digits ``0..n-1``."""
    if l < n:
        raise ValueError("need l >= n")
    eng = LevelEngine(_prefix_vectors(R, forms, n, l), p, limits)
    level = None
    for level in eng.run():
        pass
    return level.entropy()


def coeff_prefix_entropy(R: RationalMap, forms, p, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """``H(A_R; n)``, the entropy of the first ``n`` coefficients of ``A_R``."""
    return truncated_series_entropy(R, forms, p, n, n, limits)


def ff_dim_lower_sequence(R: RationalMap, forms, p, n_max: int, limits: Limits = DEFAULT_LIMITS):
    """``[H(A_R; n)/n for n = 1..n_max]``; nondecreasing, with limit ``dim mu_R``."""
    return [coeff_prefix_entropy(R, forms, p, n, limits) / n for n in range(1, n_max + 1)]


def ff_entropy_rate_upper(R: RationalMap, forms, p, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """``min_{k<=n} H(A_R(k))/k`` for the full (untruncated) level-k sums."""
    from .selfsim import NonDegenerate, Symbolic

    spec = IfsSpec(tuple(forms), tuple(p), Symbolic("lam"), Symbolic("tau"))
    hs = curve_entropies(spec, NonDegenerate(R), n, limits)
    return min(h / (k + 1) for k, h in enumerate(hs))


def relation_search(R: RationalMap, forms, n_max: int, limits: Limits = DEFAULT_LIMITS):
    """Smallest ``n <= n_max`` with a relation ``P1 + P2 R = 0`` from level n.

    Returns
    -------
    tuple or None
        ``(n, Q)`` with ``Q`` a normalized :class:`DigitPair` of minimal
        l1-norm, or None.
    """
    if not R.is_power_series:
        raise NotPowerSeries("denominator vanishes at 0")
    m = len(forms)
    if n_max < 1:
        return None
    p = [Fraction(1, m)] * m
    eng = LevelEngine(curve_vectors(forms, R, n_max), p, limits)
    for level in eng.run():
        if level.count < m**level.k:
            return level.k, _best_witness(forms, _collision_groups(eng, level.k, limits))
    return None


def relation_holds(R: RationalMap, Q: DigitPair) -> bool:
    """Exact test of ``Q.P1 * den(R) + Q.P2 * num(R) == 0``."""
    return (Q.P1 * R.den + Q.P2 * R.num).is_zero


def conditional_entropy(law: DiscreteDistribution, n: int) -> float:
    """``H(A; n | n-1)`` for a law on coefficient vectors of length >= n."""
    hn = shannon_entropy(law.map(lambda c: Coeffs(c[:n])))
    if n == 1:
        return hn
    return hn - shannon_entropy(law.map(lambda c: Coeffs(c[:n - 1])))


def series_conditional_entropy_growth(A, B, n: int):
    """Conditional entropy of ``A``, of ``B``, and the gain for ``A + B``.

    Parameters
    ----------
    A, B : SeriesDistribution or DiscreteDistribution over coefficient vectors
        Independent laws; vectors must have length at least ``n``.
    n : int
        Coefficient index (1-based count of leading coefficients).

    Returns
    -------
    (float, float, float)
        ``H(A;n|n-1)``, ``H(B;n|n-1)`` and ``H(A+B;n|n-1) - H(A;n|n-1)``.
    """
    A = A.atoms if isinstance(A, SeriesDistribution) else A
    B = B.atoms if isinstance(B, SeriesDistribution) else B
    A = A.map(lambda c: Coeffs(c[:n]))
    B = B.map(lambda c: Coeffs(c[:n]))
    hA = conditional_entropy(A, n)
    hB = conditional_entropy(B, n)
    hS = conditional_entropy(convolve(A, B), n)
    return hA, hB, hS - hA


def brute_force_prefix_law(R: RationalMap, forms, p, n: int, l: int) -> DiscreteDistribution:
    """Reference law of the first ``l`` coefficients by listing all strings."""
    s = series_prefix(R, l)
    pairs = []
    for digits in itertools.product(range(len(forms)), repeat=n):
        c = [Fraction(0)] * l
        prob = Fraction(1)
        for k, j in enumerate(digits):
            a, b = forms[j]
            prob *= Fraction(p[j])
            if k < l:
                c[k] += a
            for i in range(k, l):
                c[i] += b * s[i - k]
        pairs.append((Coeffs(c), prob))
    return DiscreteDistribution.from_pairs(pairs)
