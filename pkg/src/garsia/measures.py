"""Finite distributions with exact probabilities and their entropies.

Values may live in any additive domain with hashable, canonical elements:
Fractions, number-field elements, tuples of integers or rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from ._levels import DEFAULT_LIMITS
from .errors import GuardrailExceeded
from .exactnum import as_fraction, format_fraction


def _plogp(p: Fraction) -> float:
    # math.log accepts big integers, so tiny probabilities do not underflow
    return float(p) * (math.log(p.numerator) - math.log(p.denominator))


class DiscreteDistribution:
    """Finitely many atoms with positive exact probabilities summing to 1.

    Parameters
    ----------
    atoms : mapping
        Value to probability. Probabilities are coerced to Fraction; zero
        masses are dropped.
    """

    __slots__ = ("_atoms",)

    def __init__(self, atoms):
        clean = {}
        for v, p in dict(atoms).items():
            p = as_fraction(p)
            if p < 0:
                raise ValueError("negative probability")
            if p:
                clean[v] = p
        if sum(clean.values()) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        self._atoms = clean

    @classmethod
    def from_pairs(cls, pairs):
        """Build from (value, probability) pairs, merging repeated values."""
        acc = {}
        for v, p in pairs:
            acc[v] = acc.get(v, Fraction(0)) + as_fraction(p)
        return cls(acc)

    @classmethod
    def uniform(cls, values):
        values = list(values)
        return cls.from_pairs((v, Fraction(1, len(values))) for v in values)

    @classmethod
    def delta(cls, value):
        return cls({value: Fraction(1)})

    @property
    def atoms(self):
        return dict(self._atoms)

    def items(self):
        return self._atoms.items()

    def values(self):
        return list(self._atoms)

    def probabilities(self):
        return list(self._atoms.values())

    def __len__(self):
        return len(self._atoms)

    def __getitem__(self, value):
        return self._atoms.get(value, Fraction(0))

    def __eq__(self, other):
        return isinstance(other, DiscreteDistribution) and self._atoms == other._atoms

    def __repr__(self):
        return f"DiscreteDistribution({len(self)} atoms)"

    def entropy(self) -> float:
        return shannon_entropy(self)

    def map(self, f) -> DiscreteDistribution:
        """Push-forward under ``f``."""
        return DiscreteDistribution.from_pairs((f(v), p) for v, p in self.items())

    def translate(self, a) -> DiscreteDistribution:
        return self.map(lambda v: v + a)

    def mix(self, other: DiscreteDistribution, alpha) -> DiscreteDistribution:
        """The mixture ``alpha*self + (1-alpha)*other``."""
        alpha = as_fraction(alpha)
        pairs = [(v, alpha * p) for v, p in self.items()]
        pairs += [(v, (1 - alpha) * p) for v, p in other.items()]
        return DiscreteDistribution.from_pairs(pairs)

    def to_json(self):
        return [{"value": format_fraction(v), "prob": format_fraction(p)} for v, p in sorted(self.items())]

    @classmethod
    def from_json(cls, data):
        return cls.from_pairs((as_fraction(a["value"]), as_fraction(a["prob"])) for a in data)


def shannon_entropy(nu: DiscreteDistribution) -> float:
    """Shannon entropy in nats."""
    return -math.fsum(_plogp(p) for p in nu.probabilities())


def convolve(mu: DiscreteDistribution, nu: DiscreteDistribution,
             atom_limit: int = DEFAULT_LIMITS.atom_limit) -> DiscreteDistribution:
    """Law of ``X + Y`` for independent ``X ~ mu`` and ``Y ~ nu``."""
    if len(mu) * len(nu) > atom_limit:
        raise GuardrailExceeded(f"{len(mu) * len(nu)} candidate atoms exceed {atom_limit}")
    acc = {}
    for x, p in mu.items():
        for y, q in nu.items():
            s = x + y
            acc[s] = acc.get(s, Fraction(0)) + p * q
    return DiscreteDistribution(acc)


def convolve_power(nu: DiscreteDistribution, n: int, zero=Fraction(0)) -> DiscreteDistribution:
    """The n-fold self convolution; ``n = 0`` gives the point mass at ``zero``."""
    out = DiscreteDistribution.delta(zero)
    for _ in range(n):
        out = convolve(out, nu)
    return out


# ---------------------------------------------------------------------------
# averaged scale entropy


@dataclass(frozen=True)
class ScaleEntropyReport:
    """Averaged entropy of a distribution against translates of an r-grid.

    Attributes
    ----------
    r : Fraction
        Grid scale.
    value : float
        The average over grid offsets, in nats.
    breakpoint_count : int
        Number of distinct offsets at which the cell assignment changes.
    """

    r: Fraction
    value: float
    breakpoint_count: int


def _sweep_inputs(nu: DiscreteDistribution, r: Fraction):
    cells = {}
    events = {}
    for x, p in nu.items():
        y = as_fraction(x) / r
        base = math.floor(y)
        frac = y - base
        cells.setdefault(base, Fraction(0))
        cells[base] += p
        if frac:
            cells.setdefault(base + 1, Fraction(0))
            events.setdefault(1 - frac, []).append((base, base + 1, p))
    index = {c: i for i, c in enumerate(sorted(cells))}
    mass0 = np.zeros(len(index))
    for x, p in nu.items():
        mass0[index[math.floor(as_fraction(x) / r)]] += float(p)
    bps = sorted(events)
    src, dst, pm, ends = [], [], [], []
    for b in bps:
        for a, c, p in events[b]:
            src.append(index[a])
            dst.append(index[c])
            pm.append(float(p))
        ends.append(len(src))
    edges = [Fraction(0)] + bps + [Fraction(1)]
    lengths = [float(b - a) for a, b in zip(edges, edges[1:])]
    return (
        mass0,
        np.array(src, dtype=np.int64),
        np.array(dst, dtype=np.int64),
        np.array(pm, dtype=np.float64),
        np.array(ends, dtype=np.int64),
        np.array(lengths, dtype=np.float64),
    )


def scale_entropy(nu: DiscreteDistribution, r) -> ScaleEntropyReport:
    """Average over ``t`` in [0,1) of the entropy of ``floor(x/r + t)``.

    The integrand is piecewise constant in ``t``; it changes only where some
    atom crosses an integer, at ``t = 1 - frac(x/r)``. The average is the
    length-weighted sum of the piece entropies, with lengths computed exactly.
    """
    r = as_fraction(r)
    if r <= 0:
        raise ValueError("scale must be positive")
    args = _sweep_inputs(nu, r)
    value = float(kernels.sweep_integral(*args))
    return ScaleEntropyReport(r, max(value, 0.0), int(args[4].shape[0]))


def scale_entropy_between(nu: DiscreteDistribution, r1, r2) -> float:
    """``H(nu; r1) - H(nu; r2)`` for ``0 < r1 <= r2``."""
    r1, r2 = as_fraction(r1), as_fraction(r2)
    if not 0 < r1 <= r2:
        raise ValueError("need 0 < r1 <= r2")
    if r1 == r2:
        return 0.0
    return scale_entropy(nu, r1).value - scale_entropy(nu, r2).value


scale_entropy_conditional = scale_entropy_between


def diff_of_entropy_bounds(r1, r2):
    """The interval ``[0, 2 log(r2/r1)]`` that contains ``H(nu;r1) - H(nu;r2)``."""
    r1, r2 = as_fraction(r1), as_fraction(r2)
    return 0.0, 2 * (math.log(r2) - math.log(r1))


# ---------------------------------------------------------------------------
# inequality probes


def kv_inequality_gap(mu: DiscreteDistribution, nu: DiscreteDistribution, n: int, zero=Fraction(0)):
    """Both sides of ``H(mu * nu^{*n}) - H(mu) <= n (H(mu * nu) - H(mu))``.

    Returns
    -------
    (float, float)
        ``(lhs, rhs)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    h_mu = shannon_entropy(mu)
    lhs = shannon_entropy(convolve(mu, convolve_power(nu, n, zero))) - h_mu
    rhs = n * (shannon_entropy(convolve(mu, nu)) - h_mu)
    return lhs, rhs


def weighted_log_bound(y, z):
    """Both sides of ``sum y_j log(1/z_j) >= sum y_j log(Y / (y_j Z))``.

    ``Y`` and ``Z`` are the totals of ``y`` and ``z``. Returns ``(lhs, rhs)``.
    """
    y = [float(v) for v in y]
    z = [float(v) for v in z]
    if len(y) != len(z) or not y:
        raise ValueError("y and z must be nonempty and of equal length")
    if min(y) <= 0 or min(z) <= 0:
        raise ValueError("entries must be positive")
    Y, Z = math.fsum(y), math.fsum(z)
    lhs = -math.fsum(a * math.log(b) for a, b in zip(y, z))
    rhs = -math.fsum(a * math.log(a * Z / Y) for a in y)
    return lhs, rhs
