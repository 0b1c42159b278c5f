"""Level-by-level enumeration of digit-sum laws with exact merging.

Every collision rule in the package reduces to equality of integer key
vectors. A digit ``j`` at position ``k`` contributes a rational vector
``V[k][j]``; two digit strings collide iff their vector sums agree. The law at
all levels ``1..n`` is obtained in one pass by convolving level by level and
merging equal keys.

Probabilities stay exact: digit weights are ``w_j / Q`` with integer ``w_j``,
so the mass of a class at level ``k`` is an integer numerator over ``Q**k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import GuardrailExceeded

_INT_CAP = 2**62


@dataclass(frozen=True)
class Limits:
    """Resource guardrails for enumerations.

    Attributes
    ----------
    atom_limit : int
        Maximum number of candidate atoms (classes times digits) per level.
    max_strings : int
        Maximum number of raw digit strings ``m**n`` at the deepest level.
    """

    atom_limit: int = 20_000_000
    max_strings: int = 3**14


DEFAULT_LIMITS = Limits()


def check_strings(m: int, n: int, limits: Limits = DEFAULT_LIMITS):
    if m**n > limits.max_strings:
        raise GuardrailExceeded(f"{m}^{n} digit strings exceed the limit {limits.max_strings}")


def integer_weights(p):
    """Common denominator Q and integer numerators of a probability vector."""
    p = [Fraction(x) for x in p]
    Q = 1
    for x in p:
        Q = Q * x.denominator // math.gcd(Q, x.denominator)
    return [int(x * Q) for x in p], Q


def entropy_from_weights(w, den) -> float:
    """Shannon entropy (nats) of integer weights over a common denominator."""
    if isinstance(w, np.ndarray) and w.dtype != object:
        p = w.astype(np.float64) / float(den)
        return -math.fsum((p * np.log(p)).tolist())
    terms = []
    for x in w:
        x = int(x)
        if x:
            q = x / den if den < 2**1000 else float(Fraction(x, den))
            terms.append(q * (math.log(x) - math.log(den)))
    return -math.fsum(terms)


@dataclass
class Level:
    """Law of the digit-sum key at one level.

    ``weights[i] / denominator`` is the mass of class ``i``. ``keys`` holds the
    shifted integer key of every class in the engine's internal layout; use
    :meth:`LevelEngine.decode` to recover rational coordinates.
    """

    k: int
    weights: object
    denominator: int
    keys: object = None

    @property
    def count(self) -> int:
        return len(self.weights)

    def entropy(self) -> float:
        return entropy_from_weights(self.weights, self.denominator)


class LevelEngine:
    """Progressive convolution over levels ``1..n``.

    Parameters
    ----------
    vectors : list of list of sequence
        ``vectors[k][j]`` is the rational key contribution of digit ``j`` at
        position ``k``. All vectors share one dimension.
    p : sequence of Fraction
        Digit probabilities.
    limits : Limits
        Guardrails.
    """

    def __init__(self, vectors, p, limits: Limits = DEFAULT_LIMITS):
        self.n = len(vectors)
        self.m = len(p)
        self.limits = limits
        self.wnum, self.Q = integer_weights(p)
        dim = len(vectors[0][0]) if self.n else 0
        self.dim = dim
        scale = [1] * dim
        for row in vectors:
            for v in row:
                for c, x in enumerate(v):
                    d = Fraction(x).denominator
                    scale[c] = scale[c] * d // math.gcd(scale[c], d)
        self.scale = scale
        ivec, shift = [], []
        for row in vectors:
            iv = [[int(Fraction(x) * scale[c]) for c, x in enumerate(v)] for v in row]
            lo = [min(v[c] for v in iv) for c in range(dim)]
            ivec.append([[v[c] - lo[c] for c in range(dim)] for v in iv])
            shift.append(lo)
        self.ivec = ivec
        self.shift = shift
        self.span = [sum(max(v[c] for v in row) for row in ivec) for c in range(dim)]
        self._choose_tier()

    def _choose_tier(self):
        weight_ok = self.Q**self.n < _INT_CAP
        radix_prod = 1
        for s in self.span:
            radix_prod *= s + 1
        if weight_ok and radix_prod < _INT_CAP:
            self.tier = 1
            strides, acc = [], 1
            for s in self.span:
                strides.append(acc)
                acc *= s + 1
            self.strides = strides
            self.offsets = [
                np.array([sum(v[c] * strides[c] for c in range(self.dim)) for v in row], dtype=np.int64)
                for row in self.ivec
            ]
        elif weight_ok and max(self.span, default=0) < _INT_CAP and self.dim <= 4096:
            self.tier = 2
        else:
            self.tier = 3

    def _guard(self, count, k):
        check_strings(self.m, k + 1, self.limits)
        if count * self.m > self.limits.atom_limit:
            raise GuardrailExceeded(
                f"{count * self.m} candidate atoms exceed the limit {self.limits.atom_limit}"
            )

    def run(self, keep_keys: bool = False):
        """Yield a :class:`Level` for every ``k = 1..n``."""
        if self.tier == 1:
            yield from self._run_packed(keep_keys)
        elif self.tier == 2:
            yield from self._run_rows(keep_keys)
        else:
            yield from self._run_dict(keep_keys)

    def _run_packed(self, keep_keys):
        keys = np.zeros(1, dtype=np.int64)
        w = np.ones(1, dtype=np.int64)
        wj = np.array(self.wnum, dtype=np.int64)
        den = 1
        for k in range(self.n):
            self._guard(keys.size, k)
            offs = self.offsets[k]
            order = np.argsort(offs, kind="stable")
            keys, w = kernels.merge_level(keys, w, offs[order], wj[order])
            den *= self.Q
            yield Level(k + 1, w, den, keys if keep_keys else None)

    def _run_rows(self, keep_keys):
        rows = np.zeros((1, self.dim), dtype=np.int64)
        w = np.ones(1, dtype=np.int64)
        wj = np.array(self.wnum, dtype=np.int64)
        den = 1
        for k in range(self.n):
            self._guard(rows.shape[0], k)
            offs = np.array(self.ivec[k], dtype=np.int64)
            cand = (rows[None, :, :] + offs[:, None, :]).reshape(-1, self.dim)
            cw = (w[None, :] * wj[:, None]).ravel()
            rows, inv = np.unique(cand, axis=0, return_inverse=True)
            w = np.zeros(rows.shape[0], dtype=np.int64)
            np.add.at(w, inv.ravel(), cw)
            den *= self.Q
            yield Level(k + 1, w, den, rows if keep_keys else None)

    def _run_dict(self, keep_keys):
        law = {(0,) * self.dim: 1}
        den = 1
        for k in range(self.n):
            self._guard(len(law), k)
            new = {}
            for key, x in law.items():
                for v, wj in zip(self.ivec[k], self.wnum):
                    kk = tuple(a + b for a, b in zip(key, v))
                    new[kk] = new.get(kk, 0) + x * wj
            law = dict(sorted(new.items()))
            den *= self.Q
            yield Level(k + 1, list(law.values()), den, list(law.keys()) if keep_keys else None)

    def decode(self, level: Level):
        """Rational coordinate vectors of every class at ``level``."""
        k = level.k
        base = [sum(self.shift[i][c] for i in range(k)) for c in range(self.dim)]
        out = []
        if self.tier == 1:
            for key in level.keys.tolist():
                coords = []
                for c in range(self.dim):
                    coords.append((key // self.strides[c]) % (self.span[c] + 1))
                out.append(tuple(Fraction(u + b, s) for u, b, s in zip(coords, base, self.scale)))
        else:
            rows = level.keys.tolist() if isinstance(level.keys, np.ndarray) else level.keys
            for row in rows:
                out.append(tuple(Fraction(u + b, s) for u, b, s in zip(row, base, self.scale)))
        return out


def string_keys(vectors, digits_list):
    """Exact rational key vector of each explicit digit string."""
    out = []
    for digits in digits_list:
        acc = None
        for k, j in enumerate(digits):
            v = vectors[k][j]
            acc = list(v) if acc is None else [a + b for a, b in zip(acc, v)]
        out.append(tuple(Fraction(x) for x in acc) if acc is not None else ())
    return out
