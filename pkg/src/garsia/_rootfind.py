"""Certified complex roots of integer polynomials.

Roots are first located with a float Aberth iteration, polished in mpmath at a
working precision that doubles on demand, and then certified with Weierstrass
inclusion disks evaluated in interval arithmetic. For a square-free ``f`` of
degree ``d`` with approximations ``z_i`` the correction
``W_i = f(z_i) / (lc * prod_{j != i}(z_i - z_j))`` gives disks
``D(z_i, d*|W_i|)``; when they are pairwise disjoint each holds exactly one
root.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import iv

from . import kernels
from .errors import PrecisionExhausted
from .exactnum import IntPolynomial, squarefree_decomposition

MAX_BITS = 4096
START_BITS = 128


@contextmanager
def _ivprec(bits):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def iv_upper(x) -> Fraction:
    """Exact upper endpoint of an mpmath real interval."""
    return _mpf_tuple_to_fraction(x._mpi_[1])


def iv_lower(x) -> Fraction:
    return _mpf_tuple_to_fraction(x._mpi_[0])


def mpf_to_fraction(x) -> Fraction:
    return _mpf_tuple_to_fraction(mpmath.mpf(x)._mpf_)


@dataclass(frozen=True)
class CertifiedRoot:
    """A disk ``|z - center| <= radius`` holding exactly ``multiplicity`` roots.

    ``center`` is a pair of Fractions (real, imaginary); ``radius`` is a
    rational upper bound. The disk contains one distinct root.
    """

    center_exact: tuple
    radius: Fraction
    multiplicity: int

    @property
    def center(self) -> complex:
        return complex(float(self.center_exact[0]), float(self.center_exact[1]))

    def mp_center(self):
        re, im = self.center_exact
        return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator)

    def modulus_bounds(self):
        """Rational-ish (lower, upper) bounds on the modulus of the root."""
        with _ivprec(256):
            re, im = self.center_exact
            c = iv.mpc(iv.mpf(re.numerator) / re.denominator, iv.mpf(im.numerator) / im.denominator)
            a = abs(c)
            lo = iv_lower(a) - self.radius
            hi = iv_upper(a) + self.radius
        return max(lo, Fraction(0)), hi

    def is_exact(self) -> bool:
        return self.radius == 0


@dataclass(frozen=True)
class RootSet:
    """All complex roots of ``source`` as certified disjoint disks."""

    source: IntPolynomial
    roots: tuple

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    @property
    def degree(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def centers(self):
        return [r.center for r in self.roots]

    def expanded(self):
        """Roots repeated according to multiplicity."""
        out = []
        for r in self.roots:
            out.extend([r] * r.multiplicity)
        return out


def _cauchy_radius(coeffs) -> float:
    lead = abs(coeffs[-1])
    return 1.0 + max(abs(c) / lead for c in coeffs[:-1]) if len(coeffs) > 1 else 1.0


def _float_seeds(f: IntPolynomial):
    d = f.degree
    coeffs = [float(c) for c in f.coeffs]
    if not all(math.isfinite(c) for c in coeffs) or max(abs(c) for c in coeffs) > 1e150:
        return None
    rad = min(_cauchy_radius(f.coeffs), 1e100)
    k = np.arange(d)
    z0 = rad * 0.9 * np.exp(1j * (2 * np.pi * k / d + 0.4))
    z = kernels.aberth(np.array(coeffs, dtype=np.complex128), z0.astype(np.complex128), 500, 1e-14)
    if not np.all(np.isfinite(z)):
        return None
    return [complex(x) for x in z]


def _mp_aberth(f: IntPolynomial, z, iters: int, tol):
    cs = [mpmath.mpf(c) for c in f.coeffs]
    d = len(cs) - 1
    dcs = [cs[k] * k for k in range(1, d + 1)]
    z = list(z)
    for _ in range(iters):
        worst = mpmath.mpf(0)
        for i in range(len(z)):
            p = mpmath.polyval(cs[::-1], z[i])
            if p == 0:
                continue
            dp = mpmath.polyval(dcs[::-1], z[i])
            ratio = p / dp if dp != 0 else p
            s = mpmath.mpc(0)
            for j in range(len(z)):
                if j != i and z[i] != z[j]:
                    s += 1 / (z[i] - z[j])
            den = 1 - ratio * s
            step = ratio / den if den != 0 else ratio
            z[i] -= step
            worst = max(worst, abs(step) / max(abs(z[i]), 1))
        if worst < tol:
            break
    return z


def _weierstrass_radii(f: IntPolynomial, z, bits):
    """Interval upper bounds for ``d * |W_i|``; None if a product vanishes."""
    d = f.degree
    out = []
    with _ivprec(bits):
        cs = [iv.mpf(c) for c in f.coeffs]
        zi = [iv.mpc(iv.mpf(x.real), iv.mpf(x.imag)) for x in z]
        lead = cs[-1]
        for i in range(d):
            p = cs[-1]
            for c in reversed(cs[:-1]):
                p = p * zi[i] + c
            prod = lead
            for j in range(d):
                if j != i:
                    prod = prod * (zi[i] - zi[j])
            ap = abs(prod)
            if iv_lower(ap) <= 0:
                return None
            out.append(iv_upper(abs(p)) * d / iv_lower(ap))
    return out


def _disjoint(disks) -> bool:
    for a in range(len(disks)):
        (xa, ya), ra = disks[a]
        for b in range(a + 1, len(disks)):
            (xb, yb), rb = disks[b]
            if (xa - xb) ** 2 + (ya - yb) ** 2 <= (ra + rb) ** 2:
                return False
    return True


def _linear_root(f: IntPolynomial):
    return (Fraction(-f.coeffs[0], f.coeffs[1]), Fraction(0))


def _round_center(x, bits):
    re = mpf_to_fraction(x.real)
    im = mpf_to_fraction(x.imag)
    scale = 2 ** (bits + 8)
    return (Fraction(round(re * scale), scale), Fraction(round(im * scale), scale))


def certified_roots(P: IntPolynomial, precision=Fraction(1, 10**12)) -> RootSet:
    """All roots of ``P`` with multiplicities and certified radii.

    Parameters
    ----------
    P : IntPolynomial
        Nonzero polynomial.
    precision : Fraction
        Target upper bound for every disk radius.

    Raises
    ------
    PrecisionExhausted
        If certification fails at the maximal working precision.
    """
    if P.is_zero:
        raise ValueError("the zero polynomial has no root set")
    precision = Fraction(precision)
    k0 = 0
    while P[k0] == 0:
        k0 += 1
    exact = []
    if k0:
        exact.append(((Fraction(0), Fraction(0)), Fraction(0), k0))
    core = IntPolynomial(P.coeffs[k0:])
    factors = squarefree_decomposition(core) if core.degree >= 1 else []

    pending = []
    for f, mult in factors:
        if f.degree == 1:
            exact.append((_linear_root(f), Fraction(0), mult))
        else:
            pending.append((f, mult))

    bits = START_BITS
    approx = {}
    while True:
        disks = [(c, r) for c, r, _ in exact]
        results = []
        ok = True
        with mpmath.workprec(bits):
            for idx, (f, mult) in enumerate(pending):
                z = approx.get(idx)
                if z is None:
                    seeds = _float_seeds(f)
                    if seeds is None:
                        seeds = list(mpmath.polyroots([mpmath.mpf(c) for c in reversed(f.coeffs)],
                                                      maxsteps=200, extraprec=bits))
                    z = [mpmath.mpc(s) for s in seeds]
                z = _mp_aberth(f, z, 200, mpmath.mpf(2) ** (-bits + 8))
                approx[idx] = z
                radii = _weierstrass_radii(f, z, bits)
                if radii is None:
                    ok = False
                    continue
                for x, r in zip(z, radii):
                    c = _round_center(x, bits)
                    # rounding the centre moves it by at most 2^-(bits+8) per coordinate
                    r = r + Fraction(2, 2 ** (bits + 8))
                    results.append((c, r, mult))
        if ok:
            disks += [(c, r) for c, r, _ in results]
            if _disjoint(disks) and all(r <= precision for _, r, _ in results):
                allr = exact + results
                allr.sort(key=lambda t: (t[0][0], t[0][1]))
                roots = tuple(CertifiedRoot(c, _simplify_radius(r), m) for c, r, m in allr)
                return RootSet(P, roots)
        if bits >= MAX_BITS:
            raise PrecisionExhausted(f"could not certify roots of {P!r} within {MAX_BITS} bits")
        bits *= 2


def _simplify_radius(r: Fraction) -> Fraction:
    """Round a radius up to a short dyadic rational."""
    if r == 0:
        return r
    e = r.numerator.bit_length() - r.denominator.bit_length() - 60
    q = Fraction(2) ** e
    return math.ceil(r / q) * q
