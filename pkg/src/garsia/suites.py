"""Seeded property sweeps over the lemma checkers and entropy inequalities.

Each suite draws ``count`` random instances from a :class:`random.Random`
seeded with ``seed`` and evaluates one checker on each. Instance generators
are public so tests can reuse them.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath

from .derivs import DerivSystem, b_state
from .dioph import (
    dimitrov_test,
    dimitrov_threshold,
    jensen_root_count_check,
    mahler_measure,
    power_sum_delta,
    power_sum_multiset_check,
    root_separation_sweep,
    turan_bound,
    value_lower_bound_check,
)
from .errors import LemmaViolation
from .exactnum import AlgebraicNumber, IntPolynomial, RationalMap, eval_poly
from .ffield import ff_dim_lower_sequence
from .measures import DiscreteDistribution, diff_of_entropy_bounds, kv_inequality_gap, scale_entropy_between
from ._rootfind import mpf_to_fraction
from .selfsim import STANDARD_FORMS

SUITES = (
    "separation",
    "jensen",
    "value-bound",
    "dimitrov",
    "turan",
    "power-sum",
    "kv",
    "scale-entropy",
    "monotone-ff",
    "recursion-oracle",
)

# irreducible polynomials with a real root in (0, 1), and an interval isolating it
ETA_POOL = (
    ((-1, 1, 1), ("1/2", "1")),
    ((-1, 2), ("0", "1")),
    ((-1, 3), ("0", "1")),
    ((-2, 5), ("0", "1")),
    ((-1, 2, 1), ("0", "1")),
    ((-1, 0, 3), ("0", "1")),
    ((-1, 1, 1, 1), ("0", "1")),
    ((-1, 1, 0, 1), ("0", "1")),
)


def eta_from_pool(i: int) -> AlgebraicNumber:
    coeffs, (lo, hi) = ETA_POOL[i % len(ETA_POOL)]
    return AlgebraicNumber.real_root(IntPolynomial(coeffs), Fraction(lo), Fraction(hi))


def random_poly(rng: random.Random, l: int, n: int) -> IntPolynomial:
    """A nonzero member of ``P_l^(n)``."""
    while True:
        P = IntPolynomial([rng.randint(-l, l) for _ in range(n)])
        if not P.is_zero:
            return P


def random_rational(rng: random.Random, lo=0, hi=1, max_den: int = 12) -> Fraction:
    """A rational strictly inside ``(lo, hi)`` with a small denominator."""
    while True:
        q = rng.randint(2, max_den)
        x = Fraction(rng.randint(1, q - 1), q) * (hi - lo) + lo
        if lo < x < hi:
            return x


def random_power_series_map(rng: random.Random, deg: int = 2, L: int = 1) -> RationalMap:
    """``num/den`` with coefficients in ``[-L, L]`` and ``den(0) != 0``."""
    num = IntPolynomial([rng.randint(-L, L) for _ in range(rng.randint(1, deg + 1))])
    den = [rng.choice([-1, 1]) * rng.randint(1, L)] + [rng.randint(-L, L) for _ in range(rng.randint(0, deg))]
    return RationalMap(num, IntPolynomial(den), L)


def random_measure(rng: random.Random, size: int = 4, support=(-3, 3), den: int = 1) -> DiscreteDistribution:
    """Random rational weights on points ``k/den`` with ``k`` in ``support``."""
    pts = rng.sample(range(support[0], support[1] + 1), rng.randint(1, size))
    ws = [rng.randint(1, 6) for _ in pts]
    tot = sum(ws)
    return DiscreteDistribution({Fraction(p, den): Fraction(w, tot) for p, w in zip(pts, ws)})


# ---------------------------------------------------------------------------
# Dimitrov instances


def dimitrov_instance(rng: random.Random, kind: str = "hold"):
    """A constructed input to :func:`garsia.dioph.dimitrov_test`.

    ``kind="hold"`` builds ``P = m^(k+1) H`` with ``m`` the minimal polynomial
    of ``eta`` and ``lam`` a rational inside the window, so the hypotheses
    hold. The near-miss kinds break exactly one ingredient: ``"far"`` moves
    ``lam`` outside the window, ``"alpha"`` puts ``log alpha`` just below the
    threshold and ``"order"`` asks for one more order of vanishing than ``P``
    has.

    Returns
    -------
    dict
        Keyword arguments for ``dimitrov_test``.
    """
    eta = eta_from_pool(rng.randrange(len(ETA_POOL)))
    m = eta.min_poly
    k = rng.randint(1, 2)
    x = eta.approx(80)
    while True:
        H = IntPolynomial([rng.randint(-1, 1) for _ in range(rng.randint(1, 2))])
        if not H.is_zero and not eval_poly(H, eta.element()).is_zero:
            break
    power = k if kind == "order" else k + 1
    P = H
    for _ in range(power):
        P = P * m
    kk = k + 1 if kind == "order" else k
    n, n_prime, l = eta.degree, P.degree + 1, max(P.height, 1)
    thr = dimitrov_threshold(n, n_prime, l, kk)
    alpha = math.exp(thr) * (0.99 if kind == "alpha" else 1.01)
    M = mahler_measure(m).value
    with mpmath.workdps(80):
        dm = abs(mpmath.polyval([mpmath.mpf(c) for c in reversed(m.derivative().coeffs)], x))
        hv = abs(mpmath.polyval([mpmath.mpf(c) for c in reversed(H.coeffs)], x))
        top = (mpmath.mpf(alpha) * M) ** (-n_prime)
        if kind == "far":
            delta = top * 8
        else:
            delta = top / (dm ** (k + 1) * hv) / 4
            delta = min(delta, top / 4)
        sign = rng.choice([-1, 1])
        if not 0 < x + sign * delta < 1:
            sign = -sign
        lam = mpf_to_fraction(x + sign * delta)
    return {"P": P, "lam": AlgebraicNumber.rational(lam), "eta": eta, "k": kk, "alpha": alpha}


# ---------------------------------------------------------------------------
# Turan and power-sum instances


def turan_instance(rng: random.Random):
    """Random admissible arguments for :func:`garsia.dioph.turan_bound`."""
    while True:
        n = rng.randint(1, 5)
        m = rng.randint(0, 3)
        z0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(z0) < 0.1:
            continue
        rest = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n - 1)]
        if rng.random() < 0.3 and rest:
            rest[0] = z0 + complex(rng.uniform(-1e-3, 1e-3), rng.uniform(-1e-3, 1e-3))
        rest.sort(key=lambda w: abs(z0 - w))
        z = [z0] + rest
        b = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
        top = n / (m + n + 1)
        d1 = rng.uniform(0.05, 0.999) * top
        d2 = rng.uniform(0.01, 0.99) * d1
        dist = [abs(z0 - w) for w in z]
        r1 = abs(z0)
        h = max(i + 1 for i in range(n) if dist[i] < r1 * d2)
        if h < n and not dist[h] > r1 * d1:
            continue
        return {"z": z, "b": b, "m": m, "delta1": d1, "delta2": d2}


def power_sum_instance(rng: random.Random, kind: str = "close"):
    """Multisets for :func:`garsia.dioph.power_sum_multiset_check`.

    ``"close"`` permutes ``U`` and perturbs one element far below the
    lemma's delta; ``"apart"`` draws unrelated multisets.
    """
    M = rng.randint(1, 3)
    eps = rng.choice([0.1, 0.2, 0.3])

    def draw(size):
        out = []
        for _ in range(size):
            r = rng.uniform(1.1, 2.0)
            t = rng.uniform(0, 2 * math.pi)
            out.append(mpmath.mpc(r * math.cos(t), r * math.sin(t)))
        return out

    U = draw(rng.randint(1, M))
    if kind == "close":
        W = list(U)
        rng.shuffle(W)
        with mpmath.workdps(120):
            tiny = mpmath.mpf(power_sum_delta(eps, M)) * mpmath.mpf(10) ** -30
            W[0] = W[0] + tiny
            delta = tiny * 100 * 2 ** (2 * M) * 4 ** (2 * M)
    else:
        W = draw(rng.randint(1, M))
        delta = mpmath.mpf(power_sum_delta(eps, M))
    return {"U": U, "W": W, "M": M, "delta": delta, "eps": eps, "dps": 120}


# ---------------------------------------------------------------------------
# suite bodies; each yields (instance json, verdict) with verdict one of
# "pass", "skip" or "violation"


def _report_outcome(rep):
    if rep.verdict == "violated":
        return "violation"
    if rep.verdict in ("certified", "zero"):
        return "pass"
    return "skip"


def _suite_separation(rng, count, n):
    rep = root_separation_sweep(n or 4, 1)
    yield rep.to_json(), _report_outcome(rep)


def _suite_jensen(rng, count, n):
    for _ in range(count):
        P = random_poly(rng, 2, n or 8)
        k = rng.randint(1, 4)
        rep = jensen_root_count_check(P, k, 2)
        yield rep.to_json(), _report_outcome(rep)


def _suite_value_bound(rng, count, n):
    for _ in range(count):
        nn = n or rng.randint(1, 5)
        l = rng.randint(1, 2)
        P = random_poly(rng, l, nn)
        lam = eta_from_pool(rng.randrange(len(ETA_POOL))) if rng.random() < 0.6 else \
            AlgebraicNumber.rational(random_rational(rng))
        rep = value_lower_bound_check(P, lam, nn, l)
        yield rep.to_json(), _report_outcome(rep)


def _suite_dimitrov(rng, count, n):
    kinds = ("hold", "far", "alpha", "order")
    for i in range(count):
        kind = kinds[i % len(kinds)]
        inst = dimitrov_instance(rng, kind)
        rep = dimitrov_test(**inst)
        d = rep.to_json()
        d["kind"] = kind
        if kind != "hold" and rep.verdict == "certified":
            yield d, "violation"
        elif kind == "hold" and rep.verdict != "certified":
            # the construction is meant to satisfy the hypotheses
            yield d, "violation"
        else:
            yield d, _report_outcome(rep)


def _suite_turan(rng, count, n):
    for _ in range(count):
        inst = turan_instance(rng)
        rep = turan_bound(**inst)
        yield rep.to_json(), _report_outcome(rep)


def _suite_power_sum(rng, count, n):
    for i in range(count):
        inst = power_sum_instance(rng, "close" if i % 2 == 0 else "apart")
        rep = power_sum_multiset_check(**inst)
        yield rep.to_json(), _report_outcome(rep)


def _suite_kv(rng, count, n):
    for _ in range(count):
        mu, nu = random_measure(rng), random_measure(rng)
        k = n or rng.randint(1, 4)
        lhs, rhs = kv_inequality_gap(mu, nu, k)
        inst = {"mu": mu.to_json(), "nu": nu.to_json(), "n": k, "lhs": lhs, "rhs": rhs}
        yield inst, "pass" if lhs <= rhs + 1e-9 else "violation"


def _suite_scale_entropy(rng, count, n):
    for _ in range(count):
        nu = random_measure(rng, size=5, support=(-20, 20), den=rng.randint(1, 7))
        r1 = random_rational(rng, 0, 2, 9)
        r2 = random_rational(rng, r1, 3, 9)
        d = scale_entropy_between(nu, r1, r2)
        lo, hi = diff_of_entropy_bounds(r1, r2)
        inst = {"nu": nu.to_json(), "r1": str(r1), "r2": str(r2), "diff": d, "bound": hi}
        yield inst, "pass" if lo - 1e-9 <= d <= hi + 1e-9 else "violation"


def _suite_monotone_ff(rng, count, n):
    p = [Fraction(1, 3)] * 3
    for _ in range(count):
        R = random_power_series_map(rng)
        seq = ff_dim_lower_sequence(R, STANDARD_FORMS, p, n or 6)
        ok = all(b >= a - 1e-9 for a, b in zip(seq, seq[1:]))
        yield {"R": R.to_json(), "sequence": seq}, "pass" if ok else "violation"


def _suite_recursion_oracle(rng, count, n):
    for _ in range(count):
        while True:
            R = RationalMap(IntPolynomial([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))]),
                            IntPolynomial([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))] + [1]))
            lam = random_rational(rng, 0, 1, 10)
            if eval_poly(R.den, lam) != 0:
                break
        K = rng.randint(1, 4)
        digits = [rng.randrange(3) for _ in range(rng.randint(1, n or 8))]
        inst = {"R": R.to_json(), "lam": str(lam), "K": K, "digits": digits}
        try:
            b_state(DerivSystem(R, lam, K), digits)
        except LemmaViolation as exc:
            inst["error"] = str(exc)
            yield inst, "violation"
        else:
            yield inst, "pass"


_BODIES = {
    "separation": _suite_separation,
    "jensen": _suite_jensen,
    "value-bound": _suite_value_bound,
    "dimitrov": _suite_dimitrov,
    "turan": _suite_turan,
    "power-sum": _suite_power_sum,
    "kv": _suite_kv,
    "scale-entropy": _suite_scale_entropy,
    "monotone-ff": _suite_monotone_ff,
    "recursion-oracle": _suite_recursion_oracle,
}


def run_suite(name: str, seed: int = 0, count: int = 100, n: int = None) -> dict:
    """Run one suite and return a JSON-ready summary.

    Raises
    ------
    KeyError
        For an unknown suite name.
    """
    body = _BODIES[name]
    rng = random.Random(seed)
    summary = {"suite": name, "seed": seed, "count": count, "checked": 0, "passed": 0,
               "skipped": 0, "violations": []}
    for inst, outcome in body(rng, count, n):
        summary["checked"] += 1
        if outcome == "pass":
            summary["passed"] += 1
        elif outcome == "skip":
            summary["skipped"] += 1
        else:
            summary["violations"].append(inst)
    summary["status"] = "fail" if summary["violations"] else "pass"
    return summary


__all__ = [
    "SUITES",
    "ETA_POOL",
    "eta_from_pool",
    "random_poly",
    "random_rational",
    "random_power_series_map",
    "random_measure",
    "dimitrov_instance",
    "turan_instance",
    "power_sum_instance",
    "run_suite",
]
