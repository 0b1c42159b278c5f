"""Certified roots, Mahler measures and checkers for Diophantine inequalities.

Every checker returns a :class:`LemmaReport`. Inequalities are decided with
certified enclosures; a checker either certifies, reports a violation, or
raises :class:`HypothesisViolated` naming the failing clause. The Dimitrov and
power-sum checkers instead report failed hypotheses in the verdict, since
evaluating the hypotheses is part of their job.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath
from mpmath import iv

from ._rootfind import (
    CertifiedRoot,
    RootSet,
    _ivprec,
    certified_roots,
    iv_lower,
    iv_upper,
)
from .errors import HypothesisViolated, IndistinguishableRoots, PrecisionExhausted
from .exactnum import (
    AlgebraicNumber,
    IntPolynomial,
    NumberFieldElement,
    as_fraction,
    eval_poly,
    format_fraction,
    qgcd,
    to_intpoly,
    vanishing_order,
)

__all__ = [
    "CertifiedRoot",
    "RootSet",
    "LemmaReport",
    "MahlerMeasure",
    "roots",
    "mahler_measure",
    "polynomials_P",
    "root_separation_bound",
    "root_separation_check",
    "root_separation_sweep",
    "jensen_a",
    "jensen_root_count_check",
    "close_root",
    "value_lower_bound_check",
    "dimitrov_threshold",
    "dimitrov_test",
    "turan_bound",
    "power_sum_delta",
    "power_sum_multiset_check",
]


@dataclass
class LemmaReport:
    """Outcome of one lemma evaluation.

    ``verdict`` is one of ``"certified"``, ``"violated"``, ``"zero"`` (an
    alternative conclusion such as ``P(lam) = 0``), ``"hypotheses_fail"`` or
    ``"vacuous"``.
    """

    lemma: str
    inputs: dict
    hypothesis_status: str
    lhs: float
    rhs: float
    verdict: str
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict != "violated"

    def to_json(self):
        d = asdict(self)
        for key in ("lhs", "rhs"):
            v = d[key]
            if isinstance(v, float) and not math.isfinite(v):
                d[key] = str(v)
        if not d["extra"]:
            del d["extra"]
        return d


def roots(P: IntPolynomial, precision=Fraction(1, 10**12)) -> RootSet:
    """Certified root disks of ``P`` with multiplicities, radii ``<= precision``."""
    return certified_roots(P, precision)


def polynomials_P(l: int, n: int, up_to_sign: bool = False):
    """All nonzero polynomials of degree < n with coefficients in [-l, l]."""
    for cs in itertools.product(range(-l, l + 1), repeat=n):
        P = IntPolynomial(cs)
        if P.is_zero:
            continue
        if up_to_sign and P.leading < 0:
            continue
        yield P


# ---------------------------------------------------------------------------
# Mahler measure


def _round_out(x: Fraction, up: bool, bits: int = 120) -> Fraction:
    if x == 0:
        return x
    e = x.numerator.bit_length() - x.denominator.bit_length() - bits
    q = Fraction(2) ** e
    return (math.ceil(x / q) if up else math.floor(x / q)) * q


@dataclass(frozen=True)
class MahlerMeasure:
    """``M(P)`` with a certified enclosure and the length ``l1(P)``."""

    value: float
    lower: Fraction
    upper: Fraction
    l1: int

    def __float__(self):
        return self.value


def mahler_measure(P: IntPolynomial, precision=Fraction(1, 10**20)) -> MahlerMeasure:
    """``|a_n| * prod max(1, |z|)`` over the roots of ``P``."""
    if P.is_zero:
        raise ValueError("Mahler measure of the zero polynomial")
    rs = certified_roots(P, precision)
    lo = hi = Fraction(abs(P.leading))
    val = mpmath.mpf(abs(P.leading))
    with mpmath.workdps(40):
        for r in rs:
            a, b = r.modulus_bounds()
            lo = _round_out(lo * max(Fraction(1), a) ** r.multiplicity, up=False)
            hi = _round_out(hi * max(Fraction(1), b) ** r.multiplicity, up=True)
            val *= max(mpmath.mpf(1), abs(r.mp_center())) ** r.multiplicity
    return MahlerMeasure(float(val), lo, hi, P.l1)


def _algebraic_mahler(eta) -> MahlerMeasure:
    if isinstance(eta, AlgebraicNumber):
        return mahler_measure(eta.min_poly)
    q = as_fraction(eta)
    return mahler_measure(IntPolynomial((-q.numerator, q.denominator)))


# ---------------------------------------------------------------------------
# certified enclosures of algebraic points


def _as_algebraic(x) -> AlgebraicNumber:
    return x if isinstance(x, AlgebraicNumber) else AlgebraicNumber.rational(as_fraction(x))


def _ivq(q: Fraction):
    return iv.mpf(q.numerator) / q.denominator


def _point_box(eta: AlgebraicNumber, bits: int):
    """An interval box (as mpmath ivmpc) containing ``eta``."""
    if eta.is_rational:
        return iv.mpc(_ivq(eta.as_fraction()), iv.mpf(0))
    e = eta.refine(Fraction(1, 2**bits))
    (a, b), (c, d) = e.box
    re = iv.mpf([_ivq(a).a, _ivq(b).b])
    if eta.real:
        return iv.mpc(re, iv.mpf(0))
    return iv.mpc(re, iv.mpf([_ivq(c).a, _ivq(d).b]))


def _abs_enclosure(coeffs, eta: AlgebraicNumber, bits: int):
    """Interval for ``|sum c_i eta^i|``."""
    z = _point_box(eta, bits)
    acc = iv.mpc(0, 0)
    for c in reversed(coeffs):
        c = Fraction(c)
        acc = acc * z + _ivq(c)
    return abs(acc)


def _value_enclosure(P: IntPolynomial, eta: AlgebraicNumber):
    """Exact zero test, then a certified (lower, upper) for ``|P(eta)|``."""
    if eta.is_rational:
        v = abs(eval_poly(P, eta.as_fraction()))
        return v == 0, v, v
    el = eval_poly(P, eta.element())
    if el.is_zero:
        return True, Fraction(0), Fraction(0)
    bits = 128
    while bits <= 4096:
        with _ivprec(bits + 32):
            a = _abs_enclosure(el.coeffs, eta, bits)
            lo, hi = iv_lower(a), iv_upper(a)
        if lo > 0:
            return False, lo, hi
        bits *= 2
    raise PrecisionExhausted("could not separate a nonzero value from 0")


def _distance_enclosure(x: AlgebraicNumber, y: AlgebraicNumber, bits: int):
    with _ivprec(bits + 32):
        d = abs(_point_box(x, bits) - _point_box(y, bits))
        return iv_lower(d), iv_upper(d)


# ---------------------------------------------------------------------------
# root separation


def root_separation_bound(n: int, l: int, exact: bool = False):
    """``2^(-n-1) n^(-5n) l^(-4n)``."""
    b = Fraction(1, 2 ** (n + 1) * n ** (5 * n) * l ** (4 * n))
    return b if exact else float(b)


def _disk_gap(r1: CertifiedRoot, r2: CertifiedRoot):
    """Certified lower bound on the distance between the two roots."""
    (x1, y1), (x2, y2) = r1.center_exact, r2.center_exact
    d2 = (x1 - x2) ** 2 + (y1 - y2) ** 2
    with _ivprec(256):
        d = iv.sqrt(iv.mpf(d2.numerator) / d2.denominator)
        lo = iv_lower(d)
    return lo - r1.radius - r2.radius


def root_separation_check(eta, eta2, n: int, l: int, witnesses=None) -> LemmaReport:
    """Certify ``|eta - eta2| >= 2^(-n-1) n^(-5n) l^(-4n)``.

    ``witnesses`` optionally gives polynomials in ``P_l^(n)`` vanishing at the
    two points; otherwise the minimal polynomials must lie in that set.
    """
    eta, eta2 = _as_algebraic(eta), _as_algebraic(eta2)
    polys = witnesses or (eta.min_poly, eta2.min_poly)
    for P, e in zip(polys, (eta, eta2)):
        if not P.in_P(l, n):
            raise HypothesisViolated("membership", f"{P!r} is not in P_{l}^({n})")
        if vanishing_order(P, e) == 0:
            raise HypothesisViolated("root", f"{P!r} does not vanish at the given point")
    if eta == eta2:
        raise HypothesisViolated("distinct", "the two points coincide")
    bound = root_separation_bound(n, l, exact=True)
    inputs = {"eta": eta.to_json(), "eta2": eta2.to_json(), "n": n, "l": l}
    bits = 64
    while bits <= 4096:
        lo, hi = _distance_enclosure(eta, eta2, bits)
        if lo >= bound:
            return LemmaReport("root-separation", inputs, "holds", float(lo), float(bound), "certified")
        if hi < bound:
            return LemmaReport("root-separation", inputs, "holds", float(hi), float(bound), "violated")
        bits *= 2
    raise IndistinguishableRoots("distance could not be compared with the bound")


def _same_root(Pa, ra: CertifiedRoot, Pb, rb: CertifiedRoot) -> bool:
    g = qgcd([Fraction(c) for c in Pa.coeffs], [Fraction(c) for c in Pb.coeffs])
    if len(g) < 2:
        return False
    G = to_intpoly(g)
    for rg in certified_roots(G, min(ra.radius, rb.radius) or Fraction(1, 2**200)):
        if _disk_gap(rg, ra) <= 0 and _disk_gap(rg, rb) <= 0:
            return True
    return False


def root_separation_sweep(n: int, l: int, polys=None) -> LemmaReport:
    """Check the separation bound over all distinct roots of ``P_l^(n)``."""
    bound = root_separation_bound(n, l, exact=True)
    prec = min(bound / 1000, Fraction(1, 10**15))
    polys = list(polys) if polys is not None else list(polynomials_P(l, n, up_to_sign=True))
    distinct = []  # (root, poly)
    for P in polys:
        if P.degree < 1:
            continue
        for r in certified_roots(P, prec):
            z = r.center
            dup = False
            for q, Q in distinct:
                if abs(q.center - z) < 1e-9 and _same_root(P, r, Q, q):
                    dup = True
                    break
            if not dup:
                distinct.append((r, P))
    min_gap = math.inf
    violations = []
    fbound = float(bound)
    for (r1, P1), (r2, P2) in itertools.combinations(distinct, 2):
        d = abs(r1.center - r2.center)
        if d - 1e-9 > fbound * 1.001 and d > 1e-6:
            min_gap = min(min_gap, d)
            continue
        lo = _disk_gap(r1, r2)
        min_gap = min(min_gap, float(lo))
        if lo < bound:
            violations.append({"P": P1.to_json(), "Q": P2.to_json(), "gap": float(lo)})
    inputs = {"n": n, "l": l, "polynomials": len(polys), "distinct_roots": len(distinct)}
    verdict = "violated" if violations else "certified"
    return LemmaReport("root-separation", inputs, "holds", min_gap, float(bound), verdict,
                       {"violations": violations})


# ---------------------------------------------------------------------------
# Jensen root count


def jensen_a(k: int, exact_iv: bool = False):
    """``a(k) = k/(k+1) * (k+1)^(-1/k)``."""
    if exact_iv:
        return iv.mpf(k) / (k + 1) * iv.mpf(k + 1) ** (-iv.mpf(1) / k)
    return k / (k + 1) * (k + 1) ** (-1.0 / k)


def jensen_root_count_check(P: IntPolynomial, k: int, l: int = None) -> LemmaReport:
    """Count nonzero roots with ``|z| < a(k)`` against ``k(1 + log l/log(k+1))``."""
    if P.is_zero:
        raise HypothesisViolated("nonzero", "P must be nonzero")
    if k < 1:
        raise HypothesisViolated("k", "k must be at least 1")
    l = l or max(P.height, 1)
    if P.height > l:
        raise HypothesisViolated("membership", f"coefficients exceed l={l}")
    bound = k * (1 + math.log(l) / math.log(k + 1))
    prec = Fraction(1, 10**15)
    inputs = {"P": P.to_json(), "k": k, "l": l}
    for _ in range(6):
        rs = certified_roots(P, prec)
        with _ivprec(256):
            a = jensen_a(k, exact_iv=True)
            alo, ahi = iv_lower(a), iv_upper(a)
        inside = unsure = 0
        for r in rs:
            if r.center_exact == (0, 0) and r.radius == 0:
                continue
            lo, hi = r.modulus_bounds()
            if hi < alo:
                inside += r.multiplicity
            elif lo < ahi:
                unsure += r.multiplicity
        if inside + unsure <= bound:
            return LemmaReport("jensen", inputs, "holds", inside + unsure, bound, "certified")
        if inside > bound:
            return LemmaReport("jensen", inputs, "holds", inside, bound, "violated")
        prec /= 2**64
    raise PrecisionExhausted("root moduli too close to a(k)")


# ---------------------------------------------------------------------------
# close root


def close_root(P: IntPolynomial, lam, r, eps, n: int = None, l: int = None, c: float = 1.0) -> LemmaReport:
    """Locate a root of ``P`` near a point where ``|P|`` is small.

    Checks the hypotheses ``eps <= |lam| <= 1-eps``, ``|P(lam)| <= r``,
    ``0 < r < eps^n 2^-n``, ``l >= 3`` and then measures the distance ``d`` to
    the nearest root against ``(2^n eps^-n r)^(c/log l)``. The report's
    ``extra`` holds the certified root disk, ``within_radius`` and
    ``achieved_c``, the largest ``c`` for which ``d`` fits the radius.

    Raises
    ------
    HypothesisViolated
        Naming the first failing clause.
    """
    lam = _as_algebraic(lam)
    r, eps = as_fraction(r), as_fraction(eps)
    n = n or P.degree + 1
    l = l or max(P.height, 3)
    if P.is_zero or not P.in_P(l, n):
        raise HypothesisViolated("membership", f"P must be a nonzero member of P_{l}^({n})")
    if l < 3:
        raise HypothesisViolated("l >= 3")
    if not (0 <= r < eps**n / 2**n):
        raise HypothesisViolated("r < eps^n 2^-n")
    lam_abs = abs(complex(lam)) if not lam.is_rational else abs(lam.as_fraction())
    if not (eps <= lam_abs <= 1 - eps):
        raise HypothesisViolated("eps <= |lam| <= 1-eps", f"|lam| = {float(lam_abs)}")
    is_zero, vlo, vhi = _value_enclosure(P, lam)
    if vlo > r:
        raise HypothesisViolated("|P(lam)| <= r", f"|P(lam)| >= {float(vlo)}")
    if r == 0 and not is_zero:
        raise HypothesisViolated("|P(lam)| <= r")
    rs = certified_roots(P, Fraction(1, 10**30))
    z = complex(lam)
    best = min(rs.roots, key=lambda q: abs(q.center - z))
    with mpmath.workdps(50):
        d = abs(best.mp_center() - mpmath.mpc(z)) if not lam.is_rational else abs(
            best.mp_center() - mpmath.mpf(lam.as_fraction().numerator) / lam.as_fraction().denominator)
        d_upper = d + mpmath.mpf(best.radius.numerator) / best.radius.denominator
        if is_zero:
            d_upper = mpmath.mpf(0)
        base = mpmath.mpf(2) ** n * (mpmath.mpf(eps.numerator) / eps.denominator) ** (-n) * (
            mpmath.mpf(r.numerator) / r.denominator)
        if r == 0:
            radius = mpmath.mpf(0)
            achieved = math.inf
        else:
            radius = base ** (mpmath.mpf(c) / mpmath.log(l))
            achieved = math.inf if d_upper == 0 else float(mpmath.log(l) * mpmath.log(d_upper) / mpmath.log(base))
    within = bool(d_upper <= radius)
    inputs = {"P": P.to_json(), "lam": lam.to_json(), "r": format_fraction(r), "eps": format_fraction(eps),
              "n": n, "l": l, "c": c}
    extra = {
        "root": [[format_fraction(x) for x in best.center_exact], format_fraction(best.radius)],
        "within_radius": within,
        "achieved_c": achieved,
    }
    return LemmaReport("close-root", inputs, "holds", float(d_upper), float(radius),
                       "certified" if within else "vacuous", extra)


# ---------------------------------------------------------------------------
# value lower bounds


def value_lower_bound_check(P: IntPolynomial, lam, n: int = None, l: int = None,
                            root_witness: IntPolynomial = None) -> LemmaReport:
    """Either ``P(lam) = 0`` exactly or ``|P(lam)| >= (ln)^-deg(lam) M(lam)^-n``.

    When ``lam`` is a root of a nonzero member of ``P_l^(n)`` (its minimal
    polynomial, or ``root_witness``), the bound ``(ln)^-2n`` is checked too.
    """
    lam = _as_algebraic(lam)
    n = n or P.degree + 1
    l = l or max(P.height, 1)
    if not P.in_P(l, n):
        raise HypothesisViolated("membership", f"P is not in P_{l}^({n})")
    inputs = {"P": P.to_json(), "lam": lam.to_json(), "n": n, "l": l}
    is_zero, vlo, vhi = _value_enclosure(P, lam)
    if is_zero:
        return LemmaReport("value-bound", inputs, "holds", 0.0, 0.0, "zero")
    M = _algebraic_mahler(lam)
    d = lam.degree
    ln = Fraction(l * n)
    # the bound decreases in M, so the lower end of M's enclosure is the safe side
    rhs_exact = 1 / (ln**d * M.lower**n)
    rhs_float = float(ln) ** -d * M.value ** -n
    bounds = {"general": rhs_float}
    ok = vlo >= rhs_exact
    wit = root_witness or lam.min_poly
    if wit.in_P(l, n) and vanishing_order(wit, lam) > 0:
        root_bound = 1 / ln ** (2 * n)
        bounds["root"] = float(root_bound)
        ok = ok and vlo >= root_bound
    verdict = "certified" if ok else "violated"
    return LemmaReport("value-bound", inputs, "holds", float(vlo), max(bounds.values()), verdict,
                       {"bounds": bounds})


# ---------------------------------------------------------------------------
# Dimitrov multiplicity test


def dimitrov_threshold(n: int, n_prime: int, l: int, k: int) -> float:
    """The lower bound that ``log(alpha)`` has to exceed."""
    return ((n * (k + 1) + (k + 2)) * math.log(n_prime) + (n + 1) * math.log(l) + math.log(2)) / n_prime


def dimitrov_test(P: IntPolynomial, lam, eta, k: int, alpha, n: int = None, n_prime: int = None,
                  l: int = None) -> LemmaReport:
    """Evaluate the window hypotheses and, if they hold, confirm the order exactly.

    The verdict is ``"certified"`` when the hypotheses hold and
    ``vanishing_order(P, eta) >= k``, ``"violated"`` when they hold but the
    order is smaller, and ``"hypotheses_fail"`` (with the clause in
    ``hypothesis_status``) otherwise.
    """
    lam, eta = _as_algebraic(lam), _as_algebraic(eta)
    n = n or eta.degree
    n_prime = n_prime or P.degree + 1
    l = l or max(P.height, 1)
    inputs = {"P": P.to_json(), "lam": lam.to_json(), "eta": eta.to_json(), "k": k,
              "alpha": str(alpha), "n": n, "n_prime": n_prime, "l": l}

    def fail(clause, lhs=math.nan, rhs=math.nan):
        return LemmaReport("dimitrov", inputs, f"fails: {clause}", lhs, rhs, "hypotheses_fail")

    if P.is_zero or not P.in_P(l, n_prime):
        return fail("P nonzero in P_l^(n')")
    if not (lam.real and eta.real):
        return fail("lam, eta real")
    with mpmath.workdps(60):
        for x, name in ((lam, "lam"), (eta, "eta")):
            v = x.approx(60)
            if not 0 <= v <= 1:
                return fail(f"{name} in [0, 1]")
    if eta.degree > n:
        return fail("deg eta <= n")
    if lam == eta:
        return fail("eta != lam")
    thr = dimitrov_threshold(n, n_prime, l, k)
    log_alpha = math.log(float(alpha))
    if not log_alpha > thr:
        return fail("log alpha above threshold", log_alpha, thr)

    M = _algebraic_mahler(eta)
    is_zero, vlo, vhi = _value_enclosure(P, lam)
    bits = 256
    dlo, dhi = _distance_enclosure(lam, eta, bits)
    with mpmath.workprec(bits):
        a = mpmath.mpf(alpha) if not isinstance(alpha, Fraction) else (
            mpmath.mpf(alpha.numerator) / alpha.denominator)

        def mpq(q):
            return mpmath.mpf(q.numerator) / q.denominator

        # lower window end is increasing in M and |P(lam)|: use upper enclosures
        low_end = (a * mpq(M.upper)) ** (mpmath.mpf(n_prime) / k) * mpq(vhi) ** (mpmath.mpf(1) / k)
        # upper window end is decreasing in M: use the lower enclosure
        high_end = (a * mpq(M.lower)) ** (-n_prime)
        margin = mpmath.mpf(2) ** (-bits + 40)
        lower_ok = low_end * (1 + margin) <= mpq(dlo)
        upper_ok = mpq(dhi) <= high_end * (1 - margin)
        lhs, rhs_lo, rhs_hi = float(mpq(dlo)), float(low_end), float(high_end)
    if not upper_ok:
        return fail("|lam - eta| <= (alpha M(eta))^-n'", lhs, rhs_hi)
    if not lower_ok:
        return fail("(alpha M(eta))^(n'/k) |P(lam)|^(1/k) <= |lam - eta|", lhs, rhs_lo)
    order = vanishing_order(P, eta)
    verdict = "certified" if order >= k else "violated"
    return LemmaReport("dimitrov", inputs, "holds", float(order), float(k), verdict,
                       {"distance": lhs, "window": [rhs_lo, rhs_hi], "P_lam_zero": is_zero})


# ---------------------------------------------------------------------------
# Turan power sums


def turan_bound(z, b, m: int, delta1, delta2, dps: int = 50) -> LemmaReport:
    """Check the power-sum lower bound for ``j`` in ``m+1..m+n``.

    ``z`` must be ordered by distance from ``z[0]``. The report's ``lhs`` and
    ``rhs`` are ``|sum b_i z_i^j|`` and the bound at the ``j`` where their
    ratio is largest; the theorem asserts this ratio is at least 1.

    Raises
    ------
    HypothesisViolated
        If an assumption of the theorem fails.
    """
    n = len(z)
    if n == 0 or len(b) != n:
        raise HypothesisViolated("lengths", "z and b must be nonempty and of equal length")
    if m < 0:
        raise HypothesisViolated("m >= 0")
    with mpmath.workdps(dps):
        zs = [mpmath.mpc(x) for x in z]
        bs = [mpmath.mpc(x) for x in b]
        d1, d2 = mpmath.mpf(delta1), mpmath.mpf(delta2)
        if zs[0] == 0:
            raise HypothesisViolated("z1 != 0")
        if not (0 < d2 < d1 < mpmath.mpf(n) / (m + n + 1)):
            raise HypothesisViolated("0 < delta2 < delta1 < n/(m+n+1)")
        dist = [abs(zs[0] - x) for x in zs]
        if any(dist[i] > dist[i + 1] for i in range(1, n - 1)):
            raise HypothesisViolated("ordering", "z must be sorted by distance from z1")
        r1 = abs(zs[0])
        h = max(i + 1 for i in range(n) if dist[i] < r1 * d2)
        if h < n and not dist[h] > r1 * d1:
            raise HypothesisViolated("gap", "|z1 - z_(h+1)| > |z1| delta1 fails")
        coef = 2 * ((d1 - d2) / (12 * mpmath.e)) ** n * abs(mpmath.fsum(bs[:h]))
        best = None
        for j in range(m + 1, m + n + 1):
            s = abs(mpmath.fsum(bb * zz**j for bb, zz in zip(bs, zs)))
            bound = coef * r1**j
            ratio = mpmath.inf if bound == 0 else s / bound
            if best is None or ratio > best[0]:
                best = (ratio, j, s, bound)
        ratio, j, s, bound = best
        inputs = {"n": n, "m": m, "delta1": float(d1), "delta2": float(d2), "h": h}
        verdict = "certified" if ratio >= 1 else "violated"
        return LemmaReport("turan", inputs, "holds", float(s), float(bound), verdict, {"j": j})


def power_sum_delta(eps, M: int) -> float:
    """A ``delta`` small enough for the power-sum lemma, from its proof.

    With ``eps0 = min(1/3, eps/2^(M+2))`` the proof needs
    ``delta < 2 ((eps0/2^(2M+2)) / (12 e))^(2M)``.
    """
    eps0 = min(1 / 3, float(eps) / 2 ** (M + 2))
    with mpmath.workdps(30):
        return float(2 * ((mpmath.mpf(eps0) / 2 ** (2 * M + 2)) / (12 * mpmath.e)) ** (2 * M))


def power_sum_multiset_check(U, W, M: int, delta, eps, dps: int = 60) -> LemmaReport:
    """Evaluate the power-sum lemma on two multisets.

    If ``|sum u^j - sum w^j| <= delta`` for ``j = 1..2M`` and ``delta`` is below
    :func:`power_sum_delta`, both conclusions (equal sizes, product ratio
    within ``eps`` of 1) are asserted. Otherwise the report records why no
    assertion is made.
    """
    inputs = {"M": M, "delta": str(delta), "eps": str(eps), "sizes": [len(U), len(W)]}
    if len(U) > M or len(W) > M:
        return LemmaReport("power-sum", inputs, "fails: |U|, |W| <= M", math.nan, math.nan, "hypotheses_fail")
    with mpmath.workdps(dps):
        us = [mpmath.mpc(x) for x in U]
        ws = [mpmath.mpc(x) for x in W]
        if any(abs(x) < 1 for x in us + ws):
            return LemmaReport("power-sum", inputs, "fails: moduli >= 1", math.nan, math.nan, "hypotheses_fail")
        gaps = [abs(mpmath.fsum(u**j for u in us) - mpmath.fsum(w**j for w in ws)) for j in range(1, 2 * M + 1)]
        gap = max(gaps) if gaps else mpmath.mpf(0)
        if gap > mpmath.mpf(delta):
            return LemmaReport("power-sum", inputs, "fails: power sums differ by more than delta",
                               float(gap), float(delta), "hypotheses_fail")
        if float(delta) > power_sum_delta(eps, M):
            return LemmaReport("power-sum", inputs, "holds outside the guaranteed delta regime",
                               float(gap), float(delta), "vacuous",
                               {"delta_lemma": power_sum_delta(eps, M)})
        same_size = len(us) == len(ws)
        pu = mpmath.fprod(us) if us else mpmath.mpf(1)
        pw = mpmath.fprod(ws) if ws else mpmath.mpf(1)
        dev = abs(1 - pu / pw)
        ok = same_size and dev <= mpmath.mpf(eps)
        return LemmaReport("power-sum", inputs, "holds", float(dev), float(eps),
                           "certified" if ok else "violated", {"same_size": same_size})
