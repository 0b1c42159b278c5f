"""Value-and-derivative vectors of digit sums along a curve.

For a rational map ``R`` and a point ``lam``, the vector ``B(n)`` collects the
value and the first ``K-1`` derivatives at ``lam`` of

    A(n)(X) = sum_{k<n} (a_{xi_k} + b_{xi_k} R(X)) X^k.

Since ``A(n)(X) = T_{xi_0}(1, R(X)) + X * A~(X)`` with ``A~`` built from the
shifted digits, ``B(n) = Theta(lam, K) B~ + v_{xi_0}`` where ``Theta`` is lower
bidiagonal with ``lam`` on the diagonal and ``1, 2, ..., K-1`` below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._levels import DEFAULT_LIMITS, LevelEngine, Limits
from .errors import LemmaViolation, PoleError
from .exactnum import (
    AlgebraicNumber,
    IntPolynomial,
    NumberFieldElement,
    RationalMap,
    as_fraction,
    eval_poly,
    format_fraction,
    map_derivatives,
    vanishing_order,
)
from .selfsim import DigitPair


def _is_zero(x) -> bool:
    return x.is_zero if isinstance(x, NumberFieldElement) else x == 0


def _json_scalar(x):
    return x.to_json() if isinstance(x, NumberFieldElement) else format_fraction(x)


@dataclass(frozen=True)
class DerivMatrix:
    """Square matrix with exact entries, stored as a tuple of rows."""

    rows: tuple

    @property
    def size(self) -> int:
        return len(self.rows)

    def __matmul__(self, vec):
        out = []
        for row in self.rows:
            acc = vec[0] * 0
            for a, x in zip(row, vec):
                if not _is_zero(a):
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def to_json(self):
        return [[_json_scalar(x) for x in row] for row in self.rows]


def _point(lam):
    if isinstance(lam, AlgebraicNumber):
        return lam.as_fraction() if lam.is_rational else lam.element()
    if isinstance(lam, NumberFieldElement):
        return lam
    return as_fraction(lam)


def theta(lam, K: int) -> DerivMatrix:
    """Lower bidiagonal ``K x K`` matrix: ``lam`` on the diagonal, ``1..K-1`` below."""
    if K < 1:
        raise ValueError("K must be at least 1")
    x = _point(lam)
    zero = x * 0
    rows = []
    for i in range(K):
        row = [zero] * K
        row[i] = x
        if i:
            row[i - 1] = zero + i
        rows.append(tuple(row))
    return DerivMatrix(tuple(rows))


@dataclass(frozen=True)
class DerivSystem:
    """Rational map, evaluation point, derivative count, forms and weights."""

    R: RationalMap
    lam: object
    K: int
    forms: tuple = ((0, 0), (1, 0), (0, 1))
    weights: tuple = (Fraction(1, 3),) * 3

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be at least 1")
        object.__setattr__(self, "forms", tuple((int(a), int(b)) for a, b in self.forms))
        object.__setattr__(self, "weights", tuple(as_fraction(p) for p in self.weights))
        if len(set(self.forms)) != len(self.forms) or sum(self.weights) != 1:
            raise ValueError("forms must be distinct and weights must sum to 1")
        d = eval_poly(self.R.den, self.point)
        if _is_zero(d):
            raise PoleError("lam is a pole of R")

    @property
    def point(self):
        return _point(self.lam)

    @property
    def m(self) -> int:
        return len(self.forms)


def _map_derivs(sys: DerivSystem):
    return map_derivatives(sys.R, sys.point, sys.K)


def translation_vector(sys: DerivSystem, j: int):
    """``(a_j + b_j R(lam), b_j R'(lam), ..., b_j R^(K-1)(lam))``."""
    d = _map_derivs(sys)
    a, b = sys.forms[j]
    return tuple([d[0] * b + a] + [x * b for x in d[1:]])


def _direct(sys: DerivSystem, digits):
    q = DigitPair.from_digits(sys.forms, digits)
    num = q.P1 * sys.R.den + q.P2 * sys.R.num
    bound = max(num.height, sys.R.den.height, 1)
    return tuple(map_derivatives(RationalMap(num, sys.R.den, bound), sys.point, sys.K))


def b_state_recursive(sys: DerivSystem, digits):
    th = theta(sys.lam, sys.K)
    vs = [translation_vector(sys, j) for j in range(sys.m)]
    zero = sys.point * 0
    B = tuple([zero] * sys.K)
    for j in reversed(list(digits)):
        B = tuple(x + y for x, y in zip(th @ B, vs[j]))
    return B


def b_state(sys: DerivSystem, digits):
    """The derivative vector of a digit string, by recursion and directly.

    Raises
    ------
    LemmaViolation
        If the two computations disagree (they are exact, so they never
        should).
    """
    digits = list(digits)
    rec = b_state_recursive(sys, digits)
    if not digits:
        return rec
    direct = _direct(sys, digits)
    if rec != direct:
        raise LemmaViolation(f"recursion {rec} differs from direct differentiation {direct}")
    return rec


def _coords(x):
    return x.coeffs if isinstance(x, NumberFieldElement) else (x,)


def _deriv_vectors(sys: DerivSystem, n: int):
    vectors = []
    R = sys.R
    for k in range(n):
        row = []
        for a, b in sys.forms:
            num = (R.den * a + R.num * b).shift(k)
            bound = max(num.height, R.den.height, 1)
            d = map_derivatives(RationalMap(num, R.den, bound), sys.point, sys.K)
            row.append(tuple(c for x in d for c in _coords(x)))
        vectors.append(row)
    return vectors


def deriv_entropies(sys: DerivSystem, n: int, limits: Limits = DEFAULT_LIMITS):
    """``[H(B(1)), ..., H(B(n))]``."""
    eng = LevelEngine(_deriv_vectors(sys, n), sys.weights, limits)
    return [lv.entropy() for lv in eng.run()]


def deriv_entropy(sys: DerivSystem, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """Entropy of ``B(n)``: strings merge iff all K derivatives agree at lam."""
    return deriv_entropies(sys, n, limits)[-1]


def deriv_entropy_rate_upper(sys: DerivSystem, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    hs = deriv_entropies(sys, n, limits)
    return min(h / (k + 1) for k, h in enumerate(hs))


def deriv_dim_upper(sys: DerivSystem, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """Rate bound divided by ``log(1/lam)``; an upper bound, not a dimension."""
    lam = float(sys.lam) if not isinstance(sys.lam, NumberFieldElement) else None
    if lam is None or not 0 < lam < 1:
        raise ValueError("a real lam in (0, 1) is required")
    return deriv_entropy_rate_upper(sys, n, limits) / -math.log(lam)


def vanishing_collision(sys: DerivSystem, q: DigitPair) -> bool:
    """Whether ``q.P1*den + q.P2*num`` vanishes to order >= K at lam."""
    F = q.P1 * sys.R.den + q.P2 * sys.R.num
    if F.is_zero:
        return True
    eta = sys.lam if isinstance(sys.lam, AlgebraicNumber) else AlgebraicNumber.rational(sys.lam)
    return vanishing_order(F, eta) >= sys.K


# ---------------------------------------------------------------------------
# vanishing to high order forces a small X-adic value


def multiplicity_threshold(eps, N: int, l: int) -> int:
    """A K beyond which the multiplicity lemma's hypothesis forces its conclusion.

    With ``F = X^-n (P1*den + P2*num)`` and ``|f_j| <= 2 N l^2 (j+1)``, Jensen's
    formula on the disk of radius ``1 - eps/2`` bounds the number of zeros in
    ``|z| <= 1 - eps`` by ``log(8 N l^2 / eps^2) / log((1 - eps/2)/(1 - eps))``.
    A zero of order ``K - 1`` above this count is impossible unless the first
    ``N`` coefficients vanish.
    """
    eps = float(eps)
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    count = math.log(8 * N * l * l / eps**2) / math.log((1 - eps / 2) / (1 - eps))
    return math.floor(count) + 2


def multiplicity_lemma_check(P1: IntPolynomial, P2: IntPolynomial, R: RationalMap, lam,
                             eps, N: int, l: int):
    """Evaluate the multiplicity lemma on one instance.

    Returns a :class:`garsia.dioph.LemmaReport`. When the hypotheses hold and
    the first ``N`` coefficients of ``P1 + P2 R`` are not all zero, the report's
    verdict is ``"violated"``.
    """
    from .dioph import LemmaReport
    from .exactnum import series_prefix

    lamq = as_fraction(lam) if not isinstance(lam, AlgebraicNumber) else lam
    x = float(lamq)
    K = multiplicity_threshold(eps, N, l)
    F = P1 * R.den + P2 * R.num
    order = math.inf if F.is_zero else vanishing_order(
        F, lamq if isinstance(lamq, AlgebraicNumber) else AlgebraicNumber.rational(lamq))
    inputs = {"P1": P1.to_json(), "P2": P2.to_json(), "R": R.to_json(), "eps": str(eps), "N": N, "l": l}
    clauses = []
    if not float(eps) < x < 1 - float(eps):
        clauses.append("lam outside (eps, 1-eps)")
    if max(P1.height, P2.height, R.coeff_bound) > l:
        clauses.append("coefficients exceed l")
    if order < K - 1:
        clauses.append("vanishing order below K-1")
    prefix = series_prefix(RationalMap(F, R.den, max(F.height, R.den.height, 1)), N)
    small = all(c == 0 for c in prefix)
    status = "holds" if not clauses else "fails: " + "; ".join(clauses)
    if clauses:
        verdict = "vacuous"
    else:
        verdict = "certified" if small else "violated"
    return LemmaReport("multiplicity", inputs, status, float(order), float(K - 1), verdict)
