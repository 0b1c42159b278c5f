"""Digit-sum laws of the two-parameter self-similar systems.

The maps are ``f_j(x) = lam*x + a_j + b_j*tau``. The level-n digit sum is

    A(n) = sum_{k<n} (a_{xi_k} + b_{xi_k} tau) lam^k

for i.i.d. digits with law ``p``. Two digit strings give the same value iff
their difference ``P1(X) Y1 + P2(X) Y2`` vanishes at ``(lam, 1, tau)``, and
this is decided exactly according to how each parameter is given: as a
rational, as an algebraic number (arithmetic in its number field), or as a
formal symbol that satisfies no algebraic relation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ._levels import DEFAULT_LIMITS, LevelEngine, Limits, check_strings
from .errors import GuardrailExceeded
from .exactnum import (
    AlgebraicNumber,
    IntPolynomial,
    NumberField,
    NumberFieldElement,
    RationalMap,
    as_fraction,
    eval_poly,
    format_fraction,
)
from .measures import DiscreteDistribution, shannon_entropy


@dataclass(frozen=True)
class Symbolic:
    """A transcendental parameter: no algebraic relation holds for it."""

    name: str = "t"


Parameter = Union[Fraction, AlgebraicNumber, NumberFieldElement, Symbolic]


@dataclass(frozen=True)
class DigitPair:
    """The value ``P1(lam) + tau * P2(lam)``, also read as ``P1 Y1 + P2 Y2``."""

    P1: IntPolynomial
    P2: IntPolynomial

    @classmethod
    def from_digits(cls, forms, digits) -> DigitPair:
        P1 = IntPolynomial(tuple(forms[j][0] for j in digits))
        P2 = IntPolynomial(tuple(forms[j][1] for j in digits))
        return cls(P1, P2)

    def __sub__(self, other):
        return DigitPair(self.P1 - other.P1, self.P2 - other.P2)

    def __add__(self, other):
        return DigitPair(self.P1 + other.P1, self.P2 + other.P2)

    def __neg__(self):
        return DigitPair(-self.P1, -self.P2)

    @property
    def is_zero(self) -> bool:
        return self.P1.is_zero and self.P2.is_zero

    def evaluate(self, lam, tau):
        return eval_poly(self.P1, lam) + tau * eval_poly(self.P2, lam)

    def l1(self) -> int:
        return self.P1.l1 + self.P2.l1

    def normalized(self) -> DigitPair:
        """Flip the sign so the first nonzero coefficient of P1 (else P2) is positive."""
        for c in self.P1.coeffs + self.P2.coeffs:
            if c:
                return self if c > 0 else -self
        return self

    def cross(self, other: DigitPair) -> IntPolynomial:
        """``P1 * P2' - P2 * P1'``."""
        return self.P1 * other.P2 - self.P2 * other.P1

    def to_json(self):
        return {"P1": self.P1.to_json(), "P2": self.P2.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(IntPolynomial.from_json(data["P1"]), IntPolynomial.from_json(data["P2"]))


@dataclass(frozen=True)
class IfsSpec:
    """Forms ``(a_j, b_j)``, weights ``p_j`` and the parameters ``lam``, ``tau``."""

    forms: tuple
    weights: tuple
    lam: object
    tau: object

    def __post_init__(self):
        forms = tuple((int(a), int(b)) for a, b in self.forms)
        if len(set(forms)) != len(forms):
            raise ValueError("forms must be pairwise distinct")
        weights = tuple(as_fraction(p) for p in self.weights)
        if len(weights) != len(forms):
            raise ValueError("one weight per form is required")
        if any(p <= 0 for p in weights) or sum(weights) != 1:
            raise ValueError("weights must be positive and sum to 1")
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "lam", _coerce_param(self.lam))
        object.__setattr__(self, "tau", _coerce_param(self.tau))

    @classmethod
    def uniform(cls, forms, lam, tau) -> IfsSpec:
        m = len(forms)
        return cls(tuple(forms), (Fraction(1, m),) * m, lam, tau)

    @property
    def m(self) -> int:
        return len(self.forms)

    @property
    def L(self) -> int:
        a = [f[0] for f in self.forms]
        b = [f[1] for f in self.forms]
        return max(max(a) - min(a), max(b) - min(b))

    def with_params(self, lam, tau) -> IfsSpec:
        return IfsSpec(self.forms, self.weights, lam, tau)

    def entropy_of_weights(self) -> float:
        return shannon_entropy(DiscreteDistribution(dict(enumerate(self.weights))))

    def to_json(self):
        return {
            "forms": [list(f) for f in self.forms],
            "weights": [format_fraction(p) for p in self.weights],
            "lambda": param_to_json(self.lam),
            "tau": param_to_json(self.tau),
        }

    @classmethod
    def from_json(cls, data) -> IfsSpec:
        lam = param_from_json(data["lambda"])
        tau = param_from_json(data["tau"], lam)
        return cls(tuple(tuple(f) for f in data["forms"]), tuple(data["weights"]), lam, tau)


STANDARD_FORMS = ((0, 0), (1, 0), (0, 1))
BERNOULLI_FORMS = ((0, 0), (1, 0))


def _coerce_param(x):
    if isinstance(x, (Symbolic, NumberFieldElement)):
        return x
    if isinstance(x, AlgebraicNumber):
        return x.as_fraction() if x.is_rational else x
    return as_fraction(x)


def param_to_json(x):
    if isinstance(x, Symbolic):
        return {"symbolic": x.name}
    if isinstance(x, Fraction):
        return {"rational": format_fraction(x)}
    if isinstance(x, AlgebraicNumber):
        return {"algebraic": x.to_json()}
    if isinstance(x, NumberFieldElement):
        return {"field_element": x.to_json(), "modulus": x.field.modulus.to_json()}
    raise TypeError(f"unsupported parameter {x!r}")


def param_from_json(data, lam=None):
    if "symbolic" in data:
        return Symbolic(str(data["symbolic"]))
    if "rational" in data:
        return as_fraction(data["rational"])
    if "algebraic" in data:
        return AlgebraicNumber.from_json(data["algebraic"])
    if "field_element" in data:
        if isinstance(lam, AlgebraicNumber):
            field = lam.field
        elif "modulus" in data:
            field = NumberField(IntPolynomial.from_json(data["modulus"]))
        else:
            raise ValueError("a field element needs an algebraic lambda or an explicit modulus")
        return field.element([as_fraction(c) for c in data["field_element"]])
    raise ValueError(f"unrecognized parameter {data!r}")


# ---------------------------------------------------------------------------
# parameter modes and key vectors


@dataclass(frozen=True)
class _Mode:
    """Resolved parameters: field elements or None for a symbol."""

    field: NumberField
    lam: object
    tau: object

    def coords(self, x):
        if isinstance(x, NumberFieldElement):
            return x.coeffs
        return self.field.const(x).coeffs

    def value(self, coords):
        el = self.field.element(coords)
        return el.coeffs[0] if self.field.is_rationals else el


def _resolve(lam, tau) -> _Mode:
    Q = NumberField.rationals()
    field = Q
    lam_el = tau_el = None

    def field_of(x):
        if isinstance(x, AlgebraicNumber):
            return x.field
        if isinstance(x, NumberFieldElement):
            return x.field
        return None

    fl, ft = field_of(lam), field_of(tau)
    if fl is not None and ft is not None and fl != ft:
        raise ValueError("lambda and tau lie in different number fields")
    if isinstance(lam, AlgebraicNumber) and isinstance(tau, AlgebraicNumber) and lam != tau:
        raise ValueError("two distinct algebraic parameters need tau given as a field element of Q(lambda)")
    field = fl or ft or Q
    if not isinstance(lam, Symbolic):
        lam_el = lam.element() if isinstance(lam, AlgebraicNumber) else (
            lam if isinstance(lam, NumberFieldElement) else field.const(lam))
    if not isinstance(tau, Symbolic):
        tau_el = tau.element() if isinstance(tau, AlgebraicNumber) else (
            tau if isinstance(tau, NumberFieldElement) else field.const(tau))
    return _Mode(field, lam_el, tau_el)


def _digit_vectors(forms, mode: _Mode, n: int):
    """Key vectors ``V[k][j]`` for the point system of the given mode."""
    F = mode.field
    vectors = []
    if mode.lam is not None:
        power = F.one()
        for _ in range(n):
            row = []
            for a, b in forms:
                if mode.tau is not None:
                    row.append(mode.coords(power * a + mode.tau * power * b))
                else:
                    row.append(mode.coords(power * a) + mode.coords(power * b))
            vectors.append(row)
            power = power * mode.lam
        return vectors
    # lam symbolic: the value is a polynomial in lam, compared coefficientwise
    if mode.tau is not None:
        blocks = [mode.coords(F.const(a) + mode.tau * b) for a, b in forms]
    else:
        blocks = [(Fraction(a), Fraction(b)) for a, b in forms]
    width = len(blocks[0])
    for k in range(n):
        row = []
        for blk in blocks:
            v = [Fraction(0)] * (width * n)
            v[k * width:(k + 1) * width] = blk
            row.append(tuple(v))
        vectors.append(row)
    return vectors


def _decoder(mode: _Mode, n: int, forms):
    d = mode.field.degree
    if mode.lam is not None and mode.tau is not None:
        return lambda c: mode.value(c)
    if mode.lam is not None:
        return lambda c: (mode.value(c[:d]), mode.value(c[d:]))
    if mode.tau is not None:
        return lambda c: tuple(mode.value(c[k * d:(k + 1) * d]) for k in range(n))
    return lambda c: DigitPair(IntPolynomial(tuple(int(x) for x in c[0::2])),
                               IntPolynomial(tuple(int(x) for x in c[1::2])))


def _engine(spec: IfsSpec, n: int, limits: Limits) -> tuple:
    mode = _resolve(spec.lam, spec.tau)
    return LevelEngine(_digit_vectors(spec.forms, mode, n), spec.weights, limits), mode


# ---------------------------------------------------------------------------
# laws and entropies


def enumerate_level(spec: IfsSpec, n: int, limits: Limits = DEFAULT_LIMITS) -> DiscreteDistribution:
    """Law of the level-n digit sum, one atom per collision class.

    Atom values are exact: a Fraction or number-field element when both
    parameters are exact, a pair ``(P1(lam), P2(lam))`` when ``tau`` is
    symbolic, the coefficient tuple in ``lam`` when ``lam`` is symbolic, and a
    :class:`DigitPair` when both are symbolic.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    eng, mode = _engine(spec, n, limits)
    level = None
    for level in eng.run(keep_keys=True):
        pass
    dec = _decoder(mode, n, spec.forms)
    coords = eng.decode(level)
    return DiscreteDistribution({dec(c): Fraction(int(w), level.denominator)
                                 for c, w in zip(coords, level.weights)})


def garsia_entropies(spec: IfsSpec, n: int, limits: Limits = DEFAULT_LIMITS):
    """``[H(A(1)), ..., H(A(n))]`` from one enumeration pass."""
    eng, _ = _engine(spec, n, limits)
    return [lv.entropy() for lv in eng.run()]


def garsia_entropy(spec: IfsSpec, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """Shannon entropy (nats) of the level-n digit sum."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return garsia_entropies(spec, n, limits)[-1]


def entropy_rate_upper(spec: IfsSpec, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """``min_{k<=n} H(A(k))/k``, an upper bound for the entropy rate."""
    hs = garsia_entropies(spec, n, limits)
    return min(h / (k + 1) for k, h in enumerate(hs))


# ---------------------------------------------------------------------------
# overlaps


def _all_strings(m, n, limits):
    check_strings(m, n, limits)
    if m**n * n > limits.atom_limit:
        raise GuardrailExceeded(f"explicit enumeration of {m}^{n} strings exceeds the atom limit")
    return itertools.product(range(m), repeat=n)


def _collision_groups(eng: LevelEngine, n: int, limits: Limits):
    groups = {}
    for digits in _all_strings(eng.m, n, limits):
        key = tuple(sum(col) for col in zip(*(eng.ivec[k][j] for k, j in enumerate(digits))))
        groups.setdefault(key, []).append(digits)
    return [g for g in groups.values() if len(g) > 1]


def _best_witness(forms, groups):
    best = None
    for g in groups:
        reps = [DigitPair.from_digits(forms, d) for d in g]
        for a, b in itertools.combinations(reps, 2):
            q = (a - b).normalized()
            rank = (q.l1(), q.P1.coeffs, q.P2.coeffs)
            if best is None or rank < best[0]:
                best = (rank, q)
    return best[1]


def find_overlap(spec: IfsSpec, n_max: int, limits: Limits = DEFAULT_LIMITS):
    """Smallest level with an exact overlap, and a canonical witness.

    Returns
    -------
    tuple or None
        ``(n, Q)`` with ``Q`` a :class:`DigitPair` in normalized sign and of
        minimal coefficient l1-norm among the level-n collisions, or None when
        the first ``n_max`` levels are free.
    """
    mode = _resolve(spec.lam, spec.tau)
    if mode.lam is None and mode.tau is None:
        return None
    if mode.lam is None:
        # a polynomial identity in a free lam holds coefficientwise, so any
        # overlap already shows up among single digits
        n_max = min(n_max, 1)
    if n_max < 1:
        return None
    eng = LevelEngine(_digit_vectors(spec.forms, mode, n_max), spec.weights, limits)
    for level in eng.run():
        if level.count < spec.m**level.k:
            groups = _collision_groups(eng, level.k, limits)
            return level.k, _best_witness(spec.forms, groups)
    return None


def xn_membership(spec: IfsSpec, n: int, limits: Limits = DEFAULT_LIMITS):
    """Two independent vanishing relations at level n, if they exist.

    Returns ``(Q, Q2)`` with ``Q(eta,1,sigma) = Q2(eta,1,sigma) = 0``,
    ``Q.P2(eta) != 0`` and ``Q.cross(Q2) != 0``; None otherwise. Both
    parameters must be exact.
    """
    mode = _resolve(spec.lam, spec.tau)
    if mode.lam is None or mode.tau is None:
        raise ValueError("membership needs exact eta and sigma")
    eng = LevelEngine(_digit_vectors(spec.forms, mode, n), spec.weights, limits)
    gens = []
    for g in _collision_groups(eng, n, limits):
        base = DigitPair.from_digits(spec.forms, g[0])
        gens += [DigitPair.from_digits(spec.forms, d) - base for d in g[1:]]
    # the vanishing relations form the span of these generators; if any
    # admissible pair exists, one exists with the first member a generator
    eta = mode.lam
    first = None
    for q in gens:
        v = eval_poly(q.P2, eta)
        if not (v == 0 or (isinstance(v, NumberFieldElement) and v.is_zero)):
            first = q
            break
    if first is None:
        return None
    for q in gens:
        if not first.cross(q).is_zero:
            return first.normalized(), q.normalized()
    return None


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class NonDegenerate:
    """The graph ``tau = R(lam)``."""

    R: RationalMap


@dataclass(frozen=True)
class Degenerate:
    """The vertical line ``lam = lam0``, with ``tau`` outside ``Q(lam0)``."""

    lam0: object

    def __post_init__(self):
        lam0 = _coerce_param(self.lam0)
        if isinstance(lam0, Fraction) and not 0 < lam0 < 1:
            raise ValueError("lam0 must lie in (0, 1)")
        object.__setattr__(self, "lam0", lam0)


CurveSpec = Union[NonDegenerate, Degenerate]


def curve_vectors(forms, R: RationalMap, n: int):
    """Key vectors for ``P1*den(R) + P2*num(R)`` as integer coefficient arrays."""
    num, den = R.num, R.den
    width = n + max(num.degree, den.degree, 0)
    vectors = []
    for k in range(n):
        row = []
        for a, b in forms:
            poly = (den * a + num * b).shift(k)
            row.append(tuple(poly[i] for i in range(width)))
        vectors.append(row)
    return vectors


def curve_entropies(spec: IfsSpec, curve: CurveSpec, n: int, limits: Limits = DEFAULT_LIMITS):
    if isinstance(curve, NonDegenerate):
        eng = LevelEngine(curve_vectors(spec.forms, curve.R, n), spec.weights, limits)
    else:
        return garsia_entropies(spec.with_params(curve.lam0, Symbolic("tau")), n, limits)
    return [lv.entropy() for lv in eng.run()]


def curve_entropy(spec: IfsSpec, curve: CurveSpec, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """Entropy of the level-n digit sum along a curve.

    Only the forms and weights of ``spec`` are used. On a graph ``tau = R(lam)``
    two strings collide iff ``dP1*den(R) + dP2*num(R)`` is the zero
    polynomial; on a vertical line they collide iff both ``dP1`` and ``dP2``
    vanish at ``lam0``.
    """
    return curve_entropies(spec, curve, n, limits)[-1]


# ---------------------------------------------------------------------------
# restricted measures and dimensions


def restricted_measure(spec: IfsSpec, I, limits: Limits = DEFAULT_LIMITS) -> DiscreteDistribution:
    """Law of ``sum_{j in I} T_{xi_j}(1, tau) lam^j`` for exact parameters."""
    mode = _resolve(spec.lam, spec.tau)
    if mode.lam is None or mode.tau is None:
        raise ValueError("restricted measures need exact parameters")
    I = sorted(set(int(i) for i in I))
    if not I:
        return DiscreteDistribution.delta(mode.value(mode.field.zero().coeffs))
    if I[0] < 0:
        raise ValueError("positions must be nonnegative")
    vectors = []
    for i in I:
        power = mode.lam ** i
        vectors.append([mode.coords(power * a + mode.tau * power * b) for a, b in spec.forms])
    eng = LevelEngine(vectors, spec.weights, limits)
    level = None
    for level in eng.run(keep_keys=True):
        pass
    return DiscreteDistribution({mode.value(c): Fraction(int(w), level.denominator)
                                 for c, w in zip(eng.decode(level), level.weights)})


def _lam_float(lam) -> float:
    if isinstance(lam, Fraction):
        x = float(lam)
    elif isinstance(lam, AlgebraicNumber) and lam.real:
        x = float(lam)
    else:
        raise ValueError("a numeric lambda in (0, 1) is required")
    if not 0 < x < 1:
        raise ValueError("lambda must lie in (0, 1)")
    return x


def dim_upper_bound(spec: IfsSpec, n: int, limits: Limits = DEFAULT_LIMITS) -> float:
    """``min(1, H(A(n)) / (n log(1/lam)))``."""
    lam = _lam_float(spec.lam)
    return min(1.0, garsia_entropy(spec, n, limits) / (n * -math.log(lam)))


def similarity_dimension(spec: IfsSpec, uncapped: bool = False) -> float:
    """``H(p) / log(1/lam)``, capped at 1 unless ``uncapped``."""
    lam = _lam_float(spec.lam)
    s = spec.entropy_of_weights() / -math.log(lam)
    return s if uncapped else min(1.0, s)
