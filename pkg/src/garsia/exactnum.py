"""Exact arithmetic substrate.

Integer polynomials, rationals (``fractions.Fraction``), number fields given by a
minimal polynomial, algebraic numbers with isolating boxes, and the
bounded-coefficient rational maps that parametrize curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational as _RationalABC

from .errors import NotPowerSeries, PoleError

Rational = Fraction


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_fraction(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# integer polynomials


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, ascending by degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        cs = _strip(int(c) for c in self.coeffs)
        for c, orig in zip(cs, self.coeffs):
            if c != orig:
                raise ValueError("IntPolynomial coefficients must be integers")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_roots_rational(cls, *roots):
        """Primitive integer polynomial with the given rational roots."""
        p = cls((1,))
        for r in roots:
            r = as_fraction(r)
            p = p * cls((-r.numerator, r.denominator))
        return p

    @classmethod
    def monomial(cls, k, c=1):
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def height(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    @property
    def l1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    @property
    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero:
            return self
        g = self.content
        if self.leading < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def in_P(self, l: int, n: int) -> bool:
        """Membership in the set of polynomials of degree < n with |coeffs| <= l."""
        return self.degree < n and self.height <= l

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        other = _as_intpoly(other)
        n = max(len(self), len(other))
        return IntPolynomial(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_intpoly(other))

    def __rsub__(self, other):
        return _as_intpoly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        other = _as_intpoly(other)
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by X**k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        return eval_poly(self, x)

    def divmod_q(self, other: IntPolynomial):
        """Division with remainder over Q; returns lists of Fractions."""
        return qdivmod(list(map(Fraction, self.coeffs)), list(map(Fraction, other.coeffs)))

    def exact_div(self, other: IntPolynomial):
        """Quotient in Z[X] if ``other`` divides ``self`` over Z, else None."""
        q, r = self.divmod_q(other)
        if r or any(c.denominator != 1 for c in q):
            return None
        return IntPolynomial(tuple(int(c) for c in q))

    def to_json(self):
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data):
        return cls(tuple(int(c) for c in data))

    def __repr__(self):
        if self.is_zero:
            return "IntPolynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*X" + (f"^{k}" if k > 1 else ""))
        return "IntPolynomial(" + " + ".join(terms) + ")"


def _as_intpoly(p):
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial((p,))
    return IntPolynomial(tuple(p))


X = IntPolynomial((0, 1))


def eval_poly(P, x):
    """Horner evaluation; exact for Fractions and number-field elements."""
    coeffs = P.coeffs if isinstance(P, IntPolynomial) else tuple(P)
    if isinstance(x, (int, str)):
        x = as_fraction(x)
    if not coeffs:
        return x * 0
    acc = x * 0 + coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# dense polynomials over Q as lists of Fractions


def qtrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def qdivmod(a, b):
    a, b = qtrim(a), qtrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lead
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        r = qtrim(r[:-1]) if r[-1] == 0 else qtrim(r)
    return qtrim(q), r


def qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return qtrim(out)


def qderiv(a):
    return qtrim([k * c for k, c in enumerate(a)][1:])


def qmonic(a):
    a = qtrim(a)
    return [c / a[-1] for c in a] if a else []


def qgcd(a, b):
    a, b = qtrim(a), qtrim(b)
    while b:
        _, r = qdivmod(a, b)
        a, b = b, r
    return qmonic(a)


def qeval(a, x):
    acc = x * 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def to_intpoly(a) -> IntPolynomial:
    """Clear denominators of a rational polynomial and return its primitive part."""
    a = qtrim(a)
    if not a:
        return IntPolynomial()
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    return IntPolynomial(tuple(int(c * den) for c in a)).primitive()


def squarefree_decomposition(P: IntPolynomial):
    """Yun's algorithm: list of (primitive square-free factor, multiplicity).

    The product of ``factor**multiplicity`` equals ``P`` up to a constant.
    """
    if P.degree < 1:
        return []
    f = [Fraction(c) for c in P.coeffs]
    out = []
    a = qgcd(f, qderiv(f))
    b, _ = qdivmod(f, a)
    c, _ = qdivmod(qderiv(f), a)
    d = [x - y for x, y in _zip_pad(c, qderiv(b))]
    i = 1
    while len(qtrim(b)) > 1:
        g = qgcd(b, d)
        if len(g) > 1:
            out.append((to_intpoly(g), i))
        b, _ = qdivmod(b, g)
        c, _ = qdivmod(d, g)
        d = [x - y for x, y in _zip_pad(c, qderiv(b))]
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def sturm_count(P: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``P`` in the half-open interval (lo, hi]."""
    f = [Fraction(c) for c in P.coeffs]
    seq = [f, qderiv(f)]
    while qtrim(seq[-1]):
        _, r = qdivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(x):
        signs = [s for s in (_sign(qeval(p, x)) for p in seq) if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    return changes(lo) - changes(hi)


def _sign(x):
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# number fields


class NumberField:
    """The field Q[X]/(m) for an irreducible integer polynomial m.

    Irreducibility is assumed, not checked. ``NumberField.rationals()`` is Q
    itself, presented as Q[X]/(X).
    """

    def __init__(self, modulus: IntPolynomial):
        modulus = _as_intpoly(modulus).primitive()
        if modulus.degree < 1:
            raise ValueError("number field modulus must have positive degree")
        self.modulus = modulus
        self.degree = modulus.degree
        lead = Fraction(modulus.leading)
        # X^d = sum(_tail[i] X^i)
        self._tail = tuple(-Fraction(c) / lead for c in modulus.coeffs[:-1])

    @classmethod
    def rationals(cls):
        return _QQ

    @property
    def is_rationals(self):
        return self.degree == 1 and self.modulus.coeffs == (0, 1)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus))

    def __repr__(self):
        return f"NumberField({self.modulus!r})"

    def reduce(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        d = self.degree
        for k in range(len(c) - 1, d - 1, -1):
            top = c[k]
            if top:
                for i, t in enumerate(self._tail):
                    c[k - d + i] += top * t
            c.pop()
        c += [Fraction(0)] * (d - len(c))
        return tuple(c)

    def element(self, coeffs) -> NumberFieldElement:
        return NumberFieldElement(self, self.reduce(coeffs))

    def const(self, q) -> NumberFieldElement:
        return self.element([as_fraction(q)])

    def gen(self) -> NumberFieldElement:
        if self.is_rationals:
            raise ValueError("Q has no distinguished generator")
        return self.element([0, 1])

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def power_basis_vectors(self, x: NumberFieldElement, count: int):
        """Coordinate vectors of 1, x, ..., x^(count-1)."""
        out, acc = [], self.one()
        for _ in range(count):
            out.append(acc.coeffs)
            acc = acc * x
        return out


_QQ = NumberField(IntPolynomial((0, 1)))


class NumberFieldElement:
    """Element of a number field in the dense power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise ValueError("elements of different number fields")
            return other
        return self.field.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        return self.field.element(qmul(list(self.coeffs), list(other.coeffs)) or [0])

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid in Q[X] against the modulus
        m = [Fraction(c) for c in self.field.modulus.coeffs]
        a = qtrim(list(self.coeffs))
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while len(qtrim(r1)) > 1:
            q, r = qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, [x - y for x, y in _zip_pad(s0, qmul(q, s1))]
        c = qtrim(r1)[0]
        return self.field.element([x / c for x in s1] or [0])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        out = self.field.one()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return (
            isinstance(other, NumberFieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def to_json(self):
        return [format_fraction(c) for c in self.coeffs]

    def __repr__(self):
        return f"NumberFieldElement({[format_fraction(c) for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# algebraic numbers


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of ``min_poly`` isolated by a box with rational corners.

    ``box`` is ``((re_lo, re_hi), (im_lo, im_hi))``. For real numbers the
    imaginary range is ``(0, 0)`` and the real range is a half-open interval
    ``(lo, hi]`` containing exactly one real root.
    """

    min_poly: IntPolynomial
    box: tuple
    real: bool = True

    def __post_init__(self):
        object.__setattr__(self, "min_poly", _as_intpoly(self.min_poly).primitive())

    @classmethod
    def rational(cls, q) -> AlgebraicNumber:
        q = as_fraction(q)
        return cls(IntPolynomial((-q.numerator, q.denominator)), ((q, q), (Fraction(0), Fraction(0))), True)

    @classmethod
    def real_root(cls, min_poly, lo, hi) -> AlgebraicNumber:
        """The unique real root of ``min_poly`` in (lo, hi]."""
        P = _as_intpoly(min_poly).primitive()
        lo, hi = as_fraction(lo), as_fraction(hi)
        if P.degree == 1:
            r = Fraction(-P.coeffs[0], P.coeffs[1])
            if not lo < r <= hi:
                raise ValueError("no root in the given interval")
            return cls.rational(r)
        count = sturm_count(P, lo, hi)
        if count != 1:
            raise ValueError(f"interval contains {count} real roots, expected exactly one")
        return cls(P, ((lo, hi), (Fraction(0), Fraction(0))), True)

    @classmethod
    def from_root(cls, min_poly, approx, bits=64) -> AlgebraicNumber:
        """The root of ``min_poly`` nearest to the complex number ``approx``."""
        from ._rootfind import certified_roots

        P = _as_intpoly(min_poly).primitive()
        rs = certified_roots(P, precision=Fraction(1, 2**bits))
        best = min(rs.roots, key=lambda r: abs(complex(r.center) - complex(approx)))
        c, rad = best.center_exact, best.radius
        if abs(complex(best.center).imag) <= float(rad) and _is_real_root(P, c[0], rad):
            lo, hi = c[0] - rad - Fraction(1, 2**bits), c[0] + rad + Fraction(1, 2**bits)
            while sturm_count(P, lo, hi) != 1:
                lo, hi = lo - rad, hi + rad
            return cls.real_root(P, lo, hi)
        box = ((c[0] - rad, c[0] + rad), (c[1] - rad, c[1] + rad))
        return cls(P, box, False)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("algebraic number is not rational")
        return Fraction(-self.min_poly.coeffs[0], self.min_poly.coeffs[1])

    @cached_property
    def field(self) -> NumberField:
        if self.is_rational:
            return NumberField.rationals()
        return NumberField(self.min_poly)

    def element(self) -> NumberFieldElement:
        """This number as an element of its own field."""
        if self.is_rational:
            return self.field.const(self.as_fraction())
        return self.field.gen()

    def refine(self, width) -> AlgebraicNumber:
        """A copy whose box has side length at most ``width``."""
        width = as_fraction(width)
        if self.is_rational:
            return self
        if self.real:
            (lo, hi), _ = self.box
            P = self.min_poly
            while hi - lo > width:
                mid = (lo + hi) / 2
                if sturm_count(P, lo, mid) == 1:
                    hi = mid
                else:
                    lo = mid
            return AlgebraicNumber(P, ((lo, hi), (Fraction(0), Fraction(0))), True)
        bits = max(64, int(-math.log2(float(width))) + 8)
        (a, b), (c, d) = self.box
        z = complex(float((a + b) / 2), float((c + d) / 2))
        return AlgebraicNumber.from_root(self.min_poly, z, bits=bits)

    def approx(self, dps=30):
        """Centre of the isolating box as an mpmath number."""
        import mpmath

        (a, b), (c, d) = self.refine(Fraction(1, 10**dps)).box if not self.is_rational else self.box
        with mpmath.workdps(dps + 10):
            re = mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(b.numerator) / b.denominator
            im = mpmath.mpf(c.numerator) / c.denominator + mpmath.mpf(d.numerator) / d.denominator
            if self.real:
                return +(re / 2)
            return mpmath.mpc(re / 2, im / 2)

    def __float__(self):
        if not self.real:
            raise TypeError("complex algebraic number")
        return float(self.approx(20))

    def __complex__(self):
        return complex(self.approx(20))

    def contains(self, z) -> bool:
        z = complex(z)
        (a, b), (c, d) = self.box
        return float(a) <= z.real <= float(b) and float(c) <= z.imag <= float(d)

    def to_json(self):
        (a, b), (c, d) = self.box
        return {
            "min_poly": self.min_poly.to_json(),
            "box": [[format_fraction(a), format_fraction(b)], [format_fraction(c), format_fraction(d)]],
            "real": self.real,
        }

    @classmethod
    def from_json(cls, data):
        P = IntPolynomial.from_json(data["min_poly"])
        if "interval" in data:
            lo, hi = data["interval"]
            return cls.real_root(P, lo, hi)
        (a, b), (c, d) = data["box"]
        box = ((as_fraction(a), as_fraction(b)), (as_fraction(c), as_fraction(d)))
        return cls(P, box, bool(data.get("real", True)))


def _is_real_root(P, center_re, rad):
    lo, hi = center_re - 2 * rad - Fraction(1, 10**40), center_re + 2 * rad + Fraction(1, 10**40)
    return sturm_count(P, lo, hi) >= 1


# ---------------------------------------------------------------------------
# rational maps


@dataclass(frozen=True)
class RationalMap:
    """``num/den`` with integer polynomial numerator and denominator.

    ``coeff_bound`` is the bound L with both coefficient sequences in [-L, L];
    it defaults to the smallest such bound (at least 1).
    """

    num: IntPolynomial
    den: IntPolynomial = IntPolynomial((1,))
    coeff_bound: int = 0

    def __post_init__(self):
        num, den = _as_intpoly(self.num), _as_intpoly(self.den)
        if den.is_zero:
            raise ZeroDivisionError("rational map with zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        bound = max(num.height, den.height, 1)
        if not self.coeff_bound:
            object.__setattr__(self, "coeff_bound", bound)
        elif bound > self.coeff_bound:
            raise ValueError(f"coefficients exceed the bound L={self.coeff_bound}")

    @classmethod
    def constant(cls, c: int):
        return cls(IntPolynomial((c,)))

    @property
    def is_power_series(self) -> bool:
        return self.den[0] != 0

    def __call__(self, x):
        return eval_map(self, x)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json(), "L": self.coeff_bound}

    @classmethod
    def from_json(cls, data):
        return cls(IntPolynomial.from_json(data["num"]), IntPolynomial.from_json(data.get("den", [1])),
                   int(data.get("L", 0)))


def eval_map(R: RationalMap, x):
    """Exact value of ``R`` at a rational or algebraic point.

    Rational points give a Fraction; algebraic points give an element of the
    point's number field. Raises PoleError at zeros of the denominator.
    """
    if isinstance(x, AlgebraicNumber):
        x = x.as_fraction() if x.is_rational else x.element()
    elif isinstance(x, (int, str)):
        x = as_fraction(x)
    d = eval_poly(R.den, x)
    if d == 0 or (isinstance(d, NumberFieldElement) and d.is_zero):
        raise PoleError(f"{x!r} is a zero of the denominator")
    return eval_poly(R.num, x) / d


def series_prefix(R: RationalMap, n: int):
    """First ``n`` coefficients of the power series expansion of ``R``."""
    if not R.is_power_series:
        raise NotPowerSeries("denominator vanishes at 0")
    num = [Fraction(c) for c in R.num.coeffs]
    den = [Fraction(c) for c in R.den.coeffs]
    d0 = den[0]
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc / d0)
    return out


def taylor_shift(coeffs, x, K):
    """Taylor coefficients ``P^(a)(x)/a!`` for ``a < K`` of a polynomial at ``x``."""
    out = []
    cur = list(coeffs)
    for _ in range(K):
        out.append(eval_poly(tuple(cur), x) if cur else x * 0)
        cur = [k * c for k, c in enumerate(cur)][1:]
    fact = 1
    for a in range(len(out)):
        if a:
            fact *= a
        out[a] = out[a] / fact if fact != 1 else out[a]
    return out


def map_derivatives(R: RationalMap, x, K):
    """``[R(x), R'(x), ..., R^(K-1)(x)]`` exactly.

    Computed by expanding ``num`` and ``den`` about ``x`` and dividing the
    resulting power series in the local variable.
    """
    if isinstance(x, AlgebraicNumber):
        x = x.as_fraction() if x.is_rational else x.element()
    n = taylor_shift(R.num.coeffs, x, K)
    d = taylor_shift(R.den.coeffs, x, K)
    if d[0] == 0 or (isinstance(d[0], NumberFieldElement) and d[0].is_zero):
        raise PoleError(f"{x!r} is a zero of the denominator")
    inv0 = 1 / d[0]
    c = []
    for k in range(K):
        acc = n[k]
        for i in range(1, k + 1):
            acc = acc - d[i] * c[k - i]
        c.append(acc * inv0)
    return [ck * math.factorial(a) for a, ck in enumerate(c)]


def _min_poly_of(eta) -> IntPolynomial:
    if isinstance(eta, AlgebraicNumber):
        return eta.min_poly
    q = as_fraction(eta)
    return IntPolynomial((-q.numerator, q.denominator))


def vanishing_order(P: IntPolynomial, eta) -> int:
    """Multiplicity of ``eta`` as a root of ``P``, by exact repeated division."""
    P = _as_intpoly(P)
    if P.is_zero:
        raise ValueError("vanishing order of the zero polynomial is undefined")
    m = _min_poly_of(eta)
    cur = P.primitive()
    k = 0
    while True:
        q = cur.exact_div(m)
        if q is None:
            # m is primitive, so divisibility over Q implies divisibility over Z
            return k
        cur, k = q, k + 1
