"""Exact arithmetic in Q(x)[sqrt(8x+1)] and sign decisions on intervals.

Elements are written a(x) + b(x)*sqrt(s(x)) with s(x) = 8x + 1 and a, b
rational functions over exact rationals.  Since s is squarefree and not a
square, {1, sqrt(s)} is a basis, so identity testing reduces to testing
a = b = 0 after normalization.  Sign determination on an interval isolates
the real roots of a^2 - b^2*s (the only places the element can vanish) with
Sturm sequences and evaluates exact signs at rational sample points between
them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

# ---------------------------------------------------------------------------
# Polynomials over Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatPoly:
    """Dense univariate polynomial over Fraction, trailing zeros stripped."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("unstripped polynomial")

    @staticmethod
    def make(coeffs) -> "RatPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return RatPoly(tuple(cs))

    @staticmethod
    def const(c) -> "RatPoly":
        return RatPoly.make([c])

    @staticmethod
    def x() -> "RatPoly":
        return RatPoly.make([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly.make([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return RatPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly.make(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RatPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = RatPoly(())
        r = self
        while not r.is_zero and r.degree >= other.degree:
            shift = r.degree - other.degree
            c = r.lead / other.lead
            term = RatPoly.make([Fraction(0)] * shift + [c])
            q = q + term
            r = r - term * other
        return q, r

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly.make([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RatPoly":
        if self.is_zero:
            return self
        return RatPoly(tuple(c / self.lead for c in self.coeffs))

    def text(self, var: str = "b") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*{var}")
            else:
                parts.append(f"{c}*{var}^{k}")
        return " + ".join(parts)


def _as_poly(v) -> RatPoly:
    if isinstance(v, RatPoly):
        return v
    return RatPoly.const(v)


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero else a


def squarefree_part(p: RatPoly) -> RatPoly:
    if p.is_zero:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    return p.divmod(g)[0].monic()


def deflate_root(p: RatPoly, r: Fraction) -> RatPoly:
    """Divide out all (x - r) factors."""
    lin = RatPoly.make([-r, 1])
    while not p.is_zero and p(r) == 0:
        p = p.divmod(lin)[0]
    return p


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------

def sturm_chain(p: RatPoly) -> list[RatPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero:
        rem = chain[-2].divmod(chain[-1])[1]
        chain.append(-rem)
    chain.pop()
    return chain


def _sign_variations(chain, x: Fraction) -> int:
    signs = [v for v in ((pol(x) > 0) - (pol(x) < 0) for pol in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(p: RatPoly, lo: Fraction, hi: Fraction) -> int:
    """Exact number of distinct real roots of p in (lo, hi]."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if not lo < hi:
        raise ValueError("need lo < hi")
    lo, hi = Fraction(lo), Fraction(hi)
    q = squarefree_part(p)
    extra = 0
    if q(hi) == 0:
        extra = 1
        q = deflate_root(q, hi)
    q = deflate_root(q, lo)
    if q.degree <= 0:
        return extra
    chain = sturm_chain(q)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi) + extra


def isolate_roots(p: RatPoly, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (l, h], each holding one distinct root of p in (lo, hi]."""
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    out: list[tuple[Fraction, Fraction]] = []

    def split(a: Fraction, b: Fraction, count: int):
        if count == 0:
            return
        if count == 1:
            out.append((a, b))
            return
        mid = (a + b) / 2
        left = sturm_root_count(q, a, mid)
        split(a, mid, left)
        split(mid, b, count - left)

    split(Fraction(lo), Fraction(hi), sturm_root_count(q, lo, hi))
    return sorted(out)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    num: RatPoly
    den: RatPoly

    @staticmethod
    def make(num, den=None) -> "RatFunc":
        num = _as_poly(num)
        den = RatPoly.const(1) if den is None else _as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            return RatFunc(RatPoly(()), RatPoly.const(1))
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lc = den.lead
        num = RatPoly(tuple(c / lc for c in num.coeffs))
        den = den.monic()
        return RatFunc(num, den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other):
        other = _as_func(other)
        return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_func(other))

    def __rsub__(self, other):
        return _as_func(other) + (-self)

    def __mul__(self, other):
        other = _as_func(other)
        return RatFunc.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_func(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc.make(self.num * other.den, self.den * other.num)

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def derivative(self) -> "RatFunc":
        return RatFunc.make(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def text(self, var: str = "b") -> str:
        return f"(({self.num.text(var)})/({self.den.text(var)}))"


def _as_func(v) -> RatFunc:
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, RatPoly):
        return RatFunc.make(v)
    return RatFunc.make(RatPoly.const(v))


# ---------------------------------------------------------------------------
# The quadratic extension by sqrt(8x + 1)
# ---------------------------------------------------------------------------

RADICAND = RatPoly.make([1, 8])  # s(x) = 1 + 8x


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class SqrtExpr:
    """a(x) + b(x) * sqrt(8x + 1) with rational-function parts a and b."""

    a: RatFunc
    b: RatFunc

    @staticmethod
    def make(a=0, b=0) -> "SqrtExpr":
        return SqrtExpr(_as_func(a), _as_func(b))

    @staticmethod
    def const(c) -> "SqrtExpr":
        return SqrtExpr.make(RatPoly.const(c))

    @staticmethod
    def var() -> "SqrtExpr":
        return SqrtExpr.make(RatPoly.x())

    @staticmethod
    def sqrt_radicand() -> "SqrtExpr":
        return SqrtExpr.make(0, RatPoly.const(1))

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    def __add__(self, other):
        other = _as_sqrt(other)
        return SqrtExpr(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return SqrtExpr(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_as_sqrt(other))

    def __rsub__(self, other):
        return _as_sqrt(other) + (-self)

    def __mul__(self, other):
        other = _as_sqrt(other)
        s = RatFunc.make(RADICAND)
        return SqrtExpr(
            self.a * other.a + self.b * other.b * s,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "SqrtExpr":
        return SqrtExpr(self.a, -self.b)

    def __truediv__(self, other):
        other = _as_sqrt(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero element")
        s = RatFunc.make(RADICAND)
        norm = other.a * other.a - other.b * other.b * s
        if norm.is_zero:
            raise ZeroDivisionError("norm vanishes identically")
        num = self * other.conjugate()
        return SqrtExpr(num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        return _as_sqrt(other) / self

    def derivative(self) -> "SqrtExpr":
        # d/dx sqrt(s) = s' / (2 sqrt(s)) = (s'/(2s)) * sqrt(s)
        s = RatFunc.make(RADICAND)
        sprime = RatFunc.make(RADICAND.derivative())
        return SqrtExpr(
            self.a.derivative(),
            self.b.derivative() + self.b * sprime / (2 * s),
        )

    def eval_rational_point(self, x0) -> Fraction:
        """Exact value at a point where the radicand is a rational square."""
        x0 = Fraction(x0)
        t = rational_sqrt(RADICAND(x0))
        if t is None:
            raise ValueError(f"radicand {RADICAND(x0)} is not a rational square at {x0}")
        return self.a(x0) + self.b(x0) * t

    def sign_at(self, x0) -> int:
        """Exact sign at any rational point (no square root needed)."""
        x0 = Fraction(x0)
        s = RADICAND(x0)
        if s < 0:
            raise ValueError("radicand negative; outside domain")
        u = self.a(x0)
        v = self.b(x0)
        if v == 0:
            return (u > 0) - (u < 0)
        if u == 0:
            return ((v > 0) - (v < 0)) if s > 0 else 0
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        # opposite signs: compare u^2 against v^2 * s
        diff = u * u - v * v * s
        if u > 0:
            return (diff > 0) - (diff < 0)
        return (diff < 0) - (diff > 0)

    def poles(self) -> RatPoly:
        return self.a.den * self.b.den

    def text(self, var: str = "b") -> str:
        return f"{self.a.text(var)} + {self.b.text(var)}*sqrt(1+8*{var})"


def _as_sqrt(v) -> SqrtExpr:
    if isinstance(v, SqrtExpr):
        return v
    if isinstance(v, (RatFunc, RatPoly)):
        return SqrtExpr.make(v)
    return SqrtExpr.make(RatPoly.const(v))


def is_identically_zero(x: SqrtExpr) -> bool:
    """Complete identity test: both basis coordinates vanish."""
    return x.is_zero


NONNEGATIVE = "nonnegative"
NONPOSITIVE = "nonpositive"
MIXED = "mixed"
UNDEFINED = "undefined-at-pole"


def sign_on_interval(
    x: SqrtExpr,
    lo,
    hi,
    include_lo: bool = True,
    include_hi: bool = True,
) -> str:
    """Exact sign classification of x on an interval.

    Poles strictly inside the interval (or at an included endpoint) yield
    ``undefined-at-pole``.  Otherwise the element can only change sign at
    roots of a^2 - b^2*s, so those roots are isolated with Sturm sequences
    and exact signs are read off at rational points of each complementary
    segment plus the included endpoints.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if RADICAND(lo) < 0:
        raise ValueError("interval leaves the domain of the radicand")

    pole_poly = x.poles()
    if pole_poly.degree > 0:
        if sturm_root_count(pole_poly, lo, hi) - (1 if pole_poly(hi) == 0 else 0) > 0:
            return UNDEFINED
        if include_lo and pole_poly(lo) == 0:
            return UNDEFINED
        if include_hi and pole_poly(hi) == 0:
            return UNDEFINED

    if x.is_zero:
        return NONNEGATIVE

    # vanishing locus: numerator of a^2 - b^2 * s
    s = RatFunc.make(RADICAND)
    norm = x.a * x.a - x.b * x.b * s
    samples: list[Fraction] = []
    if include_lo:
        samples.append(lo)
    if include_hi:
        samples.append(hi)
    # norm cannot vanish identically for x != 0: the radicand is not a square
    assert not norm.is_zero
    boxes = isolate_roots(norm.num, lo, hi)
    # one sample inside each complementary segment
    cursor = lo
    for bl, bh in boxes:
        if cursor < bl:
            samples.append((cursor + bl) / 2)
        cursor = bh
    if cursor < hi:
        samples.append((cursor + hi) / 2)
    if not samples:
        samples.append((lo + hi) / 2)

    signs = {x.sign_at(pt) for pt in samples}
    has_pos = 1 in signs
    has_neg = -1 in signs
    if has_pos and has_neg:
        return MIXED
    if has_neg:
        return NONPOSITIVE
    return NONNEGATIVE


def xi_substitution() -> SqrtExpr:
    """(sqrt(8x+1) - 1) / (2x) - 1, the parameter choice of the main certificate."""
    two_x = RatPoly.make([0, 2])
    return SqrtExpr(
        RatFunc.make(RatPoly.make([-1, -2]), two_x),  # (-1 - 2x) / (2x)
        RatFunc.make(RatPoly.const(1), two_x),
    )


def poly_at(poly: RatPoly, value: SqrtExpr) -> SqrtExpr:
    """Evaluate a rational polynomial at a field element (Horner)."""
    acc = SqrtExpr.const(0)
    for c in reversed(poly.coeffs):
        acc = acc * value + SqrtExpr.const(c)
    return acc
