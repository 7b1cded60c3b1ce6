"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`.  On top of that this module provides

* :class:`SqrtQuantity` -- a real number ``coeff * sqrt(radicand)``,
* :class:`QuadFieldElem` -- an element ``(a + b*sqrt(m)) / c`` of ``Q(sqrt(m))``,
* :class:`MultiQuadNumber` -- a finite sum ``sum coeff_r * sqrt(r)`` over
  distinct squarefree ``r``.

All values are immutable and canonical, so ``==`` is exact equality.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

import mpmath

from .factor import factor

Rational = Union[int, Fraction]


@contextmanager
def interval_precision(dps: int):
    """Temporarily set the decimal precision of ``mpmath.iv``."""
    iv = mpmath.iv
    old = iv.prec
    iv.dps = dps
    try:
        yield iv
    finally:
        iv.prec = old


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree."""
    if n < 1:
        raise ValueError(f"squarefree_decompose expects n >= 1, got {n}")
    s = r = 1
    for p, e in factor(n):
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel of a nonzero integer."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    r = squarefree_decompose(abs(n))[1]
    return r if n > 0 else -r


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def rational_sqrt(q: Rational) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


@dataclass(frozen=True)
class SqrtQuantity:
    """The real number ``coeff * sqrt(radicand)`` in canonical form.

    ``radicand`` is squarefree and positive; zero is ``SqrtQuantity(0, 1)``.
    Build non-canonical values with :meth:`make` or :meth:`sqrt`.
    """

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.radicand < 1:
            raise ValueError("radicand must be positive")
        if self.coeff == 0 and self.radicand != 1:
            object.__setattr__(self, "radicand", 1)

    @classmethod
    def make(cls, coeff: Rational, radicand: int) -> "SqrtQuantity":
        """Normalize ``coeff * sqrt(radicand)`` for any integer radicand >= 0."""
        coeff = Fraction(coeff)
        if radicand < 0:
            raise ValueError("SqrtQuantity carries only real values")
        if radicand == 0 or coeff == 0:
            return cls(Fraction(0), 1)
        s, r = squarefree_decompose(radicand)
        return cls(coeff * s, r)

    @classmethod
    def sqrt(cls, q: Rational) -> "SqrtQuantity":
        """The nonnegative square root of a rational ``q >= 0``."""
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"square root of negative rational {q}")
        # sqrt(n/d) = sqrt(n*d) / d
        return cls.make(Fraction(1, q.denominator), q.numerator * q.denominator)

    @classmethod
    def sqrt_product(cls, parts) -> "SqrtQuantity":
        """``sqrt(prod(parts))`` for nonnegative rational parts, factoring each part separately."""
        parts = [Fraction(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError("square root of negative rational")
        if any(p == 0 for p in parts):
            return cls(Fraction(0), 1)
        exps: dict[int, int] = {}
        for p in parts:
            for n, sign in ((p.numerator, 1), (p.denominator, -1)):
                for q, e in factor(n):
                    exps[q] = exps.get(q, 0) + sign * e
        coeff, r = Fraction(1), 1
        for q, e in exps.items():
            # q**e = q**(2*(e//2)) * q**(e % 2), valid for negative e too
            coeff *= Fraction(q) ** (e // 2)
            if e % 2:
                r *= q
        return cls(coeff, r)

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def square(self) -> Fraction:
        return self.coeff * self.coeff * self.radicand

    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def __mul__(self, other):
        if isinstance(other, SqrtQuantity):
            return sqrt_quantity_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return SqrtQuantity(self.coeff * other, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SqrtQuantity):
            if other.coeff == 0:
                raise ZeroDivisionError("division by zero SqrtQuantity")
            # 1/(c sqrt r) = sqrt(r) / (c r)
            inv = SqrtQuantity(1 / (other.coeff * other.radicand), other.radicand)
            return sqrt_quantity_mul(self, inv)
        if isinstance(other, (int, Fraction)):
            return SqrtQuantity(self.coeff / other, self.radicand)
        return NotImplemented

    def __neg__(self):
        return SqrtQuantity(-self.coeff, self.radicand)

    def to_mpf(self, ctx=mpmath.mp):
        return ctx.mpf(self.coeff.numerator) / self.coeff.denominator * ctx.sqrt(self.radicand)

    def to_interval(self):
        iv = mpmath.iv
        c = iv.mpf(self.coeff.numerator) / self.coeff.denominator
        return c * iv.sqrt(iv.mpf(self.radicand))

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff}*sqrt({self.radicand})"


def sqrt_quantity_mul(x: SqrtQuantity, y: SqrtQuantity) -> SqrtQuantity:
    """Exact product; ``sqrt(r1)*sqrt(r2) = g*sqrt(r1*r2/g**2)`` with ``g = gcd``."""
    if x.coeff == 0 or y.coeff == 0:
        return SqrtQuantity(Fraction(0), 1)
    g = math.gcd(x.radicand, y.radicand)
    return SqrtQuantity(x.coeff * y.coeff * g, (x.radicand // g) * (y.radicand // g))


def sqrt_quantity_cmp(x: SqrtQuantity, y: SqrtQuantity) -> int:
    """Exact three-way comparison of two real SqrtQuantity values."""
    sx, sy = x.sign(), y.sign()
    if sx != sy:
        return (sx > sy) - (sx < sy)
    if sx == 0:
        return 0
    c = (x.square() > y.square()) - (x.square() < y.square())
    return c if sx > 0 else -c


@dataclass(frozen=True)
class QuadFieldElem:
    """``(a + b*sqrt(m)) / c`` with ``gcd(a, b, c) == 1``, ``c > 0``, ``m`` squarefree.

    ``m`` may be negative; for ``m < 0`` this is an imaginary quadratic field.
    Use :meth:`make` to normalize arbitrary integers.
    """

    a: int
    b: int
    c: int
    m: int

    @classmethod
    def make(cls, a: int, b: int, c: int, m: int) -> "QuadFieldElem":
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        return cls(a // g, b // g, c // g, m)

    @classmethod
    def from_rationals(cls, x: Rational, y: Rational, m: int) -> "QuadFieldElem":
        """The element ``x + y*sqrt(m)`` for rationals x, y."""
        x, y = Fraction(x), Fraction(y)
        c = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
        return cls.make(x.numerator * (c // x.denominator), y.numerator * (c // y.denominator), c, m)

    @classmethod
    def one(cls, m: int) -> "QuadFieldElem":
        return cls(1, 0, 1, m)

    def _check(self, other: "QuadFieldElem") -> None:
        if self.m != other.m and self.b != 0 and other.b != 0:
            raise ValueError(f"mixed fields Q(sqrt({self.m})) and Q(sqrt({other.m}))")

    def __mul__(self, other):
        if isinstance(other, QuadFieldElem):
            self._check(other)
            m = self.m if self.b else other.m
            return QuadFieldElem.make(
                self.a * other.a + m * self.b * other.b,
                self.a * other.b + self.b * other.a,
                self.c * other.c,
                m,
            )
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return QuadFieldElem.make(self.a * q.numerator, self.b * q.numerator, self.c * q.denominator, self.m)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, QuadFieldElem):
            self._check(other)
            m = self.m if self.b else other.m
            return QuadFieldElem.make(
                self.a * other.c + other.a * self.c, self.b * other.c + other.b * self.c, self.c * other.c, m
            )
        if isinstance(other, (int, Fraction)):
            return self + QuadFieldElem.from_rationals(other, 0, self.m)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadFieldElem(-self.a, -self.b, self.c, self.m)

    def conjugate(self) -> "QuadFieldElem":
        return QuadFieldElem(self.a, -self.b, self.c, self.m)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.m * self.b * self.b, self.c * self.c)

    def inverse(self) -> "QuadFieldElem":
        n = self.a * self.a - self.m * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        # c / (a + b sqrt m) = c (a - b sqrt m) / n
        return QuadFieldElem.make(self.c * self.a, -self.c * self.b, n, self.m)

    def __pow__(self, k: int) -> "QuadFieldElem":
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadFieldElem.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def to_mpc(self, ctx=mpmath.mp):
        root = ctx.sqrt(ctx.mpf(self.m)) if self.m >= 0 else ctx.mpc(0, ctx.sqrt(-self.m))
        return (self.a + self.b * root) / self.c

    def __str__(self):
        return f"({self.a} + {self.b}*sqrt({self.m}))/{self.c}"


def quad_norm(x: QuadFieldElem) -> Fraction:
    """Field norm ``(a**2 - m*b**2) / c**2``."""
    return x.norm()


class MultiQuadNumber:
    """A real number ``sum coeff_r * sqrt(r)`` over distinct squarefree ``r >= 1``.

    Square roots of distinct squarefree integers are linearly independent
    over Q, so the coefficient map is unique and equality is coefficient-wise.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean: dict[int, Fraction] = {}
        for r, q in (terms or {}).items():
            if r < 1:
                raise ValueError("radicands must be positive")
            q = Fraction(q)
            s, rr = squarefree_decompose(r)
            clean[rr] = clean.get(rr, Fraction(0)) + q * s
        self._terms = tuple(sorted((r, q) for r, q in clean.items() if q != 0))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "MultiQuadNumber":
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((r, q) for r, q in terms.items() if q != 0))
        obj._hash = None
        return obj

    @classmethod
    def of(cls, x: Union[Rational, SqrtQuantity, "MultiQuadNumber"]) -> "MultiQuadNumber":
        if isinstance(x, MultiQuadNumber):
            return x
        if isinstance(x, SqrtQuantity):
            return cls._raw({x.radicand: x.coeff})
        return cls._raw({1: Fraction(x)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms)

    def __add__(self, other):
        other = MultiQuadNumber.of(other)
        out = dict(self._terms)
        for r, q in other._terms:
            out[r] = out.get(r, Fraction(0)) + q
        return MultiQuadNumber._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiQuadNumber._raw({r: -q for r, q in self._terms})

    def __sub__(self, other):
        return self + (-MultiQuadNumber.of(other))

    def __rsub__(self, other):
        return MultiQuadNumber.of(other) - self

    def __mul__(self, other):
        other = MultiQuadNumber.of(other)
        out: dict[int, Fraction] = {}
        for r1, q1 in self._terms:
            for r2, q2 in other._terms:
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                out[r] = out.get(r, Fraction(0)) + q1 * q2 * g
        return MultiQuadNumber._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = MultiQuadNumber.of(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SqrtQuantity)):
            other = MultiQuadNumber.of(other)
        if not isinstance(other, MultiQuadNumber):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def is_zero(self) -> bool:
        return not self._terms

    def to_mpf(self, ctx=mpmath.mp):
        return ctx.fsum(ctx.mpf(q.numerator) / q.denominator * ctx.sqrt(r) for r, q in self._terms)

    def sign(self, start_dps: int = 30, max_dps: int = 10_000) -> int:
        """Exact sign: zero by coefficients, otherwise interval evaluation at growing precision."""
        if self.is_zero():
            return 0
        dps = start_dps
        while dps <= max_dps:
            with interval_precision(dps) as iv:
                total = iv.mpf(0)
                for r, q in self._terms:
                    total += iv.mpf(q.numerator) / q.denominator * iv.sqrt(iv.mpf(r))
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
            dps *= 2
        raise ArithmeticError("sign undecided; nonzero value below the precision cap")

    def __repr__(self):
        body = ", ".join(f"sqrt({r}): {q}" for r, q in self._terms)
        return f"MultiQuadNumber({{{body}}})"


def multiquad_equal(x: MultiQuadNumber, y: MultiQuadNumber) -> bool:
    return x == y
