"""One-parameter families of Dehn invariant zero tetrahedra.

Hill families (``s = sin a``, ``c = cos a``):

* H1 ``(s, s, sqrt3 c, s, 1, 1)``
* H2 ``(2s, f, sqrt3 c, 2s, 2, f)`` with ``f = sqrt(5 s**2 - 1)``
* H3 ``(2s, r, sqrt12 c, s, r, 2)`` with ``r = sqrt(s**2 + 2)``

and the new pair ``T(t) = (t+1, t-1, t+1, t-1, t, 6)`` with its Regge image
``T'(t)``, valid for ``t > 4``.

Integer members come from rational ``s`` making every entry rational.  For
H1 the conic ``3(1 - x**2) = y**2`` has the parametrization used in
:func:`h1_instance`.  For H2 and H3 we search ``s = p/q`` directly:

* H2 needs ``3(q**2 - p**2)`` and ``5 p**2 - q**2`` to be squares;
* H3 needs ``3(q**2 - p**2)`` and ``p**2 + 2 q**2`` to be squares
  (``sqrt12 c = 2 sqrt3 c``, so the first condition is shared with H1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .exact import MultiQuadNumber, Rational, interval_precision
from .geometry import dihedral_trig, is_nondegenerate

FAMILY_TAGS = ("H1", "H2", "H3", "NewT", "NewTPrime")

# the quartic from H2's two conditions with x = (3 - t^2)/(3 + t^2), and its
# elliptic model
CURVES = {
    "H2": {
        "quartic": "w^2 = t^4 - 9*t^2 + 9",
        "elliptic": "y^2 = x^3 - 9*x^2 - 36*x + 324",
    },
}


def h2_quartic(t: Rational) -> Fraction:
    """Right-hand side ``t**4 - 9 t**2 + 9`` of the H2 quartic."""
    t = Fraction(t)
    return t**4 - 9 * t**2 + 9


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    parameter: object  # t for H1/NewT, sin(alpha) for H2/H3
    edges: tuple
    scale: int

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "parameter": str(self.parameter),
            "edges": [int(e) if Fraction(e).denominator == 1 else str(e) for e in self.edges],
            "scale": self.scale,
        }


def _clear_denominators(values: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    scale = 1
    for v in values:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return tuple(int(v * scale) for v in values), scale


def new_family(t: Rational, which: str = "T") -> tuple:
    """``T(t)`` or ``T'(t)`` for rational ``t > 4``."""
    t = Fraction(t)
    if t <= 4:
        raise ValueError(f"the new families need t > 4, got {t}")
    if which in ("T", "NewT"):
        vals = (t + 1, t - 1, t + 1, t - 1, t, Fraction(6))
    elif which in ("TPrime", "NewTPrime", "T'"):
        vals = (t + 1, t - 1, t / 2 + 2, t / 2 + 4, t / 2 + 3, 3 * t / 2 - 3)
    else:
        raise ValueError(f"unknown new family {which!r}")
    return tuple(int(v) if v.denominator == 1 else v for v in vals)


def new_family_instance(t: Rational, which: str = "T") -> FamilyInstance:
    edges = new_family(t, which)
    ints, scale = _clear_denominators([Fraction(e) for e in edges])
    tag = "NewT" if which in ("T", "NewT") else "NewTPrime"
    return FamilyInstance(tag, Fraction(t), ints, scale)


def h1_instance(t: Rational) -> FamilyInstance | None:
    """H1 member at ``(sin a, sqrt3 cos a) = ((3 - t^2)/(3 + t^2), 6t/(3 + t^2))``."""
    t = Fraction(t)
    x = (3 - t * t) / (3 + t * t)
    y = 6 * t / (3 + t * t)
    edges = (x, x, y, x, Fraction(1), Fraction(1))
    if any(e <= 0 for e in edges) or not is_nondegenerate(edges):
        return None
    ints, scale = _clear_denominators(edges)
    return FamilyInstance("H1", t, ints, scale)


def h1_instances(max_denominator: int) -> list[FamilyInstance]:
    """Distinct H1 integer tetrahedra over ``t = p/q``, ``q <= max_denominator``."""
    seen, out = set(), []
    for q in range(1, max_denominator + 1):
        # sin a > 0 needs t < sqrt(3)
        for p in range(1, math.isqrt(3 * q * q) + 1):
            if math.gcd(p, q) != 1:
                continue
            inst = h1_instance(Fraction(p, q))
            if inst is not None and inst.edges not in seen:
                seen.add(inst.edges)
                out.append(inst)
    return out


def _sqrt_int(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _rational_sines(max_denominator: int):
    for q in range(1, max_denominator + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                yield p, q


def h2_search(max_denominator: int) -> list[FamilyInstance]:
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    out = []
    for p, q in _rational_sines(max_denominator):
        y = _sqrt_int(3 * (q * q - p * p))
        f = _sqrt_int(5 * p * p - q * q)
        if y is None or not f:
            continue
        edges = (2 * p, f, y, 2 * p, 2 * q, f)
        if y > 0 and is_nondegenerate(edges):
            out.append(FamilyInstance("H2", Fraction(p, q), edges, q))
    return out


def h3_search(max_denominator: int) -> list[FamilyInstance]:
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    out = []
    for p, q in _rational_sines(max_denominator):
        y = _sqrt_int(3 * (q * q - p * p))
        r = _sqrt_int(p * p + 2 * q * q)
        if not y or r is None:
            continue
        edges = (2 * p, r, 2 * y, p, r, 2 * q)
        if is_nondegenerate(edges):
            out.append(FamilyInstance("H3", Fraction(p, q), edges, q))
    return out


# --- the new family: exact angle relations -------------------------------

@dataclass(frozen=True)
class RelationReport:
    """Exact and interval evidence for the two angle relations of ``T(t)``.

    ``first`` is ``2 a12 + 2 a24 + a14 = 2 pi`` and ``second`` is
    ``a12 - a24 + 3 a23 = pi``.  ``cos_first``/``cos_second`` record the exact
    cosine identities; ``swapped_*`` the same identities with a14 and a23
    exchanged, which is how some sources state them.
    """

    t: Fraction
    cos_first: bool
    cos_second: bool
    swapped_cos_first: bool
    swapped_cos_second: bool
    first_residual: tuple  # interval endpoints of the angle sum minus 2 pi
    second_residual: tuple
    dps: int

    @property
    def holds(self) -> bool:
        return self.cos_first and self.cos_second and self._contains_zero(self.first_residual) and self._contains_zero(
            self.second_residual
        )

    @staticmethod
    def _contains_zero(iv) -> bool:
        lo, hi = iv
        return lo <= 0 <= hi


def _mq(x) -> MultiQuadNumber:
    return MultiQuadNumber.of(x)


def new_family_relation_report(t: Rational, width: float = 1e-30, start_dps: int = 50) -> RelationReport:
    t = Fraction(t)
    edges = new_family(t, "T")
    trig = dihedral_trig(edges)
    c = [_mq(x) for x in trig.cos]
    s = [_mq(x) for x in trig.sin]
    i12, i24, i14, i23 = 0, 3, 4, 5

    cos_sum = c[i12] * c[i24] - s[i12] * s[i24]  # cos(a12 + a24)
    cos_double_sum = 2 * cos_sum * cos_sum - 1  # cos(2 a12 + 2 a24)
    cos_diff = c[i12] * c[i24] + s[i12] * s[i24]  # cos(a12 - a24)

    def triple(x):  # cos(3a) = 4 cos^3 a - 3 cos a
        return 4 * x * x * x - 3 * x

    cos_first = cos_double_sum == c[i14]
    cos_second = triple(c[i23]) == -cos_diff
    swapped_first = cos_double_sum == c[i23]
    swapped_second = triple(c[i14]) == -cos_diff

    dps = start_dps
    while True:
        with interval_precision(dps) as iv:
            a = trig.angle_intervals(dps)
            r1 = 2 * a[i12] + 2 * a[i24] + a[i14] - 2 * iv.pi
            r2 = a[i12] - a[i24] + 3 * a[i23] - iv.pi
            w = max(r1.delta, r2.delta)
            bounds1 = (mpmath.mpf(r1.a), mpmath.mpf(r1.b))
            bounds2 = (mpmath.mpf(r2.a), mpmath.mpf(r2.b))
        if w < width:
            break
        dps *= 2
    return RelationReport(t, cos_first, cos_second, swapped_first, swapped_second, bounds1, bounds2, dps)


def verify_new_family_relations(t: Rational) -> bool:
    """Exact cosine identities plus interval branch check for ``T(t)``."""
    if Fraction(t) <= 4:
        raise ValueError(f"the new families need t > 4, got {t}")
    return new_family_relation_report(t).holds


def dehn_sum_certificate(t: Rational, dps: int = 50):
    """``|sum e_ij a_ij / pi - 2(t + 1)|`` for ``T(t)`` at ``dps`` digits."""
    t = Fraction(t)
    edges = new_family(t, "T")
    trig = dihedral_trig(edges)
    with mpmath.workdps(dps):
        angles = trig.angles(dps)
        total = mpmath.fsum(mpmath.mpf(Fraction(e).numerator) / Fraction(e).denominator * a for e, a in zip(edges, angles))
        target = 2 * (mpmath.mpf(t.numerator) / t.denominator + 1)
        return abs(total / mpmath.pi - target)
