"""Dehn invariant zero test for integer-edge tetrahedra.

With integer edges the Dehn invariant vanishes iff ``zeta = prod z_ij**e_ij``
is a root of unity.  Each ``z_ij`` needs a further square root, so we work
with ``zeta**2 = prod (z_ij**2)**e_ij``, which lies in K = Q(sqrt(m)); it is a
root of unity iff zeta is.  The roots of unity of an imaginary quadratic
field are +-1, +-i (m = -1) and the sixth roots of unity (m = -3).

Two exact routes decide the question:

* ``"product"`` multiplies out ``zeta**2`` in K and compares it with the list;
* ``"valuation"`` checks that every valuation of ``zeta**2`` vanishes (a
  norm-one element of K with no finite valuations is a root of unity) and
  then identifies the root by reduction modulo an auxiliary split prime.

``"auto"`` picks the product route when the intermediate integers stay small.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .exact import QuadFieldElem
from .geometry import (
    CayleyMengerData,
    DegenerateTetrahedron,
    cayley_menger,
    dihedral_trig,
    is_nondegenerate,
    quadratic_data,
    z_squared_all,
)
from .padic import legendre, sqrt_mod_prime, valuation_matrix

DEFAULT_FILTER_PRIMES = (11, 13, 17, 19, 23)
# lcm of every root-of-unity order available in a quadratic field
ROOT_EXPONENT = 12
PRODUCT_BIT_LIMIT = 200_000


@dataclass(frozen=True)
class RootOfUnity:
    """``exp(2 pi i * power / order)``; order is one of 1, 2, 3, 4, 6."""

    order: int
    power: int

    def element(self, m: int) -> QuadFieldElem:
        return _ROOTS[self.order, self.power].element(m)


@dataclass(frozen=True)
class _RootForm:
    a: int
    b: int
    c: int
    field_m: int | None  # None: lives in every field

    def element(self, m: int) -> QuadFieldElem:
        if self.field_m is not None and self.field_m != m:
            raise ValueError(f"root not in Q(sqrt({m}))")
        return QuadFieldElem(self.a, self.b, self.c, m)


_ROOTS = {
    (1, 0): _RootForm(1, 0, 1, None),
    (2, 1): _RootForm(-1, 0, 1, None),
    (4, 1): _RootForm(0, 1, 1, -1),
    (4, 3): _RootForm(0, -1, 1, -1),
    (3, 1): _RootForm(-1, 1, 2, -3),
    (3, 2): _RootForm(-1, -1, 2, -3),
    (6, 1): _RootForm(1, 1, 2, -3),
    (6, 5): _RootForm(1, -1, 2, -3),
}


def roots_of_unity(m: int) -> list[RootOfUnity]:
    """All roots of unity in Q(sqrt(m))."""
    return [RootOfUnity(o, p) for (o, p), f in _ROOTS.items() if f.field_m in (None, m)]


def classify_root_of_unity(x: QuadFieldElem) -> RootOfUnity | None:
    for (order, power), form in _ROOTS.items():
        if form.field_m is not None and form.field_m != x.m:
            continue
        if (x.a, x.b, x.c) == (form.a, form.b, form.c):
            return RootOfUnity(order, power)
    return None


class FilterOutcome(enum.Enum):
    REJECTED_NOT_ZERO = "rejected-not-zero"
    INCONCLUSIVE = "inconclusive"
    PRIME_UNUSABLE = "prime-unusable"


@dataclass
class DehnVerdict:
    """Outcome of the Dehn invariant test.

    ``zeta_squared`` is None when the verdict was reached without forming the
    product (mod-p rejection, or a nonzero valuation on the valuation route).
    """

    is_zero: bool
    zeta_squared: QuadFieldElem | None
    matched_root: RootOfUnity | None
    filter_trace: list = field(default_factory=list)
    method: str = "product"


def _integer_edges(edges: Sequence) -> tuple[int, ...]:
    out = []
    for e in edges:
        if Fraction(e).denominator != 1 or e <= 0:
            raise ValueError(f"edges must be positive integers: {tuple(edges)}")
        out.append(int(e))
    return tuple(out)


def _require(edges) -> tuple[tuple[int, ...], CayleyMengerData]:
    edges = _integer_edges(edges)
    if not is_nondegenerate(edges):
        raise DegenerateTetrahedron(f"degenerate or non-realizable edge tuple {edges}")
    return edges, cayley_menger(edges)


def zeta_squared(edges: Sequence[int]) -> QuadFieldElem:
    """``prod (z_ij**2)**e_ij`` exactly in K."""
    edges, cm = _require(edges)
    zs = z_squared_all(edges, cm)
    result = QuadFieldElem.one(zs[0].m)
    for z, e in zip(zs, edges):
        result = result * z**e
    return result


def _zeta_sq_mod_p(edges, cm: CayleyMengerData, p: int, rho: int) -> int:
    """``zeta**2`` mod p, with ``rho`` a square root of ``-2D`` mod p."""
    acc = 1
    for idx, e in enumerate(edges):
        P = cm.face_product(idx) % p
        dij = cm.edge_minors[idx]
        z = (2 * dij * dij - P + 2 * e * dij * rho) * pow(P, -1, p) % p
        acc = acc * pow(z, e, p) % p
    return acc


def _usable(cm: CayleyMengerData, p: int) -> bool:
    if any(f % p == 0 for f in cm.face_minors.values()):
        return False
    return legendre(-2 * cm.D, p) == 1


def modp_filter(edges: Sequence[int], p: int, cm: CayleyMengerData | None = None) -> FilterOutcome:
    """One-way test: ``RejectedNotZero`` is conclusive, ``Inconclusive`` is not."""
    if p < 3:
        raise ValueError("the filter needs an odd prime")
    edges = _integer_edges(edges)
    cm = cm or cayley_menger(edges)
    if not _usable(cm, p):
        return FilterOutcome.PRIME_UNUSABLE
    rho = sqrt_mod_prime(-2 * cm.D, p)
    z = _zeta_sq_mod_p(edges, cm, p, rho)
    if pow(z, ROOT_EXPONENT, p) != 1:
        return FilterOutcome.REJECTED_NOT_ZERO
    return FilterOutcome.INCONCLUSIVE


def _product_bits(zs, edges) -> int:
    return sum(e * (z.c.bit_length() + max(abs(z.a), abs(z.b)).bit_length()) for z, e in zip(zs, edges))


def _identify_root(edges, cm: CayleyMengerData, m: int) -> RootOfUnity:
    """Identify the root of unity ``zeta**2`` by reduction modulo a split prime."""
    qd = quadratic_data(cm.D)
    scale = int(qd.scale)
    candidates = roots_of_unity(m)
    p = 5
    while True:
        p += 2
        if any(p % q == 0 for q in range(3, math.isqrt(p) + 1, 2)):
            continue
        if not _usable(cm, p) or scale % p == 0:
            continue
        r = sqrt_mod_prime(m, p)
        z = _zeta_sq_mod_p(edges, cm, p, scale * r % p)
        images = [(rt, (f.a + f.b * r) * pow(f.c, -1, p) % p) for rt in candidates for f in [rt.element(m)]]
        if len({v for _, v in images}) != len(images):
            continue
        hits = [rt for rt, v in images if v == z]
        if len(hits) != 1:
            raise ArithmeticError("unit with zero valuations is not a root of unity")
        return hits[0]


def dehn_invariant_is_zero(
    edges: Sequence[int],
    filter_primes: Sequence[int] = DEFAULT_FILTER_PRIMES,
    method: str = "auto",
) -> DehnVerdict:
    """Decide whether an integer-edge tetrahedron has Dehn invariant zero.

    ``filter_primes`` run the mod-p filter first (pass ``()`` to skip it); a
    rejection there is final.  ``method`` is ``"auto"``, ``"product"`` or
    ``"valuation"``.
    """
    edges, cm = _require(edges)
    trace = []
    for p in filter_primes:
        outcome = modp_filter(edges, p, cm)
        trace.append((p, outcome))
        if outcome is FilterOutcome.REJECTED_NOT_ZERO:
            return DehnVerdict(False, None, None, trace, "filter")

    zs = z_squared_all(edges, cm)
    m = zs[0].m
    if method == "auto":
        method = "product" if _product_bits(zs, edges) <= PRODUCT_BIT_LIMIT else "valuation"
    if method == "product":
        zeta = QuadFieldElem.one(m)
        for z, e in zip(zs, edges):
            zeta = zeta * z**e
        root = classify_root_of_unity(zeta)
        return DehnVerdict(root is not None, zeta, root, trace, "product")
    if method == "valuation":
        vm = valuation_matrix(edges)
        if any(vm.combination(edges)):
            return DehnVerdict(False, None, None, trace, "valuation")
        root = _identify_root(edges, cm, m)
        return DehnVerdict(True, root.element(m), root, trace, "valuation")
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class NumericDehnCheck:
    ratio: mpmath.mpf  # sum e_ij alpha_ij / pi
    nearest: Fraction
    residual: mpmath.mpf
    is_zero: bool


def numeric_dehn_check(edges: Sequence, dps: int = 60, max_denominator: int = 10**4) -> NumericDehnCheck:
    """Independent floating check: is ``sum e_ij alpha_ij / pi`` a small-denominator rational?"""
    edges = tuple(Fraction(e) for e in edges)
    with mpmath.workdps(dps + 10):
        angles = dihedral_trig(edges).angles(dps + 10)
        ratio = mpmath.fsum(mpmath.mpf(e.numerator) / e.denominator * a for e, a in zip(edges, angles)) / mpmath.pi
        nearest = Fraction(mpmath.nstr(ratio, dps + 5)).limit_denominator(max_denominator)
        residual = abs(ratio - mpmath.mpf(nearest.numerator) / nearest.denominator)
        tol = mpmath.mpf(10) ** (-(dps - 15))
        return NumericDehnCheck(+ratio, nearest, +residual, bool(residual < tol))
