"""Cayley-Menger data, exact dihedral cosines and sines, and the z**2 field elements.

Edge tuples are always in the order ``(e12, e34, e13, e24, e14, e23)``.  The
Cayley-Menger matrix uses rows/columns 0..3 for vertices 1..4 and row 4 for
the border of ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .exact import QuadFieldElem, Rational, SqrtQuantity, interval_precision, squarefree_decompose

EDGE_LABELS = ("12", "34", "13", "24", "14", "23")
EDGE_VERTICES = ((1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3))
EDGE_INDEX = {pair: i for i, pair in enumerate(EDGE_VERTICES)}
EDGE_INDEX.update({(j, i): k for (i, j), k in list(EDGE_INDEX.items())})

# (complementary vertices k < l) for every edge position
OPPOSITE_VERTICES = tuple(tuple(sorted({1, 2, 3, 4} - set(e))) for e in EDGE_VERTICES)

# faces keyed by the vertex they omit
FACES = {4: (1, 2, 3), 3: (1, 2, 4), 2: (1, 3, 4), 1: (2, 3, 4)}

EdgeTuple = tuple  # six Fractions (or ints) in EDGE_VERTICES order


class DegenerateTetrahedron(ValueError):
    """Edge lengths do not bound a nondegenerate Euclidean tetrahedron."""


def edge_tuple(values: Sequence[Rational]) -> tuple[Fraction, ...]:
    """Validate six positive rational lengths and return them as Fractions."""
    if len(values) != 6:
        raise ValueError(f"expected 6 edge lengths, got {len(values)}")
    out = tuple(Fraction(v) for v in values)
    if any(v <= 0 for v in out):
        raise ValueError(f"edge lengths must be positive: {values}")
    return out


def _det(rows: list[list]) -> Fraction | int:
    """Bareiss elimination; exact for int or Fraction entries."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) else num / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cm_matrix(edges: Sequence[Rational]) -> list[list]:
    sq = {}
    for (i, j), e in zip(EDGE_VERTICES, edges):
        sq[i, j] = sq[j, i] = e * e
    m = [[0 if i == j else sq[i, j] for j in range(1, 5)] + [1] for i in range(1, 5)]
    m.append([1, 1, 1, 1, 0])
    return m


def _minor(m: list[list], row: int, col: int) -> list[list]:
    return [[x for j, x in enumerate(r) if j != col] for i, r in enumerate(m) if i != row]


def heron16(a: Rational, b: Rational, c: Rational) -> Fraction | int:
    """``16 * area**2`` of a triangle with sides a, b, c (negative if not realizable)."""
    return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)


def heron_factors(a: Rational, b: Rational, c: Rational) -> tuple:
    return (a + b + c, -a + b + c, a - b + c, a + b - c)


def face_edges(edges: Sequence[Rational], face: tuple[int, int, int]) -> tuple:
    i, j, k = face
    return edges[EDGE_INDEX[i, j]], edges[EDGE_INDEX[j, k]], edges[EDGE_INDEX[i, k]]


@dataclass(frozen=True)
class CayleyMengerData:
    """Determinant and minors of the Cayley-Menger matrix.

    ``face_minors[l]`` is the face minor for the face omitting vertex ``l``,
    stored with the sign that makes it ``16 * area**2`` (the raw principal
    minor is its negative).  ``edge_minors`` follow the edge order and carry
    the ``(-1)**(k+l)`` sign of the ``(k, l)`` minor, ``{i, j, k, l} = {1..4}``.
    """

    D: Fraction
    face_minors: dict
    edge_minors: tuple

    def faces_at(self, index: int) -> tuple:
        """The two face minors ``(D_ijk, D_ijl)`` adjacent to edge ``index``."""
        k, l = OPPOSITE_VERTICES[index]
        return self.face_minors[l], self.face_minors[k]

    def face_product(self, index: int):
        a, b = self.faces_at(index)
        return a * b


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def cayley_menger(edges: Sequence[Rational]) -> CayleyMengerData:
    edges = tuple(_normalize(e) for e in edges)
    m = cm_matrix(edges)
    D = _det(m)
    faces = {l: heron16(*face_edges(edges, f)) for l, f in FACES.items()}
    minors = []
    for k, l in OPPOSITE_VERTICES:
        minors.append((-1) ** (k + l) * _det(_minor(m, k - 1, l - 1)))
    return CayleyMengerData(D, faces, tuple(minors))


def is_nondegenerate(edges: Sequence[Rational]) -> bool:
    """Strict triangle inequality on all four faces and positive determinant."""
    if any(e <= 0 for e in edges):
        return False
    for face in FACES.values():
        a, b, c = face_edges(edges, face)
        if not (a < b + c and b < a + c and c < a + b):
            return False
    return _det(cm_matrix(tuple(_normalize(e) for e in edges))) > 0


def volume_squared(edges: Sequence[Rational]) -> Fraction:
    D = cayley_menger(edges).D
    if D < 0:
        raise DegenerateTetrahedron(f"negative Cayley-Menger determinant {D}: not realizable")
    return Fraction(D, 288)


def _require(edges) -> CayleyMengerData:
    if not is_nondegenerate(edges):
        raise DegenerateTetrahedron(f"degenerate or non-realizable edge tuple {tuple(edges)}")
    return cayley_menger(edges)


def _face_factors(edges, l) -> tuple:
    return heron_factors(*face_edges(edges, FACES[l]))


@dataclass(frozen=True)
class AngleData:
    """Exact cosines and sines per edge plus numeric angles for branch checks."""

    cos: tuple
    sin: tuple
    dps: int = 50

    def angles(self, dps: int | None = None) -> tuple:
        dps = dps or self.dps
        with mpmath.workdps(dps):
            return tuple(+mpmath.atan2(s.to_mpf(), c.to_mpf()) for c, s in zip(self.cos, self.sin))

    def angle_intervals(self, dps: int) -> tuple:
        with interval_precision(dps) as iv:
            return tuple(iv.atan2(s.to_interval(), c.to_interval()) for c, s in zip(self.cos, self.sin))


def dihedral_trig(edges: Sequence[Rational], dps: int = 50) -> AngleData:
    """Exact ``cos = D_ij / sqrt(D_ijk D_ijl)`` and ``sin = e_ij sqrt(2D) / sqrt(D_ijk D_ijl)``."""
    edges = tuple(_normalize(e) for e in edges)
    cm = _require(edges)
    sqrt_2d = SqrtQuantity.sqrt(2 * Fraction(cm.D))
    cos, sin = [], []
    for idx, e in enumerate(edges):
        k, l = OPPOSITE_VERTICES[idx]
        root = SqrtQuantity.sqrt_product(_face_factors(edges, l) + _face_factors(edges, k))
        inv_root = SqrtQuantity(Fraction(1), 1) / root
        cos.append(inv_root * Fraction(cm.edge_minors[idx]))
        sin.append(inv_root * sqrt_2d * Fraction(e))
    return AngleData(tuple(cos), tuple(sin), dps)


@dataclass(frozen=True)
class QuadraticData:
    """``sqrt(-2D) = scale * sqrt(m)`` with ``m`` squarefree (negative)."""

    m: int
    scale: Fraction


def quadratic_data(D: Rational) -> QuadraticData:
    q = -2 * Fraction(D)
    if q >= 0:
        raise DegenerateTetrahedron("-2D must be negative")
    # sqrt(-n/d) = sqrt(-(n d)) / d
    s, r = squarefree_decompose(-q.numerator * q.denominator)
    return QuadraticData(-r, Fraction(s, q.denominator))


def z_squared_all(edges: Sequence[Rational], cm: CayleyMengerData | None = None) -> tuple:
    """All six ``z_ij**2 = (2 D_ij**2 - P + 2 e D_ij sqrt(-2D)) / P`` with ``P = D_ijk D_ijl``."""
    edges = tuple(_normalize(e) for e in edges)
    cm = cm or _require(edges)
    qd = quadratic_data(cm.D)
    out = []
    for idx, e in enumerate(edges):
        P = Fraction(cm.face_product(idx))
        dij = cm.edge_minors[idx]
        out.append(QuadFieldElem.from_rationals((2 * dij * dij - P) / P, 2 * e * dij * qd.scale / P, qd.m))
    return tuple(out)


def z_squared(edges: Sequence[Rational], edge_index) -> QuadFieldElem:
    if isinstance(edge_index, str):
        edge_index = EDGE_LABELS.index(edge_index)
    return z_squared_all(edges)[edge_index]
