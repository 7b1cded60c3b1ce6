"""The Case-5 edge-length bound and Hadamard determinant bounds."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import mpmath

from .exact import SqrtQuantity
from .geometry import FACES, face_edges, heron16, is_nondegenerate

CASE5_PRIMES = (2, 3, 5, 7, 11)
BISECTION_RANGE = (10**6, 10**16)


@dataclass(frozen=True)
class BoundReport:
    constant: mpmath.mpf  # 32 / (ln 2 ln 3 ln 5 ln 7 ln 11)
    fixed_point: mpmath.mpf
    certified_integer_bound: int
    precision: int

    def as_dict(self) -> dict:
        return {
            "constant": mpmath.nstr(self.constant, 20),
            "fixed_point": mpmath.nstr(self.fixed_point, 20),
            "certified_integer_bound": self.certified_integer_bound,
            "precision": self.precision,
        }


def case5_constant():
    return 32 / mpmath.fprod(mpmath.log(p) for p in CASE5_PRIMES)


def case5_rhs(n):
    """``C * ln(9 n**8)**5``: the bound an edge length n must satisfy."""
    return case5_constant() * mpmath.log(9 * mpmath.mpf(n) ** 8) ** 5


def case5_bound(precision: int = 50) -> BoundReport:
    """Solve ``N = C ln(9 N**8)**5`` by bisection on [1e6, 1e16]."""
    if precision < 20:
        raise ValueError("precision must be at least 20 digits")
    with mpmath.workdps(precision):
        lo, hi = mpmath.mpf(BISECTION_RANGE[0]), mpmath.mpf(BISECTION_RANGE[1])
        if not (case5_rhs(lo) > lo and case5_rhs(hi) < hi):
            raise ArithmeticError("no sign change of rhs(N) - N on the bisection range")
        tol = mpmath.mpf(10) ** (-(precision // 2))
        while hi - lo > tol * hi:
            mid = (lo + hi) / 2
            if case5_rhs(mid) > mid:
                lo = mid
            else:
                hi = mid
        n_star = (lo + hi) / 2
        # rhs(N) - N is decreasing past the crossing, so every integer above
        # floor(N*) violates the inequality
        bound = int(mpmath.floor(n_star))
        if not (case5_rhs(bound) >= bound and case5_rhs(bound + 1) < bound + 1):
            raise ArithmeticError("fixed point not certified at this precision")
        return BoundReport(+case5_constant(), +n_star, bound, precision)


def exact_det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def hadamard_bound(matrix: Sequence[Sequence]) -> tuple[SqrtQuantity, Fraction]:
    """``((sqrt(n) a)**n, prod of row l1 norms)`` with ``a`` the largest |entry|."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    a = max(abs(Fraction(x)) for row in matrix for x in row)
    # (sqrt(n) a)^n = a^n n^(n//2) sqrt(n)^(n % 2)
    entrywise = SqrtQuantity.make(a**n * n ** (n // 2), n if n % 2 else 1)
    rownorm = Fraction(1)
    for row in matrix:
        rownorm *= sum(abs(Fraction(x)) for x in row)
    return entrywise, rownorm


def face_minor_bound_holds(edges: Sequence[int], n: int) -> bool:
    return all(abs(heron16(*face_edges(edges, f))) <= 3 * n**4 for f in FACES.values())


def minor_bound_check(n: int, samples: int = 1000, seed: int = 0, valid_only: bool = False) -> bool:
    """Random tuples with largest edge ``n`` all satisfy ``|D_ijk| <= 3 n**4``."""
    if n < 3:
        raise ValueError("N must be at least 3")
    rng = random.Random(seed)
    done = 0
    while done < samples:
        edges = [rng.randint(1, n) for _ in range(6)]
        edges[rng.randrange(6)] = n
        if valid_only and not is_nondegenerate(edges):
            continue
        done += 1
        if not face_minor_bound_holds(edges, n):
            return False
    return True


def minor_bound_exhaustive(n: int) -> bool:
    """Every nondegenerate tuple with entries <= n satisfies the bound."""
    for edges in product(range(1, n + 1), repeat=6):
        if is_nondegenerate(edges) and not face_minor_bound_holds(edges, max(edges)):
            return False
    return True
