"""p-adic valuations of the z**2 elements and the dimension of the angle span.

For a split prime p of K = Q(sqrt(m)) the two primes above p correspond to
the two square roots of m in Z_p.  Fixing one root r (a *branch*), the
valuation of ``(a + b*sqrt(m)) / c`` at that prime is ``v_p(a + b*r) - v_p(c)``.
Ramified and inert primes give zero on norm-one elements, so only split
primes dividing a face minor can produce nonzero rows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import QuadFieldElem
from .factor import factor, factor_product, valuation
from .geometry import (
    FACES,
    DegenerateTetrahedron,
    cayley_menger,
    face_edges,
    heron_factors,
    is_nondegenerate,
    z_squared_all,
)

__all__ = [
    "Splitting",
    "SplitPrimeBranch",
    "ValuationMatrix",
    "angle_span_dimension",
    "factor",
    "hensel_sqrt",
    "integer_rank",
    "legendre",
    "sqrt_mod_prime",
    "splitting_type",
    "valuation_at",
    "valuation_matrix",
]


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(a: int, p: int) -> int:
    """Tonelli-Shanks; returns the smaller of the two roots."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def splitting_type(p: int, m: int) -> Splitting:
    """How the prime p decomposes in Q(sqrt(m)), m squarefree."""
    if p == 2:
        if m % 4 in (2, 3):
            return Splitting.RAMIFIED
        return Splitting.SPLIT if m % 8 == 1 else Splitting.INERT
    if m % p == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if legendre(m, p) == 1 else Splitting.INERT


@dataclass(frozen=True)
class SplitPrimeBranch:
    """A square root ``root`` of ``m`` modulo ``p**precision``.

    The two branches ``root`` and ``-root`` are the two embeddings of
    Q(sqrt(m)) into Q_p.  For p = 2 the root is only determined modulo
    ``2**(precision - 1)``.
    """

    p: int
    m: int
    root: int
    precision: int

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def base(self) -> int:
        return self.root % (4 if self.p == 2 else self.p)

    def lift(self, k: int) -> "SplitPrimeBranch":
        if k <= self.precision:
            return self
        return hensel_sqrt(self.m, self.p, k, base=self.base)

    def conjugate(self) -> "SplitPrimeBranch":
        return SplitPrimeBranch(self.p, self.m, (-self.root) % self.modulus, self.precision)


def _sqrt_2adic(m: int, k: int, base: int) -> int:
    # m = 1 mod 8; fix r mod 4 and adjust bit by bit so r*r = m mod 2**j
    r = base
    for j in range(3, k + 1):
        if (r * r - m) % (1 << j):
            r += 1 << (j - 2)
    return r % (1 << k)


def hensel_sqrt(m: int, p: int, k: int, base: int | None = None) -> SplitPrimeBranch:
    """Lift a square root of m from modulo p to modulo p**k.

    ``base`` picks the branch by its residue mod p (mod 4 when p = 2);
    by default the smaller residue is used.
    """
    if k < 1:
        raise ValueError("precision must be at least 1")
    if splitting_type(p, m) is not Splitting.SPLIT:
        raise ValueError(f"{m} has no square root in Z_{p} ({splitting_type(p, m).value})")
    if p == 2:
        base = 1 if base is None else base % 4
        if base not in (1, 3):
            raise ValueError("2-adic branch base must be 1 or 3 mod 4")
        return SplitPrimeBranch(2, m, _sqrt_2adic(m, max(k, 3), base), max(k, 3))
    r0 = sqrt_mod_prime(m, p)
    if base is not None:
        if (base * base - m) % p:
            raise ValueError(f"{base}**2 is not {m} mod {p}")
        r0 = base % p
    r, mod = r0, p
    for _ in range(1, k):
        mod *= p
        # Newton step: r <- r - (r^2 - m) / (2r)
        r = (r - (r * r - m) * pow(2 * r, -1, mod)) % mod
    return SplitPrimeBranch(p, m, r % p**k, k)


def valuation_at(x: QuadFieldElem, branch: SplitPrimeBranch) -> int:
    """Valuation of x at the prime above p selected by the branch."""
    if x.a == 0 and x.b == 0:
        raise ValueError("valuation of zero is infinite")
    if x.m != branch.m and x.b != 0:
        raise ValueError("element and branch live in different fields")
    p = branch.p
    norm_num = x.a * x.a - x.m * x.b * x.b
    # both conjugate valuations of a + b sqrt(m) are >= 0 and sum to v_p(norm)
    need = valuation(norm_num, p) + 2
    branch = branch.lift(need)
    num = (x.a + x.b * branch.root) % branch.modulus
    v_num = valuation(num, p) if num else branch.precision
    return v_num - valuation(x.c, p)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pr = a[rank]
        for i in range(rank + 1, len(a)):
            ri = a[i]
            a[i] = [(ri[j] * pr[col] - pr[j] * ri[col]) // prev for j in range(ncols)]
        prev = pr[col]
        rank += 1
        if rank == len(a):
            break
    return rank


@dataclass(frozen=True)
class ValuationMatrix:
    """One row per candidate split prime; columns in edge order."""

    rows: tuple  # of (SplitPrimeBranch, tuple[int, ...])

    @property
    def primes(self) -> list[int]:
        return [b.p for b, _ in self.rows]

    @property
    def matrix(self) -> list[list[int]]:
        return [list(v) for _, v in self.rows]

    def row(self, p: int) -> tuple:
        for b, v in self.rows:
            if b.p == p:
                return v
        raise KeyError(p)

    def rank(self) -> int:
        return integer_rank(self.matrix)

    def combination(self, weights: Sequence[int]) -> list[int]:
        """``A @ weights``: the valuations of ``prod z_i**(2*w_i)`` at each row prime."""
        return [sum(w * x for w, x in zip(weights, v)) for _, v in self.rows]


def _integer_scaled(edges) -> tuple[int, ...]:
    fr = [Fraction(e) for e in edges]
    lcm = 1
    for f in fr:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    return tuple(int(f * lcm) for f in fr)


def candidate_primes(edges: Sequence[int]) -> list[int]:
    """Primes dividing some face minor, via the four linear Heron factors of each face."""
    parts = []
    for face in FACES.values():
        parts.extend(heron_factors(*face_edges(edges, face)))
    return [p for p, _ in factor_product(parts)]


def valuation_matrix(edges: Sequence, branches: dict[int, int] | None = None) -> ValuationMatrix:
    """Valuation rows of the six z**2 at every split prime dividing a face minor.

    ``branches`` optionally maps a prime to the base residue of its branch.
    Rational edges are first scaled to integers (angles are scale invariant).
    """
    edges = _integer_scaled(edges)
    if not is_nondegenerate(edges):
        raise DegenerateTetrahedron(f"degenerate or non-realizable edge tuple {edges}")
    cm = cayley_menger(edges)
    zs = z_squared_all(edges, cm)
    m = zs[0].m
    branches = branches or {}
    rows = []
    for p in candidate_primes(edges):
        if splitting_type(p, m) is not Splitting.SPLIT:
            continue
        branch = hensel_sqrt(m, p, 1, base=branches.get(p))
        rows.append((branch, tuple(valuation_at(z, branch) for z in zs)))
    return ValuationMatrix(tuple(rows))


def angle_span_dimension(edges: Sequence) -> int:
    """Dimension of the Q-span of the dihedral angles in R/(Q pi)."""
    return valuation_matrix(edges).rank()
