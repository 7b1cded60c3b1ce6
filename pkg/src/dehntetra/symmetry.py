"""Vertex relabelings (S4), Regge moves, orbits and canonical forms."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .geometry import EDGE_INDEX, EDGE_VERTICES

# the three opposite pairs as positions in the edge tuple
PAIRS = ((0, 1), (2, 3), (4, 5))
ORBIT_GUARD = 10**5


class ReggeInapplicable(ValueError):
    """A Regge move would produce a non-positive length."""


class OrbitOverflow(RuntimeError):
    pass


@dataclass(frozen=True)
class VertexPermutation:
    """Vertex relabeling ``v -> images[v - 1]``."""

    images: tuple[int, int, int, int]

    @property
    def edge_map(self) -> tuple[int, ...]:
        """``edge_map[k]`` is the position that edge ``k`` moves to."""
        return _edge_map(self.images)

    @classmethod
    def all(cls) -> list["VertexPermutation"]:
        return [cls(p) for p in itertools.permutations((1, 2, 3, 4))]


@lru_cache(maxsize=None)
def _edge_map(images) -> tuple[int, ...]:
    return tuple(EDGE_INDEX[images[i - 1], images[j - 1]] for i, j in EDGE_VERTICES)


@lru_cache(maxsize=None)
def _gather_maps() -> tuple[tuple[int, ...], ...]:
    # new[edge_map[k]] = old[k]  <=>  new[q] = old[inverse[q]]
    out = []
    for images in itertools.permutations((1, 2, 3, 4)):
        em = _edge_map(images)
        inv = [0] * 6
        for k, q in enumerate(em):
            inv[q] = k
        out.append(tuple(inv))
    return tuple(out)


def apply_s4(edges: Sequence, g: VertexPermutation) -> tuple:
    out = [None] * 6
    for k, q in enumerate(g.edge_map):
        out[q] = edges[k]
    return tuple(out)


def s4_images(edges: Sequence) -> list[tuple]:
    return [tuple(edges[i] for i in inv) for inv in _gather_maps()]


def canonical_form(edges: Sequence) -> tuple:
    """Lexicographically smallest tuple among the 24 relabelings."""
    return min(s4_images(edges))


def is_canonical(edges: Sequence) -> bool:
    t = tuple(edges)
    return all(tuple(t[i] for i in inv) >= t for inv in _gather_maps())


def _pair(move: int) -> tuple[int, int]:
    if move not in (1, 2, 3):
        raise ValueError(f"Regge move must fix pair 1, 2 or 3, got {move}")
    return PAIRS[move - 1]


def regge(edges: Sequence, move: int) -> tuple:
    """Fix the ``move``-th opposite pair; replace the rest by ``s - x`` with s their half-sum."""
    fixed = _pair(move)
    others = [i for i in range(6) if i not in fixed]
    s = Fraction(sum(Fraction(edges[i]) for i in others), 2)
    out = list(edges)
    for i in others:
        out[i] = s - Fraction(edges[i])
        if out[i] <= 0:
            raise ReggeInapplicable(f"Regge move {move} gives non-positive length on {tuple(edges)}")
    return tuple(_tidy(x) for x in out)


def regge_angles(angles: Sequence, move: int) -> tuple:
    fixed = _pair(move)
    others = [i for i in range(6) if i not in fixed]
    sigma = sum(angles[i] for i in others) / 2
    return tuple(angles[i] if i in fixed else sigma - angles[i] for i in range(6))


def _tidy(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def opposite_sum_multiset(edges: Sequence) -> tuple:
    """The three opposite-pair sums, sorted."""
    return tuple(sorted(_tidy(Fraction(edges[i]) + Fraction(edges[j])) for i, j in PAIRS))


def _regge_neighbours(t: tuple):
    for move in (1, 2, 3):
        try:
            yield regge(t, move)
        except ReggeInapplicable:
            continue


def orbit(edges: Sequence, group: str = "both", up_to_s4: bool = True, guard: int = ORBIT_GUARD) -> list[tuple]:
    """Orbit of an edge tuple under ``"s4"``, ``"regge"`` or ``"both"``, sorted.

    With ``up_to_s4`` every element is replaced by its canonical form.
    """
    start = tuple(_tidy(e) for e in edges)
    if group == "s4":
        members = set(s4_images(start))
    elif group in ("regge", "both"):
        members = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            nxt = list(_regge_neighbours(cur))
            if group == "both":
                nxt += s4_images(cur)
            for t in nxt:
                if t not in members:
                    members.add(t)
                    if len(members) > guard:
                        raise OrbitOverflow(f"orbit of {start} exceeds {guard} states")
                    queue.append(t)
    else:
        raise ValueError(f"unknown group {group!r}")
    if up_to_s4:
        members = {canonical_form(t) for t in members}
    return sorted(members)
