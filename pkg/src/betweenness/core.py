"""Betweenness structures on the point set ``0..n-1``.

Every 3-subset of points is stored at its colexicographic rank and carries
either the index of its middle point (collinear triple) or ``TRIANGLE``.
Degenerate triples are never stored, so reflexivity, symmetry and
trichotomy hold by construction; only the four relations property has to
be checked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from ._guard import check_guard

TRIANGLE = -1
MAX_POINTS = 12


class FormatError(ValueError):
    """Malformed text input for one of the file formats."""


def triple_rank(i: int, j: int, k: int) -> int:
    """Colex rank of the 3-subset ``{i, j, k}`` (any argument order)."""
    i, j, k = sorted((i, j, k))
    if i == j or j == k:
        raise ValueError(f"degenerate triple {(i, j, k)}")
    return comb(k, 3) + comb(j, 2) + i


@lru_cache(maxsize=None)
def all_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """Sorted triples of ``0..n-1`` listed by colex rank."""
    out = [(i, j, k) for k in range(n) for j in range(k) for i in range(j)]
    return tuple(out)


@lru_cache(maxsize=None)
def rank_table(n: int) -> dict[tuple[int, int, int], int]:
    return {t: r for r, t in enumerate(all_triples(n))}


def _rank(n: int, i: int, j: int, k: int) -> int:
    return rank_table(n)[tuple(sorted((i, j, k)))]


@dataclass(frozen=True)
class BetweennessStructure:
    """Total assignment of a state to every 3-subset of ``n`` points.

    ``mids[r]`` is the middle point of the triple of colex rank ``r``, or
    ``TRIANGLE``.
    """

    n: int
    mids: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_POINTS:
            raise ValueError(f"n must be in 1..{MAX_POINTS}, got {self.n}")
        if len(self.mids) != comb(self.n, 3):
            raise ValueError("state sequence length must be C(n, 3)")
        for t, m in zip(all_triples(self.n), self.mids):
            if m != TRIANGLE and m not in t:
                raise ValueError(f"middle {m} is not a point of triple {t}")

    @classmethod
    def from_middles(cls, n: int, middles: dict) -> "BetweennessStructure":
        """Build from ``{(i, j, k): middle}``; unlisted triples are triangles."""
        mids = [TRIANGLE] * comb(n, 3)
        for t, m in middles.items():
            r = _rank(n, *t)
            if mids[r] != TRIANGLE and mids[r] != m:
                raise ValueError(f"conflicting middles for triple {tuple(sorted(t))}")
            mids[r] = m
        return cls(n, tuple(mids))

    def middle(self, i: int, j: int, k: int) -> int:
        return self.mids[_rank(self.n, i, j, k)]

    def between(self, x: int, y: int, z: int) -> bool:
        """True iff ``(x y z)``: ``y`` lies between ``x`` and ``z``."""
        if len({x, y, z}) < 3:
            return x == y or y == z
        return self.middle(x, y, z) == y

    def triangles(self) -> list[tuple[int, int, int]]:
        return [t for t, m in zip(all_triples(self.n), self.mids) if m == TRIANGLE]

    def collinear(self) -> list[tuple[tuple[int, int, int], int]]:
        return [(t, m) for t, m in zip(all_triples(self.n), self.mids) if m != TRIANGLE]

    def relabel(self, perm: Sequence[int]) -> "BetweennessStructure":
        """Image under the point map ``p -> perm[p]``."""
        mids = [TRIANGLE] * len(self.mids)
        table = rank_table(self.n)
        for (i, j, k), m in zip(all_triples(self.n), self.mids):
            r = table[tuple(sorted((perm[i], perm[j], perm[k])))]
            mids[r] = TRIANGLE if m == TRIANGLE else perm[m]
        return BetweennessStructure(self.n, tuple(mids))


def ordered_structure(order: Sequence[int]) -> BetweennessStructure:
    """The structure ``[x_1, ..., x_n]`` induced by a path through ``order``."""
    n = len(order)
    pos = {p: i for i, p in enumerate(order)}
    if sorted(pos) != list(range(n)):
        raise ValueError("order must be a permutation of 0..n-1")
    mids = tuple(sorted(t, key=pos.__getitem__)[1] for t in all_triples(n))
    return BetweennessStructure(n, mids)


def frp_violations(b: BetweennessStructure, limit: int | None = None):
    """Ordered 4-tuples ``(x, y, z, w)`` where the four relations property fails."""
    bad = []
    for x, y, z, w in itertools.permutations(range(b.n), 4):
        if b.between(x, y, z) and b.between(x, w, y):
            if not (b.between(x, w, z) and b.between(w, y, z)):
                bad.append((x, y, z, w))
                if limit is not None and len(bad) >= limit:
                    break
    return bad


def check_frp(b: BetweennessStructure) -> bool:
    """True iff the structure satisfies the four relations property."""
    return not frp_violations(b, limit=1)


def cosize(b: BetweennessStructure) -> int:
    return sum(1 for m in b.mids if m == TRIANGLE)


def size(b: BetweennessStructure) -> int:
    return len(b.mids) - cosize(b)


def triangle_degree(b: BetweennessStructure, x: int) -> int:
    if not 0 <= x < b.n:
        raise ValueError(f"point {x} out of range")
    return sum(1 for t in b.triangles() if x in t)


def middle_degree(b: BetweennessStructure, x: int) -> int:
    """Number of collinear triples having ``x`` as middle."""
    return sum(1 for m in b.mids if m == x)


def restrict(b: BetweennessStructure, points: Iterable[int]) -> BetweennessStructure:
    """Substructure on ``points``, relabeled ``0..|Y|-1`` in increasing order."""
    ys = sorted(set(points))
    if not ys:
        raise ValueError("cannot restrict to an empty point set")
    if ys[0] < 0 or ys[-1] >= b.n:
        raise ValueError("restriction set out of range")
    new = {p: i for i, p in enumerate(ys)}
    mids = []
    for i, j, k in all_triples(len(ys)):
        m = b.middle(ys[i], ys[j], ys[k])
        mids.append(TRIANGLE if m == TRIANGLE else new[m])
    return BetweennessStructure(len(ys), tuple(mids))


def delete_point(b: BetweennessStructure, x: int) -> BetweennessStructure:
    return restrict(b, (p for p in range(b.n) if p != x))


def is_extension(b1: BetweennessStructure, b2: BetweennessStructure) -> bool:
    """True iff every collinear triple of ``b2`` has the same middle in ``b1``."""
    if b1.n != b2.n:
        raise ValueError("structures must have the same order")
    return all(m2 == TRIANGLE or m1 == m2 for m1, m2 in zip(b1.mids, b2.mids))


def is_linear(b: BetweennessStructure) -> bool:
    return TRIANGLE not in b.mids


def is_ordered(b: BetweennessStructure) -> tuple[int, ...] | None:
    """An ordering inducing exactly ``b``, or None.

    Ordered structures are linear and their adjacency graph is the path, so
    only the two traversals of that path are candidates.  The traversal
    starting at the smaller endpoint is returned.
    """
    if not is_linear(b):
        return None
    if b.n <= 2:
        return tuple(range(b.n))
    adj = {p: [] for p in range(b.n)}
    for x, z in itertools.combinations(range(b.n), 2):
        if not any(b.between(x, y, z) for y in range(b.n) if y not in (x, z)):
            adj[x].append(z)
            adj[z].append(x)
    ends = [p for p in adj if len(adj[p]) == 1]
    if len(ends) != 2 or any(len(v) > 2 for v in adj.values()):
        return None
    order = [min(ends)]
    prev = None
    while len(order) < b.n:
        nxt = [q for q in adj[order[-1]] if q != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    order = tuple(order)
    return order if ordered_structure(order) == b else None


def is_cyclic_quad(b: BetweennessStructure, quad: Sequence[int]) -> bool:
    """Whether the 4 points induce the 4-cycle structure.

    Closed form: all four triples collinear and every point is the middle
    of exactly one of them.
    """
    ms = [b.middle(*t) for t in itertools.combinations(quad, 3)]
    return TRIANGLE not in ms and len(set(ms)) == 4


def find_cyclic_lines(b: BetweennessStructure) -> list[tuple[int, int, int, int]]:
    return [q for q in itertools.combinations(range(b.n), 4) if is_cyclic_quad(b, q)]


def is_regular(b: BetweennessStructure) -> bool:
    return not any(is_cyclic_quad(b, q) for q in itertools.combinations(range(b.n), 4))


def is_orderable(b: BetweennessStructure) -> tuple[int, ...] | None:
    """An ordering whose ordered structure extends ``b``, or None.

    Depth-first over permutations; a prefix is cut as soon as some collinear
    triple can no longer have its middle strictly between its ends.
    """
    check_guard(b.n, 10, "is_orderable")
    n = b.n
    # (middle, end, end) for every collinear triple
    by_point: dict[int, list[tuple[int, int, int]]] = {p: [] for p in range(n)}
    for (i, j, k), m in b.collinear():
        a, c = [p for p in (i, j, k) if p != m]
        rec = (m, a, c)
        for p in (i, j, k):
            by_point[p].append(rec)

    placed = [False] * n
    order: list[int] = []

    def ok(p: int) -> bool:
        for m, a, c in by_point[p]:
            if p == m:
                # exactly one end must precede the middle
                if placed[a] == placed[c]:
                    return False
            else:
                other = c if p == a else a
                if placed[other] != placed[m]:
                    return False
        return True

    def rec() -> bool:
        if len(order) == n:
            return True
        for p in range(n):
            if placed[p] or not ok(p):
                continue
            placed[p] = True
            order.append(p)
            if rec():
                return True
            order.pop()
            placed[p] = False
        return False

    return tuple(order) if rec() else None


# ---------------------------------------------------------------- .bws text


def dumps_bws(b: BetweennessStructure) -> str:
    lines = [f"n {b.n}"]
    for (i, j, k), m in b.collinear():
        lines.append(f"c {i} {j} {k} {m}")
    return "\n".join(lines) + "\n"


def loads_bws(text: str) -> BetweennessStructure:
    n = None
    middles: dict[tuple[int, int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "n" or len(parts) != 2:
                    raise FormatError("first line must be 'n <count>'")
                n = int(parts[1])
                continue
            if parts[0] != "c" or len(parts) != 5:
                raise FormatError(f"expected 'c i j k m', got {line!r}")
            i, j, k, m = map(int, parts[1:])
        except (ValueError, IndexError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        t = tuple(sorted((i, j, k)))
        if len(set(t)) < 3 or not all(0 <= p < n for p in t):
            raise FormatError(f"line {lineno}: bad triple {t}")
        if m not in t:
            raise FormatError(f"line {lineno}: middle {m} not in triple {t}")
        if t in middles:
            raise FormatError(f"line {lineno}: duplicate triple {t}")
        middles[t] = m
    if n is None:
        raise FormatError("empty input")
    try:
        return BetweennessStructure.from_middles(n, middles)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
