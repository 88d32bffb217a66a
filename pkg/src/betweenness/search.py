"""Backtracking over per-triple states with four-relations propagation.

A triple's domain is a 4-bit mask: bits 0..2 mean "the point at that
position of the sorted triple is the middle", bit 3 means triangle.  Every
ground instance of the four relations property over ordered 4-tuples is
compiled into clauses ``a & b -> c`` on (triple, value) literals and unit
propagated.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .core import TRIANGLE, BetweennessStructure, all_triples, rank_table

TRI = 3
FULL_MIDDLES = 0b0111
ALL = 0b1111
_POP = [bin(m).count("1") for m in range(16)]


class Rules:
    """Clause tables for one ``n`` (compiled once, cached)."""

    def __init__(self, n: int):
        self.n = n
        self.triples = all_triples(n)
        self.T = len(self.triples)
        table = rank_table(n)

        def lit(a, b, c, mid):
            t = tuple(sorted((a, b, c)))
            return table[t] * 4 + t.index(mid)

        clauses = set()
        for x, y, z, w in itertools.permutations(range(n), 4):
            a = lit(x, y, z, y)
            b = lit(x, w, y, w)
            pa, pb = min(a, b), max(a, b)
            clauses.add((pa, pb, lit(x, w, z, w)))
            clauses.add((pa, pb, lit(w, y, z, y)))
        self.clauses = sorted(clauses)
        nlit = 4 * self.T
        self.when_true: list[list[tuple[int, int]]] = [[] for _ in range(nlit)]
        self.when_false: list[list[tuple[int, int]]] = [[] for _ in range(nlit)]
        for a, b, c in self.clauses:
            self.when_true[a].append((b, c))
            self.when_true[b].append((a, c))
            self.when_false[c].append((a, b))
        # 4-point sets as tuples of triple ranks, per triple
        self.quads_of: list[list[tuple[int, ...]]] = [[] for _ in range(self.T)]
        for quad in itertools.combinations(range(n), 4):
            rs = tuple(table[t] for t in itertools.combinations(quad, 3))
            for r in rs:
                self.quads_of[r].append(rs)


@lru_cache(maxsize=None)
def rules(n: int) -> Rules:
    return Rules(n)


class Conflict(Exception):
    pass


class PartialStructure:
    """Domains for every triple plus an undo trail."""

    def __init__(self, n: int, domains: Iterable[int] | None = None, regular: bool = False):
        self.rules = rules(n)
        self.n = n
        self.dom = list(domains) if domains is not None else [ALL] * self.rules.T
        self.trail: list[tuple[int, int]] = []
        self.regular = regular
        self._queue: list[tuple[int, int, bool]] = []

    # -- state queries
    def decided(self, r: int) -> bool:
        return _POP[self.dom[r]] == 1

    def value(self, r: int) -> int | None:
        d = self.dom[r]
        return d.bit_length() - 1 if _POP[d] == 1 else None

    def is_true(self, lit: int) -> bool:
        return self.dom[lit >> 2] == 1 << (lit & 3)

    def is_false(self, lit: int) -> bool:
        return not self.dom[lit >> 2] & (1 << (lit & 3))

    def complete(self) -> bool:
        return all(_POP[d] == 1 for d in self.dom)

    def structure(self) -> BetweennessStructure:
        mids = []
        for t, d in zip(self.rules.triples, self.dom):
            v = d.bit_length() - 1
            mids.append(TRIANGLE if v == TRI else t[v])
        return BetweennessStructure(self.n, tuple(mids))

    # -- mutation
    def _set(self, r: int, new: int) -> None:
        old = self.dom[r]
        if new == old:
            return
        if new == 0:
            raise Conflict
        self.trail.append((r, old))
        self.dom[r] = new
        gone = old & ~new
        for v in range(4):
            if gone >> v & 1:
                self._queue.append((r, v, False))
        if _POP[new] == 1:
            self._queue.append((r, new.bit_length() - 1, True))

    def _remove(self, lit: int) -> None:
        r = lit >> 2
        self._set(r, self.dom[r] & ~(1 << (lit & 3)))

    def _fix(self, lit: int) -> None:
        r = lit >> 2
        bit = 1 << (lit & 3)
        if not self.dom[r] & bit:
            raise Conflict
        self._set(r, bit)

    def _propagate(self, start: int) -> None:
        rl = self.rules
        q = self._queue
        while q:
            r, v, fixed = q.pop()
            lit = r * 4 + v
            if fixed:
                if v != TRI:
                    for other, concl in rl.when_true[lit]:
                        if self.is_true(other):
                            self._fix(concl)
                        elif self.is_false(concl):
                            self._remove(other)
                if self.regular:
                    self._check_quads(r)
            else:
                for a, b in rl.when_false[lit]:
                    if self.is_true(a):
                        self._remove(b)
                    elif self.is_true(b):
                        self._remove(a)

    def _check_quads(self, r: int) -> None:
        trip = self.rules.triples
        for rs in self.rules.quads_of[r]:
            ms = set()
            for s in rs:
                d = self.dom[s]
                if _POP[d] != 1:
                    break
                v = d.bit_length() - 1
                if v == TRI:
                    break
                ms.add(trip[s][v])
            else:
                if len(ms) == 4:
                    raise Conflict

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        self._queue.clear()
        while len(self.trail) > mark:
            r, old = self.trail.pop()
            self.dom[r] = old

    def restrict(self, r: int, mask: int) -> bool:
        """Intersect a domain and propagate; False (state rolled back) on conflict."""
        m = self.mark()
        try:
            self._set(r, self.dom[r] & mask)
            self._propagate(m)
        except Conflict:
            self.undo(m)
            return False
        return True

    def initial_propagate(self) -> bool:
        """Propagate the consequences of the starting domains."""
        m = self.mark()
        for r, d in enumerate(self.dom):
            for v in range(4):
                if not d >> v & 1:
                    self._queue.append((r, v, False))
            if _POP[d] == 1:
                self._queue.append((r, d.bit_length() - 1, True))
            if d == 0:
                return False
        try:
            self._propagate(m)
        except Conflict:
            self.undo(m)
            return False
        return True

    def branch_triple(self) -> int | None:
        """Undecided triple with fewest surviving states, ties by colex rank."""
        best, best_pop = None, 5
        for r, d in enumerate(self.dom):
            p = _POP[d]
            if 1 < p < best_pop:
                best, best_pop = r, p
                if p == 2:
                    break
        return best


def solutions(
    ps: PartialStructure,
    accept: Callable[[BetweennessStructure], bool] | None = None,
) -> Iterator[BetweennessStructure]:
    """Every completion of ``ps`` satisfying the four relations property.

    ``ps`` must already be propagated; it is restored on exhaustion.
    """
    r = ps.branch_triple()
    if r is None:
        b = ps.structure()
        if accept is None or accept(b):
            yield b
        return
    d = ps.dom[r]
    for v in range(4):
        if not d >> v & 1:
            continue
        m = ps.mark()
        if ps.restrict(r, 1 << v):
            yield from solutions(ps, accept)
            ps.undo(m)


def fixed_triangle_domains(n: int, triangles: Iterable[Iterable[int]]) -> list[int]:
    """Domains forcing exactly ``triangles`` to be triangles."""
    table = rank_table(n)
    dom = [FULL_MIDDLES] * len(all_triples(n))
    for t in triangles:
        dom[table[tuple(sorted(t))]] = 1 << TRI
    return dom


def completions(
    n: int,
    triangles: Iterable[Iterable[int]],
    regular: bool = False,
    accept: Callable[[BetweennessStructure], bool] | None = None,
) -> Iterator[BetweennessStructure]:
    """All almost-metrizable structures whose triangle set is exactly ``triangles``."""
    ps = PartialStructure(n, fixed_triangle_domains(n, triangles), regular=regular)
    if not ps.initial_propagate():
        return
    yield from solutions(ps, accept)
