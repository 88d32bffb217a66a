"""Triangle hypergraphs and star-shaped predicates on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from ._guard import check_guard
from .core import BetweennessStructure, FormatError
from .graphs import SimpleGraph

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class TriangleHypergraph:
    """3-uniform hypergraph on ``0..n-1``; edges are stored sorted."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"edge {e} is not a 3-subset")
            if t[0] < 0 or t[2] >= self.n:
                raise ValueError(f"edge {e} leaves the ground set 0..{self.n - 1}")
            norm.add(t)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def of(cls, n: int, edges: Iterable[Iterable[int]]) -> "TriangleHypergraph":
        return cls(n, frozenset(tuple(sorted(e)) for e in edges))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, x: int) -> int:
        return sum(1 for e in self.edges if x in e)

    def __len__(self) -> int:
        return len(self.edges)


def triangle_hypergraph(b: BetweennessStructure) -> TriangleHypergraph:
    return TriangleHypergraph(b.n, frozenset(b.triangles()))


def is_delta_star(h: TriangleHypergraph) -> frozenset[int] | None:
    """Common pairwise intersection of all edges, if every pair meets in it."""
    edges = h.sorted_edges()
    if not edges:
        raise ValueError("kernel of an edgeless hypergraph is undefined")
    if len(edges) == 1:
        return frozenset(edges[0])
    kernel = set(edges[0]) & set(edges[1])
    for e, f in itertools.combinations(edges, 2):
        if set(e) & set(f) != kernel:
            return None
    return frozenset(kernel)


def is_tight_star(h: TriangleHypergraph) -> tuple[int, int] | None:
    """Two-point kernel of a tight star; a lone edge reports its two smallest points."""
    edges = h.sorted_edges()
    if not edges:
        raise ValueError("kernel of an edgeless hypergraph is undefined")
    if len(edges) == 1:
        return edges[0][:2]
    k = is_delta_star(h)
    if k is None or len(k) != 2:
        return None
    a, b = sorted(k)
    return a, b


def tight_k_star_kernels(h: TriangleHypergraph, k: int) -> list[tuple[int, int]] | None:
    """At most ``k`` point pairs such that every edge contains one of them."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > 3:
        raise ValueError("tight k-star search is limited to k <= 3")
    check_guard(h.n, 10, "tight k-star search")
    edges = h.sorted_edges()

    def rec(chosen: list[tuple[int, int]]) -> list[tuple[int, int]] | None:
        for e in edges:
            if not any(a in e and b in e for a, b in chosen):
                break
        else:
            return list(chosen)
        if len(chosen) == k:
            return None
        # some kernel must lie inside the first uncovered edge
        for pair in itertools.combinations(e, 2):
            got = rec(chosen + [pair])
            if got is not None:
                return got
        return None

    return rec([])


def is_tight_k_star(h: TriangleHypergraph, k: int) -> bool:
    """Whether the edges are covered by ``k`` tight stars (overlaps allowed)."""
    return tight_k_star_kernels(h, k) is not None


def link_graph(h: TriangleHypergraph, y: int) -> SimpleGraph:
    """Edges ``T - {y}`` over triangles ``T`` through ``y``; labels are kept, ``y`` is isolated."""
    if not 0 <= y < h.n:
        raise ValueError(f"point {y} outside 0..{h.n - 1}")
    es = frozenset(tuple(p for p in e if p != y) for e in h.edges if y in e)
    return SimpleGraph(h.n, es)


# ------------------------------------------------------------ named hypergraphs

# points p, u, v, w, x, y, z -> 0..6
H1_TILDE = TriangleHypergraph.of(7, [(0, 3, 4), (0, 5, 6), (1, 3, 4), (2, 5, 6)])
# points p, q, u, v, x, y, z -> 0..6 (u, v isolated)
H2_TILDE = TriangleHypergraph.of(7, [(0, 4, 5), (1, 4, 5), (0, 5, 6), (1, 5, 6)])
# points p, q, u, v, x, y, z -> 0..6
H3_TILDE = TriangleHypergraph.of(7, [(2, 4, 5), (3, 4, 5), (0, 5, 6), (1, 5, 6)])

FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def fano_hypergraph() -> TriangleHypergraph:
    """All 3-subsets of the Fano plane's points except its seven lines."""
    lines = set(FANO_LINES)
    return TriangleHypergraph.of(7, [t for t in itertools.combinations(range(7), 3) if t not in lines])


NAMED = {"H1": H1_TILDE, "H2": H2_TILDE, "H3": H3_TILDE}


def named_hypergraph(name: str) -> TriangleHypergraph:
    key = name.strip().upper().replace("~", "").replace("TILDE", "").replace("_", "")
    if key == "FANO":
        return fano_hypergraph()
    if key in NAMED:
        return NAMED[key]
    raise KeyError(f"unknown hypergraph {name!r}; known: H1, H2, H3, fano")


# ------------------------------------------------------------ .th format

def dumps_th(h: TriangleHypergraph) -> str:
    lines = [f"n {h.n}"] + [f"t {i} {j} {k}" for i, j, k in h.sorted_edges()]
    return "\n".join(lines) + "\n"


def loads_th(text: str) -> TriangleHypergraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "n" or len(parts) != 2:
                    raise FormatError(f"line {lineno}: first line must be 'n <count>'")
                n = int(parts[1])
                continue
            if parts[0] != "t" or len(parts) != 4:
                raise FormatError(f"line {lineno}: expected 't i j k', got {line!r}")
            edges.append(tuple(int(p) for p in parts[1:]))
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise FormatError("empty input")
    if len(set(tuple(sorted(e)) for e in edges)) != len(edges):
        raise FormatError("duplicate edge")
    try:
        return TriangleHypergraph.of(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
