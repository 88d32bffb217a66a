"""Weighted graphs, exact shortest-path metrics and induced betweenness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import TRIANGLE, BetweennessStructure, FormatError, all_triples


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    def neighbors(self, p: int) -> list[int]:
        return sorted(q for e in self.edges if p in e for q in e if q != p)

    def is_connected(self) -> bool:
        return _connected(self.n, self.edges)

    def induced(self, points: Iterable[int]) -> "SimpleGraph":
        """Induced subgraph, relabeled ``0..|Y|-1`` in increasing order."""
        ys = sorted(set(points))
        new = {p: i for i, p in enumerate(ys)}
        es = frozenset((new[u], new[v]) for u, v in self.edges if u in new and v in new)
        return SimpleGraph(len(ys), es)


def _connected(n: int, edges) -> bool:
    if n == 0:
        return True
    adj = {p: set() for p in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        p = stack.pop()
        for q in adj[p] - seen:
            seen.add(q)
            stack.append(q)
    return len(seen) == n


@dataclass(frozen=True)
class WeightedGraph:
    """Connected simple graph with positive rational edge weights."""

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        seen = set()
        norm = []
        for u, v, w in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            w = Fraction(w)
            if w <= 0:
                raise ValueError(f"non-positive weight on edge {key}")
            seen.add(key)
            norm.append((key[0], key[1], w))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def unit(cls, n: int, edges: Iterable[tuple[int, int]]) -> "WeightedGraph":
        return cls(n, tuple((u, v, Fraction(1)) for u, v in edges))

    def is_connected(self) -> bool:
        return _connected(self.n, [(u, v) for u, v, _ in self.edges])

    def scaled(self, factor) -> "WeightedGraph":
        f = Fraction(factor)
        return WeightedGraph(self.n, tuple((u, v, w * f) for u, v, w in self.edges))


@dataclass(frozen=True)
class RationalMetric:
    """Symmetric distance matrix with exact rational entries."""

    d: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.d)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.d[x][y]

    def violations(self) -> list[str]:
        """Reasons the matrix is not a metric; empty when it is one."""
        n = self.n
        out = []
        for x in range(n):
            if len(self.d[x]) != n:
                return ["matrix is not square"]
            if self.d[x][x] != 0:
                out.append(f"d({x},{x}) != 0")
        for x, y in itertools.combinations(range(n), 2):
            if self.d[x][y] != self.d[y][x]:
                out.append(f"asymmetric at {(x, y)}")
            if self.d[x][y] <= 0:
                out.append(f"non-positive distance at {(x, y)}")
        for x, y, z in itertools.permutations(range(n), 3):
            if self.d[x][z] > self.d[x][y] + self.d[y][z]:
                out.append(f"triangle inequality fails for {(x, y, z)}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def scaled(self, factor) -> "RationalMetric":
        f = Fraction(factor)
        return RationalMetric(tuple(tuple(v * f for v in row) for row in self.d))


def apsp(g: WeightedGraph) -> RationalMetric:
    """Exact all-pairs shortest paths (Floyd-Warshall over rationals)."""
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    n = g.n
    d: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for p in range(n):
        d[p][p] = Fraction(0)
    for u, v, w in g.edges:
        d[u][v] = d[v][u] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                s = dik + dkj
                if di[j] is None or s < di[j]:
                    di[j] = s
    return RationalMetric(tuple(tuple(row) for row in d))


def induce(m: RationalMetric) -> BetweennessStructure:
    """Betweenness of a metric: ``y`` is between ``x`` and ``z`` iff d(x,z) = d(x,y) + d(y,z)."""
    d = m.d
    mids = []
    for i, j, k in all_triples(m.n):
        if d[i][k] == d[i][j] + d[j][k]:
            mids.append(j)
        elif d[j][k] == d[j][i] + d[i][k]:
            mids.append(i)
        elif d[i][j] == d[i][k] + d[k][j]:
            mids.append(k)
        else:
            mids.append(TRIANGLE)
    return BetweennessStructure(m.n, tuple(mids))


def induce_graph(g: WeightedGraph) -> BetweennessStructure:
    return induce(apsp(g))


def adjacency_graph(b: BetweennessStructure) -> SimpleGraph:
    """Pairs with no third point between them."""
    inner = set()
    for (i, j, k), m in b.collinear():
        a, c = [p for p in (i, j, k) if p != m]
        inner.add((min(a, c), max(a, c)))
    edges = frozenset(e for e in itertools.combinations(range(b.n), 2) if e not in inner)
    return SimpleGraph(b.n, edges)


def spanner(b: BetweennessStructure, metric: RationalMetric) -> WeightedGraph:
    """Adjacency graph of ``b`` weighted by ``metric``; induces ``b`` when the metric does."""
    g = adjacency_graph(b)
    return WeightedGraph(b.n, tuple((u, v, metric(u, v)) for u, v in sorted(g.edges)))


# --------------------------------------------------------- .wg and .metric


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dumps_wg(g: WeightedGraph) -> str:
    lines = [f"n {g.n}"] + [f"e {u} {v} {_frac_text(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def _header(parts, lineno):
    if parts[0] != "n" or len(parts) != 2:
        raise FormatError(f"line {lineno}: first line must be 'n <count>'")
    return int(parts[1])


def loads_wg(text: str) -> WeightedGraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                n = _header(parts, lineno)
                continue
            if parts[0] != "e" or len(parts) != 4:
                raise FormatError(f"line {lineno}: expected 'e u v w', got {line!r}")
            edges.append((int(parts[1]), int(parts[2]), Fraction(parts[3])))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise FormatError("empty input")
    try:
        return WeightedGraph(n, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def dumps_metric(m: RationalMetric) -> str:
    vals = [_frac_text(m.d[i][j]) for i in range(m.n) for j in range(i + 1, m.n)]
    return f"n {m.n}\n" + (" ".join(vals) + "\n" if vals else "")


def loads_metric(text: str) -> RationalMetric:
    tokens = " ".join(ln.split("#", 1)[0] for ln in text.splitlines()).split()
    if len(tokens) < 2 or tokens[0] != "n":
        raise FormatError("metric must start with 'n <count>'")
    try:
        n = int(tokens[1])
        vals = [Fraction(v) for v in tokens[2:]]
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(str(exc)) from exc
    if len(vals) != n * (n - 1) // 2:
        raise FormatError(f"expected {n * (n - 1) // 2} distances, got {len(vals)}")
    d = [[Fraction(0)] * n for _ in range(n)]
    it = iter(vals)
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = next(it)
    return RationalMetric(tuple(tuple(r) for r in d))
