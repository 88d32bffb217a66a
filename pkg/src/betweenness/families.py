"""Named graph families and the catalog of small exceptional spanner graphs.

Point labels for the Q, R and S families: ``x_1..x_{n-2}`` are ``0..n-3``,
``y`` is ``n-2`` and ``z`` is ``n-1``.  For ``T``: ``x_1..x_{n-4}`` are
``0..n-5`` followed by ``y, z, u, v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .core import BetweennessStructure, FormatError
from .graphs import WeightedGraph, induce_graph, loads_wg

KINDS = ("P", "C", "K", "Kab", "Q", "R", "S", "T")


class FamilyRangeError(ValueError):
    """Family parameters outside their admissible range."""


def index_range(n: int, c: int) -> range:
    """Admissible ``i`` for ``R_{n,i}^c``."""
    if c == 3:
        return range(1, n - 2)
    if c in (2, 4):
        return range(1, (n - 2) // 2 + 1)  # ceil((n - 3) / 2)
    raise FamilyRangeError(f"c must be 2, 3 or 4, got {c}")


def t_index_range(n: int) -> range:
    return range(1, (n - 4) // 2 + 1)  # ceil((n - 5) / 2)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int = 0
    i: int | None = None
    c: int | None = None
    a: int | None = None
    b: int | None = None

    def label(self) -> str:
        if self.kind == "Kab":
            return f"K_{self.a},{self.b}"
        if self.kind in ("P", "C", "K"):
            return f"{self.kind}_{self.n}"
        parts = [str(self.n)]
        if self.i is not None:
            parts.append(str(self.i))
        sup = f"^{self.c}" if self.c is not None else ""
        return f"{self.kind}_{{{','.join(parts)}}}{sup}"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyRangeError(msg)


def validate(spec: FamilySpec) -> None:
    k, n, i, c = spec.kind, spec.n, spec.i, spec.c
    _require(k in KINDS, f"unknown family kind {k!r}")
    if k == "P":
        _require(n >= 1, "P_n needs n >= 1")
    elif k == "C":
        _require(n >= 3, "C_n needs n >= 3")
    elif k == "K":
        _require(n >= 1, "K_n needs n >= 1")
    elif k == "Kab":
        _require(spec.a is not None and spec.b is not None, "K_{a,b} needs a and b")
        _require(spec.a >= 1 and spec.b >= 1, "K_{a,b} needs a, b >= 1")
    elif k == "Q":
        _require(c in (2, 3), "Q_n^c needs c in {2, 3}")
        _require(n >= c + 1, f"Q_n^{c} needs n >= {c + 1}")
    elif k == "R":
        _require(c in (2, 3, 4), "R_{n,i}^c needs c in {2, 3, 4}")
        lo = 5 if c == 4 else 4
        _require(n >= lo, f"R_{{n,i}}^{c} needs n >= {lo}")
        rng = index_range(n, c)
        _require(i is not None and i in rng, f"R_{{{n},i}}^{c} needs {rng.start} <= i <= {rng.stop - 1}")
    elif k == "S":
        _require(c in (2, 3, 4), "S_n^c needs c in {2, 3, 4}")
        lo = {2: 3, 3: 4, 4: 5}[c]
        _require(n >= lo, f"S_n^{c} needs n >= {lo}")
    elif k == "T":
        _require(n >= 6, "T_{n,i} needs n >= 6")
        rng = t_index_range(n)
        _require(i is not None and i in rng, f"T_{{{n},i}} needs 1 <= i <= {rng.stop - 1}")


def build(spec: FamilySpec) -> WeightedGraph:
    validate(spec)
    k, n, i, c = spec.kind, spec.n, spec.i, spec.c
    one = Fraction(1)
    if k == "P":
        return WeightedGraph.unit(n, [(p, p + 1) for p in range(n - 1)])
    if k == "C":
        return WeightedGraph.unit(n, [(p, (p + 1) % n) for p in range(n)])
    if k == "K":
        return WeightedGraph.unit(n, [(p, q) for p in range(n) for q in range(p + 1, n)])
    if k == "Kab":
        a, b = spec.a, spec.b
        return WeightedGraph.unit(a + b, [(p, a + q) for p in range(a) for q in range(b)])
    if k == "T":
        m = n - 4
        y, z, u, v = m, m + 1, m + 2, m + 3
        x = lambda j: j - 1  # noqa: E731
        edges = [(x(j), x(j + 1), one) for j in range(1, n - 4) if j != i]
        edges += [(x(i), y, one), (x(i), z, one), (y, u, one), (y, v, one),
                  (z, u, one), (z, v, one), (u, x(i + 1), one), (v, x(i + 1), one)]
        return WeightedGraph(n, tuple(edges))

    m = n - 2
    y, z = m, m + 1
    x = lambda j: j - 1  # noqa: E731
    path = [(x(j), x(j + 1), one) for j in range(1, m)]
    w = Fraction
    if k == "Q":
        edges = path + [(y, x(1), one), (z, x(1), one)]
        if c == 2:
            edges.append((y, z, one))
    elif k == "R":
        edges = [e for e in path if e[:2] != (x(i), x(i + 1))]
        far = one if c in (2, 4) else w(2)
        edges += [(y, x(i), one), (z, x(i), one), (y, x(i + 1), far), (z, x(i + 1), far)]
        if c == 2:
            edges.append((y, z, one))
    else:  # S
        if c == 4:
            edges = path + [(x(1), y, one), (x(m), z, one), (y, z, w(n - 3))]
        elif c == 3:
            edges = path + [(x(1), y, one), (x(m), z, w(2)), (y, z, w(n - 2))]
        else:
            edges = path + [(x(1), y, one), (x(m), z, one), (y, z, w(n - 2))]
    return WeightedGraph(n, tuple(edges))


def induced_structure(spec: FamilySpec) -> BetweennessStructure:
    return induce_graph(build(spec))


def parse_spec(text: str) -> FamilySpec:
    """Parse labels such as ``R6,1^4``, ``S5^4``, ``T7,1``, ``Q4^3``, ``C6``, ``K3,3``."""
    s = text.strip().replace("_", "").replace("{", "").replace("}", "")
    c = None
    if "^" in s:
        s, sup = s.split("^", 1)
        c = int(sup)
    for kind in ("Q", "R", "S", "T", "P", "C", "K"):
        if s.startswith(kind):
            nums = [int(t) for t in s[len(kind):].split(",") if t]
            break
    else:
        raise FamilyRangeError(f"cannot parse family label {text!r}")
    if kind == "K" and len(nums) == 2:
        return FamilySpec("Kab", a=nums[0], b=nums[1], n=nums[0] + nums[1])
    n = nums[0]
    i = nums[1] if len(nums) > 1 else None
    return FamilySpec(kind, n=n, i=i, c=c)


def all_specs(kind: str, c: int | None, n: int) -> list[FamilySpec]:
    """Every in-range spec of one family at order ``n`` (empty when none)."""
    if kind == "R":
        out = [FamilySpec("R", n, i, c) for i in index_range(n, c)]
    elif kind == "T":
        out = [FamilySpec("T", n, i) for i in t_index_range(n)]
    else:
        out = [FamilySpec(kind, n, None, c)]
    good = []
    for s in out:
        try:
            validate(s)
        except FamilyRangeError:
            continue
        good.append(s)
    return good


def extremal_specs(c: int, n: int) -> list[FamilySpec]:
    """Q/R/S specs with co-size ``n - c`` at order ``n``."""
    specs = []
    if c in (2, 3):
        specs += all_specs("Q", c, n)
    specs += all_specs("R", c, n)
    specs += all_specs("S", c, n)
    return specs


# ------------------------------------------------------------ catalog

CATALOG_LABELS = ("A_3_1", "A_4_1", "A_4_2", "A_5_1", "A_6_1", "A_6_2", "A_6_3", "A_6_4")


def catalog_dir() -> Path:
    return Path(str(resources.files("betweenness") / "data" / "exceptional"))


def normalize_label(label: str) -> str:
    return label.replace("^", "_")


def exceptional_catalog(directory: Path | None = None) -> list[tuple[str, WeightedGraph]]:
    """Spanner graphs of the exceptional small quasilinear structures.

    ``A_3_1`` is K_3, ``A_4_1``/``A_4_2`` the two order-4 graphs, ``A_5_1``
    is K_{2,3}, ``A_6_1`` is C_6 and ``A_6_4`` is K_{3,3}; ``A_6_2`` and
    ``A_6_3`` come from exhaustive enumeration
    (``scripts/regenerate_exceptional.py``).
    """
    directory = directory or catalog_dir()
    out = []
    for label in CATALOG_LABELS:
        path = Path(directory) / f"{label}.wg"
        if not path.exists():
            raise FileNotFoundError(f"catalog entry missing: {path}")
        try:
            out.append((label, loads_wg(path.read_text())))
        except FormatError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    return out


def catalog_graph(label: str, directory: Path | None = None) -> WeightedGraph:
    want = normalize_label(label)
    for lab, g in exceptional_catalog(directory):
        if lab == want:
            return g
    raise KeyError(label)


def fixed_catalog_graphs() -> dict[str, WeightedGraph]:
    """Catalog entries whose graphs are known in closed form."""
    return {
        "A_3_1": build(FamilySpec("K", 3)),
        "A_4_1": build(FamilySpec("Q", 4, None, 3)),
        "A_4_2": build(FamilySpec("R", 4, 1, 3)),
        "A_5_1": build(FamilySpec("Kab", 5, a=2, b=3)),
        "A_6_1": build(FamilySpec("C", 6)),
        "A_6_4": build(FamilySpec("Kab", 6, a=3, b=3)),
    }
