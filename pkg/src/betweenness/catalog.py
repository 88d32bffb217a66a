"""Derivation of the exceptional small quasilinear spanner graphs.

The two order-6 entries without a closed-form construction are the
quasilinear classes at ``n = 6`` that are not induced by ``R_{6,i}^4``,
``S_6^4``, ``C_6`` or ``K_{3,3}``; they are labeled ``A_6_2``, ``A_6_3`` in
canonical-form order and realized by their adjacency graph weighted with an
exact metric from the LP.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from pathlib import Path

from .core import BetweennessStructure
from .enumerate import enumerate_structures
from .families import FamilySpec, catalog_dir, fixed_catalog_graphs, induced_structure
from .graphs import WeightedGraph, dumps_wg, induce_graph, spanner
from .iso import canonical_form
from .metrize import metrize_structure


def integral_spanner(b: BetweennessStructure) -> WeightedGraph:
    """Adjacency graph of a metrizable ``b`` with smallest integral metric weights."""
    m = metrize_structure(b)
    if m is None:
        raise ValueError("structure is not metrizable")
    g = spanner(b, m)
    den = lcm(*(w.denominator for _, _, w in g.edges))
    nums = [int(w * den) for _, _, w in g.edges]
    scale = Fraction(den, gcd(*nums))
    g = g.scaled(scale)
    if induce_graph(g) != b:
        raise AssertionError("spanner does not re-induce the structure")
    return g


def derive_order6_exceptionals() -> list[WeightedGraph]:
    """Spanners of the order-6 quasilinear classes outside the named families."""
    res = enumerate_structures(6, 2)
    known = {canonical_form(induced_structure(FamilySpec("R", 6, i, 4))) for i in (1, 2)}
    known.add(canonical_form(induced_structure(FamilySpec("S", 6, None, 4))))
    known.add(canonical_form(induced_structure(FamilySpec("C", 6))))
    known.add(canonical_form(induced_structure(FamilySpec("Kab", 6, a=3, b=3))))
    rest = [c for c in res.classes if c.form not in known]
    return [integral_spanner(c.representative) for c in sorted(rest, key=lambda c: c.form)]


def catalog_graphs() -> dict[str, WeightedGraph]:
    graphs = dict(fixed_catalog_graphs())
    a62, a63 = derive_order6_exceptionals()
    graphs["A_6_2"] = a62
    graphs["A_6_3"] = a63
    return dict(sorted(graphs.items()))


def write_catalog(directory: Path | None = None) -> list[Path]:
    directory = Path(directory or catalog_dir())
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for label, g in catalog_graphs().items():
        p = directory / f"{label}.wg"
        p.write_text(f"# {label}\n" + dumps_wg(g))
        out.append(p)
    return out


__all__ = ["integral_spanner", "derive_order6_exceptionals", "catalog_graphs", "write_catalog"]
