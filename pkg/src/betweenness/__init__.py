"""Finite betweenness structures: construction, enumeration and metrization."""

from .core import (
    TRIANGLE,
    BetweennessStructure,
    check_frp,
    cosize,
    delete_point,
    find_cyclic_lines,
    is_extension,
    is_linear,
    is_orderable,
    is_ordered,
    is_regular,
    ordered_structure,
    restrict,
    triangle_degree,
)

__version__ = "0.1.0"
