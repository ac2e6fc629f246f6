"""Dot product graphs over Z_n^k and GF(p^d)^k, with brute-force checks of their decompositions."""

from .construct import (
    EquivClass,
    VertexCapExceeded,
    build,
    build_EUD,
    build_EZD_R1R2,
    build_TD,
    build_UD,
    build_ZD,
    build_ZD_R1R2,
    dot_product,
    expand_equivalence,
)
from .graph import (
    Complete,
    CompleteBipartite,
    DotGraph,
    Other,
    Signature,
    build_graph,
    classify_component,
    components,
    export_dot,
    is_connected,
    is_totally_disconnected,
    signature,
)
from .ring import FiniteField, ModularRing, NoInverse, make_ring, parse_ring

__version__ = "0.1.0"
