"""Dot product graphs over A^k and their scalar-orbit quotients.

Vertices are tuples of ring elements (``VectorElem``) or, for the quotient
graphs, :class:`EquivClass` objects.  Adjacency over all distinct pairs is
evaluated in bulk with numpy on element indices; the per-pair Python path
(:func:`dot_product`) is what the tests use as the reference.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import DotGraph
from .ring import FiniteField, ModularRing, RingSpec, parse_ring

__all__ = [
    "DEFAULT_VERTEX_CAP",
    "EquivClass",
    "QuotientError",
    "VertexCapExceeded",
    "build",
    "build_EUD",
    "build_EZD_R1R2",
    "build_TD",
    "build_UD",
    "build_ZD",
    "build_ZD_R1R2",
    "class_representative",
    "dot_product",
    "expand_equivalence",
    "vector_label",
    "vertex_cap",
]

DEFAULT_VERTEX_CAP = 20000
CAP_ENV = "DOTGRAPH_VERTEX_CAP"

# rows of the pairwise dot-product block kept under this many cells
_BLOCK_CELLS = 1 << 22


class VertexCapExceeded(ValueError):
    pass


class QuotientError(RuntimeError):
    """A pair of orbit classes is neither fully orthogonal nor fully non-orthogonal."""


def vertex_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV)
    return int(env) if env else DEFAULT_VERTEX_CAP


def _check_cap(count: int, cap: int | None, what: str) -> None:
    limit = vertex_cap(cap)
    if count > limit:
        raise VertexCapExceeded(f"{what} needs {count} vertices; cap is {limit} (set --cap or {CAP_ENV})")


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def dot_product(ring: RingSpec, x: Sequence, y: Sequence):
    """Sum of coordinate products, computed in ``ring``."""
    if len(x) != len(y):
        raise ValueError(f"arity mismatch: {len(x)} vs {len(y)}")
    if len(x) == 0:
        raise ValueError("empty vectors")
    idx = ring._index
    for c in itertools.chain(x, y):
        if c not in idx:
            raise ValueError(f"{c!r} is not a canonical element of {ring}")
    return _dot(ring, x, y)


def _dot(ring: RingSpec, x, y):
    if isinstance(ring, ModularRing):
        return sum(a * b for a, b in zip(x, y)) % ring.n
    acc = ring.zero
    for a, b in zip(x, y):
        acc = ring.add(acc, ring.mul(a, b))
    return acc


def vector_label(ring: RingSpec, x: Sequence) -> str:
    return "(" + ", ".join(ring.label(c) for c in x) + ")"


def _zero_pairs(ring: RingSpec, rows: np.ndarray) -> list[tuple[int, int]]:
    """Index pairs ``i < j`` of rows whose dot product is zero.

    ``rows`` is a ``(V, k)`` array of element indices.
    """
    nv, k = rows.shape
    if nv < 2:
        return []
    step = max(1, _BLOCK_CELLS // nv)
    pairs: list[tuple[int, int]] = []
    cols = np.arange(nv)
    for lo in range(0, nv, step):
        hi = min(nv, lo + step)
        z = _zero_block(ring, rows[lo:hi], rows)
        z &= cols[None, :] > np.arange(lo, hi)[:, None]
        ii, jj = np.nonzero(z)
        pairs.extend(zip((ii + lo).tolist(), jj.tolist()))
    return pairs


def _zero_block(ring: RingSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean matrix ``a_i . b_j == 0`` for index rows ``a`` and ``b``."""
    if isinstance(ring, ModularRing):
        dtype = np.int32 if a.shape[1] * (ring.n - 1) ** 2 < 2**31 else np.int64
        a, b = a.astype(dtype), b.astype(dtype)
        acc = a[:, 0, None] * b[None, :, 0]
        for c in range(1, a.shape[1]):
            acc += a[:, c, None] * b[None, :, c]
        acc %= ring.n
        return acc == 0
    mul, add = ring.mul_table, ring.add_table
    acc = mul[a[:, 0][:, None], b[:, 0][None, :]]
    for c in range(1, a.shape[1]):
        acc = add[acc, mul[a[:, c][:, None], b[:, c][None, :]]]
    return acc == ring.index(ring.zero)


def _index_rows(ring: RingSpec, vectors: Sequence[Sequence]) -> np.ndarray:
    k = len(vectors[0]) if vectors else 1
    return np.array([[ring.index(c) for c in v] for v in vectors], dtype=np.int64).reshape(len(vectors), k)


def _vector_graph(ring: RingSpec, vectors: list[tuple], name: str) -> DotGraph:
    edges = _zero_pairs(ring, _index_rows(ring, vectors)) if vectors else []
    labels = [vector_label(ring, v) for v in vectors]
    return DotGraph(tuple(vectors), tuple(edges), tuple(labels), name)


def _power_name(kind: str, ring: RingSpec, k: int) -> str:
    return f"{kind}({ring}^{k})"


def build_TD(ring: RingSpec, k: int = 2, cap: int | None = None) -> DotGraph:
    """Total dot product graph: all nonzero vectors of A^k."""
    _check_arity(k)
    _check_cap(ring.order**k - 1, cap, _power_name("TD", ring, k))
    zero = (ring.zero,) * k
    verts = [v for v in itertools.product(ring.elements, repeat=k) if v != zero]
    return _vector_graph(ring, verts, _power_name("TD", ring, k))


def build_ZD(ring: RingSpec, k: int = 2, cap: int | None = None) -> DotGraph:
    """Nonzero vectors with at least one non-unit coordinate."""
    _check_arity(k)
    nu = len(ring.units())
    _check_cap(ring.order**k - nu**k - 1, cap, _power_name("ZD", ring, k))
    zero = (ring.zero,) * k
    verts = [v for v in itertools.product(ring.elements, repeat=k)
             if v != zero and not all(ring.is_unit(c) for c in v)]
    return _vector_graph(ring, verts, _power_name("ZD", ring, k))


def build_UD(ring: RingSpec, k: int = 2, cap: int | None = None) -> DotGraph:
    """Vectors whose coordinates are all units."""
    _check_arity(k)
    us = ring.units()
    _check_cap(len(us) ** k, cap, _power_name("UD", ring, k))
    verts = list(itertools.product(us, repeat=k))
    return _vector_graph(ring, verts, _power_name("UD", ring, k))


def _r1r2_vectors(ring: ModularRing) -> list[tuple[int, int]]:
    us, zs = ring.units(), ring.zero_divisors()
    return sorted([(u, z) for u in us for z in zs] + [(z, u) for z in zs for u in us])


def build_ZD_R1R2(n: int, cap: int | None = None) -> DotGraph:
    """Subgraph of ZD(Z_n^2) induced on vectors pairing a unit with a non-unit."""
    ring = ModularRing(n)
    m = len(ring.units())
    _check_cap(2 * m * (n - m), cap, f"ZD(R1∪R2) over Z_{n}")
    verts = _r1r2_vectors(ring)
    assert len(verts) == 2 * m * (n - m)
    return _vector_graph(ring, verts, f"ZD(R1∪R2, Z_{n})")


def _check_arity(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"arity must be a positive integer, got {k!r}")


# ---------------------------------------------------------------------------
# scalar-orbit quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivClass:
    """Orbit ``{(u, u) * rep : u a unit}`` of a vector in A x A."""

    representative: tuple
    members: tuple[tuple, ...]

    def label(self, ring: RingSpec) -> str:
        return "[" + vector_label(ring, self.representative) + "]"

    def __len__(self) -> int:
        return len(self.members)


def class_representative(ring: RingSpec, x: Sequence) -> tuple:
    """Scale ``x`` by the inverse of its first unit coordinate."""
    for c in x:
        if ring.is_unit(c):
            inv = ring.inverse(c)
            return tuple(ring.mul(inv, a) for a in x)
    raise ValueError(f"{x} has no unit coordinate")


def _orbit(ring: RingSpec, rep: tuple) -> EquivClass:
    members = sorted({tuple(ring.mul(u, a) for a in rep) for u in ring.units()})
    assert all(class_representative(ring, v) == rep for v in members)
    return EquivClass(rep, tuple(members))


def _quotient_graph(ring: RingSpec, classes: list[EquivClass], name: str) -> DotGraph:
    """Adjacency of classes by exhaustive cross-pair checking."""
    classes = sorted(classes, key=lambda c: c.representative)
    if not classes:
        return DotGraph((), (), (), name)
    rows = _index_rows(ring, [v for c in classes for v in c.members])
    offsets = np.cumsum([0] + [len(c) for c in classes[:-1]])
    edges = []
    step = max(1, _BLOCK_CELLS // len(rows))
    # per class-row, count orthogonal member pairs against every class
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for lo in range(0, len(rows), step):
        z = _zero_block(ring, rows[lo:lo + step], rows)
        colsum = np.add.reduceat(z, offsets, axis=1, dtype=np.int64)
        owner = np.searchsorted(offsets, np.arange(lo, lo + len(z)), side="right") - 1
        np.add.at(counts, owner, colsum)
    for a, b in itertools.combinations(range(len(classes)), 2):
        full = len(classes[a]) * len(classes[b])
        if counts[a, b] == full:
            edges.append((a, b))
        elif counts[a, b]:
            raise QuotientError(
                f"{classes[a].representative} vs {classes[b].representative}: "
                f"{counts[a, b]} of {full} member pairs orthogonal"
            )
    labels = [c.label(ring) for c in classes]
    return DotGraph(tuple(classes), tuple(edges), tuple(labels), name)


def build_EUD(ring: RingSpec, cap: int | None = None) -> DotGraph:
    """Quotient of UD(A x A) by ``x ~ (c, c) x``; classes are the orbits of ``(1, a)``."""
    us = ring.units()
    _check_cap(len(us) ** 2, cap, f"EUD({ring}^2)")
    classes = [_orbit(ring, (ring.one, a)) for a in us]
    assert sum(len(c) for c in classes) == len(us) ** 2
    return _quotient_graph(ring, classes, f"EUD({ring}^2)")


def build_EZD_R1R2(n: int, cap: int | None = None) -> DotGraph:
    """Quotient of ZD(R1∪R2) over Z_n; classes are orbits of ``(1, a)`` and ``(a, 1)``."""
    ring = ModularRing(n)
    m = len(ring.units())
    _check_cap(2 * m * (n - m), cap, f"EZD(R1∪R2) over Z_{n}")
    zs = ring.zero_divisors()
    classes = [_orbit(ring, (1, a)) for a in zs] + [_orbit(ring, (a, 1)) for a in zs]
    assert sum(len(c) for c in classes) == 2 * m * (n - m)
    return _quotient_graph(ring, classes, f"EZD(R1∪R2, Z_{n})")


def _self_orthogonal(ring: RingSpec, cls: EquivClass) -> bool:
    return all(_dot(ring, x, y) == ring.zero for x, y in itertools.combinations(cls.members, 2))


def expand_equivalence(eg: DotGraph, ring: RingSpec) -> DotGraph:
    """Recover the vector-level graph from a quotient graph.

    Members of adjacent classes are joined when they are orthogonal;
    members of a self-orthogonal class are joined to each other.
    """
    if not all(isinstance(v, EquivClass) for v in eg.vertices):
        raise ValueError("expand_equivalence needs a graph over EquivClass vertices")
    verts = sorted(v for c in eg.vertices for v in c.members)
    pos = {v: i for i, v in enumerate(verts)}
    if len(pos) != len(verts):
        raise ValueError("classes overlap")
    zero = ring.zero
    edges = []
    for i, j in eg.edges:
        X, Y = eg.vertices[i], eg.vertices[j]
        edges += [(pos[x], pos[y]) for x in X.members for y in Y.members if _dot(ring, x, y) == zero]
    for X in eg.vertices:
        if _self_orthogonal(ring, X):
            edges += [(pos[x], pos[y]) for x, y in itertools.combinations(X.members, 2)]
    labels = [vector_label(ring, v) for v in verts]
    name = eg.name.replace("EUD", "UD").replace("EZD", "ZD") if eg.name else ""
    return DotGraph.from_edges(verts, edges, labels, name)


# ---------------------------------------------------------------------------
# dispatch by name
# ---------------------------------------------------------------------------

GRAPH_KINDS = ("td", "zd", "ud", "zdr1r2", "eud", "ezdr1r2")


def build(ring: RingSpec | str, graph: str, k: int = 2, cap: int | None = None) -> DotGraph:
    """Build a graph by its short name (``td``, ``zd``, ``ud``, ``zdr1r2``, ``eud``, ``ezdr1r2``)."""
    if isinstance(ring, str):
        ring = parse_ring(ring)
    if graph not in GRAPH_KINDS:
        raise ValueError(f"unknown graph {graph!r}; choose from {', '.join(GRAPH_KINDS)}")
    if graph in ("eud", "ezdr1r2") and k != 2:
        raise ValueError(f"{graph} is defined for k = 2 only")
    if graph in ("zdr1r2", "ezdr1r2"):
        if not isinstance(ring, ModularRing):
            raise ValueError(f"{graph} needs a modular ring zn:<n>")
        if k != 2:
            raise ValueError(f"{graph} is defined for k = 2 only")
    if graph == "td":
        return build_TD(ring, k, cap)
    if graph == "zd":
        return build_ZD(ring, k, cap)
    if graph == "ud":
        return build_UD(ring, k, cap)
    if graph == "eud":
        return build_EUD(ring, cap)
    if graph == "zdr1r2":
        return build_ZD_R1R2(ring.n, cap)
    return build_EZD_R1R2(ring.n, cap)
