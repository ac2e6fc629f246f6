"""Simple undirected graphs, component shapes and decomposition signatures."""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence, TextIO, Union

__all__ = [
    "Complete",
    "CompleteBipartite",
    "ComponentShape",
    "DotGraph",
    "Other",
    "Signature",
    "build_graph",
    "classify_component",
    "complete_bipartite",
    "components",
    "export_dot",
    "is_connected",
    "is_totally_disconnected",
    "same_graph",
    "signature",
]


# ---------------------------------------------------------------------------
# shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Complete:
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("K_t needs t >= 1")

    @property
    def size(self) -> int:
        return self.t

    @property
    def edge_count(self) -> int:
        return self.t * (self.t - 1) // 2

    @property
    def sort_key(self) -> tuple:
        return (0, self.t)

    def to_json(self) -> dict:
        return {"shape": "K_t", "t": self.t}

    def __str__(self) -> str:
        return f"K_{self.t}"


@dataclass(frozen=True)
class CompleteBipartite:
    """K_{s,t} in normal form: ``1 <= s <= t`` and never ``(1, 1)``."""

    s: int
    t: int

    def __post_init__(self):
        if not 1 <= self.s <= self.t or (self.s, self.t) == (1, 1):
            raise ValueError(f"K_{{{self.s},{self.t}}} is not in normal form")

    @property
    def size(self) -> int:
        return self.s + self.t

    @property
    def edge_count(self) -> int:
        return self.s * self.t

    @property
    def sort_key(self) -> tuple:
        return (1, self.s, self.t)

    def to_json(self) -> dict:
        return {"shape": "K_{s,t}", "s": self.s, "t": self.t}

    def __str__(self) -> str:
        return f"K_{{{self.s},{self.t}}}"


@dataclass(frozen=True)
class Other:
    """A component that is neither complete nor complete bipartite."""

    vertices: int
    edges: int
    degrees: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.vertices

    @property
    def edge_count(self) -> int:
        return self.edges

    @property
    def sort_key(self) -> tuple:
        return (2, self.vertices, self.edges, self.degrees)

    def to_json(self) -> dict:
        return {"shape": "other", "vertices": self.vertices, "edges": self.edges,
                "degrees": list(self.degrees)}

    def __str__(self) -> str:
        return f"Other(V={self.vertices}, E={self.edges})"


ComponentShape = Union[Complete, CompleteBipartite, Other]


def complete_bipartite(s: int, t: int) -> ComponentShape:
    """Normalising constructor: K_{1,1} is reported as K_2."""
    s, t = sorted((s, t))
    if (s, t) == (1, 1):
        return Complete(2)
    return CompleteBipartite(s, t)


def shape_from_json(d: dict) -> ComponentShape:
    kind = d["shape"]
    if kind == "K_t":
        return Complete(d["t"])
    if kind == "K_{s,t}":
        return complete_bipartite(d["s"], d["t"])
    return Other(d["vertices"], d["edges"], tuple(d["degrees"]))


@dataclass(frozen=True)
class Signature:
    """Multiset of component shapes, kept as sorted ``(shape, count)`` pairs."""

    counts: tuple[tuple[Any, int], ...] = ()

    @classmethod
    def of(cls, shapes: Iterable[ComponentShape]) -> "Signature":
        return cls.from_counts(Counter(shapes))

    @classmethod
    def from_counts(cls, counts) -> "Signature":
        items = counts.items() if hasattr(counts, "items") else counts
        merged: Counter = Counter()
        for shape, c in items:
            if c < 0:
                raise ValueError("negative multiplicity")
            if c:
                merged[shape] += c
        return cls(tuple(sorted(merged.items(), key=lambda sc: sc[0].sort_key)))

    def as_counter(self) -> Counter:
        return Counter(dict(self.counts))

    @property
    def vertex_count(self) -> int:
        return sum(s.size * c for s, c in self.counts)

    @property
    def edge_count(self) -> int:
        return sum(s.edge_count * c for s, c in self.counts)

    @property
    def component_count(self) -> int:
        return sum(c for _, c in self.counts)

    def count(self, shape: ComponentShape) -> int:
        return dict(self.counts).get(shape, 0)

    def diff(self, other: "Signature") -> dict[str, tuple[int, int]]:
        """Shapes whose multiplicity differs: ``str(shape) -> (self, other)``."""
        a, b = self.as_counter(), other.as_counter()
        keys = sorted(set(a) | set(b), key=lambda s: s.sort_key)
        return {str(k): (a[k], b[k]) for k in keys if a[k] != b[k]}

    def to_json(self) -> list[dict]:
        return [{**s.to_json(), "count": c} for s, c in self.counts]

    @classmethod
    def from_json(cls, items: list[dict]) -> "Signature":
        return cls.from_counts([(shape_from_json(d), d["count"]) for d in items])

    def __str__(self) -> str:
        if not self.counts:
            return "∅"
        return " ⊔ ".join(f"{c} × {s}" for s, c in self.counts)


# ---------------------------------------------------------------------------
# graph container
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DotGraph:
    """Immutable simple graph.

    ``edges`` holds index pairs ``(i, j)`` with ``i < j`` into ``vertices``,
    sorted.  Labels default to ``str(vertex)`` and must be distinct since
    they double as DOT node ids.
    """

    vertices: tuple[Hashable, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        nv = len(self.vertices)
        if len(set(self.vertices)) != nv:
            raise ValueError("duplicate vertices")
        if len(self.labels) != nv or len(set(self.labels)) != nv:
            raise ValueError("labels must be distinct, one per vertex")
        prev = (-1, -1)
        for e in self.edges:
            i, j = e
            if not 0 <= i < j < nv:
                raise ValueError(f"bad edge {e}: self-loop or endpoint out of range")
            if e <= prev:
                raise ValueError("edges must be sorted and unique")
            prev = e

    @classmethod
    def from_edges(cls, vertices: Sequence, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None, name: str = "") -> "DotGraph":
        """Build from unordered index pairs (any orientation, no duplicates)."""
        es = sorted((i, j) if i < j else (j, i) for i, j in edges)
        if labels is None:
            labels = [str(v) for v in vertices]
        return cls(tuple(vertices), tuple(es), tuple(labels), name)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def edge_set(self) -> frozenset[frozenset]:
        """Edges as unordered vertex pairs; independent of vertex order."""
        vs = self.vertices
        return frozenset(frozenset((vs[i], vs[j])) for i, j in self.edges)

    def has_edge(self, u, v) -> bool:
        i, j = self.vertex_index[u], self.vertex_index[v]
        return j in self.neighbors[i]

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"DotGraph({self.name or '?'}, |V|={len(self.vertices)}, |E|={len(self.edges)})"


def build_graph(vertices: Sequence, adjacent: Callable[[Any, Any], bool],
                labels: Sequence[str] | None = None, name: str = "") -> DotGraph:
    """Edges wherever ``adjacent(x, y)`` holds, over distinct unordered pairs."""
    vs = list(vertices)
    edges = [(i, j) for i, j in itertools.combinations(range(len(vs)), 2) if adjacent(vs[i], vs[j])]
    return DotGraph.from_edges(vs, edges, labels, name)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def components(g: DotGraph) -> list[list[int]]:
    """Connected components as sorted vertex-index lists, ordered by smallest index."""
    seen = [False] * len(g.vertices)
    nbrs = g.neighbors
    out = []
    for start in range(len(g.vertices)):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def classify_component(g: DotGraph, comp: Sequence[int]) -> ComponentShape:
    """Shape of one connected component (given as vertex indices)."""
    nbrs = g.neighbors
    t = len(comp)
    degrees = [len(nbrs[v]) for v in comp]
    e = sum(degrees) // 2
    if e == t * (t - 1) // 2:
        return Complete(t)

    # 2-colouring by BFS; the component is connected so one root suffices
    colour = {comp[0]: 0}
    queue = deque([comp[0]])
    bipartite = True
    while queue and bipartite:
        v = queue.popleft()
        for w in nbrs[v]:
            if w not in colour:
                colour[w] = 1 - colour[v]
                queue.append(w)
            elif colour[w] == colour[v]:
                bipartite = False
                break
    if bipartite:
        s = sum(colour.values())
        if e == s * (t - s):
            shape = complete_bipartite(s, t - s)
            assert shape.size == t and shape.edge_count == e
            return shape
    return Other(t, e, tuple(sorted(degrees)))


def signature(g: DotGraph) -> Signature:
    sig = Signature.of(classify_component(g, c) for c in components(g))
    assert sig.vertex_count == len(g.vertices)
    return sig


def is_totally_disconnected(g: DotGraph) -> bool:
    return not g.edges


def is_connected(g: DotGraph) -> bool:
    return len(components(g)) <= 1


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: DotGraph, sink: TextIO | None = None) -> str:
    """GraphViz text, nodes then edges in canonical order; written to ``sink`` if given."""
    lines = ["graph {"]
    lines += [f"  {_quote(lab)};" for lab in g.labels]
    lab = g.labels
    lines += [f"  {_quote(lab[i])} -- {_quote(lab[j])};" for i, j in g.edges]
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def same_graph(a: DotGraph, b: DotGraph) -> bool:
    """Identical vertex sets and edge sets, ignoring vertex order and labels."""
    return set(a.vertices) == set(b.vertices) and a.edge_set() == b.edge_set()
