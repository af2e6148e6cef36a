"""Core graph values: simple graphs, colored graphs, fans, and generators.

All values are immutable.  Graphs are finite simple graphs over integer
vertex ids; edges are stored as sorted ``(u, v)`` tuples with ``u < v`` and
are identified by their index in the lexicographically sorted edge list.
Functions never mutate their arguments and always produce deterministically
ordered output.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence


# ===== Graphs =====


@dataclass(frozen=True)
class Graph:
    """A finite simple graph with integer vertex ids.

    ``vertices`` is sorted ascending; ``edges`` is sorted lexicographically
    with each edge normalized to ``(min, max)``.  The id of an edge is its
    index in ``edges``.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @staticmethod
    def make(vertices: Iterable[int], edges: Iterable[Sequence[int]]) -> "Graph":
        """Builds a graph, normalizing order and rejecting malformed input.

        Raises:
            ValueError: on loops, parallel edges, or unknown endpoints.
        """
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        norm: list[tuple[int, int]] = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) has unknown endpoint")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"parallel edge {a}")
        return Graph(vs, tuple(norm))

    @cached_property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adj(self) -> dict[int, tuple[int, ...]]:
        """Sorted neighbor lists."""
        nbrs: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    def has_vertex(self, v: int) -> bool:
        return v in self.adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_index

    def edge_id(self, u: int, v: int) -> int:
        """The id of edge ``{u, v}``; raises ``KeyError`` if absent."""
        return self._edge_index[(min(u, v), max(u, v))]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])


def induced(g: Graph, keep: Iterable[int]) -> Graph:
    """The subgraph of ``g`` induced by the vertex set ``keep``."""
    ks = set(keep)
    return Graph.make(
        (v for v in g.vertices if v in ks),
        (e for e in g.edges if e[0] in ks and e[1] in ks),
    )


def relabel(g: Graph, mapping: Mapping[int, int]) -> Graph:
    """Renames vertices through an injective ``mapping`` (total on V)."""
    if len(set(mapping[v] for v in g.vertices)) != g.n:
        raise ValueError("relabel mapping is not injective")
    return Graph.make(
        (mapping[v] for v in g.vertices),
        ((mapping[u], mapping[v]) for u, v in g.edges),
    )


def bfs_dists(g: Graph, source: int, within: Optional[Iterable[int]] = None) -> dict[int, int]:
    """BFS distances from ``source``, optionally restricted to a vertex set."""
    allowed = set(g.vertices) if within is None else set(within)
    if source not in allowed:
        raise ValueError(f"source {source} not in allowed set")
    dist = {source: 0}
    q = deque([source])
    while q:
        u = q.popleft()
        for w in g.neighbors(u):
            if w in allowed and w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist

def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen: set[int] = set()
    comps: list[list[int]] = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = sorted(bfs_dists(g, v))
        seen.update(comp)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def radius_center(g: Graph, subset: Optional[Iterable[int]] = None) -> tuple[int, int]:
    """The center and radius of ``g`` induced on ``subset`` (default: all of V).

    Returns ``(center, radius)`` where ``center`` is the smallest vertex of
    minimum eccentricity within the induced subgraph.

    Raises:
        ValueError: ``"not connected"`` if the subset is empty or the induced
            subgraph is disconnected.
    """
    verts = sorted(set(g.vertices if subset is None else subset))
    if not verts:
        raise ValueError("not connected")
    best: Optional[tuple[int, int]] = None
    for v in verts:
        dist = bfs_dists(g, v, within=verts)
        if len(dist) != len(verts):
            raise ValueError("not connected")
        ecc = max(dist.values())
        if best is None or ecc < best[1]:
            best = (v, ecc)
    assert best is not None
    return best


# ===== Fans and fan covers =====


@dataclass(frozen=True)
class Fan:
    """A center vertex together with a set of edges incident to it."""

    center: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if self.center != u and self.center != v:
                raise ValueError("not a fan")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))


def fan_cover(
    g: Graph, target: Iterable[Sequence[int]], ell: int
) -> Optional[list[Fan]]:
    """Covers the ``target`` edges by at most ``ell`` fans of ``g``, exactly.

    A cover exists iff the target edge set has a vertex cover of size at most
    ``ell``; this runs the classic exact branching (depth ``ell``).  On
    success each target edge is assigned to the smallest-id chosen center it
    contains and one fan per used center is returned, sorted by center.
    Returns ``None`` if no cover of size ``ell`` exists.
    """
    edges = sorted(set((min(u, v), max(u, v)) for u, v in target))
    for e in edges:
        if not g.has_edge(*e):
            raise ValueError(f"target edge {e} not in graph")

    def branch(remaining: tuple[tuple[int, int], ...], budget: int, chosen: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        if not remaining:
            return chosen
        if budget == 0:
            return None
        u, v = remaining[0]
        for center in (u, v):
            rest = tuple(e for e in remaining if center not in e)
            got = branch(rest, budget - 1, chosen + (center,))
            if got is not None:
                return got
        return None

    centers = branch(tuple(edges), max(ell, 0), ())
    if centers is None:
        return None
    cs = sorted(set(centers))
    assigned: dict[int, list[tuple[int, int]]] = {c: [] for c in cs}
    for e in edges:
        c = min(c for c in cs if c in e)
        assigned[c].append(e)
    return [Fan(c, tuple(assigned[c])) for c in cs if assigned[c]]


# ===== Colored graphs =====

_COLOR_KINDS = ("c", "cP", "b", "bP")


@dataclass(frozen=True, order=True)
class ColorLabel:
    """A color label: kind ``c``/``cP`` (indexed from 1) or ``b``/``bP`` (from 0)."""

    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in _COLOR_KINDS:
            raise ValueError(f"unknown color kind {self.kind!r}")
        low = 1 if self.kind in ("c", "cP") else 0
        if self.index < low:
            raise ValueError(f"color index {self.index} out of range for {self.kind}")

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @staticmethod
    def parse(text: str) -> "ColorLabel":
        for kind in ("cP", "bP", "c", "b"):
            if text.startswith(kind) and text[len(kind):].isdigit():
                return ColorLabel(kind, int(text[len(kind):]))
        raise ValueError(f"bad color label {text!r}")


@dataclass(frozen=True)
class ColoredGraph:
    """A graph whose vertices carry sets of color labels (possibly stacked)."""

    graph: Graph
    colors: dict[int, frozenset[ColorLabel]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        vset = set(self.graph.vertices)
        for v in self.colors:
            if v not in vset:
                raise ValueError(f"colored vertex {v} not in graph")
        object.__setattr__(
            self,
            "colors",
            {v: frozenset(ls) for v, ls in self.colors.items() if ls},
        )

    def labels(self, v: int) -> frozenset[ColorLabel]:
        return self.colors.get(v, frozenset())

    def has(self, v: int, label: ColorLabel) -> bool:
        return label in self.labels(v)


# ===== Composition and generators =====


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """The disjoint union; ``g2`` is relabeled to fresh ids, order-preserving."""
    if g1.n == 0:
        return g2
    if g2.n == 0:
        return g1
    offset = max(g1.vertices) + 1 - min(g2.vertices)
    g2r = relabel(g2, {v: v + offset for v in g2.vertices})
    return Graph.make(g1.vertices + g2r.vertices, g1.edges + g2r.edges)


def add_universal_vertex(g: Graph) -> tuple[Graph, int]:
    """Adds a vertex adjacent to every existing vertex; returns it too."""
    u = (max(g.vertices) + 1) if g.n else 0
    return (
        Graph.make(g.vertices + (u,), g.edges + tuple((v, u) for v in g.vertices)),
        u,
    )


def _positive(name: str, *dims: int) -> None:
    for d in dims:
        if d < 1:
            raise ValueError(f"{name} requires positive dimensions, got {dims}")


def grid2d(m: int, n: int) -> Graph:
    """The m-by-n grid graph; vertex ``(i, j)`` has id ``i * n + j``."""
    _positive("grid2d", m, n)
    verts = range(m * n)
    edges = []
    for i in range(m):
        for j in range(n):
            if j + 1 < n:
                edges.append((i * n + j, i * n + j + 1))
            if i + 1 < m:
                edges.append((i * n + j, (i + 1) * n + j))
    return Graph.make(verts, edges)


def grid3d(m: int, n: int, p: int) -> Graph:
    """The m-by-n-by-p grid graph; vertex ``(i, j, l)`` has id ``(i*n + j)*p + l``."""
    _positive("grid3d", m, n, p)
    def vid(i: int, j: int, l: int) -> int:
        return (i * n + j) * p + l
    edges = []
    for i in range(m):
        for j in range(n):
            for l in range(p):
                if l + 1 < p:
                    edges.append((vid(i, j, l), vid(i, j, l + 1)))
                if j + 1 < n:
                    edges.append((vid(i, j, l), vid(i, j + 1, l)))
                if i + 1 < m:
                    edges.append((vid(i, j, l), vid(i + 1, j, l)))
    return Graph.make(range(m * n * p), edges)


def cycle(n: int) -> Graph:
    """The cycle on vertices ``0 .. n-1``; requires ``n >= 3``."""
    if n < 3:
        raise ValueError(f"cycle requires n >= 3, got {n}")
    return Graph.make(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """The path on vertices ``0 .. n-1``."""
    _positive("path", n)
    return Graph.make(range(n), [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    """The complete graph on vertices ``0 .. n-1``."""
    _positive("complete", n)
    return Graph.make(range(n), itertools.combinations(range(n), 2))
