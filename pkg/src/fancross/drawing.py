"""Combinatorial drawings of graphs with crossings.

A :class:`Drawing` records a drawn graph (the *base*) together with its
*plan*: the planarized arrangement whose vertices are real copies of base
vertices, crossing points, and inert degree-2 subdivision points (bends).
Each base edge owns a *trace*, the plan path it is drawn along.  Faces are
derived from the counterclockwise rotation system; the drawing designates
one face as outer.

Parallel plan edges are never allowed: two curves that would otherwise share
consecutive plan vertices are kept apart by bend vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .graphs import Fan, Graph

Dart = tuple[int, int]


# ===== Drawing =====


@dataclass(frozen=True)
class Drawing:
    """A drawn graph: base, plan, rotations, vertex kinds, traces, outer face.

    Fields:
        base: the drawn graph.
        plan: the planarization (always a simple graph).
        rotation: plan vertex -> plan edge ids in counterclockwise order.
        kind: plan vertex -> ``"real:<vid>"`` | ``"crossing"`` | ``"subdivision"``.
        trace: base edge id -> plan edge ids forming the drawn path.
        outer: index of the outer face in canonical face order.
    """

    base: Graph
    plan: Graph
    rotation: dict[int, tuple[int, ...]]
    kind: dict[int, str]
    trace: dict[int, tuple[int, ...]]
    outer: int

    # ----- derived lookups (assume a valid drawing) -----

    @cached_property
    def real_pvid(self) -> dict[int, int]:
        """Base vertex -> its real plan copy."""
        out: dict[int, int] = {}
        for p, k in self.kind.items():
            if k.startswith("real:"):
                out[int(k[5:])] = p
        return out

    def kind_of(self, pvid: int) -> str:
        """``"real"``, ``"crossing"`` or ``"subdivision"``."""
        return self.kind[pvid].split(":", 1)[0]

    @cached_property
    def _rotpos(self) -> dict[tuple[int, int], int]:
        """(plan vertex, incident plan edge id) -> position in its rotation."""
        out: dict[tuple[int, int], int] = {}
        for v, eids in self.rotation.items():
            for i, e in enumerate(eids):
                out[(v, e)] = i
        return out

    def next_dart(self, dart: Dart) -> Dart:
        """The successor dart along the face on the left of ``dart``."""
        u, v = dart
        eid = self.plan.edge_id(u, v)
        pos = self._rotpos[(v, eid)]
        rot = self.rotation[v]
        prev_eid = rot[(pos - 1) % len(rot)]
        a, b = self.plan.edges[prev_eid]
        return (v, b if a == v else a)

    @cached_property
    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        """All faces as dart cycles, canonically rotated and ordered."""
        darts = [(u, v) for u, v in self.plan.edges] + [
            (v, u) for u, v in self.plan.edges
        ]
        seen: set[Dart] = set()
        out: list[tuple[Dart, ...]] = []
        for d0 in sorted(darts):
            if d0 in seen:
                continue
            orbit = [d0]
            seen.add(d0)
            cur = self.next_dart(d0)
            while cur != d0:
                orbit.append(cur)
                seen.add(cur)
                cur = self.next_dart(cur)
            k = orbit.index(min(orbit))
            out.append(tuple(orbit[k:] + orbit[:k]))
        out.sort(key=lambda f: f[0])
        return tuple(out)

    @cached_property
    def _face_of(self) -> dict[Dart, int]:
        return {d: i for i, f in enumerate(self.faces) for d in f}

    def face_of_dart(self, dart: Dart) -> int:
        return self._face_of[dart]

    @cached_property
    def paths(self) -> dict[int, tuple[int, ...]]:
        """Base edge id -> plan vertex path, oriented from the smaller endpoint."""
        out: dict[int, tuple[int, ...]] = {}
        for eid, (u, v) in enumerate(self.base.edges):
            p = _vertex_path(self.plan, self.trace[eid])
            ru, rv = self.real_pvid[u], self.real_pvid[v]
            if p[0] == ru and p[-1] == rv:
                pass
            elif p[0] == rv and p[-1] == ru:
                p = tuple(reversed(p))
            else:
                raise ValueError(f"trace of edge {eid} does not join its endpoints")
            out[eid] = p
        return out

    @cached_property
    def edge_crossings(self) -> dict[int, tuple[int, ...]]:
        """Base edge id -> crossing plan vertices in trace order."""
        return {
            eid: tuple(p for p in path[1:-1] if self.kind_of(p) == "crossing")
            for eid, path in self.paths.items()
        }

    @cached_property
    def plan_components(self) -> dict[int, int]:
        """Plan vertex -> component index (components ordered by least vertex)."""
        comp: dict[int, int] = {}
        idx = 0
        for v in self.plan.vertices:
            if v in comp:
                continue
            stack = [v]
            comp[v] = idx
            while stack:
                u = stack.pop()
                for w in self.plan.neighbors(u):
                    if w not in comp:
                        comp[w] = idx
                        stack.append(w)
            idx += 1
        return comp


def _vertex_path(plan: Graph, eids: Sequence[int]) -> tuple[int, ...]:
    """The vertex path of an edge-id walk; raises if it is not a simple path."""
    if not eids:
        raise ValueError("empty trace")
    if len(eids) == 1:
        return plan.edges[eids[0]]
    first, second = plan.edges[eids[0]], plan.edges[eids[1]]
    shared = set(first) & set(second)
    if len(shared) != 1:
        raise ValueError("trace is not a path")
    start = first[0] if first[1] in shared else first[1]
    path = [start]
    cur = start
    for e in eids:
        a, b = plan.edges[e]
        if cur == a:
            cur = b
        elif cur == b:
            cur = a
        else:
            raise ValueError("trace is not a path")
        path.append(cur)
    if len(set(path)) != len(path):
        raise ValueError("trace revisits a vertex")
    return tuple(path)


# ===== Validation =====


def validate(d: Drawing) -> list[str]:
    """Checks all drawing invariants; returns a deterministic violation list."""
    out: list[str] = []
    pverts = set(d.plan.vertices)

    # Kind map shape and the real-copy bijection.
    if set(d.kind) != pverts:
        out.append("kind domain: keys differ from plan vertices")
    reals: dict[int, list[int]] = {}
    for p in sorted(d.kind):
        k = d.kind[p]
        if k.startswith("real:") and k[5:].lstrip("-").isdigit():
            reals.setdefault(int(k[5:]), []).append(p)
        elif k not in ("crossing", "subdivision"):
            out.append(f"kind value: vertex {p} has {k!r}")
    for v in d.base.vertices:
        if len(reals.get(v, [])) != 1:
            out.append(f"real bijection: base vertex {v}")
    for v in sorted(set(reals) - set(d.base.vertices)):
        out.append(f"real bijection: unknown base vertex {v}")
    if out:
        return out

    # Rotations must list exactly the incident plan edges, once each.
    if set(d.rotation) != pverts:
        out.append("rotation domain: keys differ from plan vertices")
        return out
    incident: dict[int, set[int]] = {v: set() for v in d.plan.vertices}
    for eid, (a, b) in enumerate(d.plan.edges):
        incident[a].add(eid)
        incident[b].add(eid)
    for v in d.plan.vertices:
        rot = d.rotation[v]
        if len(rot) != len(set(rot)) or set(rot) != incident[v]:
            out.append(f"rotation: vertex {v} does not list incident edges once")
    if out:
        return out

    # Traces: one per base edge, simple plan paths between real copies with
    # interior of crossing/subdivision kind only.
    if set(d.trace) != set(range(d.base.m)):
        out.append("trace domain: keys differ from base edge ids")
        return out
    use_count: dict[int, int] = {eid: 0 for eid in range(d.plan.m)}
    passages: dict[int, list[tuple[int, int]]] = {}  # plan vertex -> (eid, pos)
    paths: dict[int, tuple[int, ...]] = {}
    for eid in range(d.base.m):
        u, v = d.base.edges[eid]
        try:
            p = _vertex_path(d.plan, d.trace[eid])
        except ValueError as exc:
            out.append(f"trace path: edge {eid}: {exc}")
            continue
        ru, rv = reals[u][0], reals[v][0]
        if p[0] == rv and p[-1] == ru:
            p = tuple(reversed(p))
        if not (p[0] == ru and p[-1] == rv):
            out.append(f"trace endpoints: edge {eid}")
            continue
        paths[eid] = p
        for t in d.trace[eid]:
            use_count[t] += 1
        for i, q in enumerate(p[1:-1], start=1):
            if d.kind_of(q) == "real":
                out.append(f"trace interior: edge {eid} passes real vertex {q}")
            passages.setdefault(q, []).append((eid, i))
    for t, cnt in use_count.items():
        if cnt != 1:
            out.append(f"edge coverage: plan edge {t} used {cnt} times")
    if out:
        return out

    # Crossing vertices: degree 4, two transversal passages.
    for p in d.plan.vertices:
        k = d.kind_of(p)
        deg = d.plan.degree(p)
        ps = passages.get(p, [])
        if k == "crossing":
            if deg != 4:
                out.append(f"crossing degree: vertex {p}")
                continue
            if len(ps) != 2:
                out.append(f"crossing passages: vertex {p}")
                continue
            rot = d.rotation[p]
            pair_pos = []
            for eid, i in ps:
                pp = paths[eid]
                e_in = d.plan.edge_id(pp[i - 1], p)
                e_out = d.plan.edge_id(p, pp[i + 1])
                pair_pos.append((rot.index(e_in), rot.index(e_out)))
            for a, b in pair_pos:
                if (a - b) % 4 != 2:
                    out.append(f"tangential intersection: vertex {p}")
                    break
        elif k == "subdivision":
            if deg != 2:
                out.append(f"subdivision degree: vertex {p}")
            elif len(ps) != 1:
                out.append(f"subdivision passages: vertex {p}")

    if out:
        return out

    # Per-component Euler formula, and the outer face index.
    try:
        faces = d.faces
    except (KeyError, ValueError) as exc:
        out.append(f"faces: {exc}")
        return out
    comp = d.plan_components
    ncomp = max(comp.values()) + 1 if comp else 0
    vcnt = [0] * ncomp
    ecnt = [0] * ncomp
    fcnt = [0] * ncomp
    for v in d.plan.vertices:
        vcnt[comp[v]] += 1
    for a, _ in d.plan.edges:
        ecnt[comp[a]] += 1
    for f in faces:
        fcnt[comp[f[0][0]]] += 1
    for i in range(ncomp):
        f = fcnt[i] if ecnt[i] else 1
        if vcnt[i] - ecnt[i] + f != 2:
            out.append(f"euler: plan component {i}")
    nfaces = len(faces)
    if nfaces == 0:
        if d.outer != 0:
            out.append("outer face: index out of range")
    elif not (0 <= d.outer < nfaces):
        out.append("outer face: index out of range")
    return out


# ===== Crossing counts =====


def crossings_per_edge(d: Drawing) -> dict[int, int]:
    """Base edge id -> number of crossings on its trace."""
    return {eid: len(xs) for eid, xs in d.edge_crossings.items()}


def is_k_planar(d: Drawing, k: int) -> bool:
    """True iff every base edge is crossed at most ``k`` times."""
    return all(c <= k for c in crossings_per_edge(d).values())


# ===== Subdivision plans and arcs =====


@dataclass(frozen=True)
class SubdivisionPlan:
    """Chosen subdivision points, as crossing-gap positions per base edge.

    For an edge whose trace passes crossings ``x_1 .. x_c`` in order, the
    valid positions are ``0 .. c``: position ``g`` lies between ``x_g`` and
    ``x_{g+1}`` (0 = before the first crossing, ``c`` = after the last).
    """

    cuts: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "cuts",
            {e: tuple(sorted(gs)) for e, gs in self.cuts.items() if len(gs) > 0},
        )


def _checked_cuts(d: Drawing, plan: Optional[SubdivisionPlan]) -> dict[int, tuple[int, ...]]:
    if plan is None:
        return {}
    out: dict[int, tuple[int, ...]] = {}
    for eid, gaps in plan.cuts.items():
        if not (0 <= eid < d.base.m):
            raise ValueError(f"unknown edge {eid} in subdivision plan")
        c = len(d.edge_crossings[eid])
        for g in gaps:
            if not (0 <= g <= c):
                raise ValueError("cut on crossing")
        out[eid] = tuple(sorted(gaps))
    return out


@dataclass(frozen=True, order=True)
class ArcRef:
    """A contiguous piece of a base edge, in crossing-gap coordinates.

    The arc spans gap ``lo`` to gap ``hi`` of its edge and owns the crossings
    with 1-based indices ``lo+1 .. hi``.  A whole uncut edge with ``c``
    crossings is ``ArcRef(e, 0, c)``.
    """

    edge: int
    lo: int
    hi: int


@dataclass(frozen=True)
class CrossingGraph:
    """Arcs as nodes, adjacent iff they share a crossing point."""

    nodes: tuple[ArcRef, ...]
    edges: tuple[tuple[int, int], ...]
    crossings: tuple[tuple[int, ...], ...]  # per node: its crossing plan vertices

    def components(self, nontrivial: bool = True) -> list[list[int]]:
        """Connected components (node index lists); optionally only those
        containing at least two arcs."""
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.nodes))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen: set[int] = set()
        comps: list[list[int]] = []
        for i in range(len(self.nodes)):
            if i in seen:
                continue
            comp = []
            stack = [i]
            seen.add(i)
            while stack:
                a = stack.pop()
                comp.append(a)
                for b in adj[a]:
                    if b not in seen:
                        seen.add(b)
                        stack.append(b)
            if not nontrivial or len(comp) >= 2:
                comps.append(sorted(comp))
        comps.sort(key=lambda c: c[0])
        return comps


def crossing_graph(d: Drawing, plan: Optional[SubdivisionPlan] = None) -> CrossingGraph:
    """The crossing graph of ``d``, optionally after cutting edges per ``plan``.

    Nodes are whole edges (no plan) or the arcs delimited by the plan's cut
    positions; piece indices follow cut order.  Crossing-free arcs appear as
    isolated nodes.
    """
    cuts = _checked_cuts(d, plan)
    nodes: list[ArcRef] = []
    crossings: list[tuple[int, ...]] = []
    owner: dict[tuple[int, int], int] = {}  # (edge, 1-based crossing idx) -> node
    for eid in range(d.base.m):
        xs = d.edge_crossings[eid]
        bounds = [0, *cuts.get(eid, ()), len(xs)]
        for lo, hi in zip(bounds, bounds[1:]):
            node = len(nodes)
            nodes.append(ArcRef(eid, lo, hi))
            crossings.append(xs[lo:hi])
            for j in range(lo + 1, hi + 1):
                owner[(eid, j)] = node
    by_point: dict[int, list[int]] = {}
    for (eid, j), node in owner.items():
        x = d.edge_crossings[eid][j - 1]
        by_point.setdefault(x, []).append(node)
    edges: set[tuple[int, int]] = set()
    for x, ns in by_point.items():
        if len(ns) != 2:
            raise ValueError(f"crossing {x} is not shared by exactly two arcs")
        a, b = sorted(ns)
        edges.add((a, b))
    return CrossingGraph(tuple(nodes), tuple(sorted(edges)), tuple(crossings))


# ===== Subdivision =====


def subdivide_with_map(
    d: Drawing, plan: SubdivisionPlan
) -> tuple["Drawing", dict[tuple[int, int], int], dict[int, tuple[int, int]]]:
    """Like :func:`subdivide`, also returning the arc correspondence.

    Returns ``(d2, arc_to_new, new_to_arc)`` where arcs are keyed by
    ``(original edge id, piece index)`` and map to base edge ids of ``d2``.
    Uncut edges count as their own single piece.
    """
    cuts = _checked_cuts(d, plan)
    fresh = max((*d.plan.vertices, *d.base.vertices), default=-1) + 1

    # Where each cut lands: the first plan edge of its gap, as a directed
    # path-edge index along the trace.
    split_at: dict[int, dict[int, list[int]]] = {}  # eid -> path edge idx -> new vids
    chains: dict[int, list[int]] = {}  # eid -> cut vertices in trace order
    for eid in sorted(cuts):
        path = d.paths[eid]
        xs_pos = [i for i, q in enumerate(path) if d.kind_of(q) == "crossing"]
        per_edge = split_at.setdefault(eid, {})
        chain = chains.setdefault(eid, [])
        for g in cuts[eid]:
            idx = 0 if g == 0 else xs_pos[g - 1]
            per_edge.setdefault(idx, []).append(fresh)
            chain.append(fresh)
            fresh += 1

    # New plan: replace each split plan edge by its chain.
    new_pedges: list[tuple[int, int]] = []
    dart_map: dict[Dart, Dart] = {}  # old directed plan edge -> new first dart
    vkind = dict(d.kind)
    sub_rot: dict[int, list[tuple[int, int]]] = {}
    replaced: set[int] = set()
    for eid, per_edge in split_at.items():
        path = d.paths[eid]
        for idx, new_vids in per_edge.items():
            a, b = path[idx], path[idx + 1]
            replaced.add(d.plan.edge_id(a, b))
            seq = [a, *new_vids, b]
            for x, y in zip(seq, seq[1:]):
                new_pedges.append((x, y))
            dart_map[(a, b)] = (a, seq[1])
            dart_map[(b, a)] = (b, seq[-2])
            for i, s in enumerate(new_vids):
                vkind[s] = f"real:{s}"
                sub_rot[s] = [(seq[i], s), (s, seq[i + 2])]
    for peid, (a, b) in enumerate(d.plan.edges):
        if peid not in replaced:
            new_pedges.append((a, b))
            dart_map[(a, b)] = (a, b)
            dart_map[(b, a)] = (b, a)
    new_plan = Graph.make(
        tuple(d.plan.vertices) + tuple(v for vs in chains.values() for v in vs),
        new_pedges,
    )

    # Rotations: positional replacement at old vertices, two-entry lists at
    # the new subdivision vertices.
    new_rotation: dict[int, tuple[int, ...]] = {}
    for v, rot in d.rotation.items():
        ids = []
        for old_eid in rot:
            a, b = d.plan.edges[old_eid]
            other = b if a == v else a
            na, nb = dart_map[(v, other)]
            ids.append(new_plan.edge_id(na, nb))
        new_rotation[v] = tuple(ids)
    for s, darts in sub_rot.items():
        new_rotation[s] = tuple(new_plan.edge_id(a, b) for a, b in darts)

    # New base and traces: each original edge splits at its cut vertices.
    # Piece endpoints are base vertex ids (real copies map back through kind).
    new_bverts = tuple(d.base.vertices) + tuple(v for vs in chains.values() for v in vs)
    piece_edges: dict[tuple[int, int], tuple[int, int]] = {}
    piece_paths: dict[tuple[int, int], list[int]] = {}
    for eid in range(d.base.m):
        path = d.paths[eid]
        per_edge = split_at.get(eid, {})
        full: list[int] = []
        for i, q in enumerate(path):
            full.append(q)
            if i in per_edge:
                full.extend(per_edge[i])
        chain = chains.get(eid, [])
        marks = [0] + [full.index(s) for s in chain] + [len(full) - 1]
        for j, (a, b) in enumerate(zip(marks, marks[1:])):
            piece_edges[(eid, j)] = (int(vkind[full[a]][5:]), int(vkind[full[b]][5:]))
            piece_paths[(eid, j)] = full[a : b + 1]
    new_base = Graph.make(new_bverts, piece_edges.values())
    new_trace: dict[int, tuple[int, ...]] = {}
    arc_to_new: dict[tuple[int, int], int] = {}
    for key, (x, y) in piece_edges.items():
        neid = new_base.edge_id(x, y)
        arc_to_new[key] = neid
        pp = piece_paths[key]
        new_trace[neid] = tuple(new_plan.edge_id(a, b) for a, b in zip(pp, pp[1:]))

    # Track the outer face through the refinement.
    if d.plan.m:
        a, b = d.faces[d.outer][0]
        na, nb = dart_map[(a, b)]
        d2 = Drawing(new_base, new_plan, new_rotation, vkind, new_trace, 0)
        outer = d2.face_of_dart((na, nb))
        d2 = Drawing(new_base, new_plan, new_rotation, vkind, new_trace, outer)
    else:
        d2 = Drawing(new_base, new_plan, new_rotation, vkind, new_trace, d.outer)
    new_to_arc = {neid: key for key, neid in arc_to_new.items()}
    return d2, arc_to_new, new_to_arc


def subdivide(d: Drawing, plan: SubdivisionPlan) -> Drawing:
    """Inserts the plan's cut vertices into the base graph.

    Cut vertices become real vertices of the result; each lands on the first
    plan edge of its gap.  Crossings, rotations, and faces are preserved.
    """
    return subdivide_with_map(d, plan)[0]


# ===== Planarization =====


def planarize(d: Drawing) -> tuple[Drawing, dict[int, int]]:
    """Promotes every plan vertex to a real vertex.

    Returns the crossing-free drawing of the plan graph itself, plus the map
    from former crossing vertices to their (identical) new base ids.
    """
    base = Graph.make(d.plan.vertices, d.plan.edges)
    kind = {p: f"real:{p}" for p in d.plan.vertices}
    trace = {eid: (eid,) for eid in range(base.m)}
    out = Drawing(base, d.plan, dict(d.rotation), kind, trace, d.outer)
    xmap = {p: p for p in d.plan.vertices if d.kind_of(p) == "crossing"}
    return out, xmap


# ===== Arc geometry: spans, sides, fan property =====


def _arc_bounds_ok(d: Drawing, arc: ArcRef) -> None:
    if not (0 <= arc.edge < d.base.m):
        raise ValueError(f"unknown edge {arc.edge} in arc")
    c = len(d.edge_crossings[arc.edge])
    if not (0 <= arc.lo <= arc.hi <= c):
        raise ValueError(f"arc span {arc} out of range")


def _materialize_arc(d: Drawing, arc: ArcRef) -> tuple[Drawing, int, dict[int, list[int]]]:
    """Cuts ``d`` so the arc becomes a base edge of its own.

    Returns ``(d2, arc edge id in d2, per-original-edge piece ids in order)``.
    """
    _arc_bounds_ok(d, arc)
    c = len(d.edge_crossings[arc.edge])
    cuts = tuple(sorted({arc.lo, arc.hi} - {0, c}))
    d2, arc_to_new, _ = subdivide_with_map(d, SubdivisionPlan({arc.edge: cuts} if cuts else {}))
    bounds = [0, *cuts, c]
    piece = next(
        j for j, (lo, hi) in enumerate(zip(bounds, bounds[1:])) if (lo, hi) == (arc.lo, arc.hi)
    )
    pieces: dict[int, list[int]] = {}
    for (eid, j), neid in sorted(arc_to_new.items()):
        pieces.setdefault(eid, []).append(neid)
    return d2, arc_to_new[(arc.edge, piece)], pieces


def stitched_path(d2: Drawing, piece_eids: Sequence[int], start_pvid: int) -> tuple[int, ...]:
    """Concatenates piece paths of one original edge, oriented from ``start_pvid``."""
    cur = start_pvid
    out = [cur]
    for neid in piece_eids:
        p = d2.paths[neid]
        if p[-1] == cur:
            p = tuple(reversed(p))
        if p[0] != cur:
            raise ValueError("pieces do not chain")
        out.extend(p[1:])
        cur = out[-1]
    return tuple(out)


def _passage_side(d: Drawing, alpha_path: Sequence[int], x: int, other_in: Dart) -> str:
    """Which side the dart ``other_in`` arrives from at crossing ``x``,
    relative to the orientation of ``alpha_path``."""
    i = alpha_path.index(x)
    a_in = d.plan.edge_id(alpha_path[i - 1], x)
    a_out = d.plan.edge_id(x, alpha_path[i + 1])
    o_in = d.plan.edge_id(other_in[0], other_in[1])
    rot = d.rotation[x]
    pos = rot.index(a_in)
    for step in range(1, 4):
        e = rot[(pos + step) % 4]
        if e == o_in:
            return "left"
        if e == a_out:
            return "right"
    raise ValueError("darts do not meet at the crossing")


def side_of_approach(d: Drawing, alpha: ArcRef, x: int, other: ArcRef, other_origin: int) -> str:
    """``"left"`` or ``"right"``: the side from which ``other`` comes to ``alpha``.

    ``alpha`` is oriented along its trace (from its smaller base endpoint);
    ``other`` is walked along its owning edge starting at the base vertex
    ``other_origin`` (the declared fan center).
    """
    _arc_bounds_ok(d, alpha)
    _arc_bounds_ok(d, other)
    xs = d.edge_crossings[alpha.edge]
    if x not in xs[alpha.lo : alpha.hi]:
        raise ValueError(f"crossing {x} not on the arc span")
    if x not in d.edge_crossings[other.edge]:
        raise ValueError(f"crossing {x} not on the other edge")
    u, v = d.base.edges[other.edge]
    if other_origin not in (u, v):
        raise ValueError("not a fan")
    opath = d.paths[other.edge]
    if other_origin == v:
        opath = tuple(reversed(opath))
    j = opath.index(x)
    return _passage_side(d, d.paths[alpha.edge], x, (opath[j - 1], x))


def _outer_class_face(d: Drawing, pvid: int) -> int:
    """The face representing the unbounded side for ``pvid``'s plan component:
    the drawing's outer face if it borders that component, else the
    component's canonically first face."""
    comp = d.plan_components[pvid]
    if d.faces and d.plan_components[d.faces[d.outer][0][0]] == comp:
        return d.outer
    for i, f in enumerate(d.faces):
        if d.plan_components[f[0][0]] == comp:
            return i
    raise ValueError("component has no faces")


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _fan_core(
    d: Drawing,
    alpha_path: Sequence[int],
    center_pvid: int,
    fan_paths: Sequence[Sequence[int]],
    strong: bool,
) -> bool:
    """The fan-property conditions over explicit plan paths.

    ``alpha_path`` is the arc's plan path; every entry of ``fan_paths`` is a
    full edge path oriented away from the fan center.  Checks: (1) each fan
    path meets the arc in exactly one crossing; (2) all approaches come from
    the same side; (3, strong only) deleting everything else never encloses
    an end of the arc.
    """
    alpha_x = {q for q in alpha_path[1:-1] if d.kind_of(q) == "crossing"}
    hits: list[tuple[int, Dart]] = []
    for fp in fan_paths:
        common = [q for q in fp if q in alpha_x]
        if len(common) != 1:
            return False
        x = common[0]
        j = fp.index(x)
        hits.append((x, (fp[j - 1], x)))
    sides = {_passage_side(d, alpha_path, x, din) for x, din in hits}
    if len(sides) > 1:
        return False
    if not strong:
        return True

    kept: set[int] = set()
    for seq in [alpha_path, *fan_paths]:
        for a, b in zip(seq, seq[1:]):
            kept.add(d.plan.edge_id(a, b))
    uf = _UnionFind(len(d.faces))
    for peid, (a, b) in enumerate(d.plan.edges):
        if peid not in kept:
            uf.union(d.face_of_dart((a, b)), d.face_of_dart((b, a)))
    outer = uf.find(_outer_class_face(d, alpha_path[0]))
    for p in (alpha_path[0], alpha_path[-1]):
        touching = set()
        for q in d.plan.neighbors(p):
            touching.add(d.face_of_dart((p, q)))
            touching.add(d.face_of_dart((q, p)))
        if not any(uf.find(f) == outer for f in touching):
            return False
    return True


def fan_property(d: Drawing, alpha: ArcRef, fan: Fan, strong: bool = False) -> bool:
    """Whether the fan's edges cross the arc once each, from one side, and
    (if ``strong``) without enclosing either end of the arc.

    The fan's edges are walked from its center.  An edge that does not cross
    the arc exactly once makes the property fail.
    """
    _arc_bounds_ok(d, alpha)
    for e in fan.edges:
        if not d.base.has_edge(*e):
            raise ValueError(f"fan edge {e} not in the drawing")
    if not d.base.has_vertex(fan.center):
        raise ValueError("not a fan")
    if not fan.edges:
        return True
    d2, alpha_eid, pieces = _materialize_arc(d, alpha)
    center_pvid = d2.real_pvid[fan.center]
    fan_paths = []
    for u, v in fan.edges:
        eid = d.base.edge_id(u, v)
        start = u if fan.center == u else v if fan.center == v else None
        assert start is not None  # Fan guarantees incidence
        fp = stitched_path(d2, pieces[eid], d2.real_pvid[start])
        fan_paths.append(fp)
    return _fan_core(d2, d2.paths[alpha_eid], center_pvid, fan_paths, strong)
