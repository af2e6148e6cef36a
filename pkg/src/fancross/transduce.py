"""Compiling drawings into colored planar graphs with bounded-path formulas.

Both compilations delete a small vertex set ``X`` from the drawn graph and
encode the crossing structure of a drawing of the remainder into vertex
colors of a crossing-free drawing, so that the original adjacency relation
is recovered by a fixed formula: either a color handshake through ``X`` or a
short colored path.

* ``transduce_kplanar`` consumes a k-planar drawing: every crossing becomes
  a ``b0`` vertex whose four subdivision neighbors say, via ``b1``/``b2``,
  which of the two edges they continue.
* ``transduce_clustered`` consumes a drawing with a verified k-fold
  ell-clustered fan-crossing certificate: each crossing cluster collapses to
  a ``b0`` hub whose spokes are colored by fan membership (``b_j`` on the
  center side, ``bP_j`` on the far side).

``eval_formula`` evaluates the formula by exact bounded-depth simple-path
search, and ``roundtrip`` checks that evaluation returns the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .cluster import Certificate, _arc_keys, verify_certificate
from .drawing import (
    Drawing,
    SubdivisionPlan,
    crossing_graph,
    is_k_planar,
    subdivide_with_map,
    validate,
)
from .graphs import ColorLabel, ColoredGraph, Graph, induced

# ===== Output containers =====


@dataclass(frozen=True)
class TransductionFormula:
    """Shape of the edge-recovery formula: mode, fold bound, path budget."""

    k: int
    mode: str
    max_path_len: int

    def __post_init__(self) -> None:
        if self.mode not in ("kplanar", "clustered"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.max_path_len != _path_budget(self.k, self.mode):
            raise ValueError("max_path_len does not match mode")

    @staticmethod
    def for_mode(k: int, mode: str) -> "TransductionFormula":
        return TransductionFormula(k, mode, _path_budget(k, mode))


def _path_budget(k: int, mode: str) -> int:
    return 3 * (k + 1) if mode == "kplanar" else 4 * k + 2


@dataclass(frozen=True)
class TransductionOutput:
    """A colored crossing-free graph plus the data needed to decode it.

    Fields:
        colored: the colored graph ``G`` (the deleted vertices sit in it as
            isolated vertices).
        embed: injection from the original vertices into ``V(G)``.
        formula: shape of the edge-recovery formula.
        x: the deleted vertex set, sorted.
    """

    colored: ColoredGraph
    embed: dict[int, int]
    formula: TransductionFormula
    x: tuple[int, ...]


# ===== Rotation-system surgery =====


class _RotSys:
    """A mutable rotation system; tolerates parallel edges mid-surgery.

    Every operation below preserves realizability in the plane, so the
    finished system materializes into a drawing that passes validation.
    """

    def __init__(self, d: Drawing) -> None:
        self.rot: dict[int, list[int]] = {v: list(r) for v, r in d.rotation.items()}
        self.ends: dict[int, tuple[int, int]] = dict(enumerate(d.plan.edges))
        self._fresh_e = d.plan.m
        self._fresh_v = max(d.plan.vertices, default=-1) + 1

    def other(self, eid: int, v: int) -> int:
        a, b = self.ends[eid]
        return b if a == v else a

    def new_edge_id(self) -> int:
        self._fresh_e += 1
        return self._fresh_e - 1

    def new_vertex_id(self) -> int:
        self._fresh_v += 1
        return self._fresh_v - 1

    def smooth(self, v: int) -> int:
        """Removes a degree-2 vertex, fusing its two edges into one."""
        e1, e2 = self.rot[v]
        p, q = self.other(e1, v), self.other(e2, v)
        ne = self.new_edge_id()
        self.ends[ne] = (p, q)
        self.rot[p][self.rot[p].index(e1)] = ne
        self.rot[q][self.rot[q].index(e2)] = ne
        del self.rot[v], self.ends[e1], self.ends[e2]
        return ne

    def contract(self, eid: int, keep: int) -> None:
        """Contracts an edge, merging its other endpoint into ``keep``.

        The absorbed rotation is spliced in at the edge's slot; edges that
        become loops are dropped (each drop merges two faces, keeping the
        system planar).
        """
        gone = self.other(eid, keep)
        ra, rb = self.rot[keep], self.rot[gone]
        ia, ib = ra.index(eid), rb.index(eid)
        spliced = ra[:ia] + rb[ib + 1 :] + rb[:ib] + ra[ia + 1 :]
        del self.rot[gone], self.ends[eid]
        for f in rb:
            if f == eid:
                continue
            a, b = self.ends[f]
            self.ends[f] = (keep if a == gone else a, keep if b == gone else b)
        kept = [f for f in spliced if self.ends[f][0] != self.ends[f][1]]
        for f in set(spliced) - set(kept):
            del self.ends[f]
        self.rot[keep] = kept

    def remove_edge(self, eid: int) -> None:
        a, b = self.ends.pop(eid)
        self.rot[a].remove(eid)
        self.rot[b].remove(eid)

    def subdivide_edge(self, eid: int) -> tuple[int, int, int]:
        """Splits an edge once; returns the new vertex and its two edges."""
        a, b = self.ends.pop(eid)
        s = self.new_vertex_id()
        e1, e2 = self.new_edge_id(), self.new_edge_id()
        self.ends[e1] = (a, s)
        self.ends[e2] = (s, b)
        self.rot[a][self.rot[a].index(eid)] = e1
        self.rot[b][self.rot[b].index(eid)] = e2
        self.rot[s] = [e1, e2]
        return s, e1, e2

    def materialize(self) -> tuple[Drawing, dict[int, int]]:
        """Builds the crossing-free drawing of the finished system.

        Returns the drawing plus the map from local edge ids to base ids.
        """
        verts = sorted(self.rot)
        pairs = {e: (min(ab), max(ab)) for e, ab in self.ends.items()}
        if len(set(pairs.values())) != len(pairs):
            raise ValueError("construction invariant broken")
        base = Graph.make(verts, pairs.values())
        emap = {e: base.edge_id(*ab) for e, ab in pairs.items()}
        rotation = {v: tuple(emap[e] for e in self.rot[v]) for v in verts}
        kind = {v: f"real:{v}" for v in verts}
        trace = {i: (i,) for i in range(base.m)}
        return Drawing(base, base, rotation, kind, trace, 0), emap


def _smooth_bends(d: Drawing, rs: _RotSys) -> dict[int, int]:
    """Removes bend vertices; returns local edge id -> owning base edge id."""
    owner = {pe: eid for eid, t in d.trace.items() for pe in t}
    for b in sorted(p for p in d.plan.vertices if d.kind_of(p) == "subdivision"):
        e1, _e2 = rs.rot[b]
        owner[rs.smooth(b)] = owner[e1]
    return owner


# ===== Shared input checks and assembly =====


def _checked_x(d: Drawing, x_edges: Mapping[int, Iterable[int]], k: int) -> dict[int, tuple[int, ...]]:
    """Validates the deleted vertex set and symmetrizes its edge lists."""
    xs = {int(v) for v in x_edges}
    if len(xs) > k:
        raise ValueError("|X| > k")
    base = set(d.base.vertices)
    if xs & base:
        raise ValueError("X overlaps the drawing")
    verts = base | xs
    norm: dict[int, set[int]] = {v: set() for v in xs}
    for xv, nbrs in x_edges.items():
        for w in nbrs:
            w = int(w)
            if w == int(xv) or w not in verts:
                raise ValueError(f"unknown neighbor {w} of {xv}")
            norm[int(xv)].add(w)
    for xv in sorted(norm):
        for w in norm[xv]:
            if w in norm:
                norm[w].add(xv)
    return {v: tuple(sorted(ws)) for v, ws in norm.items()}


def _checked_drawing(d: Drawing, k: int) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    errs = validate(d)
    if errs:
        raise ValueError(f"invalid drawing: {errs[0]}")


def _assemble(
    d: Drawing,
    rs: _RotSys,
    real_of: dict[int, int],
    colors_s: dict[int, set[ColorLabel]],
    x_edges: dict[int, tuple[int, ...]],
    k: int,
    mode: str,
) -> TransductionOutput:
    """Validates the surgered system and relabels it into the output graph."""
    dd, _ = rs.materialize()
    if validate(dd):
        raise ValueError("construction invariant broken")
    hverts = sorted(set(d.base.vertices) | set(x_edges))
    fresh = max(hverts, default=-1) + 1
    ren: dict[int, int] = {}
    for p in dd.base.vertices:
        if p in real_of:
            ren[p] = real_of[p]
    for p in dd.base.vertices:
        if p not in ren:
            ren[p] = fresh
            fresh += 1
    gverts = sorted(ren.values()) + sorted(x_edges)
    gedges = [(ren[a], ren[b]) for a, b in dd.base.edges]
    g = Graph.make(gverts, gedges)
    colors: dict[int, set[ColorLabel]] = {ren[p]: set(ls) for p, ls in colors_s.items()}
    for i, xv in enumerate(sorted(x_edges), start=1):
        colors.setdefault(xv, set()).add(ColorLabel("c", i))
        for w in x_edges[xv]:
            colors.setdefault(w, set()).add(ColorLabel("cP", i))
    colored = ColoredGraph(g, {v: frozenset(ls) for v, ls in colors.items()})
    embed = {v: v for v in hverts}
    return TransductionOutput(colored, embed, TransductionFormula.for_mode(k, mode), tuple(sorted(x_edges)))


# ===== Mode (a): k-planar drawings =====


def transduce_kplanar(
    d: Drawing, x_edges: Mapping[int, Iterable[int]], k: int
) -> TransductionOutput:
    """Compiles a k-planar drawing (of the graph minus ``X``) into colors.

    ``x_edges`` maps each deleted vertex to its neighbors in the full graph.
    Every crossing becomes a ``b0`` vertex; each incident strand is
    subdivided twice and the subdivision vertex next to the crossing names
    its edge: ``b1`` for the smaller base edge id, ``b2`` for the larger.
    """
    _checked_drawing(d, k)
    if not is_k_planar(d, k):
        raise ValueError("not k-planar")
    xn = _checked_x(d, x_edges, k)

    rs = _RotSys(d)
    owner = _smooth_bends(d, rs)
    rank: dict[tuple[int, int], int] = {}
    for x, eids in _crossing_edges(d).items():
        rank[(x, min(eids))] = 1
        rank[(x, max(eids))] = 2
    colors_s: dict[int, set[ColorLabel]] = {
        p: {ColorLabel("b", 0)}
        for p in d.plan.vertices
        if d.kind_of(p) == "crossing"
    }
    is_crossing = {p for p in d.plan.vertices if d.kind_of(p) == "crossing"}
    for e in sorted(rs.ends):
        a, b = rs.ends[e]
        own = owner[e]
        s1, _, tail = rs.subdivide_edge(e)
        s2, _, _ = rs.subdivide_edge(tail)
        if a in is_crossing:
            colors_s.setdefault(s1, set()).add(ColorLabel("b", rank[(a, own)]))
        if b in is_crossing:
            colors_s.setdefault(s2, set()).add(ColorLabel("b", rank[(b, own)]))

    real_of = {d.real_pvid[v]: v for v in d.base.vertices}
    return _assemble(d, rs, real_of, colors_s, xn, k, "kplanar")


def _crossing_edges(d: Drawing) -> dict[int, tuple[int, int]]:
    """Crossing plan vertex -> the two base edge ids meeting there."""
    at: dict[int, list[int]] = {}
    for eid, xs in d.edge_crossings.items():
        for x in xs:
            at.setdefault(x, []).append(eid)
    return {x: (eids[0], eids[1]) for x, eids in at.items()}


# ===== Mode (b): clustered fan-crossing drawings =====


def transduce_clustered(
    d: Drawing, cert: Certificate, x_edges: Mapping[int, Iterable[int]], k: int
) -> TransductionOutput:
    """Compiles a drawing with a verified clustered certificate into colors.

    After cutting per the certificate and shielding every original vertex
    behind a crossing-free stub edge, each crossing cluster is contracted to
    a ``b0`` hub.  Each spoke is subdivided once and colored by fan
    membership of its endpoint: ``b_j`` if the endpoint is reachable from
    fan ``j``'s center without traversing the cluster, ``bP_j`` otherwise.
    """
    _checked_drawing(d, k)
    report = verify_certificate(d, cert, strong=False)
    if not report.verdict or cert.k > k or cert.ell > k:
        raise ValueError("certificate invalid")
    xn = _checked_x(d, x_edges, k)

    # Cut per certificate, then add a stub cut next to every original
    # endpoint so no original vertex touches a crossed edge.
    d2, arc_to_new, _ = subdivide_with_map(d, cert.plan)
    orig = set(d.base.vertices)
    stub_cuts: dict[int, tuple[int, ...]] = {}
    for e2, (u, v) in enumerate(d2.base.edges):
        c2 = len(d2.edge_crossings[e2])
        gaps = (0,) * (u in orig) + (c2,) * (v in orig)
        if gaps:
            stub_cuts[e2] = gaps
    d1, arc2_to_new, _ = subdivide_with_map(d2, SubdivisionPlan(stub_cuts))

    pieces_d2: dict[int, list[int]] = {}
    for (eid, piece), ne in sorted(arc_to_new.items()):
        pieces_d2.setdefault(eid, []).append(ne)
    pieces_d1: dict[int, list[int]] = {}
    for (e2, piece), ne in sorted(arc2_to_new.items()):
        pieces_d1.setdefault(e2, []).append(ne)

    def strands(eid: int) -> list[int]:
        return [ne for e2 in pieces_d2[eid] for ne in pieces_d1[e2]]

    cg = crossing_graph(d, cert.plan)
    keys = _arc_keys(cg)
    node_of = {key: n for n, key in keys.items()}
    comps = cg.components(nontrivial=True)

    rs = _RotSys(d1)
    _smooth_bends(d1, rs)
    colors_s: dict[int, set[ColorLabel]] = {}
    for v in d1.base.vertices:
        if v not in orig:
            colors_s[d1.real_pvid[v]] = {ColorLabel("bP", 0)}

    for ci, comp in enumerate(comps):
        cluster = {arc2_to_new[(arc_to_new[keys[n]], _crossed_piece(d1, arc_to_new[keys[n]], pieces_d1))] for n in comp}
        # Reachable / far endpoint sets per fan of this component's cover.
        fan_sides: list[tuple[set[int], set[int]]] = []
        for fan in cert.covers[ci]:
            incident: set[int] = set()
            near: set[int] = set()
            for u, v in fan.edges:
                eid = d.base.edge_id(u, v)
                cur = fan.center
                reachable = True
                for ne in _chain_from(d1.base, strands(eid), fan.center):
                    a, b = d1.base.edges[ne]
                    far = b if a == cur else a
                    if ne in cluster:
                        incident.update((cur, far))
                        if reachable:
                            near.add(cur)
                            reachable = False
                    cur = far
            fan_sides.append((near, incident - near))

        interior = sorted({x for n in comp for x in cg.crossings[n]})
        hub = interior[0]
        leaves = sorted(
            {d1.real_pvid[w] for ne in cluster for w in d1.base.edges[ne]}
        )
        _contract_into(rs, hub, set(interior))
        colors_s[hub] = {ColorLabel("b", 0)}
        for leaf in leaves:
            spokes = [e for e in rs.rot[leaf] if rs.other(e, leaf) == hub]
            for e in spokes[1:]:
                rs.remove_edge(e)
            s, _, _ = rs.subdivide_edge(spokes[0])
            lb = int(d1.kind[leaf][5:])
            marks = set()
            for j, (near, far) in enumerate(fan_sides, start=1):
                if lb in near:
                    marks.add(ColorLabel("b", j))
                if lb in far:
                    marks.add(ColorLabel("bP", j))
            colors_s[s] = marks

    real_of = {d1.real_pvid[v]: v for v in d.base.vertices}
    return _assemble(d, rs, real_of, colors_s, xn, k, "clustered")


def _crossed_piece(d1: Drawing, e2: int, pieces_d1: dict[int, list[int]]) -> int:
    """The piece index (within its cut edge) that carries the crossings."""
    for piece, ne in enumerate(pieces_d1[e2]):
        if d1.edge_crossings[ne]:
            return piece
    raise ValueError("construction invariant broken")


def _chain_from(g: Graph, eids: list[int], start: int) -> list[int]:
    """Orders path-forming edges by walking from the endpoint ``start``."""
    inc: dict[int, list[int]] = {}
    for e in eids:
        u, v = g.edges[e]
        inc.setdefault(u, []).append(e)
        inc.setdefault(v, []).append(e)
    out: list[int] = []
    used: set[int] = set()
    cur = start
    while len(out) < len(eids):
        step = [e for e in inc[cur] if e not in used]
        if len(step) != 1:
            raise ValueError("construction invariant broken")
        e = step[0]
        used.add(e)
        out.append(e)
        u, v = g.edges[e]
        cur = v if u == cur else u
    return out


def _contract_into(rs: _RotSys, keep: int, interior: set[int]) -> None:
    """Contracts a connected vertex set (plus its inner edges) into one."""
    left = interior - {keep}
    while left:
        eid = next(
            (e for e in rs.rot[keep] if rs.other(e, keep) in left), None
        )
        if eid is None:
            raise ValueError("construction invariant broken")
        gone = rs.other(eid, keep)
        rs.contract(eid, keep)
        left.discard(gone)


# ===== Formula evaluation =====


def eval_formula(out: TransductionOutput) -> Graph:
    """Evaluates the edge-recovery formula on the colored graph.

    Returns the decoded graph on the original vertex set.  An edge is
    present iff the color handshake for some deleted vertex holds, or a
    simple path within the length budget satisfies the positional color
    constraints of the mode.
    """
    hverts = sorted(out.embed)
    edges = []
    for a, b in combinations(hverts, 2):
        ga, gb = out.embed[a], out.embed[b]
        if _handshake(out.colored, ga, gb, out.formula.k) or _witness_path(
            out.colored, ga, gb, out.formula
        ):
            edges.append((a, b))
    return Graph.make(hverts, edges)


def _handshake(cg: ColoredGraph, ga: int, gb: int, k: int) -> bool:
    la, lb = cg.labels(ga), cg.labels(gb)
    for i in range(1, k + 1):
        ci, cpi = ColorLabel("c", i), ColorLabel("cP", i)
        if (ci in la and cpi in lb) or (ci in lb and cpi in la):
            return True
    return False


def _witness_path(cg: ColoredGraph, gx: int, gy: int, f: TransductionFormula) -> bool:
    """Exact bounded-depth simple-path search for the path clause."""
    g = cg.graph
    labels = cg.labels
    b0 = ColorLabel("b", 0)
    if f.mode == "kplanar":
        body = (ColorLabel("b", 1), ColorLabel("b", 2))
        allowed = frozenset()
    else:
        body = ()
        allowed = frozenset(
            {ColorLabel("bP", 0)}
            | {ColorLabel(kd, j) for kd in ("b", "bP") for j in range(1, f.k + 1)}
        )

    def mid_ok(prev: int, z: int, nxt: int) -> bool:
        lz = labels(z)
        if f.mode == "kplanar":
            if body[0] in lz or body[1] in lz:
                return True
            if b0 not in lz:
                return False
            lp, ln = labels(prev), labels(nxt)
            return any(c in lp and c in ln for c in body)
        if allowed & lz:
            return True
        if b0 not in lz:
            return False
        lp, ln = labels(prev), labels(nxt)
        for j in range(1, f.k + 1):
            bj, bpj = ColorLabel("b", j), ColorLabel("bP", j)
            if (bj in lp and bpj in ln) or (bpj in lp and bj in ln):
                return True
        return False

    def may_enter(v: int, position: int) -> bool:
        if f.mode == "kplanar":
            return True
        lv = labels(v)
        if allowed & lv:
            return True
        return b0 in lv and position >= 2

    def may_close(z: int, internals: int) -> bool:
        if internals == 0 or f.mode == "kplanar":
            return True
        return bool(allowed & labels(z))

    path = [gx]
    onpath = {gx}

    def dfs() -> bool:
        cur = path[-1]
        used = len(path) - 1
        for w in g.neighbors(cur):
            if w == gy:
                if used + 1 <= f.max_path_len and may_close(cur, used):
                    return True
                continue
            if w in onpath or used + 1 > f.max_path_len - 1:
                continue
            if not may_enter(w, used + 1):
                continue
            if used >= 2 and not mid_ok(path[-2], cur, w):
                continue
            path.append(w)
            onpath.add(w)
            if dfs():
                return True
            path.pop()
            onpath.remove(w)
        return False

    if gx == gy:
        return False
    return dfs()


def roundtrip(
    h: Graph,
    d: Drawing,
    x: Iterable[int],
    k: int,
    mode: str,
    cert: Optional[Certificate] = None,
) -> bool:
    """Compiles, evaluates, and compares against the original graph."""
    xs = sorted({int(v) for v in x})
    base = set(d.base.vertices)
    if set(h.vertices) != base | set(xs) or set(xs) & base:
        raise ValueError("drawing does not match the graph")
    if induced(h, base) != d.base:
        raise ValueError("drawing does not match the graph")
    x_edges = {v: h.neighbors(v) for v in xs}
    if mode == "kplanar":
        out = transduce_kplanar(d, x_edges, k)
    elif mode == "clustered":
        if cert is None:
            raise ValueError("certificate invalid")
        out = transduce_clustered(d, cert, x_edges, k)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return eval_formula(out) == h


# ===== Formula rendering =====


def render_formula(f: TransductionFormula) -> str:
    """Deterministic text of the edge-recovery formula.

    One disjunct per handshake index and per path length, with a separate
    existential quantifier for every internal path vertex.
    """
    alts = [
        f"(c{i}(x) & cP{i}(y)) | (cP{i}(x) & c{i}(y))" for i in range(1, f.k + 1)
    ]
    for p in range(f.max_path_len):
        alts.append(_path_disjunct(f, p))
    return "xi(x, y) :=\n    " + "\n  | ".join(alts) + "\n"


def _path_disjunct(f: TransductionFormula, p: int) -> str:
    names = ["x"] + [f"z{i}" for i in range(1, p + 1)] + ["y"]
    quants = "".join(f"exists {z}: " for z in names[1:-1])
    atoms = [f"adj({a}, {b})" for a, b in zip(names, names[1:])]
    atoms += [f"{a} ~= {b}" for a, b in combinations(names, 2)]
    for i in range(1, p + 1):
        cons = _position_constraint(f, names, i, p)
        if cons:
            atoms.append(cons)
    return "(" + quants + " & ".join(atoms) + ")"


def _position_constraint(
    f: TransductionFormula, names: list[str], i: int, p: int
) -> str:
    z, prev, nxt = names[i], names[i - 1], names[i + 1]
    if f.mode == "kplanar":
        if not 1 < i < p:
            return ""
        hub = f"(b0({z}) & ((b1({prev}) & b1({nxt})) | (b2({prev}) & b2({nxt}))))"
        return f"(b1({z}) | b2({z}) | {hub})"
    plain = [f"bP0({z})"]
    for j in range(1, f.k + 1):
        plain += [f"b{j}({z})", f"bP{j}({z})"]
    if 1 < i < p:
        swaps = []
        for j in range(1, f.k + 1):
            swaps.append(f"(b{j}({prev}) & bP{j}({nxt}))")
            swaps.append(f"(bP{j}({prev}) & b{j}({nxt}))")
        plain.append(f"(b0({z}) & ({' | '.join(swaps)}))")
    return "(" + " | ".join(plain) + ")"
