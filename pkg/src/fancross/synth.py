"""Synthesis of clustered fan-crossing drawings from shallow minor models.

Given a crossing-free drawing of a host graph and a minor model of a pattern
graph whose branch sets have congestion and radius at most ``k``,
:func:`synthesize` draws the pattern itself: every pattern vertex sits at the
radius center of its branch set, every pattern edge follows a short route
through the two branch trees, and all crossings are confined to small disk
regions, one around each host vertex and one at the midpoint of each host
edge that connects two disjoint branch sets.  The construction then emits
subdivision cuts, fan covers, and an arc assignment certifying the drawing
as clustered strongly fan-crossing, and checks its own output with the
independent verifier before returning it; on failure it retries with the
opposite bundle order, and if that also fails it refuses to answer rather
than return an unverified drawing.

Region interiors are realized as straight chords between exact rational
points on a convex arc: two chords cross exactly when their boundary
positions interleave, so the whole arrangement is decided by exact
orientation tests, and lane orderings chosen per region make same-owner
chords nested rather than crossing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional

from .cluster import Certificate, verify_certificate
from .drawing import Drawing, SubdivisionPlan, crossing_graph, validate
from .geometry import Point, cross_point, param_along, properly_cross, sort_ccw
from .graphs import Fan, Graph, radius_center
from .minors import MinorModel, strip_universal, verify_model

__all__ = ["RegionTag", "SynthResult", "synthesize", "pipeline_theorem2"]


# ===== Result types =====


@dataclass(frozen=True)
class RegionTag:
    """Which disk region one crossing lives in: a host vertex or host edge."""

    kind: str
    ref: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ref", tuple(int(x) for x in self.ref))
        if self.kind == "vertexRegion":
            if len(self.ref) != 1:
                raise ValueError("vertexRegion needs one host vertex")
        elif self.kind == "edgeRegion":
            if len(self.ref) != 2:
                raise ValueError("edgeRegion needs two host vertices")
        else:
            raise ValueError(f"unknown region kind {self.kind!r}")


@dataclass(frozen=True)
class SynthResult:
    """A drawn pattern together with its certificate and provenance maps.

    ``tags`` names the host region holding each crossing vertex of the plan,
    and ``routes`` gives the host-vertex walk realizing each pattern edge.
    """

    drawing: Drawing
    cert: Certificate
    kPrime: int
    tags: dict[int, RegionTag]
    routes: dict[int, tuple[int, ...]]


# ===== Input checking =====


def _checked_inputs(host: Drawing, m: MinorModel) -> int:
    errs = validate(host)
    if errs:
        raise ValueError(f"invalid drawing: {errs[0]}")
    if any(host.kind[pv] == "crossing" for pv in host.plan.vertices):
        raise ValueError("host drawing has crossings")
    if host.base != m.host:
        raise ValueError("drawing does not match the host")
    if m.c != m.d:
        raise ValueError("model must have c = d")
    bad = verify_model(m)
    if bad:
        raise ValueError(f"invalid model: {bad[0]}")
    return m.c


# ===== Branch trees, connectors, and routes =====


def _branch_tree(g: Graph, branch: tuple[int, ...]) -> tuple[int, dict[int, int]]:
    """Root and parent map of a breadth-first spanning tree of a branch set."""
    root, _ = radius_center(g, branch)
    inside = set(branch)
    parent = {root: root}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(g.neighbors(u)):
                if w in inside and w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = sorted(nxt)
    return root, parent


def _tree_path(parent: dict[int, int], root: int, target: int) -> list[int]:
    path = [target]
    while path[-1] != root:
        path.append(parent[path[-1]])
    path.reverse()
    return path


@dataclass(frozen=True)
class _Route:
    """One pattern edge routed through the virtual host.

    ``regions`` walks from the smaller endpoint's root to the larger's and
    may pass synthetic edge-midpoint regions; ``jidx`` indexes the meeting
    region, ``conn_eid`` is the connecting host edge for disjoint branch
    sets, and ``segments`` lists ``(host edge id, corridor boundaries)``
    per host edge along the walk.
    """

    eid: int
    v: int
    w: int
    regions: tuple[int, ...]
    jidx: int
    conn_eid: Optional[int]
    segments: tuple[tuple[int, tuple[int, ...]], ...]
    real_path: tuple[int, ...]


def _expand(path: list[int], g: Graph, mid_of: dict[int, int]) -> list[int]:
    """Insert synthetic midpoint regions on every traversal of a split edge."""
    out = [path[0]]
    for a, b in zip(path, path[1:]):
        heid = g.edge_id(a, b)
        if heid in mid_of:
            out.append(mid_of[heid])
        out.append(b)
    return out


def _make_routes(
    m: MinorModel,
    roots: dict[int, int],
    parents: dict[int, dict[int, int]],
) -> tuple[list[_Route], dict[int, int], dict[int, int]]:
    """Route every pattern edge; returns routes and the midpoint id maps."""
    branch_sets = {x: set(m.branch[x]) for x in m.pattern.vertices}
    conns: dict[int, tuple[str, tuple[int, ...]]] = {}
    split: set[int] = set()
    for eid, (v, w) in enumerate(m.pattern.edges):
        shared = sorted(branch_sets[v] & branch_sets[w])
        if shared:
            conns[eid] = ("vertex", (shared[0],))
        else:
            found = None
            for heid, (a, b) in enumerate(m.host.edges):
                if a in branch_sets[v] and b in branch_sets[w]:
                    found = (heid, a, b)
                    break
                if a in branch_sets[w] and b in branch_sets[v]:
                    found = (heid, b, a)
                    break
            if found is None:
                raise ValueError("construction invariant broken")
            heid, av, aw = found
            conns[eid] = ("edge", (heid, av, aw))
            split.add(heid)

    base = max(m.host.vertices, default=-1) + 1
    mid_of = {heid: base + i for i, heid in enumerate(sorted(split))}
    eid_of_mid = {mid: heid for heid, mid in mid_of.items()}

    routes = []
    for eid, (v, w) in enumerate(m.pattern.edges):
        kind, data = conns[eid]
        if kind == "vertex":
            conn_eid = None
            tv, tw = data[0], data[0]
        else:
            conn_eid, tv, tw = data
        vpath = _expand(_tree_path(parents[v], roots[v], tv), m.host, mid_of)
        wpath = _expand(_tree_path(parents[w], roots[w], tw), m.host, mid_of)
        if conn_eid is not None:
            vpath.append(mid_of[conn_eid])
            wpath.append(mid_of[conn_eid])
        wpos = {u: i for i, u in enumerate(wpath)}
        jidx = next(i for i, u in enumerate(vpath) if u in wpos)
        regions = vpath[: jidx + 1] + wpath[: wpos[vpath[jidx]]][::-1]

        segs = []
        i = 1
        while i < len(regions):
            a, b = regions[i - 1], regions[i]
            if b in eid_of_mid:
                segs.append((eid_of_mid[b], (i, i + 1)))
                i += 2
            else:
                segs.append((m.host.edge_id(a, b), (i,)))
                i += 1
        real_path = tuple(r for r in regions if r not in eid_of_mid)
        routes.append(
            _Route(eid, v, w, tuple(regions), jidx, conn_eid, tuple(segs), real_path)
        )
    return routes, mid_of, eid_of_mid


# ===== Outer-face anchoring =====


def _host_outer_anchor(
    host: Drawing, used: set[int]
) -> Optional[tuple[int, bool]]:
    """A used host edge bordering the outer area, and its outward side.

    Host faces merge across every unused host edge; the anchor is the first
    used edge with the merged outer class on one side, reported together
    with the direction whose left side is outer.
    """
    nf = len(host.faces)
    parent = list(range(nf))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for heid in range(host.base.m):
        if heid not in used:
            p = host.paths[heid]
            a = find(host.face_of_dart((p[0], p[1])))
            b = find(host.face_of_dart((p[1], p[0])))
            parent[a] = b
    cls = find(host.outer)
    for heid in sorted(used):
        p = host.paths[heid]
        if find(host.face_of_dart((p[0], p[1]))) == cls:
            return heid, True
        if find(host.face_of_dart((p[-1], p[-2]))) == cls:
            return heid, False
    return None


# ===== Region arenas =====


def _arena(
    vids: list[int],
    chords: list[tuple[tuple[int, int], int, int]],
    fresh: Iterator[int],
) -> tuple[
    dict[tuple[int, int], list[int]],
    list[tuple[int, int]],
    dict[int, tuple[int, ...]],
    list[int],
]:
    """Realize one region as straight chords between convex positions.

    Positions sit on a parabola at slightly jittered abscissae; the jitter
    is retried until no three chords pass through a common point.  Returns
    the plan-vertex chain of every chord, the chord fragment edges, the
    circular neighbor order at crossings and at positions of degree two or
    more, and the new crossing vertex ids.
    """
    n = len(vids)
    pts: list[Point] = []
    recs: list[tuple[Point, int, int]] = []
    for attempt in range(1000):
        denom = 999983 * 2000
        pts = []
        for j in range(n):
            t = Fraction(
                j * denom + attempt * ((j * j * 7919 + j * 104729 + 12345) % 999983),
                denom,
            )
            pts.append((t, t * t))
        seen: set[Point] = set()
        recs = []
        ok = True
        for i, (_, a1, b1) in enumerate(chords):
            for j in range(i + 1, len(chords)):
                _, a2, b2 = chords[j]
                if {a1, b1} & {a2, b2}:
                    continue
                if not properly_cross(pts[a1], pts[b1], pts[a2], pts[b2]):
                    continue
                x = cross_point(pts[a1], pts[b1], pts[a2], pts[b2])
                if x in seen:
                    ok = False
                    break
                seen.add(x)
                recs.append((x, i, j))
            if not ok:
                break
        if ok:
            break
    else:
        raise ValueError("construction invariant broken")

    recs.sort(key=lambda r: r[0])
    xids = [next(fresh) for _ in recs]

    events: dict[int, list[tuple[Fraction, int, Point]]] = {}
    for idx, (_, a, b) in enumerate(chords):
        events[idx] = [(Fraction(0), vids[a], pts[a]), (Fraction(1), vids[b], pts[b])]
    for (x, i, j), xv in zip(recs, xids):
        for c in (i, j):
            _, a, b = chords[c]
            events[c].append((param_along(pts[a], pts[b], x), xv, x))

    chains: dict[tuple[int, int], list[int]] = {}
    edges: list[tuple[int, int]] = []
    around: dict[int, list[tuple[int, tuple[Fraction, Fraction]]]] = {}
    endpoint_rays: dict[int, list[tuple[int, tuple[Fraction, Fraction]]]] = {}
    for idx, (ref, a, b) in enumerate(chords):
        evs = sorted(events[idx], key=lambda e: e[0])
        chains[ref] = [vid for _, vid, _ in evs]
        for (_, va, pa), (_, vb, pb) in zip(evs, evs[1:]):
            edges.append((va, vb))
        for t in range(1, len(evs) - 1):
            _, xv, xp = evs[t]
            for s in (t - 1, t + 1):
                _, nv, np_ = evs[s]
                around.setdefault(xv, []).append(
                    (nv, (np_[0] - xp[0], np_[1] - xp[1]))
                )
        for endpos, nbpos in ((a, 1), (b, len(evs) - 2)):
            _, nv, np_ = evs[nbpos]
            p0 = pts[endpos]
            endpoint_rays.setdefault(endpos, []).append(
                (nv, (np_[0] - p0[0], np_[1] - p0[1]))
            )

    rots: dict[int, tuple[int, ...]] = {}
    for xv, items in around.items():
        rots[xv] = tuple(sort_ccw(items))
    for pos, items in endpoint_rays.items():
        if len(items) >= 2:
            rots[vids[pos]] = tuple(sort_ccw(items))
    return chains, edges, rots, xids


# ===== The builder =====


def _corr(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class _Builder:
    """One synthesis attempt with a fixed bundle orientation."""

    def __init__(
        self,
        host: Drawing,
        m: MinorModel,
        k: int,
        routes: list[_Route],
        roots: dict[int, int],
        mid_of: dict[int, int],
        eid_of_mid: dict[int, int],
        anchor: Optional[tuple[int, bool]],
        flip: bool,
    ) -> None:
        self.host = host
        self.m = m
        self.k = k
        self.routes = routes
        self.roots = roots
        self.mid_of = mid_of
        self.eid_of_mid = eid_of_mid
        self.anchor = anchor
        self.flip = flip

    # -- lanes and groups --

    def _collect_lanes(self) -> None:
        self.lanes: dict[tuple[int, int], dict[int, list[int]]] = {}
        self.source_of: dict[tuple[tuple[int, int], int], int] = {}
        self.passing: dict[tuple[tuple[int, int], int], bool] = {}
        self.route_pos: dict[int, dict[int, int]] = {}
        regions: set[int] = set(self.roots.values())
        for r in self.routes:
            self.route_pos[r.eid] = {u: i for i, u in enumerate(r.regions)}
            regions.update(r.regions)
            for i in range(1, len(r.regions)):
                a, b = r.regions[i - 1], r.regions[i]
                c = _corr(a, b)
                if i <= r.jidx:
                    owner, src, goes_on = r.v, a, i < r.jidx
                else:
                    owner, src, goes_on = r.w, b, i > r.jidx + 1
                self.lanes.setdefault(c, {}).setdefault(owner, []).append(r.eid)
                self.source_of[(c, owner)] = src
                key = (c, owner)
                self.passing[key] = self.passing.get(key, False) or goes_on
        self.regions = sorted(regions)
        self.roots_at: dict[int, list[int]] = {}
        for x in sorted(self.roots):
            self.roots_at.setdefault(self.roots[x], []).append(x)

    def _group_lists(self) -> None:
        """Per corridor and end: the circular order of owner groups."""
        self.glist: dict[tuple[int, int], dict[int, list[int]]] = {}
        for c in self.lanes:
            owners = sorted(self.lanes[c])
            r1, r2 = c
            if r2 in self.eid_of_mid:
                a, _b = self.host.base.edges[self.eid_of_mid[r2]]
                goes = [x for x in owners if self.passing[(c, x)]]
                ends = [x for x in owners if not self.passing[(c, x)]]
                if r1 == a:
                    at_far = goes + ends
                else:
                    at_far = ends[::-1] + goes[::-1]
                if self.flip:
                    at_far = at_far[::-1]
                self.glist[c] = {r2: at_far, r1: at_far[::-1]}
            else:
                at_min = owners[::-1] if self.flip else owners
                self.glist[c] = {r1: at_min, r2: at_min[::-1]}

    def _region_rotations(self) -> None:
        """Corridors around each region, in the host's circular order."""
        base_rot: dict[int, list[int]] = {}
        owner_of = {
            pe: beid for beid, pes in self.host.trace.items() for pe in pes
        }
        for vid, pv in (
            (int(self.host.kind[pv].split(":", 1)[1]), pv)
            for pv in self.host.plan.vertices
            if self.host.kind[pv].startswith("real:")
        ):
            base_rot[vid] = [owner_of[pe] for pe in self.host.rotation[pv]]
        self.region_rot: dict[int, list[tuple[int, int]]] = {}
        for u in self.regions:
            if u in self.eid_of_mid:
                a, b = self.host.base.edges[self.eid_of_mid[u]]
                out = [_corr(a, u), _corr(b, u)]
            else:
                out = []
                for heid in base_rot.get(u, []):
                    p, q = self.host.base.edges[heid]
                    other = q if p == u else p
                    c = (
                        _corr(u, self.mid_of[heid])
                        if heid in self.mid_of
                        else _corr(u, other)
                    )
                    if c in self.lanes:
                        out.append(c)
            self.region_rot[u] = [c for c in out if c in self.lanes]

    def _objects(self, u: int) -> list[tuple]:
        cached = self._objcache.get(u)
        if cached is None:
            out: list[tuple] = []
            for c in self.region_rot[u]:
                out.extend((c, x) for x in self.glist[c][u])
            rs = self.roots_at.get(u, [])
            out.extend(("root", x) for x in (rs[::-1] if self.flip else rs))
            self._objcache[u] = cached = out
        return cached

    # -- lane keys and port orders --

    def _lane_keys(self) -> None:
        self._objcache: dict[int, list[tuple]] = {}
        self.key_of: dict[tuple[int, int], tuple[int, ...]] = {}
        for r in self.routes:
            last = len(r.regions) - 1
            for x in (r.v, r.w):
                if x == r.v:
                    seq = r.regions[: r.jidx + 1]
                    partner = r.w
                    panchor = (
                        ("root", partner)
                        if r.jidx == last
                        else (_corr(r.regions[r.jidx], r.regions[r.jidx + 1]), partner)
                    )
                else:
                    seq = r.regions[r.jidx :][::-1]
                    partner = r.v
                    panchor = (
                        ("root", partner)
                        if r.jidx == 0
                        else (_corr(r.regions[r.jidx - 1], r.regions[r.jidx]), partner)
                    )
                slots = []
                for t, u in enumerate(seq):
                    gl = self._objects(u)
                    anchor = ("root", x) if t == 0 else (_corr(seq[t - 1], u), x)
                    if t < len(seq) - 1:
                        target = (_corr(u, seq[t + 1]), x)
                    else:
                        target = panchor
                    slots.append((gl.index(target) - gl.index(anchor)) % len(gl))
                self.key_of[(x, r.eid)] = tuple(slots) + (r.eid,)

    def _group_lanes_at(self, c: tuple[int, int], x: int, end: int) -> list[int]:
        return sorted(
            self.lanes[c][x],
            key=lambda f: self.key_of[(x, f)],
            reverse=self.source_of[(c, x)] != end,
        )

    def _assign_ports(self, fresh: Iterator[int]) -> None:
        self.port_id: dict[tuple[int, tuple[int, int], int], int] = {}
        for c in sorted(self.lanes):
            for end in c:
                for x in self.glist[c][end]:
                    for f in self._group_lanes_at(c, x, end):
                        self.port_id[(f, c, end)] = next(fresh)

    # -- positions and chords --

    def _place_regions(self) -> None:
        self.pos_vid: dict[int, list[int]] = {}
        self.pos_idx: dict[int, dict[tuple, int]] = {}
        for u in self.regions:
            vids: list[int] = []
            idx: dict[tuple, int] = {}
            for obj in self._objects(u):
                if obj[0] == "root":
                    idx[obj] = len(vids)
                    vids.append(obj[1])
                else:
                    c, x = obj
                    for f in self._group_lanes_at(c, x, u):
                        idx[("port", f, c)] = len(vids)
                        vids.append(self.port_id[(f, c, u)])
            self.pos_vid[u] = vids
            self.pos_idx[u] = idx

        self.chords: dict[int, list[tuple[tuple[int, int], int, int]]] = {
            u: [] for u in self.regions
        }
        for r in self.routes:
            last = len(r.regions) - 1
            for i, u in enumerate(r.regions):
                if i == 0:
                    a = self.pos_idx[u][("root", r.v)]
                else:
                    a = self.pos_idx[u][("port", r.eid, _corr(r.regions[i - 1], u))]
                if i == last:
                    b = self.pos_idx[u][("root", r.w)]
                else:
                    b = self.pos_idx[u][("port", r.eid, _corr(u, r.regions[i + 1]))]
                self.chords[u].append(((r.eid, i), a, b))

    # -- assembly --

    def _build_drawing(self, fresh: Iterator[int]) -> Optional[Drawing]:
        self.chains: dict[tuple[int, int], list[int]] = {}
        self.xregion: dict[int, int] = {}
        edges: list[tuple[int, int]] = []
        rots: dict[int, tuple[int, ...]] = {}
        for u in self.regions:
            if not self.chords[u]:
                continue
            chains, es, rs, xids = _arena(self.pos_vid[u], self.chords[u], fresh)
            self.chains.update(chains)
            edges.extend(es)
            rots.update(rs)
            for xv in xids:
                self.xregion[xv] = u
        for c in sorted(self.lanes):
            for x in sorted(self.lanes[c]):
                for f in self.lanes[c][x]:
                    edges.append(
                        (self.port_id[(f, c, c[0])], self.port_id[(f, c, c[1])])
                    )

        verts = list(self.m.pattern.vertices)
        verts.extend(self.port_id.values())
        verts.extend(self.xregion)
        plan = Graph.make(verts, edges)

        kind = {v: f"real:{v}" for v in self.m.pattern.vertices}
        kind.update({pv: "subdivision" for pv in self.port_id.values()})
        kind.update({pv: "crossing" for pv in self.xregion})

        incident: dict[int, list[int]] = {v: [] for v in plan.vertices}
        for eid, (a, b) in enumerate(plan.edges):
            incident[a].append(eid)
            incident[b].append(eid)
        rotation = {}
        for v in plan.vertices:
            if v in rots:
                rotation[v] = tuple(plan.edge_id(v, nb) for nb in rots[v])
            else:
                rotation[v] = tuple(incident[v])

        trace = {}
        for r in self.routes:
            path: list[int] = []
            for i in range(len(r.regions)):
                path.extend(self.chains[(r.eid, i)])
            trace[r.eid] = tuple(
                plan.edge_id(a, b) for a, b in zip(path, path[1:])
            )

        probe = Drawing(
            base=self.m.pattern,
            plan=plan,
            rotation=rotation,
            kind=kind,
            trace=trace,
            outer=0,
        )
        outer = 0
        if self.anchor is not None:
            heid, forward = self.anchor
            a, b = self.host.base.edges[heid]
            u0 = a if forward else b
            c = (
                _corr(u0, self.mid_of[heid])
                if heid in self.mid_of
                else _corr(a, b)
            )
            block = [
                f
                for x in self.glist[c][u0]
                for f in self._group_lanes_at(c, x, u0)
            ]
            f = block[-1]
            other = c[1] if c[0] == u0 else c[0]
            dart = (self.port_id[(f, c, u0)], self.port_id[(f, c, other)])
            outer = probe.face_of_dart(dart)
        return replace(probe, outer=outer)

    # -- certificate --

    def _certificate(self, d: Drawing) -> Optional[tuple[Certificate, dict]]:
        counts = {ref: len(chain) - 2 for ref, chain in self.chains.items()}
        cuts: dict[int, tuple[int, ...]] = {}
        for r in self.routes:
            pref = [0]
            for i in range(len(r.regions)):
                pref.append(pref[-1] + counts.get((r.eid, i), 0))
            total = pref[-1]
            gaps = []
            for heid, bs in r.segments:
                if r.conn_eid == heid:
                    use = bs
                elif len(bs) == 2:
                    use = bs if counts[(r.eid, bs[0])] > 0 else bs[:1]
                else:
                    use = bs
                gaps.extend(pref[b] for b in use)
            keep = sorted({g for g in gaps if 0 < g < total})
            if keep:
                cuts[r.eid] = tuple(keep)

        plan_obj = SubdivisionPlan(cuts)
        cg = crossing_graph(d, plan_obj)
        comps = cg.components(nontrivial=True)
        piece_key = {}
        counter: dict[int, int] = {}
        for n, arc in enumerate(cg.nodes):
            piece_key[n] = (arc.edge, counter.get(arc.edge, 0))
            counter[arc.edge] = counter.get(arc.edge, 0) + 1

        routemap = {r.eid: r for r in self.routes}
        covers: dict[int, tuple[Fan, ...]] = {}
        assignment: dict[tuple[int, int], int] = {}
        for cid, comp in enumerate(comps):
            fans: dict[int, set[tuple[int, int]]] = {}
            for n in comp:
                eid, piece = piece_key[n]
                regs = {self.xregion[xv] for xv in cg.crossings[n]}
                if len(regs) != 1:
                    return None
                u = regs.pop()
                r = routemap[eid]
                i = self.route_pos[eid][u]
                x = r.v if i <= r.jidx else r.w
                fans.setdefault(x, set()).add(self.m.pattern.edges[eid])
                assignment[(eid, piece)] = x
            covers[cid] = tuple(
                Fan(x, tuple(sorted(es))) for x, es in sorted(fans.items())
            )

        kcert = max(1, 1 + max((len(g) for g in cuts.values()), default=0))
        ell = max(1, max((len(fs) for fs in covers.values()), default=0))
        cert = Certificate(kcert, ell, plan_obj, covers, assignment)
        return cert, counts

    def run(self) -> Optional[SynthResult]:
        self._collect_lanes()
        self._group_lists()
        self._region_rotations()
        self._lane_keys()
        fresh = itertools.count(max(self.m.pattern.vertices, default=-1) + 1)
        self._assign_ports(fresh)
        self._place_regions()
        d = self._build_drawing(fresh)
        if d is None or validate(d):
            return None
        built = self._certificate(d)
        if built is None:
            return None
        cert, _counts = built
        if not verify_certificate(d, cert, strong=True).verdict:
            return None

        tags = {}
        for xv, u in self.xregion.items():
            if u in self.eid_of_mid:
                tags[xv] = RegionTag("edgeRegion", self.host.base.edges[self.eid_of_mid[u]])
            else:
                tags[xv] = RegionTag("vertexRegion", (u,))
        routes_out = {r.eid: r.real_path for r in self.routes}
        return SynthResult(d, cert, max(cert.k, cert.ell), tags, routes_out)


# ===== Entry points =====


def synthesize(host: Drawing, m: MinorModel) -> SynthResult:
    """Draw the pattern of a shallow minor model living in a planar host.

    ``host`` must be a valid crossing-free drawing of the model's host graph
    and the model must satisfy congestion = depth = ``k``.  The result's
    drawing is validated and its certificate passes the strong verifier
    before being returned; every route uses at most ``2k + 1`` host edges
    and the reported fold count ``kPrime`` stays within a constant factor
    of ``k``.

    Raises ``ValueError`` on invalid inputs, and the sentinel
    ``ValueError("construction invariant broken")`` if self-verification
    fails for both bundle orientations.
    """
    k = _checked_inputs(host, m)
    roots: dict[int, int] = {}
    parents: dict[int, dict[int, int]] = {}
    for x in m.pattern.vertices:
        roots[x], parents[x] = _branch_tree(m.host, m.branch[x])
    routes, mid_of, eid_of_mid = _make_routes(m, roots, parents)
    for r in routes:
        assert len(r.segments) <= 2 * k + 1
    used = {heid for r in routes for heid, _ in r.segments}
    anchor = _host_outer_anchor(host, used) if used else None
    for flip in (False, True):
        res = _Builder(
            host, m, k, routes, roots, mid_of, eid_of_mid, anchor, flip
        ).run()
        if res is not None:
            return res
    raise ValueError("construction invariant broken")


def pipeline_theorem2(
    host_plus: Graph, u: int, drawing: Drawing, m: MinorModel, k: int
) -> tuple[tuple[int, ...], SynthResult]:
    """Split a universal apex off a model and synthesize the remainder.

    ``host_plus`` is the host including the universal vertex ``u``;
    ``drawing`` draws the host without ``u``.  Returns the pattern vertices
    whose branch sets used ``u`` (at most ``k`` of them) together with the
    synthesis result for the rest of the pattern.
    """
    if not host_plus.has_vertex(u):
        raise ValueError(f"unknown host vertex {u}")
    if host_plus.degree(u) != host_plus.n - 1:
        raise ValueError("not universal")
    if m.host != host_plus:
        raise ValueError("drawing does not match the host")
    if m.c != k or m.d != k:
        raise ValueError("model must have c = d")
    bad = verify_model(m)
    if bad:
        raise ValueError(f"invalid model: {bad[0]}")
    dropped, m2 = strip_universal(m, u)
    assert len(dropped) <= k
    return dropped, synthesize(drawing, m2)
