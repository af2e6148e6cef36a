"""Tests for core graph values, fan covers, and generators."""

from __future__ import annotations

import itertools
import random

import pytest

from fancross.graphs import (
    ColorLabel,
    ColoredGraph,
    Fan,
    Graph,
    add_universal_vertex,
    bfs_dists,
    complete,
    connected_components,
    cycle,
    disjoint_union,
    fan_cover,
    grid2d,
    grid3d,
    induced,
    is_connected,
    path,
    radius_center,
    relabel,
)
from fancross.jsonio import colored_from_json, colored_to_json, graph_from_json, graph_to_json

from oracles import oracle_radius_center, oracle_vertex_cover


# ===== Construction =====


def test_make_normalizes_and_ids():
    g = Graph.make([3, 1, 2], [(3, 1), (2, 3)])
    assert g.vertices == (1, 2, 3)
    assert g.edges == ((1, 3), (2, 3))
    assert g.edge_id(3, 1) == 0
    assert g.has_edge(3, 2) and not g.has_edge(1, 2)
    assert g.neighbors(3) == (1, 2)
    assert g.degree(3) == 2


def test_make_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph.make([1], [(1, 1)])
    with pytest.raises(ValueError):
        Graph.make([1, 2], [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        Graph.make([1, 2], [(1, 3)])


def test_induced_and_relabel():
    g = complete(4)
    h = induced(g, [0, 2, 3])
    assert h.vertices == (0, 2, 3)
    assert h.m == 3
    r = relabel(h, {0: 10, 2: 5, 3: 7})
    assert r.vertices == (5, 7, 10)
    assert r.m == 3
    with pytest.raises(ValueError):
        relabel(h, {0: 1, 2: 1, 3: 2})


# ===== Traversal and radius =====


def test_bfs_and_components():
    g = Graph.make(range(6), [(0, 1), (1, 2), (4, 5)])
    assert bfs_dists(g, 0) == {0: 0, 1: 1, 2: 2}
    assert connected_components(g) == [[0, 1, 2], [3], [4, 5]]
    assert not is_connected(g)
    assert is_connected(path(4))


def test_radius_center_five_cycle():
    # Every vertex of a 5-cycle has eccentricity 2; ties break to smallest id.
    assert radius_center(cycle(5)) == (0, 2)


def test_radius_center_subset_and_errors():
    g = path(5)
    assert radius_center(g, [1, 2, 3]) == (2, 1)
    with pytest.raises(ValueError, match="not connected"):
        radius_center(g, [0, 4])
    with pytest.raises(ValueError, match="not connected"):
        radius_center(g, [])


def test_radius_center_matches_oracle_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 8)
        verts = list(range(n))
        all_pairs = list(itertools.combinations(verts, 2))
        edges = [e for e in all_pairs if rng.random() < 0.5]
        g = Graph.make(verts, edges)
        subset = [v for v in verts if rng.random() < 0.7] or [0]
        try:
            expect = oracle_radius_center(g, subset)
        except ValueError:
            with pytest.raises(ValueError, match="not connected"):
                radius_center(g, subset)
            continue
        assert radius_center(g, subset) == expect


# ===== Fans and fan covers =====


def test_fan_requires_incident_edges():
    Fan(2, ((1, 2), (2, 3)))
    with pytest.raises(ValueError, match="not a fan"):
        Fan(2, ((1, 3),))


def test_fan_cover_five_cycle():
    g = cycle(5)
    # No 2 vertices cover all 5 edges; 3 do.
    assert fan_cover(g, g.edges, 2) is None
    fans = fan_cover(g, g.edges, 3)
    assert fans is not None and len(fans) <= 3
    covered = sorted(e for f in fans for e in f.edges)
    assert covered == sorted(g.edges)
    for f in fans:
        for e in f.edges:
            assert f.center in e


def test_fan_cover_matching_needs_one_center_each():
    # A perfect matching of 4 edges needs 4 centers.
    g = Graph.make(range(8), [(0, 1), (2, 3), (4, 5), (6, 7)])
    assert fan_cover(g, g.edges, 3) is None
    assert fan_cover(g, g.edges, 4) is not None


def test_fan_cover_star_single_fan():
    g = Graph.make(range(6), [(0, i) for i in range(1, 6)])
    fans = fan_cover(g, g.edges, 1)
    assert fans is not None and len(fans) == 1 and fans[0].center == 0
    assert len(fans[0].edges) == 5


def test_fan_cover_subset_of_edges_only():
    g = cycle(6)
    fans = fan_cover(g, [(0, 1), (1, 2)], 1)
    assert fans is not None and len(fans) == 1 and fans[0].center == 1


def test_fan_cover_rejects_unknown_target():
    with pytest.raises(ValueError):
        fan_cover(cycle(4), [(0, 2)], 2)


def test_fan_cover_matches_oracle_random():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(2, 7)
        all_pairs = list(itertools.combinations(range(n), 2))
        edges = [e for e in all_pairs if rng.random() < 0.5]
        g = Graph.make(range(n), edges)
        if not edges:
            continue
        target = [e for e in edges if rng.random() < 0.8] or [edges[0]]
        for ell in range(0, 4):
            cand = sorted(set(v for e in target for v in e))
            expect = oracle_vertex_cover(target, cand, ell)
            got = fan_cover(g, target, ell)
            assert (got is not None) == (expect is not None)
            if got is not None:
                assert len(got) <= ell
                covered = sorted(e for f in got for e in f.edges)
                assert covered == sorted(set(target))


# ===== Colored graphs =====


def test_color_label_round_trip():
    for text in ["c1", "cP3", "b0", "bP2"]:
        assert str(ColorLabel.parse(text)) == text
    with pytest.raises(ValueError):
        ColorLabel.parse("q1")
    with pytest.raises(ValueError):
        ColorLabel("c", 0)
    with pytest.raises(ValueError):
        ColorLabel("b", -1)


def test_colored_graph_basics():
    g = path(3)
    c = ColoredGraph(g, {0: frozenset({ColorLabel("c", 1)}), 1: frozenset()})
    assert c.has(0, ColorLabel("c", 1))
    assert not c.has(2, ColorLabel("c", 1))
    assert 1 not in c.colors  # empty sets dropped
    with pytest.raises(ValueError):
        ColoredGraph(g, {9: frozenset({ColorLabel("b", 0)})})


# ===== Composition and generators =====


def test_disjoint_union_two_copies():
    g = cycle(3)
    u = disjoint_union(g, g)
    assert u.n == 6 and u.m == 6
    assert connected_components(u) == [[0, 1, 2], [3, 4, 5]]


def test_disjoint_union_preserves_structure():
    a = path(3)
    b = Graph.make([5, 9], [(5, 9)])
    u = disjoint_union(a, b)
    assert u.n == 5 and u.m == 3
    comps = connected_components(u)
    assert [len(c) for c in comps] == [3, 2]


def test_add_universal_vertex():
    g, u = add_universal_vertex(cycle(4))
    assert u == 4
    assert g.degree(u) == 4
    assert all(g.degree(v) == 3 for v in range(4))
    g2, u2 = add_universal_vertex(Graph.make([], []))
    assert u2 == 0 and g2.n == 1 and g2.m == 0


def test_generators_shapes():
    g = grid2d(2, 3)
    assert g.n == 6 and g.m == 7
    h = grid3d(2, 2, 2)
    assert h.n == 8 and h.m == 12
    assert cycle(3).edges == complete(3).edges
    assert complete(5).m == 10
    assert path(1).n == 1 and path(1).m == 0


def test_generators_reject_bad_dimensions():
    for bad in [lambda: grid2d(0, 3), lambda: grid3d(1, 0, 1), lambda: cycle(2), lambda: complete(0), lambda: path(0)]:
        with pytest.raises(ValueError):
            bad()


# ===== JSON =====


def test_graph_json_round_trip():
    g = grid2d(2, 2)
    doc = graph_to_json(g)
    assert doc == {"vertices": [0, 1, 2, 3], "edges": [[0, 1], [0, 2], [1, 3], [2, 3]]}
    assert graph_from_json(doc) == g
    with pytest.raises(ValueError):
        graph_from_json({"vertices": [0]})


def test_colored_json_round_trip():
    g = path(2)
    c = ColoredGraph(g, {1: frozenset({ColorLabel.parse("b0"), ColorLabel.parse("bP2")})})
    doc = colored_to_json(c)
    assert doc["colors"] == {"1": ["b0", "bP2"]}
    back = colored_from_json(doc)
    assert back.graph == g and back.labels(1) == c.labels(1)
