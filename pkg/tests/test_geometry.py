"""Exact geometry primitives and the straight-line drawing builder."""

from __future__ import annotations

from fractions import Fraction

import pytest

from fancross.drawing import crossings_per_edge, validate
from fancross.geometry import (
    cross_point,
    dir_cmp,
    drawing_from_segments,
    orientation,
    param_along,
    properly_cross,
    pt,
    sort_ccw,
    strictly_inside,
)
from fancross.graphs import Graph, grid2d


# ===== Primitives =====


def test_orientation_signs():
    assert orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == -1
    assert orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == 0


def test_strictly_inside():
    assert strictly_inside(pt(0, 0), pt(2, 2), pt(1, 1))
    assert not strictly_inside(pt(0, 0), pt(2, 2), pt(0, 0))
    assert not strictly_inside(pt(0, 0), pt(2, 2), pt(2, 2))
    assert not strictly_inside(pt(0, 0), pt(2, 2), pt(3, 3))
    assert not strictly_inside(pt(0, 0), pt(2, 2), pt(1, 0))


def test_properly_cross_and_point():
    a, b, c, d = pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)
    assert properly_cross(a, b, c, d)
    assert cross_point(a, b, c, d) == (Fraction(1), Fraction(1))
    # Sharing an endpoint is never a proper crossing.
    assert not properly_cross(a, b, a, d)
    # Touching at an interior point of one segment only is not proper.
    assert not properly_cross(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1))


def test_param_along():
    assert param_along(pt(0, 0), pt(4, 0), pt(1, 0)) == Fraction(1, 4)
    assert param_along(pt(0, 0), pt(0, 4), pt(0, 3)) == Fraction(3, 4)


def test_ccw_sort_starts_east():
    vecs = {
        "e": (Fraction(1), Fraction(0)),
        "ne": (Fraction(1), Fraction(1)),
        "n": (Fraction(0), Fraction(1)),
        "w": (Fraction(-1), Fraction(0)),
        "s": (Fraction(0), Fraction(-1)),
        "se": (Fraction(1), Fraction(-1)),
    }
    order = sort_ccw(vecs.items())
    assert order == ["e", "ne", "n", "w", "s", "se"]
    assert dir_cmp(vecs["e"], vecs["n"]) < 0
    assert dir_cmp(vecs["s"], vecs["w"]) > 0


# ===== Triangle: face conventions =====


def triangle():
    g = Graph.make([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    return drawing_from_segments(g, {0: pt(0, 0), 1: pt(2, 0), 2: pt(1, 1)})


def test_triangle_is_valid_with_two_faces():
    d = triangle()
    assert validate(d) == []
    assert len(d.faces) == 2


def test_triangle_inner_face_is_counterclockwise():
    d = triangle()
    # The face left of dart (0,1) walks the triangle counterclockwise.
    inner = d.faces[d.face_of_dart((0, 1))]
    assert set(inner) == {(0, 1), (1, 2), (2, 0)}


def test_triangle_outer_face_from_geometry():
    d = triangle()
    outer = d.faces[d.outer]
    assert set(outer) == {(0, 2), (2, 1), (1, 0)}
    assert d.outer != d.face_of_dart((0, 1))


# ===== The X: one crossing =====


def xfix():
    g = Graph.make([0, 1, 2, 3], [(0, 1), (2, 3)])
    return drawing_from_segments(
        g, {0: pt(0, 0), 1: pt(2, 2), 2: pt(0, 2), 3: pt(2, 0)}
    )


def test_x_crossing_vertex_and_plan():
    d = xfix()
    assert validate(d) == []
    assert sorted(d.plan.vertices) == [0, 1, 2, 3, 4]
    assert d.kind[4] == "crossing"
    assert d.plan.edges == ((0, 4), (1, 4), (2, 4), (3, 4))
    assert crossings_per_edge(d) == {0: 1, 1: 1}
    assert len(d.faces) == 1 and d.outer == 0


def test_x_paths_oriented_from_smaller_endpoint():
    d = xfix()
    assert d.paths[0] == (0, 4, 1)
    assert d.paths[1] == (2, 4, 3)


# ===== Degeneracies are rejected =====


def test_rejects_coincident_vertices():
    g = Graph.make([0, 1], [(0, 1)])
    with pytest.raises(ValueError, match="coincident vertices"):
        drawing_from_segments(g, {0: pt(1, 1), 1: pt(1, 1)})


def test_rejects_vertex_on_edge():
    g = Graph.make([0, 1, 2], [(0, 1)])
    with pytest.raises(ValueError, match="vertex on edge"):
        drawing_from_segments(g, {0: pt(0, 0), 1: pt(2, 0), 2: pt(1, 0)})


def test_rejects_overlapping_edges():
    # Collinear overlap always puts a vertex inside the other segment.
    g = Graph.make([0, 1, 2], [(0, 1), (0, 2)])
    with pytest.raises(ValueError, match="vertex on edge"):
        drawing_from_segments(g, {0: pt(0, 0), 1: pt(2, 0), 2: pt(3, 0)})


def test_rejects_concurrent_crossings():
    # Three diagonals of a regular-ish hexagon all pass through the origin.
    g = Graph.make([0, 1, 2, 3, 4, 5], [(0, 3), (1, 4), (2, 5)])
    pos = {
        0: pt(2, 0),
        1: pt(1, 2),
        2: pt(-1, 2),
        3: pt(-2, 0),
        4: pt(-1, -2),
        5: pt(1, -2),
    }
    with pytest.raises(ValueError, match="concurrent crossings"):
        drawing_from_segments(g, pos)


def test_rejects_missing_position():
    g = Graph.make([0, 1], [(0, 1)])
    with pytest.raises(ValueError, match="no position"):
        drawing_from_segments(g, {0: pt(0, 0)})


# ===== Planar inputs =====


def test_grid_drawing_is_plane():
    g = grid2d(3, 3)
    pos = {i * 3 + j: pt(j, i) for i in range(3) for j in range(3)}
    d = drawing_from_segments(g, pos)
    assert validate(d) == []
    assert crossings_per_edge(d) == {e: 0 for e in range(g.m)}
    # 4 unit squares plus the outer face.
    assert len(d.faces) == 5
    outer = d.faces[d.outer]
    assert len(outer) == 8


def test_edgeless_graph_draws():
    g = Graph.make([0, 1], [])
    d = drawing_from_segments(g, {0: pt(0, 0), 1: pt(1, 0)})
    assert validate(d) == []
    assert d.faces == () and d.outer == 0


# ===== Polylines =====


def test_polyline_double_crossing_with_bend():
    from fancross.geometry import drawing_from_polylines

    g = Graph.make([0, 1, 2, 3], [(0, 1), (2, 3)])
    pos = {0: pt(0, 0), 1: pt(10, 0), 2: pt(2, 3), 3: pt(8, 3)}
    d = drawing_from_polylines(g, pos, {1: [pt(5, -2)]})
    assert validate(d) == []
    assert crossings_per_edge(d) == {0: 2, 1: 2}
    kinds = sorted(d.kind[p].split(":")[0] for p in d.plan.vertices)
    assert kinds.count("crossing") == 2
    assert kinds.count("subdivision") == 1
    # One bend vertex sits between the two crossings on the detouring edge.
    path = d.paths[1]
    assert [d.kind_of(p) for p in path] == [
        "real",
        "crossing",
        "subdivision",
        "crossing",
        "real",
    ]


def test_polyline_rejects_self_crossing():
    from fancross.geometry import drawing_from_polylines

    g = Graph.make([0, 1], [(0, 1)])
    pos = {0: pt(0, 0), 1: pt(4, 0)}
    # The chain loops over itself.
    bends = {0: [pt(4, 2), pt(2, 2), pt(2, -1), pt(6, -1), pt(6, 1)]}
    with pytest.raises(ValueError, match="edge crosses itself"):
        drawing_from_polylines(g, pos, bends)


def test_polyline_rejects_bend_on_edge():
    from fancross.geometry import drawing_from_polylines

    g = Graph.make([0, 1, 2, 3], [(0, 1), (2, 3)])
    pos = {0: pt(0, 0), 1: pt(4, 0), 2: pt(0, 2), 3: pt(4, 2)}
    with pytest.raises(ValueError, match="vertex on edge"):
        drawing_from_polylines(g, pos, {1: [pt(2, 0)]})
