from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydeg import (
    DimensionMismatchError,
    EmptyPolytopeError,
    convex_hull,
    face_exposed,
    minkowski_sum,
    volume,
)
from polydeg.polytope import Support, intersect_halfspaces


def _verts(p):
    return {tuple(int(x) if x.denominator == 1 else x for x in v) for v in p.vertices}


def test_hull_drops_interior_and_boundary_points():
    p = convex_hull([(1, 1), (1, 2), (2, 1), (2, 2), (2, 0), (0, 2)])
    assert _verts(p) == {(2, 0), (0, 2), (2, 2)}
    assert p.affine_dim == 2


def test_hull_of_empty_set_raises():
    with pytest.raises(EmptyPolytopeError):
        convex_hull([])


def test_hull_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatchError):
        convex_hull([(0, 0), (1, 2, 3)])


def test_hull_single_point():
    p = convex_hull([(3, 4)])
    assert p.affine_dim == 0
    assert volume(p) == 0
    assert p.contains((3, 4)) and not p.contains((3, 5))


def test_hull_accepts_rational_strings():
    p = convex_hull([("1/2", 0), (0, "1/2"), (0, 0)])
    assert volume(p) == Fraction(1, 8)


def test_segment_in_three_space():
    p = convex_hull([(0, 0, 0), (2, 4, 6), (1, 2, 3)])
    assert p.affine_dim == 1
    assert len(p.vertices) == 2
    assert volume(p) == 0
    assert len(p.equations) == 2
    for a, b in p.equations:
        for v in p.vertices:
            assert sum(x * y for x, y in zip(a, v)) == b


def test_volume_examples():
    assert volume(convex_hull([(2, 0), (0, 2), (2, 2)])) == 2
    simplex = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert volume(simplex) == Fraction(1, 6)
    cube = convex_hull([(x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)])
    assert volume(cube) == 8


def test_minkowski_sum_hexagon():
    a = convex_hull([(0, 0), (2, 0), (0, 2)])
    b = convex_hull([(2, 0), (0, 2), (2, 2)])
    h = minkowski_sum(a, b)
    assert _verts(h) == {(2, 0), (4, 0), (4, 2), (2, 4), (0, 4), (0, 2)}
    assert volume(h) == 12


def test_minkowski_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        minkowski_sum(convex_hull([(0, 0)]), convex_hull([(0, 0, 0)]))


def test_face_exposed():
    p = convex_hull([(2, 0), (0, 2), (2, 2)])
    edge = face_exposed(p, (1, 1))
    assert _verts(edge) == {(2, 0), (0, 2)}
    vert = face_exposed(p, (1, 2))
    assert _verts(vert) == {(2, 0)}
    assert face_exposed(p, (0, 0)) == p


def test_face_of_face_is_face():
    cube = convex_hull([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    facet = face_exposed(cube, (0, 0, 1))
    assert facet.affine_dim == 2
    edge = face_exposed(facet, (1, 0, 0))
    assert edge.affine_dim == 1


def test_contains_and_lattice_points():
    p = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert p.contains((1, 1))
    assert p.contains(("1/2", "1/2"))
    assert not p.contains((2, 1))
    assert sorted(p.lattice_points()) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_translate_and_scale():
    p = convex_hull([(0, 0), (1, 0), (0, 1)])
    q = p.translate((2, 3))
    assert _verts(q) == {(2, 3), (3, 3), (2, 4)}
    assert volume(q) == volume(p)
    h = p.scale(Fraction(1, 2))
    assert volume(h) == Fraction(1, 8)


def test_intersect_halfspaces_gives_rational_vertices():
    p = convex_hull([(0, -1), (1, -1), (0, 1)])
    q = intersect_halfspaces(p, [((-1, 0), 0), ((0, -1), 0)])
    assert q is not None
    assert _verts(q) == {(0, 0), (Fraction(1, 2), 0), (0, 1)}


def test_intersect_halfspaces_empty():
    p = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert intersect_halfspaces(p, [((1, 1), -1)]) is None


def test_support_validation():
    s = Support(2, [(0, 0), (1, 2), (0, 0)])
    assert len(s) == 2
    with pytest.raises(ValueError):
        Support(2, [(-1, 0)])
    with pytest.raises(DimensionMismatchError):
        Support(2, [(1, 2, 3)])
    assert volume(Support(2, [(0, 0), (2, 0), (0, 1)]).hull()) == 1


points_2d = st.lists(
    st.tuples(st.integers(min_value=-4, max_value=4), st.integers(min_value=-4, max_value=4)),
    min_size=1,
    max_size=8,
)


@given(points_2d)
@settings(max_examples=200, deadline=None)
def test_hull_is_idempotent(pts):
    p = convex_hull(pts)
    q = convex_hull(p.vertices)
    assert p == q
    for pt in pts:
        assert p.contains(pt)


@given(points_2d, st.integers(min_value=1, max_value=3))
@settings(max_examples=200, deadline=None)
def test_volume_scales_with_degree_two(pts, k):
    p = convex_hull(pts)
    assert volume(p.scale(k)) == k**2 * volume(p)


@given(points_2d, st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
@settings(max_examples=200, deadline=None)
def test_volume_is_translation_invariant(pts, shift):
    p = convex_hull(pts)
    assert volume(p.translate(shift)) == volume(p)
