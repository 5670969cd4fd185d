import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydeg import NON_SIMPLICIAL, Cone, NotPointedError, cone_multiplicity
from polydeg.linalg import bareiss_det, dot, rank_int


def test_multiplicity_of_plane_cones():
    assert cone_multiplicity(Cone.from_rays([(1, 0), (1, 2)], 2)) == 2
    assert cone_multiplicity(Cone.from_rays([(1, 0), (0, 1)], 2)) == 1
    assert cone_multiplicity(Cone.from_rays([(1, 0), (1, 3)], 2)) == 3


def test_multiplicity_of_lower_dimensional_cone():
    c = Cone.from_rays([(-1, -1, 1), (-1, -1, -1)], 3)
    assert c.dim == 2
    assert cone_multiplicity(c) == 2


def test_multiplicity_rejects_lineality():
    half = Cone.from_halfspaces([(1, 0)], [], 2)
    assert not half.is_pointed
    with pytest.raises(NotPointedError):
        cone_multiplicity(half)


def test_multiplicity_non_simplicial():
    c = Cone.from_rays([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], 3)
    assert cone_multiplicity(c) is NON_SIMPLICIAL


def test_zero_cone():
    c = Cone.from_rays([], 2)
    assert c.dim == 0 and c.is_pointed
    assert cone_multiplicity(c) == 1


def test_redundant_generators_are_dropped():
    a = Cone.from_rays([(1, 0), (0, 1), (1, 1), (2, 3)], 2)
    b = Cone.from_rays([(0, 1), (1, 0)], 2)
    assert a == b
    assert a.rays == ((0, 1), (1, 0))


def test_from_halfspaces_orthant():
    c = Cone.from_halfspaces([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [], 3)
    assert c.rays == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert c.is_pointed
    assert c.contains((2, 3, 4))
    assert not c.contains((-1, 0, 0))
    assert c.contains_in_relint((1, 1, 1))
    assert not c.contains_in_relint((0, 1, 1))


def test_halfplane_has_lineality():
    c = Cone.from_halfspaces([(1, 0)], [], 2)
    assert c.lineality == ((0, 1),)
    assert c.rays == ((1, 0),)
    assert c.dim == 2


def test_equation_constraints():
    c = Cone.from_halfspaces([(1, 0, 0)], [(0, 0, 1)], 3)
    assert all(r[2] == 0 for r in c.rays)
    assert all(l[2] == 0 for l in c.lineality)
    assert c.dim == 2


def test_intersection():
    a = Cone.from_rays([(1, 0), (1, 4)], 2)
    b = Cone.from_rays([(4, 1), (0, 1)], 2)
    c = a.intersection(b)
    assert c.rays == ((1, 4), (4, 1))


def test_faces_of_orthant():
    c = Cone.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
    faces = c.faces()
    assert len(faces) == 8
    dims = sorted(f.dim for f in faces)
    assert dims == [0, 1, 1, 1, 2, 2, 2, 3]


def test_faces_keep_lineality():
    c = Cone.from_halfspaces([(1, 0), (0, 1)], [], 2)
    wedge = Cone.from_halfspaces([(1, 1)], [], 2)
    for f in wedge.faces():
        assert f.lineality == wedge.lineality


ray_sets = st.lists(
    st.tuples(
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
    ).filter(lambda r: any(r)),
    min_size=1,
    max_size=5,
)


@given(ray_sets)
@settings(max_examples=150, deadline=None)
def test_generators_lie_in_the_cone(rays):
    c = Cone.from_rays(rays, 3)
    for r in rays:
        assert c.contains(r)
    for r in c.rays:
        assert c.contains(r)
    # Halfspace description is consistent with generator description.
    for a in c.ineqs:
        assert all(dot(a, r) >= 0 for r in rays)
    for a in c.eqs:
        assert all(dot(a, r) == 0 for r in rays)


@given(ray_sets)
@settings(max_examples=150, deadline=None)
def test_simplicial_multiplicity_matches_determinant(rays):
    c = Cone.from_rays(rays, 3)
    if not c.is_pointed or c.dim != 3 or len(c.rays) != 3:
        return
    assert cone_multiplicity(c) == abs(bareiss_det([list(r) for r in c.rays]))


@given(ray_sets)
@settings(max_examples=100, deadline=None)
def test_double_dualization_is_stable(rays):
    c = Cone.from_rays(rays, 3)
    d = Cone.from_halfspaces(list(c.ineqs), list(c.eqs), 3)
    assert c == d
