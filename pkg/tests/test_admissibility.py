import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydeg import (
    Cone,
    SparseProblem,
    Support,
    init_support,
    is_admissible,
    is_strongly_admissible,
    orbit_meets_variety,
)
from polydeg.admissibility import (
    STRONGLY_FALSE,
    STRONGLY_TRUE,
    UNITY_ALL_ONES,
    UNITY_ANY_BASIS_VECTOR,
    UNITY_ORIGIN,
    _positive_vertex_condition,
)
from polydeg.polymodel import ed_objective_support

SIMPLEX3 = Support(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
CUBE3 = Support(
    3,
    [
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 0),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 1),
    ],
)
BIPYRAMID3 = Support(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
REFLECTED3 = Support(3, [(1, 1, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0)])

CONIC_PAIR = SparseProblem(
    ("x", "y"),
    Support(2, [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]),
    [Support(2, [(1, 1), (1, 2), (2, 1), (2, 2), (2, 0), (0, 2)])],
)

XYZ = ("x", "y", "z")


def test_init_support_conic_minimizer():
    support = CONIC_PAIR.constraint_supports[0]
    assert init_support(support, (0, 1)) == Support(2, [(2, 0)])


def test_init_support_zero_direction():
    assert init_support(SIMPLEX3, (0, 0, 0)) == SIMPLEX3


def test_init_support_unique_minimizer():
    support = Support(2, [(0, 0), (3, 0), (0, 2)])
    assert init_support(support, (1, 1)) == Support(2, [(0, 0)])


def test_simplex_cube_strongly_admissible():
    problem = SparseProblem(XYZ, SIMPLEX3, [CUBE3])
    verdict = is_strongly_admissible(problem)
    assert verdict.admissible is True
    assert all(verdict.conditions.values())
    assert verdict.strongly_admissible == STRONGLY_TRUE


def test_simplex_bipyramid_not_strongly_admissible():
    problem = SparseProblem(XYZ, BIPYRAMID3, [SIMPLEX3])
    assert is_admissible(problem).admissible is True
    verdict = is_strongly_admissible(problem)
    assert verdict.admissible is True
    assert verdict.strongly_admissible == STRONGLY_FALSE
    rays = [
        {tuple(r) for r in record["cone_rays"]}
        for record in verdict.witnesses["singular_orbits"]
    ]
    assert {(-1, -1, 1), (-1, -1, -1)} in rays


def test_reflected_simplex_not_admissible():
    problem = SparseProblem(XYZ, SIMPLEX3, [REFLECTED3])
    verdict = is_admissible(problem)
    assert verdict.admissible is False
    assert verdict.conditions["orthant_cone"] is False
    assert verdict.witnesses["orthant_cone"]["support_index"] == 1
    strong = is_strongly_admissible(problem)
    assert strong.admissible is False
    assert strong.strongly_admissible == STRONGLY_FALSE


def test_conic_pair_orthant_failure():
    verdict = is_admissible(CONIC_PAIR)
    assert verdict.admissible is False
    assert verdict.conditions["orthant_cone"] is False
    assert verdict.conditions["hyperplane_touching"] is True
    assert verdict.conditions["unity_vector"] is True
    witness = verdict.witnesses["orthant_cone"]
    assert witness["support_index"] == 1
    assert "normal cone" in witness["reason"]


def test_hyperplane_touching_failure():
    problem = SparseProblem(
        ("x", "y"),
        Support(2, [(1, 0), (0, 1)]),
        [Support(2, [(1, 1), (2, 1), (1, 2)])],
    )
    verdict = is_admissible(problem)
    assert verdict.conditions["hyperplane_touching"] is False
    witness = verdict.witnesses["hyperplane_touching"]
    assert witness["support_index"] == 1
    assert witness["coordinate_minima"] == [1, 1]


def test_unity_interpretations():
    problem = SparseProblem(
        ("x", "y"),
        Support(2, [(1, 1), (2, 0), (0, 2)]),
        [Support(2, [(0, 0), (1, 0), (0, 1), (1, 1)])],
    )
    strict = is_admissible(problem, unity=UNITY_ANY_BASIS_VECTOR)
    assert strict.conditions["unity_vector"] is False
    assert strict.witnesses["unity_vector"]["interpretation"] == UNITY_ANY_BASIS_VECTOR
    assert is_admissible(problem, unity=UNITY_ALL_ONES).admissible is True
    assert is_admissible(problem, unity=UNITY_ORIGIN).admissible is True
    with pytest.raises(ValueError):
        is_admissible(problem, unity="lexicographic")


def test_ellipse_distance_strongly_admissible():
    problem = SparseProblem(
        ("x", "y"),
        ed_objective_support(2),
        [Support(2, [(0, 0), (2, 0), (0, 2), (1, 1)])],
    )
    verdict = is_strongly_admissible(problem)
    assert verdict.strongly_admissible == STRONGLY_TRUE


def test_orbit_meets_variety_cases():
    sigma = Cone.from_rays([(-1, -1, 1), (-1, -1, -1)], 3)
    assert orbit_meets_variety(sigma, [SIMPLEX3]) is True

    orthant = Cone.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
    assert orbit_meets_variety(orthant, [SIMPLEX3]) is False

    torus = Cone.from_rays([], 3)
    assert orbit_meets_variety(torus, [SIMPLEX3]) is True
    assert orbit_meets_variety(torus, []) is False


def test_orbit_rank_criterion_on_pairs():
    # Two constraints whose initial edges are parallel span one dimension,
    # so the pair cannot meet a two dimensional orbit.
    torus = Cone.from_rays([], 2)
    a = Support(2, [(0, 0), (1, 0)])
    b = Support(2, [(0, 1), (1, 1)])
    assert orbit_meets_variety(torus, [a, b]) is False
    c = Support(2, [(0, 0), (0, 1)])
    assert orbit_meets_variety(torus, [a, c]) is True
    # Three segments span at most rank two, so the full-subset dimension
    # check fails and the orbit is certified disjoint.
    d = Support(2, [(0, 0), (1, 1)])
    assert orbit_meets_variety(torus, [a, c, d]) is False


def test_tie_in_generic_direction_is_reported():
    flat = Support(2, [(0, 1), (10007, 0)])
    ok, detail = _positive_vertex_condition(flat)
    assert ok is False
    assert "positive-dimensional face" in detail["reason"]


def test_verdict_json_round_trip():
    import json

    verdict = is_strongly_admissible(SparseProblem(XYZ, BIPYRAMID3, [SIMPLEX3]))
    payload = verdict.to_json()
    assert set(payload) == {
        "admissible",
        "conditions",
        "strongly_admissible",
        "witnesses",
    }
    json.dumps(payload)


def test_positive_vertex_condition_direction_independent():
    rng = random.Random(20240811)
    supports = [
        SIMPLEX3,
        CUBE3,
        BIPYRAMID3,
        REFLECTED3,
        Support(3, [(0, 0, 0), (3, 0, 0), (0, 2, 0), (0, 0, 5), (1, 1, 1)]),
    ]
    for support in supports:
        baseline, _ = _positive_vertex_condition(support)
        for _ in range(10):
            w = tuple(rng.randrange(1, 10**6) for _ in range(3))
            probe, _ = _positive_vertex_condition(support, w)
            if baseline:
                # A random direction may land on a face tie; the cone test
                # itself must never flip from failure to success.
                assert probe or len(init_support(support, w).points) > 1
            else:
                assert not probe or len(init_support(support, w).points) > 1


points_2d = st.lists(
    st.tuples(
        st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4)
    ),
    min_size=1,
    max_size=7,
)


@given(points_2d, st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
@settings(max_examples=80, deadline=None)
def test_init_support_is_face(pts, w):
    support = Support(2, pts)
    face = init_support(support, w)
    assert set(face.points) <= set(support.points)
    from polydeg import face_exposed

    exposed = face_exposed(support.hull(), w)
    assert face.hull() == exposed


@given(points_2d)
@settings(max_examples=40, deadline=None)
def test_strong_implies_admissible(pts):
    support = Support(2, pts)
    problem = SparseProblem(
        ("x", "y"), Support(2, [(1, 0), (0, 1)]), [support]
    )
    verdict = is_strongly_admissible(problem)
    if verdict.strongly_admissible == STRONGLY_TRUE:
        assert verdict.admissible is True
        assert all(verdict.conditions.values())
