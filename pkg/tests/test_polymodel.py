from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydeg import (
    DimensionMismatchError,
    InputError,
    ParseError,
    SparseProblem,
    Support,
    cayley,
    convex_hull,
    derivative_support,
    lagrange_data,
    parse_poly,
    partial_polytope,
)
from polydeg.polymodel import (
    CAYLEY_FULL_BASIS,
    OBJECTIVE_ED,
    OBJECTIVE_LINEAR,
    cayley_supports,
    ed_objective_support,
    linear_objective_support,
    problem_from_json,
)


def test_parse_full_conic():
    poly = parse_poly("7 + 11*x - 13*y - 19*x*y - 2*x^2 - 5*y^2", ("x", "y"))
    assert len(poly.terms) == 6
    assert poly.terms[(1, 1)] == -19
    assert poly.support() == Support(
        2, [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]
    )
    assert poly.total_degree() == 2


def test_parse_equation_and_fractions():
    poly = parse_poly("x^2 = y - 1/2", ("x", "y"))
    assert poly.terms == {
        (2, 0): Fraction(1),
        (0, 1): Fraction(-1),
        (0, 0): Fraction(1, 2),
    }
    repeated = parse_poly("x*x*x", ("x",))
    assert repeated.terms == {(3,): Fraction(1)}
    cancelled = parse_poly("x - x", ("x",))
    assert cancelled.is_zero


@pytest.mark.parametrize(
    "text",
    ["", "x + ", "2 ** x", "z + 1", "x^-1", "x^y", "1 = 2 = 3", "= x", "x @ y"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text, ("x", "y"))


def test_derivative_support():
    cubic = Support(1, [(0,), (3,)])
    assert derivative_support(cubic, 0) == Support(1, [(2,)])
    untouched = Support(2, [(0, 0), (0, 2)])
    assert derivative_support(untouched, 0) == Support(2, [])
    with pytest.raises(IndexError):
        derivative_support(cubic, 1)


def test_partial_polytope_interval():
    segment = convex_hull([(0,), (3,)])
    shifted = partial_polytope(segment, 0)
    assert sorted(shifted.vertices) == [(Fraction(0),), (Fraction(2),)]
    point = convex_hull([(0, 5)])
    assert partial_polytope(point, 0) is None


def test_partial_polytope_rational_section():
    # Stacking a full conic over a shifted one forces half-integral
    # crossings in the first coordinate section.
    base = cayley(
        [
            convex_hull([(0, 0), (2, 0), (0, 2)]),
            convex_hull([(2, 0), (0, 2), (2, 2)]),
        ]
    )
    section = partial_polytope(base, 0)
    assert (Fraction(0), Fraction(0), Fraction(1, 2)) in section.vertices
    assert not section.is_lattice()


def test_cayley_tagging():
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    segment = convex_hull([(0, 0), (1, 0)])
    stacked = cayley([square, segment])
    assert stacked.ambient_dim == 3
    assert (Fraction(0), Fraction(0), Fraction(0)) in stacked.vertices
    assert (Fraction(1), Fraction(0), Fraction(1)) in stacked.vertices

    full = cayley([square, segment], style=CAYLEY_FULL_BASIS)
    assert full.ambient_dim == 4
    assert (Fraction(0), Fraction(0), Fraction(1), Fraction(0)) in full.vertices

    with pytest.raises(InputError):
        cayley([])
    with pytest.raises(DimensionMismatchError):
        cayley([square, convex_hull([(0,), (1,)])])
    with pytest.raises(ValueError):
        cayley([square], style="sideways")


def test_cayley_supports_matches_polytopes():
    a = Support(2, [(0, 0), (2, 0), (0, 2), (1, 1)])
    b = Support(2, [(1, 1), (2, 0), (0, 2)])
    tagged = cayley_supports([a, b])
    assert tagged.hull() == cayley([a.hull(), b.hull()])


def test_problem_adjoins_origin():
    problem = SparseProblem(
        ("x",), Support(1, [(2,)]), [Support(1, [(0,), (1,)])]
    )
    assert (0,) in problem.objective_support.points
    assert problem.n == 1 and problem.m == 1


def test_problem_validation():
    with pytest.raises(DimensionMismatchError):
        SparseProblem(("x",), Support(2, [(0, 0)]), [Support(1, [(1,)])])
    with pytest.raises(InputError):
        SparseProblem(("x",), Support(1, [(1,)]), [Support(1, [])])


def test_objective_support_builders():
    assert set(ed_objective_support(2).points) == {
        (0, 0),
        (1, 0),
        (0, 1),
        (2, 0),
        (0, 2),
    }
    assert set(linear_objective_support(3).points) == {
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    }


def test_lagrange_data_shapes():
    problem = SparseProblem(
        ("x", "y"),
        Support(2, [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]),
        [Support(2, [(1, 1), (1, 2), (2, 1), (2, 2), (2, 0), (0, 2)])],
    )
    data = lagrange_data(problem)
    assert data.ambient == 3
    assert len(data.constraint_polytopes) == 1
    assert all(v[-1] == 0 for v in data.constraint_polytopes[0].vertices)
    # Every derivative-equation monomial lies in its section polytope.
    for support, piece in zip(data.ell_supports, data.cayley_partials):
        assert support.points
        for point in support.points:
            assert piece.contains(point)
    # The multiplier tag of each equation support marks its source row.
    for j, support in enumerate(data.ell_supports):
        tags = {p[-1] for p in support.points}
        assert tags <= {0, 1}


def test_problem_from_json_variants():
    problem = problem_from_json(
        {
            "variables": ["x", "y"],
            "objective": {"kind": "polynomial", "text": "x + y^2"},
            "constraints": [
                {"kind": "polynomial", "text": "x*y = 1"},
                {"kind": "support", "points": [[2, 0], [0, 2]]},
            ],
        }
    )
    assert problem.m == 2
    assert problem.constraint_supports[1] == Support(2, [(2, 0), (0, 2)])

    distance = problem_from_json(
        {"constraints": [{"kind": "support", "points": [[2, 0], [0, 1]]}]},
        default_objective_kind="ed",
    )
    assert distance.objective_kind == OBJECTIVE_ED

    linear = problem_from_json(
        {"constraints": [{"kind": "support", "points": [[1, 0], [0, 1]]}]},
        default_objective_kind="linear",
    )
    assert linear.objective_kind == OBJECTIVE_LINEAR


@pytest.mark.parametrize(
    "payload",
    [
        [],
        {"constraints": []},
        {"constraints": [{"kind": "support", "points": [[1, 0]]}]},
        {
            "variables": ["x"],
            "constraints": [{"kind": "mystery"}],
            "objective": {"kind": "linear"},
        },
        {
            "variables": ["x"],
            "constraints": [{"kind": "polynomial", "text": "x - x"}],
            "objective": {"kind": "linear"},
        },
        {
            "variables": ["x"],
            "constraints": [{"kind": "support", "points": [[1]]}],
            "objective": {"kind": "unknown"},
        },
    ],
)
def test_problem_from_json_rejects(payload):
    with pytest.raises(InputError):
        problem_from_json(payload)


lattice_sets_1d = st.lists(
    st.integers(min_value=0, max_value=6), min_size=1, max_size=5
)


@given(lattice_sets_1d, st.integers(min_value=0, max_value=0))
@settings(max_examples=60, deadline=None)
def test_derivative_inside_section(values, j):
    support = Support(1, [(v,) for v in values])
    shifted = derivative_support(support, j)
    piece = partial_polytope(support.hull(), j)
    if not shifted.points:
        return
    assert piece is not None
    for p in shifted.points:
        assert piece.contains(p)


@given(st.integers(min_value=1, max_value=8))
@settings(max_examples=20, deadline=None)
def test_saturated_derivative_matches_section(top):
    # With every lattice point present the derivative support spans the
    # integral part of the section polytope exactly.
    support = Support(1, [(v,) for v in range(top + 1)])
    shifted = derivative_support(support, 0)
    piece = partial_polytope(support.hull(), 0)
    assert shifted.hull() == convex_hull(piece.lattice_points(), 1)
