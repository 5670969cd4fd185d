from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydeg import linalg


def test_bareiss_det_known_values():
    assert linalg.bareiss_det([[3]]) == 3
    assert linalg.bareiss_det([[1, 2], [3, 4]]) == -2
    assert linalg.bareiss_det([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
    assert linalg.bareiss_det([[0, 1], [1, 0]]) == -1
    assert linalg.bareiss_det([[1, 2], [2, 4]]) == 0
    assert linalg.bareiss_det([]) == 1


def test_det_fraction_clears_denominators():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]]
    assert linalg.det_fraction(m) == Fraction(1, 14) - Fraction(1, 15)


def test_rank_int():
    assert linalg.rank_int([]) == 0
    assert linalg.rank_int([[0, 0]]) == 0
    assert linalg.rank_int([[1, 2], [2, 4], [3, 6]]) == 1
    assert linalg.rank_int([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2
    assert linalg.rank_int([[1, 0], [0, 1], [1, 1]]) == 2


def test_rref_and_solve():
    m, pivots = linalg.rref([[1, 2, 3], [4, 5, 6]])
    assert pivots == [0, 1]
    assert m[0][:2] == [1, 0] and m[1][:2] == [0, 1]
    x = linalg.solve([[1, 1], [1, -1]], [3, 1])
    assert x == (2, 1)
    assert linalg.solve([[1, 1], [2, 2]], [1, 3]) is None


def test_nullspace_orthogonal_to_rows():
    rows = [[1, 2, 3], [0, 1, 1]]
    for v in linalg.nullspace(rows):
        assert all(linalg.dot(r, v) == 0 for r in rows)


def test_integer_kernel_basis_is_saturated():
    # ker of [2, -1, -1] over Z contains (1, 1, 1), which is not in the
    # lattice generated by the naive scaled rational basis (1,2,0), (1,0,2).
    basis = linalg.integer_kernel_basis([[2, -1, -1]])
    assert len(basis) == 2
    target = (1, 1, 1)
    sol = linalg.integral_solve(linalg.transpose([list(b) for b in basis]), target)
    assert sol is not None


def test_hnf_canonical():
    assert linalg.hnf([[2, 4], [6, 8]]) == [(2, 0), (0, 4)]
    assert linalg.hnf([[0, 0], [0, 0]]) == []
    # Row order must not matter.
    a = linalg.hnf([[1, 2, 3], [4, 5, 6]])
    b = linalg.hnf([[4, 5, 6], [1, 2, 3]])
    assert a == b


def test_snf_invariant_factors():
    u, diag, v = linalg.snf([[2, 4], [6, 8]])
    assert diag == [2, 4]
    u, diag, v = linalg.snf([[1, 0], [0, 1]])
    assert diag == [1, 1]
    u, diag, v = linalg.snf([[2, 0], [0, 3]])
    assert diag == [1, 6]


def _mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
        min_size=2,
        max_size=4,
    )
)
@settings(max_examples=200, deadline=None)
def test_snf_transforms_are_consistent(rows):
    u, diag, v = linalg.snf([list(r) for r in rows])
    prod = _mat_mul(_mat_mul(u, [list(r) for r in rows]), v)
    for i in range(len(prod)):
        for j in range(len(prod[0])):
            expected = diag[i] if i == j and i < len(diag) else 0
            assert prod[i][j] == expected
    assert abs(linalg.bareiss_det(u)) == 1
    assert abs(linalg.bareiss_det(v)) == 1
    for k in range(len(diag) - 1):
        if diag[k + 1] != 0:
            assert diag[k] != 0 and diag[k + 1] % diag[k] == 0


def test_gcd_of_maximal_minors():
    assert linalg.gcd_of_maximal_minors([[1, 0], [1, 2]]) == 2
    assert linalg.gcd_of_maximal_minors([[-1, -1, 1], [-1, -1, -1]]) == 2
    assert linalg.gcd_of_maximal_minors([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1


def test_integral_solve():
    assert linalg.integral_solve([[2, 0], [0, 3]], (4, 9)) == (2, 3)
    assert linalg.integral_solve([[2]], (3,)) is None
    sol = linalg.integral_solve([[1, 2], [3, 4]], (5, 11))
    assert sol == (1, 2)


def test_lattice_quotient_map():
    q = linalg.lattice_quotient_map([(2, 0)], 2)
    assert len(q) == 1
    assert linalg.dot(q[0], (2, 0)) == 0
    # The quotient of (1, 0) must already be zero: the map kills the
    # saturation, not just the span.
    assert linalg.dot(q[0], (1, 0)) == 0
    assert abs(linalg.dot(q[0], (0, 1))) == 1


def test_null_normal():
    n = linalg.null_normal([(1, 0, 0), (0, 1, 0)])
    assert n == (0, 0, 1)
    n = linalg.null_normal([(1, 1)])
    assert linalg.dot(n, (1, 1)) == 0 and any(n)
    # Dependent edges give the zero form.
    assert linalg.null_normal([(1, 2), (2, 4)][:1]) != (0, 0)
    assert linalg.null_normal([(1, 1, 1), (2, 2, 2)]) == (0, 0, 0)


@given(
    st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    ),
    st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    ),
)
@settings(max_examples=200, deadline=None)
def test_det_is_multiplicative(a, b):
    ab = _mat_mul(a, b)
    assert linalg.bareiss_det(ab) == linalg.bareiss_det(a) * linalg.bareiss_det(b)
