"""Degree calculators for sparse optimization problems.

Two mixed-volume formulas drive everything. The Cayley route takes the m
embedded constraint polytopes together with the n coordinate derivative
sections of the Cayley polytope of all supports. The BKK route replaces
the derivative sections by the Newton polytopes of the derivative
equations themselves. On strongly admissible supports the two agree; the
BKK value never exceeds the Cayley value.

Built on top sit the Euclidean-distance and sectional degrees (the same
BKK count with a squared-distance or linear objective and appended
generic-hyperplane supports), two classical dense bounds for comparison,
and a combined report that cross-checks the routes against each other.
"""

import warnings as _warnings
from fractions import Fraction

from .admissibility import (
    STRONGLY_TRUE,
    UNITY_ANY_BASIS_VECTOR,
    is_strongly_admissible,
)
from .errors import (
    DegenerateDirectionWarning,
    InvalidOrderError,
    NonIntegralResultError,
)
from .mixedvol import ALGO_CELLS, mixed_volume
from .polymodel import (
    OBJECTIVE_ED,
    OBJECTIVE_LINEAR,
    SparseProblem,
    Support,
    ed_objective_support,
    lagrange_data,
    linear_objective_support,
)

WARN_DEGENERATE = "DegenerateDirection"

CHECK_CAYLEY_EQUALS_BKK = "cayley_equals_bkk"
CHECK_VERTEX_REDUCTION = "vertex_reduction_invariant"
CHECK_ED_SECTIONAL_SUM = "ed_equals_sectional_sum"
CHECK_CHERN_EQUALS_CAYLEY = "chern_equals_cayley"


class DegreeReport:
    """All degrees of one problem plus the consistency checks between them."""

    __slots__ = (
        "degree_cayley",
        "degree_bkk",
        "degree_chern",
        "ed_degree",
        "sectional_degrees",
        "bezout_bound",
        "nie_ranestad_bound",
        "admissibility",
        "equalities_checked",
        "notes",
        "warnings",
    )

    def __init__(
        self,
        degree_cayley,
        degree_bkk,
        degree_chern,
        ed_degree,
        sectional_degrees,
        bezout_bound,
        nie_ranestad_bound,
        admissibility,
        equalities_checked,
        notes,
        warnings,
    ):
        self.degree_cayley = degree_cayley
        self.degree_bkk = degree_bkk
        self.degree_chern = degree_chern
        self.ed_degree = ed_degree
        self.sectional_degrees = sectional_degrees
        self.bezout_bound = bezout_bound
        self.nie_ranestad_bound = nie_ranestad_bound
        self.admissibility = admissibility
        self.equalities_checked = dict(equalities_checked)
        self.notes = tuple(notes)
        self.warnings = tuple(warnings)

    def __repr__(self):
        return (
            f"DegreeReport(cayley={self.degree_cayley}, bkk={self.degree_bkk}, "
            f"chern={self.degree_chern})"
        )

    def to_json(self):
        return {
            "degree_cayley": self.degree_cayley,
            "degree_bkk": self.degree_bkk,
            "degree_chern": self.degree_chern,
            "ed_degree": self.ed_degree,
            "sectional_degrees": (
                None
                if self.sectional_degrees is None
                else list(self.sectional_degrees)
            ),
            "bezout_bound": self.bezout_bound,
            "nie_ranestad_bound": self.nie_ranestad_bound,
            "admissibility": self.admissibility.to_json(),
            "equalities_checked": dict(self.equalities_checked),
            "notes": list(self.notes),
            "warnings": list(self.warnings),
        }


def _as_integer(value, what):
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise NonIntegralResultError(f"{what} evaluated to {value}")
        return int(value)
    return int(value)


def _degenerate(what, j):
    _warnings.warn(
        f"{what}: derivative polytope in direction {j + 1} is empty",
        DegenerateDirectionWarning,
        stacklevel=3,
    )


def cayley_degree(problem, algorithm=ALGO_CELLS, seed=0):
    """Critical-point degree via the Cayley polytope of all supports.

    Mixed volume, in dimension n + m, of the m constraint Newton polytopes
    and the n coordinate derivative sections of the Cayley polytope. The
    result is asserted to be an integer. An empty derivative section makes
    the degree zero and emits a DegenerateDirectionWarning.
    """
    data = lagrange_data(problem)
    for j, piece in enumerate(data.cayley_partials):
        if piece is None:
            _degenerate("cayley_degree", j)
            return 0
    factors = list(data.constraint_polytopes) + list(data.cayley_partials)
    value = mixed_volume(factors, algorithm=algorithm, seed=seed).value
    return _as_integer(value, "cayley_degree mixed volume")


def bkk_degree(problem, algorithm=ALGO_CELLS, seed=0):
    """BKK count of the explicit critical equations.

    Mixed volume, in dimension n + m, of the m constraint Newton polytopes
    and the Newton polytopes of the n derivative equations of the
    multiplier function. Never exceeds cayley_degree.
    """
    data = lagrange_data(problem)
    for j, piece in enumerate(data.ell_polytopes):
        if piece is None:
            _degenerate("bkk_degree", j)
            return 0
    factors = list(data.constraint_polytopes) + list(data.ell_polytopes)
    value = mixed_volume(factors, algorithm=algorithm, seed=seed).value
    return _as_integer(value, "bkk_degree mixed volume")


def _constraint_list(constraints):
    supports = []
    for s in constraints:
        if not isinstance(s, Support):
            raise TypeError("expected Support instances")
        supports.append(s)
    if not supports:
        raise InvalidOrderError("at least one constraint support is required")
    return supports


def ed_degree(constraints, algorithm=ALGO_CELLS, seed=0):
    """Number of critical points of a generic squared-distance objective."""
    supports = _constraint_list(constraints)
    n = supports[0].ambient_dim
    problem = SparseProblem(
        tuple(f"x{i + 1}" for i in range(n)),
        ed_objective_support(n),
        supports,
        objective_kind=OBJECTIVE_ED,
    )
    return bkk_degree(problem, algorithm=algorithm, seed=seed)


def sectional_degree(constraints, i, algorithm=ALGO_CELLS, seed=0):
    """Degree of a generic linear objective after i generic hyperplane cuts.

    The hyperplanes enter support-theoretically as extra constraints with
    full linear support, so the count is a BKK value in dimension
    n + m + i. Raises InvalidOrderError unless 0 <= i <= n - m.
    """
    supports = _constraint_list(constraints)
    n = supports[0].ambient_dim
    m = len(supports)
    if not 0 <= i <= n - m:
        raise InvalidOrderError(f"order {i} outside 0..{n - m}")
    hyperplane = linear_objective_support(n)
    problem = SparseProblem(
        tuple(f"x{k + 1}" for k in range(n)),
        linear_objective_support(n),
        supports + [hyperplane] * i,
        objective_kind=OBJECTIVE_LINEAR,
    )
    return bkk_degree(problem, algorithm=algorithm, seed=seed)


def symmetric_sum_of_products(r, values):
    """Sum of all products v1^i1 * ... * vk^ik over i1 + ... + ik = r.

    The complete homogeneous symmetric polynomial of degree r, with the
    convention 0^0 = 1 so zero arguments simply drop out.
    """
    if r < 0:
        raise ValueError("negative degree")
    totals = [1] + [0] * r
    for v in values:
        # Multiply the generating series by 1/(1 - v t), one degree at a time.
        powers = [1]
        for _ in range(r):
            powers.append(powers[-1] * v)
        totals = [
            sum(totals[t] * powers[e - t] for t in range(e + 1))
            for e in range(r + 1)
        ]
    return totals[r]


def _support_degree(support):
    return max(sum(p) for p in support.points)


def classical_bounds(problem):
    """Two dense-system bounds: (bezout, nie_ranestad).

    The Bezout bound multiplies the total degrees of the n derivative
    equations, multiplier degrees included. The Nie-Ranestad bound is
    d1*...*dm times the symmetric sum of products of degree n - m in
    (d0 - 1, ..., dm - 1), with di the total degree of support i.
    """
    data = lagrange_data(problem)
    bezout = 1
    for s in data.ell_supports:
        bezout *= _support_degree(s) if s.points else 0
    d0 = _support_degree(problem.objective_support)
    constraint_degrees = [
        _support_degree(s) for s in problem.constraint_supports
    ]
    nie_ranestad = 1
    for d in constraint_degrees:
        nie_ranestad *= d
    nie_ranestad *= symmetric_sum_of_products(
        problem.n - problem.m, [d0 - 1] + [d - 1 for d in constraint_degrees]
    )
    return bezout, nie_ranestad


def _vertex_reduced(problem):
    """The same problem with every non-vertex support point deleted."""

    def reduce_support(s):
        hull = s.hull()
        vertex_set = set(hull.vertices)
        kept = [
            p
            for p in s.points
            if tuple(Fraction(c) for c in p) in vertex_set
        ]
        return Support(s.ambient_dim, kept)

    return SparseProblem(
        problem.variables,
        reduce_support(problem.objective_support),
        [reduce_support(s) for s in problem.constraint_supports],
        objective_kind=problem.objective_kind,
    )


def degree_report(
    problem,
    algorithm=ALGO_CELLS,
    seed=0,
    unity=UNITY_ANY_BASIS_VECTOR,
    with_chern=None,
):
    """Compute every applicable degree and cross-check the routes.

    The calculators run regardless of admissibility; the verdict is
    attached so callers can judge which equalities are guaranteed. The
    toric Chow route runs when the problem is admissible and m < n, or
    always/never when with_chern is True/False. Sectional degrees and the
    distance-sum check run only for squared-distance objectives since the
    summation identity is specific to them.
    """
    captured = []
    with _warnings.catch_warnings(record=True) as seen:
        _warnings.simplefilter("always", DegenerateDirectionWarning)
        degree_cayley = cayley_degree(problem, algorithm=algorithm, seed=seed)
        degree_bkk = bkk_degree(problem, algorithm=algorithm, seed=seed)
    if seen:
        captured.append(WARN_DEGENERATE)

    verdict = is_strongly_admissible(problem, unity=unity)
    bezout, nie_ranestad = classical_bounds(problem)

    checks = {}
    notes = []
    checks[CHECK_CAYLEY_EQUALS_BKK] = degree_cayley == degree_bkk

    reduced = _vertex_reduced(problem)
    checks[CHECK_VERTEX_REDUCTION] = (
        cayley_degree(reduced, algorithm=algorithm, seed=seed) == degree_cayley
        and bkk_degree(reduced, algorithm=algorithm, seed=seed) == degree_bkk
    )

    degree_chern = None
    if with_chern is None:
        with_chern = verdict.admissible and 0 < problem.m < problem.n
    if with_chern:
        from .toricchow import chern_degree

        degree_chern = chern_degree(problem)
        equal = degree_chern == degree_cayley
        checks[CHECK_CHERN_EQUALS_CAYLEY] = equal
        if not equal and verdict.strongly_admissible != STRONGLY_TRUE:
            notes.append(
                "NotStronglyAdmissible: the toric intersection count may "
                "exceed the torus critical-point count"
            )

    ed_value = None
    sectionals = None
    if problem.objective_kind == OBJECTIVE_ED:
        ed_value = degree_bkk
        sectionals = tuple(
            sectional_degree(
                list(problem.constraint_supports),
                i,
                algorithm=algorithm,
                seed=seed,
            )
            for i in range(problem.n - problem.m + 1)
        )
        checks[CHECK_ED_SECTIONAL_SUM] = sum(sectionals) == ed_value
        notes.append(
            "polar degrees are not computed directly; under transversality "
            f"their sum equals the distance degree {ed_value}"
        )

    return DegreeReport(
        degree_cayley,
        degree_bkk,
        degree_chern,
        ed_value,
        sectionals,
        bezout,
        nie_ranestad,
        verdict,
        checks,
        notes,
        captured,
    )
