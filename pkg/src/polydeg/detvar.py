"""Counting degeneracy points of sparse polynomial matrices.

A t x s grid of Newton polytopes (s <= t) describes a matrix of sparse
Laurent polynomials on the k-dimensional torus. The locus where the
matrix drops below full column rank has codimension t - s + 1, so after
intersecting with k - t + s - 1 generic sparse hypersurfaces finitely
many points remain. Their count is a single mixed volume in dimension
k + s - 1: one Cayley polytope Cay(D_b1, ..., D_bs) per grid row, plus
the extra Newton polytopes embedded at Cayley height zero.

The grid lives in DetVarInstance, the count in detvar_degree, and
detvar_crosscheck rebuilds the Jacobian grid of a sparse optimization
problem to compare the determinantal count against the Lagrange route.
The two agree on strongly admissible problems; elsewhere a divergence is
reported but not treated as an error.
"""

import warnings as _warnings
from fractions import Fraction

from .admissibility import (
    STRONGLY_TRUE,
    UNITY_ANY_BASIS_VECTOR,
    is_strongly_admissible,
)
from .degrees import cayley_degree
from .errors import (
    EmptyEntryWarning,
    InputError,
    InvalidInstanceError,
    NonIntegralResultError,
)
from .mixedvol import ALGO_CELLS, mixed_volume
from .polymodel import cayley, partial_polytope
from .polytope import (
    Polytope,
    Support,
    convex_hull,
    minkowski_sum,
    parse_point,
)

REPRESENTABILITY_VERIFIED = "verified"
REPRESENTABILITY_FORMAL = "formal"

NOTE_EXPECTED_DIVERGENCE = (
    "ExpectedDivergence: without strong admissibility the determinantal "
    "count may differ from the critical-point count"
)


class DetVarInstance:
    """A t x s grid of entry polytopes plus the auxiliary hypersurfaces.

    delta[b][a] is the Newton polytope of the matrix entry in row b,
    column a; an entry may be None when that polynomial is identically
    zero. extra_supports lists the k - t + s - 1 auxiliary hypersurface
    supports that cut the degeneracy locus down to dimension zero.

    Witnesses are an optional pair (P, Q) of polytope lists with
    P[b] = delta[b][a] + Q[a] for every entry; when supplied they are
    verified exactly and the instance is labeled "verified", otherwise
    the count is still defined and the label is "formal".
    """

    __slots__ = (
        "k",
        "source_rank",
        "target_rank",
        "delta",
        "extra_supports",
        "witnesses",
        "representability",
    )

    def __init__(
        self,
        k,
        source_rank,
        target_rank,
        delta,
        extra_supports,
        witnesses=None,
    ):
        if not isinstance(k, int) or k < 1:
            raise InvalidInstanceError(f"ambient dimension must be >= 1, got {k!r}")
        if not isinstance(source_rank, int) or source_rank < 1:
            raise InvalidInstanceError(
                f"source rank must be >= 1, got {source_rank!r}"
            )
        if not isinstance(target_rank, int) or target_rank < source_rank:
            raise InvalidInstanceError(
                f"target rank must be >= source rank {source_rank}, "
                f"got {target_rank!r}"
            )
        extras_needed = k - target_rank + source_rank - 1
        if extras_needed < 0:
            raise InvalidInstanceError(
                f"degeneracy codimension {target_rank - source_rank + 1} "
                f"exceeds the ambient dimension {k}"
            )
        rows = [list(row) for row in delta]
        if len(rows) != target_rank:
            raise InvalidInstanceError(
                f"grid has {len(rows)} rows, expected {target_rank}"
            )
        for b, row in enumerate(rows):
            if len(row) != source_rank:
                raise InvalidInstanceError(
                    f"grid row {b} has {len(row)} entries, expected {source_rank}"
                )
            for a, entry in enumerate(row):
                if entry is None:
                    continue
                if not isinstance(entry, Polytope):
                    raise InvalidInstanceError(
                        f"grid entry ({b}, {a}) is not a polytope"
                    )
                if entry.ambient_dim != k:
                    raise InvalidInstanceError(
                        f"grid entry ({b}, {a}) lives in dimension "
                        f"{entry.ambient_dim}, expected {k}"
                    )
        extras = list(extra_supports)
        if len(extras) != extras_needed:
            raise InvalidInstanceError(
                f"{len(extras)} extra supports given, expected {extras_needed}"
            )
        for i, s in enumerate(extras):
            if not isinstance(s, Support):
                raise InvalidInstanceError(f"extra support {i} is not a Support")
            if s.ambient_dim != k:
                raise InvalidInstanceError(
                    f"extra support {i} lives in dimension {s.ambient_dim}, "
                    f"expected {k}"
                )
        # Polytope count must equal the Cayley ambient dimension.
        assert target_rank + len(extras) == k + source_rank - 1

        self.k = k
        self.source_rank = source_rank
        self.target_rank = target_rank
        self.delta = tuple(tuple(row) for row in rows)
        self.extra_supports = tuple(extras)
        self.witnesses = _checked_witnesses(self, witnesses)
        self.representability = (
            REPRESENTABILITY_FORMAL
            if self.witnesses is None
            else REPRESENTABILITY_VERIFIED
        )

    def __repr__(self):
        return (
            f"DetVarInstance(k={self.k}, source_rank={self.source_rank}, "
            f"target_rank={self.target_rank}, {self.representability})"
        )

    def to_json(self):
        payload = {
            "k": self.k,
            "source_rank": self.source_rank,
            "target_rank": self.target_rank,
            "delta": [[_polytope_json(p) for p in row] for row in self.delta],
            "extra_supports": [
                [list(p) for p in s.points] for s in self.extra_supports
            ],
        }
        if self.witnesses is not None:
            target, source = self.witnesses
            payload["witnesses"] = {
                "P": [_point_list_json(p) for p in target],
                "Q": [_point_list_json(q) for q in source],
            }
        return payload


def _checked_witnesses(instance, witnesses):
    if witnesses is None:
        return None
    try:
        target, source = witnesses
    except (TypeError, ValueError):
        raise InvalidInstanceError(
            "witnesses must be a pair of polytope lists"
        ) from None
    target = list(target)
    source = list(source)
    if len(target) != instance.target_rank or len(source) != instance.source_rank:
        raise InvalidInstanceError(
            f"witness lists have lengths {len(target)} and {len(source)}, "
            f"expected {instance.target_rank} and {instance.source_rank}"
        )
    for p in target + source:
        if not isinstance(p, Polytope) or p.ambient_dim != instance.k:
            raise InvalidInstanceError(
                f"witness polytopes must live in dimension {instance.k}"
            )
    for b, row in enumerate(instance.delta):
        for a, entry in enumerate(row):
            if entry is None:
                continue
            if minkowski_sum(entry, source[a]) != target[b]:
                raise InvalidInstanceError(
                    f"witness identity fails at entry ({b}, {a}): "
                    f"P[{b}] != delta[{b}][{a}] + Q[{a}]"
                )
    return (tuple(target), tuple(source))


def _coord_json(value):
    value = Fraction(value)
    return int(value) if value.denominator == 1 else str(value)


def _point_list_json(p):
    return [[_coord_json(c) for c in v] for v in p.vertices]


def _polytope_json(p):
    return {"points": [] if p is None else _point_list_json(p)}


def _empty(reason):
    _warnings.warn(reason, EmptyEntryWarning, stacklevel=3)


def detvar_degree(instance, algorithm=ALGO_CELLS, seed=0):
    """Number of degeneracy points, as one mixed volume in R^(k+s-1).

    Each grid row contributes its Cayley polytope over the s columns;
    the extra supports enter as hulls at Cayley height zero. An empty
    grid entry or extra support makes the count zero and emits an
    EmptyEntryWarning. The mixed volume is asserted to be an integer.
    """
    for b, row in enumerate(instance.delta):
        for a, entry in enumerate(row):
            if entry is None:
                _empty(f"grid entry ({b}, {a}) is empty")
                return 0
    for i, s in enumerate(instance.extra_supports):
        if not s.points:
            _empty(f"extra support {i} is empty")
            return 0
    factors = [cayley(list(row)) for row in instance.delta]
    pad = (0,) * (instance.source_rank - 1)
    ambient = instance.k + instance.source_rank - 1
    for s in instance.extra_supports:
        factors.append(convex_hull([p + pad for p in s.points], ambient))
    value = mixed_volume(factors, algorithm=algorithm, seed=seed).value
    if value.denominator != 1:
        raise NonIntegralResultError(
            f"determinantal mixed volume evaluated to {value}"
        )
    return int(value)


def jacobian_instance(problem):
    """The determinantal grid of a problem's critical equations.

    Row j holds the direction-j derivative polytopes of the objective
    and constraint Newton polytopes (columns 0..m), and the constraint
    supports ride along as the extra hypersurfaces. Critical points are
    exactly where the Jacobian of (objective, constraints) drops rank on
    the constraint set, so counting them is a k = n, s = m + 1, t = n
    instance.
    """
    supports = [problem.objective_support] + list(problem.constraint_supports)
    hulls = [s.hull() for s in supports]
    delta = [[partial_polytope(h, j) for h in hulls] for j in range(problem.n)]
    return DetVarInstance(
        problem.n,
        problem.m + 1,
        problem.n,
        delta,
        list(problem.constraint_supports),
    )


class CrosscheckReport:
    """Both route values for one problem, and whether they had to agree."""

    __slots__ = (
        "determinantal_degree",
        "lagrange_degree",
        "agree",
        "strongly_admissible",
        "expected_divergence",
        "notes",
    )

    def __init__(
        self,
        determinantal_degree,
        lagrange_degree,
        strongly_admissible,
        notes=(),
    ):
        self.determinantal_degree = determinantal_degree
        self.lagrange_degree = lagrange_degree
        self.agree = determinantal_degree == lagrange_degree
        self.strongly_admissible = strongly_admissible
        self.expected_divergence = not self.agree and not strongly_admissible
        self.notes = tuple(notes)

    @property
    def passed(self):
        return self.agree or self.expected_divergence

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return (
            f"CrosscheckReport(determinantal={self.determinantal_degree}, "
            f"lagrange={self.lagrange_degree}, agree={self.agree})"
        )

    def to_json(self):
        return {
            "determinantal_degree": self.determinantal_degree,
            "lagrange_degree": self.lagrange_degree,
            "agree": self.agree,
            "strongly_admissible": self.strongly_admissible,
            "expected_divergence": self.expected_divergence,
            "passed": self.passed,
            "notes": list(self.notes),
        }


def detvar_crosscheck(
    problem, algorithm=ALGO_CELLS, seed=0, unity=UNITY_ANY_BASIS_VECTOR
):
    """Compare the determinantal count with the Lagrange route.

    Builds the Jacobian grid and evaluates both formulas. On strongly
    admissible problems the values must coincide; otherwise a mismatch
    is a known failure mode and is flagged as expected divergence rather
    than raised.
    """
    instance = jacobian_instance(problem)
    determinantal = detvar_degree(instance, algorithm=algorithm, seed=seed)
    lagrange = cayley_degree(problem, algorithm=algorithm, seed=seed)
    verdict = is_strongly_admissible(problem, unity=unity)
    strongly = verdict.strongly_admissible == STRONGLY_TRUE
    notes = []
    if determinantal != lagrange and not strongly:
        notes.append(NOTE_EXPECTED_DIVERGENCE)
    return CrosscheckReport(determinantal, lagrange, strongly, notes)


def instance_from_json(obj):
    """Build a DetVarInstance from its JSON object form.

    Grid entries are {"points": [...]} objects (empty list = empty
    entry), extra supports are bare point lists, and the optional
    witnesses entry holds {"P": [...], "Q": [...]} point lists.
    """
    if not isinstance(obj, dict):
        raise InputError("determinantal JSON must be an object")
    for key in ("k", "source_rank", "target_rank"):
        if not isinstance(obj.get(key), int):
            raise InputError(f"'{key}' must be an integer")
    k = obj["k"]

    def read_polytope(entry, where):
        if not isinstance(entry, dict) or not isinstance(
            entry.get("points"), list
        ):
            raise InputError(f"{where} must be an object with a 'points' list")
        points = entry["points"]
        if not points:
            return None
        return convex_hull([parse_point(p) for p in points], k)

    delta_raw = obj.get("delta")
    if not isinstance(delta_raw, list):
        raise InputError("'delta' must be a list of grid rows")
    delta = []
    for b, row in enumerate(delta_raw):
        if not isinstance(row, list):
            raise InputError(f"grid row {b} must be a list")
        delta.append(
            [
                read_polytope(entry, f"grid entry ({b}, {a})")
                for a, entry in enumerate(row)
            ]
        )

    extras_raw = obj.get("extra_supports", [])
    if not isinstance(extras_raw, list):
        raise InputError("'extra_supports' must be a list of point lists")
    extras = []
    for i, points in enumerate(extras_raw):
        if not isinstance(points, list):
            raise InputError(f"extra support {i} must be a point list")
        extras.append(Support(k, [parse_point(p) for p in points]))

    witnesses = None
    witnesses_raw = obj.get("witnesses")
    if witnesses_raw is not None:
        if not isinstance(witnesses_raw, dict) or not isinstance(
            witnesses_raw.get("P"), list
        ) or not isinstance(witnesses_raw.get("Q"), list):
            raise InputError("'witnesses' must hold 'P' and 'Q' lists")

        def read_witness(points, where):
            if not isinstance(points, list) or not points:
                raise InputError(f"{where} must be a nonempty point list")
            return convex_hull([parse_point(p) for p in points], k)

        witnesses = (
            [
                read_witness(p, f"witness P[{b}]")
                for b, p in enumerate(witnesses_raw["P"])
            ],
            [
                read_witness(q, f"witness Q[{a}]")
                for a, q in enumerate(witnesses_raw["Q"])
            ],
        )

    return DetVarInstance(
        k,
        obj["source_rank"],
        obj["target_rank"],
        delta,
        extras,
        witnesses=witnesses,
    )
