"""Admissibility certificates for sparse problems.

A problem is admissible when every support has its minimal vertex in
strictly positive directions with normal cone equal to the nonnegative
orthant, touches every coordinate hyperplane, and the objective support
carries a unity vector. Strong admissibility additionally requires every
singular cone of the common refinement of the normal fans to miss the
constraint variety, tested orbit by orbit at support level.
"""

from . import linalg
from .cone import NON_SIMPLICIAL, Cone, cone_multiplicity
from .fan import common_refinement, normal_fan
from .polytope import Support, convex_hull, face_exposed

STRONGLY_TRUE = "True"
STRONGLY_FALSE = "False"
STRONGLY_UNKNOWN = "Unknown"

UNITY_ANY_BASIS_VECTOR = "any-basis-vector"
UNITY_ALL_ONES = "all-ones"
UNITY_ORIGIN = "origin"

_GENERIC_PRIME = 10007


class AdmissibilityVerdict:
    """Outcome of the admissibility tests with per-condition detail."""

    __slots__ = ("admissible", "conditions", "strongly_admissible", "witnesses")

    def __init__(self, admissible, conditions, strongly_admissible, witnesses):
        self.admissible = admissible
        self.conditions = dict(conditions)
        self.strongly_admissible = strongly_admissible
        self.witnesses = dict(witnesses)

    def __repr__(self):
        return (
            f"AdmissibilityVerdict(admissible={self.admissible}, "
            f"strongly={self.strongly_admissible})"
        )

    def to_json(self):
        return {
            "admissible": self.admissible,
            "conditions": self.conditions,
            "strongly_admissible": self.strongly_admissible,
            "witnesses": self.witnesses,
        }


def init_support(support, w):
    """Points of the support minimizing <., w> (the face support)."""
    if not support.points:
        return support
    values = [linalg.dot(p, w) for p in support.points]
    lo = min(values)
    return Support(
        support.ambient_dim,
        [p for p, v in zip(support.points, values) if v == lo],
    )


def _generic_positive_vector(n):
    return tuple(_GENERIC_PRIME**j for j in range(n))


def _orthant(n):
    return Cone.from_rays(
        [tuple(int(i == j) for i in range(n)) for j in range(n)], n
    )


def _positive_vertex_condition(support, w=None):
    """Face exposed by a strictly positive vector must be a vertex whose
    normal cone is exactly the nonnegative orthant. Returns (ok, detail)."""
    n = support.ambient_dim
    if w is None:
        w = _generic_positive_vector(n)
    hull = support.hull()
    face = face_exposed(hull, w)
    if len(face.vertices) != 1:
        return False, {
            "reason": "positive direction exposes a positive-dimensional face",
            "face_vertices": [[str(x) for x in v] for v in face.vertices],
        }
    v = face.vertices[0]
    diffs = [
        tuple(int(u[j] - v[j]) for j in range(n)) for u in hull.vertices if u != v
    ]
    normal_cone = Cone.from_halfspaces(diffs, [], n)
    if normal_cone != _orthant(n):
        return False, {
            "reason": "vertex normal cone differs from the nonnegative orthant",
            "vertex": [str(x) for x in v],
            "normal_cone_rays": [list(r) for r in normal_cone.rays],
            "normal_cone_lineality": [list(r) for r in normal_cone.lineality],
        }
    return True, {"vertex": [str(x) for x in v]}


def _touches_all_hyperplanes(support):
    mins = [min(p[j] for p in support.points) for j in range(support.ambient_dim)]
    return all(v == 0 for v in mins), mins


def _has_unity(support, unity):
    n = support.ambient_dim
    if unity == UNITY_ANY_BASIS_VECTOR:
        return any(
            sum(p) == 1 and max(p) == 1 for p in support.points
        )
    if unity == UNITY_ALL_ONES:
        return (1,) * n in support.points
    if unity == UNITY_ORIGIN:
        return (0,) * n in support.points
    raise ValueError(f"unknown unity interpretation: {unity!r}")


def is_admissible(problem, unity=UNITY_ANY_BASIS_VECTOR):
    """Check the three admissibility conditions on all supports."""
    supports = [problem.objective_support] + list(problem.constraint_supports)
    conditions = {
        "orthant_cone": True,
        "hyperplane_touching": True,
        "unity_vector": True,
    }
    witnesses = {}

    for i, s in enumerate(supports):
        ok, detail = _positive_vertex_condition(s)
        if not ok:
            conditions["orthant_cone"] = False
            witnesses.setdefault("orthant_cone", {"support_index": i, **detail})
            break

    for i, s in enumerate(supports):
        ok, mins = _touches_all_hyperplanes(s)
        if not ok:
            conditions["hyperplane_touching"] = False
            witnesses.setdefault(
                "hyperplane_touching",
                {"support_index": i, "coordinate_minima": mins},
            )
            break

    if not _has_unity(problem.objective_support, unity):
        conditions["unity_vector"] = False
        witnesses["unity_vector"] = {
            "interpretation": unity,
            "objective_points": [list(p) for p in problem.objective_support.points],
        }

    admissible = all(conditions.values())
    return AdmissibilityVerdict(admissible, conditions, STRONGLY_UNKNOWN, witnesses)


def orbit_meets_variety(sigma, constraint_supports):
    """Does a generic constraint variety meet the torus orbit of sigma?

    Works at support level: initial supports are projected to the orbit's
    character lattice. A projected singleton means a monomial initial form
    and an empty intersection. One constraint with two or more projected
    points always meets the orbit; several constraints go through the
    subset-dimension criterion, with Unknown outside its proven range.
    """
    supports = list(constraint_supports)
    if not supports:
        return False
    n = sigma.ambient_dim
    w = sigma.relint_point()
    span = [list(r) for r in sigma.rays] + [list(l) for l in sigma.lineality]
    quotient = linalg.lattice_quotient_map(span, n)

    projected = []
    for s in supports:
        init = init_support(s, w)
        pts = sorted({tuple(linalg.dot(q, p) for q in quotient) for p in init.points})
        projected.append(pts)

    if any(len(pts) == 1 for pts in projected):
        return False
    m = len(supports)
    if m == 1:
        return True

    orbit_dim = n - sigma.dim
    for mask in range(1, 1 << m):
        chosen = [projected[i] for i in range(m) if mask & (1 << i)]
        edges = []
        for pts in chosen:
            base = pts[0]
            edges.extend(linalg.vsub(p, base) for p in pts[1:])
        size = bin(mask).count("1")
        if linalg.rank_int(edges) < size:
            return False
    if m <= orbit_dim:
        return True
    return STRONGLY_UNKNOWN


def _pulling_triangulation(cone):
    """Simplicial pieces of a pointed cone, pulled from its sorted rays."""
    if len(cone.rays) == cone.dim:
        return [cone.rays]
    apex = cone.rays[0]
    pieces = []
    for a in cone.ineqs:
        if linalg.dot(a, apex) == 0:
            continue
        tight = [r for r in cone.rays if linalg.dot(a, r) == 0]
        facet = Cone.from_rays(tight, cone.ambient_dim)
        for piece in _pulling_triangulation(facet):
            pieces.append((apex,) + piece)
    return pieces


def _is_singular(cone):
    mult = cone_multiplicity(cone)
    if mult is NON_SIMPLICIAL:
        return any(
            linalg.gcd_of_maximal_minors([list(r) for r in piece]) > 1
            for piece in _pulling_triangulation(cone)
        )
    return mult > 1


def is_strongly_admissible(problem, unity=UNITY_ANY_BASIS_VECTOR):
    """Full verdict: admissibility plus the singular-orbit scan.

    Builds the common refinement of the normal fans of every support hull
    and requires each singular cone to miss the constraint variety.
    """
    base = is_admissible(problem, unity=unity)
    if not base.admissible:
        return AdmissibilityVerdict(
            False, base.conditions, STRONGLY_FALSE, base.witnesses
        )

    supports = [problem.objective_support] + list(problem.constraint_supports)
    fans = [normal_fan(convex_hull(s.points, s.ambient_dim)) for s in supports]
    refined = common_refinement(fans)
    assert refined.is_complete(), "refinement of complete fans must be complete"

    witnesses = dict(base.witnesses)
    meets = []
    unknown = []
    for sigma in refined.all_cones():
        if not _is_singular(sigma):
            continue
        outcome = orbit_meets_variety(sigma, problem.constraint_supports)
        record = {
            "cone_rays": [list(r) for r in sigma.rays],
            "orbit_meets_variety": outcome
            if isinstance(outcome, bool)
            else STRONGLY_UNKNOWN,
        }
        if outcome is True:
            meets.append(record)
        elif outcome == STRONGLY_UNKNOWN:
            unknown.append(record)

    if meets:
        witnesses["singular_orbits"] = meets
        strongly = STRONGLY_FALSE
    elif unknown:
        witnesses["undecided_orbits"] = unknown
        strongly = STRONGLY_UNKNOWN
    else:
        strongly = STRONGLY_TRUE
    return AdmissibilityVerdict(True, base.conditions, strongly, witnesses)
