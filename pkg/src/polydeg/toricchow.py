"""Intersection theory on smooth complete toric fans.

The entry point is chern_degree, which counts critical points of a sparse
optimization problem as the degree of a cycle class on a smooth projective
toric surface or threefold compatible with all Newton polytopes involved.
The supporting machinery is self-contained and exact:

* appropriate_fan refines the normal fans of every support and resolves
  singular cones by stellar subdivision at fundamental-parallelepiped
  points, so all intersection numbers live on a smooth complete fan;
* DivisorClass and CycleClass model divisors and Minkowski weights, with
  the balancing condition enforced on construction;
* intersect_divisor caps a cycle with a divisor by the standard local
  formula: subtract a linear function matching the divisor on the cone,
  then read the defect across its one-higher-dimensional extensions;
* porteous_coefficients expands the truncated Segre/Chern series whose
  top graded piece converts constraint divisor data into the degree of
  the critical-point degeneracy locus.

Everything is computed over the integers with exact rational solves; a
non-integral or adjustment-dependent intersection weight is an internal
error, never a rounding step.
"""

from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .admissibility import is_admissible
from .cone import NON_SIMPLICIAL, Cone, cone_multiplicity
from .errors import (
    ArityMismatchError,
    DimensionMismatchError,
    FanNotCompatibleError,
    InputError,
    InternalCheckError,
    InvalidCycleError,
    NotPointedError,
    ResolutionBudgetExceededError,
)
from .fan import Fan, common_refinement, normal_fan

RESOLUTION_BUDGET = 10_000


class SmoothFan:
    """Complete simplicial fan in which every cone is unimodular.

    Cones are stored combinatorially: since every maximal cone is
    simplicial, each face is spanned by a subset of its rays, so a cone
    is identified with a frozenset of ray indices.
    """

    __slots__ = ("ambient_dim", "rays", "_index", "maximal_sets")

    def __init__(self, ambient_dim, maximal_cones):
        fan = Fan(ambient_dim, maximal_cones)
        if not fan.pointed:
            raise NotPointedError("smooth fan requires pointed cones")
        if not fan.is_complete():
            raise InputError("smooth fan requires a complete fan")
        rays = sorted({r for c in fan.maximal_cones for r in c.rays})
        index = {r: i for i, r in enumerate(rays)}
        sets = []
        for c in fan.maximal_cones:
            if len(c.rays) != ambient_dim:
                raise InputError("fan has a non-simplicial maximal cone")
            if abs(linalg.bareiss_det([list(r) for r in c.rays])) != 1:
                raise InputError(f"fan has a singular maximal cone {c!r}")
            sets.append(frozenset(index[r] for r in c.rays))
        self.ambient_dim = ambient_dim
        self.rays = tuple(rays)
        self._index = index
        self.maximal_sets = tuple(sorted(sets, key=sorted))

    def __eq__(self, other):
        return (
            isinstance(other, SmoothFan)
            and self.ambient_dim == other.ambient_dim
            and self.rays == other.rays
            and self.maximal_sets == other.maximal_sets
        )

    def __repr__(self):
        return (
            f"SmoothFan({len(self.rays)} rays, "
            f"{len(self.maximal_sets)} maximal cones in R^{self.ambient_dim})"
        )

    def ray_index(self, ray):
        key = tuple(int(x) for x in ray)
        if key not in self._index:
            raise InputError(f"{key} is not a ray of the fan")
        return self._index[key]

    def cones_of_dim(self, p):
        """All dimension-p cones, as frozensets of ray indices."""
        out = set()
        for cell in self.maximal_sets:
            out.update(frozenset(c) for c in combinations(sorted(cell), p))
        return sorted(out, key=sorted)

    def extensions(self, tau):
        """Cones one dimension above tau, with the extra ray index each."""
        out = {}
        for cell in self.maximal_sets:
            if tau <= cell:
                for extra in cell - tau:
                    out[tau | {extra}] = extra
        return sorted(out.items(), key=lambda kv: sorted(kv[0]))

    def has_cone(self, rays):
        want = frozenset(self.ray_index(r) for r in rays)
        if len(want) == self.ambient_dim:
            return want in self.maximal_sets
        return any(want <= cell for cell in self.maximal_sets)

    def to_json(self):
        return {
            "rays": [list(r) for r in self.rays],
            "maximal_cones": [sorted(cell) for cell in self.maximal_sets],
        }


class DivisorClass:
    """Integer combination of the torus-invariant prime divisors.

    Coefficients are stored for every ray of the fan; rays omitted from
    the constructor mapping get coefficient zero.
    """

    __slots__ = ("fan", "coefficients")

    def __init__(self, fan, coefficients):
        coeffs = {r: 0 for r in fan.rays}
        for ray, a in dict(coefficients).items():
            key = fan.rays[fan.ray_index(ray)]
            if a != int(a):
                raise InputError("divisor coefficients must be integers")
            coeffs[key] = int(a)
        self.fan = fan
        self.coefficients = coeffs

    def coefficient(self, ray):
        return self.coefficients[self.fan.rays[self.fan.ray_index(ray)]]

    def __add__(self, other):
        if not isinstance(other, DivisorClass) or other.fan != self.fan:
            return NotImplemented
        return DivisorClass(
            self.fan,
            {r: self.coefficients[r] + other.coefficients[r] for r in self.fan.rays},
        )

    def __neg__(self):
        return DivisorClass(self.fan, {r: -a for r, a in self.coefficients.items()})

    def __sub__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, DivisorClass)
            and self.fan == other.fan
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        parts = [f"{a}*D{list(r)}" for r, a in self.coefficients.items() if a]
        return f"DivisorClass({' + '.join(parts) or '0'})"

    def to_json(self):
        return {
            "coefficients": [
                [list(r), self.coefficients[r]] for r in self.fan.rays
            ]
        }


class CycleClass:
    """Minkowski weight: a codimension-k class on a smooth complete fan.

    The weights live on the cones of dimension n - k and must satisfy the
    balancing condition around every cone one dimension lower: the
    weighted sum of the extension rays has to lie in the linear span of
    the smaller cone. Construction fails on unbalanced data.
    """

    __slots__ = ("fan", "codim", "_weights")

    def __init__(self, fan, codim, weights):
        n = fan.ambient_dim
        if not 0 <= codim <= n:
            raise InvalidCycleError(f"codimension {codim} out of range")
        valid = set(fan.cones_of_dim(n - codim))
        packed = {}
        for key, w in dict(weights).items():
            try:
                cell = frozenset(fan.ray_index(r) for r in key)
            except InputError as exc:
                raise InvalidCycleError(str(exc)) from None
            if cell not in valid:
                raise InvalidCycleError(
                    f"{sorted(cell)} is not a codimension-{codim} cone of the fan"
                )
            if w != int(w):
                raise InvalidCycleError("weights must be integers")
            if w:
                packed[cell] = int(w)
        self.fan = fan
        self.codim = codim
        self._weights = packed
        self._check_balanced()

    @classmethod
    def fundamental(cls, fan):
        """The class of the whole variety: weight one on each maximal cone."""
        weights = {
            tuple(fan.rays[i] for i in sorted(cell)): 1
            for cell in fan.maximal_sets
        }
        return cls(fan, 0, weights)

    def weight(self, rays):
        cell = frozenset(self.fan.ray_index(r) for r in rays)
        return self._weights.get(cell, 0)

    def weights(self):
        """The nonzero weights keyed by sorted ray tuples."""
        return {
            tuple(self.fan.rays[i] for i in sorted(cell)): w
            for cell, w in self._weights.items()
        }

    def degree(self):
        if self.codim != self.fan.ambient_dim:
            raise InvalidCycleError("degree needs a zero-dimensional cycle")
        return self._weights.get(frozenset(), 0)

    def _check_balanced(self):
        p = self.fan.ambient_dim - self.codim
        if p == 0:
            return
        for tau in self.fan.cones_of_dim(p - 1):
            total = [0] * self.fan.ambient_dim
            for cell, extra in self.fan.extensions(tau):
                w = self._weights.get(cell, 0)
                if w:
                    total = linalg.vadd(total, linalg.vscale(w, self.fan.rays[extra]))
            if not any(total):
                continue
            span = [list(self.fan.rays[i]) for i in sorted(tau)]
            if linalg.rank_int(span + [list(total)]) != len(span):
                raise InvalidCycleError(
                    f"weights unbalanced around cone {sorted(tau)}"
                )

    def __eq__(self, other):
        return (
            isinstance(other, CycleClass)
            and self.fan == other.fan
            and self.codim == other.codim
            and self._weights == other._weights
        )

    def __repr__(self):
        return f"CycleClass(codim={self.codim}, {len(self._weights)} weights)"


def intersect_divisor(cycle, divisor):
    """Cap a cycle class with a divisor class on the same fan.

    For each cone tau one dimension below the cycle support, the divisor
    is shifted by a linear function that matches its coefficients on the
    rays of tau; the new weight is the weighted sum of the shifted values
    on the extension rays. The result does not depend on the shift, which
    is re-verified with a second adjustment on every cone.
    """
    fan = cycle.fan
    if divisor.fan != fan:
        raise FanNotCompatibleError("cycle and divisor live on different fans")
    n = fan.ambient_dim
    p = n - cycle.codim
    if p == 0:
        raise InvalidCycleError("cycle is already zero-dimensional")

    new_weights = {}
    for tau in fan.cones_of_dim(p - 1):
        total = 0
        moved = [0] * n
        for cell, extra in fan.extensions(tau):
            w = cycle._weights.get(cell, 0)
            if not w:
                continue
            ray = fan.rays[extra]
            total += w * divisor.coefficients[ray]
            moved = linalg.vadd(moved, linalg.vscale(w, ray))
        tau_rays = [fan.rays[i] for i in sorted(tau)]
        first, second = _adjustments(tau_rays, divisor, n)
        value = total - linalg.dot(first, moved)
        again = total - linalg.dot(second, moved)
        if value != again:
            raise InternalCheckError(
                "intersection weight depends on the linear adjustment"
            )
        value = Fraction(value)
        if value.denominator != 1:
            raise InternalCheckError("non-integral intersection weight")
        if value:
            new_weights[tuple(tau_rays)] = int(value)
    return CycleClass(fan, cycle.codim + 1, new_weights)


def _adjustments(tau_rays, divisor, n):
    """Two linear functions agreeing with the divisor on the given rays."""
    if not tau_rays:
        zero = tuple(Fraction(0) for _ in range(n))
        probe = tuple(Fraction(int(j == 0)) for j in range(n))
        return zero, probe
    rhs = [divisor.coefficients[r] for r in tau_rays]
    base = linalg.solve([list(r) for r in tau_rays], rhs)
    if base is None:
        raise InternalCheckError("inconsistent adjustment system on a smooth cone")
    kernel = linalg.nullspace([list(r) for r in tau_rays])
    if not kernel:
        raise InternalCheckError("missing second adjustment on a proper cone")
    shifted = tuple(b + k for b, k in zip(base, kernel[0]))
    return base, shifted


def polytope_divisor(p, fan):
    """Divisor class of a polytope on a fan refining its normal fan.

    The coefficient on a ray is the negated minimum of the ray functional
    over the polytope. Each maximal cone must select a unique vertex and
    stay inside that vertex's normal cone, otherwise the fan does not
    refine the normal fan and the class is undefined.
    """
    if p.ambient_dim != fan.ambient_dim:
        raise DimensionMismatchError("polytope and fan in different dimensions")
    for cell in fan.maximal_sets:
        rays = [fan.rays[i] for i in sorted(cell)]
        probe = tuple(sum(r[j] for r in rays) for j in range(fan.ambient_dim))
        values = [linalg.dot(v, probe) for v in p.vertices]
        lo = min(values)
        chosen = [v for v, val in zip(p.vertices, values) if val == lo]
        if len(chosen) != 1:
            raise FanNotCompatibleError(
                "a maximal cone exposes a positive-dimensional face"
            )
        v0 = chosen[0]
        for r in rays:
            if any(linalg.dot(linalg.vsub(u, v0), r) < 0 for u in p.vertices):
                raise FanNotCompatibleError(
                    "fan does not refine the polytope's normal fan"
                )
    coeffs = {}
    for r in fan.rays:
        lo = min(linalg.dot(v, r) for v in p.vertices)
        lo = Fraction(lo)
        if lo.denominator != 1:
            raise InputError("polytope divisor needs integral support values")
        coeffs[r] = -int(lo)
    return DivisorClass(fan, coeffs)


def chow_degree(fan, divisors):
    """Intersection number of ambient-dimension many divisor classes."""
    divisors = list(divisors)
    if len(divisors) != fan.ambient_dim:
        raise ArityMismatchError(
            f"need {fan.ambient_dim} divisor classes, got {len(divisors)}"
        )
    cycle = CycleClass.fundamental(fan)
    for d in divisors:
        cycle = intersect_divisor(cycle, d)
    return cycle.degree()


class ChernSeriesTerm:
    """One monomial of the truncated Segre/Chern expansion.

    class_exponents has one entry per objective/constraint divisor class,
    ray_exponents one entry per coordinate ray divisor; the coefficient
    carries the sign and multiplicity of the monomial.
    """

    __slots__ = ("class_exponents", "ray_exponents", "coefficient")

    def __init__(self, class_exponents, ray_exponents, coefficient):
        self.class_exponents = tuple(int(x) for x in class_exponents)
        self.ray_exponents = tuple(int(x) for x in ray_exponents)
        self.coefficient = int(coefficient)

    @property
    def degree(self):
        return sum(self.class_exponents) + sum(self.ray_exponents)

    def __eq__(self, other):
        return (
            isinstance(other, ChernSeriesTerm)
            and self.class_exponents == other.class_exponents
            and self.ray_exponents == other.ray_exponents
            and self.coefficient == other.coefficient
        )

    def __hash__(self):
        return hash((self.class_exponents, self.ray_exponents, self.coefficient))

    def __repr__(self):
        return (
            f"ChernSeriesTerm(classes={self.class_exponents}, "
            f"rays={self.ray_exponents}, coefficient={self.coefficient})"
        )


def porteous_coefficients(m, n):
    """Terms of the Segre/Chern product truncated in degree n - m.

    The bundle whose Segre series appears is a sum of m + 1 line-bundle
    inverses, so each class contributes a full geometric series; the
    Chern factor contributes one (1 - D) per coordinate ray divisor.
    """
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    cutoff = n - m
    terms = {((0,) * (m + 1), (0,) * n): 1}
    for i in range(m + 1):
        grown = {}
        for (ce, re), coef in terms.items():
            room = cutoff - sum(ce) - sum(re)
            for k in range(room + 1):
                key = (ce[:i] + (ce[i] + k,) + ce[i + 1 :], re)
                grown[key] = grown.get(key, 0) + coef
        terms = grown
    for j in range(n):
        grown = {}
        for (ce, re), coef in terms.items():
            grown[(ce, re)] = grown.get((ce, re), 0) + coef
            if sum(ce) + sum(re) < cutoff:
                key = (ce, re[:j] + (re[j] + 1,) + re[j + 1 :])
                grown[key] = grown.get(key, 0) - coef
        terms = grown
    return [
        ChernSeriesTerm(ce, re, coef)
        for (ce, re), coef in sorted(terms.items())
        if coef
    ]


def _stellar(maximal_cones, center, ambient_dim):
    """Stellar subdivision of the fan at a primitive lattice vector."""
    out = []
    for c in maximal_cones:
        if not c.contains(center):
            out.append(c)
            continue
        for a in c.ineqs:
            if linalg.dot(a, center) == 0:
                continue
            tight = [r for r in c.rays if linalg.dot(a, r) == 0]
            out.append(Cone.from_rays(tight + [center], ambient_dim))
    return out


def _parallelepiped_point(cone):
    """Primitive lattice point of the half-open fundamental parallelepiped.

    The rays are linearly independent, so lattice points correspond to
    the finitely many residues of the dual Smith form; the point with the
    smallest barycentric coordinate sum is the preferred stellar center.
    """
    rays = [list(r) for r in cone.rays]
    u, diag, _ = linalg.snf(rays)
    d = len(rays)
    best = None
    for ks in product(*[range(s) for s in diag[:d]]):
        y = [Fraction(k, s) for k, s in zip(ks, diag)]
        t = [
            sum(u[row][i] * y[row] for row in range(d)) % 1
            for i in range(d)
        ]
        point = [Fraction(0)] * cone.ambient_dim
        for ti, ray in zip(t, rays):
            point = [pv + ti * rv for pv, rv in zip(point, ray)]
        if not any(point):
            continue
        if any(pv.denominator != 1 for pv in point):
            raise InternalCheckError("parallelepiped residue left the lattice")
        vec = tuple(int(pv) for pv in point)
        if linalg.vgcd(vec) != 1:
            continue
        key = (sum(t), vec)
        if best is None or key < best:
            best = key
    if best is None:
        raise InternalCheckError("singular cone without a primitive residue")
    return best[1]


def _subdivision_center(maximal_cones):
    """Stellar center resolving the worst singular cone, or None if smooth.

    Simplicial singular cones are handled first, smallest multiplicity
    first, at a fundamental-parallelepiped point; non-simplicial cones
    fall back to the primitive sum of their rays.
    """
    faces = {}
    for c in maximal_cones:
        for f in c.faces():
            faces[(f.rays, f.lineality)] = f
    best = None
    fallback = None
    for f in faces.values():
        mult = cone_multiplicity(f)
        if mult is NON_SIMPLICIAL:
            center = linalg.primitive(
                tuple(sum(r[j] for r in f.rays) for j in range(f.ambient_dim))
            )
            if fallback is None or f.rays < fallback[0]:
                fallback = (f.rays, center)
        elif mult > 1:
            if best is None or (mult, f.rays) < (best[0], best[1]):
                best = (mult, f.rays, _parallelepiped_point(f))
    if best is not None:
        return best[2]
    if fallback is not None:
        return fallback[1]
    return None


def _resolve(maximal_cones, ambient_dim, budget):
    while True:
        center = _subdivision_center(maximal_cones)
        if center is None:
            return maximal_cones, budget
        if budget <= 0:
            raise ResolutionBudgetExceededError(
                f"resolution did not finish within {RESOLUTION_BUDGET} subdivisions"
            )
        maximal_cones = _stellar(maximal_cones, center, ambient_dim)
        budget -= 1


def appropriate_fan(problem):
    """Smooth complete fan refining the normal fan of every support hull.

    The common refinement is resolved by repeated stellar subdivision.
    Coordinate basis vectors are forced to appear as rays so coordinate
    divisors exist, and on admissible problems the positive orthant is
    certified to survive as a cone of the output.
    """
    supports = [problem.objective_support] + list(problem.constraint_supports)
    fans = [normal_fan(s.hull()) for s in supports]
    refined = common_refinement(fans)
    if not refined.pointed:
        raise NotPointedError(
            "support hulls span a proper subspace; the refinement has lineality"
        )
    n = refined.ambient_dim
    maximal, budget = _resolve(list(refined.maximal_cones), n, RESOLUTION_BUDGET)
    for j in range(n):
        basis = tuple(int(i == j) for i in range(n))
        if all(basis not in c.rays for c in maximal):
            maximal = _stellar(maximal, basis, n)
            maximal, budget = _resolve(maximal, n, budget)
    smooth = SmoothFan(n, maximal)
    if is_admissible(problem).admissible:
        orthant = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        if not smooth.has_cone(orthant):
            raise InternalCheckError(
                "admissible problem lost the orthant during resolution"
            )
    return smooth


def chern_degree(problem):
    """Critical-point count of the problem via toric intersection numbers.

    Computes the degree of the product of the constraint divisor classes
    with the top graded part of the Segre/Chern series on the resolved
    fan. On strongly admissible problems this agrees with the Lagrange
    mixed-volume count; otherwise it is only an intersection-theoretic
    upper bound for it.
    """
    n = problem.n
    m = problem.m
    terms = porteous_coefficients(m, n)
    fan = appropriate_fan(problem)
    supports = [problem.objective_support] + list(problem.constraint_supports)
    classes = [polytope_divisor(s.hull(), fan) for s in supports]
    coordinate = [
        DivisorClass(fan, {tuple(int(i == j) for i in range(n)): 1})
        for j in range(n)
    ]
    cutoff = n - m
    total = 0
    for term in terms:
        if term.degree != cutoff:
            continue
        stack = [classes[i] for i in range(1, m + 1)]
        for i, k in enumerate(term.class_exponents):
            stack.extend([classes[i]] * k)
        for j, k in enumerate(term.ray_exponents):
            stack.extend([coordinate[j]] * k)
        total += term.coefficient * chow_degree(fan, stack)
    return total
