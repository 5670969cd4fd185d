"""Sparse polynomial problems and their polytope data.

A problem is an objective and a list of polynomial constraints, each known
only through its monomial support. The critical equations of the
multiplier function obj - sum_i lambda_i * f_i have supports that read off
directly from the constraint supports, and their Newton polytopes drive
every degree computation downstream.
"""

import re
from fractions import Fraction

from .errors import DimensionMismatchError, InputError, ParseError
from .polytope import Polytope, Support, convex_hull, intersect_halfspaces

OBJECTIVE_CUSTOM = "Custom"
OBJECTIVE_ED = "EuclideanDistance"
OBJECTIVE_LINEAR = "Linear"

CAYLEY_ZERO_BASED = "zero-based"
CAYLEY_FULL_BASIS = "full-basis"


class SparsePoly:
    """Polynomial as an exponent-to-coefficient map with named variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms):
        self.variables = tuple(variables)
        clean = {}
        n = len(self.variables)
        for expo, coeff in terms.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != n:
                raise DimensionMismatchError(
                    f"exponent {expo} has length {len(expo)}, expected {n}"
                )
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            coeff = Fraction(coeff)
            if coeff:
                clean[expo] = clean.get(expo, Fraction(0)) + coeff
        self.terms = {e: c for e, c in clean.items() if c}

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __sub__(self, other):
        if self.variables != other.variables:
            raise DimensionMismatchError("polynomials over different variables")
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, Fraction(0)) - c
        return SparsePoly(self.variables, merged)

    def __repr__(self):
        if not self.terms:
            return "SparsePoly(0)"
        bits = []
        for expo in sorted(self.terms):
            coeff = self.terms[expo]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, expo)
                if e
            )
            bits.append(f"{coeff}*{mono}" if mono else str(coeff))
        return f"SparsePoly({' + '.join(bits)})"

    @property
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def support(self):
        return Support(len(self.variables), self.terms.keys())

    def newton_polytope(self):
        return convex_hull(self.terms.keys(), len(self.variables))


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^=]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
            break
        if m.group("num") is not None:
            tokens.append(("num", Fraction(m.group("num").replace(" ", "")), m.start()))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start()))
        else:
            tokens.append(("op", m.group("op"), m.start()))
        pos = m.end()
    return tokens


def _parse_expression(tokens, variables):
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    terms = {}
    i = 0

    def fail(message, at):
        raise ParseError(message, at)

    while i < len(tokens):
        sign = Fraction(1)
        while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            fail("dangling sign at end of expression", tokens[-1][2])
        coeff = sign
        expo = [0] * n
        expect_factor = True
        while expect_factor:
            kind, value, at = tokens[i] if i < len(tokens) else (None, None, None)
            if kind == "num":
                coeff *= value
                i += 1
            elif kind == "name":
                if value not in index:
                    fail(f"unknown variable {value!r}", at)
                power = 1
                i += 1
                if i < len(tokens) and tokens[i] == ("op", "^", tokens[i][2]):
                    i += 1
                    if i >= len(tokens) or tokens[i][0] != "num":
                        fail("exponent must be an integer", at)
                    p = tokens[i][1]
                    if p.denominator != 1 or p < 0:
                        fail("exponent must be a nonnegative integer", tokens[i][2])
                    power = int(p)
                    i += 1
                expo[index[value]] += power
            else:
                fail("expected a coefficient or variable", at if at is not None else 0)
            expect_factor = False
            if i < len(tokens) and tokens[i][:2] == ("op", "*"):
                i += 1
                expect_factor = True
                if i >= len(tokens):
                    fail("dangling '*' at end of expression", tokens[-1][2])
        key = tuple(expo)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return SparsePoly(variables, terms)


def parse_poly(text, variables):
    """Parse '3*x^2*y - 1/2*y + 4' style text over the given variables.

    An '=' sign splits the text into two expressions and their difference
    is returned, so constraints may be written in equation form.
    """
    tokens = _tokenize(text)
    splits = [i for i, t in enumerate(tokens) if t[:2] == ("op", "=")]
    if len(splits) > 1:
        raise ParseError("more than one '=' in expression", tokens[splits[1]][2])
    if not splits:
        if not tokens:
            raise ParseError("empty expression", 0)
        return _parse_expression(tokens, variables)
    cut = splits[0]
    lhs, rhs = tokens[:cut], tokens[cut + 1 :]
    if not lhs or not rhs:
        raise ParseError("'=' needs expressions on both sides", tokens[cut][2])
    return _parse_expression(lhs, variables) - _parse_expression(rhs, variables)


def ed_objective_support(n):
    """Support of a generic squared-distance objective: 0, e_j, 2 e_j."""
    points = [(0,) * n]
    for j in range(n):
        points.append(tuple(2 if i == j else 0 for i in range(n)))
        points.append(tuple(1 if i == j else 0 for i in range(n)))
    return Support(n, points)


def linear_objective_support(n):
    points = [(0,) * n]
    for j in range(n):
        points.append(tuple(1 if i == j else 0 for i in range(n)))
    return Support(n, points)


class SparseProblem:
    """Objective and equality constraints, kept at support level.

    The origin is always adjoined to the objective support, matching the
    convention that objectives carry a constant term.
    """

    __slots__ = (
        "variables",
        "objective_kind",
        "objective_support",
        "constraint_supports",
        "objective_poly",
        "constraint_polys",
    )

    def __init__(
        self,
        variables,
        objective_support,
        constraint_supports,
        objective_kind=OBJECTIVE_CUSTOM,
        objective_poly=None,
        constraint_polys=None,
    ):
        self.variables = tuple(variables)
        n = len(self.variables)
        if objective_support.ambient_dim != n:
            raise DimensionMismatchError("objective support in wrong dimension")
        origin = (0,) * n
        self.objective_support = Support(
            n, tuple(objective_support.points) + (origin,)
        )
        supports = []
        for s in constraint_supports:
            if s.ambient_dim != n:
                raise DimensionMismatchError("constraint support in wrong dimension")
            if not s.points:
                raise InputError("constraint with empty support")
            supports.append(s)
        self.constraint_supports = tuple(supports)
        self.objective_kind = objective_kind
        self.objective_poly = objective_poly
        self.constraint_polys = (
            tuple(constraint_polys) if constraint_polys is not None else None
        )

    @property
    def n(self):
        return len(self.variables)

    @property
    def m(self):
        return len(self.constraint_supports)

    def __repr__(self):
        return (
            f"SparseProblem(n={self.n}, m={self.m}, kind={self.objective_kind})"
        )


def _default_variables(n):
    return tuple(f"x{i + 1}" for i in range(n))


def problem_from_json(obj, default_objective_kind=None):
    """Build a SparseProblem from its JSON object form.

    The objective entry may be omitted when a default kind ('ed' or
    'linear') is supplied, which is how constraint-only input files are
    read by the distance and sectional commands.
    """
    if not isinstance(obj, dict):
        raise InputError("problem JSON must be an object")
    constraints_raw = obj.get("constraints")
    if not isinstance(constraints_raw, list) or not constraints_raw:
        raise InputError("problem JSON needs a nonempty 'constraints' list")

    variables = obj.get("variables")
    if variables is not None:
        if not isinstance(variables, list) or not all(
            isinstance(v, str) for v in variables
        ):
            raise InputError("'variables' must be a list of names")
        variables = tuple(variables)

    def support_dim_hint():
        for c in constraints_raw:
            if isinstance(c, dict) and c.get("kind") == "support":
                pts = c.get("points") or []
                if pts:
                    return len(pts[0])
        return None

    if variables is None:
        hint = support_dim_hint()
        if hint is None:
            raise InputError("'variables' is required with polynomial constraints")
        variables = _default_variables(hint)
    n = len(variables)

    def read_constraint(entry):
        if not isinstance(entry, dict):
            raise InputError("constraint entries must be objects")
        kind = entry.get("kind")
        if kind == "polynomial":
            text = entry.get("text")
            if not isinstance(text, str):
                raise InputError("polynomial constraint needs 'text'")
            poly = parse_poly(text, variables)
            if poly.is_zero:
                raise InputError(f"constraint {text!r} is identically zero")
            return poly.support(), poly
        if kind == "support":
            points = entry.get("points")
            if not isinstance(points, list) or not points:
                raise InputError("support constraint needs nonempty 'points'")
            return Support(n, points), None
        raise InputError(f"unknown constraint kind: {kind!r}")

    supports, polys = [], []
    for entry in constraints_raw:
        s, p = read_constraint(entry)
        supports.append(s)
        polys.append(p)

    objective_raw = obj.get("objective")
    if objective_raw is None:
        kind = default_objective_kind
        if kind is None:
            raise InputError("problem JSON needs an 'objective'")
        objective_raw = {"kind": kind}
    if not isinstance(objective_raw, dict):
        raise InputError("'objective' must be an object")
    okind = objective_raw.get("kind")
    objective_poly = None
    if okind == "ed":
        osupport = ed_objective_support(n)
        objective_kind = OBJECTIVE_ED
    elif okind == "linear":
        osupport = linear_objective_support(n)
        objective_kind = OBJECTIVE_LINEAR
    elif okind == "polynomial":
        text = objective_raw.get("text")
        if not isinstance(text, str):
            raise InputError("polynomial objective needs 'text'")
        objective_poly = parse_poly(text, variables)
        osupport = objective_poly.support()
        objective_kind = OBJECTIVE_CUSTOM
    elif okind == "support":
        points = objective_raw.get("points")
        if not isinstance(points, list):
            raise InputError("support objective needs 'points'")
        osupport = Support(n, points)
        objective_kind = OBJECTIVE_CUSTOM
    else:
        raise InputError(f"unknown objective kind: {okind!r}")

    have_polys = all(p is not None for p in polys)
    return SparseProblem(
        variables,
        osupport,
        supports,
        objective_kind=objective_kind,
        objective_poly=objective_poly,
        constraint_polys=polys if have_polys else None,
    )


def derivative_support(support, j):
    """Support of the j-th partial: shift exponents with a positive j-entry.

    The result may be empty when no point uses the variable; emptiness is
    meaningful (the partial derivative is identically zero) so an empty
    Support is returned rather than an error.
    """
    n = support.ambient_dim
    if not 0 <= j < n:
        raise IndexError(f"direction {j} out of range for dimension {n}")
    shifted = [
        tuple(a - 1 if k == j else a for k, a in enumerate(p))
        for p in support.points
        if p[j] >= 1
    ]
    return Support(n, shifted)


def partial_polytope(p, j):
    """Shift a polytope by -e_j and keep the nonnegative part.

    Returns None when the intersection is empty. The result can have
    rational vertices even for a lattice polytope.
    """
    n = p.ambient_dim
    if not 0 <= j < n:
        raise IndexError(f"direction {j} out of range for dimension {n}")
    shifted = p.translate(tuple(-1 if k == j else 0 for k in range(n)))
    nonneg = [
        (tuple(-1 if k == i else 0 for k in range(n)), 0) for i in range(n)
    ]
    return intersect_halfspaces(shifted, nonneg)


def cayley(polys, style=CAYLEY_ZERO_BASED):
    """Cayley polytope of r polytopes in a common space.

    zero-based: the first factor sits at tag 0 and factor i at basis tag
    e_i, giving ambient dimension k + r - 1. full-basis: factor i sits at
    e_{i+1} in r extra coordinates, ambient k + r.
    """
    polys = list(polys)
    if not polys:
        raise InputError("Cayley construction needs at least one polytope")
    k = polys[0].ambient_dim
    for p in polys:
        if p.ambient_dim != k:
            raise DimensionMismatchError("Cayley factors in different dimensions")
    r = len(polys)
    if style == CAYLEY_ZERO_BASED:
        extra = r - 1
        tags = [tuple(int(i == t + 1) for t in range(extra)) for i in range(r)]
    elif style == CAYLEY_FULL_BASIS:
        extra = r
        tags = [tuple(int(i == t) for t in range(extra)) for i in range(r)]
    else:
        raise ValueError(f"unknown Cayley style: {style!r}")
    points = []
    for p, tag in zip(polys, tags):
        for v in p.vertices:
            points.append(tuple(v) + tag)
    return convex_hull(points, k + extra)


def cayley_supports(supports, style=CAYLEY_ZERO_BASED):
    """Support-level Cayley: tag each support copy like cayley() does."""
    supports = list(supports)
    if not supports:
        raise InputError("Cayley construction needs at least one support")
    k = supports[0].ambient_dim
    for s in supports:
        if s.ambient_dim != k:
            raise DimensionMismatchError("Cayley factors in different dimensions")
    r = len(supports)
    if style == CAYLEY_ZERO_BASED:
        extra = r - 1
        tags = [tuple(int(i == t + 1) for t in range(extra)) for i in range(r)]
    elif style == CAYLEY_FULL_BASIS:
        extra = r
        tags = [tuple(int(i == t) for t in range(extra)) for i in range(r)]
    else:
        raise ValueError(f"unknown Cayley style: {style!r}")
    points = []
    for s, tag in zip(supports, tags):
        for p in s.points:
            points.append(tuple(p) + tag)
    return Support(k + extra, points)


class LagrangeData:
    """Polytope data of the critical equations of a sparse problem.

    Everything lives in dimension n + m: first the original variables,
    then one multiplier coordinate per constraint. The Cayley polytope is
    the Newton polytope of obj - sum_i lambda_i f_i; its coordinate
    sections in the variable directions and the supports of the partial
    derivatives feed the two degree formulas.
    """

    __slots__ = (
        "problem",
        "n",
        "m",
        "ambient",
        "constraint_polytopes",
        "cayley_support",
        "cayley_polytope",
        "cayley_partials",
        "ell_supports",
        "ell_polytopes",
    )

    def __init__(self, problem):
        self.problem = problem
        n, m = problem.n, problem.m
        self.n = n
        self.m = m
        self.ambient = n + m

        def embed(points):
            return [tuple(p) + (0,) * m for p in points]

        self.constraint_polytopes = tuple(
            convex_hull(embed(s.points), self.ambient)
            for s in problem.constraint_supports
        )
        self.cayley_support = cayley_supports(
            [problem.objective_support] + list(problem.constraint_supports)
        )
        self.cayley_polytope = self.cayley_support.hull()
        self.cayley_partials = tuple(
            partial_polytope(self.cayley_polytope, j) for j in range(n)
        )
        self.ell_supports = tuple(
            derivative_support(self.cayley_support, j) for j in range(n)
        )
        self.ell_polytopes = tuple(
            s.hull() if s.points else None for s in self.ell_supports
        )

    def __repr__(self):
        return f"LagrangeData(n={self.n}, m={self.m})"


def lagrange_data(problem):
    """Convenience constructor mirroring the class."""
    return LagrangeData(problem)
