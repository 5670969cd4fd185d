"""Polyhedral fans, normal fans, and common refinements."""

from fractions import Fraction
from math import gcd

from .cone import Cone
from .errors import DimensionMismatchError


class Fan:
    """A fan stored by its maximal cones.

    The normal fan of a positive-dimensional polytope is complete; for a
    polytope of lower dimension than the ambient space the cones share a
    lineality space and the fan reports itself as not pointed.
    """

    __slots__ = ("ambient_dim", "maximal_cones")

    def __init__(self, ambient_dim, cones):
        seen = {}
        for c in cones:
            if c.ambient_dim != ambient_dim:
                raise DimensionMismatchError("cone in wrong ambient space")
            seen[(c.rays, c.lineality)] = c
        self.ambient_dim = ambient_dim
        self.maximal_cones = tuple(seen[k] for k in sorted(seen))

    def __eq__(self, other):
        return (
            isinstance(other, Fan)
            and self.ambient_dim == other.ambient_dim
            and self.maximal_cones == other.maximal_cones
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.maximal_cones))

    def __repr__(self):
        return f"Fan({len(self.maximal_cones)} maximal cones in R^{self.ambient_dim})"

    @property
    def pointed(self):
        return all(c.is_pointed for c in self.maximal_cones)

    def cone_containing(self, vec):
        for c in self.maximal_cones:
            if c.contains(vec):
                return c
        return None

    def all_cones(self):
        """Every face of every maximal cone, deduplicated."""
        seen = {}
        for c in self.maximal_cones:
            for f in c.faces():
                seen[(f.rays, f.lineality)] = f
        return [seen[k] for k in sorted(seen)]

    def is_complete(self):
        """Wall-pairing check: every facet of a maximal cone is shared.

        Together with all maximal cones being full-dimensional this makes
        the support a manifold without boundary, hence all of R^n.
        """
        if not self.maximal_cones:
            return False
        if any(c.dim != self.ambient_dim for c in self.maximal_cones):
            return False
        if len(self.maximal_cones) == 1:
            # One full-dimensional cone is complete only with no facets at
            # all, i.e. the whole space.
            return not self.maximal_cones[0].ineqs
        walls = {}
        for c in self.maximal_cones:
            for a in c.ineqs:
                tight = tuple(
                    r for r in c.rays if sum(x * y for x, y in zip(a, r)) == 0
                )
                key = (tight, c.lineality)
                walls[key] = walls.get(key, 0) + 1
        return all(v == 2 for v in walls.values())


def _int_rows(vectors):
    rows = []
    for v in vectors:
        den = 1
        for x in v:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
        rows.append(tuple(int(Fraction(x) * den) for x in v))
    return rows


def normal_fan(p):
    """Fan of minimizer cones: vertex v maps to {w : v minimizes <., w>}."""
    cones = []
    for v in p.vertices:
        diffs = [tuple(u[j] - v[j] for j in range(p.ambient_dim)) for u in p.vertices if u != v]
        cones.append(Cone.from_halfspaces(_int_rows(diffs), [], p.ambient_dim))
    return Fan(p.ambient_dim, cones)


def common_refinement(fans):
    """Coarsest fan refining each input fan (full-dimensional intersections)."""
    if not fans:
        raise ValueError("need at least one fan")
    ambient = fans[0].ambient_dim
    for f in fans:
        if f.ambient_dim != ambient:
            raise DimensionMismatchError("fans in different ambient spaces")
    acc = list(fans[0].maximal_cones)
    for f in fans[1:]:
        nxt = {}
        for a in acc:
            for b in f.maximal_cones:
                c = a.intersection(b)
                if c.dim == ambient:
                    nxt[(c.rays, c.lineality)] = c
        acc = list(nxt.values())
    return Fan(ambient, acc)
