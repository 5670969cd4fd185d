"""Rational polyhedral cones via double description.

Cones carry both generator data (lineality basis plus extreme rays) and a
halfspace description, kept in sync by exact integer double description
with the combinatorial adjacency test. Extreme rays are primitive and
sorted, and the lineality basis is in Hermite normal form, so structural
equality of Cone objects is equality of cones.
"""

from . import linalg
from .errors import DimensionMismatchError, NotPointedError


class _NonSimplicial:
    __slots__ = ()

    def __repr__(self):
        return "NON_SIMPLICIAL"


NON_SIMPLICIAL = _NonSimplicial()


def dd_extreme_rays(ineq_rows, eq_rows, dim):
    """Generators of {x : <a, x> >= 0 for ineqs, <a, x> = 0 for eqs}.

    Returns (lineality_basis, extreme_rays) as primitive integer tuples.
    The adjacency test compares tight sets against rays only, which is the
    correct criterion in the pointed quotient by the lineality space.
    """
    rows = [tuple(int(x) for x in a) for a in ineq_rows]
    for a in eq_rows:
        a = tuple(int(x) for x in a)
        rows.append(a)
        rows.append(tuple(-x for x in a))

    lineality = [tuple(int(i == j) for i in range(dim)) for j in range(dim)]
    rays = []  # (vector, tight_mask)
    bit = 0

    for a in rows:
        if not any(a):
            continue
        pivot_idx = None
        for i, l in enumerate(lineality):
            if linalg.dot(a, l) != 0:
                pivot_idx = i
                break
        if pivot_idx is not None:
            pivot = lineality[pivot_idx]
            alpha = linalg.dot(a, pivot)
            if alpha < 0:
                pivot = tuple(-x for x in pivot)
                alpha = -alpha
            new_lin = []
            for i, l in enumerate(lineality):
                if i == pivot_idx:
                    continue
                beta = linalg.dot(a, l)
                if beta == 0:
                    new_lin.append(l)
                else:
                    vec = tuple(alpha * x - beta * y for x, y in zip(l, pivot))
                    new_lin.append(linalg.primitive(vec))
            new_rays = []
            for r, mask in rays:
                beta = linalg.dot(a, r)
                if beta == 0:
                    new_rays.append((r, mask | (1 << bit)))
                else:
                    vec = tuple(alpha * x - beta * y for x, y in zip(r, pivot))
                    new_rays.append((linalg.primitive(vec), mask | (1 << bit)))
            new_rays.append((pivot, (1 << bit) - 1))
            lineality = new_lin
            rays = new_rays
            bit += 1
            continue

        plus, zero, minus = [], [], []
        for r, mask in rays:
            s = linalg.dot(a, r)
            if s > 0:
                plus.append((r, mask, s))
            elif s < 0:
                minus.append((r, mask, s))
            else:
                zero.append((r, mask | (1 << bit)))
        if not minus:
            rays = [(r, m) for r, m, _ in plus] + zero
            bit += 1
            continue
        all_masks = [m for _, m, _ in plus] + [m for _, m in zero] + [m for _, m, _ in minus]
        combos = []
        for rp, mp, sp in plus:
            for rm, mm, sm in minus:
                t = mp & mm
                adjacent = True
                for other in all_masks:
                    if other != mp and other != mm and other & t == t:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vec = tuple(sp * x - sm * y for x, y in zip(rm, rp))
                combos.append((linalg.primitive(vec), t | (1 << bit)))
        seen = {}
        for r, m in [(r, m) for r, m, _ in plus] + zero + combos:
            seen.setdefault(r, m)
        rays = list(seen.items())
        bit += 1

    lin_basis = [row for row in linalg.hnf([list(l) for l in lineality]) if any(row)]
    return (
        tuple(tuple(row) for row in lin_basis),
        tuple(sorted(r for r, _ in rays)),
    )


class Cone:
    """Polyhedral cone with canonical generator and halfspace data."""

    __slots__ = ("ambient_dim", "rays", "lineality", "ineqs", "eqs", "_dim")

    def __init__(self, ambient_dim, rays, lineality, ineqs, eqs):
        self.ambient_dim = ambient_dim
        self.rays = rays
        self.lineality = lineality
        self.ineqs = ineqs
        self.eqs = eqs
        self._dim = linalg.rank_int([list(r) for r in rays + lineality]) if (rays or lineality) else 0

    @staticmethod
    def from_halfspaces(ineq_rows, eq_rows, ambient_dim):
        lineality, rays = dd_extreme_rays(ineq_rows, eq_rows, ambient_dim)
        # Recompute a canonical irredundant halfspace description by duality:
        # the facets of the cone are the extreme rays of its dual.
        dual_lin, dual_rays = dd_extreme_rays(
            list(rays), list(lineality), ambient_dim
        )
        return Cone(ambient_dim, rays, lineality, dual_rays, dual_lin)

    @staticmethod
    def from_rays(ray_rows, ambient_dim, lineality_rows=()):
        rows = [tuple(int(x) for x in r) for r in ray_rows]
        lins = [tuple(int(x) for x in l) for l in lineality_rows]
        for r in rows + lins:
            if len(r) != ambient_dim:
                raise DimensionMismatchError("generator of wrong dimension")
        dual_lin, dual_rays = dd_extreme_rays(rows, lins, ambient_dim)
        lineality, rays = dd_extreme_rays(list(dual_rays), list(dual_lin), ambient_dim)
        return Cone(ambient_dim, rays, lineality, dual_rays, dual_lin)

    def __eq__(self, other):
        return (
            isinstance(other, Cone)
            and self.ambient_dim == other.ambient_dim
            and self.rays == other.rays
            and self.lineality == other.lineality
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.rays, self.lineality))

    def __repr__(self):
        parts = [f"rays={list(self.rays)}"]
        if self.lineality:
            parts.append(f"lineality={list(self.lineality)}")
        return f"Cone({', '.join(parts)})"

    @property
    def dim(self):
        return self._dim

    @property
    def is_pointed(self):
        return not self.lineality

    def contains(self, vec):
        vec = tuple(vec)
        if len(vec) != self.ambient_dim:
            raise DimensionMismatchError("vector of wrong dimension")
        return all(linalg.dot(a, vec) >= 0 for a in self.ineqs) and all(
            linalg.dot(a, vec) == 0 for a in self.eqs
        )

    def contains_in_relint(self, vec):
        vec = tuple(vec)
        return all(linalg.dot(a, vec) > 0 for a in self.ineqs) and all(
            linalg.dot(a, vec) == 0 for a in self.eqs
        )

    def relint_point(self):
        if not self.rays:
            return (0,) * self.ambient_dim
        return tuple(sum(r[j] for r in self.rays) for j in range(self.ambient_dim))

    def intersection(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("cones in different ambient spaces")
        return Cone.from_halfspaces(
            list(self.ineqs) + list(other.ineqs),
            list(self.eqs) + list(other.eqs),
            self.ambient_dim,
        )

    def faces(self):
        """All faces of the cone, itself and the lineality face included."""
        masks = []
        for a in self.ineqs:
            mask = 0
            for i, r in enumerate(self.rays):
                if linalg.dot(a, r) == 0:
                    mask |= 1 << i
            masks.append(mask)
        full = (1 << len(self.rays)) - 1
        seen = {full}
        queue = [full]
        while queue:
            cur = queue.pop()
            for m in masks:
                nxt = cur & m
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        out = []
        for mask in sorted(seen):
            rs = [self.rays[i] for i in range(len(self.rays)) if mask & (1 << i)]
            out.append(Cone.from_rays(rs, self.ambient_dim, self.lineality))
        return out


def cone_multiplicity(cone):
    """Lattice index of the ray span inside its saturation.

    Simplicial pointed cones give an integer; non-simplicial cones give
    the NON_SIMPLICIAL marker. Cones with lineality are rejected.
    """
    if not cone.is_pointed:
        raise NotPointedError("multiplicity needs a pointed cone")
    if not cone.rays:
        return 1
    if len(cone.rays) != cone.dim:
        return NON_SIMPLICIAL
    return linalg.gcd_of_maximal_minors([list(r) for r in cone.rays])
