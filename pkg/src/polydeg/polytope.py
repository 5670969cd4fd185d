"""Exact rational polytopes: hulls, volumes, faces, Minkowski sums.

The convex hull is an incremental beneath-beyond construction run over
integer coordinates (rational input is scaled by the common denominator).
Lower-dimensional input is handled by projecting the affine hull onto an
injective coordinate subset, so every polytope carries exact facet and
affine-hull data in its original ambient space.
"""

from fractions import Fraction
from math import gcd

from . import linalg
from .errors import DimensionMismatchError, EmptyPolytopeError

Rational = Fraction


def to_rational(value):
    """Coerce ints, Fractions, and 'p/q' strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def parse_point(seq):
    return tuple(to_rational(x) for x in seq)


class Support:
    """A finite set of nonnegative integer exponent vectors."""

    __slots__ = ("ambient_dim", "points")

    def __init__(self, ambient_dim, points):
        pts = set()
        for p in points:
            p = tuple(int(x) for x in p)
            if len(p) != ambient_dim:
                raise DimensionMismatchError(
                    f"support point {p} has length {len(p)}, expected {ambient_dim}"
                )
            if any(x < 0 for x in p):
                raise ValueError(f"support point {p} has a negative coordinate")
            pts.add(p)
        self.ambient_dim = ambient_dim
        self.points = tuple(sorted(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point):
        return tuple(point) in set(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, Support)
            and self.ambient_dim == other.ambient_dim
            and self.points == other.points
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.points))

    def __repr__(self):
        return f"Support(dim={self.ambient_dim}, points={list(self.points)})"

    def hull(self):
        if not self.points:
            raise EmptyPolytopeError("empty support has no hull")
        return convex_hull(self.points, self.ambient_dim)


class Polytope:
    """Bounded rational polytope stored by its exact vertex set.

    ``facets`` are pairs (a, b) of an integer normal and offset with
    <a, x> <= b on the polytope, tight on a face of affine dimension
    affine_dim - 1. ``equations`` cut out the affine hull.
    """

    __slots__ = ("ambient_dim", "vertices", "affine_dim", "facets", "equations", "_volume")

    def __init__(self, ambient_dim, vertices, affine_dim, facets, equations, volume_value):
        self.ambient_dim = ambient_dim
        self.vertices = vertices
        self.affine_dim = affine_dim
        self.facets = facets
        self.equations = equations
        self._volume = volume_value

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.ambient_dim == other.ambient_dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        pts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope[{pts}]"

    def contains(self, point):
        p = parse_point(point)
        if len(p) != self.ambient_dim:
            raise DimensionMismatchError("point dimension mismatch")
        for a, b in self.equations:
            if linalg.dot(a, p) != b:
                return False
        for a, b in self.facets:
            if linalg.dot(a, p) > b:
                return False
        return True

    def translate(self, vec):
        vec = parse_point(vec)
        verts = tuple(sorted(tuple(x + d for x, d in zip(v, vec)) for v in self.vertices))
        facets = tuple((a, b + linalg.dot(a, vec)) for a, b in self.facets)
        eqs = tuple((a, b + linalg.dot(a, vec)) for a, b in self.equations)
        return Polytope(self.ambient_dim, verts, self.affine_dim, facets, eqs, self._volume)

    def scale(self, factor):
        factor = to_rational(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        verts = tuple(sorted(tuple(factor * x for x in v) for v in self.vertices))
        facets = tuple((a, factor * b) for a, b in self.facets)
        eqs = tuple((a, factor * b) for a, b in self.equations)
        vol = self._volume * factor**self.ambient_dim
        return Polytope(self.ambient_dim, verts, self.affine_dim, facets, eqs, vol)

    def is_lattice(self):
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def lattice_points(self):
        """All integer points of the polytope (bounding-box enumeration)."""
        lo = [min(v[j] for v in self.vertices) for j in range(self.ambient_dim)]
        hi = [max(v[j] for v in self.vertices) for j in range(self.ambient_dim)]
        ranges = []
        for a, b in zip(lo, hi):
            start = -((-a.numerator) // a.denominator)
            stop = b.numerator // b.denominator
            ranges.append(range(start, stop + 1))
        out = []

        def rec(prefix, k):
            if k == self.ambient_dim:
                if self.contains(prefix):
                    out.append(tuple(prefix))
                return
            for x in ranges[k]:
                rec(prefix + [x], k + 1)

        rec([], 0)
        return out


def _scale_to_int(points):
    """Common-denominator scaling; returns (int_points, scale)."""
    scale = 1
    for p in points:
        for x in p:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    ints = [tuple(int(x * scale) for x in p) for p in points]
    return ints, scale


def _independent_columns(diffs, rank, ncols):
    """Greedy column subset on which the difference matrix keeps full rank."""
    cols = []
    for c in range(ncols):
        trial = cols + [c]
        sub = [[row[j] for j in trial] for row in diffs]
        if linalg.rank_int(sub) == len(trial):
            cols.append(c)
            if len(cols) == rank:
                break
    return cols


def _quickhull_core(pts):
    """Quickhull of full-dimensional integer points.

    Each boundary piece keeps the set of not-yet-dominated points beyond
    it; insertion always takes the furthest such point, discovers the
    visible region by walking ridge adjacencies, and redistributes only
    the orphaned points over the replacement pieces.

    Returns (pieces, volume_numerator): pieces maps an id to a simplicial
    boundary piece (outward_normal, offset, point_ids, ridges) and
    volume_numerator is d! times the lattice volume.
    """
    d = len(pts[0])
    n_pts = len(pts)

    # Initial affinely independent d+1 points.
    simplex = [0]
    diffs = []
    for i in range(1, n_pts):
        trial = diffs + [linalg.vsub(pts[i], pts[0])]
        if linalg.rank_int(trial) == len(trial):
            diffs = trial
            simplex.append(i)
            if len(simplex) == d + 1:
                break
    assert len(simplex) == d + 1, "input not full-dimensional"

    ctr_sum = tuple(sum(pts[i][j] for i in simplex) for j in range(d))
    ctr_den = d + 1

    pieces = {}
    outside = {}
    ridge_map = {}
    queue = []
    next_id = 0

    def orient(a, b):
        # Flip so the reference interior point satisfies <a, x> < b strictly.
        lhs = linalg.dot(a, ctr_sum)
        rhs = ctr_den * b
        assert lhs != rhs, "degenerate orientation"
        if lhs > rhs:
            return tuple(-x for x in a), -b
        return a, b

    def add_piece(ids):
        nonlocal next_id
        base = pts[ids[0]]
        if d == 1:
            a = (1,)
        else:
            edges = [linalg.vsub(pts[i], base) for i in ids[1:]]
            a = linalg.null_normal(edges)
        assert any(a), "degenerate boundary piece"
        b = linalg.dot(a, base)
        a, b = orient(a, b)
        pid = next_id
        next_id += 1
        ridges = tuple(
            frozenset(ids[:skip] + ids[skip + 1 :]) for skip in range(d)
        )
        pieces[pid] = (a, b, ids, ridges)
        outside[pid] = []
        queue.append(pid)
        for ridge in ridges:
            ridge_map.setdefault(ridge, set()).add(pid)
        return pid

    def drop_piece(pid):
        ridges = pieces.pop(pid)[3]
        for ridge in ridges:
            members = ridge_map[ridge]
            members.discard(pid)
            if not members:
                del ridge_map[ridge]
        return outside.pop(pid)

    def assign(indices, pids):
        planes = [(pid,) + pieces[pid][:2] for pid in pids]
        for idx in indices:
            p = pts[idx]
            for pid, a, b in planes:
                excess = linalg.dot(a, p) - b
                if excess > 0:
                    outside[pid].append((excess, -idx))
                    break

    for skip in range(d + 1):
        add_piece(tuple(simplex[i] for i in range(d + 1) if i != skip))
    in_simplex = set(simplex)
    assign(
        [i for i in range(n_pts) if i not in in_simplex],
        list(pieces),
    )

    while queue:
        start = queue.pop()
        if start not in pieces or not outside[start]:
            continue
        _, neg_idx = max(outside[start])
        idx = -neg_idx
        p = pts[idx]

        # Walk the ridge graph for the strictly visible region, stepping
        # across (but keeping) pieces whose hyperplane contains p.
        visible = []
        seen = {start}
        stack = [start]
        while stack:
            pid = stack.pop()
            a, b, _ids, ridges = pieces[pid]
            value = linalg.dot(a, p)
            if value < b:
                continue
            if value > b:
                visible.append(pid)
            for ridge in ridges:
                for nb in ridge_map[ridge]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)

        ridge_count = {}
        for pid in visible:
            for ridge in pieces[pid][3]:
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        orphans = []
        for pid in visible:
            orphans.extend(drop_piece(pid))
        created = [
            add_piece((idx,) + tuple(sorted(ridge)))
            for ridge, count in ridge_count.items()
            if count == 1
        ]
        assign([-ni for _, ni in orphans if -ni != idx], created)

    v0 = pts[0]
    vol_num = 0
    for _a, _b, ids, _ridges in pieces.values():
        mat = [linalg.vsub(pts[i], v0) for i in ids]
        vol_num += abs(linalg.bareiss_det(mat))
    return pieces, vol_num


def _hull_full_dim(pts):
    """Hull of full-dimensional integer points, with canonical facet data.

    Returns (vertex_ids, facets, volume_numerator) where facets are
    (primitive_normal, offset, tight_vertex_ids) and volume_numerator is
    d! * scale^d * volume.
    """
    d = len(pts[0])
    pieces, vol_num = _quickhull_core(pts)

    # Canonical facet hyperplanes and final vertex filtering.
    by_plane = {}
    for a, b, ids, _ridges in pieces.values():
        g = linalg.vgcd(a)
        key = (tuple(x // g for x in a), b // g)
        by_plane.setdefault(key, []).append(ids)

    candidate_ids = sorted({i for group in by_plane.values() for ids in group for i in ids})
    vertex_ids = []
    for i in candidate_ids:
        tight = [a for (a, b) in by_plane if linalg.dot(a, pts[i]) == b]
        if len(tight) >= d and linalg.rank_int(tight) == d:
            vertex_ids.append(i)
    vertex_set = set(vertex_ids)

    facets = []
    for (a, b) in sorted(by_plane):
        tight_ids = tuple(i for i in vertex_ids if linalg.dot(a, pts[i]) == b)
        facets.append((a, b, tight_ids))

    assert vertex_set, "hull lost all vertices"
    return vertex_ids, facets, vol_num


def convex_hull(points, ambient_dim=None):
    """Exact convex hull of a finite rational point set.

    Accepts any iterable of coordinate sequences (ints, Fractions, or
    'p/q' strings). Raises EmptyPolytopeError on empty input.
    """
    pts = sorted({parse_point(p) for p in points})
    if not pts:
        raise EmptyPolytopeError("convex hull of an empty point set")
    dim = len(pts[0])
    if ambient_dim is None:
        ambient_dim = dim
    if dim != ambient_dim or any(len(p) != dim for p in pts):
        raise DimensionMismatchError("points of mixed or unexpected dimension")

    if len(pts) == 1:
        v = pts[0]
        eqs = tuple(
            (tuple(int(i == j) for i in range(dim)), v[j]) for j in range(dim)
        )
        vol = Fraction(1) if dim == 0 else Fraction(0)
        return Polytope(dim, (v,), 0, (), eqs, vol)

    ints, scale = _scale_to_int(pts)
    diffs = [linalg.vsub(p, ints[0]) for p in ints[1:]]
    r = linalg.rank_int(diffs)

    if r == dim:
        vertex_ids, facets_raw, vol_num = _hull_full_dim(ints)
        vertices = tuple(sorted(pts[i] for i in vertex_ids))
        facets = tuple(
            (a, Fraction(b, scale)) for a, b, _tight in facets_raw
        )
        fact = 1
        for k in range(2, dim + 1):
            fact *= k
        vol = Fraction(vol_num, fact * scale**dim)
        return Polytope(dim, vertices, dim, facets, (), vol)

    cols = _independent_columns(diffs, r, dim)
    proj = [tuple(p[c] for c in cols) for p in ints]
    assert len(set(proj)) == len(proj), "projection not injective on input"
    vertex_ids, facets_raw, _vol = _hull_full_dim(proj)
    vertices = tuple(sorted(pts[i] for i in vertex_ids))

    facets = []
    for a, b, _tight in facets_raw:
        amb = [0] * dim
        for coef, c in zip(a, cols):
            amb[c] = coef
        facets.append((tuple(amb), Fraction(b, scale)))

    eq_normals = linalg.integer_kernel_basis([list(row) for row in diffs])
    equations = tuple(
        (tuple(a), Fraction(linalg.dot(a, ints[0]), scale)) for a in eq_normals
    )
    return Polytope(dim, vertices, r, tuple(facets), equations, Fraction(0))


def volume(p):
    """Exact Euclidean volume in the ambient dimension (0 if degenerate)."""
    return p._volume


def face_exposed(p, w):
    """The face of minimizers of <., w>; w = 0 returns the polytope itself."""
    w = parse_point(w)
    if len(w) != p.ambient_dim:
        raise DimensionMismatchError("direction dimension mismatch")
    values = [linalg.dot(v, w) for v in p.vertices]
    lo = min(values)
    att = [v for v, val in zip(p.vertices, values) if val == lo]
    return convex_hull(att, p.ambient_dim)


def minkowski_sum(p, q):
    """Hull of pairwise vertex sums."""
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatchError(
            f"cannot add polytopes of dimensions {p.ambient_dim} and {q.ambient_dim}"
        )
    sums = {linalg.vadd(v, w) for v in p.vertices for w in q.vertices}
    return convex_hull(sums, p.ambient_dim)


def minkowski_sum_list(polys):
    if not polys:
        raise EmptyPolytopeError("empty Minkowski sum")
    acc = polys[0]
    for q in polys[1:]:
        acc = minkowski_sum(acc, q)
    return acc


def intersect_halfspaces(p, inequalities, equations=()):
    """Intersect a polytope with extra halfspaces <a, x> <= b.

    Inequalities and equations are (a, b) pairs with rational entries.
    Returns a Polytope, or None when the intersection is empty. Works via
    the double description of the homogenization cone, so the output
    vertex set is exact even when new rational vertices appear.
    """
    from .cone import dd_extreme_rays

    dim = p.ambient_dim
    ineq_rows = []

    def add_ineq(a, b):
        # <a, x> <= b  becomes  <(-a, b), (x, t)> >= 0 on the cone.
        a = parse_point(a)
        b = to_rational(b)
        den = b.denominator
        for x in a:
            den = den * x.denominator // gcd(den, x.denominator)
        row = tuple(int(-x * den) for x in a) + (int(b * den),)
        ineq_rows.append(row)

    eq_rows = []
    for a, b in p.facets:
        add_ineq(a, b)
    for a, b in inequalities:
        add_ineq(a, b)
    for a, b in list(p.equations) + list(equations):
        a = parse_point(a)
        b = to_rational(b)
        den = b.denominator
        for x in a:
            den = den * x.denominator // gcd(den, x.denominator)
        eq_rows.append(tuple(int(x * den) for x in a) + (int(-b * den),))
    # Homogenization: t >= 0.
    ineq_rows.append(tuple([0] * dim + [1]))
    # Bound the vertex coordinates so stray rays cannot appear: the
    # intersection lies inside the (bounded) input polytope already, and its
    # facet rows are included above, so the only possible ray at t = 0 would
    # be a recession direction of the input. Bounded input has none.
    lin, rays = dd_extreme_rays(ineq_rows, eq_rows, dim + 1)
    assert not lin, "homogenization cone of a bounded polytope is pointed"
    verts = []
    for ray in rays:
        t = ray[dim]
        if t == 0:
            continue
        verts.append(tuple(Fraction(x, t) for x in ray[:dim]))
    if not verts:
        return None
    return convex_hull(verts, dim)
