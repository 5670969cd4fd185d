"""Mixed volumes of rational polytopes, exactly.

Three independent routes:

* inclusion-exclusion over alternating-sign volumes of partial Minkowski
  sums, with each sum built incrementally from a cached smaller one;
* mixed cells of a random integer lifting, enumerated factor by factor
  with small exact linear programs instead of a lifted hull, retried with
  wider liftings whenever a tie in the lifting surfaces; this route also
  yields a checkable cell certificate;
* a slow interpolation oracle that fits the volume polynomial on a tensor
  grid and reads off the multilinear coefficient (tests only, small n).

The normalization makes mixed_volume(P, ..., P) = n! * volume(P), so unit
segments along the axes have mixed volume 1 and the value of lattice
polytopes is a nonnegative integer.
"""

import random
from fractions import Fraction
from itertools import product
from math import gcd

from . import linalg
from .errors import ArityMismatchError, DimensionMismatchError, InternalCheckError
from .polytope import Polytope, _quickhull_core, minkowski_sum, volume

ALGO_IE = "InclusionExclusion"
ALGO_CELLS = "MixedCells"
ALGO_BOTH = "Both"

_ALGO_ALIASES = {
    "ie": ALGO_IE,
    "inclusionexclusion": ALGO_IE,
    "cells": ALGO_CELLS,
    "mixedcells": ALGO_CELLS,
    "both": ALGO_BOTH,
}

WARN_EMPTY_FACTOR = "EmptyFactor"

_MAX_LIFT_RETRIES = 32


class MixedVolumeResult:
    """Value plus provenance: which engine ran and, for the mixed-cells
    route, a replayable certificate of the fine mixed subdivision."""

    __slots__ = ("value", "algorithm", "cell_certificate", "warnings")

    def __init__(self, value, algorithm, cell_certificate=None, warnings=()):
        self.value = value
        self.algorithm = algorithm
        self.cell_certificate = cell_certificate
        self.warnings = tuple(warnings)

    def __repr__(self):
        return f"MixedVolumeResult(value={self.value}, algorithm={self.algorithm})"


def _normalize_algorithm(algorithm):
    key = str(algorithm).replace("-", "").replace("_", "").lower()
    if key not in _ALGO_ALIASES:
        raise ValueError(f"unknown mixed volume algorithm: {algorithm!r}")
    return _ALGO_ALIASES[key]


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def mixed_volume_ie(polys):
    """Alternating sum of volumes of sub-sums over nonempty index sets.

    All factors are put on one global integer scale so every partial
    Minkowski sum is a pure lattice computation; lower-dimensional sums
    short-circuit to volume zero through a rank check and pass their raw
    sum points on as generators for the larger index sets.
    """
    n = len(polys)
    scale = 1
    for p in polys:
        for v in p.vertices:
            for x in v:
                scale = scale * x.denominator // gcd(scale, x.denominator)
    ints = [
        sorted({tuple(int(x * scale) for x in v) for v in p.vertices})
        for p in polys
    ]
    gens = {}
    total = 0
    origin = [(0,) * n]
    for mask in range(1, 1 << n):
        low = mask & -mask
        base = gens[mask ^ low] if mask ^ low else origin
        add = ints[low.bit_length() - 1]
        cand = sorted({linalg.vadd(p, q) for p in base for q in add})
        first = cand[0]
        diffs = [linalg.vsub(p, first) for p in cand[1:]]
        if linalg.rank_int(diffs) < n:
            gens[mask] = cand
            continue
        pieces, vol_num = _quickhull_core(cand)
        used = sorted({i for _a, _b, ids, _r in pieces.values() for i in ids})
        gens[mask] = [cand[i] for i in used]
        sign = 1 if (n - bin(mask).count("1")) % 2 == 0 else -1
        total += sign * vol_num
    return Fraction(total, _factorial(n) * scale**n)


def _scale_to_lattice(p):
    """(integer vertex tuples, scale) with vertices = tuples / scale."""
    scale = 1
    for v in p.vertices:
        for x in v:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    pts = [tuple(int(x * scale) for x in v) for v in p.vertices]
    return pts, scale


class _DegenerateLifting(Exception):
    """A completed cell selection exposed a tie in the lifting."""


def _lp_margin_sign(rows, dim, cap):
    """Sign of max{t : R.b + t <= h for (R, h) in rows, t <= cap}, b free.

    All data is integer and cap > 0, so the maximum exists and the primal
    is always feasible (push t down far enough). The sign is read off the
    dual min{y.h : y >= 0, y.R = 0, sum(y) = 1}, solved with a two-phase
    simplex under Bland's rule. Every tableau row carries its own positive
    integer scale, which keeps the arithmetic fraction-free without
    touching the signs used by the ratio test and the optimality check.
    """
    q = len(rows)
    m = dim + 1
    ncols = q + 1 + m
    bcol = ncols

    tab = []
    for i in range(dim):
        row = [r[0][i] for r in rows] + [0] * (m + 2)
        row[q + 1 + i] = 1
        tab.append(row)
    last = [1] * (q + 1) + [0] * (m + 1)
    last[q + 1 + dim] = 1
    last[bcol] = 1
    tab.append(last)

    basis = [q + 1 + i for i in range(m)]
    # Phase-one and phase-two objective rows ride along through the same
    # pivots; artificial columns never price in, so they stay zeroed.
    z1 = [-sum(tab[i][j] for i in range(m)) for j in range(q + 1)]
    z1 += [0] * m + [-1]
    z2 = [r[1] for r in rows] + [cap] + [0] * m + [0]
    all_rows = tab + [z1, z2]

    def pivot(pr, pc):
        prow = tab[pr]
        piv = prow[pc]
        for row in all_rows:
            if row is prow:
                continue
            f = row[pc]
            if f:
                row[:] = [x * piv - f * p for x, p in zip(row, prow)]
        for row in all_rows:
            g = 0
            for x in row:
                g = gcd(g, x)
            if g > 1:
                row[:] = [x // g for x in row]
        basis[pr] = pc

    def optimize(z):
        while True:
            pc = -1
            for j in range(q + 1):
                if z[j] < 0:
                    pc = j
                    break
            if pc < 0:
                return
            pr = -1
            for i in range(m):
                t = tab[i][pc]
                if t > 0:
                    if pr < 0:
                        pr = i
                        continue
                    lhs = tab[i][bcol] * tab[pr][pc]
                    rhs = tab[pr][bcol] * t
                    if lhs < rhs or (lhs == rhs and basis[i] < basis[pr]):
                        pr = i
            if pr < 0:
                raise InternalCheckError("margin bound lost its cap row")
            pivot(pr, pc)

    optimize(z1)
    if z1[bcol] != 0:
        raise InternalCheckError("margin dual must always be feasible")
    # Pivot out any artificial still basic at zero, so later pivots cannot
    # push it positive again. Rows with no real entries are redundant and
    # stay inert: no ratio test can ever select them.
    for i in range(m):
        if basis[i] <= q:
            continue
        row = tab[i]
        for j in range(q + 1):
            if row[j]:
                if row[j] < 0:
                    row[:] = [-x for x in row]
                pivot(i, j)
                break
    optimize(z2)
    v = z2[bcol]
    if v < 0:
        return 1
    return -1 if v > 0 else 0


def _flat_add(flat, normal, rhs):
    """Intersect a parametrized affine flat with <alpha, normal> = rhs.

    The flat is (num, den, basis): alpha = num/den + span(basis) over the
    rationals. Returns the reduced flat, the same object when the equation
    is dependent but consistent, or None when it is inconsistent.
    """
    num, den, basis = flat
    proj = [linalg.dot(normal, col) for col in basis]
    res = rhs * den - linalg.dot(normal, num)
    live = [i for i, x in enumerate(proj) if x]
    if not live:
        return flat if res == 0 else None
    k = min(live, key=lambda i: abs(proj[i]))
    s = proj[k]
    bk = basis[k]
    new_num = tuple(x * s + y * res for x, y in zip(num, bk))
    new_den = den * s
    if new_den < 0:
        new_num = tuple(-x for x in new_num)
        new_den = -new_den
    g = new_den
    for x in new_num:
        g = gcd(g, x)
    if g > 1:
        new_num = tuple(x // g for x in new_num)
        new_den //= g
    cols = []
    for j, col in enumerate(basis):
        if j == k:
            continue
        cut = tuple(x * s - y * proj[j] for x, y in zip(col, bk))
        cols.append(linalg.primitive(cut))
    return (new_num, new_den, tuple(cols))


def _node_sign(flat, rows):
    """Best strictness margin over the flat, reduced to its sign.

    rows hold (a, h0) meaning <alpha, a> + h0 >= t for the margin t. On a
    zero-dimensional flat the margin is just the smallest slack, so no
    linear program is needed; that covers every completed selection with
    independent directions.
    """
    num, den, basis = flat
    if not basis:
        best = None
        for a, h0 in rows:
            h = h0 * den + linalg.dot(a, num)
            if best is None or h < best:
                best = h
        if best is None or best > 0:
            return 1
        return 0 if best == 0 else -1
    if not rows:
        return 1
    lp_rows = [
        (tuple(-linalg.dot(a, col) for col in basis), h0 * den + linalg.dot(a, num))
        for a, h0 in rows
    ]
    return _lp_margin_sign(lp_rows, len(basis), den)


def _mixed_cells(pts_by_factor, lifting, n):
    """All mixed cells of one lifted subdivision, as certificate entries.

    Depth-first search over per-factor endpoint pairs. A partial selection
    stays alive while some price vector keeps every chosen pair weakly
    minimal in its lifted factor; a completed selection must be strictly
    minimal with independent directions to count as a cell. A completed
    selection that is weakly but not strictly minimal corresponds to a
    coarse lower-hull cell, so it raises _DegenerateLifting and the caller
    retries with a fresh lifting.
    """
    identity = tuple(
        tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
    )
    root = ((0,) * n, 1, identity)

    candidates = []
    for pts, lift in zip(pts_by_factor, lifting):
        pairs = []
        for ai, p in enumerate(pts):
            for q in pts[ai + 1 :]:
                flat = _flat_add(root, linalg.vsub(p, q), lift[q] - lift[p])
                if flat is None:
                    continue
                rows = [
                    (linalg.vsub(r, p), lift[r] - lift[p])
                    for r in pts
                    if r != p and r != q
                ]
                if _node_sign(flat, rows) >= 0:
                    pairs.append((p, q, rows))
        if not pairs:
            return []
        candidates.append(pairs)

    order = sorted(range(len(candidates)), key=lambda i: len(candidates[i]))
    chosen = [None] * len(candidates)
    cells = []

    def walk(level, flat, rows):
        fi = order[level]
        lift = lifting[fi]
        for p, q, extra in candidates[fi]:
            nxt = _flat_add(flat, linalg.vsub(p, q), lift[q] - lift[p])
            if nxt is None:
                continue
            merged = rows + extra
            sign = _node_sign(nxt, merged)
            if sign < 0:
                continue
            chosen[fi] = (p, q)
            if level + 1 < len(order):
                walk(level + 1, nxt, merged)
            elif sign > 0 and not nxt[2]:
                mat = [linalg.vsub(b, a) for a, b in chosen]
                cells.append(
                    {
                        "segments": [sorted([list(a), list(b)]) for a, b in chosen],
                        "volume": abs(linalg.bareiss_det(mat)),
                    }
                )
            else:
                raise _DegenerateLifting
        chosen[fi] = None

    walk(0, root, [])
    return cells


def mixed_volume_cells(polys, seed=0):
    """Mixed cells of a fine mixed subdivision from a random lifting.

    The cells are enumerated directly, one endpoint pair per factor with
    exact feasibility pruning, instead of hulling the lifted Minkowski
    sum; only the cells that carry volume are ever materialized. Ties in
    the lifting are detected exactly and retried with a wider range.

    Returns (value, certificate).
    """
    n = len(polys)
    rng = random.Random(seed)
    scaled = [_scale_to_lattice(p) for p in polys]
    scale_product = 1
    for _, s in scaled:
        scale_product *= s

    diffs = []
    for pts, _s in scaled:
        diffs.extend(linalg.vsub(x, pts[0]) for x in pts[1:])
    if linalg.rank_int(diffs) < n:
        return Fraction(0), {"cells": [], "degenerate": True}

    for attempt in range(_MAX_LIFT_RETRIES):
        span = 1000 * (attempt + 1)
        lifting = [{v: rng.randrange(span) for v in pts} for pts, _ in scaled]
        try:
            cells = _mixed_cells([pts for pts, _ in scaled], lifting, n)
        except _DegenerateLifting:
            continue
        value = sum(cell["volume"] for cell in cells)
        certificate = {
            "scales": [s for _, s in scaled],
            "lifting": [
                sorted((list(v), w) for v, w in lift.items()) for lift in lifting
            ],
            "cells": sorted(cells, key=lambda c: c["segments"]),
        }
        return Fraction(value) / scale_product, certificate

    raise InternalCheckError(
        f"no fine mixed subdivision after {_MAX_LIFT_RETRIES} liftings"
    )


def volume_polynomial_oracle(polys):
    """Multilinear coefficient of the volume polynomial, by interpolation.

    Evaluates Vol(k_1 P_1 + ... + k_n P_n) on the grid {0..n}^n and converts
    to monomial coefficients one axis at a time with an exact inverse
    Vandermonde. Exponential in n; meant as an independent test oracle.
    """
    n = len(polys)
    nodes = n + 1
    inv = _inverse_vandermonde(nodes)

    values = {}
    for key in product(range(nodes), repeat=n):
        pieces = [polys[i].scale(k) for i, k in enumerate(key) if k]
        if not pieces:
            values[key] = Fraction(0)
            continue
        acc = pieces[0]
        for q in pieces[1:]:
            acc = minkowski_sum(acc, q)
        values[key] = volume(acc)

    coeffs = values
    for axis in range(n):
        nxt = {}
        for key in product(range(nodes), repeat=n):
            total = Fraction(0)
            for j in range(nodes):
                probe = key[:axis] + (j,) + key[axis + 1 :]
                total += inv[key[axis]][j] * coeffs[probe]
            nxt[key] = total
        coeffs = nxt
    return coeffs[(1,) * n]


def _inverse_vandermonde(k):
    """Inverse of the matrix A[j][i] = j**i on nodes 0..k-1, exact."""
    aug = [
        [Fraction(j**i) for i in range(k)] + [Fraction(int(i == j)) for i in range(k)]
        for j in range(k)
    ]
    m, pivots = linalg.rref(aug)
    assert list(pivots) == list(range(k)), "Vandermonde must be invertible"
    return [[m[i][k + j] for j in range(k)] for i in range(k)]


def mixed_volume(polys, algorithm=ALGO_CELLS, seed=0):
    """Mixed volume of n polytopes in R^n.

    Accepts Polytope objects; raises ArityMismatchError unless the number
    of factors equals the ambient dimension. An empty factor may be passed
    as None and makes the mixed volume zero with an EmptyFactor warning.
    """
    algorithm = _normalize_algorithm(algorithm)
    factors = list(polys)
    warnings = []
    present = [p for p in factors if p is not None]
    if not present:
        raise ArityMismatchError("no polytopes given")
    ambient = present[0].ambient_dim
    for p in present:
        if not isinstance(p, Polytope):
            raise TypeError("mixed_volume expects Polytope factors")
        if p.ambient_dim != ambient:
            raise DimensionMismatchError("factors in different ambient spaces")
    if len(factors) != ambient:
        raise ArityMismatchError(
            f"{len(factors)} factors for ambient dimension {ambient}"
        )
    if any(p is None for p in factors):
        warnings.append(WARN_EMPTY_FACTOR)
        return MixedVolumeResult(Fraction(0), algorithm, None, warnings)

    if algorithm == ALGO_IE:
        return MixedVolumeResult(mixed_volume_ie(factors), ALGO_IE, None, warnings)
    if algorithm == ALGO_CELLS:
        value, cert = mixed_volume_cells(factors, seed=seed)
        return MixedVolumeResult(value, ALGO_CELLS, cert, warnings)
    value_ie = mixed_volume_ie(factors)
    value_cells, cert = mixed_volume_cells(factors, seed=seed)
    if value_ie != value_cells:
        raise InternalCheckError(
            f"mixed volume engines disagree: {value_ie} vs {value_cells}"
        )
    return MixedVolumeResult(value_cells, ALGO_BOTH, cert, warnings)
