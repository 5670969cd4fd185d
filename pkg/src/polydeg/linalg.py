"""Exact linear algebra over the integers and rationals.

Matrices are lists (or tuples) of row vectors. Everything here is small and
dense; ambient dimensions stay below ten, so asymptotics do not matter but
exactness does. Integer paths use fraction-free elimination (Bareiss) and the
rational paths use ``fractions.Fraction`` throughout.
"""

from fractions import Fraction
from math import gcd
from operator import mul


def vgcd(vec):
    """Gcd of the absolute values of the entries (0 for the zero vector)."""
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    return g


def primitive(vec):
    """Divide an integer vector by the gcd of its entries.

    The zero vector is returned unchanged.
    """
    g = vgcd(vec)
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)


def dot(a, b):
    return sum(map(mul, a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def mat_vec(rows, v):
    return tuple(dot(r, v) for r in rows)


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def bareiss_det(rows):
    """Determinant of a square integer matrix, fraction-free."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_fraction(rows):
    """Determinant of a square matrix with Fraction or int entries."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scaled = []
    scale = Fraction(1)
    for row in rows:
        row = [Fraction(x) for x in row]
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        scale /= lcm
        scaled.append([int(x * lcm) for x in row])
    return scale * bareiss_det(scaled)


def rank_int(rows):
    """Rank of an integer matrix via fraction-free elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    col = 0
    prev = 1
    while rank < nrows and col < ncols:
        pivot_row = None
        for i in range(rank, nrows):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            col += 1
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                m[i][j] = (m[i][j] * pivot - m[i][col] * m[rank][j]) // prev
            m[i][col] = 0
        prev = pivot
        rank += 1
        col += 1
    return rank


def rref(rows):
    """Reduced row echelon form over the rationals.

    Returns (rref_rows, pivot_columns). Input entries may be ints or
    Fractions; output entries are Fractions.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_fraction(rows):
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def solve(a_rows, b):
    """One rational solution of A x = b, or None if inconsistent."""
    if not a_rows:
        return None if any(b) else ()
    ncols = len(a_rows[0])
    aug = [list(r) + [bv] for r, bv in zip(a_rows, b)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    return tuple(x)


def nullspace(a_rows):
    """Basis of the rational kernel of A (list of Fraction tuples)."""
    if not a_rows:
        return []
    ncols = len(a_rows[0])
    m, pivots = rref(a_rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][fc]
        basis.append(tuple(v))
    return basis


def integer_kernel_basis(a_rows):
    """Basis of the integer lattice ker(A) ∩ Z^n (saturated)."""
    if not a_rows:
        return []
    q = len(a_rows[0])
    _, diag, v = snf(a_rows)
    r = sum(1 for d in diag if d != 0)
    # With U·A·V = D and y = V^{-1}·x, integrality of x and y coincide and
    # A·x = 0 forces exactly the first r coordinates of y to vanish, so the
    # trailing columns of V are a basis of the saturated kernel lattice.
    return [tuple(v[i][j] for i in range(q)) for j in range(r, q)]


def hnf(rows):
    """Row-style Hermite normal form of the integer row span.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows are dropped to the bottom. The result is a canonical basis of
    the lattice generated by the input rows.
    """
    m = [list(r) for r in rows]
    if not m:
        return []
    nrows = len(m)
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        # Euclidean reduction in column c among rows r..
        while True:
            nz = [i for i in range(r, nrows) if m[i][c] != 0]
            if not nz:
                break
            if len(nz) == 1:
                i = nz[0]
                m[r], m[i] = m[i], m[r]
                break
            nz.sort(key=lambda i: abs(m[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = m[i][c] // m[i0][c]
                m[i] = [a - q * b for a, b in zip(m[i], m[i0])]
        if r < nrows and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == nrows:
                break
    return [tuple(row) for row in m[:r]]


def snf(a_rows):
    """Smith normal form: returns (U, diag, V) with U·A·V diagonal.

    U and V are unimodular; diag is the list of diagonal entries of the
    resulting min(p,q) diagonal (nonnegative, divisibility-ordered).
    """
    a = [list(r) for r in a_rows]
    p = len(a)
    q = len(a[0]) if p else 0
    u = [[int(i == j) for j in range(p)] for i in range(p)]
    v = [[int(i == j) for j in range(q)] for i in range(q)]

    def row_op(i, j, f):
        # row_i -= f * row_j  (in A and U)
        a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        u[i] = [x - f * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, f):
        # col_i -= f * col_j  (in A and V)
        for row in a:
            row[i] -= f * row[j]
        for row in v:
            row[i] -= f * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(p, q):
        # Find the smallest nonzero entry in the remaining block.
        best = None
        for i in range(t, p):
            for j in range(t, q):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        dirty = False
        for i in range(t + 1, p):
            if a[i][t] != 0:
                f = a[i][t] // a[t][t]
                row_op(i, t, f)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, q):
            if a[t][j] != 0:
                f = a[t][j] // a[t][t]
                col_op(j, t, f)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # Pivot must divide every remaining entry; if not, mix that row in.
        fixed = True
        for i in range(t + 1, p):
            for j in range(t + 1, q):
                if a[i][j] % a[t][t] != 0:
                    row_op(t, i, -1)
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    diag = [a[i][i] for i in range(min(p, q))]
    return u, diag, v


def gcd_of_maximal_minors(rows):
    """Gcd of all r×r minors of an integer matrix of rank r.

    Equals the product of the Smith normal form invariant factors.
    """
    if not rows:
        return 1
    _, diag, _ = snf(rows)
    out = 1
    for d in diag:
        if d == 0:
            break
        out *= d
    return out


def integral_solve(a_rows, b):
    """One integer solution of A x = b, or None if none exists."""
    if not a_rows:
        return None if any(b) else ()
    q = len(a_rows[0])
    u, diag, v = snf(a_rows)
    ub = mat_vec(u, b)
    p = len(a_rows)
    y = [0] * q
    for i in range(min(p, q)):
        d = diag[i]
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    for i in range(min(p, q), p):
        if ub[i] != 0:
            return None
    # x = V y
    return tuple(sum(v[i][j] * y[j] for j in range(q)) for i in range(q))


def lattice_quotient_map(basis_rows, ambient_dim):
    """Projection matrix Z^n -> Z^(n-r) whose kernel saturates span(basis).

    ``basis_rows`` are integer vectors spanning a rank-r sublattice of Z^n.
    Returns the rows of a surjective integer matrix Q with Q·b = 0 for every
    basis vector and ker(Q) ∩ Z^n equal to the saturation of the span.
    """
    if not basis_rows:
        return [tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)]
    # Columns of B are the basis vectors; U·B·V = S makes the first r rows of
    # U·B nonzero, so the remaining rows of U annihilate the span.
    b_cols = transpose(basis_rows)
    u, diag, _ = snf(b_cols)
    r = sum(1 for d in diag if d != 0)
    return [tuple(u[i]) for i in range(r, ambient_dim)]


def null_normal(edge_rows):
    """Integer linear form vanishing on the span of d-1 vectors in R^d.

    Returns n with det([x; edges]) = <x, n> for every x; n = 0 when the
    edges are linearly dependent.
    """
    d = len(edge_rows[0])
    if len(edge_rows) != d - 1:
        raise ValueError("need exactly d-1 edge vectors")
    n = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in edge_rows]
        n.append((-1) ** j * bareiss_det(minor))
    return tuple(n)
