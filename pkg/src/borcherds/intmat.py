"""Small exact integer/rational matrix helpers.

Everything here works on lists of lists of Python ints or Fractions; sizes in
this package stay below ~25x25, so simple cubic algorithms are fine.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                oi = out[i]
                for j in range(p):
                    oi[j] += x * bk[j]
    return out


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def smith_normal_form(mat):
    """Return (d, u, v) with u @ mat @ v = diag(d), u and v unimodular."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    m = len(a[0]) if n else 0
    u = identity(n)
    v = identity(m)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    while t < min(n, m):
        # find a nonzero pivot with smallest absolute value
        pivot = None
        for i in range(t, n):
            for j in range(t, m):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, n):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, m):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # ensure divisibility of the remaining block
        p = a[t][t]
        bad = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if a[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        t += 1
    d = [a[i][i] for i in range(min(n, m))]
    for i in range(len(d)):
        if d[i] < 0:
            d[i] = -d[i]
            u[i] = [-x for x in u[i]]
    return d, u, v


def integer_kernel(mat):
    """Basis (list of rows) of {x in Z^m : mat @ x = 0}; saturated by construction."""
    n = len(mat)
    m = len(mat[0]) if n else 0
    d, _, v = smith_normal_form(mat)
    rank = sum(1 for x in d if x)
    cols = []
    for j in range(rank, m):
        cols.append([v[i][j] for i in range(m)])
    return cols


def saturation(rows, dim):
    """Basis of the primitive closure of the row span inside Z^dim.

    Uses the double-kernel characterization: the saturation equals the set of
    integer vectors orthogonal (in the standard pairing) to everything that is
    orthogonal to the rows.
    """
    mat = [list(r) for r in rows]
    k1 = integer_kernel(mat)          # {x : rows @ x = 0}
    if not k1:
        return identity(dim)          # rows span Q^dim
    return integer_kernel(k1)         # saturated row span


def det_int(mat):
    """Determinant of an integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def invert_rational(mat):
    """Exact inverse of a square matrix over Q (Gauss-Jordan)."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_rational(mat, rhs):
    """Solve mat @ x = rhs exactly over Q (mat square nonsingular)."""
    inv = invert_rational(mat)
    return [sum(inv[i][j] * Fraction(rhs[j]) for j in range(len(rhs)))
            for i in range(len(inv))]
