"""Dense exact linear algebra over Q(q) (RatFunc entries) and Z.

Matrices are lists of rows.  Sizes stay at desk scale (tens of rows), so
plain fraction-field Gaussian elimination is fine.
"""

from __future__ import annotations

from .ring import RatFunc


def zeros(m, n):
    return [[RatFunc.zero() for _ in range(n)] for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = RatFunc.one()
    return out


def mat_mul(a, b):
    m, k = len(a), len(b)
    n = len(b[0]) if b else 0
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(n):
                    if bt[j]:
                        oi[j] = oi[j] + x * bt[j]
    return out


def mat_vec(a, v):
    return [sum((a[i][j] * v[j] for j in range(len(v)) if v[j]), RatFunc.zero())
            for i in range(len(a))]


def row_echelon(mat, rhs=None):
    """In-place fraction-field elimination; returns pivot column list.

    If rhs (list of rows) is given it is transformed alongside.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    piv_cols = []
    r = 0
    for c in range(n):
        p = None
        for i in range(r, m):
            if mat[i][c]:
                p = i
                break
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        if rhs is not None:
            rhs[r], rhs[p] = rhs[p], rhs[r]
        inv = RatFunc.one() / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        if rhs is not None:
            rhs[r] = [x * inv for x in rhs[r]]
        for i in range(m):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [mat[i][j] - f * mat[r][j] for j in range(n)]
                if rhs is not None:
                    rhs[i] = [rhs[i][j] - f * rhs[r][j] for j in range(len(rhs[r]))]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return piv_cols


def rank(mat):
    if not mat:
        return 0
    work = [row[:] for row in mat]
    return len(row_echelon(work))


def solve(mat, b):
    """Solve mat @ x = b exactly; returns x or None if inconsistent.

    Requires the solution to be unique (full column rank); raises on
    underdetermined systems since every caller expects uniqueness.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    work = [row[:] for row in mat]
    rhs = [[b[i]] for i in range(m)]
    piv = row_echelon(work, rhs)
    if len(piv) < n:
        raise ValueError("underdetermined linear system")
    x = [RatFunc.zero()] * n
    for r, c in enumerate(piv):
        x[c] = rhs[r][0]
    for r in range(len(piv), m):
        if rhs[r][0]:
            return None
    return x


def solve_many(mat, bs):
    """Solve mat @ x = b for several right-hand sides; None where inconsistent."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    work = [row[:] for row in mat]
    rhs = [[col[i] for col in bs] for i in range(m)]
    piv = row_echelon(work, rhs)
    if len(piv) < n:
        raise ValueError("underdetermined linear system")
    outs = []
    for j in range(len(bs)):
        ok = all(not rhs[r][j] for r in range(len(piv), m))
        if not ok:
            outs.append(None)
            continue
        x = [RatFunc.zero()] * n
        for r, c in enumerate(piv):
            x[c] = rhs[r][j]
        outs.append(x)
    return outs


def invert(mat):
    n = len(mat)
    work = [row[:] for row in mat]
    rhs = identity(n)
    piv = row_echelon(work, rhs)
    if len(piv) != n:
        raise ValueError("matrix not invertible")
    return rhs


def in_span(rows, vec):
    """Is vec in the row span of rows?  Exact rank comparison."""
    if not rows:
        return not any(vec)
    return rank(rows) == rank(rows + [vec])


# -- integer matrices: Smith normal form -----------------------------------


def smith_normal_form(a):
    """Return (u, d, v) with u @ a @ v = d, d diagonal, all integer, u, v
    unimodular.  a is a list of rows of ints; not modified."""
    a = [row[:] for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, k):  # row_i += k * row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, k):  # col_i += k * col_j
        for row in a:
            row[i] += k * row[j]
        for row in v:
            row[i] += k * row[j]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot
        p = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j]:
                    p = (i, j)
                    break
            if p:
                break
        if p is None:
            break
        swap_rows(t, p[0])
        swap_cols(t, p[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    k = a[i][t] // a[t][t]
                    add_row(i, t, -k)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    k = a[t][j] // a[t][t]
                    add_col(j, t, -k)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v
