"""Exact integer and rational matrix kernels.

Everything operates on nested tuples/lists of Python ints (Fractions where
noted).  No floating point: the lattice criteria downstream are sensitive to
single units, so determinants, normal forms and signatures must be exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def ceildiv(a: int, b: int) -> int:
    return -((-a) // b)


def identity(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def freeze(rows):
    return tuple(tuple(x for x in row) for row in rows)


def transpose(a):
    return tuple(zip(*a)) if a else ()


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v):
    """Matrix times column vector, returned as a tuple."""
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_dot(v, w):
    return sum(x * y for x, y in zip(v, w))


def det_int(a) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a):
    """Inverse of a square matrix as Fractions. Raises ValueError if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def integer_inverse(a):
    """Inverse of a unimodular integer matrix, with integer entries."""
    inv = rational_inverse(a)
    out = []
    for row in inv:
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def _rows_combine(m, i, k, a, b, c, d):
    # (R_i, R_k) <- (a R_i + b R_k, c R_i + d R_k); caller keeps ad - bc = +-1
    ri, rk = m[i], m[k]
    m[i] = [a * x + b * y for x, y in zip(ri, rk)]
    m[k] = [c * x + d * y for x, y in zip(ri, rk)]


def _cols_combine(m, j, k, a, b, c, d):
    for row in m:
        x, y = row[j], row[k]
        row[j] = a * x + b * y
        row[k] = c * x + d * y


def smith_normal_form(a):
    """Smith normal form with transforms: returns (d, u, v) with u*a*v = d.

    u and v are unimodular; the diagonal of d is non-negative and satisfies
    d[i] | d[i+1].
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]
    k = min(m, n)

    t = 0
    while t < k:
        # pick the smallest nonzero entry of the trailing block as pivot
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = d[i][j]
                if e and (best is None or abs(e) < best):
                    best = abs(e)
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            d[t], d[pi] = d[pi], d[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            _cols_combine(d, t, pj, 0, 1, 1, 0)
            _cols_combine(v, t, pj, 0, 1, 1, 0)
        while True:
            # pure eliminations keep the pivot row/column untouched; the xgcd
            # combine strictly shrinks |pivot|, which bounds the loop
            dirty = False
            for i in range(t + 1, m):
                e = d[i][t]
                if e:
                    a_p = d[t][t]
                    if e % a_p == 0:
                        q = e // a_p
                        d[i] = [x - q * y for x, y in zip(d[i], d[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    else:
                        g, x, y = xgcd(a_p, e)
                        p, q = a_p // g, e // g
                        _rows_combine(d, t, i, x, y, -q, p)
                        _rows_combine(u, t, i, x, y, -q, p)
                        dirty = True
            for j in range(t + 1, n):
                e = d[t][j]
                if e:
                    a_p = d[t][t]
                    if e % a_p == 0:
                        q = e // a_p
                        for row in d:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    else:
                        g, x, y = xgcd(a_p, e)
                        p, q = a_p // g, e // g
                        _cols_combine(d, t, j, x, y, -q, p)
                        _cols_combine(v, t, j, x, y, -q, p)
                        dirty = True
            if not dirty:
                break
        t += 1

    for i in range(k):
        if d[i][i] < 0:
            for j in range(n):
                d[i][j] = -d[i][j]
            for j in range(m):
                u[i][j] = -u[i][j]

    # enforce the divisibility chain; zeros sink to the end
    while True:
        changed = False
        for i in range(k - 1):
            a_i, b_i = d[i][i], d[i + 1][i + 1]
            if a_i == 0 and b_i != 0:
                d[i], d[i + 1] = d[i + 1], d[i]
                u[i], u[i + 1] = u[i + 1], u[i]
                _cols_combine(d, i, i + 1, 0, 1, 1, 0)
                _cols_combine(v, i, i + 1, 0, 1, 1, 0)
                changed = True
            elif a_i and b_i and b_i % a_i:
                # diag(a,b) -> diag(gcd, lcm) through a 2x2 dance
                _cols_combine(d, i, i + 1, 1, 1, 0, 1)
                _cols_combine(v, i, i + 1, 1, 1, 0, 1)
                g, x, y = xgcd(a_i, b_i)
                p, q = a_i // g, b_i // g
                _rows_combine(d, i, i + 1, x, y, -q, p)
                _rows_combine(u, i, i + 1, x, y, -q, p)
                r = d[i][i + 1] // g
                _cols_combine(d, i + 1, i, 1, -r, 0, 1)
                _cols_combine(v, i + 1, i, 1, -r, 0, 1)
                if d[i][i] < 0:
                    for j in range(n):
                        d[i][j] = -d[i][j]
                    for j in range(m):
                        u[i][j] = -u[i][j]
                if d[i + 1][i + 1] < 0:
                    for j in range(n):
                        d[i + 1][j] = -d[i + 1][j]
                    for j in range(m):
                        u[i + 1][j] = -u[i + 1][j]
                changed = True
        if not changed:
            break

    return freeze(d), freeze(u), freeze(v)


def hermite_row_basis(rows, width: int):
    """Canonical basis of the integer row span of `rows`.

    Returns tuples in row echelon form: strictly increasing pivot columns,
    positive pivots, entries above each pivot reduced into [0, pivot).
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    res = []
    for col in range(width):
        if not work:
            break
        while True:
            nz = [r for r in work if r[col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            a, b = nz[0], nz[1]
            g, x, y = xgcd(a[col], b[col])
            p, q = a[col] // g, b[col] // g
            na = [x * s + y * t for s, t in zip(a, b)]
            nb = [p * t - q * s for s, t in zip(a, b)]
            a[:], b[:] = na, nb
            work = [r for r in work if any(r)]
        row = next((r for r in work if r[col]), None)
        if row is not None:
            work.remove(row)
            if row[col] < 0:
                row = [-x for x in row]
            res.append(row)
    # clear above the pivots, top pivot first so later passes stay clean
    for i in range(len(res)):
        p = next(j for j, x in enumerate(res[i]) if x)
        for r in res[:i]:
            q = r[p] // res[i][p]
            if q:
                for j in range(len(r)):
                    r[j] -= q * res[i][j]
    return freeze(res)


def integer_kernel(a, n: int):
    """Basis (rows) of {x in Z^n : a @ x == 0} for an integer matrix a."""
    if not a:
        return identity(n)
    d, _, v = smith_normal_form(a)
    k = min(len(a), n)
    r = sum(1 for i in range(k) if d[i][i])
    cols = transpose(v)
    return hermite_row_basis(cols[r:], n)


def rational_row_solve(rows, target):
    """Solve sum x_i rows_i == target over Q; None if inconsistent.

    `rows` must be linearly independent.
    """
    k = len(rows)
    n = len(target)
    if k == 0:
        return () if not any(target) else None
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])]
           for j in range(n)]
    piv_rows = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(col)
        r += 1
    if len(piv_rows) < k:
        raise ValueError("rows are linearly dependent")
    for i in range(r, n):
        if aug[i][k]:
            return None
    sol = [Fraction(0)] * k
    for i, col in enumerate(piv_rows):
        sol[col] = aug[i][k]
    return tuple(sol)


def rational_rank(rows) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        row += 1
        rank += 1
    return rank


def inertia(a) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix.

    Congruence diagonalization (Sylvester); a zero diagonal with a nonzero
    off-diagonal entry is resolved by the two-step hyperbolic pivot.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    pos = neg = zero = 0
    for i in range(n):
        if m[i][i] == 0:
            j = next((j for j in range(i + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[i], m[j] = m[j], m[i]
                for row in m:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if m[i][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                # row/col addition makes the diagonal entry 2*m[i][j] != 0
                m[i] = [x + y for x, y in zip(m[i], m[j])]
                for row in m:
                    row[i] = row[i] + row[j]
        p = m[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if m[j][i]:
                f = m[j][i] / p
                m[j] = [x - f * y for x, y in zip(m[j], m[i])]
                for row in m:
                    row[j] = row[j] - f * row[i]
    return pos, neg, zero


def squarefree_part(n: int) -> tuple[int, int]:
    """n = f*f*m with m squarefree; returns (f, m). Requires n >= 1."""
    f = 1
    m = n
    d = 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            f *= d
        d += 1
    return f, m
