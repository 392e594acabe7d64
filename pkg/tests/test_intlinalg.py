"""Exact linear algebra kernels against independent oracles."""

import random
from fractions import Fraction

import pytest

from og10lat.intlinalg import (
    det_int,
    hermite_row_basis,
    identity,
    inertia,
    integer_inverse,
    integer_kernel,
    mat_mul,
    mat_vec,
    rational_inverse,
    rational_row_solve,
    smith_normal_form,
    squarefree_part,
    xgcd,
)


def det_by_fractions(a):
    """Independent oracle: Gaussian elimination over Fractions."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    assert det.denominator == 1
    return int(det)


def random_matrix(rng, m, n, lo=-30, hi=30):
    return tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(m))


def test_xgcd():
    rng = random.Random(11)
    for _ in range(500):
        a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        g, x, y = xgcd(a, b)
        assert g >= 0
        assert g == a * x + b * y
        if a or b:
            assert a % g == 0 and b % g == 0


def test_det_against_fraction_oracle():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 6)
        a = random_matrix(rng, n, n)
        assert det_int(a) == det_by_fractions(a)


def test_smith_normal_form_random():
    rng = random.Random(7)
    for _ in range(400):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        a = random_matrix(rng, m, n)
        d, u, v = smith_normal_form(a)
        assert mat_mul(mat_mul(u, a), v) == d
        assert abs(det_int(u)) == 1
        assert abs(det_int(v)) == 1
        diag = [d[i][i] for i in range(min(m, n))]
        for i in range(min(m, n)):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0
        for x, y in zip(diag, diag[1:]):
            assert x >= 0
            if x == 0:
                assert y == 0
            elif y:
                assert y % x == 0


def test_hermite_row_basis_properties():
    rng = random.Random(13)
    for _ in range(200):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = random_matrix(rng, m, n, -9, 9)
        basis = hermite_row_basis(rows, n)
        # every original row is an integer combination of the basis
        for r in rows:
            if not any(r):
                continue
            coeffs = rational_row_solve(basis, r) if basis else None
            assert coeffs is not None
            assert all(c.denominator == 1 for c in coeffs)
        # echelon shape with positive pivots, reduced above
        pivots = []
        for row in basis:
            p = next(i for i, x in enumerate(row) if x)
            assert row[p] > 0
            pivots.append(p)
        assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
        for i, row in enumerate(basis):
            for j in range(i + 1, len(basis)):
                p = next(k for k, x in enumerate(basis[j]) if x)
                assert 0 <= row[p] < basis[j][p]


def test_hermite_row_basis_is_canonical():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(2, 5)
        rows = random_matrix(rng, rng.randint(1, 4), n, -6, 6)
        shuffled = list(rows)
        rng.shuffle(shuffled)
        assert hermite_row_basis(rows, n) == hermite_row_basis(shuffled, n)


def test_integer_kernel():
    rng = random.Random(19)
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        a = random_matrix(rng, m, n, -6, 6)
        kern = integer_kernel(a, n)
        for k in kern:
            assert all(x == 0 for x in mat_vec(a, k))
        from og10lat.intlinalg import rational_rank
        if kern:
            assert rational_rank(kern) == len(kern)
        assert len(kern) == n - rational_rank_or_zero(a)


def rational_rank_or_zero(a):
    from og10lat.intlinalg import rational_rank
    return rational_rank(a) if a else 0


def test_inverse_roundtrip():
    rng = random.Random(23)
    done = 0
    while done < 100:
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n, -5, 5)
        if det_int(a) == 0:
            continue
        done += 1
        inv = rational_inverse(a)
        prod = mat_mul(a, inv)
        assert prod == tuple(tuple(Fraction(int(i == j)) for j in range(n))
                             for i in range(n))
    with pytest.raises(ValueError):
        rational_inverse(((1, 2), (2, 4)))


def test_integer_inverse_unimodular():
    rng = random.Random(29)
    for _ in range(50):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n, -4, 4)
        _, u, v = smith_normal_form(a)
        assert mat_mul(u, integer_inverse(u)) == identity(n if n == len(u) else len(u))
        assert mat_mul(v, integer_inverse(v)) == identity(len(v))


def test_inertia_matches_sylvester():
    # diagonal cases are exact by inspection
    assert inertia(((2, 0), (0, -3))) == (1, 1, 0)
    assert inertia(((0, 1), (1, 0))) == (1, 1, 0)  # hyperbolic pivot path
    assert inertia(((0, 0), (0, 0))) == (0, 0, 2)
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(1, 6)
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = rng.randint(-6, 6)
        pos, neg, zero = inertia(a)
        assert pos + neg + zero == n
        d = det_int(a)
        if zero == 0:
            sign = 1 if d > 0 else -1
            assert sign == (-1) ** neg
        else:
            assert d == 0


def test_squarefree_part():
    assert squarefree_part(1) == (1, 1)
    assert squarefree_part(256) == (16, 1)
    assert squarefree_part(768) == (16, 3)
    rng = random.Random(37)
    for _ in range(200):
        n = rng.randint(1, 10**6)
        f, m = squarefree_part(n)
        assert f * f * m == n
        for d in range(2, 40):
            assert m % (d * d) != 0
