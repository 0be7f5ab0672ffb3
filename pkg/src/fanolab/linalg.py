"""Exact integer and rational linear algebra helpers.

Everything here works over Python ints / Fractions: Hermite normal forms,
unimodular basis completion, and rational Gaussian elimination.  Matrices are
lists of row lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def is_primitive(v):
    return vec_gcd(v) == 1


def primitive_part(v):
    """Scale an integer vector to its primitive representative (same sign)."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v)


def mat_vec(matrix, v):
    return tuple(sum(row[i] * v[i] for i in range(len(v))) for row in matrix)


def mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(rows)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hnf_rows(matrix):
    """Row-style Hermite normal form.

    Returns ``(H, U, rank)`` with ``U`` unimodular and ``U @ A == H``; the
    nonzero rows of H are an echelon basis of the row lattice, pivots
    positive, entries above each pivot reduced into [0, pivot).
    """
    if not matrix:
        return [], [], 0
    a = [list(map(int, row)) for row in matrix]
    m, n = len(a), len(a[0])
    u = identity(m)
    r = 0
    for col in range(n):
        # clear column below row r using gcd row operations
        pivot_row = None
        for i in range(r, m):
            if a[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        u[r], u[pivot_row] = u[pivot_row], u[r]
        for i in range(r + 1, m):
            while a[i][col] != 0:
                q = a[r][col] // a[i][col]
                for j in range(n):
                    a[r][j] -= q * a[i][j]
                for j in range(m):
                    u[r][j] -= q * u[i][j]
                a[r], a[i] = a[i], a[r]
                u[r], u[i] = u[i], u[r]
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][col] // a[r][col]
            if q:
                for j in range(n):
                    a[i][j] -= q * a[r][j]
                for j in range(m):
                    u[i][j] -= q * u[r][j]
        r += 1
        if r == m:
            break
    return a, u, r


def hnf_basis(vectors):
    """HNF basis (list of rows) of the lattice generated by integer vectors."""
    h, _, r = hnf_rows(vectors)
    return [tuple(row) for row in h[:r]]


def unimodular_inverse(matrix):
    """Exact integer inverse of a matrix with determinant +-1."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j))
                                       for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = a[i][j]
            if x.denominator != 1:
                raise ValueError("matrix inverse is not integral")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def complete_to_basis_last_row(w):
    """Unimodular integer matrix whose last row is the primitive covector w.

    Used to slice exponent lattices: under e -> T e the last coordinate of
    the image is w(e).
    """
    w = tuple(int(x) for x in w)
    if not is_primitive(w):
        raise ValueError("weight must be primitive")
    n = len(w)
    # column operations reducing w to (1, 0, ..., 0), recorded in V
    row = list(w)
    v = identity(n)
    piv = next(i for i in range(n) if row[i] != 0)
    row[0], row[piv] = row[piv], row[0]
    for r in v:
        r[0], r[piv] = r[piv], r[0]
    for j in range(1, n):
        while row[j] != 0:
            q = row[0] // row[j]
            row[0] -= q * row[j]
            for r in v:
                r[0] -= q * r[j]
            row[0], row[j] = row[j], row[0]
            for r in v:
                r[0], r[j] = r[j], r[0]
    if row[0] < 0:
        row[0] = -row[0]
        for r in v:
            r[0] = -r[0]
    assert row[0] == 1 and all(x == 0 for x in row[1:])
    v_inv = unimodular_inverse(v)  # first row of V^-1 is w
    rows = list(v_inv[1:]) + [v_inv[0]]
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# rational elimination


def rref(matrix):
    """Reduced row echelon form over Fractions.

    Returns ``(rows, pivot_columns)``; input is not modified.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def nullspace(matrix, ncols=None):
    """Basis of the rational nullspace of a matrix (rows may be empty)."""
    if ncols is None:
        if not matrix:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(matrix[0])
    if not matrix:
        return [tuple(Fraction(int(i == j)) for j in range(ncols))
                for i in range(ncols)]
    rows, pivots = rref(matrix)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for r, pc in zip(rows, pivots):
            vec[pc] = -r[j]
        basis.append(tuple(vec))
    return basis


def solve_affine(matrix, rhs):
    """Solve A x = b exactly.

    Returns ``(particular, null_basis)`` or None when inconsistent.  Free
    variables are set to zero in the particular solution.
    """
    if not matrix:
        raise ValueError("empty system")
    n = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    for r, pc in zip(rows, pivots):
        if pc == n:
            return None
    x = [Fraction(0)] * n
    for r, pc in zip(rows, pivots):
        x[pc] = r[n]
    basis = nullspace(matrix, ncols=n)
    return [Fraction(v) for v in x], basis
