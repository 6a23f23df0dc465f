"""Exact integer/rational linear algebra helpers.

Everything here is deterministic: pivot selection always takes the entry of
least absolute value, breaking ties by lowest (row, col).  Downstream code
relies on that for bit-for-bit reproducible lattice bases.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a, v):
    return tuple(sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a)))


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det(a) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination over Fraction."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return out


def is_unimodular(a) -> bool:
    return len(a) == len(a[0]) and abs(det(a)) == 1


def smith_normal_form(a):
    """Return (u, s, v) with u*a*v = s diagonal, u and v unimodular.

    s's diagonal entries are nonnegative and each divides the next.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    s = [list(map(int, row)) for row in a]
    u = identity(rows)
    v = identity(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        s[i] = [x - q * y for x, y in zip(s[i], s[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            s[r][i] -= q * s[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            s[r][i], s[r][j] = s[r][j], s[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        # locate least-|value| nonzero pivot in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < best):
                    best = abs(s[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t]:
                        swap_rows(t, i)
                        if s[t][t] < 0:
                            s[t] = [-x for x in s[t]]
                            u[t] = [-x for x in u[t]]
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j]:
                        swap_cols(t, j)
                        if s[t][t] < 0:
                            s[t] = [-x for x in s[t]]
                            u[t] = [-x for x in u[t]]
                        dirty = True
        # divisibility: fold any non-multiple into the pivot position
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % s[t][t]:
                    row_op(t, i, -1)
                    dirty = True
                    break
            if dirty:
                break
        if dirty:
            continue
        t += 1
    return u, s, v


def integer_kernel(a):
    """Basis (list of integer tuples) of the saturated lattice {x : a @ x = 0}."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [tuple(1 if i == j else 0 for i in range(cols)) for j in range(cols)]
    _, s, v = smith_normal_form(a)
    rank = sum(1 for i in range(min(rows, cols)) if s[i][i] != 0)
    return [tuple(v[r][j] for r in range(cols)) for j in range(rank, cols)]


def solve_rational(a, b):
    """One rational solution x of a @ x = b, or None if inconsistent.

    Free variables are set to 0 (deterministic).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return tuple(x)
