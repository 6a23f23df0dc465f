"""Exact rational linear programming.

Two-phase dense simplex over Fraction with Bland's anti-cycling rule, plus
thin wrappers for the feasibility questions the polytope layer actually asks:
strict/non-strict feasibility with a witness point, implication of one
inequality by a system, and min/max of an affine functional.

Free variables are split x = u - v internally; problems here are tiny (tens of
variables), so simplicity wins over sparsity.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def simplex_max(c, a_rows, b):
    """Maximize c.x subject to a_rows @ x <= b, x >= 0.

    Returns (status, value, x).  Bland's rule throughout, so termination is
    guaranteed.
    """
    m = len(a_rows)
    n = len(c)
    # tableau columns: n structural + m slack + (artificials appended) | rhs
    rows = []
    basis = []
    art_cols = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]] + [_ZERO] * m
        row[n + i] = _ONE
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
            basis.append(None)  # needs artificial
        else:
            basis.append(n + i)
        rows.append((row, rhs))
    ncols = n + m
    tab = []
    for i, (row, rhs) in enumerate(rows):
        tab.append(row + [rhs])
    for i in range(m):
        if basis[i] is None:
            for r in range(m):
                tab[r].insert(ncols, _ONE if r == i else _ZERO)
            basis[i] = ncols
            art_cols.append(ncols)
            ncols += 1

    def pivot(r, col):
        piv = tab[r][col]
        tab[r] = [x / piv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][col] != 0:
                f = tab[i][col]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        basis[r] = col

    def run(obj, banned=frozenset()):
        # obj: cost row (length ncols); maximize obj.x given current basis
        while True:
            z = [Fraction(x) for x in obj]
            for i in range(m):
                col = basis[i]
                if z[col] != 0:
                    f = z[col]
                    z = [x - f * y for x, y in zip(z, tab[i][:ncols])]
            enter = None
            for j in range(ncols):
                if j not in banned and z[j] > 0:
                    enter = j
                    break
            if enter is None:
                val = _ZERO
                for i in range(m):
                    val += obj[basis[i]] * tab[i][ncols]
                return OPTIMAL, val
            leave = None
            best = None
            for i in range(m):
                coef = tab[i][enter]
                if coef > 0:
                    ratio = tab[i][ncols] / coef
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave is None:
                return UNBOUNDED, None
            pivot(leave, enter)

    if art_cols:
        phase1 = [_ZERO] * ncols
        for col in art_cols:
            phase1[col] = Fraction(-1)
        status, val = run(phase1)
        if val != 0:
            return INFEASIBLE, None, None
        for i in range(m):
            if basis[i] in art_cols:
                # pivot the artificial out on any nonzero structural/slack entry
                done = False
                for j in range(n + m):
                    if tab[i][j] != 0:
                        pivot(i, j)
                        done = True
                        break
                if not done:
                    # redundant row; artificial stays basic at zero, harmless
                    pass

    obj = [Fraction(x) for x in c] + [_ZERO] * (ncols - n)
    status, val = run(obj, banned=frozenset(art_cols))
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [_ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][ncols]
    return OPTIMAL, val, tuple(x)


def _split_free(dim, alpha):
    # x = u - v: coefficients for (u, v)
    return list(alpha) + [-a for a in alpha]


def lp_max(objective, constraints, dim):
    """Maximize objective.x over {x : alpha.x + a >= 0 for all constraints}.

    Strictness is ignored (optimization over the closure).  Returns
    (status, value, point).
    """
    if dim == 0:
        if all(Fraction(a) >= 0 for _, a, _ in constraints):
            return OPTIMAL, _ZERO, ()
        return INFEASIBLE, None, None
    a_rows = []
    b = []
    for alpha, a, _strict in constraints:
        a_rows.append([-x for x in _split_free(dim, alpha)])
        b.append(Fraction(a))
    c = _split_free(dim, objective)
    status, val, x = simplex_max(c, a_rows, b)
    if status != OPTIMAL:
        return status, None, None
    point = tuple(x[i] - x[dim + i] for i in range(dim))
    return OPTIMAL, val, point


def lp_min(objective, constraints, dim):
    status, val, point = lp_max([-o for o in objective], constraints, dim)
    if status == OPTIMAL:
        return status, -val, point
    return status, None, None


def feasible_point(constraints, dim):
    """A rational point satisfying every constraint (strict ones strictly), or None."""
    if dim == 0:
        for alpha, a, strict in constraints:
            av = Fraction(a)
            if av < 0 or (strict and av == 0):
                return None
        return ()
    # variables: u (dim), v (dim), t;   maximize t
    nvars = 2 * dim + 1
    a_rows = []
    b = []
    any_strict = False
    for alpha, a, strict in constraints:
        row = [-x for x in _split_free(dim, alpha)] + ([_ONE] if strict else [_ZERO])
        if strict:
            any_strict = True
        a_rows.append(row)
        b.append(Fraction(a))
    a_rows.append([_ZERO] * (2 * dim) + [_ONE])  # t <= 1
    b.append(_ONE)
    c = [_ZERO] * (2 * dim) + [_ONE]
    status, val, x = simplex_max(c, a_rows, b)
    if status != OPTIMAL:
        return None
    if any_strict and val <= 0:
        return None
    return tuple(x[i] - x[dim + i] for i in range(dim))


def is_feasible(constraints, dim) -> bool:
    return feasible_point(constraints, dim) is not None


def implies(constraints, alpha, a, strict=False, dim=None) -> bool:
    """Does the system imply alpha.x + a >= 0 (or > 0 when strict)?

    Vacuously true on an infeasible system.
    """
    if dim is None:
        dim = len(alpha)
    neg = (tuple(-x for x in alpha), -Fraction(a), not strict)
    return feasible_point(list(constraints) + [neg], dim) is None
