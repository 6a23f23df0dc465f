"""Independent brute-force oracles used to cross-check the production code.

These deliberately avoid the library's own algorithms: Fourier-Motzkin for
feasibility (vs the simplex), bounded lattice search for Hilbert bases, and
naive permutation search for graph automorphisms.
"""

from fractions import Fraction
from itertools import product


def fm_feasible(constraints, dim):
    """Fourier-Motzkin feasibility for a system of (alpha, a, strict) rows.

    Each row means alpha.x + a >= 0 (or > 0).  Returns True iff a real point
    satisfies every row (strict rows strictly).
    """
    rows = [([Fraction(x) for x in alpha], Fraction(a), strict) for alpha, a, strict in constraints]
    for var in range(dim):
        lower, upper, rest = [], [], []
        for alpha, a, strict in rows:
            c = alpha[var]
            if c > 0:
                lower.append((alpha, a, strict))
            elif c < 0:
                upper.append((alpha, a, strict))
            else:
                rest.append((alpha, a, strict))
        new_rows = rest
        for la, lb, ls in lower:
            for ua, ub, us in upper:
                cl = la[var]
                cu = -ua[var]
                alpha = [cu * x + cl * y for x, y in zip(la, ua)]
                alpha[var] = Fraction(0)
                new_rows.append((alpha, cu * lb + cl * ub, ls or us))
        rows = new_rows
    for _, a, strict in rows:
        if a < 0 or (strict and a == 0):
            return False
    return True


def grid_feasible(constraints, dim, lo=-6, hi=6, denom=2):
    """Search a rational grid for a satisfying point (sound, not complete)."""
    vals = [Fraction(n, denom) for n in range(lo * denom, hi * denom + 1)]
    for p in product(vals, repeat=dim):
        ok = True
        for alpha, a, strict in constraints:
            v = Fraction(a) + sum(c * x for c, x in zip(alpha, p))
            if v < 0 or (strict and v == 0):
                ok = False
                break
        if ok:
            return p
    return None


def brute_zero_achieving_monoid(polytope, max_alpha):
    """All (a, alpha) with |alpha|_inf <= max_alpha, alpha.x + a >= 0 on P and
    minimum exactly 0, found by exact LP on each candidate alpha.

    Uses only lp_min from the library (the LP itself is cross-checked
    separately against Fourier-Motzkin).
    """
    from explograph import exactlp

    out = []
    m = polytope.dim
    cs = polytope.constraint_rows()
    for alpha in product(range(-max_alpha, max_alpha + 1), repeat=m):
        if all(x == 0 for x in alpha):
            continue
        status, val, _ = exactlp.lp_min(list(alpha), cs, m)
        if status != exactlp.OPTIMAL:
            continue  # unbounded below: no offset makes it nonnegative
        out.append((-val, tuple(alpha)))
    return out


def reduce_to_irreducible(elements, in_monoid):
    """Minimal generating subset by pairwise subtraction.

    `elements` must be closed enough that every element decomposes into
    elements of the list; `in_monoid((a, alpha))` tests membership.
    """
    elems = sorted(set(elements))
    keep = []
    for x in elems:
        reducible = False
        for y in elems:
            if y == x:
                continue
            diff = (x[0] - y[0], tuple(p - q for p, q in zip(x[1], y[1])))
            if diff == (0, tuple(0 for _ in x[1])):
                continue
            if in_monoid(diff):
                reducible = True
                break
        if not reducible:
            keep.append(x)
    return keep


def automorphism_count_exhaustive(curve):
    """Count decorated-graph automorphisms by brute force over vertex and
    edge/end bijections.  Independent of the library implementation."""
    from itertools import permutations

    nv = len(curve.vertices)
    ne = len(curve.edges)
    nx = len(curve.ends)
    count = 0
    for vperm in permutations(range(nv)):
        ok = all(
            curve.vertices[vperm[i]].pos == curve.vertices[i].pos
            and curve.vertices[vperm[i]].genus == curve.vertices[i].genus
            for i in range(nv)
        )
        if not ok:
            continue
        for eperm in permutations(range(ne)):
            good = True
            for i in range(ne):
                e, f = curve.edges[i], curve.edges[eperm[i]]
                iu, iv = vperm[e.u], vperm[e.v]
                if e.length != f.length:
                    good = False
                elif (iu, iv, e.d) == (f.u, f.v, f.d):
                    pass
                elif (iu, iv, tuple(-x for x in e.d)) == (f.v, f.u, f.d):
                    pass
                else:
                    good = False
                if not good:
                    break
            if not good:
                continue
            for xperm in permutations(range(nx)):
                good2 = True
                for i in range(nx):
                    e, f = curve.ends[i], curve.ends[xperm[i]]
                    if vperm[e.v] != f.v or e.d != f.d:
                        good2 = False
                        break
                if good2:
                    count += 1
    return count
