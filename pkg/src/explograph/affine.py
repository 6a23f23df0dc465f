"""Integral-affine polytopes over exact rationals.

A polytope lives in R^m and is cut out by finitely many rows alpha.x + a >= 0
(or > 0) with integer normals alpha and rational offsets a.  Everything below
is exact: feasibility and implication questions go through the rational
simplex in exactlp, lattice questions through intlinalg.

The face lattice is indexed by tightness sets: the set of constraints that
vanish on all of a face determines it.  Faces are re-embedded into their
integral affine span so that lower-dimensional geometry (vertex figures,
facet volumes, monoid computations) can recurse uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import gcd

from . import exactlp
from .intlinalg import (
    det,
    integer_kernel,
    mat_vec,
    primitive,
    solve_rational,
    vec_gcd,
)


class GeometryError(ValueError):
    pass


class ScopeError(GeometryError):
    """Input outside the documented correctness scope of a bounded search."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AffineConstraint:
    """The inequality alpha.x + a >= 0 (strict: > 0)."""

    alpha: tuple
    a: Fraction
    strict: bool = False

    def __post_init__(self):
        alpha = tuple(int(x) for x in self.alpha)
        if all(x == 0 for x in alpha):
            raise GeometryError("tautological constraint rejected: alpha = 0")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "a", _frac(self.a))

    def value(self, x) -> Fraction:
        return self.a + sum(c * v for c, v in zip(self.alpha, x))

    def holds(self, x) -> bool:
        v = self.value(x)
        return v > 0 if self.strict else v >= 0

    def row(self):
        return (self.alpha, self.a, self.strict)


@dataclass(frozen=True)
class Polytope:
    dim: int
    constraints: tuple

    def __post_init__(self):
        cs = tuple(
            c if isinstance(c, AffineConstraint) else AffineConstraint(*c)
            for c in self.constraints
        )
        for c in cs:
            if len(c.alpha) != self.dim:
                raise GeometryError("constraint dimension mismatch")
        object.__setattr__(self, "constraints", cs)

    def constraint_rows(self):
        return [c.row() for c in self.constraints]

    def contains(self, x) -> bool:
        return all(c.holds(x) for c in self.constraints)


def polytope(dim, rows) -> Polytope:
    return Polytope(dim, tuple(AffineConstraint(a, b, s) for a, b, s in rows))


def interval(lo, hi) -> Polytope:
    """[lo, hi] in R^1."""
    return polytope(1, [((1,), -_frac(lo), False), ((-1,), _frac(hi), False)])


def halfline() -> Polytope:
    return polytope(1, [((1,), 0, False)])


def orthant(m) -> Polytope:
    return polytope(m, [(tuple(1 if j == i else 0 for j in range(m)), 0, False) for i in range(m)])


def whole_space(m) -> Polytope:
    return Polytope(m, ())


def cone_from_rays(rays) -> Polytope:
    """Polytope form (inequalities) of the cone spanned by integer rays.

    Works for full-dimensional pointed cones in R^2 and coordinate-style cones
    used by the test catalog; normals found by exhaustive pair search.
    """
    rays = [tuple(int(x) for x in r) for r in rays]
    m = len(rays[0])
    normals = set()
    if m == 1:
        for r in rays:
            normals.add((1,) if r[0] > 0 else (-1,))
    elif m == 2:
        for r in rays:
            n = (-r[1], r[0])
            for cand in (n, tuple(-x for x in n)):
                if all(sum(c * v for c, v in zip(cand, s)) >= 0 for s in rays):
                    normals.add(primitive(cand))
    else:
        for sub in combinations(rays, m - 1):
            ker = integer_kernel(list(sub))
            if len(ker) != 1:
                continue
            for cand in (ker[0], tuple(-x for x in ker[0])):
                if all(sum(c * v for c, v in zip(cand, s)) >= 0 for s in rays):
                    normals.add(primitive(cand))
    return polytope(m, [(n, 0, False) for n in sorted(normals)])


def polytope_nonempty_interior(p: Polytope) -> bool:
    rows = [(c.alpha, c.a, True) for c in p.constraints]
    return exactlp.feasible_point(rows, p.dim) is not None


def polytope_is_nonempty(p: Polytope) -> bool:
    return exactlp.feasible_point(p.constraint_rows(), p.dim) is not None


def polytope_is_complete(p: Polytope) -> bool:
    """True iff the point set is closed: no strict constraint is essential."""
    weakened = [(c.alpha, c.a, False) for c in p.constraints]
    for c in p.constraints:
        if not c.strict:
            continue
        status, val, _ = exactlp.lp_min(list(c.alpha), weakened, p.dim)
        if status != exactlp.OPTIMAL or val + c.a <= 0:
            return False
    return True


def contains_point(p: Polytope, x) -> bool:
    return p.contains(tuple(_frac(v) for v in x))


@dataclass(frozen=True)
class Face:
    """A face of a polytope, with its integral affine span.

    `origin` is a rational point in the relative interior; `basis` columns
    generate the saturated direction lattice; `poly` is the face re-embedded
    in span coordinates (full-dimensional there).  Embedding map:
    y |-> origin + basis @ y.
    """

    tight: frozenset
    dim: int
    origin: tuple
    basis: tuple
    poly: Polytope

    def embed(self, y):
        m = len(self.origin)
        return tuple(
            self.origin[i] + sum(self.basis[i][j] * y[j] for j in range(self.dim))
            for i in range(m)
        )


def _tight_closure(p: Polytope, tight):
    """All constraint indices tight on the whole face selected by `tight`."""
    rows = []
    for j, c in enumerate(p.constraints):
        if j in tight:
            rows.append((c.alpha, c.a, False))
            rows.append((tuple(-x for x in c.alpha), -c.a, False))
        else:
            rows.append((c.alpha, c.a, False))
    out = set(tight)
    for j, c in enumerate(p.constraints):
        if j in out:
            continue
        status, val, _ = exactlp.lp_max(list(c.alpha), rows, p.dim)
        if status == exactlp.OPTIMAL and val + c.a == 0:
            out.add(j)
    return frozenset(out)


def _face_from_tight(p: Polytope, tight):
    rows = []
    for j, c in enumerate(p.constraints):
        if j in tight:
            rows.append((c.alpha, c.a, False))
            rows.append((tuple(-x for x in c.alpha), -c.a, False))
        else:
            # relative interior: every non-tight constraint strictly positive
            rows.append((c.alpha, c.a, True))
    origin = exactlp.feasible_point(rows, p.dim)
    if origin is None:
        return None
    normals = [list(p.constraints[j].alpha) for j in sorted(tight)]
    if normals:
        kernel = integer_kernel(normals)
    else:
        kernel = [tuple(1 if i == j else 0 for i in range(p.dim)) for j in range(p.dim)]
    d = len(kernel)
    basis_cols = tuple(tuple(kernel[j][i] for j in range(d)) for i in range(p.dim))
    sub_rows = []
    for j, c in enumerate(p.constraints):
        if j in tight:
            continue
        beta = tuple(
            sum(c.alpha[i] * kernel[k][i] for i in range(p.dim)) for k in range(d)
        )
        if all(x == 0 for x in beta):
            continue
        a0 = c.a + sum(c.alpha[i] * origin[i] for i in range(p.dim))
        sub_rows.append((beta, a0, c.strict))
    return Face(
        tight=tight,
        dim=d,
        origin=origin,
        basis=basis_cols,
        poly=polytope(d, sub_rows),
    )


@lru_cache(maxsize=4096)
def polytope_faces(p: Polytope):
    """All nonempty faces (including the polytope itself), by tightness BFS."""
    if not polytope_is_nonempty(p):
        raise GeometryError("empty polytope has no faces")
    start = _tight_closure(p, frozenset())
    seen = {}
    queue = [start]
    visited = {start}
    while queue:
        tight = queue.pop()
        face = _face_from_tight(p, tight)
        if face is None:
            continue
        seen[tight] = face
        for j in range(len(p.constraints)):
            if j in tight or p.constraints[j].strict:
                continue
            bigger = _tight_closure(p, tight | {j})
            if bigger not in visited:
                visited.add(bigger)
                queue.append(bigger)
    faces = sorted(seen.values(), key=lambda f: (-f.dim, sorted(f.tight)))
    return tuple(faces)


def polytope_vertices(p: Polytope):
    return tuple(sorted(f.origin for f in polytope_faces(p) if f.dim == 0))


def local_cone(p: Polytope, point) -> Polytope:
    point = tuple(_frac(x) for x in point)
    if not p.contains(point):
        raise GeometryError("point not in polytope")
    rows = []
    for c in p.constraints:
        if c.value(point) == 0:
            rows.append((c.alpha, Fraction(0), False))
    return polytope(p.dim, rows)


def cone_ray_directions(cone: Polytope):
    """Primitive directions of the 1-dimensional faces of a cone at 0."""
    dirs = []
    for f in polytope_faces(cone):
        if f.dim != 1:
            continue
        d = tuple(f.basis[i][0] for i in range(cone.dim))
        # orient along the face: origin = t * d with t > 0
        t = None
        for i in range(cone.dim):
            if d[i] != 0:
                t = f.origin[i] / d[i]
                break
        if t is None or t == 0:
            continue
        if t < 0:
            d = tuple(-x for x in d)
        dirs.append(primitive(d))
    return sorted(set(dirs))


def is_standard_corner(p: Polytope, v) -> bool:
    v = tuple(_frac(x) for x in v)
    if v not in polytope_vertices(p):
        raise GeometryError("not a vertex")
    cone = local_cone(p, v)
    dirs = cone_ray_directions(cone)
    if len(dirs) != p.dim:
        return False
    return abs(det([list(d) for d in dirs])) == 1


@dataclass(frozen=True)
class IntegralAffineMap:
    """x |-> matrix @ x + shift with integer matrix and rational shift."""

    matrix: tuple
    shift: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix)
        )
        object.__setattr__(self, "shift", tuple(_frac(x) for x in self.shift))

    def apply(self, x):
        return tuple(
            self.shift[i] + sum(self.matrix[i][j] * x[j] for j in range(len(x)))
            for i in range(len(self.matrix))
        )

    def compose(self, other: "IntegralAffineMap") -> "IntegralAffineMap":
        """self after other: x |-> self(other(x))."""
        a = [
            [
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(len(other.matrix)))
                for j in range(len(other.matrix[0]))
            ]
            for i in range(len(self.matrix))
        ]
        b = self.apply(other.shift)
        return IntegralAffineMap(tuple(map(tuple, a)), b)


def identity_map(m) -> IntegralAffineMap:
    return IntegralAffineMap(
        tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m)),
        tuple(Fraction(0) for _ in range(m)),
    )


def map_image_constraints(phi: IntegralAffineMap, p: Polytope):
    """Constraint rows cutting out phi(P) when phi is unimodular."""
    n = len(phi.matrix)
    inv = _invert_unimodular(phi.matrix)
    rows = []
    for c in p.constraints:
        beta = tuple(
            sum(c.alpha[k] * inv[k][j] for k in range(n)) for j in range(n)
        )
        a = c.a - sum(
            c.alpha[k] * sum(Fraction(inv[k][j]) * phi.shift[j] for j in range(n))
            for k in range(n)
        )
        rows.append((beta, a, c.strict))
    return rows


def _invert_unimodular(mat):
    n = len(mat)
    d = det(mat)
    if abs(d) != 1:
        raise GeometryError("matrix not unimodular")
    # adjugate via cofactors (n <= 3 in practice, fine generally at desk scale)
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [mat[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = det(minor) if minor else Fraction(1)
            inv[j][i] = int(cof * (-1) ** (i + j) / d)
    return inv


def _sets_equal(rows1, rows2, dim) -> bool:
    for alpha, a, strict in rows2:
        if not exactlp.implies(rows1, alpha, a, strict=strict, dim=dim):
            return False
    for alpha, a, strict in rows1:
        if not exactlp.implies(rows2, alpha, a, strict=strict, dim=dim):
            return False
    return True


def integral_affine_iso(p: Polytope, q: Polytope):
    """A unimodular affine map carrying P onto Q, or None.

    Bounded combinatorial search anchored at vertex figures; correct for
    polytopes with at most 12 constraints that are either full spaces or have
    at least one vertex.  Other shapes raise ScopeError.
    """
    if p.dim != q.dim:
        return None
    m = p.dim
    if len(p.constraints) > 12 or len(q.constraints) > 12:
        raise ScopeError("isomorphism search limited to <= 12 constraints")
    if not p.constraints and not q.constraints:
        return identity_map(m)
    if not p.constraints or not q.constraints:
        return None
    vp = polytope_vertices(p)
    vq = polytope_vertices(q)
    if len(vp) != len(vq):
        return None
    if not vp:
        raise ScopeError("isomorphism search needs a vertex or a full space")
    anchor = vp[0]
    dirs_p = cone_ray_directions(local_cone(p, anchor))
    frame = None
    for sub in combinations(range(len(dirs_p)), m):
        mat = [list(dirs_p[i]) for i in sub]
        if det(mat) != 0:
            frame = [dirs_p[i] for i in sub]
            break
    if frame is None:
        raise ScopeError("degenerate vertex figure")
    d_mat = [[frame[j][i] for j in range(m)] for i in range(m)]  # columns = frame
    rows_q = q.constraint_rows()
    for w in vq:
        dirs_q = cone_ray_directions(local_cone(q, w))
        for imgs in permutations(dirs_q, m):
            e_mat = [[imgs[j][i] for j in range(m)] for i in range(m)]
            a = _solve_matrix(d_mat, e_mat)
            if a is None:
                continue
            if any(x != int(x) for row in a for x in row):
                continue
            a_int = [[int(x) for x in row] for row in a]
            if abs(det(a_int)) != 1:
                continue
            shift = tuple(
                w[i] - sum(a_int[i][j] * anchor[j] for j in range(m)) for i in range(m)
            )
            phi = IntegralAffineMap(tuple(map(tuple, a_int)), shift)
            if _sets_equal(map_image_constraints(phi, p), rows_q, m):
                return phi
    return None


def _solve_matrix(d_mat, e_mat):
    """A with A @ D = E, i.e. A = E @ D^-1, over Q; None if D singular."""
    m = len(d_mat)
    dd = det(d_mat)
    if dd == 0:
        return None
    cols = []
    for j in range(m):
        col = solve_rational(
            [[d_mat[i][k] for i in range(m)] for k in range(m)],
            [e_mat[i][j] for i in range(m)],
        )
        if col is None:
            return None
        cols.append(col)
    # cols[j] solves D^T x = E[:, j]; we want A = E D^{-1}: A[i][k] with
    # sum_k A[i][k] D[k][j] = E[i][j].  Solve per row instead.
    a = []
    for i in range(m):
        row = solve_rational(
            [[d_mat[k][j] for k in range(m)] for j in range(m)],
            [e_mat[i][j] for j in range(m)],
        )
        if row is None:
            return None
        a.append(list(row))
    return a


def polytope_is_bounded(p: Polytope) -> bool:
    rows = p.constraint_rows()
    for i in range(p.dim):
        for sign in (1, -1):
            obj = [0] * p.dim
            obj[i] = sign
            status, _, _ = exactlp.lp_max(obj, rows, p.dim)
            if status == exactlp.UNBOUNDED:
                return False
    return True


def _triangulate_full(p: Polytope):
    """Triangulation (lists of vertex tuples) of a full-dimensional bounded polytope."""
    faces = polytope_faces(p)
    top = max(f.dim for f in faces)
    if top == 0:
        return [[faces[0].origin]]
    verts = polytope_vertices(p)
    v0 = verts[0]
    simplices = []
    for f in faces:
        if f.dim != top - 1:
            continue
        tight_at_v0 = all(
            p.constraints[j].value(v0) == 0 for j in f.tight
        )
        if tight_at_v0:
            continue
        for s in _triangulate_full(f.poly):
            simplices.append([f.embed(y_pt) for y_pt in s] + [v0])
    return simplices


def polytope_volume(p: Polytope) -> Fraction:
    """Exact Euclidean volume of a bounded polytope with nonempty interior."""
    if not polytope_is_bounded(p):
        raise GeometryError("volume of unbounded polytope")
    if p.dim == 0:
        return Fraction(1)
    total = Fraction(0)
    fact = 1
    for k in range(2, p.dim + 1):
        fact *= k
    for s in _triangulate_full(p):
        if len(s) != p.dim + 1:
            continue
        mat = [
            [s[i + 1][j] - s[0][j] for j in range(p.dim)] for i in range(p.dim)
        ]
        total += abs(det(mat))
    return total / fact


class MalformedPiecesError(GeometryError):
    pass


def _canonical_hyperplane(alpha, a):
    g = vec_gcd(alpha)
    alpha = tuple(x // g for x in alpha)
    a = _frac(a) / g
    for x in alpha:
        if x > 0:
            return alpha, a
        if x < 0:
            return tuple(-y for y in alpha), -a
    return alpha, a


def validate_subdivision(p: Polytope, pieces) -> bool:
    """Pieces partition P: disjoint interiors, union P, meeting face-to-face."""
    if not pieces:
        raise MalformedPiecesError("no pieces")
    for q in pieces:
        if not isinstance(q, Polytope) or q.dim != p.dim:
            raise MalformedPiecesError("piece dimension mismatch")
        if not polytope_nonempty_interior(q):
            raise MalformedPiecesError("piece with empty interior")
    dim = p.dim
    prows = p.constraint_rows()
    # containment
    for q in pieces:
        qrows = q.constraint_rows()
        for alpha, a, strict in prows:
            if not exactlp.implies(qrows, alpha, a, strict=strict, dim=dim):
                return False
    # pairwise disjoint interiors
    for q1, q2 in combinations(pieces, 2):
        both = [(c.alpha, c.a, True) for c in q1.constraints] + [
            (c.alpha, c.a, True) for c in q2.constraints
        ]
        if exactlp.feasible_point(both, dim) is not None:
            return False
    # coverage: every full-dimensional arrangement cell inside P hits a piece
    planes = []
    seen = set()
    for q in list(pieces) + [p]:
        for c in q.constraints:
            key = _canonical_hyperplane(c.alpha, c.a)
            if key not in seen:
                seen.add(key)
                planes.append(key)

    def cells(idx, rows):
        if idx == len(planes):
            w = exactlp.feasible_point(rows, dim)
            if w is None:
                return True
            if not p.contains(w):
                return True
            return any(q.contains(w) for q in pieces)
        alpha, a = planes[idx]
        neg = (tuple(-x for x in alpha), -a, True)
        pos = (alpha, a, True)
        for side in (pos, neg):
            rows.append(side)
            feas = exactlp.feasible_point(rows, dim) is not None
            ok = True
            if feas:
                ok = cells(idx + 1, rows)
            rows.pop()
            if not ok:
                return False
        return True

    if not cells(0, [(c.alpha, c.a, True) for c in p.constraints]):
        return False
    # face-to-face
    for q1, q2 in combinations(pieces, 2):
        inter = q1.constraint_rows() + q2.constraint_rows()
        if exactlp.feasible_point(inter, dim) is None:
            continue
        for q in (q1, q2):
            tight = set()
            for j, c in enumerate(q.constraints):
                status, val, _ = exactlp.lp_max(list(c.alpha), inter, dim)
                if status == exactlp.OPTIMAL and val + c.a == 0:
                    tight.add(j)
            face_rows = q.constraint_rows() + [
                (tuple(-x for x in q.constraints[j].alpha), -q.constraints[j].a, False)
                for j in tight
            ]
            if not _sets_equal(face_rows, inter, dim):
                return False
    # volume additivity cross-check for bounded subdivisions
    if polytope_is_bounded(p):
        if polytope_volume(p) != sum(polytope_volume(q) for q in pieces):
            return False
    return True


@dataclass(frozen=True)
class MonoidElement:
    """The affine map x |-> a + x.alpha, nonnegative on its polytope."""

    a: Fraction
    alpha: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))

    def value(self, x):
        return self.a + sum(c * v for c, v in zip(self.alpha, x))


def monoid_element_valid(p: Polytope, e: MonoidElement) -> bool:
    return exactlp.implies(p.constraint_rows(), e.alpha, e.a, dim=p.dim)


def _cone_membership_test(cone: Polytope):
    rays = cone_ray_directions(cone)
    lineality = integer_kernel([list(c.alpha) for c in cone.constraints]) if cone.constraints else [
        tuple(1 if i == j else 0 for i in range(cone.dim)) for j in range(cone.dim)
    ]

    def member(beta):
        if any(sum(b * l for b, l in zip(beta, ell)) != 0 for ell in lineality):
            return False
        return all(sum(b * r for b, r in zip(beta, ray)) >= 0 for ray in rays)

    return member


def _extreme_generators(gens, dim):
    prim = sorted({primitive(g) for g in gens if any(g)})
    out = []
    for i, g in enumerate(prim):
        others = [h for j, h in enumerate(prim) if j != i]
        if not others:
            out.append(g)
            continue
        rows = []
        for k in range(dim):
            coeff = tuple(h[k] for h in others)
            rows.append((coeff, -Fraction(g[k]), False))
            rows.append((tuple(-c for c in coeff), Fraction(g[k]), False))
        for j in range(len(others)):
            e = tuple(1 if t == j else 0 for t in range(len(others)))
            rows.append((e, Fraction(0), False))
        if exactlp.feasible_point(rows, len(others)) is None:
            out.append(g)
    return out


def _rank(vectors):
    if not vectors:
        return 0
    mat = [[Fraction(x) for x in v] for v in vectors]
    cols = len(mat[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
    return r


def _span_coordinates(rays):
    """Pick an independent subset of rays as a rational working basis; return
    (basis, coords) where coords maps any vector of the span to its basis
    coordinates."""
    basis = []
    for r in rays:
        if _rank(basis + [r]) > len(basis):
            basis.append(r)
    mat = [[Fraction(basis[j][i]) for j in range(len(basis))] for i in range(len(basis[0]))]

    def coords(v):
        sol = solve_rational(mat, list(v))
        return sol

    return basis, coords


def _triangulate_cone(rays):
    """Split a pointed cone given by extreme rays into simplicial subcones."""
    d = _rank(rays)
    if len(rays) == d:
        return [list(rays)]
    basis, coords = _span_coordinates(rays)
    pts = [coords(r) for r in rays]
    if any(p is None for p in pts):
        raise GeometryError("ray outside span")
    r0 = 0
    subcones = []
    for sub in combinations(range(len(rays)), d - 1):
        if r0 in sub:
            continue
        # normal to the candidate facet within span coordinates
        normal = _facet_normal([pts[i] for i in sub], d)
        if normal is None:
            continue
        vals = [sum(n * x for n, x in zip(normal, pt)) for pt in pts]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            if all(v >= 0 for v in vals):
                side = vals
            else:
                side = [-v for v in vals]
            if side[r0] == 0:
                continue
            facet_rays = [rays[i] for i in range(len(rays)) if side[i] == 0]
            if _rank(facet_rays) != d - 1:
                continue
            for sc in _triangulate_cone(facet_rays):
                subcones.append(sc + [rays[r0]])
    # dedupe
    uniq = []
    seen = set()
    for sc in subcones:
        key = tuple(sorted(sc))
        if key not in seen:
            seen.add(key)
            uniq.append(sc)
    return uniq


def _lcm_den(row):
    out = 1
    for x in row:
        out = out * x.denominator // gcd(out, x.denominator)
    return out


def _facet_normal(pts, d):
    """A nonzero vector orthogonal to d-1 points in d-space, or None."""
    rows = [[Fraction(x) for x in p] for p in pts]
    if _rank(rows) != d - 1:
        return None
    scaled = []
    for row in rows:
        den = _lcm_den(row)
        scaled.append([int(x * den) for x in row])
    ker = integer_kernel(scaled)
    return ker[0] if ker else None


def _parallelepiped_points(ws, dim):
    """Integer ambient points sum(t_i w_i) with 0 <= t_i <= 1."""
    lo = [sum(min(0, w[k]) for w in ws) for k in range(dim)]
    hi = [sum(max(0, w[k]) for w in ws) for k in range(dim)]
    mat = [[Fraction(w[k]) for w in ws] for k in range(dim)]
    out = []
    for pt in product(*[range(lo[k], hi[k] + 1) for k in range(dim)]):
        sol = solve_rational(mat, list(pt))
        if sol is None:
            continue
        # verify (solve_rational zero-fills free vars; re-check the product)
        recon = [sum(mat[k][j] * sol[j] for j in range(len(ws))) for k in range(dim)]
        if any(recon[k] != pt[k] for k in range(dim)):
            continue
        if all(0 <= t <= 1 for t in sol):
            out.append(tuple(pt))
    return out


def hilbert_basis_dual(cone: Polytope):
    """Hilbert basis of {beta in Z^m : beta . x >= 0 on the cone}.

    The dual cone's generators are the cone's defining normals; candidates are
    collected from fundamental parallelepipeds of a triangulation and reduced
    to the unique irreducible set by pairwise subtraction.
    """
    dim = cone.dim
    gens = [c.alpha for c in cone.constraints]
    gens = [g for g in {primitive(g) for g in gens} if any(g)]
    if not gens:
        return []
    member = _cone_membership_test(cone)
    flipped = [member(tuple(-x for x in g)) for g in gens]
    if all(flipped):
        # pure lattice monoid (the cone is not full-dimensional and its dual
        # is a linear subspace): generators are a saturated basis with signs
        perp = integer_kernel([list(g) for g in gens])
        if perp:
            unit_basis = integer_kernel([list(v) for v in perp])
        else:
            unit_basis = [
                tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)
            ]
        out = []
        for u in unit_basis:
            out.append(tuple(u))
            out.append(tuple(-x for x in u))
        return sorted(set(out))
    if any(flipped):
        raise ScopeError("dual cone with mixed lineality is out of scope")
    extreme = _extreme_generators(gens, dim)
    candidates = set()
    for sc in _triangulate_cone(sorted(extreme)):
        for pt in _parallelepiped_points(sc, dim):
            if any(pt) and member(pt):
                candidates.add(pt)
    for g in extreme:
        candidates.add(g)
    basis = []
    for c in sorted(candidates):
        reducible = False
        for y in candidates:
            if y == c:
                continue
            diff = tuple(a - b for a, b in zip(c, y))
            if any(diff) and member(diff):
                reducible = True
                break
        if not reducible:
            basis.append(c)
    return sorted(basis)


def smooth_monomial_generators(p: Polytope):
    """Minimal generating set of the zero-achieving nonnegative affine maps.

    Computed facewise: for each minimal nonempty face F, the elements
    vanishing on F form the dual-cone monoid of the local cone there; their
    Hilbert bases, offsets restored, generate everything.
    """
    faces = polytope_faces(p)
    minimal = []
    for f in faces:
        if not any(other.tight > f.tight for other in faces):
            minimal.append(f)
    out = set()
    for f in minimal:
        cone = local_cone(p, f.origin)
        if not cone.constraints:
            continue
        for alpha in hilbert_basis_dual(cone):
            a = -sum(ai * xi for ai, xi in zip(alpha, f.origin))
            out.add((a, alpha))
    elems = [MonoidElement(a, alpha) for a, alpha in out]
    elems.sort(key=lambda e: (e.a, sum(abs(x) for x in e.alpha), e.alpha))
    return elems


@dataclass(frozen=True)
class FaceGluing:
    """Identification of a face of polytope `src` with a face of `dst`."""

    src: int
    dst: int
    map: IntegralAffineMap
    src_tight: frozenset = frozenset()
    dst_tight: frozenset = frozenset()


@dataclass(frozen=True)
class PolytopeComplex:
    polytopes: tuple
    gluings: tuple = ()

    def __post_init__(self):
        for q in self.polytopes:
            if not polytope_is_complete(q):
                raise GeometryError("complex admits only complete (closed) polytopes")
