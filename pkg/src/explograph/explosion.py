"""Explosion of normal-crossing combinatorics, refinements, and completions.

Divisor geometry enters purely through its nerve: the set of index sets whose
divisors intersect.  Exploding produces one orthant chart per maximal nerve
element, glued along shared coordinate faces.  Refinements subdivide tropical
parts; tropical completion replaces every polytope through a point by its
local cone there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import exactlp
from .affine import (
    FaceGluing,
    GeometryError,
    IntegralAffineMap,
    Polytope,
    PolytopeComplex,
    local_cone,
    orthant,
    polytope,
    polytope_faces,
    polytope_vertices,
    validate_subdivision,
    whole_space,
)
from .charts import Chart, ChartMorphism, ExplodedMonomial, make_morphism
from .intlinalg import mat_vec
from .semiring import ES_ONE, ExplodedScalar, GaussianRational


class NerveError(ValueError):
    pass


@dataclass(frozen=True)
class NCConfiguration:
    """k divisor components plus the nerve of their intersection pattern."""

    k: int
    nerve: frozenset
    labels: tuple = ()

    def __post_init__(self):
        nerve = frozenset(frozenset(s) for s in self.nerve)
        object.__setattr__(self, "nerve", nerve)
        if frozenset() not in nerve:
            raise NerveError("nerve must contain the empty set")
        for s in nerve:
            for i in s:
                if not (1 <= i <= self.k):
                    raise NerveError(f"nerve index {i} outside 1..{self.k}")
            for i in s:
                if s - {i} not in nerve:
                    raise NerveError("nerve not downward closed")
        for i in range(1, self.k + 1):
            if frozenset({i}) not in nerve:
                raise NerveError(f"missing singleton {{{i}}} for component {i}")

    def maximal(self):
        out = []
        for s in self.nerve:
            if not any(s < t for t in self.nerve):
                out.append(tuple(sorted(s)))
        return sorted(out)

    def link(self, i: int) -> "NCConfiguration":
        """Induced configuration on divisor i: sets S with S + {i} in the nerve."""
        members = [s - {i} for s in self.nerve if i in s]
        others = sorted({j for s in members for j in s})
        relabel = {j: t + 1 for t, j in enumerate(others)}
        new_nerve = {frozenset(relabel[j] for j in s) for s in members}
        new_nerve.add(frozenset())
        return NCConfiguration(len(others), frozenset(new_nerve))


def nc_configuration(k, nerve_sets) -> NCConfiguration:
    return NCConfiguration(k, frozenset(frozenset(s) for s in nerve_sets))


@dataclass(frozen=True)
class ExplodedComplex:
    """A polytope complex with one chart per maximal polytope and glued charts."""

    complex: PolytopeComplex
    charts: tuple
    chart_gluings: tuple = ()

    @property
    def polytopes(self):
        return self.complex.polytopes


def _face_chart_morphism(src_poly: Polytope, dst_chart: Chart, ident: FaceGluing):
    """Chart morphism realizing an ambient face identification.

    The source is the identified face re-embedded as its own chart; entries are
    the dst coordinates pulled back through embed-then-map.
    """
    faces = polytope_faces(src_poly)
    face = None
    for f in faces:
        if f.tight == ident.src_tight:
            face = f
            break
    if face is None:
        raise GeometryError("gluing references a non-face tightness set")
    face_chart = Chart(0, face.poly)
    a, b = ident.map.matrix, ident.map.shift
    m = src_poly.dim
    entries = []
    for r in range(len(a)):
        shift = b[r] + sum(Fraction(a[r][i]) * face.origin[i] for i in range(m))
        alpha = tuple(
            sum(a[r][i] * face.basis[i][k] for i in range(m)) for k in range(face.dim)
        )
        entries.append(
            ExplodedMonomial(ExplodedScalar(GaussianRational(Fraction(1)), shift), alpha)
        )
    return make_morphism(face_chart, dst_chart, entries)


def _build_exploded(polytopes, gluings, n_factors=None):
    charts = tuple(Chart(0 if n_factors is None else n_factors[i], p)
                   for i, p in enumerate(polytopes))
    cx = PolytopeComplex(tuple(polytopes), tuple(gluings))
    morphs = tuple(
        _face_chart_morphism(polytopes[g.src], charts[g.dst], g) for g in gluings
    )
    return ExplodedComplex(cx, charts, morphs)


def explode_nc(cfg: NCConfiguration) -> ExplodedComplex:
    """One orthant chart per maximal nerve element, glued along shared coordinates."""
    maximal = cfg.maximal()
    polys = [orthant(len(one)) for one in maximal]
    gluings = []
    for i, big_i in enumerate(maximal):
        for j, big_j in enumerate(maximal):
            if i == j:
                continue
            shared = sorted(set(big_i) & set(big_j))
            if frozenset(shared) not in cfg.nerve:
                continue
            pos_i = {c: t for t, c in enumerate(big_i)}
            pos_j = {c: t for t, c in enumerate(big_j)}
            mat = [
                [1 if (c in shared and pos_i[c] == s) else 0 for s in range(len(big_i))]
                for c in [big_j[r] for r in range(len(big_j))]
            ]
            src_tight = frozenset(pos_i[c] for c in big_i if c not in shared)
            dst_tight = frozenset(pos_j[c] for c in big_j if c not in shared)
            gluings.append(
                FaceGluing(
                    src=i,
                    dst=j,
                    map=IntegralAffineMap(
                        tuple(map(tuple, mat)), tuple(Fraction(0) for _ in big_j)
                    ),
                    src_tight=src_tight,
                    dst_tight=dst_tight,
                )
            )
    return _build_exploded(polys, gluings)


def trivial_torus_complex(m: int) -> ExplodedComplex:
    """The complex of T^m: a single chart with tropical part all of R^m."""
    return _build_exploded([whole_space(m)], [])


class RefinementError(GeometryError):
    pass


def refine(cx: ExplodedComplex, subdivisions) -> ExplodedComplex:
    """Subdivide each maximal polytope; pieces become the new charts.

    `subdivisions` maps polytope index -> list of pieces; omitted indices keep
    the trivial subdivision.  Pieces must partition each polytope face-to-face
    and agree across glued faces.
    """
    old = cx.complex
    pieces_by_poly = {}
    for idx, p in enumerate(old.polytopes):
        pieces = list(subdivisions.get(idx, [p]))
        if pieces != [p] and not validate_subdivision(p, pieces):
            raise RefinementError(f"invalid subdivision of polytope {idx}")
        pieces_by_poly[idx] = pieces
    new_polys = []
    owner = []
    for idx in range(len(old.polytopes)):
        for q in pieces_by_poly[idx]:
            owner.append(idx)
            new_polys.append(q)
    offsets = {}
    pos = 0
    for idx in range(len(old.polytopes)):
        offsets[idx] = pos
        pos += len(pieces_by_poly[idx])
    gluings = []
    # internal gluings: adjacent pieces of one old polytope share a facet
    for idx in range(len(old.polytopes)):
        pieces = pieces_by_poly[idx]
        dim = old.polytopes[idx].dim
        for a in range(len(pieces)):
            for b in range(len(pieces)):
                if a == b:
                    continue
                inter = pieces[a].constraint_rows() + pieces[b].constraint_rows()
                if exactlp.feasible_point(inter, dim) is None:
                    continue
                ta = _tight_on(pieces[a], inter, dim)
                tb = _tight_on(pieces[b], inter, dim)
                if _face_dim(pieces[a], ta) != dim - 1:
                    continue
                gluings.append(
                    FaceGluing(
                        src=offsets[idx] + a,
                        dst=offsets[idx] + b,
                        map=_identity_ambient(dim),
                        src_tight=ta,
                        dst_tight=tb,
                    )
                )
    # gluings across old identifications
    for g in old.gluings:
        src_pieces = pieces_by_poly[g.src]
        dst_pieces = pieces_by_poly[g.dst]
        sdim = old.polytopes[g.src].dim
        src_face_rows = _face_rows(old.polytopes[g.src], g.src_tight)
        for a, qa in enumerate(src_pieces):
            part = qa.constraint_rows() + src_face_rows
            w = exactlp.feasible_point(part, sdim)
            if w is None:
                continue
            img_rows = _image_rows_through(g.map, part)
            target = None
            for b, qb in enumerate(dst_pieces):
                if all(
                    exactlp.implies(img_rows, c.alpha, c.a, strict=False,
                                    dim=len(g.map.matrix))
                    for c in qb.constraints
                ):
                    target = b
                    break
            if target is None:
                raise RefinementError("subdivisions disagree across a glued face")
            ta = _tight_on(qa, part, sdim)
            tb_rows = dst_pieces[target].constraint_rows()
            tb = _tight_on(dst_pieces[target], img_rows, len(g.map.matrix))
            gluings.append(
                FaceGluing(
                    src=offsets[g.src] + a,
                    dst=offsets[g.dst] + target,
                    map=g.map,
                    src_tight=ta,
                    dst_tight=tb,
                )
            )
    n_factors = [cx.charts[owner[i]].n for i in range(len(new_polys))]
    return _build_exploded(new_polys, gluings, n_factors)


def _identity_ambient(m):
    return IntegralAffineMap(
        tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m)),
        tuple(Fraction(0) for _ in range(m)),
    )


def _tight_on(p: Polytope, rows, dim):
    tight = set()
    for j, c in enumerate(p.constraints):
        status, val, _ = exactlp.lp_max(list(c.alpha), rows, dim)
        if status == exactlp.OPTIMAL and val + c.a == 0:
            tight.add(j)
    return frozenset(tight)


def _face_dim(p: Polytope, tight):
    for f in polytope_faces(p):
        if f.tight == tight:
            return f.dim
    return None


def _face_rows(p: Polytope, tight):
    rows = list(p.constraint_rows())
    for j in sorted(tight):
        c = p.constraints[j]
        rows.append((tuple(-x for x in c.alpha), -c.a, False))
    return rows


def _image_rows_through(phi: IntegralAffineMap, rows):
    """Rows cutting out phi(S) inside the target when phi restricted to the
    affine span of S is injective; computed by eliminating source variables."""
    # encode {(x, y) : x in S, y = phi(x)} and project onto y by Fourier-Motzkin
    m = len(phi.matrix[0]) if phi.matrix else 0
    n = len(phi.matrix)
    joint = []
    for alpha, a, strict in rows:
        joint.append((tuple(alpha) + tuple(0 for _ in range(n)), a, strict))
    for r in range(n):
        row = tuple(phi.matrix[r][j] for j in range(m)) + tuple(
            -1 if t == r else 0 for t in range(n)
        )
        joint.append((row, phi.shift[r], False))
        joint.append((tuple(-x for x in row), -phi.shift[r], False))
    rows_now = [([Fraction(c) for c in alpha], Fraction(a), strict) for alpha, a, strict in joint]
    for var in range(m):
        lower, upper, rest = [], [], []
        for alpha, a, strict in rows_now:
            c = alpha[var]
            if c > 0:
                lower.append((alpha, a, strict))
            elif c < 0:
                upper.append((alpha, a, strict))
            else:
                rest.append((alpha, a, strict))
        new_rows = list(rest)
        for la, lb, ls in lower:
            for ua, ub, us in upper:
                cl = la[var]
                cu = -ua[var]
                alpha = [cu * x + cl * y for x, y in zip(la, ua)]
                new_rows.append((alpha, cu * lb + cl * ub, ls or us))
        rows_now = new_rows
    out = []
    for alpha, a, strict in rows_now:
        beta = tuple(alpha[m + t] for t in range(n))
        if all(x == 0 for x in beta):
            continue
        out.append((beta, a, strict))
    return out


def check_piece_interior_partition(cx: ExplodedComplex, samples) -> bool:
    """Every sampled point lies in at most one piece interior and in >= 1 piece."""
    for pt in samples:
        holders = [p for p in cx.polytopes if p.contains(pt)]
        if not holders:
            return False
        strict_holders = 0
        for p in holders:
            if all(c.value(pt) > 0 for c in p.constraints):
                strict_holders += 1
        if strict_holders > 1:
            return False
    return True


@dataclass(frozen=True)
class RendComponent:
    vector: tuple
    kind: str           # "base" | "divisor_explosion" | "needs_refinement"
    divisor: int = 0
    induced: NCConfiguration = None


def rend_components(cfg: NCConfiguration, max_order: int):
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    out = []
    for vec in product(range(max_order + 1), repeat=cfg.k):
        support = frozenset(i + 1 for i, v in enumerate(vec) if v > 0)
        if support not in cfg.nerve:
            continue
        if not support:
            out.append(RendComponent(vec, "base"))
        elif len(support) == 1:
            (i,) = support
            out.append(RendComponent(vec, "divisor_explosion", i, cfg.link(i)))
        else:
            out.append(RendComponent(vec, "needs_refinement"))
    return out


def locate_point_orbit(cx: ExplodedComplex, poly_idx: int, point):
    """All (polytope index, coordinates) identified with the given point."""
    point = tuple(Fraction(x) for x in point)
    if not cx.polytopes[poly_idx].contains(point):
        raise GeometryError("point not in the stated polytope")
    seen = {(poly_idx, point)}
    frontier = [(poly_idx, point)]
    while frontier:
        idx, pt = frontier.pop()
        for g in cx.complex.gluings:
            if g.src != idx:
                continue
            src_poly = cx.polytopes[idx]
            on_face = all(
                src_poly.constraints[j].value(pt) == 0 for j in g.src_tight
            )
            if not on_face:
                continue
            img = g.map.apply(pt)
            key = (g.dst, tuple(img))
            if key not in seen and cx.polytopes[g.dst].contains(img):
                seen.add(key)
                frontier.append(key)
    return sorted(seen)


def tropical_completion(cx: ExplodedComplex, poly_idx: int, point) -> ExplodedComplex:
    """Complex of local cones at every representative of the point."""
    orbit = locate_point_orbit(cx, poly_idx, point)
    cones = [local_cone(cx.polytopes[idx], pt) for idx, pt in orbit]
    index_of = {key: i for i, key in enumerate(orbit)}
    gluings = []
    for g in cx.complex.gluings:
        for (idx, pt), new_src in index_of.items():
            if g.src != idx:
                continue
            src_poly = cx.polytopes[idx]
            if not all(src_poly.constraints[j].value(pt) == 0 for j in g.src_tight):
                continue
            img = tuple(g.map.apply(pt))
            if (g.dst, img) not in index_of:
                continue
            new_dst = index_of[(g.dst, img)]
            lin = IntegralAffineMap(
                g.map.matrix, tuple(Fraction(0) for _ in g.map.matrix)
            )
            src_cone = cones[new_src]
            tight_src = frozenset(
                j for j, c in enumerate(src_cone.constraints)
                if any(c.alpha == src_poly.constraints[t].alpha for t in g.src_tight)
            )
            dst_cone = cones[new_dst]
            dst_poly = cx.polytopes[g.dst]
            tight_dst = frozenset(
                j for j, c in enumerate(dst_cone.constraints)
                if any(c.alpha == dst_poly.constraints[t].alpha for t in g.dst_tight)
            )
            gluings.append(
                FaceGluing(new_src, new_dst, lin, tight_src, tight_dst)
            )
    n_factors = [cx.charts[idx].n for idx, _ in orbit]
    return _build_exploded(cones, gluings, n_factors)


def degeneration_fiber_complex(cfg: NCConfiguration) -> PolytopeComplex:
    """Dual complex of a degeneration fiber, realized by unit simplices."""
    maximal = cfg.maximal()

    def corner(big, i):
        d = len(big) - 1
        t = big.index(i)
        if t == 0:
            return tuple(Fraction(0) for _ in range(d))
        return tuple(Fraction(1 if s == t - 1 else 0) for s in range(d))

    def simplex(big):
        d = len(big) - 1
        rows = []
        for s in range(d):
            rows.append((tuple(1 if t == s else 0 for t in range(d)), Fraction(0), False))
        if d:
            rows.append((tuple(-1 for _ in range(d)), Fraction(1), False))
        return polytope(d, rows)

    polys = [simplex(big) for big in maximal]
    gluings = []
    for i, big_i in enumerate(maximal):
        for j, big_j in enumerate(maximal):
            if i == j:
                continue
            shared = sorted(set(big_i) & set(big_j))
            if not shared or frozenset(shared) not in cfg.nerve:
                continue
            di = len(big_i) - 1
            dj = len(big_j) - 1
            first_i = big_i[0]
            if first_i in shared:
                shift = corner(big_j, first_i)
            else:
                shift = tuple(Fraction(0) for _ in range(dj))
            mat = [[0] * di for _ in range(dj)]
            for c in shared:
                if c == first_i:
                    continue
                col = big_i.index(c) - 1
                target = corner(big_j, c)
                for r in range(dj):
                    mat[r][col] = int(target[r] - shift[r])
            src_tight = _simplex_face_tight(big_i, shared)
            dst_tight = _simplex_face_tight(big_j, shared)
            gluings.append(
                FaceGluing(
                    i,
                    j,
                    IntegralAffineMap(tuple(map(tuple, mat)), shift),
                    src_tight,
                    dst_tight,
                )
            )
    return PolytopeComplex(tuple(polys), tuple(gluings))


def _simplex_face_tight(big, shared):
    d = len(big) - 1
    tight = set()
    for s in range(1, len(big)):
        if big[s] not in shared:
            tight.add(s - 1)  # constraint y_{s-1} >= 0 is tight
    if big[0] not in shared:
        tight.add(d)  # the sum constraint is tight
    return frozenset(tight)


def exploded_degeneration_fiber(cfg: NCConfiguration) -> ExplodedComplex:
    cx = degeneration_fiber_complex(cfg)
    return _build_exploded(list(cx.polytopes), list(cx.gluings))
