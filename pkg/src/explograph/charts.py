"""Exploded coordinate charts R^n x T_P and their monomial algebra.

A chart point has one exploded-scalar unit per tropical coordinate (tropical
part constrained to P) plus a real vector.  Only the monomial part of exploded
functions is computed on; an opaque formal smooth factor rides along
symbolically and composes as a string.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exactlp
from .affine import (
    GeometryError,
    IntegralAffineMap,
    MonoidElement,
    Polytope,
    halfline,
    polytope,
    smooth_monomial_generators,
)
from .intlinalg import integer_kernel
from .semiring import (
    ES_ONE,
    ExplodedScalar,
    GaussianRational,
    es_mul,
    es_smooth_part,
)


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class Chart:
    """R^n x T_P with the smooth-monomial generators of P cached."""

    n: int
    poly: Polytope
    generators: tuple = None

    def __post_init__(self):
        if self.generators is None:
            object.__setattr__(
                self, "generators", tuple(smooth_monomial_generators(self.poly))
            )

    @property
    def tropical_dim(self) -> int:
        return self.poly.dim

    def dimension(self) -> int:
        return self.n + 2 * self.poly.dim


@dataclass(frozen=True)
class ExplodedMonomial:
    """c[e^a] z^alpha, optionally times an opaque formal smooth factor."""

    coeff: ExplodedScalar
    alpha: tuple
    formal: str = "1"

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))
        if not self.coeff.is_unit():
            raise ChartError("monomial coefficient must be a unit")

    def tropical_row(self):
        """(alpha, a): the affine map x |-> a + x.alpha."""
        return self.alpha, self.coeff.exponent

    def is_smooth_monomial(self, p: Polytope) -> bool:
        return exactlp.implies(
            p.constraint_rows(), self.alpha, self.coeff.exponent, dim=p.dim
        )


def monomial(coeff: ExplodedScalar, alpha) -> ExplodedMonomial:
    return ExplodedMonomial(coeff, tuple(alpha))


def coordinate_monomial(m: int, i: int) -> ExplodedMonomial:
    return ExplodedMonomial(ES_ONE, tuple(1 if j == i else 0 for j in range(m)))


def monoid_element_monomial(e: MonoidElement) -> ExplodedMonomial:
    return ExplodedMonomial(ExplodedScalar(GaussianRational(Fraction(1)), e.a), e.alpha)


@dataclass(frozen=True)
class ChartPoint:
    tropical: tuple
    real: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "tropical", tuple(self.tropical))
        object.__setattr__(self, "real", tuple(Fraction(x) for x in self.real))
        for w in self.tropical:
            if not w.is_unit():
                raise ChartError("chart point coordinates must be units")

    def tropical_part(self):
        return tuple(w.exponent for w in self.tropical)


def chart_contains(chart: Chart, pt: ChartPoint) -> bool:
    if len(pt.tropical) != chart.tropical_dim or len(pt.real) != chart.n:
        return False
    return chart.poly.contains(pt.tropical_part())


def evaluate_monomial(mon: ExplodedMonomial, pt: ChartPoint) -> ExplodedScalar:
    out = mon.coeff
    for w, k in zip(pt.tropical, mon.alpha):
        if k:
            out = es_mul(out, w ** k)
    return out


def smooth_coordinates(chart: Chart, pt: ChartPoint):
    if not chart_contains(chart, pt):
        raise ChartError("point not in chart")
    vals = []
    for g in chart.generators:
        vals.append(es_smooth_part(evaluate_monomial(monoid_element_monomial(g), pt)))
    return tuple(vals)


@dataclass(frozen=True)
class ChartMorphism:
    src: Chart
    dst: Chart
    entries: tuple

    def tropical_part(self) -> IntegralAffineMap:
        rows = []
        shift = []
        for e in self.entries:
            alpha, a = e.tropical_row()
            rows.append(alpha)
            shift.append(a)
        return IntegralAffineMap(tuple(rows), tuple(shift))

    def apply(self, pt: ChartPoint) -> ChartPoint:
        return ChartPoint(tuple(evaluate_monomial(e, pt) for e in self.entries), pt.real[: self.dst.n])


def make_morphism(src: Chart, dst: Chart, entries) -> ChartMorphism:
    entries = tuple(entries)
    if len(entries) != dst.tropical_dim:
        raise ChartError("entry count must match target tropical dimension")
    src_rows = src.poly.constraint_rows()
    m = src.poly.dim
    for c in dst.poly.constraints:
        beta = tuple(
            sum(c.alpha[i] * entries[i].alpha[k] for i in range(len(entries)))
            for k in range(m)
        )
        a = c.a + sum(
            c.alpha[i] * entries[i].coeff.exponent for i in range(len(entries))
        )
        if all(x == 0 for x in beta):
            ok = a > 0 if c.strict else a >= 0
        else:
            ok = exactlp.implies(src_rows, beta, a, strict=c.strict, dim=m)
        if not ok:
            raise ChartError("tropical part leaves target polytope")
    return ChartMorphism(src, dst, entries)


def identity_morphism(chart: Chart) -> ChartMorphism:
    m = chart.tropical_dim
    return ChartMorphism(chart, chart, tuple(coordinate_monomial(m, i) for i in range(m)))


def _compose_formal(g_formal: str, f_entries) -> str:
    inner = [e.formal for e in f_entries if e.formal != "1"]
    if g_formal == "1" and not inner:
        return "1"
    pieces = g_formal if g_formal != "1" else ""
    if inner:
        sub = "*".join(inner)
        pieces = f"({pieces})o({sub})" if pieces else f"({sub})"
    return pieces or "1"


def compose_morphisms(f: ChartMorphism, g: ChartMorphism) -> ChartMorphism:
    """g after f.  Exact monomial substitution; formal factors compose symbolically."""
    if f.dst != g.src:
        raise ChartError("chart mismatch in composition")
    new_entries = []
    for e in g.entries:
        coeff = e.coeff
        alpha = [0] * f.src.poly.dim
        used = []
        for i, k in enumerate(e.alpha):
            if k == 0:
                continue
            fe = f.entries[i]
            used.append(fe)
            coeff = es_mul(coeff, fe.coeff ** k)
            for t in range(len(alpha)):
                alpha[t] += k * fe.alpha[t]
        new_entries.append(
            ExplodedMonomial(coeff, tuple(alpha), _compose_formal(e.formal, used))
        )
    return ChartMorphism(f.src, g.dst, tuple(new_entries))


def standard_target() -> Chart:
    return Chart(0, halfline())


class EmptyFiberError(ChartError):
    pass


def _deterministic_point(rows, dim):
    """Coordinatewise clamp-to-zero point of a nonempty rational polyhedron."""
    fixed = []
    for i in range(dim):
        obj = [0] * dim
        obj[i] = 1
        base = rows + fixed
        status_lo, lo, _ = exactlp.lp_min(obj, base, dim)
        status_hi, hi, _ = exactlp.lp_max(obj, base, dim)
        if status_lo != exactlp.OPTIMAL:
            lo = None
        if status_hi != exactlp.OPTIMAL:
            hi = None
        x = Fraction(0)
        if lo is not None and lo > 0:
            x = lo
        elif hi is not None and hi < 0:
            x = hi
        e = tuple(1 if j == i else 0 for j in range(dim))
        fixed.append((e, -x, False))
        fixed.append((tuple(-v for v in e), x, False))
    pt = exactlp.feasible_point(rows + fixed, dim)
    if pt is None:
        raise GeometryError("deterministic point extraction failed")
    return pt


def monomial_fiber_data(f: ChartMorphism, value: ExplodedScalar):
    """(chart, origin, basis) for the fiber of a single-monomial map over a unit value."""
    if len(f.entries) != 1:
        raise ChartError("fiber requires a single-entry monomial morphism")
    if not value.is_unit():
        raise ChartError("fiber value must be a unit")
    if value.exponent < 0:
        raise ChartError("fiber value has tropical part outside [0,inf)")
    mon = f.entries[0]
    p = f.src.poly
    m = p.dim
    t = value.exponent - mon.coeff.exponent
    if all(x == 0 for x in mon.alpha):
        if mon.coeff.exponent == value.exponent:
            return f.src, tuple(Fraction(0) for _ in range(m)), tuple(
                tuple(1 if i == j else 0 for j in range(m)) for i in range(m)
            )
        raise EmptyFiberError("empty fiber")
    slice_rows = p.constraint_rows() + [
        (mon.alpha, -t, False),
        (tuple(-x for x in mon.alpha), t, False),
    ]
    if exactlp.feasible_point(slice_rows, m) is None:
        raise EmptyFiberError("empty fiber")
    origin = _deterministic_point(slice_rows, m)
    kernel = integer_kernel([list(mon.alpha)])
    d = len(kernel)
    basis = tuple(tuple(kernel[j][i] for j in range(d)) for i in range(m))
    sub_rows = []
    for c in p.constraints:
        beta = tuple(
            sum(c.alpha[i] * kernel[k][i] for i in range(m)) for k in range(d)
        )
        a0 = c.a + sum(c.alpha[i] * origin[i] for i in range(m))
        if all(x == 0 for x in beta):
            if not (a0 > 0 if c.strict else a0 >= 0):
                raise EmptyFiberError("empty fiber")
            continue
        sub_rows.append((beta, a0, c.strict))
    chart = Chart(f.src.n, polytope(d, sub_rows))
    return chart, origin, basis


def fiber_of_monomial_map(f: ChartMorphism, value: ExplodedScalar) -> Chart:
    chart, _, _ = monomial_fiber_data(f, value)
    return chart


def restrict_monoid_element(e: MonoidElement, origin, basis) -> MonoidElement:
    """Pull a nonnegative affine map back along y |-> origin + basis @ y."""
    m = len(origin)
    d = len(basis[0]) if basis else 0
    beta = tuple(sum(e.alpha[i] * basis[i][k] for i in range(m)) for k in range(d))
    a = e.a + sum(e.alpha[i] * origin[i] for i in range(m))
    return MonoidElement(a, beta)
