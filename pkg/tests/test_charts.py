import random
from fractions import Fraction

import pytest

from explograph.affine import (
    MonoidElement,
    integral_affine_iso,
    interval,
    orthant,
    polytope_vertices,
    whole_space,
)
from explograph.charts import (
    Chart,
    ChartError,
    ChartPoint,
    EmptyFiberError,
    ExplodedMonomial,
    chart_contains,
    compose_morphisms,
    coordinate_monomial,
    evaluate_monomial,
    fiber_of_monomial_map,
    identity_morphism,
    make_morphism,
    monomial_fiber_data,
    restrict_monoid_element,
    smooth_coordinates,
    standard_target,
)
from explograph.semiring import ES_ONE, es, es_smooth_part, es_tropical_part, qq

QUAD = Chart(0, orthant(2))
LINE = Chart(0, whole_space(1))


def seg_chart(l) -> Chart:
    return Chart(0, interval(0, l))


def test_chart_dimension():
    assert QUAD.dimension() == 4
    assert seg_chart(3).dimension() == 2
    assert Chart(2, whole_space(1)).dimension() == 4


def test_evaluate_monomial():
    z1z2 = ExplodedMonomial(ES_ONE, (1, 1))
    p = ChartPoint((es(2, 0, 1), es(3, 0, 2)))
    assert evaluate_monomial(z1z2, p) == es(6, 0, 3)

    l = Fraction(2)
    mon = ExplodedMonomial(es(1, 0, l), (-1,))
    pt = ChartPoint((es(4, 0, l),))
    assert evaluate_monomial(mon, pt) == es(Fraction(1, 4), 0, 0)

    const = ExplodedMonomial(ES_ONE, (0, 0))
    assert evaluate_monomial(const, p) == ES_ONE


def test_monomial_multiplicativity_and_tropical_part():
    rng = random.Random(3)
    for _ in range(60):
        a1 = tuple(rng.randrange(-3, 4) for _ in range(2))
        a2 = tuple(rng.randrange(-3, 4) for _ in range(2))
        m1 = ExplodedMonomial(es(2, 1, rng.randrange(-3, 4)), a1)
        m2 = ExplodedMonomial(es(1, -1, rng.randrange(-3, 4)), a2)
        prod = ExplodedMonomial(
            m1.coeff * m2.coeff, tuple(x + y for x, y in zip(a1, a2))
        )
        pt = ChartPoint(
            (es(rng.randrange(1, 5), 0, rng.randrange(0, 4)),
             es(0, rng.randrange(1, 5), rng.randrange(0, 4)))
        )
        lhs = evaluate_monomial(prod, pt)
        rhs = evaluate_monomial(m1, pt) * evaluate_monomial(m2, pt)
        assert lhs == rhs
        alpha, a = m1.tropical_row()
        assert es_tropical_part(evaluate_monomial(m1, pt)) == a + sum(
            x * w for x, w in zip(alpha, pt.tropical_part())
        )


def test_smooth_coordinates_segment():
    l = Fraction(2)
    chart = seg_chart(l)
    # at exponent 0 the z-generator is visible, the other dies
    assert smooth_coordinates(chart, ChartPoint((es(4, 0, 0),))) == (qq(4), qq(0))
    # interior exponent: the node point (0, 0)
    assert smooth_coordinates(chart, ChartPoint((es(5, 0, 1),))) == (qq(0), qq(0))
    assert smooth_coordinates(Chart(0, orthant(1)), ChartPoint((es(5, 0, 0),))) == (qq(5),)


def test_smooth_monomial_nonzero_iff_tropical_zero():
    chart = seg_chart(Fraction(3))
    for g in chart.generators:
        for expo in (Fraction(0), Fraction(1), Fraction(3), Fraction(1, 2)):
            pt = ChartPoint((es(7, 0, expo),))
            from explograph.charts import monoid_element_monomial

            val = evaluate_monomial(monoid_element_monomial(g), pt)
            smooth = es_smooth_part(val)
            assert (not smooth.is_zero()) == (es_tropical_part(val) == 0)


def test_make_morphism_and_errors():
    f = make_morphism(QUAD, standard_target(), [ExplodedMonomial(ES_ONE, (1, 1))])
    trop = f.tropical_part()
    assert trop.matrix == ((1, 1),)
    ident = identity_morphism(QUAD)
    assert ident.tropical_part().matrix == ((1, 0), (0, 1))
    with pytest.raises(ChartError):
        make_morphism(QUAD, standard_target(), [ExplodedMonomial(es(1, 0, -1), (0, 0))])


def test_compose_morphisms():
    t = LINE
    sq = make_morphism(t, t, [ExplodedMonomial(ES_ONE, (2,))])
    cube = make_morphism(t, t, [ExplodedMonomial(ES_ONE, (3,))])
    both = compose_morphisms(cube, sq)  # z -> z^3 then z -> z^2
    assert both.entries[0].alpha == (6,)
    f = make_morphism(QUAD, QUAD, [coordinate_monomial(2, 0), ExplodedMonomial(es(1, 0, 2), (0, 1))])
    g = make_morphism(QUAD, standard_target(), [ExplodedMonomial(ES_ONE, (1, 1))])
    gf = compose_morphisms(f, g)
    assert gf.entries[0].alpha == (1, 1)
    assert gf.entries[0].coeff == es(1, 0, 2)
    trop = gf.tropical_part()
    assert trop.matrix == ((1, 1),) and trop.shift == (Fraction(2),)
    ident = identity_morphism(QUAD)
    assert compose_morphisms(ident, f).entries == f.entries


def test_tropical_functoriality_random():
    rng = random.Random(5)
    t2 = Chart(0, whole_space(2))
    for _ in range(40):
        f_entries = [
            ExplodedMonomial(es(1, 0, rng.randrange(-2, 3)), (rng.randrange(-2, 3), rng.randrange(-2, 3)))
            for _ in range(2)
        ]
        g_entries = [
            ExplodedMonomial(es(1, 0, rng.randrange(-2, 3)), (rng.randrange(-2, 3), rng.randrange(-2, 3)))
            for _ in range(2)
        ]
        f = make_morphism(t2, t2, f_entries)
        g = make_morphism(t2, t2, g_entries)
        gf = compose_morphisms(f, g)
        x = tuple(Fraction(rng.randrange(-5, 6)) for _ in range(2))
        assert gf.tropical_part().apply(x) == g.tropical_part().apply(
            f.tropical_part().apply(x)
        )


def test_formal_factor_composition():
    t = LINE
    f = make_morphism(t, t, [ExplodedMonomial(ES_ONE, (1,), formal="h")])
    g = make_morphism(t, t, [ExplodedMonomial(ES_ONE, (1,))])
    gf = compose_morphisms(f, g)
    assert gf.entries[0].formal == "(h)"
    ff = compose_morphisms(f, f)
    assert "h" in ff.entries[0].formal
    plain = compose_morphisms(g, g)
    assert plain.entries[0].formal == "1"


def node_map():
    return make_morphism(QUAD, standard_target(), [ExplodedMonomial(ES_ONE, (1, 1))])


def test_fiber_node_model():
    f = node_map()
    for l in (Fraction(1), Fraction(3), Fraction(7, 2)):
        chart, origin, basis = monomial_fiber_data(f, es(1, 0, l))
        assert chart.poly.dim == 1
        assert integral_affine_iso(chart.poly, interval(0, l)) is not None
        restricted = {
            restrict_monoid_element(MonoidElement(0, (1, 0)), origin, basis),
            restrict_monoid_element(MonoidElement(0, (0, 1)), origin, basis),
        }
        assert set(chart.generators) == restricted
        # smooth coordinates multiply to zero everywhere on the fiber chart
        for expo in sorted({Fraction(0), l, l / 2, l / 3}):
            for pt_val in (es(1, 0, expo), es(2, -3, expo)):
                if not chart.poly.contains((expo,)):
                    continue
                z1, z2 = smooth_coordinates(chart, ChartPoint((pt_val,)))
                assert (z1 * z2).is_zero()


def test_fiber_over_unit_exponent_zero():
    f = node_map()
    chart, origin, basis = monomial_fiber_data(f, es(5, 0, 0))
    assert polytope_vertices(chart.poly) == ((Fraction(0),),)
    assert chart.poly.dim == 1
    # single point polytope: no interior
    from explograph.affine import polytope_nonempty_interior

    assert not polytope_nonempty_interior(chart.poly)


def test_fiber_single_coordinate():
    t = Chart(0, orthant(1))
    f = make_morphism(t, standard_target(), [ExplodedMonomial(ES_ONE, (1,))])
    chart, origin, basis = monomial_fiber_data(f, es(1, 0, 5))
    assert chart.poly.dim == 0
    assert origin == (Fraction(5),)


def test_fiber_empty():
    t = Chart(0, orthant(1))
    f = make_morphism(t, standard_target(), [ExplodedMonomial(es(1, 0, 1), (0,))])
    with pytest.raises(EmptyFiberError):
        fiber_of_monomial_map(f, es(1, 0, 0))


def test_chart_point_validation():
    assert chart_contains(QUAD, ChartPoint((es(1, 0, 0), es(1, 0, 5))))
    assert not chart_contains(QUAD, ChartPoint((es(1, 0, -1), es(1, 0, 0))))
    with pytest.raises(ChartError):
        ChartPoint((es(0, 0, 1),))
