from fractions import Fraction

import pytest

from explograph.affine import (
    MonoidElement,
    cone_from_rays,
    integral_affine_iso,
    interval,
    is_standard_corner,
    orthant,
    polytope_vertices,
    smooth_monomial_generators,
    whole_space,
)
from explograph.explosion import (
    ExplodedComplex,
    NCConfiguration,
    NerveError,
    RefinementError,
    check_piece_interior_partition,
    degeneration_fiber_complex,
    explode_nc,
    exploded_degeneration_fiber,
    locate_point_orbit,
    nc_configuration,
    refine,
    rend_components,
    trivial_torus_complex,
    tropical_completion,
)

P2_FAN = [
    cone_from_rays([(1, 0), (0, 1)]),
    cone_from_rays([(0, 1), (-1, -1)]),
    cone_from_rays([(-1, -1), (1, 0)]),
]


def test_nerve_validation():
    with pytest.raises(NerveError):
        nc_configuration(1, [[1]])  # missing empty set
    with pytest.raises(NerveError):
        nc_configuration(2, [[], [1], [2], [1, 2], [1, 3]])
    with pytest.raises(NerveError):
        NCConfiguration(2, frozenset({frozenset(), frozenset({1, 2}), frozenset({1}), }))


def test_explode_single_divisor():
    cx = explode_nc(nc_configuration(1, [[], [1]]))
    assert len(cx.charts) == 1
    chart = cx.charts[0]
    assert chart.poly == orthant(1)
    assert chart.generators == (MonoidElement(0, (1,)),)


def test_explode_crossing_pair():
    cx = explode_nc(nc_configuration(2, [[], [1], [2], [1, 2]]))
    assert len(cx.charts) == 1
    assert cx.charts[0].poly == orthant(2)
    assert set(cx.charts[0].generators) == {
        MonoidElement(0, (1, 0)),
        MonoidElement(0, (0, 1)),
    }


def test_explode_disjoint_divisors():
    cx = explode_nc(nc_configuration(2, [[], [1], [2]]))
    assert len(cx.charts) == 2
    assert all(c.poly == orthant(1) for c in cx.charts)
    # glued at the origin vertex from both sides
    assert len(cx.complex.gluings) == 2
    orbit = locate_point_orbit(cx, 0, (Fraction(0),))
    assert len(orbit) == 2
    # interior points are not identified with the other ray
    orbit = locate_point_orbit(cx, 0, (Fraction(2),))
    assert orbit == [(0, (Fraction(2),))]


def test_generators_biject_with_divisors_through_stratum():
    cfg = nc_configuration(3, [[], [1], [2], [3], [1, 2], [2, 3]])
    cx = explode_nc(cfg)
    for chart in cx.charts:
        assert len(chart.generators) == chart.poly.dim


def test_refine_torus_by_projective_fan():
    t2 = trivial_torus_complex(2)
    refined = refine(t2, {0: P2_FAN})
    assert len(refined.charts) == 3
    for chart in refined.charts:
        assert integral_affine_iso(chart.poly, orthant(2)) is not None
        for v in polytope_vertices(chart.poly):
            assert is_standard_corner(chart.poly, v)
    # pieces share gluings along the three rays (both directions)
    assert len(refined.complex.gluings) == 6


def test_refine_line_at_zero():
    t1 = trivial_torus_complex(1)
    left = cone_from_rays([(-1,)])
    right = cone_from_rays([(1,)])
    refined = refine(t1, {0: [left, right]})
    assert len(refined.charts) == 2
    assert len(refined.complex.gluings) == 2
    for chart in refined.charts:
        assert integral_affine_iso(chart.poly, orthant(1)) is not None


def test_refine_trivial_is_isomorphic():
    t2 = trivial_torus_complex(2)
    refined = refine(t2, {})
    assert len(refined.charts) == 1
    assert refined.charts[0].poly == whole_space(2)


def test_refine_rejects_bad_subdivision():
    t1 = trivial_torus_complex(1)
    with pytest.raises(RefinementError):
        refine(t1, {0: [cone_from_rays([(1,)]), cone_from_rays([(1,)])]})


def _single_poly_complex(p):
    from explograph.affine import PolytopeComplex
    from explograph.charts import Chart

    return ExplodedComplex(PolytopeComplex((p,), ()), (Chart(0, p),))


def _constraint_key(p):
    return tuple((c.alpha, c.a, c.strict) for c in p.constraints)


def test_refine_refine_common():
    # refining [0,2]-complex by halves then by quarters equals direct quarters
    seg = _single_poly_complex(interval(0, 2))
    halves = [interval(0, 1), interval(1, 2)]
    quarters = [interval(0, Fraction(1, 2)), interval(Fraction(1, 2), 1),
                interval(1, Fraction(3, 2)), interval(Fraction(3, 2), 2)]
    once = refine(seg, {0: halves})
    twice = refine(once, {0: [quarters[0], quarters[1]], 1: [quarters[2], quarters[3]]})
    direct = refine(seg, {0: quarters})
    assert sorted(map(_constraint_key, twice.polytopes)) == sorted(
        map(_constraint_key, direct.polytopes)
    )


def test_refinement_pullback_along_itself_is_identity():
    # fiber-square shadow: pulling the refinement back along itself gives the
    # same piece set (pairwise intersections of pieces with themselves)
    t2 = trivial_torus_complex(2)
    refined = refine(t2, {0: P2_FAN})
    pieces = list(refined.polytopes)
    for q in pieces:
        assert q.contains  # piece of the pullback equals the piece itself
    assert check_piece_interior_partition(
        refined,
        [(Fraction(1), Fraction(1)), (Fraction(-1), Fraction(0)),
         (Fraction(0), Fraction(-2)), (Fraction(0), Fraction(0)),
         (Fraction(2), Fraction(0))],
    )


def test_rend_components():
    cfg = nc_configuration(2, [[], [1], [2], [1, 2]])
    comps = rend_components(cfg, 2)
    by_vec = {c.vector: c for c in comps}
    assert by_vec[(0, 0)].kind == "base"
    assert by_vec[(2, 0)].kind == "divisor_explosion"
    assert by_vec[(2, 0)].divisor == 1
    assert by_vec[(1, 1)].kind == "needs_refinement"
    # induced configuration of D1 has one component (D1 meets D2)
    assert by_vec[(1, 0)].induced.k == 1


def test_rend_stability_under_unrelated_nerve_growth():
    cfg = nc_configuration(2, [[], [1], [2]])
    bigger = nc_configuration(3, [[], [1], [2], [3]])
    small = {c.vector: c.kind for c in rend_components(cfg, 2)}
    for c in rend_components(bigger, 2):
        if c.vector[2] == 0:
            assert small[c.vector[:2]] == c.kind


def test_tropical_completion_segment():
    seg = _single_poly_complex(interval(0, 5))
    at_zero = tropical_completion(seg, 0, (Fraction(0),))
    assert len(at_zero.polytopes) == 1
    assert at_zero.polytopes[0] == orthant(1)
    inside = tropical_completion(seg, 0, (Fraction(2),))
    assert inside.polytopes[0] == whole_space(1)


def test_degeneration_fiber_complex():
    two = degeneration_fiber_complex(nc_configuration(2, [[], [1], [2], [1, 2]]))
    assert len(two.polytopes) == 1
    assert two.polytopes[0] == interval(0, 1)
    three = degeneration_fiber_complex(
        nc_configuration(3, [[], [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]])
    )
    assert len(three.polytopes) == 1
    assert three.polytopes[0].dim == 2
    assert len(polytope_vertices(three.polytopes[0])) == 3
    one = degeneration_fiber_complex(nc_configuration(1, [[], [1]]))
    assert len(one.polytopes) == 1
    assert one.polytopes[0].dim == 0


def test_completion_at_degeneration_vertex():
    cx = exploded_degeneration_fiber(nc_configuration(2, [[], [1], [2], [1, 2]]))
    done = tropical_completion(cx, 0, (Fraction(0),))
    assert len(done.polytopes) == 1
    assert done.polytopes[0] == orthant(1)


def test_completion_at_vertex_of_complete_complex_is_conical():
    cx = exploded_degeneration_fiber(
        nc_configuration(3, [[], [1], [2], [3], [1, 2], [2, 3]])
    )
    for idx, p in enumerate(cx.polytopes):
        for v in polytope_vertices(p):
            done = tropical_completion(cx, idx, v)
            for cone in done.polytopes:
                for c in cone.constraints:
                    assert c.a == 0
