from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from explograph.semiring import (
    ExplodedScalar,
    GaussianRational,
    NotInvertibleError,
    SmoothPartUndefinedError,
    es,
    es_add,
    es_inv,
    es_mul,
    es_smooth_part,
    es_tropical_part,
    format_scalar,
    parse_scalar,
    qq,
)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)
coeffs = st.builds(GaussianRational, rationals, rationals)
scalars = st.builds(ExplodedScalar, coeffs, rationals)
units = st.builds(
    ExplodedScalar,
    st.builds(GaussianRational, rationals.filter(lambda r: r != 0), rationals),
    rationals,
)


def test_mul_examples():
    assert es_mul(es(2, 0, 1), es(3, 0, 2)) == es(6, 0, 3)
    x = es(5, 2, Fraction(7, 3))
    assert es_mul(x, es(1, 0, 0)) == x
    assert es_mul(es(0, 0, 1), es(5, 0, 2)) == es(0, 0, 3)


def test_add_examples():
    assert es_add(es(1, 0, 1), es(5, 0, 2)) == es(1, 0, 1)
    assert es_add(es(2, 0, 0), es(3, 0, 0)) == es(5, 0, 0)
    # cancellation keeps the exponent: a distinct zero
    assert es_add(es(1, 0, 0), es(-1, 0, 0)) == es(0, 0, 0)
    assert es_add(es(1, 0, 3), es(-1, 0, 3)) == es(0, 0, 3)


def test_distinct_zeros_not_identified():
    assert es(0, 0, 1) != es(0, 0, 2)


def test_inv_examples():
    assert es_inv(es(2, 0, 3)) == es(Fraction(1, 2), 0, -3)
    assert es_inv(es(1, 0, 0)) == es(1, 0, 0)
    with pytest.raises(NotInvertibleError):
        es_inv(es(0, 0, 1))


def test_tropical_part():
    assert es_tropical_part(es(7, 0, Fraction(5, 2))) == Fraction(5, 2)
    assert es_tropical_part(es_add(es(1, 0, 1), es(2, 0, 3))) == 1


def test_smooth_part():
    assert es_smooth_part(es(3, 0, 0)) == qq(3)
    assert es_smooth_part(es(3, 0, 2)) == qq(0)
    with pytest.raises(SmoothPartUndefinedError):
        es_smooth_part(es(1, 0, -1))


@given(scalars, scalars, scalars)
def test_semiring_axioms(x, y, z):
    assert es_add(x, y) == es_add(y, x)
    assert es_mul(x, y) == es_mul(y, x)
    assert es_add(es_add(x, y), z) == es_add(x, es_add(y, z))
    assert es_mul(es_mul(x, y), z) == es_mul(x, es_mul(y, z))
    assert es_mul(x, es_add(y, z)) == es_add(es_mul(x, y), es_mul(x, z))


@given(scalars, scalars)
def test_tropical_homomorphism(x, y):
    assert es_tropical_part(es_mul(x, y)) == es_tropical_part(x) + es_tropical_part(y)
    assert es_tropical_part(es_add(x, y)) == min(es_tropical_part(x), es_tropical_part(y))


@given(scalars, scalars)
def test_smooth_homomorphism(x, y):
    if x.exponent < 0 or y.exponent < 0:
        return
    assert es_smooth_part(es_mul(x, y)) == es_smooth_part(x) * es_smooth_part(y)
    assert es_smooth_part(es_add(x, y)) == es_smooth_part(x) + es_smooth_part(y)


@given(units)
def test_inv_involution_and_tropical(x):
    assert es_inv(es_inv(x)) == x
    assert es_mul(x, es_inv(x)) == es(1, 0, 0)
    assert es_tropical_part(es_inv(x)) == -es_tropical_part(x)


@given(scalars)
def test_serialization_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_serialization_format():
    assert format_scalar(es(3, 0, Fraction(5, 2))) == "3/1 0/1 e 5/2"
