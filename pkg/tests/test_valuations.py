import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.fields import FieldSpec, RatFunc
from zariski.poly import Poly
from zariski.valuations import (
    Place,
    TPoly,
    exceptional_places,
    gauss_value,
    in_max_ideal,
    in_ring,
    intersection_member,
    parse_place,
    parse_trational,
    residue_char,
    residue_degree,
    value,
    zeros_and_poles,
    zr_space,
)
from zariski.verify import random_element

QZ, F2, F3, QX = FieldSpec.qz(), FieldSpec.fp(2), FieldSpec.fp(3), FieldSpec.qx()


def test_value_examples():
    assert value(Place.prime(2), 12) == 2
    assert value(parse_place("x", QX), QX.parse("x^3/(x+1)")) == 3
    assert value(Place.infinity(), QX.parse("(x^2+1)/x")) == -1


def test_ring_membership_examples():
    assert in_ring(Place.prime(3), Fraction(1, 2))
    assert in_max_ideal(parse_place("x-1", QX), QX.parse("(x-1)^2/x"))
    assert not in_ring(Place.infinity(), QX.x())


def test_residue_data():
    assert residue_degree(parse_place("x^2+1", F3)) == 2
    assert residue_degree(Place.infinity()) == 1
    assert residue_char(Place.prime(7)) == 7 and residue_degree(Place.prime(7)) == 1


def test_gauss_value_examples():
    h = parse_trational("(2*T+4)/(T+1)", QZ)
    assert gauss_value(Place.prime(2), h) == 1
    T = TPoly.T(QX)
    for v in zr_space(QX).first(10):
        assert gauss_value(v, T) == 0
    h = parse_trational("(x*T + x^2)/(T + x)", QX)
    assert gauss_value(parse_place("x", QX), h) == 1


def test_enumeration_examples():
    assert [str(v) for v in zr_space(QZ).first(5)] == ["2", "3", "5", "7", "11"]
    assert [str(v) for v in zr_space(F2).first(4)] == ["inf", "x", "x+1", "x^2+x+1"]
    assert [str(v) for v in zr_space(QX).first(4)] == ["inf", "x", "x+1", "x-1"]


def test_intersection_member_examples():
    X = zr_space(F3)
    assert not intersection_member(X.whole(), F3.parse("x^2+1"))
    assert intersection_member(zr_space(QZ).finite([Place.prime(2)]), Fraction(1, 3))
    assert intersection_member(X.cofinite([parse_place("x", F3)]), F3.parse("1/x"))


def test_place_parsing_errors():
    with pytest.raises(ValueError):
        parse_place("4", QZ)
    with pytest.raises(ValueError):
        parse_place("x^2-1", QX)  # reducible
    with pytest.raises(ValueError):
        parse_place("2*x+1", QX)  # not monic


def test_place_json_round_trip():
    for spec in (QZ, F3, QX):
        for v in zr_space(spec).first(6) + [Place.trivial()]:
            assert parse_place(v.to_json(), spec) == v


def _norm(v):
    return v.value.deg if v.kind == "poly" else 1


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F2, F3, QX]))
def test_product_formula(seed, spec):
    # the divisor of a nonzero rational function has degree zero
    a = random_element(spec, random.Random(seed))
    if not a:
        return
    zp = zeros_and_poles(a)
    assert sum(_norm(v) * k for v, k in zp.items()) == 0
    assert set(exceptional_places(a)) == set(zp)


@settings(max_examples=80, deadline=None)
@given(st.integers(-10**6, 10**6).filter(bool), st.integers(1, 10**6))
def test_rational_factorisation_formula(n, d):
    a = Fraction(n, d)
    prod = Fraction(1)
    for v, k in zeros_and_poles(a).items():
        prod *= Fraction(v.value) ** k
    assert prod == abs(a)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QZ, F3, QX]))
def test_valuation_axioms(seed, spec):
    rng = random.Random(seed)
    a, b = random_element(spec, rng), random_element(spec, rng)
    for v in zr_space(spec).first(8):
        if a and b:
            assert value(v, a * b) == value(v, a) + value(v, b)
        assert value(v, a + b) >= min(value(v, a), value(v, b))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=4), st.lists(st.integers(-30, 30), min_size=1, max_size=4))
def test_gauss_value_is_multiplicative(f, g):
    a, b = TPoly(f, QZ), TPoly(g, QZ)
    if not a or not b:
        return
    for v in zr_space(QZ).first(6):
        assert gauss_value(v, a * b) == gauss_value(v, a) + gauss_value(v, b)


def test_ratfunc_values_at_poly_places():
    x = Poly.x(3)
    a = RatFunc(x**2 * (x + 1), (x + 2) ** 3)
    assert value(parse_place("x", F3), a) == 2
    assert value(parse_place("x+2", F3), a) == -3
    assert value(Place.infinity(), a) == 0
