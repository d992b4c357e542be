import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.fields import FieldSpec
from zariski.kronecker import (
    KrQuery,
    NotAffine,
    ZeroElement,
    affine_test,
    content_criterion,
    in_kronecker,
    in_localization,
    in_nagata,
    in_star,
    inv_via_kronecker,
    localization_subset,
    monic_no_root_subset,
    prufer_witness,
    pt_via_max,
    ring_desc,
    separator,
)
from zariski.onedim import inv1, pt1, random_subset
from zariski.valuations import Place, TPoly, TRational, parse_place, parse_trational, zr_space
from zariski.verify import random_element

QZ, F3, QX = FieldSpec.qz(), FieldSpec.fp(3), FieldSpec.qx()
XQ, X3, XX = zr_space(QZ), zr_space(F3), zr_space(QX)
P = Place.prime


def h(text, spec=QZ):
    return parse_trational(text, spec)


def test_gauss_extension_membership():
    assert in_star(P(2), h("(2*T+4)/(T+1)"))
    assert not in_star(P(2), h("1/(2*T)"))
    assert in_star(P(7), h("T"))


def test_kronecker_membership_examples():
    # contents 2 and 2: the element lies in Kr of the whole space
    assert in_kronecker(QZ, XQ.whole(), h("(2*T+6)/(4*T+2)"))
    assert in_kronecker(KrQuery(QZ, XQ.whole(), h("(2*T+6)/(4*T+2)")))
    assert not in_kronecker(QZ, XQ.whole(), h("(6*T+2)/(4*T+4)"))
    Z3 = XQ.finite([P(3)])
    assert not in_kronecker(QZ, Z3, h("1/3"))
    assert in_kronecker(QZ, Z3, h("3/T"))
    assert in_kronecker(F3, X3.whole(), h("2", F3))


def test_content_criterion_examples():
    assert content_criterion([6, 2], [2, 4])
    assert not content_criterion([3], [0, 2])
    assert content_criterion([4, 6, 8], [4, 6, 8])
    with pytest.raises(ZeroDivisionError):
        content_criterion([1], [0])


def test_nagata_examples():
    assert in_nagata(QZ, [1], [3, 2])
    assert not in_nagata(QZ, [1], [4, 2])
    assert in_nagata(FieldSpec.fp(7), [1], [5])


def test_separators():
    assert separator(QX, parse_place("x", QX)) == QX.parse("1/x")
    assert separator(QZ, P(3)) == Fraction(1, 3)
    assert separator(QX, Place.infinity()) == QX.x()
    with pytest.raises(ValueError):
        separator(QZ, Place.trivial())


def test_inverse_closure_via_kronecker_examples():
    x = parse_place("x", F3)
    I = inv_via_kronecker(F3, X3.cofinite([x]), 32)
    assert I.ok and I.subset == X3.cofinite([x], generic=True)
    assert I.certificates[x] == F3.parse("1/x")
    I = inv_via_kronecker(QZ, XQ.finite([P(2)]), 16)
    assert I.ok and I.subset == XQ.finite([P(2)], generic=True)
    assert I.certificates[P(3)] == Fraction(1, 3)
    I = inv_via_kronecker(QZ, XQ.whole(), 16)
    assert I.subset == XQ.whole() and not I.certificates
    assert inv_via_kronecker(QZ, XQ.empty(), 16).subset == XQ.empty()


def test_pt_via_max_examples():
    x = parse_place("x", F3)
    assert pt_via_max(F3, X3.cofinite([x], generic=True), 32).subset == X3.cofinite([x])
    assert pt_via_max(F3, X3.generic_only(), 32).subset == X3.generic_only()
    assert pt_via_max(QZ, XQ.finite([P(2), P(3)]), 32).subset == XQ.finite([P(2), P(3)])


def test_ring_descriptions():
    assert ring_desc(QZ, XQ.all_closed()).kind == "Constants"
    R = ring_desc(F3, X3.cofinite([Place.infinity()]))
    assert R.kind == "DedekindComplement"
    assert R.contains(F3.parse("x^5+1")) and not R.contains(F3.parse("1/x"))
    assert ring_desc(F3, X3.generic_only()).kind == "Field"


def test_affine_fixtures():
    assert affine_test(QZ, XQ.whole())["affine"]
    assert not affine_test(F3, X3.whole())["affine"]
    assert affine_test(QX, XX.finite(XX.first(3), generic=True))["affine"]
    assert not affine_test(QX, XX.finite(XX.first(3)))["affine"]
    assert not affine_test(QX, XX.empty())["affine"]


def test_prufer_witness_examples():
    W = prufer_witness(QZ, XQ.whole(), [1, Fraction(1, 2)])
    assert W.verify()["ok"]
    assert sum(W.b) == 1 and all(Fraction(b).denominator == 1 for b in W.b)
    W = prufer_witness(QZ, XQ.whole(), [7])
    assert W.b == [1] and W.a == [[1]]
    W = prufer_witness(F3, X3.cofinite([Place.infinity()], generic=True), [F3.const(1), F3.x()])
    assert W.verify()["ok"]
    with pytest.raises(NotAffine):
        prufer_witness(F3, X3.whole(), [F3.x()])
    with pytest.raises(ZeroElement):
        prufer_witness(QZ, XQ.whole(), [0, 1])


def test_localization_examples():
    Y = localization_subset(QZ, XQ.whole(), [2])
    assert Y == XQ.cofinite([P(2)], generic=True)
    assert in_localization(QZ, XQ.whole(), [2], Fraction(3, 8))
    assert not in_localization(QZ, XQ.whole(), [2], Fraction(1, 3))
    Z = XQ.finite([P(2), P(5)], generic=True)
    assert localization_subset(QZ, Z, [1]) == inv1(XQ, Z)
    Zk = X3.cofinite([Place.infinity()], generic=True)
    assert parse_place("x", F3) not in localization_subset(F3, Zk, [F3.x()])


def test_root_free_views():
    v = monic_no_root_subset(QZ, [1, 0, 1], probe=64)
    assert v.status == "not_representable" and v.generic
    for p, no_root in v.probe.items():
        if p.value > 2:
            assert no_root == (p.value % 4 == 3)
    assert v.probe[P(2)] is False
    v = monic_no_root_subset(QZ, [-1, 1])
    assert v.status == "exact" and v.subset == XQ.empty()
    v = monic_no_root_subset(F3, [1, 0, 1], probe=30)
    assert v.status == "not_representable" and v.generic
    for w, no_root in v.probe.items():
        deg = 1 if w.kind == "infinity" else w.value.deg
        assert no_root == (deg % 2 == 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=4), st.lists(st.integers(-50, 50), min_size=1, max_size=4))
def test_kronecker_matches_contents(f, g):
    if not any(g):
        return
    q = TRational(TPoly(f, QZ), TPoly(g, QZ))
    assert in_kronecker(QZ, XQ.whole(), q) == content_criterion(f, g)
    # the content criterion itself, recomputed with gcds
    cf = gcd(*f) if any(f) else 0
    assert content_criterion(f, g) == (cf % gcd(*g) == 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QZ, F3, QX]))
def test_certified_closures_property(seed, spec):
    X = zr_space(spec)
    Z = random_subset(X, random.Random(seed))
    I = inv_via_kronecker(spec, Z, 32)
    assert I.ok and I.subset == inv1(X, Z)
    M = pt_via_max(spec, Z, 32)
    assert M.ok and M.subset == pt1(X, Z)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QZ, F3, QX]))
def test_prufer_witness_property(seed, spec):
    rng = random.Random(seed)
    X = zr_space(spec)
    Z = random_subset(X, rng).with_generic()
    if not affine_test(spec, Z)["affine"]:
        return
    t = [a for a in (random_element(spec, rng) for _ in range(3)) if a]
    if t:
        assert prufer_witness(spec, Z, t).verify()["ok"]
