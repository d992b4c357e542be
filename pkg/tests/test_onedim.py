import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski import spectral
from zariski.fields import FieldSpec
from zariski.onedim import (
    GENERIC,
    OPERATORS,
    OneDimSpace,
    SubsetDesc,
    cl1,
    coherence,
    gen1,
    inv1,
    patch1,
    patch_neighbourhood_witness,
    pt1,
    push,
    random_subset,
    truncate,
)
from zariski.valuations import Place, zr_space

QZ = zr_space(FieldSpec.qz())
P = Place.prime


def F(*ps, generic=False):
    return QZ.finite([P(p) for p in ps], generic=generic)


def C(*ps, generic=False):
    return QZ.cofinite([P(p) for p in ps], generic=generic)


def test_closure_examples():
    assert cl1(QZ, F(2, 3)) == F(2, 3)
    assert cl1(QZ, QZ.generic_only()) == QZ.whole()
    assert cl1(QZ, C()) == QZ.whole()


def test_generalization_examples():
    assert gen1(QZ, F(2)) == F(2, generic=True)
    assert gen1(QZ, QZ.empty()) == QZ.empty()
    assert gen1(QZ, QZ.generic_only()) == QZ.generic_only()


def test_inverse_closure_examples():
    assert inv1(QZ, F(2, 5)) == F(2, 5, generic=True)
    assert inv1(QZ, QZ.whole()) == QZ.whole()
    assert inv1(QZ, C(7, generic=True)) == C(7, generic=True)


def test_patch_examples():
    assert patch1(QZ, C(3)) == C(3, generic=True)
    assert patch1(QZ, F(2, 3)) == F(2, 3)
    assert patch1(QZ, QZ.empty()) == QZ.empty()


def test_pt_examples():
    assert pt1(QZ, F(2, generic=True)) == F(2)
    assert pt1(QZ, QZ.generic_only()) == QZ.generic_only()
    assert pt1(QZ, C()) == C()


def test_set_algebra():
    assert F(2) | C(2, 3) == C(3)
    assert ~QZ.whole() == QZ.empty()
    assert F(2, 3) & C(3) == F(2)
    assert F(2) <= C(3) and not C(3) <= F(2)
    assert GENERIC in QZ.generic_only() and P(2) not in QZ.generic_only()


def test_truncation_examples():
    T0 = truncate(QZ, 0)
    assert list(T0.points) == [GENERIC]
    T3 = truncate(QZ, 3)
    assert set(T3.points) == {GENERIC, P(2), P(3), P(5)}
    assert all(T3.leq(P(p), GENERIC) for p in (2, 3, 5))
    assert push(C(3), 3) == frozenset({P(2), P(5)})


def test_json_round_trip_and_errors():
    for Y in (F(2, 3), C(7, generic=True), QZ.empty(), QZ.whole()):
        assert SubsetDesc.from_json(QZ, Y.to_json()) == Y
    with pytest.raises(ValueError):
        SubsetDesc.from_json(QZ, {"closed": {"finite": ["2", "2"]}})
    with pytest.raises((KeyError, ValueError)):
        SubsetDesc.from_json(QZ, {"closed": {"finite": ["4"]}})


def test_patch_neighbourhood_witness():
    # every basic patch neighbourhood of the generic point meets Cofinite{3}
    Y = C(3)
    w = patch_neighbourhood_witness(Y, [P(2), P(5)])
    assert w in Y and w not in (P(2), P(5))
    assert patch_neighbourhood_witness(F(2), [P(2)]) is None


def test_finite_space_normalises_cofinite():
    S = OneDimSpace("three", closed_points=["a", "b", "c"])
    assert S.cofinite(["a"]) == S.finite(["b", "c"])


def test_finite_space_matches_fan_poset_exhaustively():
    S = OneDimSpace("three", closed_points=["a", "b", "c"])
    fan = spectral.FiniteSpectralSpace([GENERIC, "a", "b", "c"], [(k, GENERIC) for k in "abc"])
    for m in range(16):
        keys = [k for i, k in enumerate("abc") if m >> i & 1]
        Y = S.finite(keys, generic=bool(m & 8))
        pts = set(keys) | ({GENERIC} if Y.generic else set())
        for name, op in OPERATORS.items():
            got = op(S, Y)
            want = getattr(spectral, name)(fan, pts)
            assert set(got.keys) | ({GENERIC} if got.generic else set()) == want, (name, keys)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["qz", "fp3", "qx"]), st.integers(0, 8))
def test_truncation_coherence_property(seed, setting, n):
    spec = {"qz": FieldSpec.qz(), "fp3": FieldSpec.fp(3), "qx": FieldSpec.qx()}[setting]
    X = zr_space(spec)
    Y = random_subset(X, random.Random(seed))
    assert False not in coherence(X, Y, n).values()


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_operator_identities_property(seed):
    rng = random.Random(seed)
    Y, W = random_subset(QZ, rng), random_subset(QZ, rng)
    assert pt1(QZ, Y) <= patch1(QZ, Y) <= (inv1(QZ, Y) & cl1(QZ, Y))
    assert inv1(QZ, Y) == gen1(QZ, pt1(QZ, Y)) == gen1(QZ, patch1(QZ, Y))
    for f in (cl1, gen1, inv1, patch1):
        assert f(QZ, f(QZ, Y)) == f(QZ, Y)
        if Y <= W:
            assert f(QZ, Y) <= f(QZ, W)
    assert ~~Y == Y and (Y | W) == ~(~Y & ~W)
