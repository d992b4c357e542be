import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.fields import FieldSpec
from zariski.models import (
    ModelPoint,
    ProjectiveModel,
    ProjectiveSystem,
    WitnessError,
    center,
    dominates,
    fiber,
    fiber_dot,
    image,
    limit_ops,
    model_space,
    preimage,
    product_model,
    same_center,
    system_dot,
)
from zariski.onedim import inv1, patch1, pt1, random_subset
from zariski.valuations import Place, parse_place, value, zr_space
from zariski.verify import standard_system

F5 = FieldSpec.fp(5)
X5 = zr_space(F5)
P1 = ProjectiveModel(F5, ["1", "x"], "g1/g0", name="P1")
NODAL = ProjectiveModel(F5, ["1", "x^2-1", "x^3-x"], "g2/g1", name="nodal")
CUSP = ProjectiveModel(F5, ["1", "x^2", "x^3"], "g2/g1", name="cuspidal")


def pl(s, spec=F5):
    return parse_place(s, spec)


def residues_at(M, a):
    # oracle for the degree-one place x - a: first chart of least value, then
    # evaluate the reduced chart coordinates at a
    v = pl(f"x-{a}") if a else pl("x")
    vals = [value(v, g) for g in M.gens]
    i = vals.index(min(vals))
    out = []
    for g in M.chart(i):
        out.append(g.num(a) * pow(int(g.den(a)), -1, 5) % 5)
    return i, tuple(out)


def test_p1_centers_are_classical():
    pts = [center(P1, pl(f"x-{a}") if a else pl("x")) for a in range(5)]
    assert all(p.chart == 0 for p in pts)
    assert len(set(pts)) == 5
    assert center(P1, Place.infinity()).chart == 1


def test_nodal_and_cusp_residues():
    c1, c2 = center(NODAL, pl("x-1")), center(NODAL, pl("x+1"))
    assert c1 == c2 and c1.chart == 0
    assert residues_at(NODAL, 1) == residues_at(NODAL, 4) == (0, (1, 0, 0))
    assert residues_at(CUSP, 0) == (0, (1, 0, 0))
    assert center(CUSP, pl("x")).key == ("rat", (1, 0, 0))


def test_centers_match_evaluation_oracle():
    for M in (P1, NODAL, CUSP):
        for a in range(5):
            v = pl(f"x-{a}") if a else pl("x")
            i, res = residues_at(M, a)
            c = center(M, v)
            assert c.chart == i and c.key == ("rat", res)


def test_same_center_examples():
    assert same_center(NODAL, pl("x-1"), pl("x+1"))
    assert not same_center(NODAL, pl("x-2"), pl("x-3"))
    assert same_center(CUSP, pl("x"), pl("x"))


def test_fibers():
    probe = X5.first(30)
    assert all(fiber(P1, center(P1, v)) == [v] for v in probe)
    merged = [v for v in probe if len(fiber(NODAL, center(NODAL, v))) > 1]
    assert merged == [pl("x+1"), pl("x+4")]


def test_constructor_checks():
    with pytest.raises(WitnessError):
        ProjectiveModel(F5, ["1"], "g0/g0")
    with pytest.raises(WitnessError):
        ProjectiveModel(F5, ["1", "x"])
    with pytest.raises(WitnessError):
        ProjectiveModel(F5, ["1", "x"], "g1")  # not degree zero
    with pytest.raises(ValueError):
        ProjectiveModel(F5, ["0", "x"], "g1/g0")


def test_domination_examples():
    assert dominates(P1, NODAL)
    assert not dominates(NODAL, P1)
    assert dominates(NODAL, NODAL)
    PP = product_model(P1, P1)
    assert [str(g) for g in PP.gens] == ["1", "x", "x", "x^2"]
    assert dominates(PP, P1)
    PN = product_model(P1, NODAL)
    assert dominates(PN, P1) and dominates(PN, NODAL)
    R = product_model((F5.const(3),), P1)
    assert dominates(R, P1) and dominates(P1, R)


def test_images_and_preimages():
    Z = X5.finite([pl("x-1")])
    W = image(NODAL, Z)
    assert preimage(NODAL, W) == X5.finite([pl("x-1"), pl("x+1")])
    assert preimage(P1, image(P1, Z)) == Z


def test_limit_examples():
    x = pl("x")
    S = ProjectiveSystem([P1])
    r = limit_ops(S, X5.cofinite([x]))
    assert r["inv"] == r["patch"] == X5.cofinite([x], generic=True)
    assert r["pt"] == X5.cofinite([x])
    S2 = ProjectiveSystem([P1, NODAL], [(0, 1)])
    assert limit_ops(S2, X5.finite([pl("x-1")]))["pt"] == X5.finite([pl("x-1")])
    r = limit_ops(S2, X5.generic_only())
    assert r["inv"] == r["patch"] == r["pt"] == X5.generic_only()


def test_standard_system_dominations_hold():
    S = standard_system(5)
    assert all(S.check(32).values())


def test_model_space_format_round_trip():
    S = model_space(NODAL)
    for v in X5.first(10):
        c = center(NODAL, v)
        assert S.parse_key(S.format_key(c)) == c
        assert S.parse_key(str(v)) == c


def test_irrational_residues_over_q():
    Q = FieldSpec.qx()
    M = ProjectiveModel(Q, ["1", "x^2+1", "x^3+x"], "g2/g1")
    c = center(M, pl("x^2+1", Q))
    assert c.key[0] == "rat"  # residues of the chart generators are rational
    d = center(M, pl("x^2+2", Q))
    assert d.key[0] == "alg"
    assert fiber(M, d) == [pl("x^2+2", Q)]


def test_dot_output():
    text = fiber_dot(NODAL, 6)
    node = model_space(NODAL).format_key(center(NODAL, pl("x+1")))
    assert text.count(f'-> "{node}"') == 2
    S = ProjectiveSystem([P1, NODAL, product_model(P1, NODAL, name="product")], [(0, 1), (2, 0), (2, 1)])
    text = system_dot(S)
    assert text.count("->") == 3 and text.count(";") == 6


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fundamental_property_on_standard_system(seed):
    S = standard_system(5)
    Z = random_subset(X5, random.Random(seed), pool=20)
    r = limit_ops(S, Z)
    assert r["inv"] == inv1(X5, Z)
    assert r["patch"] == patch1(X5, Z)
    assert r["pt"] == pt1(X5, Z)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 40))
def test_fiber_consistency(i):
    v = X5.first(41)[i]
    for M in (P1, NODAL, CUSP):
        c = center(M, v)
        assert isinstance(c, ModelPoint)
        fib = fiber(M, c)
        assert v in fib
        assert all(center(M, w) == c for w in fib)
