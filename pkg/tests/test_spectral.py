import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.spectral import (
    FiniteSpectralSpace,
    SpectralMapFin,
    cl,
    enumerate_posets,
    gen,
    hasse_dot,
    image_ops,
    inv,
    is_irreducible,
    monotone_maps,
    patch,
    pt,
)

CHAIN = FiniteSpectralSpace(["c", "g"], [("c", "g")])
VEE = FiniteSpectralSpace(["a", "b", "g"], [("a", "g"), ("b", "g")])


def fs(*xs):
    return frozenset(xs)


# -- order-theoretic oracle ---------------------------------------------------
# closure of {y} is the down-set of y, so on a finite poset every operator has
# a one-line order description; the package computes them from the topology.


def down(X, Y):
    return frozenset(x for x in X.points if any(X.leq(x, y) for y in Y))


def up(X, Y):
    return frozenset(x for x in X.points if any(X.leq(y, x) for y in Y))


def oracle(X, Y):
    U = up(X, Y)
    minimal = frozenset(x for x in U if not any(z != x and X.leq(z, x) for z in U))
    return {"cl": down(X, Y), "gen": U, "inv": U, "patch": frozenset(Y), "pt": minimal}


def labeled_posets(n):
    # brute force over all relations, as an independent count
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product([0, 1], repeat=len(pairs)):
        R = {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in R for i, j in R):
            continue
        if any((i, k) not in R for i, j in R for j2, k in R if j == j2 and i != k):
            continue
        yield frozenset(R)


def iso_classes(n):
    seen = set()
    for R in labeled_posets(n):
        key = min(tuple(sorted((s[i], s[j]) for i, j in R)) for s in itertools.permutations(range(n)))
        seen.add(key)
    return len(seen)


# -- examples -------------------------------------------------------------------


def test_closure_examples():
    assert cl(CHAIN, {"g"}) == fs("c", "g")
    assert cl(CHAIN, set()) == fs()
    assert cl(VEE, {"a"}) == fs("a")


def test_generalization_examples():
    assert gen(CHAIN, {"c"}) == fs("c", "g")
    assert gen(CHAIN, {"g"}) == fs("g")
    assert gen(VEE, {"a"}) == fs("a", "g")


def test_inverse_closure_examples():
    assert inv(CHAIN, {"c"}) == fs("c", "g")
    assert inv(CHAIN, CHAIN.points) == frozenset(CHAIN.points)
    assert inv(VEE, {"a", "b"}) == fs("a", "b", "g")


def test_patch_and_pt_examples():
    assert patch(CHAIN, {"g"}) == fs("g")
    assert patch(CHAIN, set()) == fs()
    assert pt(CHAIN, {"g"}) == fs("g")
    assert pt(CHAIN, {"c"}) == fs("c")
    assert pt(CHAIN, set()) == fs()


def test_irreducibility_examples():
    assert is_irreducible(CHAIN, CHAIN.points)
    assert not is_irreducible(VEE, {"a", "b"})
    assert is_irreducible(VEE, {"a", "g"})


def test_poset_counts_match_brute_force():
    counts = [len(enumerate_posets(n)) for n in range(5)]
    assert counts == [iso_classes(n) for n in range(5)] == [1, 1, 2, 5, 16]
    assert len(enumerate_posets(5)) == 63
    assert len(enumerate_posets(3, up_to_iso=False)) == 19


def test_operators_match_order_oracle_exhaustively():
    for n in range(5):
        for X in enumerate_posets(n):
            for m in range(1 << n):
                Y = X.unmask(m)
                want = oracle(X, Y)
                assert {op: f(X, Y) for op, f in (("cl", cl), ("gen", gen), ("inv", inv), ("patch", patch), ("pt", pt))} == want


def test_tables_agree_with_functions():
    X = enumerate_posets(4)[7]
    for m in range(16):
        assert X.unmask(X.table("pt")[m]) == pt(X, X.unmask(m))
        assert X.unmask(X.table("cl")[m]) == cl(X, X.unmask(m))


def test_image_ops_identity_and_constant():
    ident = SpectralMapFin(VEE, VEE, {p: p for p in VEE.points})
    r = image_ops(ident, {"a"})
    assert r["gen_eq"] and r["inv_eq"] and r["patch_ok"] and r["pt_eq"] and r["closed_map"]
    point = FiniteSpectralSpace(["*"])
    const = SpectralMapFin(CHAIN, point, {"c": "*", "g": "*"})
    r = image_ops(const, {"c"})
    assert r["d_patch"] == r["patch_d"] == fs("*")


def test_closed_map_can_lose_pt_equality():
    # a > c and b; a -> a', b and c -> b' with b' < a'.  The map is closed and
    # onto, yet pt({a, b}) = {a, b} maps onto {a', b'} while pt({a', b'}) = {b'}.
    S = FiniteSpectralSpace(["a", "b", "c"], [("c", "a")])
    T = FiniteSpectralSpace(["a'", "b'"], [("b'", "a'")])
    d = SpectralMapFin(S, T, {"a": "a'", "b": "b'", "c": "b'"})
    r = image_ops(d, {"a", "b"})
    assert r["closed_map"]
    assert r["d_pt"] == fs("a'", "b'")
    assert r["pt_d"] == fs("b'")
    assert r["pt_d"] <= r["d_pt"]


def test_monotone_maps_counts():
    # maps 2-chain -> 2-chain: order preserving ones are 3 of the 4
    assert len(list(monotone_maps(CHAIN, CHAIN))) == 3
    with pytest.raises(ValueError):
        SpectralMapFin(CHAIN, CHAIN, {"c": "g", "g": "c"})


def test_hasse_dot_chain():
    text = hasse_dot(CHAIN, "chain")
    assert text.count("->") == 1
    assert text.count("[label=") == 2


def test_bad_relations():
    with pytest.raises(ValueError):
        FiniteSpectralSpace(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        FiniteSpectralSpace(["a"], [("a", "z")])


@st.composite
def poset_and_subsets(draw):
    n = draw(st.integers(1, 6))
    # random strict order: i < j only for i < j as integers, closed up transitively
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    X = FiniteSpectralSpace(range(n), pairs)
    A = draw(st.sets(st.integers(0, n - 1)))
    B = draw(st.sets(st.integers(0, n - 1)))
    return X, frozenset(A), frozenset(B)


@settings(max_examples=150, deadline=None)
@given(poset_and_subsets())
def test_closure_operator_laws(data):
    X, A, B = data
    for f in (cl, gen, inv, patch):
        assert A <= f(X, A)
        assert f(X, f(X, A)) == f(X, A)
        if A <= B:
            assert f(X, A) <= f(X, B)
    assert cl(X, A | B) == cl(X, A) | cl(X, B)
    assert inv(X, A) == gen(X, pt(X, A)) == gen(X, patch(X, A))
    assert pt(X, A) <= patch(X, A) <= inv(X, A) & cl(X, A)
