"""Closure operators on small posets viewed as spectral spaces.

Run:  python demos/01_finite_spaces.py
"""

from zariski.spectral import FiniteSpectralSpace, SpectralMapFin, cl, gen, hasse_dot, image_ops, inv, patch, pt

# x <= y means x lies in the closure of {y}; "g" is the generic point
V = FiniteSpectralSpace(["a", "b", "g"], [("a", "g"), ("b", "g")])
print(hasse_dot(V, "V"))

for Y in [{"a"}, {"a", "b"}, {"g"}]:
    print(f"Y = {sorted(Y)}")
    for name, op in [("cl", cl), ("gen", gen), ("inv", inv), ("patch", patch), ("pt", pt)]:
        print(f"  {name:5} {sorted(op(V, Y))}")

# every subset of a finite space is quasicompact, so inv and gen agree
assert all(inv(V, V.unmask(m)) == gen(V, V.unmask(m)) for m in range(8))

# images under a closed map: the patch closure commutes, pt can shrink
S = FiniteSpectralSpace(["a", "b", "c"], [("c", "a")])
T = FiniteSpectralSpace(["a'", "b'"], [("b'", "a'")])
d = SpectralMapFin(S, T, {"a": "a'", "b": "b'", "c": "b'"})
r = image_ops(d, {"a", "b"})
print("closed map:", r["closed_map"])
print("d(patch Z) =", sorted(r["d_patch"]), " patch(d Z) =", sorted(r["patch_d"]))
print("d(pt Z)    =", sorted(r["d_pt"]), " pt(d Z)    =", sorted(r["pt_d"]))
