"""Kronecker function rings, separating elements and Prufer witnesses.

Run:  python demos/03_kronecker_and_prufer.py
"""

from fractions import Fraction

from zariski import kronecker as kr
from zariski.fields import FieldSpec
from zariski.valuations import Place, parse_trational, zr_space

Q = FieldSpec.qz()
XQ = zr_space(Q)

# over a PID membership in Kr reduces to divisibility of contents
for f, g in [([6, 2], [2, 4]), ([3], [0, 2]), ([1, 1], [3, 6])]:
    print(f"content({f}) / content({g}):", kr.content_criterion(f, g))

h = parse_trational("(2*T+6)/(4*T+2)", Q)
print("(2T+6)/(4T+2) in Kr(all primes):", kr.in_kronecker(Q, XQ.whole(), h))

# inverse closure certified by separating elements
Z = XQ.finite([Place.prime(2), Place.prime(5)])
cert = kr.inv_via_kronecker(Q, Z, probe=12)
print("inv(Z) =", cert.subset.to_json(), "certified:", cert.ok)
print("separators:", {str(v): str(s) for v, s in list(cert.certificates.items())[:4]})

# an explicit Prufer witness for the ideal (6, 10/3) of Z[1/3]
Za = XQ.cofinite([Place.prime(3)], generic=True)
print(kr.affine_test(Q, Za)["reason"])
W = kr.prufer_witness(Q, Za, [6, Fraction(10, 3)])
print("b =", [str(b) for b in W.b], "checks:", W.verify())

# over k(x) with the place at infinity removed, A is the polynomial ring
F = FieldSpec.fp(3)
X = zr_space(F)
A = X.cofinite([Place.infinity()], generic=True)
W = kr.prufer_witness(F, A, [F.parse("x^2+1"), F.parse("x+1")])
print("b =", [F.format(b) for b in W.b], "checks:", W.verify())

# residue fields without roots of T^2 + 1
view = kr.monic_no_root_subset(Q, [1, 0, 1], probe=20)
print("T^2+1:", view.status, {str(v): ok for v, ok in list(view.probe.items())[:8]})
