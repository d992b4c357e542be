"""Zariski-Riemann spaces of Q/Z and k(x)/k, and their projective models.

Run:  python demos/02_zariski_riemann.py
"""

from zariski.fields import FieldSpec
from zariski.models import ProjectiveModel, center, fiber, fiber_dot, limit_ops
from zariski.onedim import OPERATORS
from zariski.valuations import Place, parse_place, zr_space
from zariski.verify import standard_system

Q = FieldSpec.qz()
XQ = zr_space(Q)
print("first places of Q/Z:", [str(v) for v in XQ.first(6)])

Y = XQ.cofinite([Place.prime(3)])  # every prime but 3, no generic point
for name, op in OPERATORS.items():
    print(f"  {name:5} {op(XQ, Y).to_json()}")

F = FieldSpec.fp(5)
X = zr_space(F)
print("first places of F_5(x)/F_5:", [str(v) for v in X.first(8)])

# the nodal cubic glues the places x-1 and x+1 into one point
nodal = ProjectiveModel(F, ["1", "x^2-1", "x^3-x"], "g2/g1", name="nodal")
node = center(nodal, parse_place("x-1", F))
print("node:", node, "fiber:", [str(v) for v in fiber(nodal, node)])
print(fiber_dot(nodal, 8))

# inverse closure, patch closure and pt read off a system of models
S = standard_system(5)
Z = X.finite([parse_place("x-1", F), parse_place("x", F)])
for op, W in limit_ops(S, Z).items():
    print(f"  limit {op:5} {W.to_json()}   intrinsic {OPERATORS[op](X, Z).to_json()}")
