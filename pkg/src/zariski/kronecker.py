"""Kronecker and Nagata function rings, inverse closures certified by
membership, and explicit Prufer witnesses.

Kr(Z) is never materialised; it is the membership predicate
:func:`in_kronecker`.  Topological claims about Z are certified by
separating elements: an s in F that lies in Kr(Z) but not in W* proves W
is outside the inverse closure of Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .fields import FieldSpec, RatFunc
from .models import _Span
from .onedim import SubsetDesc, gen1, inv1
from .poly import Poly, factor, poly_gcd, rational_roots
from .valuations import (
    Place,
    TPoly,
    TRational,
    _place_sort_key,
    gauss_value,
    value,
    zeros_and_poles,
    zr_space,
)

__all__ = [
    "NotAffine",
    "ZeroElement",
    "Inconclusive",
    "KrQuery",
    "RingDesc",
    "PruferWitness",
    "Certified",
    "in_star",
    "in_kronecker",
    "content_criterion",
    "in_nagata",
    "separator",
    "inv_via_kronecker",
    "ring_desc",
    "affine_test",
    "prufer_witness",
    "pt_via_max",
    "localization_subset",
    "in_localization",
    "monic_no_root_subset",
]


class NotAffine(ValueError):
    pass


class ZeroElement(ValueError):
    pass


class Inconclusive(Exception):
    """A bounded search ran out before reaching a decision."""


@dataclass(frozen=True)
class KrQuery:
    spec: FieldSpec
    Z: SubsetDesc
    h: TRational


def in_star(v: Place, h) -> bool:
    """Is h in the Gaussian extension V* of v?  Elements of F are allowed."""
    if not isinstance(h, (TPoly, TRational)):
        return value(v, h) >= 0
    return gauss_value(v, h) >= 0


def _coeffs(h):
    if isinstance(h, TPoly):
        return list(h.c)
    if isinstance(h, TRational):
        return list(h.num.c) + list(h.den.c)
    return [h]


def _as_trational(h, spec):
    if isinstance(h, TRational):
        return h
    if isinstance(h, TPoly):
        return TRational(h)
    return TRational.const(h, spec)


def in_kronecker(spec_or_query, Z: SubsetDesc | None = None, h=None) -> bool:
    """Is h in Kr(Z), the intersection of V* over V in Z?

    Outside the finitely many places where some coefficient of h has a
    zero or pole every Gauss value is 0, so only those places are checked.
    """
    if isinstance(spec_or_query, KrQuery):
        spec, Z, h = spec_or_query.spec, spec_or_query.Z, spec_or_query.h
    else:
        spec = spec_or_query
    h = _as_trational(h, spec)
    if not h.num:
        return True
    places = set()
    for a in _coeffs(h):
        if a:
            places.update(zeros_and_poles(a))
    return all(in_star(v, h) for v in places if v in Z)


def _int_content(f):
    c = [a for a in (f.c if isinstance(f, TPoly) else f)]
    out = 0
    for a in c:
        a = Fraction(a)
        if a.denominator != 1:
            raise ValueError("integer coefficients expected")
        out = math.gcd(out, a.numerator)
    return out


def content_criterion(f, g) -> bool:
    """Over Z: does content(g) divide content(f)?

    Contents are principal and integrally closed over a PID, so inclusion
    of the integral closures of the content ideals is just divisibility.
    """
    cg = _int_content(g)
    if cg == 0:
        raise ZeroDivisionError("g must be nonzero")
    return _int_content(f) % cg == 0


def in_nagata(spec: FieldSpec, f, g) -> bool:
    """Is f/g in the Nagata ring D(T) (content of g a unit of D)?"""
    gc = list(g.c if isinstance(g, TPoly) else g)
    if not any(gc):
        raise ZeroDivisionError("g must be nonzero")
    if spec.kind == "qz":
        return _int_content(gc) == 1
    for a in gc:
        a = spec.coerce(a)
        if not a.is_const():
            raise ValueError("coefficients must lie in the constant field")
    return True


# -- inverse closure and pt, certified --------------------------------------


def separator(spec: FieldSpec, W: Place):
    """Element with its only pole at W: 1/p, 1/pi, or x for the infinite place."""
    if W.kind == "prime":
        return Fraction(1, W.value)
    if W.kind == "poly":
        return RatFunc(Poly.const(1, W.value.p), W.value)
    if W.kind == "infinity":
        return spec.x()
    raise ValueError("the trivial place cannot be separated")


@dataclass
class Certified:
    """A subset together with checked certificates.

    ``certificates`` maps a place to the element used for it; ``checked``
    lists places whose certificate was verified; ``probe`` is the bound.
    """

    subset: SubsetDesc
    certificates: dict = field(default_factory=dict)
    checked: list = field(default_factory=list)
    probe: int = 0
    ok: bool = True
    failures: list = field(default_factory=list)


def inv_via_kronecker(spec: FieldSpec, Z: SubsetDesc, probe: int = 64) -> Certified:
    """Places V with Kr(Z) inside V*, decided by Kronecker membership.

    A closed place W is outside the answer exactly when its separator s_W
    (whose only pole is at W) lies in Kr(Z); then s_W is the certificate.
    Only the listed keys of Z can be inside when Z is finite, and only its
    excluded keys can be outside when Z is cofinite, so the answer is
    exact; certificates are emitted for every excluded point of a cofinite
    answer and for the probed ones otherwise.
    """
    space = zr_space(spec)
    if Z.is_empty():
        # Kr of the empty family is all of F(T); we keep inv of the empty
        # set empty, so no certificate applies
        return Certified(Z, probe=probe)
    out = Certified(Z, probe=probe)

    def separated(W):
        s = separator(spec, W)
        if in_kronecker(spec, Z, s):
            if in_star(W, TRational.const(s, spec)):
                out.ok = False
                out.failures.append(W)
            out.certificates[W] = s
            out.checked.append(W)
            return True
        return False

    if Z.cofinite:
        outside = [W for W in sorted(Z.keys, key=space.sort_key) if separated(W)]
        closed = SubsetDesc(space, outside, cofinite=True)
    else:
        inside = [W for W in Z.sorted_keys() if not separated(W)]
        closed = SubsetDesc(space, inside)
        for W in space.first(probe):
            if W not in closed and W not in out.certificates and not separated(W):
                out.ok = False
                out.failures.append(W)
    # the generic point: F(T) contains every Kr(Z)
    out.subset = closed.with_generic(True)
    return out


def pt_via_max(spec: FieldSpec, Z: SubsetDesc, probe: int = 64) -> Certified:
    """pt(Z), cross-checked against minimality of Gauss extensions.

    For every probed V in the result and every other probed W in inv(Z),
    an element of W* outside V* shows W* is not contained in V*.  If the
    generic point is in inv(Z) but not in the result, a closed V in inv(Z)
    with V* strictly smaller than F(T) is exhibited.
    """
    space = zr_space(spec)
    iv = inv_via_kronecker(spec, Z, probe).subset
    res = iv.closed_part() if not iv.closed_is_empty() else iv
    out = Certified(res, probe=probe)
    probed = [v for v in space.first(probe) if v in iv]
    for V in probed:
        if V not in res:
            continue
        s = separator(spec, V)
        S = TRational.const(s, spec)
        for W in probed:
            if W == V:
                continue
            if not (in_star(W, S) and not in_star(V, S)):
                out.ok = False
                out.failures.append((V, W))
        out.certificates[V] = s
        out.checked.append(V)
    if iv.generic and not res.generic:
        closed = [v for v in probed if v in res]
        if not closed and not res.cofinite:
            closed = res.sorted_keys()[:1]
        if closed:
            V = closed[0]
            s = separator(spec, V)
            if in_star(V, TRational.const(s, spec)):
                out.ok = False
                out.failures.append((V, "generic"))
            out.certificates[Place.trivial()] = (V, s)
    return out


# -- the ring A = intersection of V over Z ----------------------------------


@dataclass(frozen=True)
class RingDesc:
    """Description of A = intersection of the valuation rings in Z.

    ``kind``: ``"Field"``, ``"Constants"``, ``"SemilocalPID"`` (A is the
    intersection over the finite ``places``) or ``"DedekindComplement"``
    (poles are allowed exactly at the finite set ``places``).
    """

    spec: FieldSpec
    kind: str
    places: tuple = ()

    def contains(self, a) -> bool:
        if not a:
            return True
        if self.kind == "Field":
            return True
        if self.kind == "Constants":
            if self.spec.kind == "qz":
                return Fraction(a).denominator == 1
            return self.spec.coerce(a).is_const()
        poles = [v for v, k in zeros_and_poles(a).items() if k < 0]
        if self.kind == "SemilocalPID":
            return not any(v in self.places for v in poles)
        return all(v in self.places for v in poles)

    @property
    def quotient_field_is_F(self) -> bool:
        return not (self.kind == "Constants" and self.spec.is_function_field)

    @property
    def is_prufer(self) -> bool:
        # fields, Z, k, semilocal PIDs and Dedekind rings are all Prufer
        return True

    def describe(self) -> str:
        names = ", ".join(str(v) for v in self.places)
        if self.kind == "Field":
            return "F"
        if self.kind == "Constants":
            return "Z" if self.spec.kind == "qz" else "k"
        if self.kind == "SemilocalPID":
            return f"intersection of the valuation rings at {{{names}}}"
        return f"elements with poles only at {{{names}}}"

    def to_json(self):
        return {"kind": self.kind, "places": [v.to_json() for v in self.places], "description": self.describe()}


def ring_desc(spec: FieldSpec, Z: SubsetDesc) -> RingDesc:
    places = tuple(sorted(Z.keys, key=_place_sort_key))
    if Z.closed_is_empty():
        return RingDesc(spec, "Field")
    if Z.cofinite and not Z.keys:
        return RingDesc(spec, "Constants")
    if not Z.cofinite:
        return RingDesc(spec, "SemilocalPID", places)
    return RingDesc(spec, "DedekindComplement", places)


def affine_test(spec: FieldSpec, Z: SubsetDesc) -> dict:
    """Z is affine iff it is inverse closed and A is Prufer with quotient field F."""
    space = zr_space(spec)
    if Z.is_empty():
        return {"affine": False, "reason": "the empty set is not the spectrum of a ring with quotient field F"}
    if gen1(space, Z) != Z:
        return {"affine": False, "reason": "not inverse closed (missing the generic point)"}
    R = ring_desc(spec, Z)
    if not R.quotient_field_is_F:
        return {"affine": False, "reason": f"A = {R.describe()} does not have quotient field F"}
    if not R.is_prufer:
        return {"affine": False, "reason": "A is not Prufer"}
    return {"affine": True, "reason": f"inverse closed and A = {R.describe()} is Prufer with quotient field F"}


# -- Prufer witnesses -------------------------------------------------------


@dataclass
class PruferWitness:
    """Elements with 1 = sum b_i and b_i t_j = a_ij t_i, all in A."""

    t: list
    b: list
    a: list
    ring: RingDesc

    @property
    def R_gens(self):
        return list(self.b) + [x for row in self.a for x in row]

    def verify(self) -> dict:
        one = reduce(lambda x, y: x + y, self.b)
        n = len(self.t)
        rel = all(self.b[i] * self.t[j] == self.a[i][j] * self.t[i] for i in range(n) for j in range(n))
        in_A = all(self.ring.contains(g) for g in self.R_gens)
        return {"sum_is_one": one == 1, "relations": rel, "in_A": in_A, "ok": one == 1 and rel and in_A}


def _qz_inverse_elements(t, Z):
    # d generates (t)A; then an integer Bezout relation for the t_i/d
    relevant = set()
    for ti in t:
        relevant.update(zeros_and_poles(ti))
    d = Fraction(1)
    for v in relevant:
        if v in Z:
            d *= Fraction(v.value) ** min(value(v, ti) for ti in t)
    s = [ti / d for ti in t]
    E = reduce(lambda x, y: x * y // math.gcd(x, y), (si.denominator for si in s), 1)
    n = [int(si * E) for si in s]
    g, k = _int_bezout(n)
    return [Fraction(ki * E, g) / d for ki in k]


def _int_bezout(ns):
    g, coeffs = 0, []
    for a in ns:
        # g_new = u*g + w*a
        if not coeffs:
            g, coeffs = a, [1]
            continue
        g2, u, w = _xgcd(g, a)
        coeffs = [c * u for c in coeffs] + [w]
        g = g2
    if g < 0:
        g, coeffs = -g, [-c for c in coeffs]
    return g, coeffs


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _riemann_roch_space(spec, bounds):
    """Basis of {u : value(u, v) >= -n_v for all v} on the projective line.

    ``bounds`` maps places to n_v (zero elsewhere).
    """
    p = spec.p
    Q = Poly.const(1, p)
    R = Poly.const(1, p)
    n_inf = bounds.get(Place.infinity(), 0)
    for v, n in bounds.items():
        if v.kind != "poly" or n == 0:
            continue
        if n > 0:
            Q = Q * v.value**n
        else:
            R = R * v.value ** (-n)
    top = n_inf + Q.deg - R.deg
    base = RatFunc(R, Q)
    return [base * RatFunc(Poly.monomial(k, 1, p)) for k in range(top + 1)]


def _vec_of(f, d):
    c = list(f.c) + [0] * (d - len(f.c))
    return [a if f.p else Fraction(a) for a in c[:d]]


def _fx_inverse_elements(spec, t, Z):
    """u_i with value(u_i, v) >= -min_j value(t_j, v) on Z and sum t_i u_i = 1.

    The u_i are searched in Riemann-Roch spaces: poles of order up to N are
    allowed on a set P of places outside Z, and N grows until the linear
    system over k becomes solvable.
    """
    space = Z.space
    if Z.cofinite:
        P = sorted(Z.keys, key=_place_sort_key)
    else:
        P = [next(v for v in space.closed_points() if v not in Z)]
    relevant = set()
    for ti in t:
        relevant.update(zeros_and_poles(ti))
    m = {v: min(value(v, ti) for ti in t) for v in relevant}
    size = sum(ti.num.deg + ti.den.deg for ti in t)
    for N in range(0, 2 * size + 8):
        bounds = {v: m[v] for v in relevant if v not in P}
        for v in P:
            bounds[v] = max(N, m.get(v, 0))
        basis = _riemann_roch_space(spec, bounds)
        cols = [(i, e) for i in range(len(t)) for e in basis]
        if not cols:
            continue
        prods = [t[i] * e for i, e in cols]
        den = Poly.const(1, spec.p)
        for q in prods:
            den = den * q.den // poly_gcd(den, q.den)
        polys = [(q * RatFunc(den)).num for q in prods]
        dim = max([den.deg] + [f.deg for f in polys]) + 1
        span = _Span(dim, spec.p)
        kept = [k for k, f in enumerate(polys) if span.add(_vec_of(f, dim))]
        coeffs = span.express(_vec_of(den, dim))
        if coeffs is None:
            continue
        u = [spec.zero() for _ in t]
        for c, k in zip(coeffs, kept):
            i, e = cols[k]
            u[i] = u[i] + e * spec.const(c)
        return u
    raise Inconclusive("no Prufer witness found within the search bound")


def prufer_witness(spec: FieldSpec, Z: SubsetDesc, t) -> PruferWitness:
    """Explicit b_i, a_ij for the ideal generated by t in A.

    Finds u_i in the inverse ideal with sum t_i u_i = 1 and sets
    b_i = t_i u_i, a_ij = t_j u_i.
    """
    if not affine_test(spec, Z)["affine"]:
        raise NotAffine("Z is not affine")
    t = [spec.coerce(a) for a in t]
    if not t:
        raise ValueError("need at least one element")
    if any(not a for a in t):
        raise ZeroElement("elements must be nonzero")
    R = ring_desc(spec, Z)
    if spec.kind == "qz":
        u = _qz_inverse_elements(t, Z)
    else:
        u = _fx_inverse_elements(spec, t, Z)
    n = len(t)
    b = [t[i] * u[i] for i in range(n)]
    a = [[t[j] * u[i] for j in range(n)] for i in range(n)]
    return PruferWitness(t, b, a, R)


# -- localisation -----------------------------------------------------------


def localization_subset(spec: FieldSpec, Z: SubsetDesc, S) -> SubsetDesc:
    """Places of inv(Z) where every s in S is a unit, plus the generic point."""
    space = zr_space(spec)
    R = ring_desc(spec, Z)
    S = [spec.coerce(s) for s in S]
    for s in S:
        if not s:
            raise ZeroElement("s must be nonzero")
        if not R.contains(s):
            raise ValueError(f"{s} is not in A")
    zeros = set()
    for s in S:
        zeros.update(v for v, k in zeros_and_poles(s).items() if k > 0)
    Y = inv1(space, Z) - SubsetDesc(space, zeros)
    return Y.with_generic()


def in_localization(spec: FieldSpec, Z: SubsetDesc, S, a) -> bool:
    """Is a in A_S, i.e. a * (prod S)^n in A for some n?"""
    if not a:
        return True
    prod = spec.one()
    for s in S:
        prod = prod * spec.coerce(s)
    for v, k in zeros_and_poles(a).items():
        if k < 0 and v in Z:
            w = value(v, prod)
            if w <= 0:
                return False
    return True


# -- monic polynomials without roots in residue fields ----------------------


@dataclass
class RootFreeView:
    """Places whose residue field holds no root of m.

    ``subset`` is set when the answer is finite or cofinite.  Otherwise
    ``status`` is ``"not_representable"`` (proved infinite and coinfinite)
    or ``"undetermined"``, and ``probe`` records per-place answers (None
    where the bounded root test gave up).
    """

    status: str
    subset: SubsetDesc | None
    generic: bool
    probe: dict
    gen_closed_on_probe: bool


def _monic_coeffs(spec, m):
    c = list(m.c) if isinstance(m, TPoly) else [spec.coerce(a) for a in m]
    while c and not c[-1]:
        c.pop()
    if len(c) < 2:
        raise ValueError("m must be nonconstant")
    if c[-1] != 1:
        raise ValueError("m must be monic")
    out = []
    for a in c:
        if spec.kind == "qz":
            a = Fraction(a)
            if a.denominator != 1:
                raise ValueError("m must have coefficients in Z")
            out.append(a)
        else:
            a = spec.coerce(a)
            if not a.is_const():
                raise ValueError("m must have coefficients in k")
            out.append(a.const_value())
    return out


def _has_root_mod(coeffs, p, d=1):
    f = Poly([int(a) % p for a in coeffs], p)
    x = Poly.x(p)
    h = x.pow_mod(p**d, f) - x
    return poly_gcd(f, h % f).deg > 0


def _root_in_number_field(mq: Poly, pi: Poly):
    # does mq have a root in Q[x]/(pi)?  True/False, or None when undecided
    d = pi.deg
    facs = factor(mq)
    if any(g.deg == 1 for g, _ in facs):
        return True
    if all(d % g.deg for g, _ in facs):
        return False
    if d == 2 and all(g.deg == 2 or d % g.deg for g, _ in facs):
        disc_pi = pi.c[1] ** 2 - 4 * pi.c[0]
        for g, _ in facs:
            if g.deg != 2:
                continue
            disc = g.c[1] ** 2 - 4 * g.c[0]
            if _is_rational_square(disc * disc_pi):
                return True
        return False
    return None


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, dd = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(dd) ** 2 == dd


def monic_no_root_subset(spec: FieldSpec, m, probe: int = 256) -> RootFreeView:
    """The places whose residue field contains no root of the monic m."""
    coeffs = _monic_coeffs(spec, m)
    space = zr_space(spec)
    p = spec.p
    mq = Poly(coeffs, p)
    # rational roots of a monic integer polynomial are integers
    roots = [a for a in range(p) if not mq(a)] if p else rational_roots(mq)

    def test(v):
        if v.kind == "trivial":
            return not roots
        if v.kind == "prime":
            return not _has_root_mod(coeffs, v.value)
        if v.kind == "infinity":
            return not roots
        if p:
            return not _has_root_mod(coeffs, p, v.value.deg)
        if v.value.deg == 1:
            return not roots
        r = _root_in_number_field(mq, v.value)
        return None if r is None else not r

    probed = {v: test(v) for v in space.first(probe)}
    generic = test(Place.trivial())
    nonempty = any(val for val in probed.values())
    gen_ok = (not nonempty) or generic
    if roots:
        # a root in D reduces to a root in every residue field
        return RootFreeView("exact", space.empty(), False, probed, gen_ok)
    if spec.kind == "qz":
        facs = factor(mq)
        if len(facs) == 1:
            # irreducible of degree >= 2: infinitely many primes split it
            # and infinitely many leave it without roots
            return RootFreeView("not_representable", None, True, probed, gen_ok)
        return RootFreeView("undetermined", None, True, probed, gen_ok)
    # no root in k: places of degree prime to every factor degree have no
    # root, places whose degree is a factor degree have one
    return RootFreeView("not_representable", None, True, probed, gen_ok)
