"""Places of Q over Z and of k(x) over k, with exact valuation arithmetic.

The valuation rings of Q containing Z are the localisations Z_(p) and Q
itself.  The valuation rings of k(x) containing k are the localisations of
k[x] at monic irreducibles, the ring of the degree valuation (``Infinity``),
and k(x) itself.  These classical facts are what make every space here a
:class:`~zariski.onedim.OneDimSpace`.

All valuations are discrete of rank one with value group Z; the value of
zero is ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .fields import FieldSpec, RatFunc, evaluate, parse_expr
from .onedim import OneDimSpace, SubsetDesc
from .poly import (
    Poly,
    factor,
    fp_poly_sort_key,
    is_irreducible,
    monic_irreducibles,
    q_poly_sort_key,
)

__all__ = [
    "Place",
    "value",
    "in_ring",
    "in_max_ideal",
    "residue_degree",
    "residue_char",
    "TPoly",
    "TRational",
    "parse_trational",
    "gauss_value",
    "zr_space",
    "zeros_and_poles",
    "exceptional_places",
    "intersection_member",
    "parse_place",
]


@dataclass(frozen=True)
class Place:
    """A valuation ring of F containing D.

    ``kind`` is ``"prime"`` (value: a prime int), ``"poly"`` (value: monic
    irreducible :class:`Poly`), ``"infinity"`` or ``"trivial"`` (value None).
    """

    kind: str
    value: object = None

    def __post_init__(self):
        if self.kind not in ("prime", "poly", "infinity", "trivial"):
            raise ValueError(f"unknown place kind {self.kind!r}")
        if self.kind == "prime" and not (isinstance(self.value, int) and sympy.isprime(self.value)):
            raise ValueError(f"{self.value!r} is not a prime")
        if self.kind == "poly":
            f = self.value
            if not isinstance(f, Poly) or not f.is_monic() or not is_irreducible(f):
                raise ValueError(f"{f!r} is not a monic irreducible polynomial")
        if self.kind in ("infinity", "trivial") and self.value is not None:
            raise ValueError(f"{self.kind} place carries no value")

    @classmethod
    def prime(cls, p):
        return cls("prime", int(p))

    @classmethod
    def poly(cls, f):
        return cls("poly", f)

    @classmethod
    def infinity(cls):
        return cls("infinity")

    @classmethod
    def trivial(cls):
        return cls("trivial")

    @property
    def is_trivial(self):
        return self.kind == "trivial"

    def __str__(self):
        if self.kind == "prime":
            return str(self.value)
        if self.kind == "poly":
            return self.value.format()
        return "inf" if self.kind == "infinity" else "generic"

    def __repr__(self):
        return f"Place({self})"

    def to_json(self):
        v = None if self.kind in ("infinity", "trivial") else str(self)
        return {"kind": self.kind, "value": v}


def _place_sort_key(v: Place):
    if v.kind == "prime":
        return (1, v.value)
    if v.kind == "infinity":
        return (0,)
    if v.kind == "poly":
        f = v.value
        return (1, fp_poly_sort_key(f) if f.p else q_poly_sort_key(f))
    return (2,)


# -- valuations -------------------------------------------------------------


def _int_val(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def value(v: Place, a) -> float | int:
    """Normalised valuation of ``a`` at ``v`` (``math.inf`` for zero)."""
    if not a:
        return math.inf
    if v.kind == "trivial":
        return 0
    if v.kind == "prime":
        a = Fraction(a)
        return _int_val(a.numerator, v.value) - _int_val(a.denominator, v.value)
    if not isinstance(a, RatFunc):
        return 0  # a nonzero constant of k
    if v.kind == "infinity":
        return a.den.deg - a.num.deg
    pi = v.value
    if pi.p != a.p:
        raise ValueError("place and element live over different fields")
    return a.num.order_at(pi) - a.den.order_at(pi)


def in_ring(v: Place, a) -> bool:
    return value(v, a) >= 0


def in_max_ideal(v: Place, a) -> bool:
    return value(v, a) > 0


def residue_degree(v: Place) -> int:
    """Degree of the residue field over the prime field (over F_p for a
    prime p) or over the constant field k."""
    if v.kind == "trivial":
        raise ValueError("the trivial place has no residue degree")
    if v.kind == "poly":
        return v.value.deg
    return 1


def residue_char(v: Place) -> int:
    if v.kind == "trivial":
        raise ValueError("the trivial place has no residue field to speak of")
    if v.kind == "prime":
        return v.value
    if v.kind == "poly":
        return v.value.p
    return 0  # filled in by callers that know k; Infinity has residue field k


# -- Gaussian extensions ----------------------------------------------------


class TPoly:
    """Polynomial in the auxiliary variable T with coefficients in F."""

    __slots__ = ("c", "spec")

    def __init__(self, coeffs, spec: FieldSpec):
        c = [spec.coerce(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "c", tuple(c))
        object.__setattr__(self, "spec", spec)

    def __setattr__(self, name, value):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def T(cls, spec):
        return cls([0, 1], spec)

    @property
    def deg(self):
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, TPoly) and self.spec == other.spec and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def _coerce(self, other):
        if isinstance(other, TPoly):
            return other
        return TPoly([other], self.spec)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.c), len(other.c))
        z = self.spec.zero()
        return TPoly(
            [(self.c[i] if i < len(self.c) else z) + (other.c[i] if i < len(other.c) else z) for i in range(n)],
            self.spec,
        )

    __radd__ = __add__

    def __neg__(self):
        return TPoly([-a for a in self.c], self.spec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.c or not other.c:
            return TPoly([], self.spec)
        out = [self.spec.zero()] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return TPoly(out, self.spec)

    __rmul__ = __mul__

    def content_values(self, v: Place) -> float:
        """Minimum valuation of the coefficients."""
        return min((value(v, a) for a in self.c), default=math.inf)

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            s = str(a)
            if i and any(ch in s[1:] for ch in "+-/"):
                s = f"({s})"
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if mono:
                if s == "1":
                    s = mono
                elif s == "-1":
                    s = "-" + mono
                else:
                    s = f"{s}*{mono}"
            terms.append(s)
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    __repr__ = __str__


class TRational:
    """Fraction of two TPolys; not reduced (reduction would need gcds over F)."""

    __slots__ = ("num", "den")

    def __init__(self, num: TPoly, den: TPoly | None = None):
        if den is None:
            den = TPoly([1], num.spec)
        if not den:
            raise ZeroDivisionError("zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("TRational is immutable")

    @property
    def spec(self):
        return self.num.spec

    @classmethod
    def const(cls, a, spec):
        return cls(TPoly([a], spec))

    def _coerce(self, other):
        if isinstance(other, TRational):
            return other
        if isinstance(other, TPoly):
            return TRational(other)
        return TRational.const(other, self.spec)

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._coerce(other)
        return TRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return TRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return TRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by zero")
        return TRational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        o = self._coerce(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("TRational is not hashable")

    def __str__(self):
        if self.den == TPoly([1], self.spec):
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def parse_trational(text: str, spec: FieldSpec) -> TRational:
    """Parse e.g. ``"(2*T^2+6)/(4*T+2)"``; ``x`` is allowed in the k(x) settings."""
    node = parse_expr(text)
    env = {"T": TRational(TPoly.T(spec))}
    if spec.is_function_field:
        env["x"] = TRational.const(spec.x(), spec)
    return evaluate(node, env, lambda n: TRational.const(n, spec))


def gauss_value(v: Place, h: TRational | TPoly) -> float | int:
    """Value of h under the Gauss extension of v to F(T)."""
    if isinstance(h, TPoly):
        h = TRational(h)
    if not h.num:
        return math.inf
    if v.kind == "trivial":
        return 0
    return h.num.content_values(v) - h.den.content_values(v)


# -- the Zariski-Riemann spaces ---------------------------------------------


def _qz_enum():
    p = 2
    while True:
        yield Place.prime(p)
        p = int(sympy.nextprime(p))


def _fx_enum(p):
    yield Place.infinity()
    for f in monic_irreducibles(p):
        yield Place("poly", f)


def _contains_for(spec):
    def contains(v):
        if not isinstance(v, Place) or v.kind == "trivial":
            return False
        if spec.kind == "qz":
            return v.kind == "prime"
        if v.kind == "infinity":
            return True
        return v.kind == "poly" and v.value.p == spec.p

    return contains


def parse_place(obj, spec: FieldSpec) -> Place:
    """Accept a Place, a string such as ``"7"``, ``"x^2+1"``, ``"inf"``,
    ``"generic"``, or a ``{"kind": ..., "value": ...}`` object."""
    if isinstance(obj, Place):
        return obj
    if isinstance(obj, dict):
        kind = obj.get("kind")
        val = obj.get("value")
        if kind == "prime":
            return Place.prime(int(val))
        if kind == "poly":
            return Place.poly(spec.parse_poly(str(val)))
        if kind in ("infinity", "trivial"):
            return Place(kind)
        raise ValueError(f"unknown place kind {kind!r}")
    if isinstance(obj, int) and spec.kind == "qz":
        return Place.prime(obj)
    s = str(obj).strip()
    if s in ("inf", "infinity", "Infinity", "∞"):
        return Place.infinity()
    if s in ("generic", "trivial"):
        return Place.trivial()
    if spec.kind == "qz":
        return Place.prime(int(s))
    f = spec.parse_poly(s)
    if not f.is_monic():
        raise ValueError(f"{s!r} is not monic")
    return Place.poly(f)


@lru_cache(maxsize=None)
def zr_space(spec: FieldSpec) -> OneDimSpace:
    """The Zariski-Riemann space of F/D as a OneDimSpace of Places.

    Cached per setting, so subsets built from repeated calls are comparable.
    """
    if spec.kind == "qz":
        enum = _qz_enum
    else:
        p = spec.p

        def enum():
            return _fx_enum(p)

    return OneDimSpace(
        f"ZR({spec})",
        enumerator=enum,
        contains=_contains_for(spec),
        sort_key=_place_sort_key,
        format_key=str,
        parse_key=lambda obj: parse_place(obj, spec),
    )


def _spec_of(a):
    if isinstance(a, RatFunc):
        return FieldSpec.fp(a.p) if a.p else FieldSpec.qx()
    return FieldSpec.qz()


def zeros_and_poles(a) -> dict:
    """``{place: value}`` for every non-trivial place where a has nonzero value."""
    if not a:
        raise ValueError("zero has a zero everywhere")
    out = {}
    if not isinstance(a, RatFunc):
        a = Fraction(a)
        for p in sympy.primefactors(a.numerator * a.denominator):
            v = Place.prime(int(p))
            out[v] = value(v, a)
        return out
    for f in (a.num, a.den):
        for pi, _ in factor(f):
            v = Place("poly", pi)
            out[v] = value(v, a)
    d = a.den.deg - a.num.deg
    if d:
        out[Place.infinity()] = d
    return out


def exceptional_places(a) -> list:
    return sorted(zeros_and_poles(a), key=_place_sort_key)


def intersection_member(Z: SubsetDesc, a) -> bool:
    """Is ``a`` in the intersection of the valuation rings in Z?

    Only the poles of ``a`` can fail, and there are finitely many.  The
    generic point contributes F itself and imposes nothing.
    """
    if not a:
        return True
    return not any(val < 0 and v in Z for v, val in zeros_and_poles(a).items())
