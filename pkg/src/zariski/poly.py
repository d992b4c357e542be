"""Univariate polynomials over Q or a prime field F_p.

A polynomial is stored as a tuple of coefficients, lowest degree first,
with no trailing zeros.  ``p == 0`` means rational coefficients held as
``fractions.Fraction``; ``p > 0`` means integers reduced into ``range(p)``.

The module also carries the small amount of number theory the rest of the
package needs: irreducibility tests, factorisation, and the enumeration of
monic irreducibles in a fixed order.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd
from sympy.polys.factortools import dup_factor_list
from sympy.polys.galoistools import gf_factor

__all__ = [
    "Poly",
    "poly_gcd",
    "poly_xgcd",
    "is_irreducible",
    "factor",
    "factor_by_trial_division",
    "rational_roots",
    "rational_roots_by_search",
    "monic_irreducibles",
    "rational_height",
    "rational_sort_key",
    "q_poly_sort_key",
    "fp_poly_sort_key",
]


def _norm(a, p):
    if p:
        if isinstance(a, Fraction):
            if a.denominator % p == 0:
                raise ZeroDivisionError(f"{a} has no image in F_{p}")
            return a.numerator * pow(a.denominator, -1, p) % p
        return int(a) % p
    return Fraction(a)


def _inv(a, p):
    if p:
        return pow(a, -1, p)
    return 1 / Fraction(a)


class Poly:
    """Polynomial in one variable over Q (``p=0``) or F_p.

    Immutable and hashable.  Arithmetic between polynomials of different
    characteristic raises ``ValueError``.
    """

    __slots__ = ("c", "p")

    def __init__(self, coeffs=(), p=0):
        c = [_norm(a, p) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "c", tuple(c))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, c, p):
        # trusted constructor: c already normalised and stripped
        obj = object.__new__(cls)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "p", p)
        return obj

    @classmethod
    def const(cls, a, p=0):
        return cls((a,), p)

    @classmethod
    def x(cls, p=0):
        return cls((0, 1), p)

    @classmethod
    def monomial(cls, deg, a=1, p=0):
        return cls([0] * deg + [a], p)

    # -- basic data -------------------------------------------------------

    @property
    def deg(self):
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else self._zero()

    def _zero(self):
        return 0 if self.p else Fraction(0)

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self._zero()

    def __iter__(self):
        return iter(self.c)

    def is_const(self):
        return len(self.c) <= 1

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.c))

    def __repr__(self):
        field = f"F_{self.p}" if self.p else "Q"
        return f"Poly({self}, {field})"

    def __str__(self):
        return self.format()

    def format(self, var="x"):
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if not a:
                continue
            neg = (not self.p) and a < 0
            mag = -a if neg else a
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if neg else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += sign + body
        return out

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, p = self.c, other.c, self.p
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            s = (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            out.append(s % p if p else s)
        while out and not out[-1]:
            out.pop()
        if not p:
            out = [Fraction(v) for v in out]
        return Poly._raw(tuple(out), p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(tuple((-a) % p if p else -a for a in self.c), p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, p = self.c, other.c, self.p
        if not a or not b:
            return Poly._raw((), p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        if p:
            out = [v % p for v in out]
        else:
            out = [Fraction(v) for v in out]
        while out and not out[-1]:
            out.pop()
        return Poly._raw(tuple(out), p)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, a):
        return self * Poly.const(a, self.p)

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.c)
        db = other.deg
        inv_lc = _inv(other.lc, p)
        if len(r) - 1 < db:
            return Poly._raw((), p), self
        q = [0] * (len(r) - db)
        b = other.c
        for k in range(len(r) - 1 - db, -1, -1):
            coef = r[k + db] * inv_lc
            if p:
                coef %= p
            q[k] = coef
            if coef:
                for j, bj in enumerate(b):
                    v = r[k + j] - coef * bj
                    r[k + j] = v % p if p else v
        return Poly(q, p), Poly(r[:db], p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def monic(self):
        if not self.c:
            return self
        return self.scale(_inv(self.lc, self.p))

    def derivative(self):
        return Poly([k * a for k, a in enumerate(self.c)][1:], self.p)

    def __call__(self, t):
        """Evaluate by Horner's rule; ``t`` may be any ring element that
        accepts multiplication and addition by coefficients."""
        acc = None
        for a in reversed(self.c):
            acc = a if acc is None else acc * t + a
        if acc is None:
            return self._zero()
        if self.p and isinstance(acc, int):
            return acc % self.p
        return acc

    def compose(self, other):
        acc = Poly._raw((), self.p)
        for a in reversed(self.c):
            acc = acc * other + a
        return acc

    def pow_mod(self, n, mod):
        result = Poly.const(1, self.p) % mod
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            n >>= 1
        return result

    def order_at(self, pi):
        """Multiplicity of the irreducible ``pi`` as a factor of ``self``."""
        if not self.c:
            raise ValueError("order of zero polynomial")
        k, f = 0, self
        while True:
            q, r = divmod(f, pi)
            if r:
                return k
            f, k = q, k + 1

    def strip(self, pi):
        """Return ``(k, g)`` with ``self = pi**k * g`` and ``pi`` not dividing ``g``."""
        k, f = 0, self
        while True:
            q, r = divmod(f, pi)
            if r:
                return k, f
            f, k = q, k + 1

    def to_integer_primitive(self):
        """For p == 0: (scale, g) with g integer-coefficient primitive, self = scale * g."""
        if self.p:
            raise ValueError("only for rational polynomials")
        if not self.c:
            return Fraction(0), self
        den = 1
        for a in self.c:
            den = den * a.denominator // _gcd(den, a.denominator)
        ints = [int(a * den) for a in self.c]
        g = 0
        for v in ints:
            g = _gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly([v // g for v in ints])


def _gcd(a, b):
    return math.gcd(a, b)


def _integer_dense(f: Poly):
    # integer multiple of f, highest degree first
    den = 1
    for c in f.c:
        den = den * c.denominator // _gcd(den, c.denominator)
    return [ZZ(int(c * den)) for c in reversed(f.c)]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    if not a.p and a and b:
        # Euclid over Q blows up coefficients; use an integer gcd instead
        g = dup_gcd(_integer_dense(a), _integer_dense(b), ZZ)
        return Poly([Fraction(int(c)) for c in reversed(g)]).monic()
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` monic."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = Poly.const(1, p), Poly((), p)
    t0, t1 = Poly((), p), Poly.const(1, p)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    k = _inv(r0.lc, p)
    return r0.scale(k), s0.scale(k), t0.scale(k)


# -- irreducibility and factorisation ---------------------------------------


def _divisors(n):
    n = abs(n)
    out = []
    for d in sympy.divisors(n):
        out.append(int(d))
    return out


def rational_roots(f: Poly):
    """Rational roots of ``f`` over Q, ascending, without multiplicity."""
    if f.p:
        raise ValueError("rational_roots is for Q[x]")
    if f.deg < 1:
        return []
    _, facs = dup_factor_list(_integer_dense(f), ZZ)
    return sorted(Fraction(-int(g[1]), int(g[0])) for g, _ in facs if len(g) == 2)


def rational_roots_by_search(f: Poly):
    """Same as :func:`rational_roots`, by trying every p/q candidate."""
    if f.p:
        raise ValueError("rational_roots is for Q[x]")
    if f.deg < 1:
        return []
    _, g = f.to_integer_primitive()
    roots = set()
    k = 0
    while not g.c[k]:
        k += 1
    if k:
        roots.add(Fraction(0))
        g = Poly(g.c[k:])
    if g.deg >= 1:
        a0, an = int(g.c[0]), int(g.c[-1])
        for num in _divisors(a0):
            for den in _divisors(an):
                for r in (Fraction(num, den), Fraction(-num, den)):
                    if r not in roots and g(r) == 0:
                        roots.add(r)
    return sorted(roots)


def _rabin_irreducible(f: Poly) -> bool:
    # Rabin's test over F_p
    p, n = f.p, f.deg
    x = Poly.x(p)
    if n == 1:
        return True
    if poly_gcd(f, f.derivative()).deg > 0:
        return False
    primes_n = [q for q in sympy.primefactors(n)]
    for q in primes_n:
        h = x.pow_mod(p ** (n // q), f) - x
        if poly_gcd(f, h % f).deg > 0:
            return False
    return (x.pow_mod(p**n, f) - x) % f == Poly((), p)


def _to_sympy(f: Poly):
    xs = sympy.Symbol("x")
    if f.p:
        return sympy.Poly(list(reversed([int(a) for a in f.c])), xs, modulus=f.p)
    return sympy.Poly(list(reversed([sympy.Rational(a.numerator, a.denominator) for a in f.c])), xs, domain="QQ")


def _from_sympy(g, p):
    coeffs = g.all_coeffs()[::-1]
    if p:
        return Poly([int(a) % p for a in coeffs], p)
    return Poly([Fraction(int(sympy.fraction(a)[0]), int(sympy.fraction(a)[1])) for a in coeffs])


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over the coefficient field.  Constants are not irreducible."""
    if f.deg < 1:
        return False
    if f.deg == 1:
        return True
    if f.p:
        return _rabin_irreducible(f.monic())
    if rational_roots(f):
        return False
    if f.deg <= 3:
        return True
    return bool(_to_sympy(f).is_irreducible)


def factor_by_trial_division(f: Poly):
    """Factor over F_p by dividing out monic irreducibles in enumeration
    order.  Exponential in the degree; kept as an independent check on
    :func:`factor` for small inputs."""
    p = f.p
    out = []
    rest = f.monic()
    for pi in monic_irreducibles(p):
        if rest.deg < 2 * pi.deg:
            break
        k, rest = rest.strip(pi)
        if k:
            out.append((pi, k))
    if rest.deg >= 1:
        # rest is irreducible; merge if it equals a factor already found
        for i, (pi, k) in enumerate(out):
            if pi == rest:
                out[i] = (pi, k + 1)
                break
        else:
            out.append((rest, 1))
    return out


def factor(f: Poly):
    """Factor a nonzero polynomial into ``[(monic irreducible, multiplicity), ...]``.

    Sorted by the enumeration order of the coefficient field.  The unit
    part (leading coefficient) is dropped.
    """
    if not f:
        raise ValueError("cannot factor zero")
    if f.deg < 1:
        return []
    if f.p:
        _, fl = gf_factor([int(a) for a in reversed(f.c)], f.p, ZZ)
        facs = [(Poly([int(a) for a in reversed(g)], f.p).monic(), int(k)) for g, k in fl]
        key = fp_poly_sort_key
    else:
        _, fl = sympy.factor_list(_to_sympy(f))
        facs = [(_from_sympy(g, 0).monic(), int(k)) for g, k in fl if g.degree() >= 1]
        key = q_poly_sort_key
    return sorted(facs, key=lambda t: key(t[0]))


# -- enumeration order --------------------------------------------------------


def fp_poly_sort_key(f: Poly):
    """Degree first, then coefficients from x^(d-1) down to x^0."""
    return (f.deg, tuple(reversed(f.c[:-1])))


def rational_height(a: Fraction) -> int:
    return max(abs(a.numerator), a.denominator) if a else 0


def rational_sort_key(a: Fraction):
    """Orders 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, ..."""
    return (rational_height(a), a.denominator, abs(a.numerator), a < 0)


def q_poly_sort_key(f: Poly):
    """Weight (degree + max height of lower coefficients), then degree, then
    coefficients from x^(d-1) down to x^0 under ``rational_sort_key``."""
    low = f.c[:-1]
    h = max((rational_height(a) for a in low), default=0)
    return (f.deg + h, f.deg, tuple(rational_sort_key(a) for a in reversed(low)))


@lru_cache(maxsize=None)
def _rationals_of_height(h):
    if h == 0:
        return (Fraction(0),)
    out = set()
    for den in range(1, h + 1):
        for num in range(1, h + 1):
            if max(num, den) == h and sympy.igcd(num, den) == 1:
                out.add(Fraction(num, den))
                out.add(Fraction(-num, den))
    return tuple(sorted(out, key=rational_sort_key))


def _q_monics_of_weight(w):
    for d in range(1, w + 1):
        h = w - d
        pool = [a for k in range(h + 1) for a in _rationals_of_height(k)]
        batch = []
        for tup in itertools.product(pool, repeat=d):
            if max((rational_height(a) for a in tup), default=0) != h:
                continue
            batch.append(Poly(list(reversed(tup)) + [1]))
        batch.sort(key=q_poly_sort_key)
        yield from batch


def monic_irreducibles(p):
    """Infinite generator of monic irreducibles over F_p (p > 0) or Q (p = 0)
    in the package's fixed order."""
    if p:
        for d in itertools.count(1):
            for tail in itertools.product(range(p), repeat=d):
                f = Poly(list(reversed(tail)) + [1], p)
                if is_irreducible(f):
                    yield f
    else:
        for w in itertools.count(1):
            for f in _q_monics_of_weight(w):
                if is_irreducible(f):
                    yield f
