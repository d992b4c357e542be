"""Field settings, elements of F, and the ASCII expression grammar.

Three settings are supported:

* ``FieldSpec.qz()``        F = Q over D = Z; elements are ``Fraction``.
* ``FieldSpec.fp(p)``       F = F_p(x) over D = F_p; elements are ``RatFunc``.
* ``FieldSpec.qx()``        F = Q(x) over D = Q; elements are ``RatFunc``.

The grammar is ordinary infix arithmetic: decimal integers, identifiers,
``+ - * / ^`` and parentheses.  A number directly followed by an
identifier or a parenthesis multiplies (``3x`` == ``3*x``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .poly import Poly, poly_gcd

__all__ = ["FieldSpec", "RatFunc", "parse_expr", "evaluate", "ParseError"]


class ParseError(ValueError):
    """Malformed expression; ``pos`` is the character offset."""

    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}" + (f" in {text!r}" if text else ""))


class RatFunc:
    """Element of k(x): coprime ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        p = num.p
        if den is None:
            den = Poly.const(1, p)
        if den.p != p:
            raise ValueError("characteristic mismatch")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = Poly((), p), Poly.const(1, p)
        else:
            g = poly_gcd(num, den)
            if g.deg > 0:
                num, den = num // g, den // g
            lc = den.lc
            if lc != 1:
                inv = pow(lc, -1, p) if p else 1 / lc
                num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def p(self):
        return self.num.p

    @classmethod
    def const(cls, a, p=0):
        return cls(Poly.const(a, p))

    @classmethod
    def x(cls, p=0):
        return cls(Poly.x(p))

    def __bool__(self):
        return bool(self.num)

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in k(x)")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if n >= 0:
            return RatFunc(self.num**n, self.den**n)
        return RatFunc(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        n = self.num.format()
        if self.den.is_const():
            return n
        if sum(1 for a in self.num.c if a) > 1:
            n = f"({n})"
        d = self.den.format()
        if sum(1 for a in self.den.c if a) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", pos, text)
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif ident is not None:
            out.append(("id", ident, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind=None, val=None):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", len(self.text), self.text)
        if (kind and t[0] != kind) or (val and t[1] != val):
            raise ParseError(f"expected {val or kind}", t[2], self.text)
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t is not None:
            raise ParseError("trailing input", t[2], self.text)
        return node

    def expr(self):
        node = self.term()
        while (t := self.peek()) and t[0] == "op" and t[1] in "+-":
            self.i += 1
            node = ("add" if t[1] == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "*/":
                self.i += 1
                node = ("mul" if t[1] == "*" else "div", node, self.unary())
            elif t and (t[0] == "id" or (t[0] == "op" and t[1] == "(")) and node[0] in ("num", "pow", "mul"):
                # implicit multiplication: 3x, 2(x+1)
                node = ("mul", node, self.power())
            else:
                return node

    def unary(self):
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.i += 1
            inner = self.unary()
            return inner if t[1] == "+" else ("neg", inner)
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.i += 1
            sign = 1
            t2 = self.peek()
            if t2 and t2[0] == "op" and t2[1] == "-":
                self.i += 1
                sign = -1
            exp = self.take("num")[1]
            return ("pow", base, sign * exp)
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return ("num", t[1])
        if t[0] == "id":
            return ("var", t[1])
        if t[1] == "(":
            node = self.expr()
            self.take("op", ")")
            return node
        raise ParseError(f"unexpected {t[1]!r}", t[2], self.text)


def parse_expr(text: str):
    """Parse to a small AST of nested tuples."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text).parse()


def evaluate(node, env, const):
    """Evaluate an AST; ``env`` maps identifiers to values, ``const`` lifts ints."""
    kind = node[0]
    if kind == "num":
        return const(node[1])
    if kind == "var":
        try:
            return env[node[1]]
        except KeyError:
            raise ParseError(f"unknown identifier {node[1]!r}") from None
    if kind == "neg":
        return -evaluate(node[1], env, const)
    if kind == "pow":
        base = evaluate(node[1], env, const)
        e = node[2]
        if e < 0:
            return const(1) / base**(-e)
        result = const(1)
        for _ in range(e):
            result = result * base
        return result
    a = evaluate(node[1], env, const)
    b = evaluate(node[2], env, const)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not b:
            raise ZeroDivisionError("division by zero in expression")
        return a / b
    raise ParseError(f"bad node {kind}")


def homogeneous_degree(node, var_degree):
    """Total degree of a homogeneous expression, or None if not homogeneous.

    ``var_degree`` maps identifiers to their degree; constants have degree 0.
    A sum is homogeneous only if its summands share a degree (a literal
    zero is not special-cased).
    """
    kind = node[0]
    if kind == "num":
        return 0
    if kind == "var":
        return var_degree.get(node[1], 0)
    if kind == "neg":
        return homogeneous_degree(node[1], var_degree)
    if kind == "pow":
        d = homogeneous_degree(node[1], var_degree)
        return None if d is None else d * node[2]
    a = homogeneous_degree(node[1], var_degree)
    b = homogeneous_degree(node[2], var_degree)
    if a is None or b is None:
        return None
    if kind in ("add", "sub"):
        return a if a == b else None
    if kind == "mul":
        return a + b
    return a - b


def substitute(node, mapping):
    """Rename variables in an AST."""
    kind = node[0]
    if kind == "var":
        return ("var", mapping.get(node[1], node[1]))
    if kind == "num":
        return node
    if kind in ("neg",):
        return (kind, substitute(node[1], mapping))
    if kind == "pow":
        return ("pow", substitute(node[1], mapping), node[2])
    return (kind, substitute(node[1], mapping), substitute(node[2], mapping))


def unparse(node):
    kind = node[0]
    if kind == "num":
        return str(node[1])
    if kind == "var":
        return node[1]
    if kind == "neg":
        return f"-({unparse(node[1])})"
    if kind == "pow":
        return f"({unparse(node[1])})^{node[2]}"
    op = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[kind]
    return f"({unparse(node[1])}{op}{unparse(node[2])})"


# -- field settings -------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Which pair F/D we are working in.

    ``kind`` is ``"qz"`` (Q over Z), ``"fp"`` (F_p(x) over F_p) or ``"q"``
    (Q(x) over Q).
    """

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("qz", "fp", "q"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "fp":
            if not sympy.isprime(self.p):
                raise ValueError(f"p = {self.p} is not prime")
        elif self.p:
            raise ValueError("p only applies to the fp setting")

    @classmethod
    def qz(cls):
        return cls("qz")

    @classmethod
    def fp(cls, p):
        return cls("fp", p)

    @classmethod
    def qx(cls):
        return cls("q")

    @property
    def is_function_field(self):
        return self.kind != "qz"

    @property
    def char(self):
        """Characteristic of the constant field (0 for Q)."""
        return self.p

    def __str__(self):
        return {"qz": "Q/Z", "fp": f"F_{self.p}(x)/F_{self.p}", "q": "Q(x)/Q"}[self.kind]

    def to_json(self):
        if self.kind == "fp":
            return {"kind": "fp", "p": self.p}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = {"kind": obj}
        kind = obj.get("kind")
        if kind in ("qz", "QoverZ", "Q/Z"):
            return cls.qz()
        if kind in ("fp", "FpRational"):
            return cls.fp(int(obj["p"]))
        if kind in ("q", "QRational", "Q(x)"):
            return cls.qx()
        raise ValueError(f"unknown field kind {kind!r}")

    # -- elements ---------------------------------------------------------

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def const(self, a):
        if self.kind == "qz":
            return Fraction(a)
        return RatFunc.const(a, self.p)

    def x(self):
        if self.kind == "qz":
            raise ValueError("Q/Z has no variable x")
        return RatFunc.x(self.p)

    def coerce(self, a):
        """Lift ints, Fractions and Polys into F; validate existing elements."""
        if self.kind == "qz":
            if isinstance(a, (int, Fraction)):
                return Fraction(a)
            raise TypeError(f"not an element of Q: {a!r}")
        if isinstance(a, RatFunc):
            if a.p != self.p:
                raise ValueError("element from a different field")
            return a
        if isinstance(a, Poly):
            return RatFunc(a if a.p == self.p else Poly(a.c, self.p))
        if isinstance(a, (int, Fraction)):
            return RatFunc.const(a, self.p)
        if isinstance(a, str):
            return self.parse(a)
        raise TypeError(f"not an element of {self}: {a!r}")

    def env(self):
        return {} if self.kind == "qz" else {"x": self.x()}

    def parse(self, text):
        """Parse an element of F."""
        node = parse_expr(text)
        return evaluate(node, self.env(), self.const)

    def parse_poly(self, text):
        """Parse a polynomial in x (the element must have trivial denominator)."""
        a = self.parse(text)
        if self.kind == "qz":
            raise ValueError("Q/Z has no polynomials in x")
        if not a.den.is_const():
            raise ValueError(f"{text!r} is not a polynomial")
        return a.num

    def format(self, a):
        if self.kind == "qz":
            return str(a)
        return str(a)

    def poly_ring_p(self):
        return self.p
