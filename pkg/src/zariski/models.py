"""Projective models given by generator tuples, and centers of places on them.

A tuple (f_0, ..., f_n) of nonzero elements of F gives the charts
D_i = k[f_0/f_i, ..., f_n/f_i].  A place V is centered in chart i when all
f_j/f_i lie in V; we always take the smallest such i, which is where
min_j value(V, f_j) is first attained.  The center is then the closed point
of affine space cut out by the residues of the f_j/f_i.

Canonical point keys
--------------------
Residues live in the residue field K of V.  Let L be the k-subalgebra of K
generated by the residues r_j (a field).  If L = k the key is simply the
tuple of residues.  Otherwise we pick a primitive element theta of L in a
deterministic way, and the key records how theta was built, its minimal
polynomial over k, and each r_j written as a polynomial in theta.  Every
one of those items only depends on the kernel of k[y_0..y_n] -> K, so two
places have equal keys exactly when they have the same center.

Fibers
------
The places centered at a given point are found exactly: they are among the
zeros of mu(theta_F), where theta_F in F lifts theta and mu is its minimal
polynomial (or among the zeros of r_j - a_j when L = k), together with the
infinite place.  The candidates are filtered by recomputing the center.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .fields import FieldSpec, RatFunc, evaluate, homogeneous_degree, parse_expr, substitute, unparse
from .onedim import GENERIC, OneDimSpace, SubsetDesc
from .poly import Poly, factor, poly_xgcd
from .valuations import Place, _place_sort_key, parse_place, value, zr_space

__all__ = [
    "ProjectiveModel",
    "ModelPoint",
    "ProjectiveSystem",
    "UnsupportedResidue",
    "WitnessError",
    "center",
    "same_center",
    "fiber",
    "model_space",
    "image",
    "preimage",
    "dominates",
    "product_model",
    "limit_ops",
    "system_dot",
    "fiber_dot",
]


class WitnessError(ValueError):
    """The witness expression does not certify that the model has function field k(x)."""


class UnsupportedResidue(ValueError):
    """No canonical key could be built for a residue tuple."""


# -- linear algebra over k --------------------------------------------------


def _inv(a, p):
    return pow(a, -1, p) if p else 1 / Fraction(a)


def _red(a, p):
    return a % p if p else a


class _Span:
    """Incremental row echelon form that remembers how rows were combined."""

    def __init__(self, dim, p):
        self.dim, self.p = dim, p
        self.rows = []  # (vector, pivot, combination over inserted vectors)
        self.count = 0

    def _reduce(self, v):
        p = self.p
        v = list(v)
        acc = [0] * self.count
        for row, piv, comb in self.rows:
            if v[piv]:
                f = _red(v[piv] * _inv(row[piv], p), p)
                v = [_red(a - f * b, p) for a, b in zip(v, row)]
                for k, c in enumerate(comb):
                    acc[k] = _red(acc[k] + f * c, p)
        return v, acc

    def express(self, v):
        """Coefficients writing v in terms of the inserted vectors, or None."""
        rest, acc = self._reduce(v)
        return acc if not any(rest) else None

    def add(self, v):
        """Insert v if independent; return whether it was."""
        rest, acc = self._reduce(v)
        if not any(rest):
            return False
        piv = next(i for i, a in enumerate(rest) if a)
        comb = [_red(-a, self.p) for a in acc] + [1]
        self.count += 1
        self.rows = [(r, pv, c + [0]) for r, pv, c in self.rows]
        self.rows.append((rest, piv, comb))
        return True


def _vec(f: Poly, d):
    c = list(f.c) + [0] * (d - len(f.c))
    return [a if f.p else Fraction(a) for a in c[:d]]


# -- models -----------------------------------------------------------------


def _gen_names(n):
    return {f"g{i}": i for i in range(n)}


class ProjectiveModel:
    """Projective model of F/D from a generator tuple.

    For k(x)/k a witness is required: an expression in the names g0, g1, ...
    (standing for the generators) that is homogeneous of degree 0 and
    evaluates to x.  For Q/Z no witness is needed.
    """

    def __init__(self, spec: FieldSpec, gens, witness=None, name: str | None = None):
        self.spec = spec
        gens = tuple(spec.coerce(g) for g in gens)
        if not gens:
            raise ValueError("a model needs at least one generator")
        if any(not g for g in gens):
            raise ValueError("generators must be nonzero")
        self.gens = gens
        self.name = name or "model"
        if spec.is_function_field:
            if witness is None:
                raise WitnessError("a witness expression for x is required")
            node = parse_expr(witness) if isinstance(witness, str) else witness
            names = _gen_names(len(gens))
            self._check_names(node, names)
            if homogeneous_degree(node, {k: 1 for k in names}) != 0:
                raise WitnessError(f"witness {unparse(node)} is not a ratio of generators")
            env = {k: gens[i] for k, i in names.items()}
            try:
                val = evaluate(node, env, spec.const)
            except ZeroDivisionError:
                raise WitnessError("witness divides by zero") from None
            if val != spec.x():
                raise WitnessError(f"witness evaluates to {val}, not x")
            self.witness = node
        else:
            self.witness = None
        self._centers = {}

    @staticmethod
    def _check_names(node, names):
        kind = node[0]
        if kind == "var":
            if node[1] not in names:
                raise WitnessError(f"unknown name {node[1]!r} in witness")
        elif kind == "num":
            return
        else:
            for sub in node[1:]:
                if isinstance(sub, tuple):
                    ProjectiveModel._check_names(sub, names)

    def __repr__(self):
        return f"ProjectiveModel({self.name!r}, gens=({', '.join(map(str, self.gens))}))"

    def chart(self, i):
        """The generators f_j/f_i of chart i."""
        return tuple(g / self.gens[i] for g in self.gens)

    def to_json(self):
        out = {"field": self.spec.to_json(), "gens": [str(g) for g in self.gens]}
        if self.witness is not None:
            out["witness"] = unparse(self.witness)
        return out

    @classmethod
    def from_json(cls, obj, name=None, default_field=None):
        spec = FieldSpec.from_json(obj["field"]) if "field" in obj else default_field
        if spec is None:
            raise ValueError("model needs a field")
        gens = [spec.parse(str(g)) for g in obj["gens"]]
        return cls(spec, gens, obj.get("witness"), name=name)


@dataclass(frozen=True)
class ModelPoint:
    """Closed point of a model: chart index and canonical residue key."""

    chart: int
    key: tuple

    def __str__(self):
        if self.key and self.key[0] == "prime":
            return f"{self.chart}:({self.key[1]})"
        if self.key and self.key[0] == "rat":
            return f"{self.chart}:({','.join(str(a) for a in self.key[1])})"
        return f"{self.chart}:{self.key!r}"


# -- residues ---------------------------------------------------------------


def _modulus(v: Place, spec):
    if v.kind == "poly":
        return v.value
    return Poly.x(spec.p)  # residue field k, constants are canonical mod x


def _residue(v: Place, r: RatFunc, mod: Poly):
    if value(v, r) > 0:
        return Poly((), mod.p)
    if v.kind == "infinity":
        return Poly.const(r.num.lc * _inv(r.den.lc, mod.p), mod.p)
    g, s, _ = poly_xgcd(r.den % mod, mod)
    return (r.num * s) % mod


def _int_vectors(m):
    """Nonzero vectors of small integers, by max norm then lexicographic."""
    for h in itertools.count(1):
        for vec in itertools.product(range(-h, h + 1), repeat=m):
            if max(abs(a) for a in vec) == h:
                yield vec


def _fp_vectors(m, p):
    for vec in itertools.product(range(p), repeat=m):
        if any(vec):
            yield vec


def _mul_mod(a, b, mod):
    return (a * b) % mod


def _algebra_key(res, mod, p):
    """Canonical key for the closed point with residue tuple ``res``.

    Returns ``(key, lift)`` where ``lift`` describes how to build theta_F
    from the chart generators (a list of (coefficient, exponent vector)).
    """
    d = mod.deg
    m = len(res)
    if all(r.deg < 1 for r in res):
        vals = tuple((r.c[0] if r.c else (0 if p else Fraction(0))) for r in res)
        return ("rat", vals), None
    # greedy monomial basis of the generated algebra
    span = _Span(d, p)
    one = Poly.const(1, p)
    basis = [((0,) * m, one)]
    span.add(_vec(one, d))
    i = 0
    while i < len(basis):
        exp, b = basis[i]
        for j in range(m):
            c = _mul_mod(b, res[j], mod)
            if span.add(_vec(c, d)):
                e = list(exp)
                e[j] += 1
                basis.append((tuple(e), c))
        i += 1
    e = len(basis)
    vecs = _fp_vectors(e - 1, p) if p else _int_vectors(e - 1)
    for n_tried, coeffs in enumerate(vecs):
        if n_tried > 20000:
            break
        theta = Poly((), p)
        for c, (_, b) in zip(coeffs, basis[1:]):
            theta = theta + b.scale(c)
        theta = theta % mod
        pw = _Span(d, p)
        powers = [one]
        pw.add(_vec(one, d))
        while True:
            nxt = _mul_mod(powers[-1], theta, mod)
            if not pw.add(_vec(nxt, d)):
                break
            powers.append(nxt)
        if len(powers) != e:
            continue
        rel = pw.express(_vec(_mul_mod(powers[-1], theta, mod), d))
        mu = tuple(_red(-a, p) for a in rel) + (1,)
        coords = tuple(tuple(pw.express(_vec(r, d))) for r in res)
        key = ("alg", tuple(ex for ex, _ in basis), tuple(coeffs), mu, coords)
        lift = [(c, ex) for c, (ex, _) in zip(coeffs, basis[1:])]
        return key, lift
    raise UnsupportedResidue("no primitive element found for the residue algebra")


def center(X: ProjectiveModel, v: Place):
    """Center of the place v on X (``GENERIC`` for the trivial place)."""
    if v.kind == "trivial":
        return GENERIC
    hit = X._centers.get(v)
    if hit is not None:
        return hit[0]
    vals = [value(v, g) for g in X.gens]
    lo = min(vals)
    i = vals.index(lo)
    if X.spec.kind == "qz":
        if v.kind != "prime":
            raise ValueError(f"{v} is not a place of Q/Z")
        pt, lift = ModelPoint(i, ("prime", v.value)), None
    else:
        if v.kind == "prime":
            raise ValueError(f"{v} is not a place of {X.spec}")
        mod = _modulus(v, X.spec)
        res = [_residue(v, r, mod) for r in X.chart(i)]
        key, lift = _algebra_key(res, mod, X.spec.p)
        pt = ModelPoint(i, key)
    X._centers[v] = (pt, lift)
    return pt


def same_center(X: ProjectiveModel, v: Place, w: Place) -> bool:
    return center(X, v) == center(X, w)


def _theta_element(X, pt: ModelPoint, lift):
    r = X.chart(pt.chart)
    theta = X.spec.zero()
    for c, exp in lift:
        term = X.spec.const(c)
        for j, k in enumerate(exp):
            term = term * r[j] ** k
        theta = theta + term
    return theta


def _candidates(X: ProjectiveModel, pt: ModelPoint, lift):
    spec = X.spec
    if spec.kind == "qz":
        return [Place.prime(pt.key[1])]
    r = X.chart(pt.chart)
    if pt.key[0] == "rat":
        target = None
        for rj, a in zip(r, pt.key[1]):
            diff = rj - spec.const(a)
            if not diff.is_const():
                target = diff
                break
        if target is None:
            return [Place.infinity()]
    else:
        theta = _theta_element(X, pt, lift)
        mu = pt.key[3]
        target = spec.zero()
        for a in reversed(mu):
            target = target * theta + spec.const(a)
    places = [Place.infinity()]
    if target:
        places += [Place("poly", pi) for pi, _ in factor(target.num)]
    return places


def fiber(X: ProjectiveModel, pt) -> list:
    """All places centered at ``pt``, in enumeration order."""
    if pt is GENERIC:
        return [Place.trivial()]
    cache = X.__dict__.setdefault("_fibers", {})
    if pt in cache:
        return cache[pt]
    lift = None
    if pt.key[0] == "alg":
        lift = list(zip(pt.key[2], pt.key[1][1:]))
    out = []
    for v in _candidates(X, pt, lift):
        try:
            if center(X, v) == pt:
                out.append(v)
        except ValueError:
            continue
    out.sort(key=_place_sort_key)
    cache[pt] = out
    return out


# -- model spaces -----------------------------------------------------------


def model_space(X: ProjectiveModel, probe_bound: int = 64) -> OneDimSpace:
    """The underlying space of X as a OneDimSpace of ModelPoints.

    Points are enumerated in the order their first place appears.  The
    enumerator is unbounded; ``probe_bound`` only fixes how many places
    are centered eagerly so that ``first(...)`` is cheap.
    """
    cached = X.__dict__.get("_space")
    if cached is not None:
        return cached
    Zr = zr_space(X.spec)

    def enum():
        seen = set()
        for v in Zr.closed_points():
            c = center(X, v)
            if c not in seen:
                seen.add(c)
                yield c

    def contains(pt):
        return isinstance(pt, ModelPoint) and bool(fiber(X, pt))

    def sort_key(pt):
        return _place_sort_key(fiber(X, pt)[0])

    def fmt(pt):
        return f"c({fiber(X, pt)[0]})"

    def parse(obj):
        if isinstance(obj, ModelPoint):
            return obj
        s = str(obj).strip()
        if s.startswith("c(") and s.endswith(")"):
            s = s[2:-1]
        c = center(X, parse_place(s, X.spec))
        if c is GENERIC:
            raise ValueError("the generic point is not a closed point")
        return c

    space = OneDimSpace(
        f"model:{X.name}",
        enumerator=enum,
        contains=contains,
        sort_key=sort_key,
        format_key=fmt,
        parse_key=parse,
    )
    space.first(probe_bound)
    X._space = space
    return space


def image(X: ProjectiveModel, Z: SubsetDesc) -> SubsetDesc:
    """Image of Z under the center map, exactly."""
    S = model_space(X)
    pts = {center(X, v) for v in Z.keys}
    if not Z.cofinite:
        return SubsetDesc(S, pts, cofinite=False, generic=Z.generic)
    # a point is missed only if its whole fiber is excluded
    missed = {c for c in pts if set(fiber(X, c)) <= Z.keys}
    return SubsetDesc(S, missed, cofinite=True, generic=Z.generic)


def preimage(X: ProjectiveModel, W: SubsetDesc) -> SubsetDesc:
    Zr = zr_space(X.spec)
    places = set()
    for c in W.keys:
        places.update(fiber(X, c))
    return SubsetDesc(Zr, places, cofinite=W.cofinite, generic=W.generic)


def dominates(Y: ProjectiveModel, X: ProjectiveModel, probe_bound: int = 64) -> bool:
    """Probe-limited domination test.

    On the first ``probe_bound`` places: the center classes of Y must refine
    those of X, and X's chart generators at the center must be integral at
    every place of the Y-class.
    """
    if X.spec != Y.spec:
        return False
    Zr = zr_space(X.spec)
    for v in Zr.first(probe_bound):
        cls = fiber(Y, center(Y, v))
        cx = center(X, v)
        if any(center(X, w) != cx for w in cls):
            return False
        for w in cls:
            if any(value(w, r) < 0 for r in X.chart(cx.chart)):
                return False
    return True


def product_model(X, Y, name=None) -> ProjectiveModel:
    """Model with generators f_i * g_j (index i*len(g) + j).

    Either factor may be a bare generator tuple instead of a model; the
    witness is carried over from a factor that has one, preferring X.
    """
    fx = X.gens if isinstance(X, ProjectiveModel) else tuple(X)
    fy = Y.gens if isinstance(Y, ProjectiveModel) else tuple(Y)
    spec = X.spec if isinstance(X, ProjectiveModel) else Y.spec
    fx = tuple(spec.coerce(a) for a in fx)
    fy = tuple(spec.coerce(a) for a in fy)
    m = len(fy)
    gens = [a * b for a in fx for b in fy]
    witness = None
    if isinstance(X, ProjectiveModel) and X.witness is not None:
        witness = substitute(X.witness, {f"g{i}": f"g{i * m}" for i in range(len(fx))})
    elif isinstance(Y, ProjectiveModel) and Y.witness is not None:
        witness = substitute(Y.witness, {f"g{j}": f"g{j}" for j in range(m)})
    if name is None:
        nx = X.name if isinstance(X, ProjectiveModel) else "tuple"
        ny = Y.name if isinstance(Y, ProjectiveModel) else "tuple"
        name = f"{nx}x{ny}"
    return ProjectiveModel(spec, gens, witness, name=name)


# -- systems and limit formulas ---------------------------------------------


class ProjectiveSystem:
    """Finite list of models plus declared dominations (i dominates j)."""

    def __init__(self, models, dominations=()):
        self.models = list(models)
        if not self.models:
            raise ValueError("a system needs at least one model")
        spec = self.models[0].spec
        if any(M.spec != spec for M in self.models):
            raise ValueError("all models of a system share one field")
        self.spec = spec
        n = len(self.models)
        for i, j in dominations:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"domination ({i}, {j}) out of range")
        self.dominations = list(dominations)

    def check(self, probe_bound=64):
        """Which declared dominations hold on the probe."""
        return {(i, j): dominates(self.models[i], self.models[j], probe_bound) for i, j in self.dominations}

    def computed_dominations(self, probe_bound=64):
        n = len(self.models)
        return [
            (i, j)
            for i in range(n)
            for j in range(n)
            if i != j and dominates(self.models[i], self.models[j], probe_bound)
        ]


def _closed_ok(X, v, Z):
    # center of v lies in X(Z): some closed member of Z shares the center
    c = center(X, v)
    return any(w in Z for w in fiber(X, c))


def limit_ops(system: ProjectiveSystem, Z: SubsetDesc) -> dict:
    """Inverse closure, patch closure and pt of Z read off the models.

    A closed place qualifies for all three when its center on every model
    lies in the image of Z.  The generic place qualifies for inv when the
    images are nonempty, for patch when it is in Z or Z has infinitely many
    closed points, and for pt when it is in Z and Z has no closed points.
    """
    models = system.models
    Zr = Z.space
    if not Z.cofinite:
        first = models[0]
        cands = set()
        for w in Z.keys:
            cands.update(fiber(first, center(first, w)))
        good = {v for v in cands if all(_closed_ok(X, v, Z) for X in models)}
        closed = SubsetDesc(Zr, good, cofinite=False)
    else:
        bad = {v for v in Z.keys if not all(_closed_ok(X, v, Z) for X in models)}
        closed = SubsetDesc(Zr, bad, cofinite=True)
    nonempty = not Z.is_empty()
    infinite = Z.cofinite
    no_closed = Z.closed_is_empty()
    return {
        "inv": closed.with_generic(nonempty),
        "patch": closed.with_generic(Z.generic or infinite),
        "pt": closed.with_generic(Z.generic and no_closed),
    }


def limit_conditions(system: ProjectiveSystem, Z: SubsetDesc, v: Place) -> dict:
    """The three per-place conditions, evaluated model by model."""
    out = {}
    for X in system.models:
        if v.kind == "trivial":
            img = image(X, Z)
            out[X.name] = {
                "inv": not img.is_empty(),
                "patch": img.generic or img.cofinite,
                "pt": img.generic and img.closed_is_empty(),
            }
        else:
            ok = _closed_ok(X, v, Z)
            out[X.name] = {"inv": ok, "patch": ok, "pt": ok}
    return out


# -- DOT --------------------------------------------------------------------


def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def system_dot(system: ProjectiveSystem, probe_bound=64, name="system") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for M in system.models:
        lines.append(f"  {_q(M.name)};")
    edges = system.dominations or system.computed_dominations(probe_bound)
    for i, j in sorted(edges):
        lines.append(f"  {_q(system.models[i].name)} -> {_q(system.models[j].name)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def fiber_dot(X: ProjectiveModel, probe_bound=16) -> str:
    """Probed places with an edge to their center on X."""
    S = model_space(X, probe_bound)
    Zr = zr_space(X.spec)
    lines = [f"digraph {_q('fibers:' + X.name)} {{", "  rankdir=LR;"]
    pts = []
    for v in Zr.first(probe_bound):
        c = center(X, v)
        if c not in pts:
            pts.append(c)
        lines.append(f"  {_q('place ' + str(v))} -> {_q(S.format_key(c))};")
    for c in pts:
        lines.append(f"  {_q(S.format_key(c))} [shape=box];")
    lines.append("}")
    return "\n".join(lines) + "\n"
