"""Finite spectral spaces and brute-force closure operators.

A finite T0 space is the same thing as a finite poset, and every finite
T0 space is spectral.  Convention used throughout the package::

    x <= y   iff   x lies in cl({y})      (y generalises x)

so closed sets are down-sets and open sets are up-sets.

Every operator here is computed straight from its definition by
intersecting the relevant family of sets.  Nothing is shortcut: this
module is the ground truth the infinite-space engines are checked against.
Subsets are ``frozenset``s of point identifiers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

__all__ = [
    "FiniteSpectralSpace",
    "SpectralMapFin",
    "cl",
    "gen",
    "inv",
    "patch",
    "pt",
    "image_ops",
    "is_irreducible",
    "enumerate_posets",
    "monotone_maps",
    "hasse_dot",
]


class FiniteSpectralSpace:
    """A finite poset viewed as a spectral space.

    ``leq`` is an iterable of pairs ``(x, y)`` meaning x <= y; the reflexive
    transitive closure is taken and antisymmetry is checked.
    """

    def __init__(self, points: Iterable[Hashable], leq: Iterable[tuple] = ()):
        pts = tuple(dict.fromkeys(points))
        index = {p: i for i, p in enumerate(pts)}
        n = len(pts)
        up = [1 << i for i in range(n)]  # up[i]: bitmask of points >= i
        for a, b in leq:
            if a not in index or b not in index:
                raise ValueError(f"relation ({a!r}, {b!r}) mentions an unknown point")
            up[index[a]] |= 1 << index[b]
        # transitive closure (Warshall)
        for k in range(n):
            for i in range(n):
                if up[i] >> k & 1:
                    up[i] |= up[k]
        for i in range(n):
            for j in range(n):
                if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                    raise ValueError(f"{pts[i]!r} and {pts[j]!r} violate antisymmetry")
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1:
                    down[j] |= 1 << i
        self.points = pts
        self._index = index
        self._up = tuple(up)
        self._down = tuple(down)
        full = (1 << n) - 1
        self._full = full
        self._opens = tuple(m for m in range(full + 1) if self._is_upset(m))
        self._closed = tuple(full ^ m for m in self._opens)

    # -- bitmask plumbing -------------------------------------------------

    def _is_upset(self, m):
        i = 0
        mm = m
        while mm:
            if mm & 1 and (self._up[i] & ~m):
                return False
            mm >>= 1
            i += 1
        return True

    def mask(self, subset) -> int:
        m = 0
        for p in subset:
            try:
                m |= 1 << self._index[p]
            except KeyError:
                raise ValueError(f"{p!r} is not a point of this space") from None
        return m

    def unmask(self, m) -> frozenset:
        return frozenset(p for i, p in enumerate(self.points) if m >> i & 1)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"FiniteSpectralSpace({len(self)} points)"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSpectralSpace)
            and set(self.points) == set(other.points)
            and self.relation() == other.relation()
        )

    def __hash__(self):
        return hash((frozenset(self.points), self.relation()))

    # -- order data -------------------------------------------------------

    def leq(self, x, y) -> bool:
        return bool(self._up[self._index[x]] >> self._index[y] & 1)

    def relation(self) -> frozenset:
        return frozenset((x, y) for x in self.points for y in self.points if self.leq(x, y))

    def covers(self):
        """Pairs (x, y) with x < y and nothing strictly between."""
        out = []
        for x in self.points:
            for y in self.points:
                if x != y and self.leq(x, y):
                    if not any(z not in (x, y) and self.leq(x, z) and self.leq(z, y) for z in self.points):
                        out.append((x, y))
        return out

    def open_sets(self):
        return [self.unmask(m) for m in self._opens]

    def closed_sets(self):
        return [self.unmask(m) for m in self._closed]

    def is_open(self, subset) -> bool:
        return self.mask(subset) in set(self._opens)

    def is_quasicompact(self, subset) -> bool:
        # finitely many points, so every subset is quasicompact
        self.mask(subset)
        return True

    def quasicompact_opens(self):
        return [U for U in self.open_sets() if self.is_quasicompact(U)]

    def table(self, op: str) -> tuple:
        """Values of an operator on every subset, indexed by bitmask.

        Computed once per space from the definitional functions below and
        cached; used by the exhaustive suites.
        """
        cache = self.__dict__.setdefault("_tables", {})
        if op not in cache:
            fn = OPERATORS[op]
            cache[op] = tuple(self.mask(fn(self, self.unmask(m))) for m in range(self._full + 1))
        return cache[op]

    def closed_masks(self) -> frozenset:
        return frozenset(self._closed)

    def has_top(self) -> bool:
        return any(all(self.leq(x, t) for x in self.points) for t in self.points)


def _check(space, Y):
    return space.mask(Y)


def _intersect_family(space, m, family):
    acc = space._full
    for s in family:
        if m & ~s == 0:
            acc &= s
    return acc


def cl(space: FiniteSpectralSpace, Y) -> frozenset:
    """Intersection of all closed sets containing Y."""
    m = _check(space, Y)
    return space.unmask(_intersect_family(space, m, space._closed))


def gen(space: FiniteSpectralSpace, Y) -> frozenset:
    """Intersection of all open sets containing Y."""
    m = _check(space, Y)
    return space.unmask(_intersect_family(space, m, space._opens))


def inv(space: FiniteSpectralSpace, Y) -> frozenset:
    """Intersection of all quasicompact open sets containing Y."""
    m = _check(space, Y)
    qc = [space.mask(U) for U in space.quasicompact_opens()]
    return space.unmask(_intersect_family(space, m, qc))


def patch(space: FiniteSpectralSpace, Y) -> frozenset:
    """Intersection of all sets U1 | (X - U2) containing Y, U1 and U2
    quasicompact open."""
    m = _check(space, Y)
    qc = [space.mask(U) for U in space.quasicompact_opens()]
    full = space._full
    acc = full
    for u1 in qc:
        for u2 in qc:
            s = u1 | (full ^ u2)
            if m & ~s == 0:
                acc &= s
    return space.unmask(acc)


def pt(space: FiniteSpectralSpace, Y) -> frozenset:
    """Points of inv(Y) that are closed in the subspace inv(Y)."""
    iv = inv(space, Y)
    out = set()
    for x in iv:
        if cl(space, {x}) & iv == {x}:
            out.add(x)
    return frozenset(out)


def is_irreducible(space: FiniteSpectralSpace, Y) -> bool:
    """Y nonempty and any two nonempty relatively open subsets of Y meet."""
    Y = frozenset(Y)
    space.mask(Y)
    if not Y:
        return False
    rel = {U & Y for U in space.open_sets()}
    rel.discard(frozenset())
    return all(a & b for a in rel for b in rel)


OPERATORS = {"cl": cl, "gen": gen, "inv": inv, "patch": patch, "pt": pt}


@dataclass(frozen=True)
class SpectralMapFin:
    """Order-preserving map between finite spectral spaces."""

    source: FiniteSpectralSpace
    target: FiniteSpectralSpace
    graph: dict = field(hash=False)

    def __post_init__(self):
        if set(self.graph) != set(self.source.points):
            raise ValueError("map must be total on the source")
        for v in self.graph.values():
            if v not in self.target._index:
                raise ValueError(f"{v!r} is not a point of the target")
        for x in self.source.points:
            for y in self.source.points:
                if self.source.leq(x, y) and not self.target.leq(self.graph[x], self.graph[y]):
                    raise ValueError(f"not monotone at {x!r} <= {y!r}")

    def __call__(self, x):
        return self.graph[x]

    def image(self, Z) -> frozenset:
        return frozenset(self.graph[z] for z in Z)

    def is_closed_map(self) -> bool:
        """Images of closed sets (down-sets) are closed."""
        tgt = self.target
        closed = set(tgt._closed)
        return all(tgt.mask(self.image(C)) in closed for C in self.source.closed_sets())


def image_ops(f: SpectralMapFin, Z) -> dict:
    """Compare images of closures with closures of images.

    Returns the eight sets and flags for each containment the theory
    predicts, plus ``closed_map``.
    """
    src, tgt = f.source, f.target
    Z = frozenset(Z)
    dZ = f.image(Z)
    r = {
        "d_gen": f.image(gen(src, Z)),
        "gen_d": gen(tgt, dZ),
        "d_inv": f.image(inv(src, Z)),
        "inv_d": inv(tgt, dZ),
        "d_patch": f.image(patch(src, Z)),
        "patch_d": patch(tgt, dZ),
        "d_pt": f.image(pt(src, Z)),
        "pt_d": pt(tgt, dZ),
    }
    r["closed_map"] = f.is_closed_map()
    r["gen_ok"] = r["d_gen"] <= r["gen_d"]
    r["inv_ok"] = r["d_inv"] <= r["inv_d"]
    r["patch_ok"] = r["d_patch"] == r["patch_d"]
    r["pt_ok"] = (r["d_pt"] == r["pt_d"]) if r["closed_map"] else True
    r["gen_eq"] = r["d_gen"] == r["gen_d"]
    r["inv_eq"] = r["d_inv"] == r["inv_d"]
    r["pt_eq"] = r["d_pt"] == r["pt_d"]
    return r


# -- enumeration ----------------------------------------------------------------


def _canonical(n, up):
    best = None
    for perm in itertools.permutations(range(n)):
        rel = []
        for i in range(n):
            row = 0
            for j in range(n):
                if up[i] >> j & 1:
                    row |= 1 << perm[j]
            rel.append((perm[i], row))
        code = tuple(r for _, r in sorted(rel))
        if best is None or code < best:
            best = code
    return best


def _extend(n, up):
    # add point n with chosen down-set D and up-set U
    downs = [m for m in range(1 << n) if all(not (m >> i & 1) or (_downmask(n, up, i) & ~m) == 0 for i in range(n))]
    ups = [m for m in range(1 << n) if all(not (m >> i & 1) or (up[i] & ~m) == 0 for i in range(n))]
    for D in downs:
        for U in ups:
            if D & U:
                continue
            if any(D >> i & 1 and U >> j & 1 and not (up[i] >> j & 1) for i in range(n) for j in range(n)):
                continue
            new = list(up)
            for i in range(n):
                if D >> i & 1:
                    new[i] |= 1 << n
            new.append((1 << n) | U)
            # points below n must lie below everything above n
            for i in range(n):
                if D >> i & 1:
                    new[i] |= U
            yield tuple(new)


def _downmask(n, up, i):
    return sum(1 << j for j in range(n) if up[j] >> i & 1)


def enumerate_posets(n: int, up_to_iso: bool = True):
    """All posets on points ``0..n-1`` (as FiniteSpectralSpace), one per
    isomorphism class by default."""
    level = {()}
    for k in range(n):
        nxt = {}
        for up in level:
            for new in _extend(k, up):
                key = _canonical(k + 1, new) if up_to_iso else new
                nxt.setdefault(key, new)
        level = set(nxt.values())
    out = []
    for up in sorted(level):
        pairs = [(i, j) for i in range(n) for j in range(n) if up[i] >> j & 1]
        out.append(FiniteSpectralSpace(range(n), pairs))
    return out


def monotone_maps(source: FiniteSpectralSpace, target: FiniteSpectralSpace):
    """Every order-preserving map source -> target."""
    pts = source.points
    for images in itertools.product(target.points, repeat=len(pts)):
        g = dict(zip(pts, images))
        if all(
            target.leq(g[x], g[y]) for x in pts for y in pts if source.leq(x, y)
        ):
            yield SpectralMapFin(source, target, g)


def hasse_dot(space: FiniteSpectralSpace, name="space") -> str:
    """DOT text of the Hasse diagram; edges point from generalisation to
    specialisation."""
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=TB;"]
    for p in sorted(space.points, key=str):
        lines.append(f"  {_dot_id(p)} [label={_dot_str(p)}];")
    for x, y in sorted(space.covers(), key=lambda e: (str(e[0]), str(e[1]))):
        lines.append(f"  {_dot_id(y)} -> {_dot_id(x)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_str(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_id(s):
    return _dot_str(s)
