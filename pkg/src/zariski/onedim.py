"""Irreducible one-dimensional spectral spaces.

Such a space has one generic point and a finite or countably infinite set
of pairwise incomparable closed points, each of which specialises the
generic point.  Spec of a Dedekind domain looks like this, and so does the
Zariski-Riemann space of Q over Z or of a rational function field over its
constant field.

Subsets are described exactly by :class:`SubsetDesc`: a finite or cofinite
set of closed points plus a flag for the generic point.  Infinite and
coinfinite subsets are not representable here on purpose; equality of such
sets would need an undecidable predicate comparison.

Closed-point keys are opaque to this module.  The space supplies a sort
key, a membership predicate, and (for infinite spaces) an enumerator that
yields keys in increasing sort order.
"""

from __future__ import annotations

import itertools
import random
import threading
from typing import Callable, Hashable, Iterable, Iterator

from .spectral import FiniteSpectralSpace

__all__ = [
    "GENERIC",
    "OneDimSpace",
    "SubsetDesc",
    "cl1",
    "gen1",
    "inv1",
    "patch1",
    "pt1",
    "truncate",
    "push",
    "coherence",
    "patch_neighbourhood_witness",
    "random_subset",
]


class _Generic:
    """Marker for the generic point inside truncations."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "GENERIC"

    def __str__(self):
        return "generic"

    def __reduce__(self):
        return (_Generic, ())


GENERIC = _Generic()


class OneDimSpace:
    """One generic point plus finitely or countably many closed points.

    Exactly one of ``closed_points`` (a finite iterable) or ``enumerator``
    (a zero-argument callable returning an infinite iterator) must be given.
    For an infinite space ``contains`` decides membership of a key.
    """

    def __init__(
        self,
        name: str,
        closed_points: Iterable[Hashable] | None = None,
        enumerator: Callable[[], Iterator[Hashable]] | None = None,
        contains: Callable[[Hashable], bool] | None = None,
        sort_key: Callable[[Hashable], object] | None = None,
        format_key: Callable[[Hashable], str] = str,
        parse_key: Callable[[object], Hashable] | None = None,
        generic_label: str = "generic",
    ):
        if (closed_points is None) == (enumerator is None):
            raise ValueError("give exactly one of closed_points and enumerator")
        self.name = name
        self.generic_label = generic_label
        self.format_key = format_key
        self._parse_key = parse_key
        if closed_points is not None:
            pts = list(dict.fromkeys(closed_points))
            if sort_key is None:
                order = {k: i for i, k in enumerate(pts)}
                sort_key = order.__getitem__
            pts.sort(key=sort_key)
            self._finite = tuple(pts)
            self._members = frozenset(pts)
            self._contains = self._members.__contains__
        else:
            if contains is None or sort_key is None:
                raise ValueError("an infinite space needs contains and sort_key")
            self._finite = None
            self._contains = contains
            self._iter = enumerator()
            self._prefix: list = []
            self._lock = threading.Lock()
        self.sort_key = sort_key

    def __repr__(self):
        size = len(self._finite) if self._finite is not None else "infinitely many"
        return f"OneDimSpace({self.name!r}, {size} closed points)"

    @property
    def is_finite(self) -> bool:
        return self._finite is not None

    def contains(self, key) -> bool:
        try:
            return bool(self._contains(key))
        except (TypeError, ValueError):
            return False

    def first(self, n: int) -> list:
        """The first ``n`` closed points in enumeration order (fewer if the
        space is finite and smaller)."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        if self._finite is not None:
            return list(self._finite[:n])
        with self._lock:
            while len(self._prefix) < n:
                self._prefix.append(next(self._iter))
            return list(self._prefix[:n])

    def closed_points(self) -> Iterator:
        """All closed points in order (infinite for infinite spaces)."""
        if self._finite is not None:
            yield from self._finite
            return
        for i in itertools.count():
            yield self.first(i + 1)[i]

    def index_of(self, key, limit: int = 100000) -> int:
        """Position of ``key`` in the enumeration."""
        if not self.contains(key):
            raise KeyError(key)
        if self._finite is not None:
            return self._finite.index(key)
        target = self.sort_key(key)
        for i, k in enumerate(self.closed_points()):
            if k == key:
                return i
            if self.sort_key(k) > target or i >= limit:
                break
        raise KeyError(key)

    def parse_key(self, obj):
        if self._parse_key is not None:
            key = self._parse_key(obj)
        else:
            key = obj
            if self._finite is not None and key not in self._members:
                # keys given as strings in JSON
                matches = [k for k in self._finite if self.format_key(k) == str(obj)]
                if len(matches) == 1:
                    key = matches[0]
        if not self.contains(key):
            raise KeyError(f"{obj!r} is not a closed point of {self.name}")
        return key

    # subsets

    def empty(self) -> SubsetDesc:
        return SubsetDesc(self, (), cofinite=False, generic=False)

    def whole(self) -> SubsetDesc:
        return SubsetDesc(self, (), cofinite=True, generic=True)

    def generic_only(self) -> SubsetDesc:
        return SubsetDesc(self, (), cofinite=False, generic=True)

    def finite(self, keys, generic=False) -> SubsetDesc:
        return SubsetDesc(self, keys, cofinite=False, generic=generic)

    def cofinite(self, excluded=(), generic=False) -> SubsetDesc:
        return SubsetDesc(self, excluded, cofinite=True, generic=generic)

    def all_closed(self) -> SubsetDesc:
        return self.cofinite(())


class SubsetDesc:
    """A finite or cofinite set of closed points, plus maybe the generic point.

    ``keys`` lists the members when ``cofinite`` is false and the excluded
    points when it is true.  In a finite space cofinite descriptions are
    rewritten as finite ones, so equal sets always have equal descriptions.
    """

    __slots__ = ("space", "keys", "cofinite", "generic")

    def __init__(self, space: OneDimSpace, keys=(), cofinite=False, generic=False):
        keys = frozenset(keys)
        for k in keys:
            if not space.contains(k):
                raise KeyError(f"{k!r} is not a closed point of {space.name}")
        if cofinite and space.is_finite:
            keys = frozenset(k for k in space._finite if k not in keys)
            cofinite = False
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "keys", keys)
        object.__setattr__(self, "cofinite", bool(cofinite))
        object.__setattr__(self, "generic", bool(generic))

    def __setattr__(self, name, value):
        raise AttributeError("SubsetDesc is immutable")

    def _same(self, other):
        if not isinstance(other, SubsetDesc) or other.space is not self.space:
            raise ValueError("subsets of different spaces")

    def _new(self, keys, cofinite, generic):
        return SubsetDesc(self.space, keys, cofinite, generic)

    def __eq__(self, other):
        if not isinstance(other, SubsetDesc):
            return NotImplemented
        return (
            self.space is other.space
            and self.keys == other.keys
            and self.cofinite == other.cofinite
            and self.generic == other.generic
        )

    def __hash__(self):
        return hash((id(self.space), self.keys, self.cofinite, self.generic))

    def __or__(self, other):
        self._same(other)
        g = self.generic or other.generic
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return self._new(a.keys | b.keys, False, g)
        if a.cofinite and b.cofinite:
            return self._new(a.keys & b.keys, True, g)
        if a.cofinite:
            a, b = b, a
        return self._new(b.keys - a.keys, True, g)

    def __and__(self, other):
        self._same(other)
        g = self.generic and other.generic
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return self._new(a.keys & b.keys, False, g)
        if a.cofinite and b.cofinite:
            return self._new(a.keys | b.keys, True, g)
        if a.cofinite:
            a, b = b, a
        return self._new(a.keys - b.keys, False, g)

    def __invert__(self):
        return self._new(self.keys, not self.cofinite, not self.generic)

    def __sub__(self, other):
        return self & ~other

    def __le__(self, other):
        return (self - other).is_empty()

    def __ge__(self, other):
        return other <= self

    def __contains__(self, key):
        if key is GENERIC:
            return self.generic
        if not self.space.contains(key):
            return False
        return (key in self.keys) != self.cofinite

    def is_empty(self) -> bool:
        return not self.generic and not self.cofinite and not self.keys

    def closed_part(self) -> SubsetDesc:
        return self._new(self.keys, self.cofinite, False)

    def closed_is_empty(self) -> bool:
        return not self.cofinite and not self.keys

    def closed_is_infinite(self) -> bool:
        # after normalisation a cofinite description implies an infinite space
        return self.cofinite

    def with_generic(self, flag=True) -> SubsetDesc:
        return self._new(self.keys, self.cofinite, flag)

    def sorted_keys(self) -> list:
        return sorted(self.keys, key=self.space.sort_key)

    def is_constructible(self) -> bool:
        """Constructible subsets: finite without generic, cofinite with generic."""
        return self.generic == self.cofinite

    def is_quasicompact(self) -> bool:
        # the space is Noetherian, so every subspace is quasicompact
        return True

    def to_json(self) -> dict:
        fmt = self.space.format_key
        closed = {"cofinite" if self.cofinite else "finite": [fmt(k) for k in self.sorted_keys()]}
        return {"closed": closed, "generic": self.generic}

    @classmethod
    def from_json(cls, space: OneDimSpace, obj) -> SubsetDesc:
        if not isinstance(obj, dict) or "closed" not in obj:
            raise ValueError("subset needs a 'closed' entry")
        closed = obj["closed"]
        if not isinstance(closed, dict) or len(closed) != 1:
            raise ValueError("'closed' must have exactly one of 'finite' or 'cofinite'")
        (tag, items), = closed.items()
        if tag not in ("finite", "cofinite"):
            raise ValueError(f"unknown closed-part tag {tag!r}")
        if not isinstance(items, list):
            raise ValueError(f"'{tag}' must be a list")
        keys = [space.parse_key(k) for k in items]
        if len(set(keys)) != len(keys):
            raise ValueError(f"duplicate keys in '{tag}' list")
        return cls(space, keys, cofinite=(tag == "cofinite"), generic=bool(obj.get("generic", False)))

    def __repr__(self):
        fmt = self.space.format_key
        body = ", ".join(fmt(k) for k in self.sorted_keys())
        tag = "Cofinite" if self.cofinite else "Finite"
        return f"{tag}{{{body}}}" + (" + generic" if self.generic else "")


# -- operators --------------------------------------------------------------


def _check(space, Y):
    if Y.space is not space:
        raise ValueError("subset belongs to another space")


def cl1(space: OneDimSpace, Y: SubsetDesc) -> SubsetDesc:
    """Closure: proper closed sets are the finite sets of closed points."""
    _check(space, Y)
    if Y.generic or Y.closed_is_infinite():
        return space.whole()
    return Y


def gen1(space: OneDimSpace, Y: SubsetDesc) -> SubsetDesc:
    """Every nonempty open set contains the generic point."""
    _check(space, Y)
    if Y.is_empty():
        return Y
    return Y.with_generic()


def inv1(space: OneDimSpace, Y: SubsetDesc) -> SubsetDesc:
    """Intersection of quasicompact opens containing Y.

    The quasicompact opens are the empty set and the sets generic + cofinite.
    If Y is empty the empty open wins.  Otherwise the cofinite opens
    containing Y intersect to exactly the closed part of Y, so the result
    is Y plus the generic point, which is also gen1(Y).
    """
    _check(space, Y)
    if Y.is_empty():
        return Y
    return Y.with_generic()


def patch1(space: OneDimSpace, Y: SubsetDesc) -> SubsetDesc:
    """Patch closure: finite sets of closed points are patch closed, and an
    infinite set of closed points has the generic point in its closure."""
    _check(space, Y)
    if Y.closed_is_infinite():
        return Y.with_generic()
    return Y


def pt1(space: OneDimSpace, Y: SubsetDesc) -> SubsetDesc:
    """Closed points of inv1(Y)."""
    _check(space, Y)
    if not Y.closed_is_empty():
        return Y.closed_part()
    return Y  # either empty or just the generic point


OPERATORS = {"cl": cl1, "gen": gen1, "inv": inv1, "patch": patch1, "pt": pt1}


# -- truncations ------------------------------------------------------------


def truncate(space: OneDimSpace, n: int) -> FiniteSpectralSpace:
    """Finite subspace on the generic point and the first n closed points."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    pts = space.first(n)
    return FiniteSpectralSpace([GENERIC] + pts, [(c, GENERIC) for c in pts])


def push(Y: SubsetDesc, n: int) -> frozenset:
    """Restriction of Y to the truncation at n."""
    out = {k for k in Y.space.first(n) if k in Y}
    if Y.generic:
        out.add(GENERIC)
    return frozenset(out)


def _comparable(op, Y, pushed):
    # which operators are determined inside the truncation
    pushed_closed = bool(pushed - {GENERIC})
    if op in ("gen", "inv"):
        return bool(pushed) or Y.is_empty()
    if op == "pt":
        return pushed_closed or Y.closed_is_empty()
    if op in ("cl", "patch"):
        return not (Y.cofinite and not Y.generic)
    raise ValueError(op)


def coherence(space: OneDimSpace, Y: SubsetDesc, n: int) -> dict:
    """Compare each operator with the brute-force oracle on the truncation.

    Returns ``{op: True | False | None}``; None marks an operator whose
    value is not determined inside the truncation.
    """
    from . import spectral

    T = truncate(space, n)
    pY = push(Y, n)
    out = {}
    for name, op in OPERATORS.items():
        if not _comparable(name, Y, pY):
            out[name] = None
            continue
        brute = getattr(spectral, name)(T, pY)
        out[name] = brute == push(op(space, Y), n)
    return out


def patch_neighbourhood_witness(Y: SubsetDesc, excluded) -> object:
    """A closed point of Y inside the basic open generic + Cofinite(excluded).

    Every patch-open neighbourhood of the generic point is of this form, so
    a witness for each one shows the generic point lies in the patch
    closure.  Returns None if no witness exists (Y has finite closed part).
    """
    if not Y.cofinite:
        hits = [k for k in Y.sorted_keys() if k not in set(excluded)]
        return hits[0] if hits else None
    bad = set(excluded) | set(Y.keys)
    for k in Y.space.closed_points():
        if k not in bad:
            return k
    return None


def random_subset(space: OneDimSpace, rng: random.Random, pool: int = 10, max_keys: int = 4) -> SubsetDesc:
    """A random SubsetDesc whose keys come from the first ``pool`` points."""
    cands = space.first(pool)
    k = rng.randint(0, min(max_keys, len(cands)))
    keys = rng.sample(cands, k)
    cof = (not space.is_finite) and rng.random() < 0.5
    return SubsetDesc(space, keys, cofinite=cof, generic=rng.random() < 0.5)
