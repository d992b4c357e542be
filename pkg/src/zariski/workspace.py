"""JSON workspace files: spaces, subsets, models, systems and queries.

Layout::

    {
      "field":   {"kind": "fp", "p": 5},
      "spaces":  {"chain": {"points": ["c", "g"], "leq": [["c", "g"]]}},
      "subsets": {"Y": {"space": "chain", "members": ["c"]},
                  "Z": {"space": "zr", "closed": {"cofinite": ["x"]}, "generic": false},
                  "W": {"space": "model:nodal", "closed": {"finite": ["x-1"]}, "generic": true}},
      "models":  {"nodal": {"gens": ["1", "x^2-1", "x^3-x"], "witness": "g2/g1"}},
      "systems": {"S": {"models": ["P1", "nodal"], "dominations": [["P1", "nodal"]]}},
      "queries": [{"op": "inv", "subset": "Z"}, ...]
    }

``"zr"`` names the Zariski-Riemann space of the workspace field.  Every
section is optional.  Errors carry a JSON path such as
``subsets.Z.closed.cofinite[0]``.
"""

from __future__ import annotations

import hashlib
import json

from .fields import FieldSpec
from .models import ProjectiveModel, ProjectiveSystem, model_space
from .onedim import OneDimSpace, SubsetDesc
from .spectral import FiniteSpectralSpace
from .valuations import zr_space

__all__ = ["WorkspaceError", "Workspace", "load", "digest", "subset_to_json", "finite_subset"]

SECTIONS = ("field", "spaces", "subsets", "models", "systems", "queries")


class WorkspaceError(ValueError):
    def __init__(self, path, msg):
        super().__init__(f"{path}: {msg}")
        self.path = path


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def subset_to_json(Y) -> dict:
    if isinstance(Y, SubsetDesc):
        return Y.to_json()
    return {"members": sorted(str(p) for p in Y)}


class Workspace:
    def __init__(self, obj: dict, raw: bytes = b""):
        if not isinstance(obj, dict):
            raise WorkspaceError("$", "workspace must be a JSON object")
        for key in obj:
            if key not in SECTIONS:
                raise WorkspaceError(key, "unknown section")
        self.raw = raw or json.dumps(obj, sort_keys=True).encode()
        self.digest = digest(self.raw)
        self.field = None
        if "field" in obj:
            try:
                self.field = FieldSpec.from_json(obj["field"])
            except (ValueError, KeyError, TypeError) as e:
                raise WorkspaceError("field", str(e)) from None
        self.spaces = {}
        for name, spec in sorted(_section(obj, "spaces").items()):
            self.spaces[name] = _load_space(f"spaces.{name}", spec)
        self.models = {}
        for name, spec in sorted(_section(obj, "models").items()):
            self.models[name] = _load_model(f"models.{name}", name, spec, self.field)
        self.systems = {}
        for name, spec in sorted(_section(obj, "systems").items()):
            self.systems[name] = self._load_system(f"systems.{name}", spec)
        self.subsets = {}
        for name, spec in sorted(_section(obj, "subsets").items()):
            self.subsets[name] = self.parse_subset(f"subsets.{name}", spec)
        queries = obj.get("queries", [])
        if not isinstance(queries, list):
            raise WorkspaceError("queries", "must be a list")
        self.queries = queries

    # -- references -------------------------------------------------------

    def space(self, ref: str, path="space"):
        if ref == "zr":
            if self.field is None:
                raise WorkspaceError(path, "'zr' needs a workspace field")
            return zr_space(self.field)
        if isinstance(ref, str) and ref.startswith("model:"):
            name = ref[len("model:"):]
            if name not in self.models:
                raise WorkspaceError(path, f"unknown model {name!r}")
            return model_space(self.models[name])
        if ref not in self.spaces:
            raise WorkspaceError(path, f"unknown space {ref!r}")
        return self.spaces[ref]

    def subset(self, ref, path="subset"):
        if isinstance(ref, dict):
            return self.parse_subset(path, ref)
        if ref not in self.subsets:
            raise WorkspaceError(path, f"unknown subset {ref!r}")
        return self.subsets[ref]

    def model(self, ref, path="model"):
        if ref not in self.models:
            raise WorkspaceError(path, f"unknown model {ref!r}")
        return self.models[ref]

    def system(self, ref, path="system"):
        if ref not in self.systems:
            raise WorkspaceError(path, f"unknown system {ref!r}")
        return self.systems[ref]

    def space_of(self, Y):
        """The space object a parsed subset belongs to."""
        return Y.space if isinstance(Y, SubsetDesc) else Y._space

    def parse_subset(self, path, spec):
        if not isinstance(spec, dict) or "space" not in spec:
            raise WorkspaceError(path, "subset needs a 'space'")
        space = self.space(spec["space"], f"{path}.space")
        if isinstance(space, FiniteSpectralSpace):
            members = spec.get("members")
            if not isinstance(members, list):
                raise WorkspaceError(f"{path}.members", "must be a list")
            for i, m in enumerate(members):
                if m not in space._index:
                    raise WorkspaceError(f"{path}.members[{i}]", f"unknown point {m!r}")
            return finite_subset(space, members)
        body = {k: v for k, v in spec.items() if k != "space"}
        try:
            return SubsetDesc.from_json(space, body)
        except (KeyError, ValueError) as e:
            raise WorkspaceError(path, str(e).strip("'\"")) from None

    def _load_system(self, path, spec):
        if not isinstance(spec, dict) or not isinstance(spec.get("models"), list):
            raise WorkspaceError(path, "system needs a 'models' list")
        names = spec["models"]
        models = [self.model(n, f"{path}.models[{i}]") for i, n in enumerate(names)]
        doms = []
        for i, pair in enumerate(spec.get("dominations", [])):
            if not (isinstance(pair, list) and len(pair) == 2 and all(p in names for p in pair)):
                raise WorkspaceError(f"{path}.dominations[{i}]", "expected [dominating, dominated] model names")
            doms.append((names.index(pair[0]), names.index(pair[1])))
        try:
            return ProjectiveSystem(models, doms)
        except ValueError as e:
            raise WorkspaceError(path, str(e)) from None


class _FinitePointSubset(frozenset):
    """frozenset of points that remembers its finite space."""


def finite_subset(space: FiniteSpectralSpace, members) -> frozenset:
    out = _FinitePointSubset(members)
    out._space = space
    return out


def _section(obj, key):
    sec = obj.get(key, {})
    if not isinstance(sec, dict):
        raise WorkspaceError(key, "must be an object")
    return sec


def _load_space(path, spec):
    if not isinstance(spec, dict) or not isinstance(spec.get("points"), list):
        raise WorkspaceError(path, "space needs a 'points' list")
    pts = spec["points"]
    if len(set(map(str, pts))) != len(pts):
        raise WorkspaceError(f"{path}.points", "duplicate points")
    leq = spec.get("leq", [])
    for i, pair in enumerate(leq):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise WorkspaceError(f"{path}.leq[{i}]", "expected a pair [x, y] meaning x <= y")
    try:
        return FiniteSpectralSpace(pts, [tuple(p) for p in leq])
    except ValueError as e:
        raise WorkspaceError(path, str(e)) from None


def _load_model(path, name, spec, default_field):
    if not isinstance(spec, dict) or not isinstance(spec.get("gens"), list):
        raise WorkspaceError(path, "model needs a 'gens' list")
    try:
        return ProjectiveModel.from_json(spec, name=name, default_field=default_field)
    except (ValueError, KeyError, ZeroDivisionError) as e:
        raise WorkspaceError(path, str(e)) from None


def load(path_or_text, is_text=False) -> Workspace:
    if is_text:
        raw = path_or_text.encode() if isinstance(path_or_text, str) else path_or_text
    else:
        with open(path_or_text, "rb") as fh:
            raw = fh.read()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"line {e.lineno} col {e.colno}", e.msg) from None
    return Workspace(obj, raw)


def space_kind(space) -> str:
    return "finite" if isinstance(space, FiniteSpectralSpace) else "onedim" if isinstance(space, OneDimSpace) else "?"
