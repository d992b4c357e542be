"""Verification suites, one per group of properties.

Each suite returns a :class:`SuiteResult`: a list of named checks with the
number of cases run and failures seen.  The CLI turns these into reports;
the acceptance tests call the same building blocks with fixed bounds.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import kronecker as kr
from .fields import FieldSpec, RatFunc
from .models import ProjectiveModel, ProjectiveSystem, center, fiber, limit_conditions, limit_ops, product_model
from .onedim import OPERATORS as ONEDIM_OPS
from .onedim import random_subset
from .poly import Poly
from .spectral import enumerate_posets, is_irreducible
from .valuations import Place, intersection_member, value, zr_space

__all__ = [
    "SUITES",
    "Check",
    "SuiteResult",
    "run_suite",
    "standard_system",
    "default_settings",
    "random_element",
    "spectral_basics_finite",
    "pick_up_extra_exhaustive",
]


@dataclass
class Check:
    name: str
    cases: int = 0
    failures: int = 0
    inconclusive: int = 0
    examples: list = field(default_factory=list)

    def record(self, ok, example=None):
        self.cases += 1
        if ok is None:
            self.inconclusive += 1
        elif not ok:
            self.failures += 1
            if example is not None and len(self.examples) < 3:
                self.examples.append(str(example))

    @property
    def status(self):
        if self.failures:
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"

    def to_json(self):
        return {
            "check": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "inconclusive": self.inconclusive,
            "status": self.status,
            "examples": self.examples,
        }


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def check(self, name) -> Check:
        c = Check(name)
        self.checks.append(c)
        return c

    @property
    def status(self):
        st = [c.status for c in self.checks]
        if "fail" in st:
            return "fail"
        return "inconclusive" if "inconclusive" in st else "pass"

    def to_json(self):
        return {"suite": self.name, "status": self.status, "bounds": self.bounds, "checks": [c.to_json() for c in self.checks]}


# -- fixtures ---------------------------------------------------------------


def default_settings():
    return [FieldSpec.qz(), FieldSpec.fp(2), FieldSpec.qx()]


def standard_system(p=5) -> ProjectiveSystem:
    """P^1, the nodal and cuspidal cubics, and the product of the last two."""
    F = FieldSpec.fp(p) if p else FieldSpec.qx()
    P1 = ProjectiveModel(F, ["1", "x"], "g1/g0", name="P1")
    nodal = ProjectiveModel(F, ["1", "x^2-1", "x^3-x"], "g2/g1", name="nodal")
    cusp = ProjectiveModel(F, ["1", "x^2", "x^3"], "g2/g1", name="cuspidal")
    prod = product_model(nodal, cusp, name="product")
    return ProjectiveSystem([P1, nodal, cusp, prod], [(0, 1), (0, 2), (3, 1), (3, 2)])


def random_element(spec: FieldSpec, rng: random.Random, deg=3, height=20):
    """A random element of F (possibly zero)."""
    if spec.kind == "qz":
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def rpoly(d):
        cs = [rng.randint(-height, height) for _ in range(d + 1)]
        return Poly(cs, spec.p)

    num = rpoly(rng.randint(0, deg))
    den = rpoly(rng.randint(0, deg))
    while not den:
        den = rpoly(rng.randint(0, deg))
    return RatFunc(num, den)


# -- finite spaces ------------------------------------------------------------


def _bits(m):
    return [i for i in range(m.bit_length()) if m >> i & 1]


def spectral_basics_finite(max_points: int, res: SuiteResult):
    """Basic identities, quasicompactness and irreducibility on every poset."""
    names = [
        "gen within inv",
        "pt within patch",
        "patch within inv and cl",
        "inv = gen(pt)",
        "inv = gen(patch)",
        "inv = gen (quasicompact)",
        "pt within Y (quasicompact)",
        "patch = Y (discrete patch topology)",
        "idempotent",
        "empty set fixed",
        "inverse-closed subsets of irreducible spaces are irreducible",
    ]
    checks = {n: res.check(n) for n in names}
    for n in range(max_points + 1):
        for X in enumerate_posets(n):
            T = {op: X.table(op) for op in ("cl", "gen", "inv", "patch", "pt")}
            top = X.has_top()
            for m in range(X._full + 1):
                cl, gen, inv, pa, pt = (T[o][m] for o in ("cl", "gen", "inv", "patch", "pt"))
                ex = (X.relation(), X.unmask(m))
                checks["gen within inv"].record(gen & ~inv == 0, ex)
                checks["pt within patch"].record(pt & ~pa == 0, ex)
                checks["patch within inv and cl"].record(pa & ~(inv & cl) == 0, ex)
                checks["inv = gen(pt)"].record(inv == T["gen"][pt], ex)
                checks["inv = gen(patch)"].record(inv == T["gen"][pa], ex)
                checks["inv = gen (quasicompact)"].record(X.is_quasicompact(X.unmask(m)) and inv == gen, ex)
                checks["pt within Y (quasicompact)"].record(pt & ~m == 0, ex)
                checks["patch = Y (discrete patch topology)"].record(pa == m, ex)
                checks["idempotent"].record(all(T[o][T[o][m]] == T[o][m] for o in ("cl", "gen", "inv", "patch")), ex)
                if m == 0:
                    checks["empty set fixed"].record(all(T[o][0] == 0 for o in T), ex)
                if top and m and T["gen"][m] == m:
                    checks["inverse-closed subsets of irreducible spaces are irreducible"].record(
                        is_irreducible(X, X.unmask(m)), ex
                    )


def pick_up_extra_exhaustive(max_points: int, res: SuiteResult):
    """Images of closures under every monotone map between small posets."""
    c_gen = res.check("d(gen Z) within gen(d Z)")
    c_inv = res.check("d(inv Z) within inv(d Z)")
    c_patch = res.check("d(patch Z) = patch(d Z)")
    c_pt = res.check("d(pt Z) = pt(d Z) for closed maps")
    c_pt_sub = res.check("pt(d Z) within d(pt Z) for closed maps")
    spaces = [X for n in range(1, max_points + 1) for X in enumerate_posets(n)]
    for S in spaces:
        TS = {op: S.table(op) for op in ("gen", "inv", "patch", "pt")}
        n = len(S)
        order = [(i, j) for i in range(n) for j in range(n) if i != j and S._up[i] >> j & 1]
        for T in spaces:
            TT = {op: T.table(op) for op in ("gen", "inv", "patch", "pt")}
            closed_T = T.closed_masks()
            for g in itertools.product(range(len(T)), repeat=n):
                if any(not (T._up[g[i]] >> g[j] & 1) for i, j in order):
                    continue

                def img(m, g=g):
                    out = 0
                    for i in _bits(m):
                        out |= 1 << g[i]
                    return out

                closed_map = all(img(c) in closed_T for c in S._closed)
                for z in range(S._full + 1):
                    dz = img(z)
                    ex = (S.relation(), T.relation(), g, z)
                    c_gen.record(img(TS["gen"][z]) & ~TT["gen"][dz] == 0, ex)
                    c_inv.record(img(TS["inv"][z]) & ~TT["inv"][dz] == 0, ex)
                    c_patch.record(img(TS["patch"][z]) == TT["patch"][dz], ex)
                    if closed_map:
                        dpt, ptd = img(TS["pt"][z]), TT["pt"][dz]
                        c_pt.record(dpt == ptd, ex)
                        c_pt_sub.record(ptd & ~dpt == 0, ex)


# -- one-dimensional spaces ---------------------------------------------------


def _onedim_chain(spec, rng, samples, res, pool):
    X = zr_space(spec)
    c1 = res.check(f"{spec}: pt within patch within inv and cl")
    c2 = res.check(f"{spec}: inv = gen(patch)")
    c3 = res.check(f"{spec}: idempotent")
    c4 = res.check(f"{spec}: inv = gen and pt within Y")
    for _ in range(samples):
        Y = random_subset(X, rng, pool=pool)
        o = {k: f(X, Y) for k, f in ONEDIM_OPS.items()}
        c1.record(o["pt"] <= o["patch"] and o["patch"] <= (o["inv"] & o["cl"]), Y)
        c2.record(o["inv"] == ONEDIM_OPS["gen"](X, o["patch"]), Y)
        c3.record(all(ONEDIM_OPS[k](X, o[k]) == o[k] for k in ("cl", "gen", "inv", "patch")), Y)
        c4.record(o["inv"] == o["gen"] and o["pt"] <= Y, Y)


def suite_spectral_basics(ws, probe, poset_max, seed, samples):
    res = SuiteResult("spectral-basics", bounds={"poset_max": poset_max, "samples": samples, "seed": seed})
    spectral_basics_finite(poset_max, res)
    rng = random.Random(seed)
    for spec in default_settings():
        _onedim_chain(spec, rng, samples, res, pool=12)
    return res


def suite_new_qc(ws, probe, poset_max, seed, samples):
    res = SuiteResult("new-qc", bounds={"poset_max": poset_max, "samples": samples, "seed": seed})
    c = res.check("finite: quasicompact, inv = gen, pt within Y")
    for n in range(poset_max + 1):
        for X in enumerate_posets(n):
            gen, inv, pt = X.table("gen"), X.table("inv"), X.table("pt")
            for m in range(X._full + 1):
                c.record(X.is_quasicompact(X.unmask(m)) and inv[m] == gen[m] and pt[m] & ~m == 0, (X.relation(), m))
    rng = random.Random(seed)
    for spec in default_settings():
        X = zr_space(spec)
        c = res.check(f"{spec}: quasicompact, inv = gen, pt within Y")
        for _ in range(samples):
            Y = random_subset(X, rng)
            c.record(Y.is_quasicompact() and ONEDIM_OPS["inv"](X, Y) == ONEDIM_OPS["gen"](X, Y) and ONEDIM_OPS["pt"](X, Y) <= Y, Y)
    return res


def suite_pick_up_extra(ws, probe, poset_max, seed, samples):
    n = min(poset_max, 4)
    res = SuiteResult("pick-up-extra", bounds={"poset_max": n})
    pick_up_extra_exhaustive(n, res)
    return res


def _systems(ws):
    if ws is not None and ws.systems:
        return sorted(ws.systems.items())
    return [("standard F_5", standard_system(5))]


def suite_fundamental(ws, probe, poset_max, seed, samples):
    res = SuiteResult("fundamental", bounds={"probe": probe, "samples": samples, "seed": seed})
    for name, system in _systems(ws):
        X = zr_space(system.spec)
        rng = random.Random(seed)
        probed = X.first(probe)
        injective = [
            M for M in system.models if all(len(fiber(M, center(M, v))) == 1 for v in probed)
        ]
        c_sup = res.check(f"{name}: intrinsic operators within limit formulas")
        c_eq = res.check(f"{name}: limit formulas equal intrinsic operators") if injective else None
        c_mono = res.check(f"{name}: conditions pass down dominations")
        doms = system.dominations or system.computed_dominations(probe)
        for _ in range(samples):
            Z = random_subset(X, rng, pool=min(probe, 20))
            lim = limit_ops(system, Z)
            intr = {k: ONEDIM_OPS[k](X, Z) for k in ("inv", "patch", "pt")}
            c_sup.record(all(intr[k] <= lim[k] for k in intr), Z)
            if c_eq is not None:
                c_eq.record(all(intr[k] == lim[k] for k in intr), Z)
            for v in probed[:16] + [Place.trivial()]:
                conds = limit_conditions(system, Z, v)
                ok = all(
                    not conds[system.models[i].name][k] or conds[system.models[j].name][k]
                    for i, j in doms
                    for k in ("inv", "patch", "pt")
                )
                c_mono.record(ok, (Z, v))
    return res


def suite_top_prelim(ws, probe, poset_max, seed, samples):
    res = SuiteResult("top-prelim", bounds={"probe": probe, "samples": samples, "seed": seed})
    rng = random.Random(seed)
    for spec in default_settings():
        X = zr_space(spec)
        c_inv = res.check(f"{spec}: inverse closure via Kronecker membership")
        c_pt = res.check(f"{spec}: pt via maximal ideals")
        c_sep = res.check(f"{spec}: inverse closed iff every outside place is separated")
        c_ring = res.check(f"{spec}: A(Z) = A(inv Z) on samples")
        c_aff = res.check(f"{spec}: affine Z: inv Z = places containing A")
        for _ in range(samples):
            Z = random_subset(X, rng)
            I = kr.inv_via_kronecker(spec, Z, probe)
            c_inv.record(I.ok and I.subset == ONEDIM_OPS["inv"](X, Z), Z)
            P = kr.pt_via_max(spec, Z, probe)
            c_pt.record(P.ok and P.subset == ONEDIM_OPS["pt"](X, Z), Z)
            c_sep.record((ONEDIM_OPS["gen"](X, Z) == Z) == _all_separated(spec, Z, probe), Z)
            R1, R2 = kr.ring_desc(spec, Z), kr.ring_desc(spec, ONEDIM_OPS["inv"](X, Z))
            elems = [random_element(spec, rng) for _ in range(8)]
            c_ring.record(
                R1.kind == R2.kind and all(R1.contains(a) == R2.contains(a) == intersection_member(Z, a) for a in elems), Z
            )
            Zi = ONEDIM_OPS["inv"](X, Z)
            if kr.affine_test(spec, Zi)["affine"]:
                A = kr.ring_desc(spec, Zi)
                samples_A = [a for a in elems if A.contains(a)]
                samples_A += [kr.separator(spec, W) for W in X.first(probe) if W not in Zi]
                ok = all(
                    (V in Zi) == all(value(V, a) >= 0 for a in samples_A) for V in X.first(min(probe, 24))
                )
                c_aff.record(ok, Z)
    return res


def _all_separated(spec, Z, probe):
    # every probed place outside Z (generic included) has a separating element
    X = Z.space
    if not Z.generic:
        return Z.is_empty()  # nothing separates the generic point
    for W in X.first(probe):
        if W in Z:
            continue
        s = kr.separator(spec, W)
        if not (kr.in_kronecker(spec, Z, s) and not kr.in_star(W, s)):
            return False
    return True


def suite_affine_scheme(ws, probe, poset_max, seed, samples):
    res = SuiteResult("affine-scheme", bounds={"samples": samples, "seed": seed})
    Q, F2 = FieldSpec.qz(), FieldSpec.fp(2)
    c = res.check("Q/Z whole space is affine")
    c.record(kr.affine_test(Q, zr_space(Q).whole())["affine"])
    c = res.check("F_p(x)/F_p whole space is not affine")
    c.record(not kr.affine_test(F2, zr_space(F2).whole())["affine"])
    rng = random.Random(seed)
    for spec in default_settings():
        X = zr_space(spec)
        c = res.check(f"{spec}: finite sets plus generic are affine")
        for _ in range(samples):
            k = rng.randint(0, 4)
            Z = X.finite(rng.sample(X.first(12), k), generic=True)
            c.record(kr.affine_test(spec, Z)["affine"], Z)
    if ws is not None:
        c = res.check("workspace subsets: verdict recorded")
        for name, Y in sorted(ws.subsets.items()):
            if hasattr(Y, "space") and Y.space is zr_space(ws.field) if ws.field else False:
                kr.affine_test(ws.field, Y)
                c.record(True)
    return res


def suite_kuhlmann_density(ws, probe, poset_max, seed, samples):
    res = SuiteResult("kuhlmann-density", bounds={"probe": probe})
    settings = default_settings()
    if ws is not None and ws.field is not None and ws.field not in settings:
        settings.append(ws.field)
    for spec in settings:
        X = zr_space(spec)
        c = res.check(f"{spec}: closed places are patch dense")
        c.record(ONEDIM_OPS["patch"](X, X.all_closed()) == X.whole())
        if spec.is_function_field:
            Zp = X.cofinite([Place.infinity()])
            c = res.check(f"{spec}: inv of the finite places adds only the generic point")
            c.record(ONEDIM_OPS["inv"](X, Zp) == Zp.with_generic())
            c.record(kr.inv_via_kronecker(spec, Zp, probe).subset == Zp.with_generic())
    for name, system in _systems(ws):
        X = zr_space(system.spec)
        c = res.check(f"{name}: limit formulas reproduce patch density")
        c.record(limit_ops(system, X.all_closed())["patch"] == X.whole())
    return res


def suite_geom_prufer(ws, probe, poset_max, seed, samples):
    res = SuiteResult("geom-prufer", bounds={"samples": samples, "seed": seed})
    rng = random.Random(seed)
    for spec in default_settings():
        X = zr_space(spec)
        c = res.check(f"{spec}: Prufer witnesses verify")
        n = 0
        while n < samples:
            Z = random_subset(X, rng).with_generic()
            if not kr.affine_test(spec, Z)["affine"]:
                continue
            t = [a for a in (random_element(spec, rng) for _ in range(rng.randint(1, 4))) if a]
            if not t:
                continue
            n += 1
            try:
                W = kr.prufer_witness(spec, Z, t)
            except kr.Inconclusive:
                c.record(None)
                continue
            c.record(W.verify()["ok"], (Z, t))
    Q = FieldSpec.qz()
    X = zr_space(Q)
    c = res.check("Q/Z: every sampled projective model is Spec Z")
    for _ in range(max(1, samples // 5)):
        gens = [Fraction(rng.randint(1, 30), rng.randint(1, 30)) * rng.choice([1, -1]) for _ in range(rng.randint(1, 4))]
        M = ProjectiveModel(Q, gens, name="sample")
        cs = [center(M, v) for v in X.first(min(probe, 32))]
        bij = len(set(cs)) == len(cs) and all(fiber(M, cc) == [v] for cc, v in zip(cs, X.first(len(cs))))
        c.record(bij and kr.affine_test(Q, X.whole())["affine"], gens)
    return res


SUITES = {
    "spectral-basics": suite_spectral_basics,
    "new-qc": suite_new_qc,
    "pick-up-extra": suite_pick_up_extra,
    "fundamental": suite_fundamental,
    "top-prelim": suite_top_prelim,
    "affine-scheme": suite_affine_scheme,
    "kuhlmann-density": suite_kuhlmann_density,
    "geom-prufer": suite_geom_prufer,
}

DEFAULT_SAMPLES = {
    "spectral-basics": 200,
    "new-qc": 200,
    "pick-up-extra": 0,
    "fundamental": 100,
    "top-prelim": 100,
    "affine-scheme": 50,
    "kuhlmann-density": 0,
    "geom-prufer": 50,
}


def run_suite(name, ws=None, probe=64, poset_max=5, seed=0, samples=None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if samples is None:
        samples = DEFAULT_SAMPLES[name]
    return SUITES[name](ws, probe, poset_max, seed, samples)
