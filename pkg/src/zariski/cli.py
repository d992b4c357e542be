"""Command line front end.

    zariski op --workspace ws.json --subset Y --op inv
    zariski verify --suite spectral-basics --poset-max 5
    zariski dot --workspace ws.json --target system:S
    zariski run --workspace ws.json

Every command prints one report.  Reports are JSON by default, with sorted
keys, so identical inputs and flags give identical bytes.  Exit codes:
0 pass, 1 verification failure, 2 input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import kronecker as kr
from . import onedim, spectral
from .fields import ParseError
from .models import center, fiber_dot, limit_ops, model_space, system_dot
from .onedim import SubsetDesc
from .spectral import FiniteSpectralSpace, hasse_dot
from .valuations import parse_place, parse_trational
from .verify import SUITES, run_suite
from .workspace import Workspace, WorkspaceError, finite_subset, load, subset_to_json

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

OPS = ("cl", "gen", "inv", "patch", "pt")


class InputError(ValueError):
    pass


# -- operations ---------------------------------------------------------------


def apply_op(ws: Workspace, Y, op: str):
    if op not in OPS:
        raise InputError(f"unknown operator {op!r}")
    space = ws.space_of(Y)
    if isinstance(space, FiniteSpectralSpace):
        return finite_subset(space, spectral.OPERATORS[op](space, Y))
    return onedim.OPERATORS[op](space, Y)


def _subset_json(ws, Y):
    space = ws.space_of(Y) if not isinstance(Y, SubsetDesc) else Y.space
    out = subset_to_json(Y)
    out["space"] = space.name if isinstance(space, onedim.OneDimSpace) else "finite"
    return out


def _field(ws):
    if ws.field is None:
        raise InputError("this query needs a workspace 'field'")
    return ws.field


def run_query(ws: Workspace, q: dict, probe: int, path: str):
    """Evaluate one entry of the workspace 'queries' list."""
    if not isinstance(q, dict) or "op" not in q:
        raise WorkspaceError(path, "query needs an 'op'")
    op = q["op"]
    if op in OPS:
        Y = ws.subset(q.get("subset"), f"{path}.subset")
        return {"subset": _subset_json(ws, apply_op(ws, Y, op))}
    F = _field(ws)
    try:
        if op == "affine":
            return kr.affine_test(F, ws.subset(q.get("subset"), f"{path}.subset"))
        if op == "ring":
            return kr.ring_desc(F, ws.subset(q.get("subset"), f"{path}.subset")).to_json()
        if op == "in_kronecker":
            Z = ws.subset(q.get("subset"), f"{path}.subset")
            return {"member": kr.in_kronecker(F, Z, parse_trational(str(q["h"]), F))}
        if op == "separator":
            W = parse_place(q["place"], F)
            return {"place": str(W), "separator": F.format(kr.separator(F, W))}
        if op == "inv_via_kronecker":
            Z = ws.subset(q.get("subset"), f"{path}.subset")
            c = kr.inv_via_kronecker(F, Z, probe)
            return {"subset": c.subset.to_json(), "certified": c.ok, "checked": [str(v) for v in c.checked], "probe": c.probe}
        if op == "pt_via_max":
            Z = ws.subset(q.get("subset"), f"{path}.subset")
            c = kr.pt_via_max(F, Z, probe)
            return {"subset": c.subset.to_json(), "certified": c.ok, "checked": [str(v) for v in c.checked], "probe": c.probe}
        if op == "prufer":
            Z = ws.subset(q.get("subset"), f"{path}.subset")
            W = kr.prufer_witness(F, Z, [F.parse(str(a)) for a in q["t"]])
            fmt = F.format
            return {
                "b": [fmt(x) for x in W.b],
                "a": [[fmt(x) for x in row] for row in W.a],
                "checks": W.verify(),
            }
        if op == "limit":
            S = ws.system(q.get("system"), f"{path}.system")
            Z = ws.subset(q.get("subset"), f"{path}.subset")
            return {k: v.to_json() for k, v in sorted(limit_ops(S, Z).items())}
        if op == "center":
            M = ws.model(q.get("model"), f"{path}.model")
            v = parse_place(q["place"], F)
            return {"place": str(v), "center": model_space(M, probe).format_key(center(M, v))}
        if op == "monic_no_root":
            view = kr.monic_no_root_subset(F, [F.parse(str(a)) for a in q["m"]], probe)
            return {
                "status": view.status,
                "subset": view.subset.to_json() if view.subset is not None else None,
                "gen_closed_on_probe": view.gen_closed_on_probe,
            }
    except KeyError as e:
        raise WorkspaceError(path, f"missing field {e}") from None
    except (ParseError, ValueError) as e:
        if isinstance(e, WorkspaceError):
            raise
        raise WorkspaceError(path, str(e)) from None
    raise WorkspaceError(f"{path}.op", f"unknown query op {op!r}")


# -- commands -------------------------------------------------------------------


def _load_ws(args, required=True):
    if args.workspace is None:
        if required:
            raise InputError("--workspace is required")
        return None
    return load(args.workspace)


def cmd_op(args):
    ws = _load_ws(args, required=False)
    if ws is None:
        if args.field is None or args.subset_json is None:
            raise InputError("give --workspace, or --field and --subset-json")
        ws = Workspace({"field": json.loads(args.field)})
    if args.subset_json is not None:
        body = json.loads(args.subset_json)
        body.setdefault("space", "zr")
        Y = ws.parse_subset("--subset-json", body)
    else:
        Y = ws.subset(args.subset, "--subset")
    out = apply_op(ws, Y, args.op)
    return ws, {"op": args.op, "input": _subset_json(ws, Y), "result": _subset_json(ws, out)}, "pass"


def cmd_verify(args):
    ws = _load_ws(args, required=False)
    res = run_suite(args.suite, ws, probe=args.probe, poset_max=args.poset_max, seed=args.seed, samples=args.samples)
    return ws, res.to_json(), res.status


def cmd_dot(args):
    ws = _load_ws(args)
    kind, _, name = args.target.partition(":")
    if kind == "space":
        text = hasse_dot(ws.space(name, "--target"), name)
    elif kind == "system":
        text = system_dot(ws.system(name, "--target"), args.probe, name)
    elif kind == "model":
        text = fiber_dot(ws.model(name, "--target"), min(args.probe, 16))
    else:
        raise InputError("--target must be space:NAME, system:NAME or model:NAME")
    return ws, {"target": args.target, "dot": text}, "pass"


def cmd_run(args):
    ws = _load_ws(args)
    results = []
    status = "pass"
    for i, q in enumerate(ws.queries):
        try:
            r = run_query(ws, q, args.probe, f"queries[{i}]")
        except kr.Inconclusive as e:
            r, status = {"inconclusive": str(e)}, "inconclusive"
        results.append({"query": q, "result": r})
    return ws, {"queries": results}, status


COMMANDS = {"op": cmd_op, "verify": cmd_verify, "dot": cmd_dot, "run": cmd_run}


def build_parser():
    parser = argparse.ArgumentParser(prog="zariski", description="Closure operators on spectral and Zariski-Riemann spaces.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", metavar="FILE")
    common.add_argument("--probe", type=int, default=64, help="closed places examined by probe-bounded checks")
    common.add_argument("--poset-max", type=int, default=5, help="largest finite poset size in exhaustive suites")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("op", parents=[common], help="apply cl, gen, inv, patch or pt to a subset")
    p.add_argument("--op", choices=OPS, required=True)
    p.add_argument("--subset", help="subset name in the workspace")
    p.add_argument("--subset-json", help="inline subset, e.g. '{\"closed\": {\"finite\": [\"2\"]}}'")
    p.add_argument("--field", help="inline field, e.g. '{\"kind\": \"fp\", \"p\": 2}'")

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--samples", type=int, default=None, help="random cases per setting (suite default if omitted)")

    p = sub.add_parser("dot", parents=[common], help="DOT text for a space, system or model")
    p.add_argument("--target", required=True, help="space:NAME, system:NAME or model:NAME")

    sub.add_parser("run", parents=[common], help="evaluate the workspace queries")
    return parser


def _bounds(args):
    out = {"probe": args.probe, "poset_max": args.poset_max, "seed": args.seed}
    if getattr(args, "samples", None) is not None:
        out["samples"] = args.samples
    return out


def _text(report):
    lines = [f"{report['command']}: {report['status']}"]
    res = report["results"]
    if "checks" in res:
        for c in res["checks"]:
            lines.append(f"  [{c['status']}] {c['check']} ({c['cases']} cases, {c['failures']} failures)")
    elif "result" in res:
        lines.append("  " + json.dumps(res["result"], sort_keys=True))
    elif "queries" in res:
        for q in res["queries"]:
            lines.append("  " + json.dumps(q["query"], sort_keys=True) + " -> " + json.dumps(q["result"], sort_keys=True))
    elif "dot" in res:
        lines.append(res["dot"].rstrip("\n"))
    return "\n".join(lines) + "\n"


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_PASS
    try:
        ws, results, status = COMMANDS[args.command](args)
    except (InputError, WorkspaceError, ParseError, KeyError, json.JSONDecodeError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) else str(e)
        print(json.dumps({"command": argv, "error": msg, "status": "input-error"}, sort_keys=True), file=out)
        return EXIT_INPUT
    except kr.Inconclusive as e:
        ws, results, status = None, {"inconclusive": str(e)}, "inconclusive"
    if args.format == "dot" and "dot" in results:
        out.write(results["dot"])
    else:
        report = {
            "command": argv,
            "inputs_digest": ws.digest if ws is not None else None,
            "bounds": _bounds(args),
            "version": __version__,
            "results": results,
            "status": status,
        }
        if args.format == "text":
            out.write(_text(report))
        else:
            out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[status]


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
