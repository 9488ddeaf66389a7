"""Command line front end.

    qpskew build <file> [--out DIR]
    qpskew verify <file> [--max-len N] [--negative-control] [--out DIR]
    qpskew normalize <file> [--out FILE]

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 potential not
invariant.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .action import InvalidAction, InvalidChoice, NotInvariant, make_choices
from .construct import Transport
from .instance import InstanceError, load_instance
from .scalar import ParseError, format_scalar

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NOT_INVARIANT = 0, 1, 2, 3


def _dump(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False, ensure_ascii=False)
        fh.write("\n")


def _group_list(g):
    return [int(r) for r in g]


# --- serialization ---------------------------------------------------------

def choices_json(ch):
    return {
        "I_tilde": list(ch.I_tilde),
        "kappa": {v: _group_list(g) for v, g in ch.kappa.items()},
        "R": [{"from": i, "to": j, "reps": list(r)} for (i, j), r in ch.R.items()],
        "D": [{"from": i, "to": j, "arrows": list(d)} for (i, j), d in ch.D.items()],
        "chi": {a: str(c) for a, c in ch.chi.items()},
    }


def potential_json(W):
    return [[format_scalar(x), [str(a) for a in c.arrows]] for c, x in W.sorted_terms()]


def qg_json(qg, W_G, conductor):
    """Q_G as an instance file for the trivial group, with W_G as its potential."""
    return {
        "group": [1],
        "conductor": conductor,
        "quiver": {
            "vertices": [str(v) for v in qg.vertices],
            "arrows": [{"id": str(a), "source": str(s), "target": str(t), "origin": str(a.base),
                        "rho": str(a.rho), "sigma": str(a.sigma)}
                       for a, (s, t) in qg.arrows.items()],
        },
        "vertex_labels": {str(v): {"rep": v.rep, "character": str(v.rho)} for v in qg.vertices},
        "potential": potential_json(W_G),
    }


def normalized_json(inst, act, base_change, W):
    G = act.group
    action = []
    for g in G.generators():
        action.append({
            "vertices": {v: act.vertex(g, v) for v in act.quiver.vertices},
            "arrows": {a: [[format_scalar(c), b]] for a, (c, b) in
                       ((a, act.arrow(g, a)) for a in act.quiver.arrows)},
        })
    data = {
        "group": list(G.factors),
        "conductor": G.conductor,
        "quiver": {"vertices": list(act.quiver.vertices),
                   "arrows": [{"id": a, "source": s, "target": t}
                              for a, (s, t) in act.quiver.arrows.items()]},
        "action": action,
        "potential": potential_json(W),
    }
    raw = inst.raw_json
    if raw.get("choices"):
        data["choices"] = raw["choices"]
    if "truncation" in raw:
        data["truncation"] = raw["truncation"]
    return data


def base_change_json(base_change):
    return {n: [[format_scalar(c), b] for b, c in coords.items()] for n, coords in base_change.items()}


# --- pipeline ----------------------------------------------------------------

def prepare(path):
    """Load, normalize and pick choices.  Raises the input errors unchanged."""
    inst = load_instance(path)
    act, base_change, W = inst.monomial()
    choices = make_choices(act, inst.choices_seed)
    return inst, act, base_change, W, choices


def _witness(exc):
    return {"generator": _group_list(exc.generator), "cycle": exc.cycle}


def cmd_build(args):
    inst, act, base_change, W, choices = prepare(args.file)
    T = Transport(act, choices, max_len=inst.truncation)
    W_G = T.compute_WG(W)
    os.makedirs(args.out, exist_ok=True)
    _dump(qg_json(T.qg, W_G, act.group.conductor), os.path.join(args.out, "qg.json"))
    _dump({"conductor": act.group.conductor, "potential": potential_json(W_G)},
          os.path.join(args.out, "wg.json"))
    _dump(choices_json(choices), os.path.join(args.out, "choices.json"))
    print(f"Q_G: {len(T.qg.vertices)} vertices, {len(T.qg.arrows)} arrows; "
          f"W_G: {len(W_G.terms)} cycles -> {args.out}")
    return EXIT_OK


def cmd_verify(args):
    from .checks import run_suite

    t0 = time.perf_counter()
    inst, act, base_change, W, choices = prepare(args.file)
    T = Transport(act, choices, max_len=inst.truncation)
    W_G = T.compute_WG(W)
    results = run_suite(T, W, W_G, max_len=args.max_len, negative_control=args.negative_control)
    passed = all(r["passed"] for r in results.values())
    first = next(({"check": k, "counterexample": r["counterexample"]}
                  for k, r in results.items() if not r["passed"]), None)
    # timings go to stdout only so that report.json is reproducible
    report = {
        "instance": os.path.basename(args.file),
        "negative_control": args.negative_control,
        "passed": passed,
        "checks": {k: {f: r[f] for f in ("passed", "count", "counterexample")}
                   for k, r in results.items()},
        "first_failure": first,
    }
    os.makedirs(args.out, exist_ok=True)
    _dump(report, os.path.join(args.out, "report.json"))
    for name, r in results.items():
        print(f"{'PASS' if r['passed'] else 'FAIL'} {name} ({r['count']} cases, {r['seconds']} s)")
    if first:
        print(f"first failure: {first['check']}: {first['counterexample']}")
    print(f"total {time.perf_counter() - t0:.2f} s")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_normalize(args):
    inst = load_instance(args.file)
    act, base_change, W = inst.monomial()
    out = {"instance": normalized_json(inst, act, base_change, W),
           "base_change": base_change_json(base_change)}
    text = json.dumps(out, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="qpskew", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("build", help="compute Q_G, W_G and the choice data")
    p.add_argument("file")
    p.add_argument("--out", default=".", help="output directory (default: .)")
    p.set_defaults(func=cmd_build)
    p = sub.add_parser("verify", help="run the property suites and the dg check")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None, help="path length bound in the skew algebra")
    p.add_argument("--negative-control", action="store_true",
                   help="double one coefficient of W_G; the dg check must then fail")
    p.add_argument("--out", default=".", help="directory for report.json (default: .)")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("normalize", help="rewrite the action by generalized permutations")
    p.add_argument("file")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.set_defaults(func=cmd_normalize)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotInvariant as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(_witness(exc)), file=sys.stderr)
        return EXIT_NOT_INVARIANT
    except (InstanceError, InvalidAction, InvalidChoice, ParseError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
