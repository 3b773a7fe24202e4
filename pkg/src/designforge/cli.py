"""Command-line front end: construct designs, derive reductions and duals,
search automorphism groups, and run the built-in verification suites."""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import casestudies
from .atlas import (
    build_alternating,
    build_psl2,
    build_symmetric,
    embed_pgl2,
    load_group,
    mathieu_group,
    point_stabilizer_subgroup,
)
from .autsearch import aut_group
from .construct import method1_design, method2_design
from .design import (
    dual_design,
    read_design,
    reduce_design,
    t_design_lambda,
    validate_1design,
    write_design,
)
from .errors import (
    BudgetExceeded,
    DesignForgeError,
    InternalInconsistency,
    NotTDesign,
    OrbitOverflow,
)
from .group import element_of_order

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INCONSISTENT = 4


def _seed(args) -> int:
    env = os.environ.get("DESIGNFORGE_SEED")
    if env is not None:
        return int(env)
    return args.seed


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


def _collect_claims(obj, out):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if k in ("claims",):
                out.extend(v)
            else:
                _collect_claims(v, out)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _collect_claims(v, out)
    elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        _collect_claims(dataclasses.asdict(obj), out)


def _emit(args, report):
    claims = []
    _collect_claims(report, claims)
    report = dict(report)
    report["schema_version"] = SCHEMA_VERSION
    report["seed"] = _seed(args)
    body = _jsonable(report)
    text = json.dumps(body, indent=2, sort_keys=True)
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    if getattr(args, "format", "json") == "json":
        print(text)
    else:
        _render_text(body)
    if any(not c["pass"] for c in claims):
        return EXIT_INCONSISTENT
    return EXIT_OK


def _render_text(body):
    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk("%s.%s" % (prefix, k) if prefix else k, obj[k])
        elif isinstance(obj, list) and obj and isinstance(obj[0], dict) and "claim" in obj[0]:
            for c in obj:
                status = "ok" if c["pass"] else "FAIL (expected %s, observed %s)" % (
                    c["expected"],
                    c["observed"],
                )
                print("%s: %s %s" % (prefix, c["claim"], status))
        elif isinstance(obj, list):
            print("%s: %s" % (prefix, obj))
        else:
            print("%s: %s" % (prefix, obj))

    walk("", body)


# -- group recipes -----------------------------------------------------------


def _parse_group(spec: str):
    kind, _, param = spec.partition(":")
    if kind == "psl2":
        return build_psl2(int(param))
    if kind == "alternating":
        return build_alternating(int(param))
    if kind == "symmetric":
        return build_symmetric(int(param))
    if kind == "mathieu":
        return mathieu_group(int(param))
    if kind == "file":
        return load_group(param)
    raise ValueError("unknown group recipe %r" % spec)


def _parse_maximal(G, spec: str):
    kind, _, param = spec.partition(":")
    if kind == "pgl2":
        q2 = G.recipe.params["q"]
        q = int(round(q2**0.5))
        if q * q != q2:
            raise ValueError("pgl2 subgroup needs a square field size")
        return embed_pgl2(q, param or "squared")
    if kind == "point-stabilizer":
        return point_stabilizer_subgroup(G, int(param))
    raise ValueError("unknown subgroup recipe %r" % spec)


# -- subcommands -------------------------------------------------------------


def cmd_construct(args):
    G = _parse_group(args.group)
    if args.method == 1:
        design = method1_design(
            G, args.point, orbit_size=args.orbit_size, orbit_index=args.orbit_index
        )
    else:
        if not args.maximal or not args.ord:
            raise ValueError("method 2 needs --maximal and --ord")
        M = _parse_maximal(G, args.maximal)
        tag = {"fixed_points": args.fixed_points} if args.fixed_points is not None else None
        g = element_of_order(M, args.ord, class_tag=tag, seed=_seed(args))
        design = method2_design(G, M, g)
    if args.out:
        write_design(args.out, design.design, design.params)
    report = {
        "command": "construct",
        "group": G.recipe.to_dict(),
        "method": args.method,
        "params": design.params,
        "claims": [],
    }
    return _emit(args, report)


def _load(args):
    D, params = read_design(args.design)
    if params is None:
        params = validate_1design(D)
    return D, params


def cmd_reduce(args):
    D, params = _load(args)
    R = reduce_design(D)
    if args.out:
        write_design(args.out, R.quotient, R.params)
    return _emit(
        args,
        {
            "command": "reduce",
            "class_size": R.class_size,
            "classes": len(R.classes),
            "params": R.params,
            "claims": [],
        },
    )


def cmd_dual(args):
    D, _ = _load(args)
    T = dual_design(D)
    tparams = validate_1design(T)
    if args.out:
        write_design(args.out, T, tparams)
    return _emit(args, {"command": "dual", "params": tparams, "claims": []})


def cmd_tdesign(args):
    D, _ = _load(args)
    report = {"command": "tdesign", "claims": []}
    if args.max_t:
        best = None
        kmin = min(len(b) for b in D.blocks)
        for t in range(1, kmin + 1):
            try:
                lam = t_design_lambda(D, t, budget=args.budget)
            except NotTDesign:
                break
            best = (t, lam)
        report["max_t"], report["lambda_t"] = best
    else:
        lam = t_design_lambda(D, args.t, budget=args.budget)
        report["t"], report["lambda_t"] = args.t, lam
        if args.expect is not None:
            report["claims"].append(
                casestudies.claim("t-design-lambda", args.expect, lam)
            )
    return _emit(args, report)


def cmd_aut(args):
    D, _ = _load(args)
    res = aut_group(D, budget=args.budget_nodes)
    report = {
        "command": "aut",
        "order": res.order,
        "complete": res.complete,
        "nodes": res.nodes,
        "point_transitive": res.point_transitive,
        "block_transitive": res.block_transitive,
        "generators": [str(g) for g in res.generators],
        "claims": [],
    }
    if args.expect_order is not None:
        report["claims"].append(
            casestudies.claim("aut-order", args.expect_order, res.order)
        )
    return _emit(args, report)


def cmd_mathieu(args):
    rows = []
    pairs = (
        [(args.n, args.ord)]
        if args.n
        else [(n, o) for n in (24, 23, 22) for o in (2, 3)]
    )
    for n, o in pairs:
        rows.append(casestudies.run_mathieu_row(n, o, aut_budget=args.budget_nodes))
    report = {"command": "mathieu", "rows": rows}
    if args.format == "text":
        print("  n ord |I|     dual (v,b,k) t lam_t        Aut   Stab(b)")
        for r in rows:
            print(
                "%3d %3d %3d %16s %d %5d %10d %9d"
                % (
                    r.n,
                    r.g_order,
                    r.i_size,
                    (r.dual_params.v, r.dual_params.b, r.dual_params.k),
                    r.t,
                    r.lambda_t,
                    r.aut_order,
                    r.block_stab_order,
                )
            )
    return _emit(args, report)


def cmd_psl2(args):
    qs = [int(q) for q in args.q.split(",")]
    report = {"command": "psl2", "families": [casestudies.run_psl_family(q) for q in qs]}
    return _emit(args, report)


def cmd_examples(args):
    report = {
        "command": "examples",
        "orbit_family": casestudies.run_coset_orbit_family(
            aut_budget=args.budget_nodes, sample=args.sample
        ),
        "small_designs": casestudies.run_small_designs(
            aut_budget=args.budget_nodes, stretch_budget=args.stretch_budget
        ),
    }
    return _emit(args, report)


def cmd_stab(args):
    G = _parse_group(args.group)
    M = _parse_maximal(G, args.maximal)
    tag = {"fixed_points": args.fixed_points} if args.fixed_points is not None else None
    g = element_of_order(M, args.ord, class_tag=tag, seed=_seed(args))
    design = method2_design(G, M, g)
    rep = casestudies.class_stabilizer_report(design)
    report = {
        "command": "stab",
        "report": rep,
        "claims": casestudies.stab_claims(rep),
    }
    return _emit(args, report)


# -- argument parsing ---------------------------------------------------------


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--report", help="also write the JSON report to this path")
    top = argparse.ArgumentParser(
        prog="designforge",
        description="Designs from finite simple permutation groups.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = add_parser("construct", help="build a design from a group recipe")
    c.add_argument("--method", type=int, choices=(1, 2), required=True)
    c.add_argument("--group", required=True, help="psl2:q | alternating:n | symmetric:n | mathieu:n | file:path")
    c.add_argument("--point", type=int, default=0)
    c.add_argument("--orbit-size", type=int, dest="orbit_size")
    c.add_argument("--orbit-index", type=int, dest="orbit_index", default=0)
    c.add_argument("--maximal", help="pgl2:variant | point-stabilizer:pt")
    c.add_argument("--ord", type=int, help="order of the class representative")
    c.add_argument("--fixed-points", type=int, dest="fixed_points")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    for name, func in (("reduce", cmd_reduce), ("dual", cmd_dual)):
        p = add_parser(name)
        p.add_argument("--design", required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = add_parser("tdesign", help="test t-subset uniformity")
    p.add_argument("--design", required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--max-t", action="store_true", dest="max_t")
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--expect", type=int)
    p.set_defaults(func=cmd_tdesign)

    p = add_parser("aut", help="automorphism group search")
    p.add_argument("--design", required=True)
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes", default=10**6)
    p.add_argument("--expect-order", type=int, dest="expect_order")
    p.set_defaults(func=cmd_aut)

    p = add_parser("mathieu", help="the six Mathieu design rows")
    p.add_argument("--n", type=int, choices=(22, 23, 24))
    p.add_argument("--ord", type=int, choices=(2, 3), default=2)
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes", default=10**6)
    p.set_defaults(func=cmd_mathieu)

    p = add_parser("psl2", help="PSL(2,q^2) / PGL(2,q) design families")
    p.add_argument("--q", default="3,5")
    p.set_defaults(func=cmd_psl2)

    p = add_parser("examples", help="the named small-group design examples")
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes", default=10**6)
    p.add_argument("--sample", type=int)
    p.add_argument("--stretch-budget", type=int, dest="stretch_budget", default=0)
    p.set_defaults(func=cmd_examples)

    p = add_parser("stab", help="stabilizer identity report")
    p.add_argument("--group", required=True)
    p.add_argument("--maximal", required=True)
    p.add_argument("--ord", type=int, required=True)
    p.add_argument("--fixed-points", type=int, dest="fixed_points")
    p.set_defaults(func=cmd_stab)

    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, OrbitOverflow) as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except InternalInconsistency as exc:
        print("inconsistent result: %s" % exc, file=sys.stderr)
        return EXIT_INCONSISTENT
    except (DesignForgeError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
