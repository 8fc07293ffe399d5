"""Command line: ``mvbp {generate,solve,verify,compare}``.

Exit codes: 0 ok, 1 infeasible packing, 2 input error, 3 bound violation,
4 infeasible item, 5 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import fields

from . import io
from .errors import BudgetExceeded, InfeasibleItem
from .generate import GeneratorParams, generate
from .mmk import guess_size, solve_mmk
from .model import check_packing, check_selection, validate_instance
from .oracle import OracleBudget, exact_cover_lp, exact_mmk, exact_mvbp
from .solver import solve_unweighted, solve_weighted, solve_weighted_wrapped

OK, INFEASIBLE, INPUT_ERROR, BOUND_VIOLATION, INFEASIBLE_ITEM, BUDGET = range(6)


class InputError(Exception):
    pass


VERDICTS = {"bound_ok", "bound_check", "feasible", "within_ceiling"}


def _fmt(v, key=""):
    if isinstance(v, bool):
        if key in VERDICTS:
            return "pass" if v else "fail"
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def emit(report: dict, pretty: bool, out=None):
    out = out or sys.stdout
    if pretty:
        width = max((len(k) for k in report), default=0)
        for k, v in report.items():
            s = f"{v:.6g}" if isinstance(v, float) else _fmt(v, k)
            out.write(f"{k:<{width}}  {s}\n")
    else:
        for k, v in report.items():
            out.write(f"{k}={_fmt(v, k)}\n")


def _load(path):
    try:
        inst, meta = io.read_instance(path)
    except io.FormatError as exc:
        raise InputError(str(exc)) from exc
    problems = validate_instance(inst)
    if problems:
        raise InputError("; ".join(problems))
    return inst, meta


def _budget(args):
    if args.oracle_budget is None:
        return OracleBudget()
    return OracleBudget(mmk_space=args.oracle_budget, mvbp_nodes=args.oracle_budget, cover_columns=args.oracle_budget)


def cmd_generate(args):
    values = {}
    if args.params:
        try:
            with open(args.params, encoding="utf-8") as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.params}: {exc}") from exc
        known = {f.name for f in fields(GeneratorParams)}
        if not isinstance(values, dict) or set(values) - known:
            raise InputError(f"{args.params}: unknown generator fields")
    flags = {
        "n": args.n, "m": args.m, "D": args.dimension, "T": args.types,
        "size_lo": args.size_lo, "size_hi": args.size_hi,
        "weight_lo": args.weight_lo, "weight_hi": args.weight_hi,
        "capacity_lo": args.capacity_lo, "capacity_hi": args.capacity_hi,
        "bin_weight_lo": args.bin_weight_lo, "bin_weight_hi": args.bin_weight_hi,
        "seed": args.seed,
    }
    for k, v in flags.items():
        if v is None:
            continue
        if k in values and values[k] != v:
            raise InputError(f"{k}={v} conflicts with {values[k]} declared in {args.params}")
        values[k] = v
    if "n" not in values:
        raise InputError("the item count n is required")
    try:
        params = GeneratorParams(**values)
        inst = generate(params)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    meta = {"name": args.name or f"random-{params.seed}", "seed": params.seed, "generator": params.as_dict()}
    text = io.dumps(io.instance_to_dict(inst, meta))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_solve(args):
    inst, _ = _load(args.instance)
    mode = args.mode
    if mode == "mmk":
        eps = 1.0 if args.epsilon is None else args.epsilon
        if inst.T:
            print(f"warning: ignoring {inst.T} bin type(s); mmk uses unit capacities", file=sys.stderr)
        knap = inst.with_bin_types(())
        sel = solve_mmk(knap, eps)
        report = {
            "mode": mode, "n": inst.n, "D": inst.dimension, "epsilon": eps,
            "q": guess_size(inst.n, inst.dimension, eps),
            "value": sel.value, "chosen": len(sel.chosen),
            "feasible": not check_selection(knap, sel),
        }
        ok = report["feasible"]
        try:
            opt = exact_mmk(knap, _budget(args)).value
            report["opt"] = opt
            report["bound"] = opt / (1 + eps)
            report["bound_check"] = sel.value >= opt / (1 + eps) - 1e-9
            ok = ok and report["bound_check"]
        except BudgetExceeded:
            report["bound_check"] = "skipped"
        emit(report, args.pretty)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(io.dumps(io.selection_to_dict(sel)))
        return OK if ok else BOUND_VIOLATION

    if inst.T == 0:
        raise InputError("mvbp modes need at least one bin type")
    eps = 0.1 if args.epsilon is None else args.epsilon
    if mode == "mvbp-wrapped":
        rep = solve_weighted_wrapped(inst, eps)
    elif all(bt.weight == 1.0 for bt in inst.bin_types):
        rep = solve_unweighted(inst, eps)
    else:
        rep = solve_weighted(inst, eps)
    verdict = check_packing(inst, rep.packing)
    report = {"mode": mode, "n": inst.n, "D": inst.dimension, "T": inst.T, "epsilon": eps}
    report.update(rep.as_dict())
    report["feasible"] = verdict.feasible
    emit(report, args.pretty)
    if args.out:
        io.write_packing(args.out, rep.packing)
    return OK if rep.bound_ok and verdict.feasible else BOUND_VIOLATION


def cmd_verify(args):
    inst, _ = _load(args.instance)
    try:
        packing = io.read_packing(args.packing)
    except io.FormatError as exc:
        raise InputError(str(exc)) from exc
    verdict = check_packing(inst, packing)
    for v in verdict.violations:
        print(v)
    if verdict.feasible:
        print("feasible")
        return OK
    return INFEASIBLE


def cmd_compare(args):
    inst, _ = _load(args.instance)
    if inst.T == 0:
        raise InputError("compare needs at least one bin type")
    eps = 0.1 if args.epsilon is None else args.epsilon
    budget = _budget(args)
    _, opt = exact_mvbp(inst, budget)
    lp_value = exact_cover_lp(inst, budget)
    rep = solve_weighted_wrapped(inst, eps)
    if opt > 0:
        ratio = rep.cost / opt
    else:
        ratio = 1.0 if rep.cost == 0 else math.inf
    ceiling = math.log(2 * inst.dimension) + 3
    report = {
        "oracle_opt": opt, "lp_value": lp_value, "opt_star": rep.opt_star,
        "solver_cost": rep.cost, "ratio": ratio, "ceiling": ceiling,
        "within_ceiling": ratio <= ceiling,
    }
    emit(report, args.pretty)
    return OK if ratio <= ceiling else BOUND_VIOLATION


def build_parser():
    p = argparse.ArgumentParser(prog="mvbp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a seeded random instance")
    g.add_argument("--params", help="JSON file of generator parameters")
    g.add_argument("-n", type=int)
    g.add_argument("-m", type=int)
    g.add_argument("-D", "--dimension", type=int)
    g.add_argument("-T", "--types", type=int)
    for name in ("size-lo", "size-hi", "weight-lo", "weight-hi", "capacity-lo",
                 "capacity-hi", "bin-weight-lo", "bin-weight-hi"):
        g.add_argument(f"--{name}", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--name")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="run a solver and check its guarantee")
    s.add_argument("instance")
    s.add_argument("--mode", choices=("mmk", "mvbp", "mvbp-wrapped"), default="mvbp")
    s.add_argument("--epsilon", type=float)
    s.add_argument("--out", help="write the packing (or knapsack selection) here")
    s.add_argument("--pretty", action="store_true")
    s.add_argument("--oracle-budget", type=int)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a packing file against an instance")
    v.add_argument("instance")
    v.add_argument("packing")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="solver cost against the exact optimum")
    c.add_argument("instance")
    c.add_argument("--epsilon", type=float)
    c.add_argument("--pretty", action="store_true")
    c.add_argument("--oracle-budget", type=int)
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except InfeasibleItem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INFEASIBLE_ITEM
    except BudgetExceeded as exc:
        print(f"error: oracle budget exceeded: {exc}", file=sys.stderr)
        return BUDGET


if __name__ == "__main__":
    sys.exit(main())
