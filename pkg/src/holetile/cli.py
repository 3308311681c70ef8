"""Command line entry point: ``holetile <subcommand> ...``.

Exit codes: 0 success, 1 bad input, 2 verification rejected or formula
refuted, 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import ast
import json
import math
import sys

from . import io
from .constructions import conjectured_min, reference_tiling_9, residue_permutation
from .core import TilingSizeError, render_ascii, verify_tiling
from .foolingset import certify, render_certificate, verify_fooling_set
from .harness import KNOWN_MINIMA, format_table, reproduce_table, run_experiment, table_passed
from .solver import BudgetExceeded, SearchBudget, global_min, min_partition, refute_formula
from .validation import check_permutation

EXIT_OK, EXIT_INPUT, EXIT_REJECT, EXIT_BUDGET = 0, 1, 2, 3

#: ``solve`` runs unbounded up to this n, with a ten-minute cap beyond.
UNBOUNDED_SOLVE_N = 6
DEFAULT_CAP_SECONDS = 600.0


class InputError(Exception):
    pass


def _emit(args, obj, text):
    if args.format == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _budget(args, n=None):
    seconds = args.budget_seconds
    if seconds is None and args.budget_nodes is None and n is not None and n > UNBOUNDED_SOLVE_N:
        seconds = DEFAULT_CAP_SECONDS
    return SearchBudget(args.budget_nodes, seconds)


def _load_perm(args):
    if getattr(args, "perm_file", None):
        return io.load(args.perm_file, "permutation")
    if getattr(args, "perm", None):
        return check_permutation(args.perm)
    raise InputError("give --perm-file or --perm")


_FORMULA_FUNCS = {"sqrt": math.sqrt, "floor": math.floor, "ceil": math.ceil,
                  "isqrt": math.isqrt, "min": min, "max": max}
_FORMULA_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Load,
                  ast.Call, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.FloorDiv, ast.Mod,
                  ast.Pow, ast.USub, ast.UAdd)


def parse_formula(text: str):
    """Arithmetic expression in ``n``, e.g. ``"2*n - 2"`` or ``"floor(3*n/2)"``."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise InputError(f"bad formula {text!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _FORMULA_NODES):
            raise InputError(f"unsupported syntax in formula: {type(node).__name__}")
        if isinstance(node, ast.Name) and node.id != "n" and node.id not in _FORMULA_FUNCS:
            raise InputError(f"unknown name {node.id!r} in formula")
    code = compile(tree, "<formula>", "eval")
    return lambda n: int(eval(code, {"__builtins__": {}}, {**_FORMULA_FUNCS, "n": n}))


def cmd_solve(args):
    res = global_min(args.n, _budget(args, args.n))
    obj = {"n": args.n, "min_count": res.min_count, "optimal": True,
           "nodes": res.nodes_explored, "perm": io.perm_to_dict(res.best_perm),
           "witness": io.tiling_to_dict(res.witness)}
    text = "\n".join([str(res.min_count),
                      f"best permutation: {','.join(map(str, res.best_perm.map))}",
                      render_ascii(res.best_perm, res.witness)])
    _emit(args, obj, text)
    return EXIT_OK


def cmd_min_partition(args):
    perm = _load_perm(args)
    res = min_partition(perm, _budget(args, perm.n))
    _emit(args, res.to_dict(), f"{res.min_count}\n{render_ascii(perm, res.witness)}")
    return EXIT_OK


def cmd_construct(args):
    if args.reference_9:
        perm, tiling = reference_tiling_9()
        obj = {"permutation": io.perm_to_dict(perm), "tiling": io.tiling_to_dict(tiling)}
        _emit(args, obj, f"{len(tiling)} tiles\n{render_ascii(perm, tiling)}")
        return EXIT_OK
    if args.k is None or args.k < 1:
        raise InputError("construct needs --k K with K >= 1, or --reference-9")
    perm = residue_permutation(args.k)
    formula = conjectured_min(args.k) if args.k >= 2 else 0
    obj = {"k": args.k, "permutation": io.perm_to_dict(perm), "conjectured_min": formula}
    lines = [f"k={args.k} n={perm.n} conjectured minimum {formula}",
             "permutation: " + ",".join(map(str, perm.map))]
    if args.k <= 3:
        res = min_partition(perm, _budget(args))
        obj["tiling"] = io.tiling_to_dict(res.witness)
        obj["solver_min"] = res.min_count
        lines += [f"solver minimum {res.min_count}", render_ascii(perm, res.witness)]
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_certify(args):
    perm = _load_perm(args)
    cert = certify(perm)
    text = (f"fooling set size {cert.size} (target {cert.target}), "
            f"{'valid' if cert.valid else 'INVALID'}\n{render_certificate(cert)}")
    _emit(args, io.certificate_to_dict(cert), text)
    return EXIT_OK if cert.valid else EXIT_REJECT


def cmd_verify(args):
    perm = _load_perm(args)
    if args.certificate_file:
        cert = io.load(args.certificate_file, "certificate")
        if cert.perm != perm:
            raise InputError("certificate belongs to a different permutation")
        check = verify_fooling_set(perm, cert.cells)
        ok = check.valid and cert.valid and cert.size == len(cert.cells)
        obj = {"accepted": ok, "size": cert.size,
               "pair": None if check.pair is None else [list(c) for c in check.pair]}
        text = "Accept" if ok else f"Reject: cells {check.pair} span no hole"
    elif args.tiling_file:
        tiling = io.load(args.tiling_file, "tiling")
        try:
            res = verify_tiling(perm, tiling)
        except TilingSizeError as exc:
            raise InputError(str(exc)) from None
        ok = res.accepted
        obj = {"accepted": ok, "clause": res.clause, "message": res.message, "tiles": len(tiling)}
        text = f"Accept ({len(tiling)} tiles)" if ok else f"Reject [{res.clause}]: {res.message}"
    else:
        raise InputError("verify needs --tiling-file or --certificate-file")
    _emit(args, obj, text)
    return EXIT_OK if ok else EXIT_REJECT


def cmd_experiment(args):
    if args.trials < 1:
        raise InputError("--trials must be >= 1")
    report = run_experiment(args.n, args.trials, args.seed, workers=args.workers,
                            keep_trials=not args.no_trials)
    _emit(args, report.to_dict(), report.summary())
    return EXIT_OK


def cmd_table(args):
    if args.formula:
        formula = parse_formula(args.formula)
        lo, hi = args.min_n, args.max_n
        found = refute_formula(formula, range(lo, hi + 1), _budget(args, hi))
        if found is None:
            _emit(args, {"formula": args.formula, "refuted": False},
                  f"{args.formula} agrees with exact minima for n={lo}..{hi}")
            return EXIT_OK
        n, predicted, actual = found
        _emit(args, {"formula": args.formula, "refuted": True, "n": n,
                     "predicted": predicted, "actual": actual},
              f"{args.formula} fails at n={n}: predicts {predicted}, exact minimum {actual}")
        return EXIT_REJECT
    ns = range(args.min_n, args.max_n + 1)
    bad = [n for n in ns if n not in KNOWN_MINIMA]
    if bad:
        raise InputError(f"no published value for n={bad[0]}")
    rows = reproduce_table(_budget(args), ns)
    obj = {"rows": [r.__dict__ | {"best_perm": None if r.best_perm is None else list(r.best_perm)}
                    for r in rows],
           "passed": table_passed(rows)}
    for row in obj["rows"]:
        row.pop("elapsed")
    _emit(args, obj, format_table(rows))
    return EXIT_OK if table_passed(rows) else EXIT_REJECT


def cmd_render(args):
    perm = _load_perm(args)
    if args.tiling_file:
        text = render_ascii(perm, io.load(args.tiling_file, "tiling"))
    elif args.certificate_file:
        text = render_certificate(io.load(args.certificate_file, "certificate"))
    else:
        text = render_ascii(perm)
    print(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="holetile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, perm=False, budget=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("ascii", "json"), default="ascii")
        if perm:
            p.add_argument("--perm-file", help="permutation JSON file")
            p.add_argument("--perm", help="inline permutation, e.g. 7,4,1,8,5,2,9,6,3")
        if budget:
            p.add_argument("--budget-nodes", type=int)
            p.add_argument("--budget-seconds", type=float)
        return p

    p = add("solve", cmd_solve, "exact minimum over all permutations of size n", budget=True)
    p.add_argument("--n", type=int, required=True)
    add("min-partition", cmd_min_partition, "exact minimum tiling of one permutation",
        perm=True, budget=True)
    p = add("construct", cmd_construct, "residue-block permutation for n = k^2", budget=True)
    p.add_argument("--k", type=int)
    p.add_argument("--reference-9", action="store_true", help="dump the 9x9 reference tiling")
    add("certify", cmd_certify, "fooling-set lower-bound certificate", perm=True)
    p = add("verify", cmd_verify, "check a tiling or certificate", perm=True)
    p.add_argument("--tiling-file")
    p.add_argument("--certificate-file")
    p = add("experiment", cmd_experiment, "seeded random-permutation statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, help="worker processes (default MATILDA_THREADS, 0 = auto)")
    p.add_argument("--no-trials", action="store_true", help="omit per-trial records")
    p = add("table", cmd_table, "recompute the small-n table or refute a formula", budget=True)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--formula", help="refute mode: expression in n, e.g. '2*n-2'")
    p = add("render", cmd_render, "draw a permutation with a tiling or certificate", perm=True)
    p.add_argument("--tiling-file")
    p.add_argument("--certificate-file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        partial = exc.result
        if partial is not None and hasattr(partial, "min_count"):
            print(f"best upper bound so far: {partial.min_count}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
