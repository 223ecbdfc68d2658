"""Command-line entry point.

Subcommands:

* ``solve MODEL`` enumerates solutions under a symmetry-breaking config;
* ``transform PERM TAG VALUE`` prints the image of a value literal;
* ``orbits MODEL`` runs the orbit oracle and prints minimal representatives.

Exit status: 0 on success, 1 on parse or type errors, 2 when the budget is
exceeded. Output never contains timings, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .action import transform
from .engine import budget_from_env, enumerate_solutions
from .flat import BudgetExceeded, flatten
from .literals import LiteralError, format_value, parse_value
from .modellang import EvalError, Model, ModelSyntaxError, parse_model, typecheck
from .oracle import orbit_oracle
from .perm import GeneratorFlag, Mode, PermutationError, parse_cycles
from .symbreak import BreakConfig, dump_constraints
from .values import DomainError, MatrixV, MSetV, TupleV, UnnamedV

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


class InputError(Exception):
    pass


def _fail(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def load_model(path: str) -> Model:
    """Parse and typecheck a model file; raises InputError with diagnostics."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        model = parse_model(text)
    except ModelSyntaxError as exc:
        raise InputError(f"{path}:{exc.pos}: {exc.message}") from None
    diags = typecheck(model)
    if diags:
        raise InputError("\n".join(f"{path}:{d}" for d in diags))
    return model


def _assignment_literals(a) -> dict[str, str]:
    return {n: format_value(v) for n, v in zip(a.names, a.values)}


# ------------------------------------------------------------------ solve


def cmd_solve(args) -> int:
    model = load_model(args.model)
    cfg = BreakConfig(Mode(args.mode), GeneratorFlag(args.gens))
    budget = budget_from_env()
    space = flatten(model, budget)
    result = enumerate_solutions(model, cfg, semantic=args.semantic, threads=args.threads,
                                 budget=budget, space=space)
    report = orbit_oracle(model, budget=budget) if args.oracle else None
    if args.time:
        print(f"elapsed: {result.elapsed:.3f}s", file=sys.stderr)

    if args.json:
        _emit_json(args, cfg, space, result, report)
    else:
        _emit_text(args, cfg, space, result, report)
    return EXIT_OK


def _summary(args, cfg, result, report) -> dict:
    out = {
        "type": "summary",
        "model": args.model,
        "config": {"mode": cfg.mode.value, "gens": cfg.gens.value},
        "filter": "semantic" if args.semantic else "syntactic",
        "solutions": result.count,
        "constraints": result.n_constraints,
        "nodes": result.nodes,
    }
    if report is not None:
        out["orbits"] = report.count
        out["oracle_agrees"] = _agrees(cfg, result, report)
    return out


def _agrees(cfg, result, report) -> bool:
    """Complete configs must hit every orbit exactly once; others at least once."""
    if cfg.mode is Mode.ALTOGETHER and cfg.gens is GeneratorFlag.ALL_PERMUTATIONS:
        return [a.tupled for a in result.solutions] == [a.tupled for a in report.representatives]
    return result.count >= report.count


def _emit_json(args, cfg, space, result, report) -> None:
    if args.emit_constraints:
        rec = {"type": "constraints", "cells": space.describe(),
               "lex": [c.format(space) for c in result.lex_constraints]}
        print(json.dumps(rec, sort_keys=True))
    if not args.count:
        for k, a in enumerate(result.solutions, 1):
            print(json.dumps({"type": "solution", "index": k,
                              "assignment": _assignment_literals(a)}, sort_keys=True))
    print(json.dumps(_summary(args, cfg, result, report), sort_keys=True))


def _emit_text(args, cfg, space, result, report) -> None:
    if args.emit_constraints:
        sys.stdout.write(dump_constraints(space, result.lex_constraints))
    if not args.count:
        for k, a in enumerate(result.solutions, 1):
            print(f"# solution {k}")
            for name, lit in _assignment_literals(a).items():
                print(f"{name} = {lit}")
    s = _summary(args, cfg, result, report)
    print(f"config: {cfg}")
    print(f"solutions: {s['solutions']}")
    print(f"constraints: {s['constraints']}")
    if report is not None:
        print(f"orbits: {s['orbits']}")
        print(f"oracle: {'agree' if s['oracle_agrees'] else 'DISAGREE'}")


# -------------------------------------------------------------- transform


def _max_index(v, tag: str) -> int:
    if isinstance(v, UnnamedV):
        return v.index if v.tag == tag else 0
    if isinstance(v, (TupleV, MSetV)):
        return max((_max_index(x, tag) for x in v.items), default=0)
    if isinstance(v, MatrixV):
        idx = max((_max_index(a, tag) for lst in v.index_lists for a in lst), default=0)
        return max(idx, max((_max_index(x, tag) for x in v.entries), default=0))
    return 0


def cmd_transform(args) -> int:
    enums = None
    size = args.size
    if args.model:
        model = load_model(args.model)
        enums = model.enum_atoms()
        if size is None and args.tag in model.unnamed:
            size = model.unnamed[args.tag].size
    try:
        value = parse_value(args.value, enums)
    except LiteralError as exc:
        raise InputError(f"value: {exc}") from None
    largest = _max_index(value, args.tag)
    if size is None:
        # Smallest type holding both the value's atoms and the moved points.
        points = [int(x) for x in re.findall(r"\d+", args.perm)]
        size = max([largest, *points])
    if largest > size:
        raise InputError(f"value mentions {largest}_{args.tag} but {args.tag} has size {size}")
    try:
        perm = parse_cycles(args.perm, args.tag, size)
    except PermutationError as exc:
        raise InputError(f"permutation: {exc}") from None
    print(format_value(transform(perm, value)))
    return EXIT_OK


# ----------------------------------------------------------------- orbits


def cmd_orbits(args) -> int:
    model = load_model(args.model)
    report = orbit_oracle(model, budget=budget_from_env(), full_group=args.full_group)
    if args.json:
        for k, (a, size) in enumerate(zip(report.representatives, report.orbit_sizes), 1):
            print(json.dumps({"type": "orbit", "index": k, "size": size,
                              "representative": _assignment_literals(a)}, sort_keys=True))
        print(json.dumps({"type": "summary", "model": args.model, "orbits": report.count,
                          "solutions": sum(report.orbit_sizes)}, sort_keys=True))
        return EXIT_OK
    for k, (a, size) in enumerate(zip(report.representatives, report.orbit_sizes), 1):
        print(f"# orbit {k} (size {size})")
        for name, lit in _assignment_literals(a).items():
            print(f"{name} = {lit}")
    print(f"orbits: {report.count}")
    print(f"solutions: {sum(report.orbit_sizes)}")
    return EXIT_OK


# ------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indisym",
                                 description="Lex-leader symmetry breaking for unnamed types.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="enumerate solutions of a model")
    s.add_argument("model")
    s.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.ALTOGETHER.value)
    s.add_argument("--gens", choices=[g.value for g in GeneratorFlag],
                   default=GeneratorFlag.ALL_PERMUTATIONS.value)
    s.add_argument("--count", action="store_true", help="print the summary only")
    s.add_argument("--oracle", action="store_true", help="cross-check against the orbit oracle")
    s.add_argument("--emit-constraints", action="store_true",
                   help="dump flattened cells and compiled lex constraints")
    s.add_argument("--json", action="store_true", help="JSON Lines output")
    s.add_argument("--semantic", action="store_true",
                   help="filter with the value-level predicate instead of compiled constraints")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--time", action="store_true", help="report elapsed time on stderr")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("transform", help="apply a permutation to a value literal")
    t.add_argument("perm", help="cycle notation, e.g. '(1 2)'")
    t.add_argument("tag", help="unnamed type the permutation acts on")
    t.add_argument("value", help="value literal")
    t.add_argument("--model", help="model file supplying type sizes and enums")
    t.add_argument("--size", type=int, help="size of the unnamed type")
    t.set_defaults(func=cmd_transform)

    o = sub.add_parser("orbits", help="count orbits of the unbroken solution set")
    o.add_argument("model")
    o.add_argument("--full-group", action="store_true",
                   help="close under every group element rather than transpositions")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_orbits)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _fail(str(exc))
        return EXIT_INPUT
    except DomainError as exc:
        _fail(str(exc))
        return EXIT_INPUT
    except EvalError as exc:
        _fail(f"evaluation error: {exc}")
        return EXIT_INPUT
    except BudgetExceeded as exc:
        _fail(f"budget exceeded: {exc}")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
