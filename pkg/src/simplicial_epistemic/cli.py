"""Command-line entry point.

Exit codes: 0 success, 1 unsolvable task / formula with unexpected truth value
/ decision map with violations, 2 usage error, 3 unreadable or invalid input file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .algorithms import ALGORITHMS, QUALIFIERS, courteous_map, knowledge_threshold_map, tas_two_round_map
from .communication import MODEL_KINDS, iterate_rounds, make_model, partial_round
from .errors import SimplicialError
from .logic import cd_not_all, parse_formula, truth_table
from .muddy import CHILDREN, MUDDY_VALUATION, announcement_sequence
from .tasks import TASK_KINDS, Solved, check_obstruction, make_task, search_decision_map, validate_decision_map

SCENARIOS = {
    "ub1": ("ub", 1, None),
    "is1": ("is", 1, None),
    "is2": ("is", 2, None),
    "tas1": ("tas", 1, None),
    "tas1+partial": ("tas", 1, "tas-loser"),
}

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load_complex(path: str):
    try:
        return io.load_complex(path)
    except (OSError, ValueError, KeyError, TypeError, SimplicialError) as exc:
        raise InputError(f"cannot load complex from {path}: {exc}") from exc


def _formula(args, agents):
    if args.formula_str is not None:
        return parse_formula(args.formula_str, agents)
    try:
        text = Path(args.formula).read_text()
    except OSError as exc:
        raise InputError(f"cannot read formula file {args.formula}: {exc}") from exc
    try:
        return parse_formula(text, agents)
    except SimplicialError as exc:
        raise InputError(f"bad formula in {args.formula}: {exc}") from exc


def cmd_build(args) -> int:
    agents = args.agents.split(",")
    model, rounds, qualify = args.model, args.rounds, args.partial_qualify
    if args.scenario:
        model, rounds, qualify = SCENARIOS[args.scenario]
    if model is None:
        raise SimplicialError("--model or --scenario is required")
    task = make_task(args.task, agents)
    p = iterate_rounds(task.input, make_model(model, agents), rounds)
    if qualify:
        p = partial_round(p, QUALIFIERS[qualify])
    io.save_complex(p, args.out)
    print(f"{model} rounds={rounds}{' +partial' if qualify else ''}: {len(p.facets)} facets, {len(p.vertices)} vertices")
    return EXIT_OK


def cmd_eval(args) -> int:
    c = _load_complex(args.complex)
    phi = _formula(args, c.agents)
    valuation = MUDDY_VALUATION if args.valuation == "muddy" else None
    table = truth_table(c, phi, valuation)
    worlds = [c.facet_index(args.world)] if args.world is not None else range(len(table))
    for i in worlds:
        print(f"{i}\t{'true' if table[i] else 'false'}")
    if args.expect is not None:
        want = args.expect == "true"
        if any(table[i] != want for i in worlds):
            return EXIT_FALSE
    return EXIT_OK


def cmd_solve(args) -> int:
    p = _load_complex(args.protocol)
    task = make_task(args.task, p.agents)
    result = search_decision_map(task, p)
    if isinstance(result, Solved):
        print(f"solvable (nodes explored: {result.nodes_explored})")
        payload = dict(result.decisions)
    else:
        print(f"unsolvable (nodes explored: {result.nodes_explored})")
        payload = result.to_json()
    if args.witness:
        io.write_json(args.witness, payload)
    return EXIT_OK if isinstance(result, Solved) else EXIT_FALSE


def cmd_obstruct(args) -> int:
    p = _load_complex(args.protocol)
    task = make_task(args.task, p.agents)
    phi = _formula(args, p.agents)
    report = check_obstruction(task, p, phi, args.world)
    text = io.dumps(report.to_json())
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_decide(args) -> int:
    p = _load_complex(args.protocol)
    if args.algorithm == "courteous":
        d = courteous_map(p)
    elif args.algorithm == "knowledge-threshold":
        phi = _formula(args, p.agents) if (args.formula or args.formula_str) else cd_not_all(p.agents, 1)
        d = knowledge_threshold_map(p, phi)
    else:
        d = tas_two_round_map(p)
    if args.out:
        io.write_json(args.out, d)
    if args.task is None:
        return EXIT_OK
    verdict = validate_decision_map(make_task(args.task, p.agents), p, d)
    print(f"{'valid' if verdict.valid else 'invalid'}: {len(verdict.violations)} violations")
    for v in verdict.violations:
        print(f"  facet {v.facet}: decided {v.decided} ({v.reason})")
    return EXIT_OK if verdict.valid else EXIT_FALSE


def cmd_demo(args) -> int:
    n = args.children
    children = CHILDREN if n == 3 else tuple(f"child{i + 1}" for i in range(n))
    for stage in announcement_sequence(children):
        print(f"{stage.label}: {len(stage.model.facets)} worlds")
        for world in sorted(stage.knows):
            knowers = ",".join(stage.knows[world]) or "-"
            print(f"  {world} knows-own-mud: {knowers}")
    return EXIT_OK


def cmd_export(args) -> int:
    c = _load_complex(args.complex)
    text = io.to_dot(c) if args.format == "dot" else io.dumps(io.complex_to_json(c))
    Path(args.out).write_text(text)
    return EXIT_OK


def _add_formula_args(sp, required: bool = True) -> None:
    g = sp.add_mutually_exclusive_group(required=required)
    g.add_argument("--formula", help="file holding an s-expression formula")
    g.add_argument("--formula-str", help="s-expression formula")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplicial-epistemic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="build a protocol complex")
    sp.add_argument("--model", choices=MODEL_KINDS)
    sp.add_argument("--scenario", choices=sorted(SCENARIOS))
    sp.add_argument("--task", choices=TASK_KINDS, default="majority0")
    sp.add_argument("--agents", default="a,b,c")
    sp.add_argument("--rounds", type=int, default=1)
    sp.add_argument("--partial-qualify", choices=sorted(QUALIFIERS))
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("eval", help="evaluate a formula on a complex")
    sp.add_argument("--complex", required=True)
    _add_formula_args(sp)
    where = sp.add_mutually_exclusive_group()
    where.add_argument("--world", type=int)
    where.add_argument("--all", action="store_true")
    sp.add_argument("--expect", choices=("true", "false"))
    sp.add_argument("--valuation", choices=("state", "muddy"), default="state")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("solve", help="search for a decision map")
    sp.add_argument("--task", choices=TASK_KINDS, required=True)
    sp.add_argument("--protocol", required=True)
    sp.add_argument("--witness")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("obstruct", help="check a logical obstruction")
    sp.add_argument("--task", choices=TASK_KINDS, required=True)
    sp.add_argument("--protocol", required=True)
    _add_formula_args(sp)
    sp.add_argument("--world", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_obstruct)

    sp = sub.add_parser("decide", help="run a reference decision rule")
    sp.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    sp.add_argument("--protocol", required=True)
    sp.add_argument("--task", choices=TASK_KINDS)
    _add_formula_args(sp, required=False)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("demo", help="replay a worked example")
    sp.add_argument("name", choices=("muddy-children",))
    sp.add_argument("--children", type=int, default=3)
    sp.set_defaults(func=cmd_demo)

    sp = sub.add_parser("export", help="export a complex")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SimplicialError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
