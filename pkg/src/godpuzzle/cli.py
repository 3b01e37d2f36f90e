"""Command-line entry point.

Exit codes: 0 success, 1 verification/solvability failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from .model import (
    GodType,
    PuzzleSpec,
    SpecError,
    assignment_to_string,
    enumerate_assignments,
)
from .formula import ParseError
from .simulator import SeededCoins, WordSemantics, run_episode, template_theorem_check
from .strategy import (
    SolvabilityError,
    StrategyError,
    builtin,
    builtin_names,
    constructive_solve,
    parse_strategy,
    serialize_strategy,
    verify,
)
from .synthesis import min_expected, min_worst_case, solvable_by_search

DEFAULT_PORT_ENV = "GODPUZZLE_PORT"

USAGE_EXIT = 2
FAILURE_EXIT = 1


def _spec_or_usage(n: int, m: int, k: int) -> PuzzleSpec:
    try:
        return PuzzleSpec(n, m, k)
    except SpecError as e:
        print(f"usage error: {e}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _load_strategy(path: str):
    try:
        text = open(path).read()
    except OSError as e:
        print(f"usage error: {e}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)
    try:
        return parse_strategy(text)
    except (StrategyError, ParseError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        raise SystemExit(FAILURE_EXIT)


def cmd_solvable(args) -> int:
    spec = _spec_or_usage(args.n, args.m, args.k)
    criterion = spec.m < spec.non_random
    verdict = criterion or len(enumerate_assignments(spec)) == 1
    print(
        f"{'yes' if verdict else 'no'}: {spec.m} random vs "
        f"{spec.non_random} non-random gods "
        f"({'m < n - m' if criterion else 'm >= n - m'})"
    )
    if spec.n <= 6:
        searched = solvable_by_search(spec)
        print(f"search cross-check: {'solvable' if searched else 'unsolvable'}")
        if searched != verdict:
            print("cross-check disagrees with the count criterion",
                  file=sys.stderr)
            return FAILURE_EXIT
    return 0 if verdict else FAILURE_EXIT


def cmd_solve(args) -> int:
    spec = _spec_or_usage(args.n, args.m, args.k)
    header = []
    try:
        if args.optimal is not None:
            search = min_worst_case if args.optimal == "worst" else min_expected
            result = search(spec)
            if not result.solvable:
                print(
                    f"unsolvable: {spec.m} random gods is not strictly less "
                    f"than {spec.non_random} non-random gods",
                    file=sys.stderr,
                )
                return FAILURE_EXIT
            value = result.value
            shown = (str(value) if isinstance(value, int)
                     else f"{value} = {float(value):.4g}")
            header.append(f"optimal {args.optimal}: {shown}"
                          + ("" if result.optimal else " (upper bound)"))
            tree = result.witness
        else:
            tree = constructive_solve(spec)
            header.append("constructive (not depth-optimal)")
    except SolvabilityError as e:
        print(f"unsolvable: {e}", file=sys.stderr)
        return FAILURE_EXIT
    report = verify(tree, spec, "escaping")
    if not report.correct:
        print("internal error: emitted strategy failed verification",
              file=sys.stderr)
        return FAILURE_EXIT
    sys.stdout.write(serialize_strategy(tree, spec, header))
    return 0


def cmd_verify(args) -> int:
    tree, spec = _load_strategy(args.file)
    try:
        report = verify(tree, spec, args.mode)
    except StrategyError as e:
        print(f"semantic error: {e}", file=sys.stderr)
        return FAILURE_EXIT
    print(f"correct: {'yes' if report.correct else 'no'}")
    print(f"worst case: {report.worst_case}")
    print(f"expected: {report.expected} = {report.expected_decimal()}")
    print("per-assignment profile:")
    for a, profile in report.per_assignment:
        cells = ", ".join(f"{p}:{c}" for p, c in profile)
        print(f"  {assignment_to_string(a)}  {{{cells}}}")
    return 0 if report.correct else FAILURE_EXIT


def cmd_simulate(args) -> int:
    tree, spec = _load_strategy(args.file)
    mode = args.mode
    rng = random.Random(args.seed)
    enum = enumerate_assignments(spec)
    total = 0
    successes = 0
    sum_sq = 0
    for _ in range(args.episodes):
        assignment = rng.choice(enum)
        ws = WordSemantics(bool(rng.getrandbits(1)))
        coins = SeededCoins(rng.getrandbits(62))
        result = run_episode(spec, assignment, ws, tree, coins,
                             reliable=(mode == "reliable"))
        total += result.questions
        sum_sq += result.questions ** 2
        successes += result.declared == assignment
    n = args.episodes
    print(f"episodes: {n}")
    if n:
        mean = total / n
        var = sum_sq / n - mean ** 2
        stderr = (var / n) ** 0.5
        print(f"mean questions: {mean:.4f} (stderr {stderr:.4f})")
        print(f"success rate: {successes / n:.2%}")
        return 0 if successes == n else FAILURE_EXIT
    print("success rate: vacuous (no episodes)")
    return 0


def cmd_template_check(args) -> int:
    cases = template_theorem_check()
    type_glyph = {GodType.TRUTHFUL: "T", GodType.LIAR: "F"}
    all_pass = True
    for case in cases:
        all_pass &= case.passed
        print(
            f"q={int(case.q)}, god={type_glyph[case.god_type]}, "
            f"chi={int(case.chi_means_yes)}: decoded={int(case.decoded)} "
            f"{'pass' if case.passed else 'FAIL'}"
        )
    print(f"{sum(c.passed for c in cases)}/{len(cases)} cases pass")
    return 0 if all_pass else FAILURE_EXIT


def cmd_export(args) -> int:
    try:
        tree = builtin(args.name)
    except StrategyError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE_EXIT
    from .strategy import BUILTIN_MODES, BUILTIN_SPECS

    spec = BUILTIN_SPECS[args.name]
    sys.stdout.write(serialize_strategy(
        tree, spec, [f"built-in {args.name} ({BUILTIN_MODES[args.name]} mode)"]
    ))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="godpuzzle",
        description="Solve, verify, and play the n-gods questioning puzzle.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def spec_args(sp):
        sp.add_argument("n", type=int, help="number of gods")
        sp.add_argument("m", type=int, help="number of random gods")
        sp.add_argument("k", type=int, help="number of truthful gods")

    sp = sub.add_parser("solvable", help="decide solvability of a spec")
    spec_args(sp)
    sp.set_defaults(func=cmd_solvable)

    sp = sub.add_parser("solve", help="emit a strategy file for a spec")
    spec_args(sp)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--optimal", choices=("worst", "expected"),
                       help="search for an optimal strategy")
    group.add_argument("--constructive", action="store_true",
                       help="general constructive solver (default)")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="verify a strategy file exhaustively")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=("escaping", "reliable"),
                    default="escaping")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("simulate", help="Monte-Carlo check of a strategy file")
    sp.add_argument("file")
    sp.add_argument("--episodes", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=("escaping", "reliable"),
                    default="escaping")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("template-check",
                        help="check the question template on all 8 cases")
    sp.set_defaults(func=cmd_template_check)

    sp = sub.add_parser("export", help="print a built-in strategy file")
    sp.add_argument("name", choices=builtin_names())
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("serve", help="run the local HTTP session service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int,
                    default=int(os.environ.get(DEFAULT_PORT_ENV, "8753")))
    sp.set_defaults(func=cmd_serve)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
