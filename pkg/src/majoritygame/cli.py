"""Command-line interface: tables, values, statistics, verification, play.

All output is deterministic for fixed arguments: no timestamps, no
machine-dependent fields, and JSON with a stable key order.  Exit codes
are 0 for success, 1 for failed verification or an aborted game, and 2
for invalid usage or arguments.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import IO

from .ballgame import (
    BallAnswer,
    QuestionGraph,
    adversarial_answer,
    export_transcript,
    identify_majority,
    optimal_selector_comparison,
)
from .core import (
    AssignerChoice,
    GameParams,
    Move,
    Position,
    apply_move,
    is_final,
    minority_capacity,
    move_values,
    start_position,
)
from .solver import (
    GameSolver,
    MemoLimitExceeded,
    formula_comparisons,
    potential_guided_choice,
    verify_first_move_tie,
    verify_two_one_family,
)
from .statistics import (
    INFINITE,
    potential,
    signed_count,
    subposition_weight_counts,
    two_adic_valuation,
)
from .verify import (
    RANDOMIZED_SUITES,
    SUITES,
    run_all_suites,
    run_suite,
)


def _valuation_text(v) -> str:
    return "inf" if v == INFINITE else str(int(v))


def _valuation_json(v) -> dict:
    if v == INFINITE:
        return {"finite": False, "value": None}
    return {"finite": True, "value": int(v)}


def _emit_json(payload: dict, stream: IO[str]) -> None:
    print(json.dumps(payload, indent=2), file=stream)


def _csv_writer(stream: IO[str]):
    return csv.writer(stream, lineterminator="\n")


def _solver_for_excess(e: int) -> GameSolver:
    # Position values depend only on the excess, so any parameters with
    # that excess produce the same solver; (n, k) = (e, e) always works.
    return GameSolver(GameParams(e, e))


# ---------------------------------------------------------------------------
# table


def cmd_table(args: argparse.Namespace) -> int:
    rows = []
    failures = []
    for n in range(1, args.max_n + 1):
        for k in range(n // 2 + 1, n + 1):
            params = GameParams(n, k)
            solver = GameSolver(params)
            comparisons = solver.comparisons_needed()
            expected = formula_comparisons(params)
            match = comparisons == expected
            rows.append({
                "n": n, "k": k, "d": n - k,
                "comparisons": comparisons, "formula": expected, "match": match,
            })
            if not match:
                failures.append(f"n={n} k={k}: solved {comparisons} != formula {expected}")
    out = sys.stdout
    if args.format == "json":
        _emit_json({
            "command": "table",
            "params": {"max_n": args.max_n},
            "results": rows,
            "failures": failures,
        }, out)
    elif args.format == "csv":
        writer = _csv_writer(out)
        writer.writerow(["n", "k", "d", "comparisons", "formula", "match"])
        for row in rows:
            writer.writerow([row["n"], row["k"], row["d"], row["comparisons"],
                             row["formula"], "yes" if row["match"] else "no"])
    else:
        print(f"{'n':>3} {'k':>3} {'d':>3} {'comparisons':>12} {'formula':>8}  match")
        for row in rows:
            print(f"{row['n']:>3} {row['k']:>3} {row['d']:>3} "
                  f"{row['comparisons']:>12} {row['formula']:>8}  "
                  f"{'yes' if row['match'] else 'NO'}")
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# value


def _position_and_excess(args: argparse.Namespace) -> tuple[Position, int, GameParams | None]:
    """Resolve --position/--e against --n/--k; the latter imply the start."""
    if args.position is not None:
        M = Position.parse(args.position)
        if args.e is not None:
            e = args.e
            params = None
            if args.n is not None or args.k is not None:
                raise ValueError("give either --position with --e, or --n with --k")
        elif args.n is not None and args.k is not None:
            params = GameParams(args.n, args.k)
            e = params.e
        else:
            raise ValueError("--position needs --e (or --n and --k for the excess)")
        return M, e, params
    if args.n is None or args.k is None:
        raise ValueError("need --n and --k, or --position with --e")
    params = GameParams(args.n, args.k)
    return start_position(params), params.e, params


def cmd_value(args: argparse.Namespace) -> int:
    M, e, params = _position_and_excess(args)
    if e < 1:
        raise ValueError(f"the excess must be at least 1, got {e}")
    solver = GameSolver(params) if params is not None else _solver_for_excess(e)
    final = is_final(M, e)
    val = solver.value(M)
    comparisons = len(M) - val
    pot = potential(M, e)
    result = {
        "position": str(M),
        "e": e,
        "final": final,
        "value": val,
        "comparisons": comparisons,
        "potential": _valuation_json(pot),
    }
    if params is not None:
        result["n"] = params.n
        result["k"] = params.k
        result["formula"] = formula_comparisons(params)
    out = sys.stdout
    if args.format == "json":
        _emit_json({
            "command": "value",
            "params": {"position": str(M), "e": e},
            "results": result,
            "failures": [],
        }, out)
    elif args.format == "csv":
        writer = _csv_writer(out)
        writer.writerow(["field", "value"])
        for key, value in result.items():
            if key == "potential":
                writer.writerow([key, _valuation_text(pot)])
            else:
                writer.writerow([key, value])
    else:
        print(f"position: {M}")
        print(f"e: {e}")
        print(f"final: {'yes' if final else 'no'}")
        print(f"value: {val}")
        print(f"comparisons: {comparisons}")
        print(f"potential: {_valuation_text(pot)}")
        if params is not None:
            print(f"formula: {result['formula']}")
    return 0


# ---------------------------------------------------------------------------
# stats


def cmd_stats(args: argparse.Namespace) -> int:
    if args.position is None or args.e is None:
        raise ValueError("stats needs --position and --e")
    M = Position.parse(args.position)
    e = args.e
    if e < 0 or (M.total - e) % 2 != 0:
        raise ValueError(f"excess {e} is invalid for total weight {M.total}")
    max_order = args.b if args.b is not None else max(e, 1)
    if max_order < 1:
        raise ValueError(f"the order must be at least 1, got {max_order}")
    counts = subposition_weight_counts(M)
    signed = {order: signed_count(M, e, order) for order in range(1, max_order + 1)}
    capacity = (M.total - e) // 2
    pot = potential(M, e) if e >= 1 else None
    out = sys.stdout
    if args.format == "json":
        results = {
            "position": str(M),
            "e": e,
            "total": M.total,
            "capacity": capacity,
            "weight_counts": list(counts),
            "signed_counts": {str(order): value for order, value in signed.items()},
            "valuation": _valuation_json(two_adic_valuation(signed[max_order])),
        }
        if pot is not None:
            results["potential"] = _valuation_json(pot)
        _emit_json({
            "command": "stats",
            "params": {"position": str(M), "e": e, "max_order": max_order},
            "results": results,
            "failures": [],
        }, out)
    elif args.format == "csv":
        writer = _csv_writer(out)
        writer.writerow(["field", "value"])
        writer.writerow(["position", str(M)])
        writer.writerow(["e", e])
        writer.writerow(["total", M.total])
        writer.writerow(["capacity", capacity])
        writer.writerow(["weight_counts", " ".join(map(str, counts))])
        for order, value in signed.items():
            writer.writerow([f"signed_count_{order}", value])
        if pot is not None:
            writer.writerow(["potential", _valuation_text(pot)])
    else:
        print(f"position: {M}")
        print(f"e: {e}")
        print(f"total: {M.total}")
        print(f"capacity: {capacity}")
        print(f"weight counts: {' '.join(map(str, counts))}")
        for order, value in signed.items():
            print(f"signed count (order {order}): {value}")
        if pot is not None:
            print(f"potential: {_valuation_text(pot)}")
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace) -> int:
    if args.m is not None:
        if args.suite == "two-one-family":
            reports = [verify_two_one_family(args.m)]
        elif args.suite == "assigner-tie":
            reports = [verify_first_move_tie(args.m)]
        else:
            raise ValueError("--m applies to the two-one-family and assigner-tie suites")
    elif args.suite is not None:
        reports = [run_suite(args.suite, seed=args.seed, trials=args.trials)]
    else:
        if args.trials is not None:
            raise ValueError("--trials needs --suite; full runs use each suite's default")
        if args.format == "text":
            # stream suite lines as they complete
            reports = []
            failed = 0
            for name in SUITES:
                if name in RANDOMIZED_SUITES and args.seed is not None:
                    report = SUITES[name](seed=args.seed)
                else:
                    report = SUITES[name]()
                reports.append(report)
                print(report.summary(), flush=True)
                failed += 0 if report.passed else 1
            print(f"{len(reports) - failed}/{len(reports)} suites passed")
            return 0 if failed == 0 else 1
        reports = run_all_suites(seed=args.seed)
    out = sys.stdout
    all_passed = all(report.passed for report in reports)
    if args.format == "json":
        _emit_json({
            "command": "verify",
            "params": {
                "suite": args.suite,
                "seed": args.seed,
                "trials": args.trials,
                "m": args.m,
            },
            "results": [
                {
                    "suite": report.suite,
                    "cases": report.cases,
                    "failures": report.failure_count,
                    "passed": report.passed,
                    "details": report.details,
                }
                for report in reports
            ],
            "failures": [w for report in reports for w in report.failures],
        }, out)
    elif args.format == "csv":
        writer = _csv_writer(out)
        writer.writerow(["suite", "cases", "failures", "status"])
        for report in reports:
            writer.writerow([report.suite, report.cases, report.failure_count,
                             "pass" if report.passed else "fail"])
    else:
        for report in reports:
            print(report.summary())
        passed = sum(1 for report in reports if report.passed)
        print(f"{passed}/{len(reports)} suites passed")
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# play


def _read_line(prompt: str, in_stream: IO[str], out_stream: IO[str]) -> str | None:
    print(prompt, end="", file=out_stream, flush=True)
    line = in_stream.readline()
    if line == "":
        print(file=out_stream)
        return None
    return line.strip()


def _describe_components(g: QuestionGraph) -> str:
    parts = []
    for comp in g.components():
        inner = ",".join(map(str, comp.larger))
        if comp.smaller:
            inner += "|" + ",".join(map(str, comp.smaller))
        parts.append("{" + inner + "}")
    return " ".join(parts)


def _play_balls(
    params: GameParams,
    role: str,
    adversary: str,
    in_stream: IO[str],
    out_stream: IO[str],
) -> tuple[int, QuestionGraph, int]:
    g = QuestionGraph(params.n)
    solver = GameSolver(params)
    comparisons = 0
    print(f"n={params.n} balls, majority threshold k={params.k}; "
          f"optimal play needs {formula_comparisons(params)} comparisons",
          file=out_stream)
    while True:
        ball = identify_majority(g, params)
        if ball is not None:
            print(f"majority ball: {ball} after {comparisons} comparisons",
                  file=out_stream)
            return 0, g, comparisons
        print(f"components: {_describe_components(g)}   weights: {g.weights()}",
              file=out_stream)
        if role == "selector":
            line = _read_line("compare i j> ", in_stream, out_stream)
            if line is None:
                print("aborted", file=out_stream)
                return 1, g, comparisons
            fields = line.split()
            if len(fields) != 2:
                print("enter two ball numbers, e.g. '1 2'", file=out_stream)
                continue
            try:
                i, j = int(fields[0]), int(fields[1])
                forced = g.forced_answer(i, j)
                if forced is not None:
                    answer = forced
                    note = " (already forced)"
                else:
                    answer = adversarial_answer(g, i, j, params, mode=adversary,
                                                solver=solver)
                    note = ""
            except ValueError as exc:
                print(f"bad comparison: {exc}", file=out_stream)
                continue
            g.add_comparison(i, j, answer)
            comparisons += 1
            print(f"balls {i} and {j}: {answer.value}{note}", file=out_stream)
        else:
            i, j = optimal_selector_comparison(g, params, solver)
            line = _read_line(f"are balls {i} and {j} the same colour? [same/different] ",
                              in_stream, out_stream)
            if line is None:
                print("aborted", file=out_stream)
                return 1, g, comparisons
            word = line.lower()
            if word in ("same", "s"):
                answer = BallAnswer.SAME
            elif word in ("different", "d"):
                answer = BallAnswer.DIFFERENT
            else:
                print("answer 'same' or 'different'", file=out_stream)
                continue
            g.add_comparison(i, j, answer)
            comparisons += 1
            print(f"recorded: balls {i} and {j} are {answer.value}", file=out_stream)


def _find_pair_move(M: Position, w: int, wp: int) -> Move:
    if w < wp:
        w, wp = wp, w
    try:
        first = M.elements.index(w)
        second = M.elements.index(wp, first + 1)
    except ValueError:
        raise ValueError(f"{M} holds no pair ({w},{wp})") from None
    return Move(first, second)


def _play_weights(
    params: GameParams,
    role: str,
    adversary: str,
    in_stream: IO[str],
    out_stream: IO[str],
) -> tuple[int, int]:
    M = start_position(params)
    e = params.e
    solver = GameSolver(params)
    comparisons = 0
    print(f"excess e={e}; optimal play needs {formula_comparisons(params)} comparisons",
          file=out_stream)
    while not is_final(M, e):
        print(f"position: {M}", file=out_stream)
        if role == "selector":
            line = _read_line("select w w'> ", in_stream, out_stream)
            if line is None:
                print("aborted", file=out_stream)
                return 1, comparisons
            fields = line.split()
            if len(fields) != 2:
                print("enter two weights, e.g. '1 1'", file=out_stream)
                continue
            try:
                move = _find_pair_move(M, int(fields[0]), int(fields[1]))
            except ValueError as exc:
                print(f"bad selection: {exc}", file=out_stream)
                continue
            if adversary == "optimal":
                choices = solver.optimal_assigner_choices(M, move)
                choice = (AssignerChoice.MINUS if AssignerChoice.MINUS in choices
                          else AssignerChoice.PLUS)
            else:
                choice = potential_guided_choice(M, e, move)
            w, wp = move_values(M, move)
            print(f"assigner replies {choice.value} on ({w},{wp})", file=out_stream)
        else:
            pair = solver.optimal_selector_moves(M)[0]
            move = _find_pair_move(M, pair[0], pair[1])
            line = _read_line(f"selected pair {pair}; reply [+/-] ", in_stream, out_stream)
            if line is None:
                print("aborted", file=out_stream)
                return 1, comparisons
            if line == "+":
                choice = AssignerChoice.PLUS
            elif line == "-":
                choice = AssignerChoice.MINUS
            else:
                print("reply '+' or '-'", file=out_stream)
                continue
        M = apply_move(M, move, choice)
        comparisons += 1
    print(f"final position: {M} ({len(M)} components) after {comparisons} comparisons",
          file=out_stream)
    return 0, comparisons


def cmd_play(args: argparse.Namespace) -> int:
    if args.n is None or args.k is None:
        raise ValueError("play needs --n and --k")
    params = GameParams(args.n, args.k)
    if args.level == "weights":
        if args.out is not None:
            raise ValueError("--out records ball-level transcripts; use --level balls")
        code, _ = _play_weights(params, args.role, args.adversary, sys.stdin, sys.stdout)
        return code
    code, g, _ = _play_balls(params, args.role, args.adversary, sys.stdin, sys.stdout)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(export_transcript(g, params))
        print(f"transcript written to {args.out}")
    return code


# ---------------------------------------------------------------------------
# trace


def cmd_trace(args: argparse.Namespace) -> int:
    if args.n is None or args.k is None:
        raise ValueError("trace needs --n and --k")
    params = GameParams(args.n, args.k)
    M = Position.parse(args.position) if args.position is not None else None
    solver = GameSolver(params)
    result = solver.solve(M)
    origin = M if M is not None else start_position(params)
    e = params.e
    comparisons = len(origin) - result.value
    from_start = M is None
    if args.format == "json":
        payload_steps = []
        for step in result.principal_variation:
            payload_steps.append({
                "position": str(step.position),
                "potential": _valuation_json(potential(step.position, e)),
                "pair": list(step.values),
                "choice": step.choice.value,
            })
        results = {
            "origin": str(origin),
            "e": e,
            "value": result.value,
            "comparisons": comparisons,
            "steps": payload_steps,
            "final": {
                "position": str(result.final_position),
                "potential": _valuation_json(potential(result.final_position, e)),
                "size": result.value,
            },
        }
        if from_start:
            results["formula"] = formula_comparisons(params)
        _emit_json({
            "command": "trace",
            "params": {"n": params.n, "k": params.k, "origin": str(origin)},
            "results": results,
            "failures": [],
        }, sys.stdout)
        return 0
    print(f"principal variation from {origin} at excess {e}:")
    for idx, step in enumerate(result.principal_variation):
        pot = potential(step.position, e)
        w, wp = step.values
        print(f"step {idx}: {step.position}  potential={_valuation_text(pot)}  "
              f"select ({w},{wp}) -> {step.choice.value}")
    final_pot = potential(result.final_position, e)
    print(f"final: {result.final_position}  potential={_valuation_text(final_pot)}  "
          f"size={result.value}")
    line = f"comparisons: {comparisons}"
    if from_start:
        line += f" (formula {formula_comparisons(params)})"
    print(line)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majority-game",
        description="Exact analysis of the k-majority comparison game.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads", type=int, default=1, metavar="T",
        help="accepted for interface compatibility; execution is single-threaded "
             "and output does not depend on this value")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser(
        "table", parents=[common],
        help="comparison counts for all thresholds up to a ball count")
    p_table.add_argument("--max-n", type=int, default=12)
    p_table.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_table.set_defaults(func=cmd_table)

    p_value = sub.add_parser(
        "value", parents=[common],
        help="exact game value of a position or a game's start")
    p_value.add_argument("--n", type=int)
    p_value.add_argument("--k", type=int)
    p_value.add_argument("--position", type=str)
    p_value.add_argument("--e", type=int)
    p_value.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_value.set_defaults(func=cmd_value)

    p_stats = sub.add_parser(
        "stats", parents=[common],
        help="signed subposition counts and potential of a position")
    p_stats.add_argument("--position", type=str)
    p_stats.add_argument("--e", type=int)
    p_stats.add_argument("--b", type=int, metavar="ORDER",
                         help="highest signed-count order to report (default: e)")
    p_stats.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_stats.set_defaults(func=cmd_stats)

    p_verify = sub.add_parser(
        "verify", parents=[common],
        help="run the verification suites (all, or one by name)")
    p_verify.add_argument("--suite", choices=sorted(SUITES))
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--trials", type=int)
    p_verify.add_argument("--m", type=int,
                          help="family parameter for two-one-family / assigner-tie")
    p_verify.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_verify.set_defaults(func=cmd_verify)

    p_play = sub.add_parser(
        "play", parents=[common],
        help="play one side interactively against the engine")
    p_play.add_argument("--n", type=int)
    p_play.add_argument("--k", type=int)
    p_play.add_argument("--role", choices=("selector", "assigner"), default="selector")
    p_play.add_argument("--adversary", choices=("optimal", "potential"),
                        default="optimal",
                        help="answering strategy used against a selector")
    p_play.add_argument("--level", choices=("balls", "weights"), default="balls")
    p_play.add_argument("--out", type=str,
                        help="write the ball-level transcript to this file")
    p_play.set_defaults(func=cmd_play)

    p_trace = sub.add_parser(
        "trace", parents=[common],
        help="principal variation with running potentials")
    p_trace.add_argument("--n", type=int)
    p_trace.add_argument("--k", type=int)
    p_trace.add_argument("--position", type=str,
                         help="trace from this position instead of the start")
    p_trace.add_argument("--format", choices=("text", "json"), default="text")
    p_trace.set_defaults(func=cmd_trace)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, MemoLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
