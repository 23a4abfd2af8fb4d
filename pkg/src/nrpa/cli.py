"""Command line front end: one-off solves and anytime benchmarks."""
from __future__ import annotations

import argparse
import hashlib
import statistics
import sys
from pathlib import Path

from .bench import (
    Variant,
    aggregate,
    best_of,
    checkpoint_schedule,
    emit_csv,
    run_many,
    write_best_record,
)
from .problems.maximum import MaxProblem
from .problems.samegame import parse_board
from .problems.tsptw import parse_instance
from .search import SearchConfig, nrpa, snrpa

PROBLEMS = ("maximum", "tsptw", "samegame")


def _add_common(parser: argparse.ArgumentParser, level_default: int) -> None:
    parser.add_argument("--problem", choices=PROBLEMS, required=True)
    parser.add_argument("--instance", help="instance file for tsptw or samegame")
    parser.add_argument("--budget", type=int, default=100,
                        help="atom budget for the maximum problem")
    parser.add_argument("--level", type=int, default=level_default)
    parser.add_argument("--N", dest="iterations", type=int, default=100,
                        help="iterations per level")
    parser.add_argument("--P", dest="eval_playouts", type=int, default=4,
                        help="playouts per evaluation for snrpa")
    parser.add_argument("--alpha", type=float, default=1.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--time-limit", type=float, default=None)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--tabu", action="store_true",
                        help="samegame: withhold partial dominant-color groups")
    parser.add_argument("--allow-pairs", action="store_true",
                        help="samegame: tabu filter keeps dominant pairs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nrpa",
        description="Nested rollout policy adaptation solver and benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one search and print the best result")
    _add_common(solve, level_default=2)
    solve.add_argument("--algo", choices=("nrpa", "snrpa"), default="nrpa")
    solve.add_argument("--out", help="write the best result as JSON")

    bench = sub.add_parser("bench", help="compare variants over many seeded runs")
    _add_common(bench, level_default=4)
    bench.add_argument("--algo", choices=("nrpa", "snrpa", "both"), default="both")
    bench.add_argument("--runs", type=int, default=10)
    bench.add_argument("--out", required=True, help="CSV path for the score curves")
    return parser


def _load_problem(args):
    """Returns (problem, label, instance reference, instance sha256)."""
    if args.problem == "maximum":
        problem = MaxProblem(args.budget)
        ref = f"budget={args.budget}"
        digest = hashlib.sha256(f"maximum:{args.budget}".encode()).hexdigest()
        return problem, "maximum", ref, digest
    if not args.instance:
        raise ValueError(f"the {args.problem} problem needs an --instance file")
    text = Path(args.instance).read_text()
    digest = hashlib.sha256(text.encode()).hexdigest()
    if args.problem == "tsptw":
        problem = parse_instance(text)
    else:
        problem = parse_board(text, tabu=args.tabu, allow_pairs=args.allow_pairs)
    return problem, args.problem, str(args.instance), digest


def _run_solve(args) -> int:
    problem, label, ref, digest = _load_problem(args)
    eval_playouts = args.eval_playouts if args.algo == "snrpa" else 1
    config = SearchConfig(
        level=args.level,
        iterations=args.iterations,
        eval_playouts=eval_playouts,
        alpha=args.alpha,
        seed=args.seed,
        time_limit=args.time_limit,
        workers=args.workers,
    )
    algo = snrpa if args.algo == "snrpa" else nrpa
    trace = algo(problem, config)
    print(f"score {trace.result.score}")
    print(f"moves {' '.join(str(c) for c in trace.result.moves)}")
    print(
        f"playouts {trace.playouts} adapts {trace.adapts} "
        f"elapsed {trace.elapsed:.3f}s best at {trace.best_at:.3f}s"
    )
    if args.out:
        write_best_record(
            Path(args.out),
            problem_label=label,
            instance_ref=ref,
            instance_sha256=digest,
            variant=Variant(args.algo, eval_playouts),
            seed=args.seed,
            rollout=trace.result,
        )
        print(f"wrote {args.out}")
    return 0


def _run_bench(args) -> int:
    problem, label, ref, digest = _load_problem(args)
    if args.time_limit is None:
        raise ValueError("bench needs a --time-limit to build its checkpoints")
    if args.runs < 1:
        raise ValueError("--runs must be >= 1")
    if args.algo == "both":
        variants = [Variant("nrpa"), Variant("snrpa", args.eval_playouts)]
    elif args.algo == "snrpa":
        variants = [Variant("snrpa", args.eval_playouts)]
    else:
        variants = [Variant("nrpa")]
    checkpoints = checkpoint_schedule(args.time_limit)
    seeds = list(range(args.seed, args.seed + args.runs))
    columns = []
    champion = None  # (score, variant, seed, rollout)
    for variant in variants:
        traces = run_many(
            problem, variant, seeds,
            workers=args.workers,
            level=args.level,
            iterations=args.iterations,
            alpha=args.alpha,
            time_limit=args.time_limit,
        )
        means = aggregate(traces, checkpoints, floor=problem.score_floor())
        columns.append((variant.name, means))
        idx, best = best_of(traces)
        final = [t.result.score for t in traces]
        print(
            f"{variant.name}: mean final {statistics.mean(final):.3f} "
            f"best {best.result.score} (seed {seeds[idx]})"
        )
        if champion is None or best.result.score > champion[0]:
            champion = (best.result.score, variant, seeds[idx], best.result)
    out_csv = Path(args.out)
    emit_csv(out_csv, checkpoints, columns)
    print(f"wrote {out_csv}")
    best_path = out_csv.with_suffix(".best.json")
    _, variant, seed, rollout = champion
    write_best_record(
        best_path,
        problem_label=label,
        instance_ref=ref,
        instance_sha256=digest,
        variant=variant,
        seed=seed,
        rollout=rollout,
    )
    print(f"wrote {best_path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "solve":
            return _run_solve(args)
        return _run_bench(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
