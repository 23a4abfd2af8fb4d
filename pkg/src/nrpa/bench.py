"""Anytime benchmark harness: repeated runs, checkpoint curves, CSV output.

A run's trace records every improvement with its timestamp, so one run at
the full time limit yields the score the same seed would have reported at
any earlier checkpoint. Aggregating those curves over seeds gives the
mean-score-versus-time table the CSV stores.
"""
from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .problem import Problem
from .search import Rollout, RunTrace, SearchConfig, nrpa, snrpa

_FIRST_CHECKPOINT = 0.01


@dataclass(frozen=True)
class Variant:
    kind: str
    eval_playouts: int = 1

    def __post_init__(self):
        if self.kind not in ("nrpa", "snrpa"):
            raise ValueError(f"unknown algorithm {self.kind!r}")
        if self.eval_playouts < 1:
            raise ValueError("eval_playouts must be >= 1")

    @property
    def name(self) -> str:
        if self.kind == "nrpa":
            return "nrpa"
        return f"snrpa_p{self.eval_playouts}"


def checkpoint_schedule(time_limit: float) -> list[float]:
    """Doubling checkpoints from 0.01 s up to the time limit."""
    if time_limit < _FIRST_CHECKPOINT:
        raise ValueError(f"time limit below the first checkpoint {_FIRST_CHECKPOINT}")
    points = []
    t = _FIRST_CHECKPOINT
    while t <= time_limit:
        points.append(t)
        t *= 2.0
    return points


def run_once(problem: Problem, variant: Variant, *, seed: int, level: int,
             iterations: int, alpha: float = 1.0, time_limit: float | None = None,
             workers: int = 1) -> RunTrace:
    config = SearchConfig(
        level=level,
        iterations=iterations,
        eval_playouts=variant.eval_playouts,
        alpha=alpha,
        seed=seed,
        time_limit=time_limit,
    )
    if variant.kind == "nrpa":
        return nrpa(problem, config)
    return snrpa(problem, config)


def _pool_task(task) -> RunTrace:
    problem, variant, seed, params = task
    return run_once(problem, variant, seed=seed, **params)


def run_many(problem: Problem, variant: Variant, seeds, *, workers: int = 1,
             **params) -> list[RunTrace]:
    """One run per seed, in seed order; workers > 1 uses separate processes."""
    seeds = list(seeds)
    if workers <= 1:
        return [run_once(problem, variant, seed=s, **params) for s in seeds]
    tasks = [(problem, variant, s, params) for s in seeds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_pool_task, tasks))


def aggregate(traces, checkpoints, floor: float) -> list[float]:
    """Mean best-so-far score per checkpoint; floor before the first event."""
    means = []
    for t in checkpoints:
        total = 0.0
        for trace in traces:
            value = floor
            for when, score in trace.events:
                if when <= t:
                    value = score
                else:
                    break
            total += value
        means.append(total / len(traces))
    return means


def _column_order(name: str):
    if name == "nrpa":
        return (0, 0, name)
    if name.startswith("snrpa_p"):
        suffix = name[len("snrpa_p"):]
        if suffix.isdigit():
            return (1, int(suffix), name)
    return (2, 0, name)


def emit_csv(path, checkpoints, columns) -> None:
    """Write "time,<variant...>" rows; columns sorted nrpa first, then by P."""
    ordered = sorted(columns, key=lambda col: _column_order(col[0]))
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["time"] + [name for name, _ in ordered])
        for i, t in enumerate(checkpoints):
            writer.writerow([t] + [values[i] for _, values in ordered])


def read_csv(path):
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        rows = [row for row in reader if row]
    points = [float(row[0]) for row in rows]
    columns = [
        (name, [float(row[i + 1]) for row in rows])
        for i, name in enumerate(header[1:])
    ]
    return points, columns


def best_of(traces) -> tuple[int, RunTrace]:
    """Index and trace of the best final score; ties keep the earliest run."""
    best_idx = 0
    for i, trace in enumerate(traces):
        if trace.result.score > traces[best_idx].result.score:
            best_idx = i
    return best_idx, traces[best_idx]


def write_best_record(path, *, problem_label: str, instance_ref: str,
                      instance_sha256: str, variant: Variant, seed: int,
                      rollout: Rollout) -> None:
    record = {
        "problem": problem_label,
        "instance": instance_ref,
        "instance_sha256": instance_sha256,
        "algorithm": variant.kind,
        "eval_playouts": variant.eval_playouts,
        "seed": seed,
        "score": rollout.score,
        "moves": list(rollout.moves),
    }
    Path(path).write_text(json.dumps(record, indent=2) + "\n")


def load_best_record(path) -> dict:
    return json.loads(Path(path).read_text())
