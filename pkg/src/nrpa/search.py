"""Nested rollout policy adaptation, plain and with a stabilized eval level.

The plain search recurses `level` times; level 0 is a single softmax-guided
playout and every level above runs `iterations` loops of "recurse, keep the
best sequence, pull the policy toward it". The stabilized variant replaces
level 1 with a frozen-policy evaluation that plays `eval_playouts` playouts
and returns the best one without adapting, which trades learning depth for
lower variance in what gets reported upward. With eval_playouts=1 the two
variants run the very same code path, draws and counters included.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from .policy import Policy, softmax_probabilities
from .problem import Problem, ReplayMismatchError, StuckStateError, checked_moves
from .rng import RngStream


@dataclass(frozen=True)
class Rollout:
    """One finished playout: terminal score and the move codes that led there."""

    score: float
    moves: tuple[int, ...]


@dataclass(frozen=True)
class SearchConfig:
    level: int
    iterations: int = 100
    eval_playouts: int = 1
    alpha: float = 1.0
    seed: int = 0
    time_limit: float | None = None
    workers: int = 1

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be >= 0")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.eval_playouts < 1:
            raise ValueError("eval_playouts must be >= 1")
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.time_limit is not None and self.time_limit < 0.0:
            raise ValueError("time_limit must be >= 0 or None")


@dataclass
class RunTrace:
    """What a search run produced and when.

    events holds (elapsed seconds, score) pairs, one per improvement of the
    best score seen so far, so the series is strictly increasing in score.
    """

    events: list[tuple[float, float]] = field(default_factory=list)
    result: Rollout | None = None
    playouts: int = 0
    adapts: int = 0
    elapsed: float = 0.0
    best_at: float = 0.0


def playout(problem: Problem, policy: Policy, rng: RngStream) -> Rollout:
    """Sample one terminal sequence, move by move, softmax-weighted."""
    state = problem.root()
    taken: list[int] = []
    while not state.is_terminal():
        moves = checked_moves(state)
        if not moves:
            raise StuckStateError(
                f"stuck state after {len(taken)} moves: non-terminal, no legal moves"
            )
        probs = softmax_probabilities([policy[m.code] for m in moves])
        draw = rng.random()
        pick = len(moves) - 1
        acc = 0.0
        for i, p in enumerate(probs):
            acc += p
            if draw < acc:
                pick = i
                break
        move = moves[pick]
        taken.append(move.code)
        state = state.play(move)
    return Rollout(state.score(), tuple(taken))


def adapt(policy: Policy, codes, problem: Problem, alpha: float = 1.0) -> Policy:
    """Return a copy of `policy` pulled toward the given move sequence.

    At each state along the sequence the played code gains `alpha` and every
    legal code there loses `alpha` times its selection probability, with the
    probabilities always taken from the incoming table, never the half-built
    one. The per-state changes therefore sum to zero.
    """
    updated = policy.copy()
    state = problem.root()
    for step, code in enumerate(codes):
        moves = checked_moves(state)
        played = None
        for m in moves:
            if m.code == code:
                played = m
                break
        if played is None:
            raise ReplayMismatchError(
                f"sequence/root mismatch at step {step}: code {code} is not legal here"
            )
        probs = softmax_probabilities([policy[m.code] for m in moves])
        updated[code] = updated[code] + alpha
        for m, p in zip(moves, probs):
            updated[m.code] = updated[m.code] - alpha * p
        state = state.play(played)
    return updated


class _Run:
    """Mutable context threaded through one search invocation."""

    def __init__(self, problem, config, eval_playouts, pool):
        self.problem = problem
        self.config = config
        self.eval_playouts = eval_playouts
        self.pool = pool
        self.stream = RngStream(config.seed)
        self.trace = RunTrace()
        self.started = time.monotonic()
        self.deadline = (
            None if config.time_limit is None else self.started + config.time_limit
        )
        self.best_score: float | None = None

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() >= self.deadline

    def observe(self, rollout: Rollout) -> None:
        if self.best_score is None or rollout.score > self.best_score:
            self.best_score = rollout.score
            now = time.monotonic() - self.started
            self.trace.events.append((now, rollout.score))
            self.trace.best_at = now

    def one_playout(self, policy: Policy) -> Rollout:
        rollout = playout(self.problem, policy, self.stream)
        self.trace.playouts += 1
        self.observe(rollout)
        return rollout

    def evaluate(self, policy: Policy) -> Rollout:
        """Best of eval_playouts frozen-policy playouts; ties go to the
        lowest child stream so the outcome is worker-count independent."""
        children = self.stream.spawn(self.eval_playouts)
        if self.pool is not None:
            rollouts = list(self.pool.map(partial(playout, self.problem, policy), children))
        else:
            rollouts = [playout(self.problem, policy, child) for child in children]
        self.trace.playouts += len(rollouts)
        for rollout in rollouts:
            self.observe(rollout)
        best = rollouts[0]
        for rollout in rollouts[1:]:
            if rollout.score > best.score:
                best = rollout
        return best

    def descend(self, level: int, policy: Policy) -> Rollout:
        if level == 0:
            return self.one_playout(policy)
        if level == 1 and self.eval_playouts > 1:
            return self.evaluate(policy)
        pol = policy.copy()
        best: Rollout | None = None
        for _ in range(self.config.iterations):
            result = self.descend(level - 1, pol)
            if best is None or result.score >= best.score:
                best = result
            if self.expired():
                break
            pol = adapt(pol, best.moves, self.problem, self.config.alpha)
            self.trace.adapts += 1
        return best


def _run_search(problem, config, policy, eval_playouts) -> RunTrace:
    pool = None
    if config.workers > 1 and eval_playouts > 1:
        pool = ThreadPoolExecutor(max_workers=min(config.workers, eval_playouts))
    run = _Run(problem, config, eval_playouts, pool)
    try:
        result = run.descend(config.level, policy if policy is not None else Policy())
    finally:
        if pool is not None:
            pool.shutdown(wait=True)
    run.trace.result = result
    run.trace.elapsed = time.monotonic() - run.started
    return run.trace


def nrpa(problem: Problem, config: SearchConfig, policy: Policy | None = None) -> RunTrace:
    """Plain nested search; config.eval_playouts is ignored here."""
    return _run_search(problem, config, policy, 1)


def snrpa(problem: Problem, config: SearchConfig, policy: Policy | None = None) -> RunTrace:
    """Stabilized nested search: level 1 becomes a best-of-P evaluation."""
    return _run_search(problem, config, policy, config.eval_playouts)
