"""Traveling salesman with time windows, one vehicle, soft deadlines.

States extend a tour customer by customer from the depot (node 0). Arriving
before a window opens means waiting; arriving after it closes counts one
violation and the tour keeps going. Playing the last unvisited customer
folds the return leg to the depot into the same step, including the check
against the depot's own closing time. Terminal score is
-(travel cost + LATE_PENALTY * violations), so feasible short tours win.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from ..problem import Problem, State

LATE_PENALTY = 1_000_000.0

_BRUTE_FORCE_CAP = 8


@dataclass(frozen=True)
class VisitMove:
    node: int
    code: int


@dataclass(frozen=True)
class TourState(State):
    problem: "TsptwProblem"
    current: int
    remaining: frozenset[int]
    order: tuple[int, ...]
    time: float
    cost_so_far: float
    violations: int

    def is_terminal(self) -> bool:
        return not self.remaining

    def legal_moves(self) -> list[VisitMove]:
        stride = self.problem.n + 1
        base = self.current * stride
        return [VisitMove(node, base + node) for node in sorted(self.remaining)]

    def play(self, move: VisitMove) -> "TourState":
        node = move.node
        if node not in self.remaining:
            raise ValueError(f"node {node} was already visited or does not exist")
        problem = self.problem
        cost = self.cost_so_far + problem.cost[self.current][node]
        arrival = self.time + problem.cost[self.current][node]
        ready, due = problem.windows[node]
        violations = self.violations + (1 if arrival > due else 0)
        now = max(arrival, ready)
        remaining = self.remaining - {node}
        if not remaining:
            # Fold the trip home into the final visit.
            leg = problem.cost[node][0]
            cost += leg
            now += leg
            if now > problem.windows[0][1]:
                violations += 1
        return TourState(
            problem, node, remaining, self.order + (node,), now, cost, violations
        )

    def score(self) -> float:
        if self.remaining:
            raise ValueError("tour is incomplete")
        return -(self.cost_so_far + LATE_PENALTY * self.violations)


class TsptwProblem(Problem):
    def __init__(self, cost, windows):
        size = len(cost)
        if size < 1 or any(len(row) != size for row in cost):
            raise ValueError("cost must be a square matrix")
        if len(windows) != size:
            raise ValueError("need one (ready, due) window per node")
        self.cost = tuple(tuple(float(c) for c in row) for row in cost)
        self.windows = [(float(e), float(l)) for e, l in windows]
        self.n = size - 1

    @classmethod
    def from_coords(cls, coords, windows) -> "TsptwProblem":
        cost = [[math.dist(a, b) for b in coords] for a in coords]
        return cls(cost, windows)

    def root(self) -> TourState:
        return TourState(
            problem=self,
            current=0,
            remaining=frozenset(range(1, self.n + 1)),
            order=(),
            time=self.windows[0][0],
            cost_so_far=0.0,
            violations=0,
        )

    def score_floor(self) -> float:
        """Below any outcome: every node late plus every leg at max cost."""
        legs = self.n + 1
        max_edge = max(max(row) for row in self.cost)
        return -(LATE_PENALTY * legs + legs * max_edge)


def parse_instance(text: str) -> TsptwProblem:
    """Read a node-list instance.

    Lines starting with "!!" or "#" and blank lines are skipped. An optional
    single-number header gives the node count. Rows are either
    "id x y ready due" or the seven-column "id x y demand ready due service"
    layout, where demand and service are accepted and ignored. Ids may start
    at 0 or at 1.
    """
    count = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("!!") or line.startswith("#"):
            continue
        fields = line.split()
        if count is None and not rows and len(fields) == 1:
            count = int(fields[0])
            continue
        if len(fields) == 5:
            node, x, y, ready, due = fields
        elif len(fields) == 7:
            node, x, y, _, ready, due, _ = fields
        else:
            raise ValueError(
                f"expected 5 or 7 columns, got {len(fields)}: {line!r}"
            )
        rows.append((int(node), float(x), float(y), float(ready), float(due)))
    if not rows:
        raise ValueError("no node rows found")
    if count is not None and count != len(rows):
        raise ValueError(f"header promises {count} nodes, file has {len(rows)}")
    ids = [r[0] for r in rows]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate node ids")
    shift = 1 if min(ids) == 1 else 0
    if sorted(i - shift for i in ids) != list(range(len(rows))):
        raise ValueError("node ids must be contiguous starting at 0 or 1")
    by_id = sorted(rows, key=lambda r: r[0])
    coords = []
    windows = []
    for node, x, y, ready, due in by_id:
        if ready < 0:
            raise ValueError(f"node {node}: negative ready time {ready}")
        if due < ready:
            raise ValueError(f"node {node}: inverted window ({ready}, {due})")
        coords.append((x, y))
        windows.append((ready, due))
    return TsptwProblem.from_coords(coords, windows)


def brute_force_best(problem: TsptwProblem) -> tuple[float, tuple[int, ...]]:
    """Exhaustive best (score, visit order) over all customer permutations."""
    if problem.n > _BRUTE_FORCE_CAP:
        raise ValueError(f"brute force handles up to {_BRUTE_FORCE_CAP} customers")
    best_score = float("-inf")
    best_order: tuple[int, ...] = ()
    for order in permutations(range(1, problem.n + 1)):
        state = problem.root()
        for node in order:
            state = state.play(VisitMove(node, 0))
        score = state.score()
        if score > best_score:
            best_score = score
            best_order = order
    return best_score, best_order
