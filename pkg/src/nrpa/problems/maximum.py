"""Expression building: grow a preorder arithmetic tree over +, * and 1.

Moves append one atom to the preorder sequence, so each new atom fills the
leftmost-deepest open slot. Binary operators are only offered while the
remaining budget can still complete the tree; the leaf is always available.
The terminal score is the value of the finished expression.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..problem import Problem, State

PLUS = 0
TIMES = 1
ONE = 2

_ATOMS = (PLUS, TIMES, ONE)
_EXTRA_SLOTS = {PLUS: 1, TIMES: 1, ONE: -1}  # net open slots after placing

_BRUTE_FORCE_CAP = 13


@dataclass(frozen=True)
class AtomMove:
    atom: int
    code: int


@dataclass(frozen=True)
class ExprState(State):
    budget: int
    atoms: tuple[int, ...] = ()
    open_slots: int = 1

    def is_terminal(self) -> bool:
        return self.open_slots == 0

    def legal_moves(self) -> list[AtomMove]:
        if self.open_slots == 0:
            return []
        position = len(self.atoms)
        # A binary operator leaves open_slots + 1 holes and needs this atom
        # too, so it fits only if used + open_slots + 2 stays within budget.
        if position + self.open_slots + 2 <= self.budget:
            allowed = _ATOMS
        else:
            allowed = (ONE,)
        return [AtomMove(atom, position * 3 + atom) for atom in allowed]

    def play(self, move: AtomMove) -> "ExprState":
        if self.open_slots == 0:
            raise ValueError("expression is already complete")
        if move.atom not in _ATOMS:
            raise ValueError(f"unknown atom {move.atom!r}")
        return ExprState(
            self.budget,
            self.atoms + (move.atom,),
            self.open_slots + _EXTRA_SLOTS[move.atom],
        )

    def score(self) -> float:
        if self.open_slots != 0:
            raise ValueError("expression is incomplete")
        value, _ = _evaluate(self.atoms, 0)
        return value


def _evaluate(atoms: tuple[int, ...], i: int) -> tuple[float, int]:
    atom = atoms[i]
    if atom == ONE:
        return 1.0, i + 1
    left, j = _evaluate(atoms, i + 1)
    right, k = _evaluate(atoms, j)
    return (left + right) if atom == PLUS else (left * right), k


@dataclass(frozen=True)
class MaxProblem(Problem):
    """Find the largest value an expression of at most `budget` atoms takes."""

    budget: int

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least one atom")

    def root(self) -> ExprState:
        return ExprState(self.budget)


def brute_force_max(budget: int) -> float:
    """Exhaustive optimum over all expressions of at most `budget` atoms."""
    if not 1 <= budget <= _BRUTE_FORCE_CAP:
        raise ValueError(f"brute force handles budgets 1..{_BRUTE_FORCE_CAP}")
    best = float("-inf")
    stack = [MaxProblem(budget).root()]
    while stack:
        state = stack.pop()
        if state.is_terminal():
            best = max(best, state.score())
        else:
            stack.extend(state.play(m) for m in state.legal_moves())
    return best
