"""The pluggable problem interface shared by search and the domains.

A problem exposes a root state; states hand out moves, apply them, and
score themselves once terminal. Moves carry a stable non-negative integer
`code` that identifies "the same decision" across replays of one instance,
which is what the weight tables are keyed on.
"""
from __future__ import annotations

import abc
from typing import Protocol, Sequence, runtime_checkable


@runtime_checkable
class Move(Protocol):
    code: int


class State(abc.ABC):
    @abc.abstractmethod
    def is_terminal(self) -> bool: ...

    @abc.abstractmethod
    def legal_moves(self) -> Sequence[Move]: ...

    @abc.abstractmethod
    def play(self, move: Move) -> "State": ...

    @abc.abstractmethod
    def score(self) -> float:
        """Final value of a terminal state; larger is better."""


class Problem(abc.ABC):
    @abc.abstractmethod
    def root(self) -> State: ...

    def score_floor(self) -> float:
        """A value at or below any reachable terminal score."""
        return 0.0


class StuckStateError(RuntimeError):
    """A non-terminal state offered no legal moves."""


class ReplayMismatchError(ValueError):
    """A recorded move sequence does not fit the instance it claims to."""


def checked_moves(state: State) -> list[Move]:
    """Legal moves with the per-state code-uniqueness contract asserted."""
    moves = list(state.legal_moves())
    codes = [m.code for m in moves]
    assert len(set(codes)) == len(codes), (
        f"duplicate move codes within one state: {sorted(codes)}"
    )
    return moves


def _pick_by_code(moves: Sequence[Move], code: int, step: int) -> Move:
    for move in moves:
        if move.code == code:
            return move
    raise ReplayMismatchError(
        f"sequence/root mismatch at step {step}: code {code} is not legal here"
    )


def replay(problem: Problem, codes: Sequence[int]) -> State:
    """Walk a recorded code sequence from the root and return the end state."""
    state = problem.root()
    for step, code in enumerate(codes):
        state = state.play(_pick_by_code(checked_moves(state), code, step))
    return state
