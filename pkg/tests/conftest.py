"""Shared tiny problems used across the test modules.

These implement the same contract as the bundled domains but are small
enough to reason about by hand, which keeps expected values exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from nrpa.problem import Move, Problem, State


@dataclass(frozen=True)
class CodedMove:
    code: int


@dataclass(frozen=True)
class ChainState(State):
    """Walks `depth` decisions; every decision offers the same `codes`."""

    codes: tuple[int, ...]
    depth: int
    taken: tuple[int, ...] = ()

    def is_terminal(self) -> bool:
        return len(self.taken) >= self.depth

    def legal_moves(self) -> Sequence[CodedMove]:
        return [CodedMove(c) for c in self.codes]

    def play(self, move: CodedMove) -> "ChainState":
        return ChainState(self.codes, self.depth, self.taken + (move.code,))

    def score(self) -> float:
        # Sum of chosen codes; simple, exact, and order-insensitive.
        return float(sum(self.taken))


@dataclass(frozen=True)
class ChainProblem(Problem):
    """`depth` sequential picks among the same move codes."""

    codes: tuple[int, ...] = (0, 1)
    depth: int = 1

    def root(self) -> ChainState:
        return ChainState(tuple(self.codes), self.depth)


class RebasedProblem(Problem):
    """Exposes an arbitrary state as the root, for localized adapt checks."""

    def __init__(self, state: State):
        self._state = state

    def root(self) -> State:
        return self._state


@dataclass(frozen=True)
class DuplicateCodeState(State):
    """Deliberately broken: two legal moves share a code."""

    def is_terminal(self) -> bool:
        return False

    def legal_moves(self):
        return [CodedMove(7), CodedMove(7)]

    def play(self, move):
        raise AssertionError("should never be reached")

    def score(self) -> float:
        raise AssertionError("not terminal")


@dataclass(frozen=True)
class DuplicateCodeProblem(Problem):
    def root(self) -> DuplicateCodeState:
        return DuplicateCodeState()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance criterion verdicts after the normal summary."""
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok, detail in sorted(test_acceptance.RESULTS):
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(
            f"[criterion {num:02d}] {name}: {status}{suffix}"
        )
