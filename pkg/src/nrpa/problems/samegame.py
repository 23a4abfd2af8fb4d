"""Tile-clearing board game on gravity columns.

The board is a tuple of columns, each a bottom-up tuple of colors, kept
normalized: no holes inside a column and no empty columns (they collapse
leftward). A move removes one 4-connected group of at least two same-color
tiles for (size - 2)^2 points, plus 1000 for clearing the board.

The optional "tabu" move filter steers playouts away from nibbling at the
most frequent color: while that color cannot be removed in one sweep, its
partial groups are withheld (optionally except pairs). If the filter would
remove every move, it is skipped for that state, so the filter never ends
a game early.
"""
from __future__ import annotations

import zlib
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..problem import Problem, State

_BRUTE_FORCE_CAP = 4


@dataclass(frozen=True)
class TileMove:
    color: int
    cells: tuple[tuple[int, int], ...]
    code: int


def _move_code(color: int, cells: tuple[tuple[int, int], ...]) -> int:
    buf = bytearray()
    buf.append(color & 0xFF)
    for x, y in cells:
        buf.append(x & 0xFF)
        buf.append(y & 0xFF)
    return zlib.crc32(bytes(buf)) & 0x7FFFFFFF


@lru_cache(maxsize=16384)
def _components_of(columns) -> tuple[TileMove, ...]:
    """Flood fill over a sentinel-padded flat grid; marks visits by negation.

    The grid is column-major with one spare slot per column and a blank
    column on each side, so every neighbor lookup is a plain index, no
    bounds checks. Positions recur constantly while a best sequence gets
    replayed during adaptation, hence the cache.
    """
    width = len(columns)
    if width == 0:
        return ()
    stride = max(len(col) for col in columns) + 1
    grid = [0] * (stride * (width + 2))
    for x, col in enumerate(columns):
        base = (x + 1) * stride
        grid[base:base + len(col)] = col
    moves = []
    for x, col in enumerate(columns):
        base = (x + 1) * stride
        for start in range(base, base + len(col)):
            color = grid[start]
            if color <= 0:
                continue
            grid[start] = -color
            stack = [start]
            group = []
            while stack:
                idx = stack.pop()
                group.append(idx)
                for nxt in (idx - 1, idx + 1, idx - stride, idx + stride):
                    if grid[nxt] == color:
                        grid[nxt] = -color
                        stack.append(nxt)
            if len(group) >= 2:
                group.sort()
                cells = tuple(divmod(i, stride) for i in group)
                cells = tuple((cx - 1, cy) for cx, cy in cells)
                moves.append(TileMove(color, cells, _move_code(color, cells)))
    return tuple(moves)


def components(columns) -> list[TileMove]:
    """All removable groups (size >= 2), in column-then-row scan order."""
    return list(_components_of(columns))


def tabu_filter(columns, moves, allow_pairs: bool = False) -> list[TileMove]:
    """Withhold partial groups of the most frequent color.

    The dominant color is the one with the most tiles on the board (ties go
    to the lowest color id). Its groups stay playable only when one move
    would clear the color completely, or, with allow_pairs, when the group
    is exactly a pair. Returns the moves unchanged if filtering would leave
    none.
    """
    counts: Counter[int] = Counter()
    for col in columns:
        counts.update(col)
    if not counts or not moves:
        return list(moves)
    top = max(counts.values())
    dominant = min(c for c, k in counts.items() if k == top)
    kept = []
    for move in moves:
        if move.color == dominant and len(move.cells) < counts[dominant]:
            if allow_pairs and len(move.cells) == 2:
                kept.append(move)
            continue
        kept.append(move)
    return kept if kept else list(moves)


def _remove(columns, cells) -> tuple[tuple[int, ...], ...]:
    doomed = set(cells)
    new_columns = []
    for x, col in enumerate(columns):
        kept = tuple(col[y] for y in range(len(col)) if (x, y) not in doomed)
        if kept:
            new_columns.append(kept)
    return tuple(new_columns)


@dataclass(frozen=True)
class BoardState(State):
    problem: "SameGameProblem"
    columns: tuple[tuple[int, ...], ...]
    points: int

    @cached_property
    def _moves(self) -> list[TileMove]:
        moves = components(self.columns)
        if self.problem.tabu and moves:
            moves = tabu_filter(
                self.columns, moves, allow_pairs=self.problem.allow_pairs
            )
        return moves

    def is_terminal(self) -> bool:
        return not self._moves

    def legal_moves(self) -> list[TileMove]:
        return list(self._moves)

    def play(self, move: TileMove) -> "BoardState":
        if move not in self._moves:
            raise ValueError(f"stale move: {move!r} does not fit this board")
        new_columns = _remove(self.columns, move.cells)
        points = self.points + (len(move.cells) - 2) ** 2
        if not new_columns:
            points += 1000
        return BoardState(self.problem, new_columns, points)

    def score(self) -> float:
        return float(self.points)


class SameGameProblem(Problem):
    def __init__(self, columns, width, height, tabu=False, allow_pairs=False):
        normalized = []
        for col in columns:
            kept = tuple(int(c) for c in col if c != 0)
            if any(c < 0 for c in kept):
                raise ValueError("tile colors must be positive integers")
            if len(kept) > height:
                raise ValueError("column taller than the stated height")
            if kept:
                normalized.append(kept)
        if len(normalized) > width:
            raise ValueError("more columns than the stated width")
        self.columns = tuple(normalized)
        self.width = width
        self.height = height
        self.tabu = tabu
        self.allow_pairs = allow_pairs

    @classmethod
    def from_rows(cls, rows, tabu=False, allow_pairs=False) -> "SameGameProblem":
        """Build from rows listed top first; zeros mark holes."""
        if not rows:
            raise ValueError("empty board")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("every row must have the same width")
        height = len(rows)
        columns = [
            tuple(rows[height - 1 - y][x] for y in range(height))
            for x in range(width)
        ]
        return cls(columns, width, height, tabu=tabu, allow_pairs=allow_pairs)

    def root(self) -> BoardState:
        return BoardState(self, self.columns, 0)


def parse_board(text: str, tabu=False, allow_pairs=False) -> SameGameProblem:
    """Read a board from rows of digits or of space-separated integers."""
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("!!"):
            continue
        if " " in line:
            rows.append([int(token) for token in line.split()])
        else:
            rows.append([int(ch) for ch in line])
    if not rows:
        raise ValueError("empty board text")
    return SameGameProblem.from_rows(rows, tabu=tabu, allow_pairs=allow_pairs)


def brute_force_best(problem: SameGameProblem) -> int:
    """Exhaustive best final point count, memoized on board positions."""
    if problem.width > _BRUTE_FORCE_CAP or problem.height > _BRUTE_FORCE_CAP:
        raise ValueError(
            f"brute force handles boards up to {_BRUTE_FORCE_CAP}x{_BRUTE_FORCE_CAP}"
        )
    tabu = problem.tabu
    allow_pairs = problem.allow_pairs
    memo: dict[tuple, int] = {}

    def solve(columns) -> int:
        cached = memo.get(columns)
        if cached is not None:
            return cached
        moves = components(columns)
        if tabu and moves:
            moves = tabu_filter(columns, moves, allow_pairs=allow_pairs)
        best = 0
        for move in moves:
            remainder = _remove(columns, move.cells)
            value = (len(move.cells) - 2) ** 2
            value += 1000 if not remainder else solve(remainder)
            if value > best:
                best = value
        memo[columns] = best
        return best

    return solve(problem.root().columns)
