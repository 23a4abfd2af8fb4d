"""Move-weight tables and the softmax that turns them into probabilities."""
from __future__ import annotations

import math


def softmax_probabilities(weights: list[float]) -> list[float]:
    """Probabilities proportional to exp(weight), computed max-shifted.

    Shifting by the maximum keeps exp() in range for any finite weights, so
    very large tables degrade to near-deterministic choices instead of
    overflowing.
    """
    if not weights:
        raise ValueError("no legal moves to weight")
    values = [float(w) for w in weights]
    if not all(math.isfinite(w) for w in values):
        raise ValueError(f"weights must be finite, got {values!r}")
    top = max(values)
    exps = [math.exp(w - top) for w in values]
    total = math.fsum(exps)
    return [e / total for e in exps]


class Policy:
    """Sparse weight table keyed by non-negative move codes.

    Unseen codes read as 0.0, and zeros are never stored, so two tables
    compare equal exactly when every code would read the same.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights: dict[int, float] | None = None):
        self._weights: dict[int, float] = {}
        if weights:
            for code, weight in weights.items():
                self[code] = weight

    def __getitem__(self, code: int) -> float:
        return self._weights.get(code, 0.0)

    def __setitem__(self, code: int, weight: float) -> None:
        if not isinstance(code, int) or code < 0:
            raise ValueError(f"move codes are non-negative ints, got {code!r}")
        weight = float(weight)
        if not math.isfinite(weight):
            raise ValueError(f"weights must be finite, got {weight!r}")
        if weight == 0.0:
            self._weights.pop(code, None)
        else:
            self._weights[code] = weight

    def copy(self) -> "Policy":
        fresh = Policy()
        fresh._weights = dict(self._weights)
        return fresh

    def as_dict(self) -> dict[int, float]:
        """Snapshot of the stored (non-zero) entries."""
        return dict(self._weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Policy):
            return NotImplemented
        return self._weights == other._weights

    __hash__ = None  # mutable

    def __len__(self) -> int:
        return len(self._weights)

    def __repr__(self) -> str:
        return f"Policy({self._weights!r})"
