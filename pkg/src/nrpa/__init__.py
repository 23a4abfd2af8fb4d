"""Nested rollout policy adaptation with a stabilized evaluation level.

Public surface: the search functions (`nrpa`, `snrpa`, `playout`, `adapt`),
their config and result types, the weight table, the splittable RNG, the
problem interface, and three bundled domains under `nrpa.problems`.
"""
from .policy import Policy, softmax_probabilities
from .problem import (
    Move,
    Problem,
    ReplayMismatchError,
    State,
    StuckStateError,
    checked_moves,
    replay,
)
from .rng import RngStream
from .search import (
    Rollout,
    RunTrace,
    SearchConfig,
    adapt,
    nrpa,
    playout,
    snrpa,
)

__version__ = "0.1.0"

__all__ = [
    "Policy",
    "softmax_probabilities",
    "Move",
    "Problem",
    "State",
    "ReplayMismatchError",
    "StuckStateError",
    "checked_moves",
    "replay",
    "RngStream",
    "Rollout",
    "RunTrace",
    "SearchConfig",
    "adapt",
    "nrpa",
    "playout",
    "snrpa",
    "__version__",
]
