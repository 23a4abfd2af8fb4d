"""Bundled single-player domains."""
from .maximum import MaxProblem
from .samegame import SameGameProblem
from .tsptw import TsptwProblem

__all__ = ["MaxProblem", "SameGameProblem", "TsptwProblem"]
