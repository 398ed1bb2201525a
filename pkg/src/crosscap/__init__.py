"""Symbolic kernel for crosscap transpositions in mapping class groups of nonorientable surfaces.

Words in twists and crosscap transpositions are rewritten by replayable
certificates and cross-checked in the Z/2-homology representation.
"""

from .homology import evaluate, rep, transvection
from .surface import CurveSymbol, gamma, parse_curve
from .words import Letter, Word, free_reduce

__version__ = "0.1.0"

__all__ = [
    "CurveSymbol",
    "Letter",
    "Word",
    "evaluate",
    "free_reduce",
    "gamma",
    "parse_curve",
    "rep",
    "transvection",
]
