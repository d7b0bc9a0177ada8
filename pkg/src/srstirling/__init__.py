"""Restricted (S,r)-Stirling numbers: exact generating-function engine,
Riordan matrices, Moebius-function posets, graph counts and poly numbers."""

from .indexset import ALL, EVEN, ODD, IndexSet, parse
from .series import EgfSeries
from .stirling import SRContext, bell, stirling1, stirling2

__all__ = [
    "ALL", "EVEN", "ODD", "IndexSet", "parse", "EgfSeries",
    "SRContext", "bell", "stirling1", "stirling2",
]

__version__ = "0.1.0"
