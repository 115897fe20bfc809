"""
Analysis tools over groups and words: word graphs, exact bounds,
property search and catalog-wide sweeps.
"""

from .bounds import BoundReport, DomainError, GapConstant, GapSource
from .property_check import OverlapPolicy, PropertyQuery, PropertyResult, TheoremCheck
from .wordgraph import WordGraph

__all__ = [
    "BoundReport",
    "DomainError",
    "GapConstant",
    "GapSource",
    "OverlapPolicy",
    "PropertyQuery",
    "PropertyResult",
    "TheoremCheck",
    "WordGraph",
]
