"""Primal-dual learning-augmented algorithms for online covering problems.

Fractional online solvers with prediction-steered update rates for
weighted set cover, ski rental, the discount-card (Bahncard) problem, and
dynamic TCP acknowledgement, together with exact offline oracles,
randomized threshold rounding, random instance/prediction generators, a
competitive-ratio sweep harness, and numeric verifiers for every bound
the algorithms promise.
"""

from .core import (
    CostLedger,
    DEFAULT_EPS,
    EpsilonPolicy,
    MonotoneVarStore,
    MonotonicityError,
    SeededRng,
    check_lemma12,
    check_lemma13,
)

__all__ = [
    "CostLedger",
    "DEFAULT_EPS",
    "EpsilonPolicy",
    "MonotoneVarStore",
    "MonotonicityError",
    "SeededRng",
    "check_lemma12",
    "check_lemma13",
]

__version__ = "0.1.0"
