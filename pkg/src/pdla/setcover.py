"""Learning-augmented primal-dual online fractional weighted set cover.

The runner processes arriving elements and grows a monotone fractional
cover, steering the multiplicative update toward predicted sets; elements
the prediction misses fall back to the pure online rule.  Companion
functions evaluate prediction cost, check the scaled dual feasibility
bound, and compute the exact offline optimum by branch-and-bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import CostLedger, DEFAULT_EPS, EpsilonPolicy, MonotoneVarStore

__all__ = [
    "CoverInstance",
    "CoverPrediction",
    "CoverRun",
    "InfeasibleElementError",
    "SetCoverSizeError",
    "run_pdla_setcover",
    "run_pure_online_setcover",
    "check_cover_dual_feasibility",
    "prediction_cost_setcover",
    "offline_opt_setcover_brute",
]

ITERATION_CAP = 10**6


class InfeasibleElementError(ValueError):
    """An arrived element is not contained in any set."""


class SetCoverSizeError(ValueError):
    """Instance exceeds the exhaustive-search size cap."""


@dataclass(frozen=True)
class CoverInstance:
    """Universe of ``n`` elements, weighted sets, and the arrival order.

    ``sets[i]`` is ``(weight, frozenset_of_elements)``; weights must be
    >= 1 (the dual-feasibility argument needs (1+1/w)^w >= 2).
    """

    n: int
    sets: tuple[tuple[float, frozenset[int]], ...]
    arrival_order: tuple[int, ...]

    def __post_init__(self):
        for i, (w, elems) in enumerate(self.sets):
            if w < 1.0 or not math.isfinite(w):
                raise ValueError(f"set {i} has weight {w!r}; weights must be finite and >= 1")
            for e in elems:
                if not (0 <= e < self.n):
                    raise ValueError(f"set {i} contains out-of-range element {e}")
        for e in self.arrival_order:
            if not (0 <= e < self.n):
                raise ValueError(f"arrival {e} out of range for universe of size {self.n}")

    @staticmethod
    def make(n, sets, arrival_order) -> "CoverInstance":
        return CoverInstance(
            n,
            tuple((float(w), frozenset(elems)) for w, elems in sets),
            tuple(arrival_order),
        )

    def covering_sets(self, element: int) -> list[int]:
        return [i for i, (_, elems) in enumerate(self.sets) if element in elems]

    def max_degree(self) -> int:
        """Max number of sets covering any arrived element (1 if no arrivals)."""
        degrees = [len(self.covering_sets(e)) for e in set(self.arrival_order)]
        return max(degrees, default=1)


@dataclass(frozen=True)
class CoverPrediction:
    """Advised covering: a set of set indices (possibly empty or infeasible)."""

    chosen_sets: frozenset[int]

    @staticmethod
    def make(indices) -> "CoverPrediction":
        return CoverPrediction(frozenset(indices))


@dataclass
class IterationRecord:
    """Per while-iteration primal split used by the consistency checks."""

    element: int
    covered_by_prediction: bool
    dp_charged: float
    dp_uncharged: float


@dataclass
class CoverRun:
    x: MonotoneVarStore
    y: dict[int, float]
    ledger: CostLedger
    cost_uncovered_part: float
    iterations: list[IterationRecord] = field(default_factory=list)


def run_pdla_setcover(
    instance: CoverInstance,
    prediction: CoverPrediction,
    lam: float,
    eps: EpsilonPolicy = DEFAULT_EPS,
    record_history: bool = False,
) -> CoverRun:
    """Process arrivals with the prediction-steered multiplicative update.

    While an arrived element's constraint is uncovered, every set that
    contains it is scaled by (1+1/w) and gets an additive boost: lam
    spread over all its sets plus (1-lam) spread over the predicted ones.
    Elements with no predicted set run the unscaled pure online update
    and their cost is tallied separately.
    """
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")
    x = MonotoneVarStore(record_history=record_history)
    y: dict[int, float] = {}
    ledger = CostLedger()
    run = CoverRun(x, y, ledger, 0.0)
    threshold = 1.0 - eps.coverage_eps

    for element in instance.arrival_order:
        covering = instance.covering_sets(element)
        if not covering:
            raise InfeasibleElementError(f"element {element} is not covered by any set")
        advised = [s for s in covering if s in prediction.chosen_sets]
        n_cov = len(covering)
        n_adv = len(advised)
        iterations = 0
        while sum(x.get(s) for s in covering) < threshold:
            iterations += 1
            if iterations > ITERATION_CAP:
                raise RuntimeError(f"iteration cap exceeded for element {element}")
            dp_charged = 0.0
            dp_uncharged = 0.0
            if n_adv >= 1:
                for s in covering:
                    w = instance.sets[s][0]
                    old = x.get(s)
                    boost = lam / (w * n_cov)
                    if s in prediction.chosen_sets:
                        boost += (1.0 - lam) / (w * n_adv)
                        dp_charged += old + w * boost
                    else:
                        dp_uncharged += old + w * boost
                    x.increase(s, old * (1.0 + 1.0 / w) + boost)
            else:
                for s in covering:
                    w = instance.sets[s][0]
                    old = x.get(s)
                    boost = 1.0 / (w * n_cov)
                    dp_uncharged += old + w * boost
                    x.increase(s, old * (1.0 + 1.0 / w) + boost)
                run.cost_uncovered_part += dp_uncharged
            ledger.add_primal(dp_charged, charged=True)
            ledger.add_primal(dp_uncharged, charged=False)
            ledger.add_dual(1.0)
            y[element] = y.get(element, 0.0) + 1.0
            run.iterations.append(
                IterationRecord(element, n_adv >= 1, dp_charged, dp_uncharged)
            )
    return run


def run_pure_online_setcover(
    instance: CoverInstance,
    _prediction: CoverPrediction | None = None,
    eps: EpsilonPolicy = DEFAULT_EPS,
) -> CoverRun:
    """Prediction-free baseline; identical to the guided run at lam = 1."""
    return run_pdla_setcover(instance, CoverPrediction(frozenset()), 1.0, eps)


def check_cover_dual_feasibility(
    run: CoverRun,
    instance: CoverInstance,
    lam: float,
    eps: EpsilonPolicy = DEFAULT_EPS,
) -> tuple[float, bool]:
    """Largest per-set dual load (sum of y over the set's elements, over
    its weight) against the log2(3d/lam + 1) scaling bound."""
    factor = 0.0
    for w, elems in instance.sets:
        load = sum(run.y.get(e, 0.0) for e in elems)
        factor = max(factor, load / w)
    bound = math.log2(3.0 * instance.max_degree() / lam + 1.0)
    return factor, factor <= bound + eps.coverage_eps


def prediction_cost_setcover(
    instance: CoverInstance, prediction: CoverPrediction
) -> tuple[float, bool]:
    """Cost of following the advice blindly: total weight of advised sets
    touching at least one arrived element, plus a feasibility flag."""
    arrived = set(instance.arrival_order)
    s_cost = 0.0
    covered: set[int] = set()
    for s in prediction.chosen_sets:
        w, elems = instance.sets[s]
        touched = elems & arrived
        if touched:
            s_cost += w
            covered |= touched
    return s_cost, covered == arrived


def offline_opt_setcover_brute(instance: CoverInstance) -> tuple[float, frozenset[int]]:
    """Exact minimum-weight cover of the arrived elements.

    Branch and bound: branch on the sets covering the lowest-degree
    uncovered element, pruning by current best.  Capped at 24 sets.
    """
    m = len(instance.sets)
    if m > 24:
        raise SetCoverSizeError(f"brute-force oracle supports at most 24 sets, got {m}")
    arrived = frozenset(instance.arrival_order)
    for e in arrived:
        if not instance.covering_sets(e):
            raise InfeasibleElementError(f"element {e} is not covered by any set")

    cover_of = {e: instance.covering_sets(e) for e in arrived}
    best_cost = math.inf
    best_witness: frozenset[int] = frozenset()

    def recurse(uncovered: frozenset[int], chosen: frozenset[int], cost: float):
        nonlocal best_cost, best_witness
        if cost >= best_cost:
            return
        if not uncovered:
            best_cost = cost
            best_witness = chosen
            return
        pivot = min(uncovered, key=lambda e: len(cover_of[e]))
        for s in cover_of[pivot]:
            if s in chosen:
                continue
            w, elems = instance.sets[s]
            recurse(uncovered - elems, chosen | {s}, cost + w)

    recurse(arrived, frozenset(), 0.0)
    if not math.isfinite(best_cost):
        raise InfeasibleElementError("no feasible cover exists")
    return best_cost, best_witness
