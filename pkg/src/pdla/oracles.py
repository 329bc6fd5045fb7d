"""Uniform offline-optimum interface plus unpruned brute-force enumerators.

The dispatching ``opt`` wraps each problem's exact oracle in one report
type for the harness; the brute-force functions are the independent
second oracles the cross-check tests compare against.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations

from .bahncard import BahncardInstance, BahncardSizeError, offline_opt_bahncard
from .setcover import (
    CoverInstance,
    InfeasibleElementError,
    SetCoverSizeError,
    offline_opt_setcover_brute,
)
from .skirental import SkiInstance
from .tcpack import TcpInstance, TcpSizeError, offline_opt_tcp

__all__ = [
    "OracleReport",
    "opt",
    "brute_force_tcp",
    "brute_force_bahncard",
    "brute_force_setcover",
]


@dataclass(frozen=True)
class OracleReport:
    opt_cost: float
    witness: tuple
    method: str  # "dp" | "brute_force" | "closed_form"
    elapsed: float


def opt(instance) -> OracleReport:
    """Offline optimum for any supported problem instance."""
    start = time.perf_counter()
    if isinstance(instance, SkiInstance):
        cost = float(min(instance.n_days, instance.buy_cost))
        witness = ("buy",) if instance.buy_cost < instance.n_days else ("rent",) * instance.n_days
        method = "closed_form"
    elif isinstance(instance, TcpInstance):
        cost, witness = offline_opt_tcp(instance)
        method = "dp"
    elif isinstance(instance, BahncardInstance):
        cost, witness = offline_opt_bahncard(instance)
        method = "dp"
    elif isinstance(instance, CoverInstance):
        cost, chosen = offline_opt_setcover_brute(instance)
        witness = tuple(sorted(chosen))
        method = "brute_force"
    else:
        raise TypeError(f"unsupported instance type {type(instance).__name__}")
    return OracleReport(cost, tuple(witness), method, time.perf_counter() - start)


def brute_force_tcp(instance: TcpInstance) -> float:
    """Exact minimum over every subset of arrival steps as the ack schedule."""
    steps = [s for s, c in enumerate(instance.counts) if c > 0]
    if len(steps) > 12:
        raise TcpSizeError(f"brute force supports at most 12 distinct arrival steps, got {len(steps)}")
    if not steps:
        return 0.0
    d = instance.d
    last = steps[-1]
    best = math.inf
    for r in range(len(steps)):
        for chosen in combinations(steps[:-1], r):
            acks = list(chosen) + [last]  # the last arrival must be acked
            cost = float(len(acks))
            ai = 0
            for s in steps:  # ascending, so the ack pointer only moves forward
                while acks[ai] < s:
                    ai += 1
                cost += instance.counts[s] * (acks[ai] - s) / d
            best = min(best, cost)
    return best


def brute_force_bahncard(instance: BahncardInstance) -> float:
    """Exact minimum over every subset of trip times as card-buy times."""
    if len(instance.trip_times) > 12:
        raise BahncardSizeError(
            f"brute force supports at most 12 trips, got {len(instance.trip_times)}"
        )
    times = sorted(set(instance.trip_times))
    beta, big_b, validity = instance.beta, instance.card_cost, instance.validity
    best = math.inf
    for r in range(len(times) + 1):
        for cards in combinations(times, r):
            cost = big_b * r
            for t in instance.trip_times:
                discounted = any(c <= t <= c + validity for c in cards)
                cost += beta if discounted else 1.0
            best = min(best, cost)
    return best


def brute_force_setcover(instance: CoverInstance) -> float:
    """Exact minimum-weight cover by unpruned enumeration of all subsets."""
    m = len(instance.sets)
    if m > 20:
        raise SetCoverSizeError(f"unpruned enumeration supports at most 20 sets, got {m}")
    arrived = frozenset(instance.arrival_order)
    best = math.inf
    for mask in range(1 << m):
        cost = 0.0
        covered: set[int] = set()
        for i in range(m):
            if mask >> i & 1:
                w, elems = instance.sets[i]
                cost += w
                covered |= elems
        if arrived <= covered:
            best = min(best, cost)
    if best == math.inf:
        raise InfeasibleElementError("no feasible cover exists")
    return best
