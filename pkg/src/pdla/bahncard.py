"""Learning-augmented primal-dual algorithm for the discount-card problem.

Trips arrive in time order; each costs 1 at full price or beta while a
card (price B, valid for an inclusive window of T extra steps) is held.
The runner keeps monotone fractional card mass per time step and picks
per trip between a minimal, an aggressive (inside a predicted card's
validity), or a cautious update.  Companion functions: exact offline DP,
dual feasibility within (1+(1-beta)/B), finite-B bound formulas, and the
randomized threshold rounding.
"""

from __future__ import annotations

import logging
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

from .core import CostLedger, DEFAULT_EPS, EpsilonPolicy, MonotoneVarStore, snap_ceil

__all__ = [
    "BahncardInstance",
    "BahncardPrediction",
    "BahncardRun",
    "BahncardBounds",
    "BahncardSizeError",
    "DegenerateParameterError",
    "normalize_prediction",
    "run_pdla_bahncard",
    "offline_opt_bahncard",
    "check_bahncard_dual",
    "bahncard_bounds",
    "round_bahncard",
    "round_bahncard_batch",
]

logger = logging.getLogger(__name__)


class BahncardSizeError(ValueError):
    """Instance exceeds an oracle's size cap."""


class DegenerateParameterError(ValueError):
    """beta = 1 makes every update increment vanish; the analysis assumes beta < 1."""


@dataclass(frozen=True)
class BahncardInstance:
    """Trips at nondecreasing integer times; card cost, discount, validity."""

    trip_times: tuple[int, ...]
    card_cost: float
    beta: float
    validity: int

    def __post_init__(self):
        if any(b < a for a, b in zip(self.trip_times, self.trip_times[1:])):
            raise ValueError("trip times must be nondecreasing")
        if not (self.card_cost > 0.0 and math.isfinite(self.card_cost)):
            raise ValueError(f"card cost must be positive, got {self.card_cost!r}")
        if not (0.0 <= self.beta <= 1.0):
            raise ValueError(f"beta must lie in [0, 1], got {self.beta!r}")
        if self.validity < 1:
            raise ValueError(f"validity must be >= 1, got {self.validity}")

    @staticmethod
    def make(trip_times, card_cost: float, beta: float, validity: int) -> "BahncardInstance":
        return BahncardInstance(tuple(int(t) for t in trip_times), float(card_cost), float(beta), int(validity))


@dataclass(frozen=True)
class BahncardPrediction:
    """Strictly increasing card-buy times; normalize against a validity
    length before running (overlapping validity windows are postponed)."""

    card_times: tuple[int, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.card_times, self.card_times[1:])):
            raise ValueError("card times must be strictly increasing")

    @staticmethod
    def make(card_times) -> "BahncardPrediction":
        return BahncardPrediction(tuple(int(t) for t in card_times))


def normalize_prediction(prediction: BahncardPrediction, validity: int) -> BahncardPrediction:
    """Postpone overlapping advised buys so validity windows are disjoint.

    A buy inside the previous card's window moves to the first step after
    that window ends (buying earlier is never better for the advice).
    """
    out: list[int] = []
    for t in prediction.card_times:
        if out and t <= out[-1] + validity:
            t = out[-1] + validity + 1
        out.append(t)
    normalized = tuple(out)
    if normalized != prediction.card_times:
        logger.info(
            "normalized overlapping predicted card times %s -> %s",
            prediction.card_times,
            normalized,
        )
    return BahncardPrediction(normalized)


@dataclass
class BahncardRun:
    """Per-trip trace plus the interval attribution of the primal cost."""

    x: MonotoneVarStore
    d: list[float]
    f: list[float]
    c: list[float]
    b: list[float]
    update_kind: list[str]  # "minimal" | "big" | "small"
    trip_dp: list[float]
    trip_dd: list[float]
    per_interval_cost: dict[int, float]
    out_trip_cost: dict[int, float]
    intervals: tuple[tuple[int, int], ...]
    trips_per_interval: dict[int, int]
    ledger: CostLedger
    instance: BahncardInstance


class _SupportSums:
    """Sorted support times with prefix sums; only the last entry mutates."""

    def __init__(self):
        self.times: list[int] = []
        self.csum: list[float] = []

    def add(self, t: int, delta: float):
        if self.times and t == self.times[-1]:
            self.csum[-1] += delta
        else:
            prev = self.csum[-1] if self.csum else 0.0
            self.times.append(t)
            self.csum.append(prev + delta)

    def window_sum(self, lo: int, hi: int) -> float:
        """Sum of mass at support times in [lo, hi]."""
        i = bisect_left(self.times, lo)
        j = bisect_right(self.times, hi)
        if j == 0 or i >= j:
            return 0.0
        upper = self.csum[j - 1]
        lower = self.csum[i - 1] if i > 0 else 0.0
        return upper - lower


def _rate_constants(card_cost: float, beta: float, lam: float) -> tuple[float, float, int]:
    """Rate constants e(lam), e(1/lam) with exact exponents, plus the
    ceiling update count for the per-interval ratio.

    The exponents deliberately stay unsnapped: the dual-feasibility bound
    rests on the two-rate sequence lemma, which needs the exact rates when
    aggressive and cautious updates mix inside one validity window
    (snapping them breaks the Sum b <= B + (1-beta) guarantee).
    """
    unit = (1.0 - beta) / card_cost
    scale = card_cost / (1.0 - beta)
    log1p_unit = math.log1p(unit)
    e_big = math.exp(lam * scale * log1p_unit)
    e_small = math.exp(scale / lam * log1p_unit)
    return e_big, e_small, snap_ceil(lam * scale)


def _interval_index(intervals: tuple[tuple[int, int], ...], starts: list[int], t: int) -> int | None:
    i = bisect_right(starts, t) - 1
    if i >= 0 and t <= intervals[i][1]:
        return i
    return None


def run_pdla_bahncard(
    instance: BahncardInstance,
    prediction: BahncardPrediction,
    lam: float,
    eps: EpsilonPolicy = DEFAULT_EPS,
) -> BahncardRun:
    """Run the prediction-guided primal-dual discount-card algorithm."""
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")
    if instance.beta >= 1.0:
        raise DegenerateParameterError("beta = 1 leaves no incentive to buy; updates would add zero mass")

    beta = instance.beta
    big_b = instance.card_cost
    validity = instance.validity
    prediction = normalize_prediction(prediction, validity)
    intervals = tuple((t, t + validity) for t in prediction.card_times)
    starts = [iv[0] for iv in intervals]

    e_big, e_small, _ = _rate_constants(big_b, beta, lam)
    inv_big = 1.0 / (e_big - 1.0)
    inv_small = 1.0 / (e_small - 1.0)
    unit = (1.0 - beta) / big_b
    threshold = 1.0 - eps.coverage_eps

    x = MonotoneVarStore()
    support = _SupportSums()
    ledger = CostLedger()
    run = BahncardRun(
        x, [], [], [], [], [], [], [], {}, {}, intervals, {}, ledger, instance
    )

    for j, t in enumerate(instance.trip_times):
        window = support.window_sum(t - validity, t)
        idx = _interval_index(intervals, starts, t)
        if idx is not None:
            run.trips_per_interval[idx] = run.trips_per_interval.get(idx, 0) + 1

        if window >= threshold:
            kind = "minimal"
            d_j, f_j = 1.0, 0.0
            b_j, c_j = 0.0, beta
            dp = beta
        else:
            inside = idx is not None
            inv = inv_big if inside else inv_small
            kind = "big" if inside else "small"
            d_j = window
            f_j = 1.0 - window
            delta = unit * (window + inv)
            x.add(t, delta)
            support.add(t, delta)
            b_j = (1.0 - beta) if inside else lam * (1.0 - beta)
            c_j = b_j + beta
            dp = beta * d_j + f_j + big_b * delta

        run.d.append(d_j)
        run.f.append(f_j)
        run.b.append(b_j)
        run.c.append(c_j)
        run.update_kind.append(kind)
        run.trip_dp.append(dp)
        run.trip_dd.append(c_j)
        ledger.add_primal(dp, charged=idx is not None)
        ledger.add_dual(c_j)
        if idx is not None:
            run.per_interval_cost[idx] = run.per_interval_cost.get(idx, 0.0) + dp
        else:
            run.out_trip_cost[j] = dp
    return run


def offline_opt_bahncard(instance: BahncardInstance) -> tuple[float, tuple[int, ...]]:
    """Exact offline optimum by DP over trips.

    A card is only ever worth buying at a trip time, so the DP either pays
    the next trip full price or buys a card there covering every trip in
    its validity window.
    """
    times = instance.trip_times
    m = len(times)
    if m > 10_000:
        raise BahncardSizeError(f"offline DP supports at most 1e4 trips, got {m}")
    beta, big_b, validity = instance.beta, instance.card_cost, instance.validity

    opt = [0.0] * (m + 1)
    buy = [False] * m
    cover = [0] * m
    for i in range(m - 1, -1, -1):
        k = bisect_right(times, times[i] + validity) - i
        cover[i] = k
        pay = 1.0 + opt[i + 1]
        card = big_b + beta * k + opt[i + k]
        if card < pay:
            opt[i] = card
            buy[i] = True
        else:
            opt[i] = pay

    cards = []
    i = 0
    while i < m:
        if buy[i]:
            cards.append(times[i])
            i += cover[i]
        else:
            i += 1
    return opt[0], tuple(cards)


def check_bahncard_dual(
    run: BahncardRun,
    instance: BahncardInstance,
    lam: float,
    eps: EpsilonPolicy = DEFAULT_EPS,
) -> tuple[float, bool]:
    """Max card-window dual load over card cost, against the 1+(1-beta)/B scale.

    Also verifies the per-trip box constraints (c_j <= 1, c_j - b_j <= beta),
    which the update rules satisfy by construction.
    """
    del lam  # the feasibility scale does not depend on the trust parameter
    tol = eps.coverage_eps
    box_ok = all(c <= 1.0 + tol for c in run.c) and all(
        c - b <= instance.beta + tol for c, b in zip(run.c, run.b)
    )
    times = instance.trip_times
    b_vals = run.b
    max_load = 0.0
    candidates = set(times) | {t - instance.validity for t in times}
    for t0 in candidates:
        lo = bisect_left(times, t0)
        hi = bisect_right(times, t0 + instance.validity)
        load = sum(b_vals[lo:hi])
        max_load = max(max_load, load)
    scale_needed = max_load / instance.card_cost
    ok = box_ok and scale_needed <= 1.0 + (1.0 - instance.beta) / instance.card_cost + tol
    return scale_needed, ok


@dataclass(frozen=True)
class BahncardBounds:
    consistency_bound: float
    robustness_bound: float
    s_cost: float
    opt: float
    interval_ratio: float
    out_ratio: float


def bahncard_bounds(
    instance: BahncardInstance, prediction: BahncardPrediction, lam: float
) -> BahncardBounds:
    """Finite-B bounds built from the per-interval and per-update ratios.

    Consistency charges each predicted validity interval at the exact
    ceiling ratio n/(B+beta*n) * (e(lam)-beta)/(e(lam)-1) with
    n = ceil(lam*B/(1-beta)), and each unpredicted trip at
    (e(1/lam)-beta)/(e(1/lam)-1).  Robustness multiplies OPT by the worst
    per-update primal/dual ratio and the dual feasibility scale.
    """
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")
    if instance.beta >= 1.0:
        raise DegenerateParameterError("bounds are undefined at beta = 1")
    beta, big_b, validity = instance.beta, instance.card_cost, instance.validity
    prediction = normalize_prediction(prediction, validity)
    e_big, e_small, n_big = _rate_constants(big_b, beta, lam)

    big_ratio = (e_big - beta) / (e_big - 1.0)
    small_cost = (e_small - beta) / (e_small - 1.0)
    small_ratio = small_cost / (lam + beta - beta * lam)
    interval_ratio = n_big / (big_b + beta * n_big) * big_ratio

    times = instance.trip_times
    s_cost = 0.0
    covered = 0
    m_counts = []
    for start in prediction.card_times:
        lo = bisect_left(times, start)
        hi = bisect_right(times, start + validity)
        m_i = hi - lo
        m_counts.append(m_i)
        covered += m_i
        s_cost += big_b + beta * m_i
    uncovered = len(times) - covered
    s_cost += uncovered

    consistency = interval_ratio * sum(big_b + beta * m for m in m_counts) + small_cost * uncovered

    opt, _ = offline_opt_bahncard(instance)
    robustness = max(big_ratio, small_ratio) * (1.0 + (1.0 - beta) / big_b) * opt
    return BahncardBounds(consistency, robustness, s_cost, opt, interval_ratio, small_cost)


def round_bahncard(run: BahncardRun, rng: np.random.Generator) -> float:
    """One randomized threshold rounding of a completed run."""
    return float(round_bahncard_batch(run, 1, rng)[0])


def round_bahncard_batch(run: BahncardRun, n_samples: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized threshold roundings.

    Cards are bought where the cumulative card mass crosses p+k; each trip
    pays beta when a crossing lands inside its lookback window, else full
    price.  Buying cost is unbiased; expected ticket cost is at most the
    fractional ticket cost.
    """
    p = rng.random(n_samples)
    instance = run.instance
    support = sorted(run.x.items())
    times = [t for t, _ in support]
    csum = np.cumsum([v for _, v in support]) if support else np.asarray([])
    total = float(csum[-1]) if len(csum) else 0.0

    cards = np.where(p <= total, np.floor(total - p) + 1.0, 0.0)
    cost = instance.card_cost * cards
    for t in instance.trip_times:
        lo = bisect_left(times, t - instance.validity)
        hi = bisect_right(times, t)
        upper = csum[hi - 1] if hi > 0 else 0.0
        lower = csum[lo - 1] if lo > 0 else 0.0
        crossed = np.floor(upper - p) > np.floor(lower - p)
        cost += np.where(crossed, instance.beta, 1.0)
    return cost
