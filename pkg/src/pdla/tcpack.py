"""Learning-augmented primal-dual dynamic TCP acknowledgement.

Packets arrive over discrete time steps; the runner grows a monotone
fractional ack variable per step, using the aggressive rate for packets
the predicted schedule has already acknowledged and the cautious rate
otherwise.  Includes the exact offline optimum (quadratic DP over
distinct arrival steps), prediction cost accounting, the scaled
dual-feasibility check, the finite-granularity bound formulas, and the
lossless threshold rounding.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .core import CostLedger, DEFAULT_EPS, EpsilonPolicy, MonotoneVarStore, snap_ceil

__all__ = [
    "TcpInstance",
    "TcpPrediction",
    "TcpRun",
    "TcpEventLog",
    "TcpBounds",
    "PredictionCost",
    "TcpSizeError",
    "alpha",
    "run_pdla_tcp",
    "run_online_tcp",
    "offline_opt_tcp",
    "prediction_cost_tcp",
    "check_tcp_dual",
    "tcp_bounds",
    "round_tcp",
    "round_tcp_batch",
]


class TcpSizeError(ValueError):
    """Instance exceeds an oracle's size cap."""


@dataclass(frozen=True)
class TcpInstance:
    """``counts[i]`` packets arrive at step i; latency costs 1/d per step."""

    counts: tuple[int, ...]
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"subdivision d must be >= 1, got {self.d}")
        if any(c < 0 for c in self.counts):
            raise ValueError("packet counts must be nonnegative")

    @staticmethod
    def make(counts, d: int) -> "TcpInstance":
        return TcpInstance(tuple(int(c) for c in counts), d)

    @property
    def horizon(self) -> int:
        return len(self.counts)

    @property
    def n_packets(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class TcpPrediction:
    """Strictly increasing time steps at which the advice sends an ack."""

    ack_times: tuple[int, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.ack_times, self.ack_times[1:])):
            raise ValueError("ack times must be strictly increasing")

    @staticmethod
    def make(ack_times) -> "TcpPrediction":
        return TcpPrediction(tuple(int(t) for t in ack_times))


def alpha(prediction: TcpPrediction, t: int) -> float:
    """Next predicted ack time >= t, or +inf if the advice never acks again."""
    i = bisect_left(prediction.ack_times, t)
    if i == len(prediction.ack_times):
        return math.inf
    return float(prediction.ack_times[i])


@dataclass
class TcpEventLog:
    """Per-update records in execution order (parallel lists).

    ``x_pre`` is the total fractional ack mass just before the update and
    ``arrival_mass`` that total when the packet's window opened; the
    threshold rounding replays crossings from these two columns.
    """

    packet: list[int] = field(default_factory=list)
    arrival: list[int] = field(default_factory=list)
    time: list[int] = field(default_factory=list)
    f: list[float] = field(default_factory=list)
    y: list[float] = field(default_factory=list)
    big: list[bool] = field(default_factory=list)
    x_pre: list[float] = field(default_factory=list)
    arrival_mass: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.packet)

    def f_map(self) -> dict[tuple[int, int], float]:
        return {(j, t): v for j, t, v in zip(self.packet, self.time, self.f)}

    def y_map(self) -> dict[tuple[int, int], float]:
        return {(j, t): v for j, t, v in zip(self.packet, self.time, self.y)}


@dataclass
class TcpRun:
    x: MonotoneVarStore
    ledger: CostLedger
    update_counts: tuple[int, int]  # (big, small)
    events: TcpEventLog
    big_updates_per_ack: dict[int, int]
    steps_processed: int
    d: int


def run_pdla_tcp(
    instance: TcpInstance,
    prediction: TcpPrediction,
    lam: float,
    eps: EpsilonPolicy = DEFAULT_EPS,
) -> TcpRun:
    """Run the prediction-guided primal-dual acknowledgement algorithm.

    Time advances step by step; every live packet whose window mass is
    below 1 forces one update of the current step's ack variable.  Live
    packets are scanned in arrival order and re-read the step's mass, so
    an update may cover the packets behind it within the same step.  Time
    keeps advancing past the last arrival until every packet is covered.
    """
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")
    d = instance.d
    a_log = d * math.log1p(1.0 / d)
    inv_big = 1.0 / math.expm1(lam * a_log)  # 1/(e(lam)-1)
    inv_small = 1.0 / math.expm1(a_log / lam)  # 1/(e(1/lam)-1)
    y_big = 1.0 / d
    y_small = lam / d
    inv_d = 1.0 / d
    threshold = 1.0 - eps.coverage_eps

    x = MonotoneVarStore()
    ledger = CostLedger()
    events = TcpEventLog()
    per_ack: dict[int, int] = {}
    n_big = n_small = 0

    alpha_cache: dict[int, float] = {}
    live: list[tuple[int, int, float, float]] = []  # (packet, arrival, alpha, arrival_mass)
    global_mass = 0.0
    next_packet = 0
    horizon = instance.horizon
    max_steps = horizon + snap_ceil(d / lam) + 2

    t = 0
    while t < horizon or live:
        if t > max_steps:
            raise RuntimeError("grace period exceeded; coverage should have completed")
        if t < horizon and instance.counts[t]:
            a_t = alpha_cache.get(t)
            if a_t is None:
                a_t = alpha(prediction, t)
                alpha_cache[t] = a_t
            for _ in range(instance.counts[t]):
                live.append((next_packet, t, a_t, global_mass))
                next_packet += 1

        step_mass = 0.0
        survivors: list[tuple[int, int, float, float]] = []
        for entry in live:
            packet, arrival, a_j, base = entry
            window = global_mass + step_mass - base
            if window >= threshold:
                continue  # covered; drops out of the live set
            big = t >= a_j
            if big:
                inc = inv_big
                y_val = y_big
                n_big += 1
                key = int(a_j)
                per_ack[key] = per_ack.get(key, 0) + 1
                charged = True
            else:
                inc = inv_small
                y_val = y_small
                n_small += 1
                charged = a_j != math.inf
            f_val = 1.0 - window
            delta = inv_d * (window + inc)
            events.packet.append(packet)
            events.arrival.append(arrival)
            events.time.append(t)
            events.f.append(f_val)
            events.y.append(y_val)
            events.big.append(big)
            events.x_pre.append(global_mass + step_mass)
            events.arrival_mass.append(base)
            ledger.add_primal(inv_d * f_val + delta, charged=charged)
            ledger.add_dual(y_val)
            step_mass += delta
            survivors.append(entry)
        if step_mass > 0.0:
            x.add(t, step_mass)
            global_mass += step_mass
        live = survivors
        t += 1

    return TcpRun(x, ledger, (n_big, n_small), events, per_ack, t, d)


def run_online_tcp(instance: TcpInstance, eps: EpsilonPolicy = DEFAULT_EPS) -> TcpRun:
    """Pure online baseline (single rate constant, unscaled duals)."""
    return run_pdla_tcp(instance, TcpPrediction(()), 1.0, eps)


def offline_opt_tcp(instance: TcpInstance) -> tuple[float, tuple[int, ...]]:
    """Exact offline optimum: DP over distinct arrival steps.

    An optimal schedule acks only at arrival steps; the DP picks, for each
    suffix of arrival groups, the step of the next ack.  Quadratic in the
    number of distinct arrival steps (capped at 1e5), vectorized per row.
    """
    steps = [s for s, c in enumerate(instance.counts) if c > 0]
    if len(steps) > 100_000:
        raise TcpSizeError(f"offline DP supports at most 1e5 distinct arrival steps, got {len(steps)}")
    if not steps:
        return 0.0, ()
    k = len(steps)
    s = np.asarray(steps, dtype=np.float64)
    n = np.asarray([instance.counts[i] for i in steps], dtype=np.float64)
    pn = np.cumsum(n)
    pw = np.cumsum(n * s)
    d = float(instance.d)

    opt = np.zeros(k + 1)
    choice = np.zeros(k, dtype=np.int64)
    for i in range(k - 1, -1, -1):
        pn_before = pn[i - 1] if i > 0 else 0.0
        pw_before = pw[i - 1] if i > 0 else 0.0
        latency = (s[i:] * (pn[i:] - pn_before) - (pw[i:] - pw_before)) / d
        cand = 1.0 + latency + opt[i + 1 :]
        m = int(np.argmin(cand))
        opt[i] = cand[m]
        choice[i] = i + m

    acks = []
    i = 0
    while i < k:
        m = choice[i]
        acks.append(steps[m])
        i = m + 1
    return float(opt[0]), tuple(acks)


@dataclass(frozen=True)
class PredictionCost:
    n_acks: int
    latency: float
    s_cost: float | None
    covers_all: bool


def prediction_cost_tcp(instance: TcpInstance, prediction: TcpPrediction) -> PredictionCost:
    """Acks sent and latency paid when the advice is followed blindly.

    The blind-following cost is undefined (None) when some packet is never
    acknowledged by the advice; latency then sums only the covered packets.
    """
    latency = 0.0
    covers_all = True
    for step, count in enumerate(instance.counts):
        if count == 0:
            continue
        a = alpha(prediction, step)
        if a == math.inf:
            covers_all = False
        else:
            latency += count * (a - step) / instance.d
    n_acks = len(prediction.ack_times)
    s_cost = n_acks + latency if covers_all else None
    return PredictionCost(n_acks, latency, s_cost, covers_all)


def check_tcp_dual(
    run: TcpRun, instance: TcpInstance, eps: EpsilonPolicy = DEFAULT_EPS
) -> tuple[float, bool]:
    """Max over times t of the dual load sum_{j arrived by t} sum_{t' >= t} y_jt'.

    The built dual stays within a (1+1/d) factor of feasibility.
    """
    if not len(run.events):
        return 0.0, True
    top = run.steps_processed + 1
    diff = np.zeros(top + 1)
    arr = np.asarray(run.events.arrival)
    upd = np.asarray(run.events.time)
    y = np.asarray(run.events.y)
    np.add.at(diff, arr, y)
    np.add.at(diff, upd + 1, -y)
    load = float(np.max(np.cumsum(diff)))
    return load, load <= 1.0 + 1.0 / run.d + eps.coverage_eps


@dataclass(frozen=True)
class TcpBounds:
    consistency_bound: float
    robustness_bound: float
    opt: float
    s_cost: float | None


def tcp_bounds(
    run: TcpRun | None,
    instance: TcpInstance,
    prediction: TcpPrediction,
    lam: float,
) -> TcpBounds:
    """Finite-granularity consistency and robustness bounds.

    Consistency: n_acks * (ceil(lam d)/d)/(1-e(-lam)) plus latency/(1-e(-1/lam)),
    infinite when the advice never covers some packet.  Robustness:
    (1+1/d)/(1-e(-lam)) * OPT, the (1+1/d) being the dual scaling factor.
    """
    del run  # bounds depend only on the inputs
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam!r}")
    d = instance.d
    a_log = d * math.log1p(1.0 / d)
    one_minus_big = -math.expm1(-lam * a_log)  # 1 - e(-lam)
    one_minus_small = -math.expm1(-a_log / lam)  # 1 - e(-1/lam)

    pred = prediction_cost_tcp(instance, prediction)
    if pred.covers_all:
        consistency = (
            pred.n_acks * (snap_ceil(lam * d) / d) / one_minus_big
            + pred.latency / one_minus_small
        )
    else:
        consistency = math.inf

    opt, _ = offline_opt_tcp(instance)
    robustness = (1.0 + 1.0 / d) * opt / one_minus_big
    return TcpBounds(consistency, robustness, opt, pred.s_cost)


def round_tcp(run: TcpRun, rng: np.random.Generator) -> float:
    """One randomized threshold rounding of a completed run.

    Acks fire whenever the cumulative ack mass crosses p+k; a packet pays
    1/d at each of its fractional latency events until a crossing lands
    inside its window.  Expected cost equals the fractional cost.
    """
    return float(round_tcp_batch(run, 1, rng)[0])


def round_tcp_batch(run: TcpRun, n_samples: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized i.i.d. threshold roundings (chunked over samples)."""
    p = rng.random(n_samples)
    total_mass = run.x.total()
    acks = np.where(p <= total_mass, np.floor(total_mass - p) + 1.0, 0.0)
    if not len(run.events):
        return acks
    x_pre = np.asarray(run.events.x_pre)
    base = np.asarray(run.events.arrival_mass)
    out = acks
    inv_d = 1.0 / run.d
    chunk = max(1, 4_000_000 // max(1, len(x_pre)))
    for lo in range(0, n_samples, chunk):
        pc = p[lo : lo + chunk, None]
        pays = np.floor(x_pre[None, :] - pc) == np.floor(base[None, :] - pc)
        out[lo : lo + chunk] += inv_d * pays.sum(axis=1)
    return out
