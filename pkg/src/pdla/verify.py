"""Invariant suites shared by ``pdla verify`` and the acceptance tests.

Each suite returns a list of human-readable failure strings (empty means
pass) so callers can both assert and print.  Random instances use pinned
streams, so every suite is reproducible.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from . import bahncard as bc
from . import oracles
from . import setcover as sc
from . import skirental as sk
from . import tcpack as tcp
from .core import SeededRng, check_lemma12, check_lemma13, snap_ceil

__all__ = [
    "lemma12_grid_failures",
    "lemma13_exhaustive_failures",
    "certificate_failures",
    "oracle_agreement_failures",
    "dual_suite_failures",
    "ski_grid_failures",
    "random_cover_instance",
    "random_cover_prediction",
    "random_tcp_instance",
    "random_tcp_prediction",
    "random_bahncard_instance",
    "random_bahncard_prediction",
]

LAMBDA_GRID = tuple(round(0.1 * i, 10) for i in range(1, 11))


# ---------------------------------------------------------------------------
# rate-inequality and sequence-bound suites


def lemma12_grid_failures(eps: float = 1e-9) -> list[str]:
    """Dense (lambda, d, beta) grid for the six rate inequalities."""
    failures = []
    lams = [round(0.01 * i, 10) for i in range(1, 101)]
    ds = [1.0, 2.0, 5.0, 10.0, 100.0, 10_000.0]
    betas = [round(0.1 * i, 10) for i in range(11)]
    for lam, d, beta in product(lams, ds, betas):
        res = check_lemma12(lam, d, beta, eps)
        if not res.all_hold():
            bad = [i + 1 for i, ok in enumerate(res.holds) if not ok]
            failures.append(f"lemma12 failed inequalities {bad} at lam={lam} d={d} beta={beta}")
    return failures


def lemma13_exhaustive_failures(max_len: int = 12, eps: float = 1e-9) -> list[str]:
    """Every word up to ``max_len`` over the stated (d, lambda, s0) grid."""
    failures = []
    words: list[str] = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + ch for w in frontier for ch in "ab"]
        words.extend(frontier)
    for d in range(1, 9):
        for lam in (0.25, 0.5, 0.75, 1.0):
            for s0 in (0.0, 0.1, 0.5):
                for word in words:
                    value, ok = check_lemma13(s0, word, lam, float(d), eps)
                    if not ok:
                        failures.append(
                            f"lemma13 failed at d={d} lam={lam} s0={s0} word={word!r} value={value}"
                        )
                        if len(failures) > 20:
                            return failures
    return failures


def certificate_failures(
    grid_points: int = 100_000,
    max_violation: float = 1e-6,
    objective_rtol: float = 1e-8,
) -> list[str]:
    """Lower-bound certificates across the lambda grid."""
    failures = []
    for lam in LAMBDA_GRID:
        cert = sk.verify_lower_bound_certificate(lam, grid_points)
        expected = 1.0 / -math.expm1(-lam)
        if cert.max_constraint_violation > max_violation:
            failures.append(
                f"certificate at lam={lam}: violation {cert.max_constraint_violation:.3e}"
            )
        if abs(cert.dual_objective - expected) > objective_rtol * expected:
            failures.append(
                f"certificate at lam={lam}: objective {cert.dual_objective!r} != {expected!r}"
            )
    return failures


# ---------------------------------------------------------------------------
# random small instances


def random_cover_instance(rng: np.random.Generator, max_sets: int = 8) -> sc.CoverInstance:
    n = int(rng.integers(1, 9))
    m = int(rng.integers(1, max_sets + 1))
    sets = []
    for _ in range(m):
        size = int(rng.integers(1, n + 1))
        elems = frozenset(int(e) for e in rng.choice(n, size=size, replace=False))
        sets.append((float(np.round(rng.uniform(1.0, 5.0), 3)), elems))
    covered = sorted(set().union(*(e for _, e in sets)))
    k = int(rng.integers(1, len(covered) + 1))
    arrivals = [covered[i] for i in rng.permutation(len(covered))[:k]]
    return sc.CoverInstance.make(n, sets, arrivals)


def random_cover_prediction(rng: np.random.Generator, instance: sc.CoverInstance) -> sc.CoverPrediction:
    m = len(instance.sets)
    mask = rng.random(m) < 0.5
    return sc.CoverPrediction.make(i for i in range(m) if mask[i])


def random_tcp_instance(rng: np.random.Generator, max_distinct: int = 12) -> tcp.TcpInstance:
    length = int(rng.integers(2, 31))
    k = int(rng.integers(1, min(max_distinct, length) + 1))
    steps = sorted(int(s) for s in rng.choice(length, size=k, replace=False))
    counts = [0] * length
    for s in steps:
        counts[s] = int(rng.integers(1, 4))
    d = int(rng.choice([5, 10, 100]))
    return tcp.TcpInstance.make(counts, d)


def random_tcp_prediction(rng: np.random.Generator, instance: tcp.TcpInstance) -> tcp.TcpPrediction:
    horizon = instance.horizon
    k = int(rng.integers(0, 5))
    acks = sorted(set(int(a) for a in rng.choice(horizon, size=min(k, horizon), replace=False)))
    if rng.random() < 0.7:
        acks = sorted(set(acks) | {horizon - 1})
    return tcp.TcpPrediction.make(acks)


def random_bahncard_instance(rng: np.random.Generator, max_trips: int = 12) -> bc.BahncardInstance:
    m = int(rng.integers(1, max_trips + 1))
    times = sorted(int(t) for t in rng.integers(0, 40, size=m))
    card_cost = float(np.round(rng.uniform(0.5, 4.0), 3))
    beta = float(rng.choice([0.0, 0.25, 0.5, 0.9]))
    validity = int(rng.integers(1, 11))
    return bc.BahncardInstance.make(times, card_cost, beta, validity)


def random_bahncard_prediction(
    rng: np.random.Generator, instance: bc.BahncardInstance
) -> bc.BahncardPrediction:
    k = int(rng.integers(0, 4))
    times = sorted(set(int(t) for t in rng.integers(0, 45, size=k)))
    return bc.BahncardPrediction.make(times)


# ---------------------------------------------------------------------------
# oracle cross-checks


def oracle_agreement_failures(
    trials: int = 200, seed: int = 20_240_901, atol: float = 1e-9
) -> list[str]:
    """DP optima against unpruned enumeration on random small instances."""
    failures = []
    rng = SeededRng(seed, 1).generator()
    for i in range(trials):
        inst = random_tcp_instance(rng)
        a, _ = tcp.offline_opt_tcp(inst)
        b = oracles.brute_force_tcp(inst)
        if abs(a - b) > atol:
            failures.append(f"tcp oracle mismatch on trial {i}: dp={a!r} brute={b!r}")
    rng = SeededRng(seed, 2).generator()
    for i in range(trials):
        inst = random_bahncard_instance(rng)
        a, _ = bc.offline_opt_bahncard(inst)
        b = oracles.brute_force_bahncard(inst)
        if abs(a - b) > atol:
            failures.append(f"bahncard oracle mismatch on trial {i}: dp={a!r} brute={b!r}")
    rng = SeededRng(seed, 3).generator()
    for i in range(trials):
        inst = random_cover_instance(rng, max_sets=10)
        a, _ = sc.offline_opt_setcover_brute(inst)
        b = oracles.brute_force_setcover(inst)
        if abs(a - b) > atol:
            failures.append(f"setcover oracle mismatch on trial {i}: bb={a!r} brute={b!r}")
    return failures


# ---------------------------------------------------------------------------
# dual-feasibility suites


def dual_suite_failures(
    trials: int = 200, lambdas=(0.1, 0.5, 1.0), seed: int = 77_003
) -> list[str]:
    """Dual feasibility of every run across random instances and lambdas."""
    failures = []

    rng = SeededRng(seed, 10).generator()
    for i in range(trials):
        inst = random_cover_instance(rng)
        pred = random_cover_prediction(rng, inst)
        for lam in lambdas:
            run = sc.run_pdla_setcover(inst, pred, lam)
            factor, ok = sc.check_cover_dual_feasibility(run, inst, lam)
            if not ok:
                failures.append(f"setcover dual factor {factor} at trial {i} lam={lam}")

    rng = SeededRng(seed, 11).generator()
    for i in range(trials):
        n_days = int(rng.integers(0, 40))
        buy = int(rng.integers(1, 15))
        n_pred = int(rng.integers(0, 40))
        inst = sk.SkiInstance(n_days, buy)
        pred = sk.SkiPrediction(n_pred)
        for lam in lambdas:
            run = sk.run_pdla_ski(inst, pred, lam)
            if sum(run.y) > buy + run.c_prime + 1e-9:
                failures.append(f"ski dual sum {sum(run.y)} > B+c' at trial {i} lam={lam}")

    rng = SeededRng(seed, 12).generator()
    for i in range(trials):
        inst = random_tcp_instance(rng)
        pred = random_tcp_prediction(rng, inst)
        for lam in lambdas:
            run = tcp.run_pdla_tcp(inst, pred, lam)
            scale, ok = tcp.check_tcp_dual(run, inst)
            if not ok:
                failures.append(f"tcp dual scale {scale} at trial {i} lam={lam}")

    rng = SeededRng(seed, 13).generator()
    for i in range(trials):
        inst = random_bahncard_instance(rng)
        pred = random_bahncard_prediction(rng, inst)
        for lam in lambdas:
            run = bc.run_pdla_bahncard(inst, pred, lam)
            scale, ok = bc.check_bahncard_dual(run, inst, lam)
            if not ok:
                failures.append(f"bahncard dual scale {scale} at trial {i} lam={lam}")
    return failures


# ---------------------------------------------------------------------------
# ski exhaustive bound grid


def ski_grid_failures(tol: float = 1e-9) -> list[str]:
    """Exhaustive finite-B bound check plus the lam=1 trace equality."""
    failures = []
    for b in (1, 2, 10, 100):
        preds = sorted({0, max(0, b - 1), b, 3 * b})
        for lam in LAMBDA_GRID:
            for n_pred in preds:
                pred = sk.SkiPrediction(n_pred)
                for n_days in range(0, 3 * b + 1):
                    inst = sk.SkiInstance(n_days, b)
                    run = sk.run_pdla_ski(inst, pred, lam)
                    cost = run.ledger.primal_total
                    bounds = sk.ski_bounds(inst, pred, lam)
                    cap = min(bounds.consistency_bound, bounds.robustness_bound)
                    if cost > cap + tol:
                        failures.append(
                            f"ski bound violated at B={b} N={n_days} n_pred={n_pred} "
                            f"lam={lam}: cost={cost!r} cap={cap!r}"
                        )
                    expected_updates = min(
                        n_days,
                        snap_ceil(lam * b) if n_pred >= b else snap_ceil(b / lam),
                    )
                    if run.n_updates != expected_updates:
                        failures.append(
                            f"ski update count {run.n_updates} != {expected_updates} "
                            f"at B={b} N={n_days} n_pred={n_pred} lam={lam}"
                        )
        # lam = 1 trace equality against the pure online baseline
        for n_days in range(0, 3 * b + 1):
            inst = sk.SkiInstance(n_days, b)
            for n_pred in preds:
                guided = sk.run_pdla_ski(inst, sk.SkiPrediction(n_pred), 1.0)
                online = sk.run_online_ski(inst)
                if guided.x_after_day != online.x_after_day or guided.f != online.f:
                    failures.append(f"ski lam=1 trace differs at B={b} N={n_days} n_pred={n_pred}")
    return failures
