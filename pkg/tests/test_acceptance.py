"""Acceptance suite: every promised bound, ordering, and equivalence at its
stated tolerance.  Each criterion prints one PASS/FAIL line (run with -s to
see them on success).
"""

import math
import time

import pytest

from pdla.cli import SweepSpec, run_sweep
from pdla.core import SeededRng
from pdla.skirental import SkiInstance, SkiPrediction, round_ski_batch, run_pdla_ski
from pdla.tcpack import TcpInstance, TcpPrediction, round_tcp_batch, run_pdla_tcp
from pdla.bahncard import BahncardInstance, BahncardPrediction, round_bahncard_batch, run_pdla_bahncard
from pdla.verify import (
    certificate_failures,
    dual_suite_failures,
    lemma12_grid_failures,
    lemma13_exhaustive_failures,
    oracle_agreement_failures,
    ski_grid_failures,
)

PAPER_ROBUSTNESS = {1.0: 1.58, 0.8: 1.68, 0.6: 2.21, 0.4: 3.03}
SWEEP_BUDGET_SECONDS = 600.0


def report(name: str, failures: list[str]) -> None:
    ok = not failures
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'}: {name}")
    assert ok, f"{name}: " + " | ".join(failures[:6])


@pytest.fixture(scope="module")
def sweep():
    spec = SweepSpec()  # the full grid: 3 distributions x 4 lambdas x 11 rates x 10 trials
    start = time.perf_counter()
    rows = run_sweep(spec)
    elapsed = time.perf_counter() - start
    return spec, rows, elapsed


def mean_ratios(rows, dist: str, lam: float) -> dict[float, float]:
    out: dict[float, list[float]] = {}
    for r in rows:
        if r.dist == dist and r.lam == lam:
            out.setdefault(r.replacement_rate, []).append(r.ratio)
    return {p: sum(v) / len(v) for p, v in sorted(out.items())}


def test_tcp_robustness_envelope(sweep):
    spec, rows, elapsed = sweep
    failures = []
    d = spec.d
    a_log = d * math.log1p(1.0 / d)
    for r in rows:
        finite_bound = (1.0 + 1.0 / d) / -math.expm1(-r.lam * a_log)
        if r.ratio > finite_bound + 1e-9:
            failures.append(f"{r.dist} lam={r.lam} p={r.replacement_rate} trial={r.trial}: ratio {r.ratio} > {finite_bound}")
        paper_cap = PAPER_ROBUSTNESS[r.lam] * (1.0 + 2.0 / d)
        if r.ratio > paper_cap:
            failures.append(f"{r.dist} lam={r.lam} p={r.replacement_rate} trial={r.trial}: ratio {r.ratio} > paper cap {paper_cap}")
    if elapsed > SWEEP_BUDGET_SECONDS:
        failures.append(f"sweep took {elapsed:.1f}s > {SWEEP_BUDGET_SECONDS}s budget")
    report("tcp robustness envelope and runtime budget", failures)


def test_tcp_consistency_at_perfect_prediction(sweep):
    spec, rows, _ = sweep
    failures = []
    for dist in spec.dists:
        low_by_p = mean_ratios(rows, dist, 0.4)
        low = low_by_p[0.0]
        high = mean_ratios(rows, dist, 1.0)[0.0]
        if not low < high:
            failures.append(f"{dist}: mean ratio lam=0.4 ({low}) !< lam=1 ({high}) at p=0")
        if any(low > v + 1e-12 for v in low_by_p.values()):
            failures.append(f"{dist}: lam=0.4 mean ratio at p=0 is not the row minimum")
    for r in rows:
        if r.alg_cost > r.consistency_bound * (1.0 + 1e-9):
            failures.append(
                f"consistency bound violated: {r.dist} lam={r.lam} p={r.replacement_rate} "
                f"trial={r.trial}: {r.alg_cost} > {r.consistency_bound}"
            )
    report("tcp consistency at p=0 and per-trial consistency bound", failures)


def test_smooth_degradation(sweep):
    spec, rows, _ = sweep
    failures = []
    for dist in spec.dists:
        for lam in (0.4, 0.6, 0.8):
            means = list(mean_ratios(rows, dist, lam).values())
            for i in range(len(means) - 1):
                drop = means[i] - means[i + 1]
                if drop > 0.05:
                    failures.append(f"{dist} lam={lam}: mean ratio drops {drop:.4f} from p index {i}")
    report("smooth degradation (bounded backslide 0.05)", failures)


def test_lambda_one_ignores_prediction(sweep):
    # the lam = 1 rows must be exactly flat across replacement rates
    spec, rows, _ = sweep
    failures = []
    costs: dict[tuple, set] = {}
    for r in rows:
        if r.lam == 1.0:
            costs.setdefault((r.dist, r.trial), set()).add(r.alg_cost)
    for key, vals in costs.items():
        if len(vals) != 1:
            failures.append(f"lam=1 costs vary across p for {key}: {sorted(vals)[:3]}...")
    report("lambda=1 curve exactly flat in replacement rate", failures)


def test_ski_rental_exact_bounds():
    report("ski rental exhaustive bound grid and lam=1 trace", ski_grid_failures(tol=1e-9))


def test_lower_bound_certificate():
    report(
        "lower-bound certificate feasibility and objective",
        certificate_failures(grid_points=100_000, max_violation=1e-6, objective_rtol=1e-8),
    )


def test_dual_feasibility_suite():
    report("dual feasibility on 200 random instances per problem", dual_suite_failures(trials=200))


def test_oracle_equivalence():
    report("oracle equivalence dp vs brute force (200 per problem)", oracle_agreement_failures(trials=200))


def test_rounding_unbiasedness():
    failures = []
    n = 100_000

    ski_run = run_pdla_ski(SkiInstance(150, 60), SkiPrediction(90), 0.55)
    samples = round_ski_batch(ski_run, n, SeededRng(8_001, 0).generator())
    sigma = samples.std() / math.sqrt(n)
    if abs(samples.mean() - ski_run.ledger.primal_total) > 3.0 * sigma:
        failures.append(
            f"ski mc mean {samples.mean()} vs fractional {ski_run.ledger.primal_total} (3 sigma {3*sigma})"
        )

    tcp_inst = TcpInstance.make([2, 0, 1, 0, 0, 3, 0, 1, 1], 10)
    tcp_run = run_pdla_tcp(tcp_inst, TcpPrediction.make([2, 8]), 0.6)
    samples = round_tcp_batch(tcp_run, n, SeededRng(8_002, 0).generator())
    sigma = samples.std() / math.sqrt(n)
    if abs(samples.mean() - tcp_run.ledger.primal_total) > 3.0 * sigma:
        failures.append(
            f"tcp mc mean {samples.mean()} vs fractional {tcp_run.ledger.primal_total} (3 sigma {3*sigma})"
        )

    bc_inst = BahncardInstance.make([0, 1, 4, 4, 9, 15, 16, 21], 3.0, 0.4, 6)
    bc_run = run_pdla_bahncard(bc_inst, BahncardPrediction.make([2, 14]), 0.6)
    samples = round_bahncard_batch(bc_run, n, SeededRng(8_003, 0).generator())
    sigma = samples.std() / math.sqrt(n)
    if samples.mean() > bc_run.ledger.primal_total + 3.0 * sigma:
        failures.append(
            f"bahncard mc mean {samples.mean()} exceeds fractional {bc_run.ledger.primal_total} + 3 sigma"
        )
    report("rounding unbiasedness (ski, tcp exact; bahncard one-sided)", failures)


def test_rate_inequality_grid():
    report("rate inequalities on the dense parameter grid", lemma12_grid_failures(eps=1e-9))


def test_sequence_bound_exhaustive():
    report("two-rate sequence bound, exhaustive words up to length 12", lemma13_exhaustive_failures())
