"""Command-line harness: run single instances, sweep the experiment grid,
verify the invariant suites, and generate random instances.

Commands
--------
``pdla run --problem P --instance FILE [--prediction FILE] --lam L [--seed S]``
    Execute one run, print a JSON report, exit 0 iff every check passed.
``pdla sweep --dist D --out CSV [...]``
    Competitive-ratio sweep over (lambda, replacement rate, trial) cells;
    writes a row CSV plus an aggregate CSV of per-cell mean ratios.
``pdla verify --scope {lemmas,certificates,oracles,duals,all}``
    Run the numeric invariant suites at pinned seeds.
``pdla generate --dist D --length N --d D --seed S [--replacement-rate P]``
    Emit an instance (and optionally a perturbed prediction) as JSON.

The sweep is reproducible cell by cell: the instance stream depends only
on (base seed, distribution, trial) and the noise stream additionally on
the replacement-rate index, so lambda never affects the draws and the
lambda=1 rows are exactly flat across replacement rates.  ``PDLA_THREADS``
caps the process pool (1 disables it); rows are always written in grid
order.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bahncard as bc
from . import setcover as sc
from . import skirental as sk
from . import tcpack as tcp
from . import verify
from .core import SeededRng, snap_ceil
from .instancegen import DISTRIBUTIONS, NoiseSpec, generate, make_prediction, perturb

__all__ = ["main", "SweepSpec", "SweepRow", "run_sweep", "build_report"]

CHECK_TOL = 1e-9

DEFAULT_LAMBDAS = (1.0, 0.8, 0.6, 0.4)
DEFAULT_RATES = tuple(round(0.1 * i, 10) for i in range(11))

ROW_COLUMNS = (
    "problem",
    "dist",
    "lambda",
    "replacement_rate",
    "trial",
    "seed",
    "alg_cost",
    "opt_cost",
    "pred_cost",
    "ratio",
    "consistency_bound",
    "robustness_bound",
    "all_checks_ok",
)

AGG_COLUMNS = ("problem", "dist", "lambda", "replacement_rate", "mean_ratio", "trials")


# ---------------------------------------------------------------------------
# single-run reports


def _ratio(cost: float, opt_cost: float | None) -> float | None:
    if opt_cost is None:
        return None
    if opt_cost <= 0.0:
        return 1.0 if cost <= CHECK_TOL else math.inf
    return cost / opt_cost


@dataclass
class RunReport:
    problem: str
    lam: float
    alg_cost: float
    dual_cost: float
    opt_cost: float | None
    pred_cost: float | None
    ratio: float | None
    consistency_bound: float | None
    robustness_bound: float | None
    rounded_cost: float | None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def all_checks_ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> str:
        payload = {
            "problem": self.problem,
            "lambda": self.lam,
            "alg_cost": self.alg_cost,
            "dual_cost": self.dual_cost,
            "opt_cost": self.opt_cost,
            "pred_cost": self.pred_cost,
            "ratio": _json_float(self.ratio),
            "consistency_bound": _json_float(self.consistency_bound),
            "robustness_bound": _json_float(self.robustness_bound),
            "rounded_cost": self.rounded_cost,
            "checks": self.checks,
            "all_checks_ok": self.all_checks_ok,
        }
        return json.dumps(payload, indent=2)


def _json_float(v):
    if v is None:
        return None
    if math.isinf(v):
        return "inf"
    return v


def build_report(problem: str, instance, prediction, lam: float, seed: int) -> RunReport:
    builders = {
        "setcover": _report_setcover,
        "ski": _report_ski,
        "bahncard": _report_bahncard,
        "tcp": _report_tcp,
    }
    return builders[problem](instance, prediction, lam, seed)


def _report_setcover(instance: sc.CoverInstance, prediction: sc.CoverPrediction, lam: float, seed: int) -> RunReport:
    run = sc.run_pdla_setcover(instance, prediction, lam)
    cost = run.ledger.primal_total
    s_cost, feasible = sc.prediction_cost_setcover(instance, prediction)
    opt_cost = None
    if len(instance.sets) <= 24:
        opt_cost, _ = sc.offline_opt_setcover_brute(instance)
    degree = instance.max_degree()
    factor, dual_ok = sc.check_cover_dual_feasibility(run, instance, lam)
    log_bound = math.log2(3.0 * degree / lam + 1.0)

    checks = {
        "primal_feasible": all(
            sum(run.x.get(s) for s in instance.covering_sets(e)) >= 1.0 - 1e-9
            for e in set(instance.arrival_order)
        ),
        "dual_feasible_scaled": dual_ok,
        "x_at_most_3": all(v <= 3.0 + 1e-9 for _, v in run.x.items()),
        "per_iteration_dp_le_2": all(
            rec.dp_charged + rec.dp_uncharged <= 2.0 + 1e-9 for rec in run.iterations
        ),
        "consistency_per_iteration": _setcover_consistency_ok(run, degree, lam),
        "robustness_vs_dual": cost <= 2.0 * run.ledger.dual_total + CHECK_TOL,
        "ledger_decomposition": run.ledger.decomposition_ok(),
    }
    if opt_cost is not None:
        checks["robustness_vs_opt"] = cost <= 2.0 * log_bound * opt_cost + CHECK_TOL
    return RunReport(
        problem="setcover",
        lam=lam,
        alg_cost=cost,
        dual_cost=run.ledger.dual_total,
        opt_cost=opt_cost,
        pred_cost=s_cost if feasible else None,
        ratio=_ratio(cost, opt_cost),
        consistency_bound=None,
        robustness_bound=None if opt_cost is None else 2.0 * log_bound * opt_cost,
        rounded_cost=None,
        checks=checks,
    )


def _setcover_consistency_ok(run: sc.CoverRun, degree: int, lam: float) -> bool:
    factor = (1.0 + lam) / (lam / degree + 1.0 - lam)
    return all(
        rec.dp_uncharged <= factor * rec.dp_charged + CHECK_TOL
        for rec in run.iterations
        if rec.covered_by_prediction
    )


def _report_ski(instance: sk.SkiInstance, prediction: sk.SkiPrediction, lam: float, seed: int) -> RunReport:
    run = sk.run_pdla_ski(instance, prediction, lam)
    bounds = sk.ski_bounds(instance, prediction, lam)
    cost = run.ledger.primal_total
    rounded = sk.round_ski(run, SeededRng(seed, 0).generator())
    cap = min(bounds.consistency_bound, bounds.robustness_bound)
    checks = {
        "dual_within_slack": sum(run.y) <= instance.buy_cost + run.c_prime + CHECK_TOL,
        "cost_within_bounds": cost <= cap + CHECK_TOL,
        "monotone_feasible": all(
            x + f >= 1.0 - 1e-9 for x, f in zip(run.x_after_day, run.f)
        ),
        "ledger_decomposition": run.ledger.decomposition_ok(),
    }
    return RunReport(
        problem="ski",
        lam=lam,
        alg_cost=cost,
        dual_cost=run.ledger.dual_total,
        opt_cost=bounds.opt,
        pred_cost=bounds.s_cost,
        ratio=_ratio(cost, bounds.opt),
        consistency_bound=bounds.consistency_bound,
        robustness_bound=bounds.robustness_bound,
        rounded_cost=rounded,
        checks=checks,
    )


def _report_bahncard(instance: bc.BahncardInstance, prediction: bc.BahncardPrediction, lam: float, seed: int) -> RunReport:
    run = bc.run_pdla_bahncard(instance, prediction, lam)
    bounds = bc.bahncard_bounds(instance, prediction, lam)
    cost = run.ledger.primal_total
    scale, dual_ok = bc.check_bahncard_dual(run, instance, lam)
    rounded = bc.round_bahncard(run, SeededRng(seed, 0).generator())
    interval_ok = all(
        run.per_interval_cost.get(i, 0.0)
        <= bounds.interval_ratio
        * (instance.card_cost + instance.beta * run.trips_per_interval.get(i, 0))
        + CHECK_TOL
        for i in range(len(run.intervals))
    )
    checks = {
        "dual_within_scale": dual_ok,
        "cost_within_consistency": cost <= bounds.consistency_bound + CHECK_TOL,
        "cost_within_robustness": cost <= bounds.robustness_bound + CHECK_TOL,
        "interval_consistency": interval_ok,
        "out_of_interval_cost": all(
            dp <= bounds.out_ratio + CHECK_TOL for dp in run.out_trip_cost.values()
        ),
        "ledger_decomposition": run.ledger.decomposition_ok(),
    }
    return RunReport(
        problem="bahncard",
        lam=lam,
        alg_cost=cost,
        dual_cost=run.ledger.dual_total,
        opt_cost=bounds.opt,
        pred_cost=bounds.s_cost,
        ratio=_ratio(cost, bounds.opt),
        consistency_bound=bounds.consistency_bound,
        robustness_bound=bounds.robustness_bound,
        rounded_cost=rounded,
        checks=checks,
    )


def _report_tcp(instance: tcp.TcpInstance, prediction: tcp.TcpPrediction, lam: float, seed: int) -> RunReport:
    run = tcp.run_pdla_tcp(instance, prediction, lam)
    bounds = tcp.tcp_bounds(run, instance, prediction, lam)
    cost = run.ledger.primal_total
    scale, dual_ok = tcp.check_tcp_dual(run, instance)
    rounded = tcp.round_tcp(run, SeededRng(seed, 0).generator())
    big_cap = snap_ceil(lam * instance.d)
    checks = {
        "dual_within_scale": dual_ok,
        "cost_within_consistency": cost
        <= bounds.consistency_bound * (1.0 + CHECK_TOL) + CHECK_TOL,
        "cost_within_robustness": cost <= bounds.robustness_bound + CHECK_TOL,
        "big_updates_per_ack": all(v <= big_cap for v in run.big_updates_per_ack.values()),
        "ledger_decomposition": run.ledger.decomposition_ok(),
    }
    return RunReport(
        problem="tcp",
        lam=lam,
        alg_cost=cost,
        dual_cost=run.ledger.dual_total,
        opt_cost=bounds.opt,
        pred_cost=bounds.s_cost,
        ratio=_ratio(cost, bounds.opt),
        consistency_bound=bounds.consistency_bound,
        robustness_bound=bounds.robustness_bound,
        rounded_cost=rounded,
        checks=checks,
    )


# ---------------------------------------------------------------------------
# JSON loading


class InputError(ValueError):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def load_instance(problem: str, payload: dict):
    try:
        if problem == "setcover":
            return sc.CoverInstance.make(
                payload["n"],
                [(s["w"], s["elems"]) for s in payload["sets"]],
                payload["arrivals"],
            )
        if problem == "ski":
            return sk.SkiInstance(int(payload["N"]), int(payload["B"]))
        if problem == "bahncard":
            return bc.BahncardInstance.make(
                payload["trips"], payload["B"], payload["beta"], payload["T"]
            )
        if problem == "tcp":
            return tcp.TcpInstance.make(payload["counts"], int(payload["d"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad {problem} instance: {exc}") from exc
    raise InputError(f"unknown problem {problem!r}")


def load_prediction(problem: str, payload: dict):
    try:
        if problem == "setcover":
            return sc.CoverPrediction.make(payload["sets"])
        if problem == "ski":
            return sk.SkiPrediction(int(payload["n_pred"]))
        if problem == "bahncard":
            return bc.BahncardPrediction.make(payload["cards"])
        if problem == "tcp":
            return tcp.TcpPrediction.make(payload["acks"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad {problem} prediction: {exc}") from exc
    raise InputError(f"unknown problem {problem!r}")


def _empty_prediction(problem: str, instance_payload: dict):
    if problem == "setcover":
        return sc.CoverPrediction.make(())
    if problem == "ski":
        # the combined file form carries the prediction inline
        if "n_pred" in instance_payload:
            return sk.SkiPrediction(int(instance_payload["n_pred"]))
        return sk.SkiPrediction(0)
    if problem == "bahncard":
        return bc.BahncardPrediction.make(())
    return tcp.TcpPrediction.make(())


# ---------------------------------------------------------------------------
# sweep


@dataclass(frozen=True)
class SweepSpec:
    problem: str = "tcp"
    dists: tuple[str, ...] = ("poisson", "pareto", "iterated-poisson")
    lambdas: tuple[float, ...] = DEFAULT_LAMBDAS
    replacement_rates: tuple[float, ...] = DEFAULT_RATES
    trials: int = 10
    length: int = 1000
    d: int = 100
    base_seed: int = 2024

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(not (0.0 < l <= 1.0) for l in self.lambdas):
            raise ValueError("lambda values must lie in (0, 1]")
        for name in self.dists:
            if name not in DISTRIBUTIONS:
                raise ValueError(f"unknown distribution {name!r}")


@dataclass(frozen=True)
class SweepRow:
    problem: str
    dist: str
    lam: float
    replacement_rate: float
    trial: int
    seed: int
    alg_cost: float
    opt_cost: float
    pred_cost: float
    ratio: float
    consistency_bound: float
    robustness_bound: float
    all_checks_ok: bool

    def as_csv(self) -> str:
        vals = (
            self.problem,
            self.dist,
            _fmt(self.lam),
            _fmt(self.replacement_rate),
            str(self.trial),
            str(self.seed),
            _fmt(self.alg_cost),
            _fmt(self.opt_cost),
            _fmt(self.pred_cost),
            _fmt(self.ratio),
            _fmt(self.consistency_bound),
            _fmt(self.robustness_bound),
            str(self.all_checks_ok).lower(),
        )
        return ",".join(vals)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _instance_stream(dist_idx: int, trial: int) -> int:
    return (dist_idx << 40) | trial


def _noise_stream(dist_idx: int, p_idx: int, trial: int) -> int:
    return (1 << 60) | (dist_idx << 40) | (p_idx << 20) | trial


def _sweep_cell(args: tuple) -> list[SweepRow]:
    """All lambda rows for one (dist, replacement rate, trial) cell."""
    spec_dict, dist_name, dist_idx, p_idx, trial = args
    spec = SweepSpec(**spec_dict)
    p = spec.replacement_rates[p_idx]
    dist = DISTRIBUTIONS[dist_name]

    inst_rng = SeededRng(spec.base_seed, _instance_stream(dist_idx, trial)).generator()
    counts = generate(dist, spec.length, inst_rng)
    instance = tcp.TcpInstance.make(counts, spec.d)
    opt_cost, _ = tcp.offline_opt_tcp(instance)

    noise_rng = SeededRng(spec.base_seed, _noise_stream(dist_idx, p_idx, trial)).generator()
    perturbed = perturb(counts, NoiseSpec(p), dist, noise_rng)
    prediction = make_prediction(tcp.TcpInstance.make(perturbed, spec.d))
    pred = tcp.prediction_cost_tcp(instance, prediction)

    rows = []
    for lam in spec.lambdas:
        run = tcp.run_pdla_tcp(instance, prediction, lam)
        cost = run.ledger.primal_total
        bounds = tcp.tcp_bounds(run, instance, prediction, lam)
        _, dual_ok = tcp.check_tcp_dual(run, instance)
        big_cap = snap_ceil(lam * spec.d)
        ok = (
            dual_ok
            and cost <= bounds.consistency_bound * (1.0 + CHECK_TOL) + CHECK_TOL
            and cost <= bounds.robustness_bound + CHECK_TOL
            and all(v <= big_cap for v in run.big_updates_per_ack.values())
            and run.ledger.decomposition_ok()
        )
        ratio = _ratio(cost, opt_cost)
        rows.append(
            SweepRow(
                problem="tcp",
                dist=dist_name,
                lam=lam,
                replacement_rate=p,
                trial=trial,
                seed=_noise_stream(dist_idx, p_idx, trial),
                alg_cost=cost,
                opt_cost=opt_cost,
                pred_cost=pred.s_cost if pred.s_cost is not None else math.nan,
                ratio=ratio if ratio is not None else math.nan,
                consistency_bound=bounds.consistency_bound,
                robustness_bound=bounds.robustness_bound,
                all_checks_ok=ok,
            )
        )
    return rows


def run_sweep(spec: SweepSpec, max_workers: int | None = None) -> list[SweepRow]:
    """Execute the sweep grid; rows come back in deterministic grid order
    (dist, replacement rate, trial, lambda) regardless of scheduling."""
    if spec.problem != "tcp":
        raise ValueError("the experiment sweep is defined for the tcp problem")
    if max_workers is None:
        max_workers = int(os.environ.get("PDLA_THREADS", "0")) or (os.cpu_count() or 1)
    spec_dict = {
        "problem": spec.problem,
        "dists": spec.dists,
        "lambdas": spec.lambdas,
        "replacement_rates": spec.replacement_rates,
        "trials": spec.trials,
        "length": spec.length,
        "d": spec.d,
        "base_seed": spec.base_seed,
    }
    cells = [
        (spec_dict, dist_name, dist_idx, p_idx, trial)
        for dist_idx, dist_name in enumerate(spec.dists)
        for p_idx in range(len(spec.replacement_rates))
        for trial in range(spec.trials)
    ]
    if max_workers <= 1:
        results = [_sweep_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(_sweep_cell, cells, chunksize=4))
    return [row for cell_rows in results for row in cell_rows]


def aggregate_rows(rows: list[SweepRow]) -> list[tuple]:
    """Mean ratio per (problem, dist, lambda, replacement rate), in row order."""
    order: list[tuple] = []
    sums: dict[tuple, list[float]] = {}
    for row in rows:
        key = (row.problem, row.dist, row.lam, row.replacement_rate)
        if key not in sums:
            sums[key] = []
            order.append(key)
        sums[key].append(row.ratio)
    out = []
    for key in order:
        vals = sums[key]
        out.append((*key, sum(vals) / len(vals), len(vals)))
    return out


def write_sweep_csv(rows: list[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(ROW_COLUMNS) + "\n")
        for row in rows:
            handle.write(row.as_csv() + "\n")


def write_aggregate_csv(rows: list[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(AGG_COLUMNS) + "\n")
        for problem, dist, lam, p, mean_ratio, n in aggregate_rows(rows):
            handle.write(
                f"{problem},{dist},{_fmt(lam)},{_fmt(p)},{_fmt(mean_ratio)},{n}\n"
            )


# ---------------------------------------------------------------------------
# commands


def cmd_run(args) -> int:
    try:
        instance_payload = _load_json(args.instance)
        instance = load_instance(args.problem, instance_payload)
        if args.prediction:
            prediction = load_prediction(args.problem, _load_json(args.prediction))
        else:
            prediction = _empty_prediction(args.problem, instance_payload)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = build_report(args.problem, instance, prediction, args.lam, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.to_json())
    return 0 if report.all_checks_ok else 1


def cmd_sweep(args) -> int:
    lambdas = tuple(float(v) for v in args.lambdas.split(",")) if args.lambdas else DEFAULT_LAMBDAS
    rates = (
        tuple(float(v) for v in args.replacement_rates.split(","))
        if args.replacement_rates
        else DEFAULT_RATES
    )
    dists = tuple(DISTRIBUTIONS) if args.dist == "all" else (args.dist,)
    spec = SweepSpec(
        dists=dists,
        lambdas=lambdas,
        replacement_rates=rates,
        trials=args.trials,
        length=args.length,
        d=args.d,
        base_seed=args.base_seed,
    )
    rows = run_sweep(spec)
    try:
        write_sweep_csv(rows, args.out)
        agg_path = args.agg_out or _default_agg_path(args.out)
        write_aggregate_csv(rows, agg_path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    bad = sum(1 for r in rows if not r.all_checks_ok)
    print(f"wrote {len(rows)} rows to {args.out} and aggregates to {agg_path}")
    if bad:
        print(f"{bad} rows failed their checks", file=sys.stderr)
        return 1
    return 0


def _default_agg_path(out: str) -> str:
    root, ext = os.path.splitext(out)
    return f"{root}_agg{ext or '.csv'}"


def cmd_verify(args) -> int:
    suites = {
        "lemmas": (
            ("rate inequalities on the dense grid", verify.lemma12_grid_failures),
            ("sequence bound, exhaustive words", verify.lemma13_exhaustive_failures),
        ),
        "certificates": (
            ("lower-bound certificates", verify.certificate_failures),
        ),
        "oracles": (
            ("oracle agreement dp vs brute force", verify.oracle_agreement_failures),
        ),
        "duals": (
            ("dual feasibility suites", verify.dual_suite_failures),
            ("ski exhaustive bound grid", verify.ski_grid_failures),
        ),
    }
    selected = []
    if args.scope == "all":
        for group in suites.values():
            selected.extend(group)
    else:
        selected.extend(suites[args.scope])

    n_failed = 0
    for name, fn in selected:
        failures = fn()
        status = "PASS" if not failures else "FAIL"
        print(f"[{status}] {name}")
        for line in failures[:10]:
            print(f"    {line}")
        if failures:
            n_failed += 1
    return 0 if n_failed == 0 else 1


def cmd_generate(args) -> int:
    dist = DISTRIBUTIONS[args.dist]
    rng = SeededRng(args.seed, 0).generator()
    counts = generate(dist, args.length, rng)
    payload = {"d": args.d, "counts": [int(c) for c in counts]}
    _write_or_print(payload, args.out)
    if args.replacement_rate is not None:
        noise_rng = SeededRng(args.seed, 1).generator()
        perturbed = perturb(counts, NoiseSpec(args.replacement_rate), dist, noise_rng)
        prediction = make_prediction(tcp.TcpInstance.make(perturbed, args.d))
        _write_or_print({"acks": list(prediction.ack_times)}, args.pred_out)
    return 0


def _write_or_print(payload: dict, path: str | None) -> None:
    text = json.dumps(payload)
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdla")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one instance and print a JSON report")
    p_run.add_argument("--problem", required=True, choices=("setcover", "ski", "bahncard", "tcp"))
    p_run.add_argument("--instance", required=True)
    p_run.add_argument("--prediction")
    p_run.add_argument("--lam", type=float, required=True)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="competitive-ratio sweep over the experiment grid")
    p_sweep.add_argument("--dist", default="all", choices=(*DISTRIBUTIONS, "all"))
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--agg-out")
    p_sweep.add_argument("--lambdas")
    p_sweep.add_argument("--replacement-rates")
    p_sweep.add_argument("--trials", type=int, default=10)
    p_sweep.add_argument("--length", type=int, default=1000)
    p_sweep.add_argument("--d", type=int, default=100)
    p_sweep.add_argument("--base-seed", type=int, default=2024)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the numeric invariant suites")
    p_verify.add_argument(
        "--scope", default="all", choices=("lemmas", "certificates", "oracles", "duals", "all")
    )
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("generate", help="generate a random instance (and prediction)")
    p_gen.add_argument("--dist", default="poisson", choices=tuple(DISTRIBUTIONS))
    p_gen.add_argument("--length", type=int, default=1000)
    p_gen.add_argument("--d", type=int, default=100)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--replacement-rate", type=float)
    p_gen.add_argument("--out")
    p_gen.add_argument("--pred-out")
    p_gen.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
