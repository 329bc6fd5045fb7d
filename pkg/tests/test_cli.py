import json

import pytest

from pdla.cli import (
    DEFAULT_LAMBDAS,
    SweepSpec,
    aggregate_rows,
    build_report,
    main,
    run_sweep,
    write_aggregate_csv,
    write_sweep_csv,
)
from pdla.setcover import CoverInstance, CoverPrediction
from pdla.skirental import SkiInstance, SkiPrediction


SMALL_SPEC = dict(
    dists=("poisson",),
    lambdas=(1.0, 0.5),
    replacement_rates=(0.0, 0.5, 1.0),
    trials=2,
    length=60,
    d=10,
    base_seed=11,
)


@pytest.fixture(scope="module")
def small_rows():
    return run_sweep(SweepSpec(**SMALL_SPEC), max_workers=1)


class TestRunCommand:
    def test_ski_zero_days_exit_zero(self, tmp_path, capsys):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({"N": 0, "B": 10}))
        pred = tmp_path / "pred.json"
        pred.write_text(json.dumps({"n_pred": 5}))
        code = main(
            ["run", "--problem", "ski", "--instance", str(inst), "--prediction", str(pred), "--lam", "0.5"]
        )
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["alg_cost"] == 0.0 and out["all_checks_ok"]

    def test_tcp_single_burst_with_optimal_prediction(self, tmp_path, capsys):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({"d": 100, "counts": [0, 3, 0]}))
        pred = tmp_path / "pred.json"
        pred.write_text(json.dumps({"acks": [1]}))
        code = main(
            ["run", "--problem", "tcp", "--instance", str(inst), "--prediction", str(pred), "--lam", "0.4"]
        )
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["ratio"] <= 3.04

    def test_malformed_json_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code = main(["run", "--problem", "ski", "--instance", str(bad), "--lam", "0.5"])
        assert code == 2

    def test_setcover_roundtrip(self, tmp_path, capsys):
        inst = tmp_path / "sc.json"
        inst.write_text(
            json.dumps({"n": 2, "sets": [{"w": 1.0, "elems": [0, 1]}, {"w": 2.0, "elems": [1]}], "arrivals": [0, 1]})
        )
        pred = tmp_path / "scp.json"
        pred.write_text(json.dumps({"sets": [0]}))
        code = main(
            ["run", "--problem", "setcover", "--instance", str(inst), "--prediction", str(pred), "--lam", "0.6"]
        )
        out = json.loads(capsys.readouterr().out)
        assert code == 0 and out["opt_cost"] == 1.0

    def test_bahncard_roundtrip(self, tmp_path, capsys):
        inst = tmp_path / "bc.json"
        inst.write_text(json.dumps({"trips": [0, 1, 2], "B": 2.0, "beta": 0.5, "T": 5}))
        pred = tmp_path / "bcp.json"
        pred.write_text(json.dumps({"cards": [0]}))
        code = main(
            ["run", "--problem", "bahncard", "--instance", str(inst), "--prediction", str(pred), "--lam", "0.5"]
        )
        out = json.loads(capsys.readouterr().out)
        assert code == 0 and out["all_checks_ok"]


class TestSweep:
    def test_row_count_and_grid_order(self, small_rows):
        spec = SweepSpec(**SMALL_SPEC)
        expected = len(spec.dists) * len(spec.replacement_rates) * spec.trials * len(spec.lambdas)
        assert len(small_rows) == expected
        keys = [(r.dist, r.replacement_rate, r.trial, r.lam) for r in small_rows]
        assert keys == sorted(keys, key=lambda k: (k[0], k[1], k[2], -k[3]))

    def test_all_checks_pass(self, small_rows):
        assert all(r.all_checks_ok for r in small_rows)
        assert all(r.ratio >= 1.0 - 1e-9 for r in small_rows)

    def test_lambda_one_flat_in_replacement_rate(self, small_rows):
        by_trial = {}
        for r in small_rows:
            if r.lam == 1.0:
                by_trial.setdefault(r.trial, set()).add(r.alg_cost)
        for trial, costs in by_trial.items():
            assert len(costs) == 1  # the prediction is never read at lam = 1

    def test_deterministic_rows(self):
        again = run_sweep(SweepSpec(**SMALL_SPEC), max_workers=1)
        first = run_sweep(SweepSpec(**SMALL_SPEC), max_workers=1)
        assert again == first

    def test_csv_byte_stability(self, small_rows, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_sweep_csv(small_rows, str(p1))
        write_sweep_csv(run_sweep(SweepSpec(**SMALL_SPEC), max_workers=1), str(p2))
        assert p1.read_bytes() == p2.read_bytes()

    def test_aggregate_matches_recomputed_means(self, small_rows, tmp_path):
        agg = aggregate_rows(small_rows)
        for problem, dist, lam, p, mean_ratio, n in agg:
            ratios = [
                r.ratio
                for r in small_rows
                if (r.problem, r.dist, r.lam, r.replacement_rate) == (problem, dist, lam, p)
            ]
            assert n == len(ratios)
            assert mean_ratio == pytest.approx(sum(ratios) / len(ratios), rel=1e-15)
        out = tmp_path / "agg.csv"
        write_aggregate_csv(small_rows, str(out))
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "problem,dist,lambda,replacement_rate,mean_ratio,trials"
        assert len(lines) == 1 + len(agg)

    def test_parallel_matches_serial(self):
        serial = run_sweep(SweepSpec(**SMALL_SPEC), max_workers=1)
        parallel = run_sweep(SweepSpec(**SMALL_SPEC), max_workers=4)
        assert serial == parallel


class TestGenerate:
    def test_generate_writes_instance_and_prediction(self, tmp_path):
        inst = tmp_path / "i.json"
        pred = tmp_path / "p.json"
        code = main(
            [
                "generate", "--dist", "pareto", "--length", "50", "--d", "10",
                "--seed", "3", "--replacement-rate", "0.2",
                "--out", str(inst), "--pred-out", str(pred),
            ]
        )
        assert code == 0
        payload = json.loads(inst.read_text())
        assert payload["d"] == 10 and len(payload["counts"]) == 50
        acks = json.loads(pred.read_text())["acks"]
        assert acks == sorted(acks)

    def test_generate_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            main(["generate", "--dist", "poisson", "--length", "30", "--seed", "9", "--out", str(path)])
        assert a.read_text() == b.read_text()


class TestVerifyCommand:
    def test_certificates_scope(self, capsys):
        code = main(["verify", "--scope", "certificates"])
        out = capsys.readouterr().out
        assert code == 0
        assert "[PASS] lower-bound certificates" in out


class TestReports:
    def test_build_report_rejects_unknown(self):
        with pytest.raises(KeyError):
            build_report("caching", None, None, 0.5, 0)

    def test_report_json_round_trip(self):
        report = build_report("ski", SkiInstance(10, 4), SkiPrediction(9), 0.8, 3)
        payload = json.loads(report.to_json())
        assert payload["problem"] == "ski"
        assert payload["all_checks_ok"] is True

    def test_setcover_report_includes_opt_checks(self):
        inst = CoverInstance.make(2, [(1.0, {0, 1})], [0, 1])
        report = build_report("setcover", inst, CoverPrediction.make({0}), 0.5, 0)
        assert report.checks["robustness_vs_opt"]
        assert report.opt_cost == 1.0
