import math

import pytest

from pdla.bahncard import (
    BahncardInstance,
    BahncardPrediction,
    BahncardSizeError,
    DegenerateParameterError,
    bahncard_bounds,
    check_bahncard_dual,
    normalize_prediction,
    offline_opt_bahncard,
    round_bahncard,
    round_bahncard_batch,
    run_pdla_bahncard,
)
from pdla.core import SeededRng, snap_ceil
from pdla.oracles import brute_force_bahncard
from pdla.skirental import SkiInstance, SkiPrediction, run_pdla_ski
from pdla.verify import random_bahncard_instance, random_bahncard_prediction


def finite_rate(card_cost: float, beta: float, exponent: float) -> float:
    """(1 + (1-beta)/B)^exponent; the update rules use exact exponents
    z * B/(1-beta), only the interval update count is a ceiling."""
    return (1.0 + (1.0 - beta) / card_cost) ** exponent


class TestTypesAndNormalization:
    def test_instance_validation(self):
        with pytest.raises(ValueError):
            BahncardInstance.make([3, 1], 2.0, 0.5, 5)  # decreasing trips
        with pytest.raises(ValueError):
            BahncardInstance.make([1], 0.0, 0.5, 5)
        with pytest.raises(ValueError):
            BahncardInstance.make([1], 2.0, 1.5, 5)
        with pytest.raises(ValueError):
            BahncardInstance.make([1], 2.0, 0.5, 0)

    def test_overlapping_cards_postponed(self):
        pred = BahncardPrediction.make([0, 3, 20])
        norm = normalize_prediction(pred, 5)
        assert norm.card_times == (0, 6, 20)

    def test_chained_overlaps(self):
        norm = normalize_prediction(BahncardPrediction.make([0, 1, 2]), 4)
        assert norm.card_times == (0, 5, 10)

    def test_beta_one_rejected(self):
        inst = BahncardInstance.make([1], 2.0, 1.0, 3)
        with pytest.raises(DegenerateParameterError):
            run_pdla_bahncard(inst, BahncardPrediction.make([]), 0.5)
        with pytest.raises(DegenerateParameterError):
            bahncard_bounds(inst, BahncardPrediction.make([]), 0.5)


class TestRun:
    def test_no_trips(self):
        inst = BahncardInstance.make([], 2.0, 0.5, 3)
        run = run_pdla_bahncard(inst, BahncardPrediction.make([0]), 0.5)
        assert run.ledger.primal_total == 0.0

    def test_single_unpredicted_trip_cost(self):
        # cautious update: cost (e(1/lam) - beta)/(e(1/lam) - 1)
        card_cost, beta, lam = 10.0, 0.5, 0.5
        inst = BahncardInstance.make([4], card_cost, beta, 7)
        run = run_pdla_bahncard(inst, BahncardPrediction.make([]), lam)
        e_small = finite_rate(card_cost, beta, card_cost / ((1 - beta) * lam))
        assert run.ledger.primal_total == pytest.approx(
            (e_small - beta) / (e_small - 1.0), rel=1e-12
        )
        assert run.update_kind == ["small"]

    def test_interval_worst_case_is_tight(self):
        # exactly ceil(lam*B/(1-beta)) trips inside one predicted interval:
        # all big updates, total m*(e(lam)-beta)/(e(lam)-1), and the interval
        # consistency ratio holds with equality
        card_cost, beta, lam = 10.0, 0.5, 0.5
        m = snap_ceil(lam * card_cost / (1.0 - beta))
        inst = BahncardInstance.make(list(range(m)), card_cost, beta, 30)
        pred = BahncardPrediction.make([0])
        run = run_pdla_bahncard(inst, pred, lam)
        e_big = finite_rate(card_cost, beta, lam * card_cost / (1.0 - beta))
        expected = m * (e_big - beta) / (e_big - 1.0)
        assert run.ledger.primal_total == pytest.approx(expected, rel=1e-12)
        assert set(run.update_kind) == {"big"}
        bounds = bahncard_bounds(inst, pred, lam)
        ratio = run.per_interval_cost[0] / (card_cost + beta * m)
        assert ratio == pytest.approx(bounds.interval_ratio, rel=1e-12)

    def test_minimal_update_after_coverage(self):
        # enough early trips cover the window; a later trip pays only beta
        inst = BahncardInstance.make([0] * 40 + [1], 2.0, 0.25, 10)
        run = run_pdla_bahncard(inst, BahncardPrediction.make([0]), 0.9)
        assert run.update_kind[-1] == "minimal"
        assert run.trip_dp[-1] == pytest.approx(0.25)
        assert run.d[-1] == 1.0 and run.c[-1] == 0.25

    def test_primal_feasibility(self):
        rng = SeededRng(40, 0).generator()
        for _ in range(25):
            inst = random_bahncard_instance(rng)
            pred = random_bahncard_prediction(rng, inst)
            run = run_pdla_bahncard(inst, pred, 0.45)
            for d_j, f_j in zip(run.d, run.f):
                assert d_j + f_j >= 1.0 - 1e-9

    def test_ledger_equals_lp_objective(self):
        rng = SeededRng(46, 0).generator()
        for _ in range(20):
            inst = random_bahncard_instance(rng)
            pred = random_bahncard_prediction(rng, inst)
            run = run_pdla_bahncard(inst, pred, 0.65)
            objective = inst.card_cost * run.x.total() + sum(
                inst.beta * d_j + f_j for d_j, f_j in zip(run.d, run.f)
            )
            assert run.ledger.primal_total == pytest.approx(objective, rel=1e-12, abs=1e-12)
            assert run.ledger.dual_total == pytest.approx(sum(run.c), rel=1e-12, abs=1e-12)


class TestOfflineOpt:
    def test_single_trip_no_card(self):
        inst = BahncardInstance.make([5], 2.0, 0.3, 10)
        assert offline_opt_bahncard(inst) == (1.0, ())

    def test_burst_buys_card(self):
        inst = BahncardInstance.make([7] * 6, 2.0, 0.3, 10)
        cost, cards = offline_opt_bahncard(inst)
        assert cost == pytest.approx(2.0 + 0.3 * 6)
        assert cards == (7,)

    def test_matches_brute_force(self):
        rng = SeededRng(41, 0).generator()
        for _ in range(60):
            inst = random_bahncard_instance(rng)
            a, _ = offline_opt_bahncard(inst)
            assert a == pytest.approx(brute_force_bahncard(inst), abs=1e-9)

    def test_size_cap(self):
        inst = BahncardInstance.make(list(range(10_001)), 2.0, 0.3, 5)
        with pytest.raises(BahncardSizeError):
            offline_opt_bahncard(inst)


class TestDual:
    def test_empty_run_ok(self):
        inst = BahncardInstance.make([], 2.0, 0.5, 3)
        run = run_pdla_bahncard(inst, BahncardPrediction.make([]), 0.5)
        scale, ok = check_bahncard_dual(run, inst, 0.5)
        assert scale == 0.0 and ok

    def test_single_small_update_load(self):
        inst = BahncardInstance.make([2], 4.0, 0.5, 3)
        lam = 0.6
        run = run_pdla_bahncard(inst, BahncardPrediction.make([]), lam)
        scale, ok = check_bahncard_dual(run, inst, lam)
        assert ok
        assert scale == pytest.approx(lam * (1.0 - 0.5) / 4.0)

    def test_randomized_grid(self):
        rng = SeededRng(42, 0).generator()
        for _ in range(40):
            inst = random_bahncard_instance(rng)
            pred = random_bahncard_prediction(rng, inst)
            for lam in (0.1, 0.5, 1.0):
                run = run_pdla_bahncard(inst, pred, lam)
                scale, ok = check_bahncard_dual(run, inst, lam)
                assert ok, (inst, lam, scale)


class TestBoundsAndInvariants:
    def test_cost_within_bounds_randomized(self):
        rng = SeededRng(43, 0).generator()
        for _ in range(40):
            inst = random_bahncard_instance(rng)
            pred = random_bahncard_prediction(rng, inst)
            for lam in (0.2, 0.7, 1.0):
                run = run_pdla_bahncard(inst, pred, lam)
                bounds = bahncard_bounds(inst, pred, lam)
                cost = run.ledger.primal_total
                assert cost <= bounds.consistency_bound + 1e-9
                assert cost <= bounds.robustness_bound + 1e-9

    def test_per_interval_and_out_of_interval_charges(self):
        rng = SeededRng(44, 0).generator()
        for _ in range(40):
            inst = random_bahncard_instance(rng)
            pred = random_bahncard_prediction(rng, inst)
            for lam in (0.3, 1.0):
                run = run_pdla_bahncard(inst, pred, lam)
                bounds = bahncard_bounds(inst, pred, lam)
                for i in range(len(run.intervals)):
                    charged = run.per_interval_cost.get(i, 0.0)
                    m_i = run.trips_per_interval.get(i, 0)
                    cap = bounds.interval_ratio * (inst.card_cost + inst.beta * m_i)
                    assert charged <= cap + 1e-9
                for dp in run.out_trip_cost.values():
                    assert dp <= bounds.out_ratio + 1e-9

    def test_per_update_ratio_within_coefficient(self):
        # the robustness coefficient is the worst per-update Delta P / Delta D
        rng = SeededRng(45, 0).generator()
        for _ in range(40):
            inst = random_bahncard_instance(rng)
            pred = random_bahncard_prediction(rng, inst)
            for lam in (0.25, 0.8):
                run = run_pdla_bahncard(inst, pred, lam)
                bounds = bahncard_bounds(inst, pred, lam)
                coeff = bounds.robustness_bound / (
                    (1.0 + (1.0 - inst.beta) / inst.card_cost) * bounds.opt
                ) if bounds.opt else None
                for dp, dd in zip(run.trip_dp, run.trip_dd):
                    if dd > 0 and coeff is not None:
                        assert dp / dd <= coeff + 1e-9

    def test_big_ratio_dominates_in_asymptotic_regime(self):
        # where lam*B/(1-beta) is large the big-update ratio is the coefficient
        for card_cost, beta, lam in ((50.0, 0.5, 0.5), (100.0, 0.0, 0.8), (200.0, 0.9, 1.0)):
            scale = card_cost / (1.0 - beta)
            e_big = finite_rate(card_cost, beta, lam * scale)
            e_small = finite_rate(card_cost, beta, scale / lam)
            big_ratio = (e_big - beta) / (e_big - 1.0)
            small_ratio = (e_small - beta) / (e_small - 1.0) / (lam + beta - beta * lam)
            assert small_ratio <= big_ratio + 1e-12

    def test_limit_theorem_coefficients(self):
        # large B: per-interval consistency ratio -> lam/(1-beta+lam*beta) *
        # (e^lam-beta)/(e^lam-1), robustness coefficient -> (e^lam-beta)/(e^lam-1)
        card_cost, beta, lam = 1e6, 0.5, 0.5
        inst = BahncardInstance.make([0], card_cost, beta, 5)
        bounds = bahncard_bounds(inst, BahncardPrediction.make([]), lam)
        target = (math.exp(lam) - beta) / (math.exp(lam) - 1.0)
        assert bounds.robustness_bound / bounds.opt == pytest.approx(target, rel=1e-4)
        interval_limit = lam / (1.0 - beta + lam * beta) * target
        assert bounds.interval_ratio == pytest.approx(interval_limit, rel=1e-4)

    def test_lambda_one_coefficients_coincide(self):
        inst = BahncardInstance.make([0, 1], 10.0, 0.3, 4)
        bounds = bahncard_bounds(inst, BahncardPrediction.make([0]), 1.0)
        e_one = finite_rate(10.0, 0.3, 10.0 / 0.7)
        assert bounds.out_ratio == pytest.approx((e_one - 0.3) / (e_one - 1.0), rel=1e-12)


class TestSkiReduction:
    # lambda values where both lam*B and B/lam are integral, so the ski
    # module's snapped exponents coincide with the exact ones used here
    @pytest.mark.parametrize("n_pred,lam", [(30, 0.75), (0, 0.75), (12, 0.25), (12, 1.0), (0, 0.5)])
    def test_beta_zero_long_validity_matches_ski(self, n_pred, lam):
        n_days, buy_cost = 37, 12
        ski_run = run_pdla_ski(SkiInstance(n_days, buy_cost), SkiPrediction(n_pred), lam)
        inst = BahncardInstance.make(list(range(1, n_days + 1)), float(buy_cost), 0.0, 10 * n_days)
        cards = [0] if n_pred >= buy_cost else []
        card_run = run_pdla_bahncard(inst, BahncardPrediction.make(cards), lam)
        assert card_run.ledger.primal_total == pytest.approx(
            ski_run.ledger.primal_total, rel=1e-12, abs=1e-12
        )
        assert card_run.f == pytest.approx(ski_run.f, rel=1e-12, abs=1e-12)


class TestRounding:
    def test_zero_mass_pays_full_price(self):
        inst = BahncardInstance.make([0, 5], 100.0, 0.5, 3)
        run = run_pdla_bahncard(inst, BahncardPrediction.make([]), 1.0)
        # tiny fractional mass: most draws buy nothing and pay 2 full tickets
        costs = round_bahncard_batch(run, 2_000, SeededRng(50, 0).generator())
        assert (costs == 2.0).mean() > 0.9

    def test_buying_cost_unbiased_and_total_one_sided(self):
        inst = BahncardInstance.make([0, 1, 4, 4, 9, 15, 16], 3.0, 0.4, 6)
        pred = BahncardPrediction.make([2, 12])
        run = run_pdla_bahncard(inst, pred, 0.6)
        n = 200_000
        p = SeededRng(51, 0).generator().random(n)
        total_mass = run.x.total()
        import numpy as np

        cards = np.where(p <= total_mass, np.floor(total_mass - p) + 1.0, 0.0)
        buy_mean = inst.card_cost * cards.mean()
        buy_sigma = inst.card_cost * cards.std() / math.sqrt(n)
        assert abs(buy_mean - inst.card_cost * total_mass) <= 3.0 * buy_sigma

        samples = round_bahncard_batch(run, n, SeededRng(51, 0).generator())
        sigma = samples.std() / math.sqrt(n)
        assert samples.mean() <= run.ledger.primal_total + 3.0 * sigma

    def test_scalar_matches_batch(self):
        inst = BahncardInstance.make([0, 3, 6], 2.0, 0.2, 4)
        run = run_pdla_bahncard(inst, BahncardPrediction.make([1]), 0.5)
        a = round_bahncard(run, SeededRng(52, 0).generator())
        b = float(round_bahncard_batch(run, 1, SeededRng(52, 0).generator())[0])
        assert a == b
