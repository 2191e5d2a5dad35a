import math

import numpy as np
import pytest

from jurymech.model import (
    AgentKind,
    AwardLossSharingPayment,
    EffortProfile,
    KlerosPayment,
    Strategy,
    StrategyProfile,
    TabulatedPayment,
    ThresholdPayment,
    expected_utility,
    expected_vote_advantage,
    validate_pmf,
    vote_advantage,
    vote_probability,
)

WELL = EffortProfile(AgentKind.WELL_INFORMED)
MIS = EffortProfile(AgentKind.MISINFORMED)


def point_mass(t: int, n: int) -> np.ndarray:
    pmf = np.zeros(n)
    pmf[t] = 1.0
    return pmf


class TestEffortProfile:
    def test_zero_effort_is_a_coin(self):
        for curve in (WELL, MIS, EffortProfile(AgentKind.WELL_INFORMED, 2.5)):
            assert curve.value(0.0) == pytest.approx(0.5, abs=1e-12)

    def test_reference_values(self):
        assert WELL.value(1.0) == pytest.approx(0.8161, abs=5e-5)
        assert MIS.value(1.0) == pytest.approx(1.0 - WELL.value(1.0), abs=1e-12)

    def test_derivative_values(self):
        assert WELL.derivative(0.0) == 0.5
        assert MIS.derivative(0.0) == -0.5
        assert WELL.derivative(math.log(2)) == pytest.approx(0.25, abs=1e-12)

    def test_derivative_matches_finite_difference(self):
        step = 1e-5
        for curve in (WELL, MIS, EffortProfile(AgentKind.MISINFORMED, 0.7)):
            for effort in (step, 0.3, 1.0, 4.0, 19.0):
                central = (curve.value(effort + step) - curve.value(effort - step)) / (
                    2 * step
                )
                assert curve.derivative(effort) == pytest.approx(central, abs=1e-6)

    def test_inverse_reference_values(self):
        assert WELL.inverse(0.75) == pytest.approx(math.log(2), abs=1e-10)
        assert MIS.inverse(0.25) == pytest.approx(math.log(2), abs=1e-10)
        near_half = WELL.inverse(0.5 + 1e-9)
        assert near_half == pytest.approx(2e-9, rel=1e-3)
        assert WELL.value(near_half) == pytest.approx(0.5 + 1e-9, abs=1e-12)

    def test_inverse_round_trip(self):
        # Near-saturated well-informed quality loses bits to cancellation in
        # 1 - y: the best any double can do is ~1.1e-16 * exp(effort), so the
        # 1e-9 identity holds up to effort 15 and degrades gracefully after.
        for effort in np.linspace(0.0, 20.0, 41):
            tol = 1e-9 if effort <= 15.0 else 1e-7
            assert WELL.inverse(WELL.value(effort)) == pytest.approx(effort, abs=tol)
            assert MIS.inverse(MIS.value(effort)) == pytest.approx(effort, abs=1e-9)

    def test_inverse_forward_post(self):
        # applying the curve to the recovered effort reproduces the quality
        for effort in np.linspace(0.0, 20.0, 41):
            y = WELL.value(effort)
            assert WELL.value(WELL.inverse(y)) == pytest.approx(y, abs=1e-10)
            y = MIS.value(effort)
            assert MIS.value(MIS.inverse(y)) == pytest.approx(y, abs=1e-10)

    def test_range_and_monotonicity(self):
        grid = np.linspace(0.0, 30.0, 301)
        well_vals = [WELL.value(e) for e in grid]
        mis_vals = [MIS.value(e) for e in grid]
        assert all(0.0 <= v <= 1.0 for v in well_vals + mis_vals)
        assert all(a < b for a, b in zip(well_vals, well_vals[1:]))
        assert all(a > b for a, b in zip(mis_vals, mis_vals[1:]))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            WELL.value(-0.1)
        with pytest.raises(ValueError):
            WELL.derivative(-1e-9)
        with pytest.raises(ValueError):
            WELL.inverse(0.4)
        with pytest.raises(ValueError):
            WELL.inverse(1.0)
        with pytest.raises(ValueError):
            MIS.inverse(0.6)
        with pytest.raises(ValueError):
            EffortProfile(AgentKind.WELL_INFORMED, rate=0.0)


class TestPayments:
    def test_threshold_branches(self):
        thr = ThresholdPayment(3.0)
        assert thr.value(0.61, 100) == 3.0
        assert thr.value(0.40, 100) == 0.0
        assert thr.value(0.5, 100) == 3.0  # boundary joins the majority branch

    def test_award_loss_sharing(self):
        als = AwardLossSharingPayment(2500.0)
        assert als.value(0.40, 100) == pytest.approx(-62.5, abs=1e-12)
        assert als.value(0.50, 100) == pytest.approx(50.0, abs=1e-12)

    def test_kleros(self):
        pay = KlerosPayment(1.0, 2.0)
        assert pay.value(0.6, 10) == pytest.approx(1.0 / 6.0, abs=1e-12)
        assert pay.value(0.4, 10) == pytest.approx(-0.5, abs=1e-12)

    def test_tabulated_lookup_and_off_grid(self):
        table = TabulatedPayment(4, (1.0, 2.0, 3.0, 4.0))
        assert table.value(0.25, 4) == 1.0
        assert table.value(1.0, 4) == 4.0
        with pytest.raises(ValueError):
            table.value(0.3, 4)
        with pytest.raises(ValueError):
            table.value(0.25, 8)
        with pytest.raises(ValueError):
            TabulatedPayment(3, (1.0, 2.0))

    def test_fraction_domain(self):
        thr = ThresholdPayment(1.0)
        with pytest.raises(ValueError):
            thr.value(0.0, 10)
        with pytest.raises(ValueError):
            thr.value(1.2, 10)


class TestVoteAdvantage:
    def test_threshold_bands(self):
        thr = ThresholdPayment(3.0)
        assert vote_advantage(thr, 60, 100) == 3.0
        assert vote_advantage(thr, 50, 100) == 0.0
        assert vote_advantage(thr, 49, 100) == 0.0
        assert vote_advantage(thr, 48, 100) == -3.0

    def test_award_loss_from_two_payment_calls(self):
        als = AwardLossSharingPayment(2500.0)
        expected = als.value(61 / 100, 100) - als.value(40 / 100, 100)
        assert vote_advantage(als, 60, 100) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(2500 / 61 + 2500 / 40, abs=1e-9)

    def test_antisymmetry_all_variants(self):
        rng = np.random.default_rng(7)
        for n in range(2, 21):
            payments = [
                ThresholdPayment(2.5),
                AwardLossSharingPayment(40.0),
                KlerosPayment(3.0, 5.0),
                TabulatedPayment(n, tuple(rng.normal(size=n))),
            ]
            for payment in payments:
                for m in range(n):
                    assert vote_advantage(payment, m, n) == pytest.approx(
                        -vote_advantage(payment, n - 1 - m, n), abs=1e-12
                    )

    def test_count_out_of_range(self):
        with pytest.raises(ValueError):
            vote_advantage(ThresholdPayment(1.0), 100, 100)
        with pytest.raises(ValueError):
            vote_advantage(ThresholdPayment(1.0), -1, 100)


class TestExpectedAdvantage:
    def test_point_mass_reduces_to_single_count(self):
        als = AwardLossSharingPayment(100.0)
        pmf = point_mass(60, 100)
        assert expected_vote_advantage(als, pmf, 100) == pytest.approx(
            vote_advantage(als, 60, 100), abs=1e-12
        )

    def test_fair_coin_votes_cancel(self):
        from jurymech.payment_design import binomial_weights

        pmf = binomial_weights(100, 0.5)
        assert expected_vote_advantage(ThresholdPayment(3.0), pmf, 100) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_binomial_tail_oracle(self):
        from jurymech.payment_design import binomial_weights

        pmf = binomial_weights(100, 0.75)
        got = expected_vote_advantage(ThresholdPayment(3.0), pmf, 100)
        tails = 3.0 * (pmf[51:].sum() - pmf[:49].sum())
        assert got == pytest.approx(tails, abs=1e-12)

    def test_rejects_bad_pmf(self):
        bad = np.full(100, 0.02)  # sums to 2
        with pytest.raises(ValueError):
            expected_vote_advantage(ThresholdPayment(1.0), bad, 100)
        with pytest.raises(ValueError):
            validate_pmf([0.5, -0.1, 0.6], 3)
        with pytest.raises(ValueError):
            validate_pmf([1.0], 2)


def four_branch_utility(curve, strategy, payment, pmf, n):
    # Direct expansion over (signal right/wrong) x (cast/flip).
    f = curve.value(strategy.effort)
    b = strategy.fidelity
    pay_t = math.fsum(p * payment.value((1 + t) / n, n) for t, p in enumerate(pmf))
    pay_f = math.fsum(p * payment.value((n - t) / n, n) for t, p in enumerate(pmf))
    return (
        -strategy.effort
        + f * b * pay_t
        + f * (1 - b) * pay_f
        + (1 - f) * b * pay_f
        + (1 - f) * (1 - b) * pay_t
    )


class TestExpectedUtility:
    def test_zero_effort_is_fidelity_independent(self):
        pmf = point_mass(60, 100)
        thr = ThresholdPayment(3.0)
        base = expected_utility(WELL, Strategy(0.0, 0.0), thr, pmf, 100)
        for fidelity in (0.25, 0.5, 0.75, 1.0):
            got = expected_utility(WELL, Strategy(0.0, fidelity), thr, pmf, 100)
            assert got == pytest.approx(base, abs=1e-12)
        # expected payment of a truth vote, minus half the advantage
        assert base == pytest.approx(3.0 - 0.5 * 3.0, abs=1e-12)

    def test_zero_advantage_leaves_cost_plus_payment(self):
        pmf = point_mass(50, 100)  # middle band: advantage 0
        thr = ThresholdPayment(3.0)
        got = expected_utility(WELL, Strategy(0.5, 1.0), thr, pmf, 100)
        assert got == pytest.approx(3.0 - 0.5, abs=1e-12)

    def test_matches_four_branch_expansion(self):
        rng = np.random.default_rng(11)
        thr = ThresholdPayment(3.0)
        pmf = point_mass(60, 100)
        s = Strategy(math.log(1.5), 1.0)
        assert expected_utility(WELL, s, thr, pmf, 100) == pytest.approx(
            four_branch_utility(WELL, s, thr, pmf, 100), abs=1e-12
        )
        for _ in range(25):
            n = int(rng.integers(2, 30))
            raw = rng.random(n)
            pmf = raw / raw.sum()
            pay = AwardLossSharingPayment(float(rng.uniform(0.0, 50.0)))
            curve = WELL if rng.random() < 0.5 else MIS
            s = Strategy(float(rng.uniform(0.0, 3.0)), float(rng.random()))
            assert expected_utility(curve, s, pay, pmf, n) == pytest.approx(
                four_branch_utility(curve, s, pay, pmf, n), abs=1e-10
            )


class TestVoteProbability:
    def test_zero_effort(self):
        for curve in (WELL, MIS):
            for fidelity in (0.0, 0.3, 1.0):
                assert vote_probability(curve, Strategy(0.0, fidelity)) == pytest.approx(
                    0.5, abs=1e-12
                )

    def test_full_fidelity_follows_signal(self):
        assert vote_probability(WELL, Strategy(1.0, 1.0)) == pytest.approx(
            0.8161, abs=5e-5
        )
        assert vote_probability(WELL, Strategy(1.0, 0.0)) == pytest.approx(
            1.0 - 0.8161, abs=5e-5
        )

    def test_stays_in_unit_interval(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            curve = EffortProfile(
                AgentKind.WELL_INFORMED if rng.random() < 0.5 else AgentKind.MISINFORMED,
                rate=float(rng.uniform(0.1, 4.0)),
            )
            s = Strategy(float(rng.uniform(0.0, 20.0)), float(rng.random()))
            assert 0.0 <= vote_probability(curve, s) <= 1.0


class TestStrategyTypes:
    def test_strategy_invariants(self):
        with pytest.raises(ValueError):
            Strategy(-0.1, 0.5)
        with pytest.raises(ValueError):
            Strategy(0.1, 1.5)

    def test_profile_needs_agents(self):
        with pytest.raises(ValueError):
            StrategyProfile(())
        profile = StrategyProfile(((WELL, Strategy(0.0, 0.5)),))
        assert profile.size == 1
