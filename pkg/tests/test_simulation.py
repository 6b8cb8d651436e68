"""Monte Carlo simulation: terminal law, state noise, EV aggregation."""

import numpy as np
import pytest

from statecast.calibration import MarketCalibration, StateCalibration
from statecast.errors import ConfigurationError
from statecast.simulation import (
    GaussianNoise,
    SimulationConfig,
    StudentTNoise,
    _stream,
    aggregate_electoral_votes,
    probability_time_series,
    run_forecast,
    sample_state_noise,
    simulate_market_terminals,
    simulate_paths,
)
from statecast.states import default_ev_table


def flat_cals(ev, alpha=0.0, beta=0.0, sigma=1.0):
    return {s: StateCalibration(s, alpha, beta, sigma, 5, "polls") for s in ev}


def market(sigma_samp=0.5, sigma_m=0.5, m=0.0, horizon=9.0):
    return MarketCalibration(sigma_samp=sigma_samp, sigma_m=sigma_m,
                             m_current=m, horizon=horizon)


class TestMarketTerminals:
    def test_zero_volatility_is_constant(self):
        m = simulate_market_terminals(market(0.0, 0.0, m=2.5),
                                      SimulationConfig(seed=1, n_paths=100))
        np.testing.assert_array_equal(m, np.full(100, 2.5))

    def test_zero_horizon_is_constant(self):
        m = simulate_market_terminals(market(1.0, 1.0, m=-1.0, horizon=0.0),
                                      SimulationConfig(seed=1, n_paths=100))
        np.testing.assert_array_equal(m, np.full(100, -1.0))

    def test_terminal_variance_and_mean(self):
        # sigma_total = 2, T = 25 -> Var = 100; martingale keeps the mean at m
        mkt = market(1.2, 0.8, m=1.5, horizon=25.0)
        m = simulate_market_terminals(mkt, SimulationConfig(seed=2, n_paths=10000))
        assert m.var(ddof=1) == pytest.approx(100.0, rel=0.05)
        assert abs(m.mean() - 1.5) <= 4 * 2.0 * 5.0 / np.sqrt(10000)

    def test_variance_within_three_mc_standard_errors(self):
        # chi-square: se(Var-hat) ~ sigma^2 T sqrt(2/(n-1))
        mkt = market(0.7, 0.3, m=0.0, horizon=16.0)
        for seed in (3, 4, 5):
            m = simulate_market_terminals(mkt, SimulationConfig(seed=seed, n_paths=10000))
            true_var = 1.0 * 16.0
            se = true_var * np.sqrt(2.0 / 9999)
            assert abs(m.var(ddof=1) - true_var) <= 3 * se

    def test_seeded_reproducibility(self):
        mkt = market()
        cfg = SimulationConfig(seed=77, n_paths=500)
        np.testing.assert_array_equal(simulate_market_terminals(mkt, cfg),
                                      simulate_market_terminals(mkt, cfg))


class TestStateNoise:
    def test_gaussian_deterministic_line(self):
        cal = StateCalibration("OH", 1.0, 2.0, 0.0, 5, "polls")
        out = sample_state_noise(cal, np.full(10, 3.0), GaussianNoise(), _stream(1, 1))
        np.testing.assert_array_equal(out, np.full(10, 7.0))

    def test_student_t_degenerate_priors(self):
        cal = StateCalibration("OH", 1.0, 2.0, 0.0, 5, "polls")
        model = StudentTNoise(sigma_alpha=0.0, sigma_beta=0.0, nu=3)
        out = sample_state_noise(cal, np.full(10, 3.0), model, _stream(1, 1))
        np.testing.assert_array_equal(out, np.full(10, 7.0))

    def test_student_t_scale_matches_nested_mc_oracle(self):
        # draws should be |N(0,1)| * t_3; compare sample std against an
        # independent simulation of the same law
        cal = StateCalibration("NV", 0.0, 0.0, 1.0, 5, "polls")
        model = StudentTNoise(sigma_alpha=0.0, sigma_beta=0.0, nu=3)
        draws = sample_state_noise(cal, np.zeros(100000), model, _stream(1, 1))
        rng = np.random.default_rng(1001)
        oracle = np.abs(rng.standard_normal(100000)) * rng.standard_t(3, 100000)
        assert abs(draws.std(ddof=1) - oracle.std(ddof=1)) <= 0.10 * oracle.std(ddof=1)

    def test_scalar_terminal_accepted(self):
        cal = StateCalibration("OH", 0.5, 1.0, 0.0, 5, "polls")
        out = sample_state_noise(cal, 2.0, GaussianNoise(), _stream(1, 1))
        assert out.shape == (1,) and out[0] == 2.5


class TestAggregateElectoralVotes:
    def test_sweep(self):
        ev = default_ev_table()
        assert aggregate_electoral_votes({s: 1.0 for s in ev}, ev) == 538
        assert aggregate_electoral_votes({s: -1.0 for s in ev}, ev) == 0

    def test_two_state_win(self):
        ev = default_ev_table()
        spreads = {s: -1.0 for s in ev}
        spreads["CA"] = 0.5
        spreads["TX"] = 0.5
        assert aggregate_electoral_votes(spreads, ev) == 93  # 55 + 38

    def test_tie_goes_to_candidate_two(self):
        ev = default_ev_table()
        spreads = {s: 0.0 for s in ev}
        assert aggregate_electoral_votes(spreads, ev, win_threshold=0.0) == 0

    def test_missing_state_named(self):
        ev = default_ev_table()
        spreads = {s: 1.0 for s in ev if s != "VT"}
        with pytest.raises(ConfigurationError, match="VT"):
            aggregate_electoral_votes(spreads, ev)


class TestRunForecast:
    def test_deterministic_landslide(self):
        ev = default_ev_table()
        cals = flat_cals(ev, alpha=5.0, beta=0.0, sigma=0.0)
        dist = run_forecast(cals, market(0.0, 0.0), ev,
                            SimulationConfig(seed=1, n_paths=1000))
        assert dist.p_national == 1.0
        assert dist.ev_histogram[538] == 1.0
        assert np.count_nonzero(dist.ev_histogram) == 1

    def test_symmetric_states_are_coin_flips(self):
        ev = default_ev_table()
        dist = run_forecast(flat_cals(ev), market(), ev,
                            SimulationConfig(seed=7, n_paths=10000))
        for state, p in dist.p_state.items():
            assert abs(p - 0.5) <= 0.02, state

    def test_histogram_mean_equals_path_mean(self):
        ev = default_ev_table()
        cals = flat_cals(ev, alpha=0.3, beta=1.0, sigma=2.0)
        cfg = SimulationConfig(seed=11, n_paths=4000)
        mkt = market(m=0.5, horizon=16.0)
        paths = simulate_paths(cals, mkt, ev, cfg)
        dist = run_forecast(cals, mkt, ev, cfg)
        hist_mean = float(np.arange(539) @ dist.ev_histogram)
        assert hist_mean == pytest.approx(paths.ev_c1.mean(), abs=1e-12)

    def test_histogram_sums_to_one_and_national_matches(self):
        ev = default_ev_table()
        cals = flat_cals(ev, alpha=0.5, beta=0.8, sigma=3.0)
        dist = run_forecast(cals, market(m=1.0, horizon=30.0), ev,
                            SimulationConfig(seed=13, n_paths=5000))
        assert dist.ev_histogram.sum() == pytest.approx(1.0, abs=1e-12)
        assert dist.p_national == pytest.approx(dist.ev_histogram[270:].sum(), abs=0)

    def test_monotone_in_win_threshold(self):
        ev = default_ev_table()
        cals = flat_cals(ev, alpha=1.0, beta=1.0, sigma=2.0)
        mkt = market(m=0.5, horizon=9.0)
        probs = [
            run_forecast(cals, mkt, ev,
                         SimulationConfig(seed=19, n_paths=3000, win_threshold=thr)).p_national
            for thr in (-2.0, -0.5, 0.0, 0.5, 2.0)
        ]
        assert all(a >= b for a, b in zip(probs, probs[1:]))

    def test_threads_do_not_change_bits(self):
        ev = default_ev_table()
        cals = flat_cals(ev, alpha=0.2, beta=1.1, sigma=1.5)
        mkt = market(m=0.8, horizon=12.0)
        base = run_forecast(cals, mkt, ev, SimulationConfig(seed=5, n_paths=2000))
        for workers in (2, 4, 8):
            alt = run_forecast(cals, mkt, ev,
                               SimulationConfig(seed=5, n_paths=2000, workers=workers))
            assert alt.p_state == base.p_state
            np.testing.assert_array_equal(alt.ev_histogram, base.ev_histogram)

    def test_student_t_run(self):
        ev = default_ev_table()
        cals = flat_cals(ev, alpha=0.5, beta=1.0, sigma=1.0)
        cfg = SimulationConfig(seed=23, n_paths=2000, noise_model=StudentTNoise())
        dist = run_forecast(cals, market(m=1.0), ev, cfg)
        assert dist.ev_histogram.sum() == pytest.approx(1.0, abs=1e-12)
        assert 0.0 <= dist.p_national <= 1.0

    def test_missing_calibration_raises(self):
        ev = default_ev_table()
        cals = flat_cals(ev)
        del cals["OH"]
        with pytest.raises(ConfigurationError, match="OH"):
            run_forecast(cals, market(), ev, SimulationConfig(seed=1, n_paths=10))

    def test_wide_horizon_tends_to_half(self):
        # one beta-coalition holds >= 270 EV, so an enormous diffusion makes
        # the race a fair coin on the market's sign
        ev = default_ev_table()
        plus, total = set(), 0
        for s in sorted(ev, key=lambda k: -ev[k]):
            if total < 300:
                plus.add(s)
                total += ev[s]
        cals = {
            s: StateCalibration(s, 0.0, 1.0 if s in plus else -1.0, 0.1, 5, "polls")
            for s in ev
        }
        mkt = market(5.0, 5.0, m=0.0, horizon=10000.0)
        dist = run_forecast(cals, mkt, ev, SimulationConfig(seed=1, n_paths=10000))
        assert 0.45 <= dist.p_national <= 0.55


class TestProbabilityTimeSeries:
    def _leaning_cals(self, ev):
        offsets = [-1.0, -0.5, 0.0, 0.5, 1.0]
        return {
            s: StateCalibration(s, offsets[i % 5], 1.0, 1.5, 5, "polls")
            for i, s in enumerate(sorted(ev))
        }

    def test_zero_horizon_with_positive_spreads(self):
        ev = default_ev_table()
        cals = flat_cals(ev, alpha=3.0, beta=1.0, sigma=0.0)
        series = probability_time_series(
            cals, [market(1.0, 1.0, m=2.0, horizon=0.0)], ev,
            SimulationConfig(seed=3, n_paths=500),
        )
        assert series == [(0.0, 1.0)]

    def test_long_horizon_is_less_decisive(self):
        ev = default_ev_table()
        cals = self._leaning_cals(ev)
        series = probability_time_series(
            cals,
            [market(0.5, 0.5, m=2.0, horizon=100.0),
             market(0.5, 0.5, m=2.0, horizon=1.0)],
            ev,
            SimulationConfig(seed=3, n_paths=10000),
        )
        (h100, p100), (h1, p1) = series
        assert (h100, h1) == (100.0, 1.0)
        assert abs(p100 - 0.5) <= abs(p1 - 0.5) + 0.02

    def test_same_horizon_reproduces(self):
        # identical data on consecutive days differ only through the horizon
        ev = default_ev_table()
        cals = self._leaning_cals(ev)
        cfg = SimulationConfig(seed=9, n_paths=2000)
        day_a = probability_time_series(cals, [market(m=1.0, horizon=30.0)], ev, cfg)
        day_b = probability_time_series(cals, [market(m=1.0, horizon=30.0)], ev, cfg)
        assert day_a == day_b


class TestConfigValidation:
    def test_bad_paths(self):
        with pytest.raises(ValueError):
            SimulationConfig(seed=1, n_paths=0)

    def test_bad_nu(self):
        with pytest.raises(ValueError):
            StudentTNoise(nu=0)

    def test_seed_range(self):
        with pytest.raises(ValueError):
            SimulationConfig(seed=-1)
        SimulationConfig(seed=2**64 - 1)
