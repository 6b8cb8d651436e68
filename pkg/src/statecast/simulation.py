"""Monte Carlo election simulation.

The national spread diffuses with constant volatility and no drift, so only
its terminal law matters: each path's terminal spread is Gaussian around the
current smoothed level with variance (sigma_samp + sigma_m)^2 * horizon.
Per path, each state gets an independent noise draw around its fitted line
(Gaussian residuals by default, or a Student-T predictive variant that also
resamples the line's parameters), states are settled winner-take-all, and
electoral votes are summed to 0..538.

Randomness uses counter-based Philox substreams: the market and each state
own a stream keyed by (seed, stream index), and a path's draw sits at its
path index within that stream.  Results are therefore bitwise identical no
matter how work is scheduled across worker threads (workers parallelize over
states).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .calibration import MarketCalibration, StateCalibration
from .errors import ConfigurationError
from .states import WIN_ELECTORAL_VOTES, TOTAL_ELECTORAL_VOTES

_U64 = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class GaussianNoise:
    """State spread = alpha + beta * m + sigma_eps * Z."""


@dataclass(frozen=True)
class StudentTNoise:
    """Predictive draw with parameter uncertainty and Student-T residuals.

    Per path: alpha~ ~ N(alpha, sigma_alpha), beta~ ~ N(beta, sigma_beta),
    scale~ = |N(0, sigma_eps)|, and the spread is alpha~ + beta~ * m plus a
    StudentT(nu) sample times scale~.
    """

    sigma_alpha: float = 0.01
    sigma_beta: float = 1.0
    nu: int = 3

    def __post_init__(self):
        if self.nu < 1:
            raise ValueError("nu must be >= 1")


NoiseModel = GaussianNoise | StudentTNoise


@dataclass(frozen=True)
class SimulationConfig:
    """Knobs for one forecast run; the seed is mandatory.

    ``workers`` > 1 spreads state-noise generation over threads without
    changing any output bit.
    """

    seed: int
    n_paths: int = 10000
    noise_model: NoiseModel = field(default_factory=GaussianNoise)
    win_threshold: float = 0.0
    workers: int = 1

    def __post_init__(self):
        if not (0 <= self.seed <= _U64):
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.n_paths < 1:
            raise ValueError("n_paths must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class PathOutcomes:
    """Raw per-path results: terminal market, state spreads, electoral votes."""

    states: tuple[str, ...]
    m_terminal: np.ndarray
    state_spreads: np.ndarray
    ev_c1: np.ndarray


@dataclass
class ForecastDistribution:
    """Win probabilities and the electoral-vote histogram for one run."""

    p_state: dict[str, float]
    p_national: float
    ev_histogram: np.ndarray
    n_paths: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n_paths": self.n_paths,
            "p_national": self.p_national,
            "p_state": dict(sorted(self.p_state.items())),
            "ev_histogram": [float(x) for x in self.ev_histogram],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ForecastDistribution":
        return cls(
            p_state={k: float(v) for k, v in doc["p_state"].items()},
            p_national=float(doc["p_national"]),
            ev_histogram=np.asarray(doc["ev_histogram"], dtype=float),
            n_paths=int(doc["n_paths"]),
            seed=int(doc["seed"]),
        )


_MARKET_STREAM = 0


def _stream(seed: int, stream_id: int) -> np.random.Generator:
    """Philox generator for one (seed, stream) pair; path index = counter."""
    key = np.array([seed & _U64, stream_id & _U64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def simulate_market_terminals(mkt: MarketCalibration, cfg: SimulationConfig) -> np.ndarray:
    """Terminal national spreads: m + (sigma_samp + sigma_m) * sqrt(T) * Z."""
    rng = _stream(cfg.seed, _MARKET_STREAM)
    z = rng.standard_normal(cfg.n_paths)
    return mkt.m_current + mkt.sigma_total * np.sqrt(mkt.horizon) * z


def sample_state_noise(
    cal: StateCalibration,
    m_terminal,
    model: NoiseModel,
    rng: np.random.Generator,
) -> np.ndarray:
    """Spread draws for one state given terminal market values.

    ``m_terminal`` may be a scalar or an array of per-path terminals; one
    spread is returned per value, consuming the stream in a fixed order.
    """
    m = np.atleast_1d(np.asarray(m_terminal, dtype=float))
    n = m.shape[0]
    if isinstance(model, GaussianNoise):
        z = rng.standard_normal(n)
        return cal.alpha + cal.beta * m + cal.sigma_eps * z
    if isinstance(model, StudentTNoise):
        alpha = rng.normal(cal.alpha, model.sigma_alpha, n)
        beta = rng.normal(cal.beta, model.sigma_beta, n)
        scale = np.abs(rng.normal(0.0, cal.sigma_eps, n))
        t = rng.standard_t(model.nu, n)
        return alpha + beta * m + scale * t
    raise TypeError(f"unknown noise model {model!r}")


def aggregate_electoral_votes(
    state_spreads: dict[str, float],
    ev_table: dict[str, int],
    win_threshold: float = 0.0,
) -> int:
    """Electoral votes for candidate 1 on one path, winner-take-all.

    A state counts only when its spread strictly exceeds the threshold; a
    spread exactly at the threshold goes to candidate 2.
    """
    total = 0
    for state, votes in ev_table.items():
        if state not in state_spreads:
            raise ConfigurationError(f"no simulated spread for state {state}")
        if state_spreads[state] > win_threshold:
            total += votes
    return total


def simulate_paths(
    cals: dict[str, StateCalibration],
    mkt: MarketCalibration,
    ev_table: dict[str, int],
    cfg: SimulationConfig,
) -> PathOutcomes:
    """All Monte Carlo paths: market terminals, state spreads, EV totals."""
    states = tuple(sorted(ev_table))
    missing = [s for s in states if s not in cals]
    if missing:
        raise ConfigurationError(f"missing calibration for: {', '.join(missing)}")

    m = simulate_market_terminals(mkt, cfg)
    spreads = np.empty((cfg.n_paths, len(states)), dtype=float)

    def fill(i: int) -> None:
        rng = _stream(cfg.seed, 1 + i)
        spreads[:, i] = sample_state_noise(cals[states[i]], m, cfg.noise_model, rng)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            list(pool.map(fill, range(len(states))))
    else:
        for i in range(len(states)):
            fill(i)

    wins = spreads > cfg.win_threshold
    votes = np.array([ev_table[s] for s in states], dtype=np.int64)
    ev_c1 = wins.astype(np.int64) @ votes
    return PathOutcomes(states=states, m_terminal=m, state_spreads=spreads, ev_c1=ev_c1)


def run_forecast(
    cals: dict[str, StateCalibration],
    mkt: MarketCalibration,
    ev_table: dict[str, int],
    cfg: SimulationConfig,
) -> ForecastDistribution:
    """Win probabilities and EV histogram over ``cfg.n_paths`` simulations."""
    paths = simulate_paths(cals, mkt, ev_table, cfg)
    wins = paths.state_spreads > cfg.win_threshold
    p_state = {
        state: float(wins[:, i].mean()) for i, state in enumerate(paths.states)
    }
    counts = np.bincount(paths.ev_c1, minlength=TOTAL_ELECTORAL_VOTES + 1)
    histogram = counts / cfg.n_paths
    p_national = float(histogram[WIN_ELECTORAL_VOTES:].sum())
    return ForecastDistribution(
        p_state=p_state,
        p_national=p_national,
        ev_histogram=histogram,
        n_paths=cfg.n_paths,
        seed=cfg.seed,
    )


def probability_time_series(
    cals: dict[str, StateCalibration],
    markets: list[MarketCalibration],
    ev_table: dict[str, int],
    cfg: SimulationConfig,
) -> list[tuple[float, float]]:
    """National win probability for a sequence of market states.

    Each entry reruns the forecast with that day's level and horizon (same
    seed throughout), so two days with identical data differ only through
    the remaining diffusion time.
    """
    out = []
    for mkt in markets:
        dist = run_forecast(cals, mkt, ev_table, cfg)
        out.append((mkt.horizon, dist.p_national))
    return out
