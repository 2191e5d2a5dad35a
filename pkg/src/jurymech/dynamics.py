"""Round-based best-response dynamics.

Round 0: every juror spends a fixed starter effort and casts her signal.
Each later round: every juror learns exactly how many of the others voted
for the ground truth last round, best-responds to the payment gap implied
by that count, and votes accordingly.  Updates are synchronous: all jurors
react to the same previous round.

All randomness flows through numpy's PCG64 generator.  Seeds for samples
are derived by feeding (seed, sample index) through SeedSequence's entropy
mixing, so sample streams are independent and insensitive to evaluation
order; that is what makes multi-worker sweeps bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibrium import best_response
from .model import (
    AgentKind,
    EffortProfile,
    PaymentFunction,
    Strategy,
    vote_advantage,
    vote_probability,
)

_SEED_LIMIT = 2**64


def derive_seed(*parts: int) -> int:
    """Mix integers into a fresh 64-bit seed (order-sensitive, stateless)."""
    return int(np.random.SeedSequence(list(parts)).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SimulationConfig:
    n: int
    rho: float  # fraction of well-informed jurors
    payment: PaymentFunction
    epsilon: float  # round-0 effort
    rounds: int
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"jury size must be >= 1, got {self.n}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.rounds < 1:
            raise ValueError(f"rounds must be >= 1, got {self.rounds}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class RoundState:
    votes: tuple[bool, ...]  # True = vote for the ground truth
    t_count: int

    def __post_init__(self) -> None:
        if self.t_count != sum(self.votes):
            raise ValueError("t_count does not match the votes")


@dataclass(frozen=True)
class Trajectory:
    states: tuple[RoundState, ...]  # index 0 is round 0
    final_correct: bool


def assign_population(n: int, rho: float) -> list[EffortProfile]:
    """First round(rho*n) jurors are well-informed, the rest misinformed,
    all with unit rate.  Placement is irrelevant: the dynamics treat jurors
    symmetrically."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    informed = round(rho * n)
    well = EffortProfile(AgentKind.WELL_INFORMED)
    mis = EffortProfile(AgentKind.MISINFORMED)
    return [well] * informed + [mis] * (n - informed)


def _state(votes: np.ndarray) -> RoundState:
    return RoundState(tuple(bool(v) for v in votes), int(votes.sum()))


def _response_tables(
    payment: PaymentFunction, population: list[EffortProfile], n: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-curve lookup of the ground-truth-vote probability for every
    possible feedback count, plus each juror's row index.

    A juror whose best response is zero effort votes by fair coin; otherwise
    she votes with the signal quality of her optimal effort, flipped when
    her optimal fidelity is zero.
    """
    curves: list[EffortProfile] = []
    group = np.empty(len(population), dtype=np.intp)
    for i, curve in enumerate(population):
        if curve not in curves:
            curves.append(curve)
        group[i] = curves.index(curve)

    advantages = [vote_advantage(payment, m, n) for m in range(n)]
    rows = np.empty((len(curves), n))
    for g, curve in enumerate(curves):
        for m, adv in enumerate(advantages):
            br = best_response(curve, adv)
            if br.fidelity is None:
                rows[g, m] = 0.5
            else:
                rows[g, m] = vote_probability(curve, Strategy(br.effort, br.fidelity))
    return rows, group


def _advance(
    votes: np.ndarray,
    tables: np.ndarray,
    group: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    feedback = int(votes.sum()) - votes.astype(np.intp)
    probs = tables[group, feedback]
    return rng.random(votes.shape[0]) < probs


def round_zero(
    population: list[EffortProfile], epsilon: float, rng: np.random.Generator
) -> RoundState:
    """Everyone spends the starter effort and casts the received signal."""
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    probs = np.array([curve.value(epsilon) for curve in population])
    return _state(rng.random(len(population)) < probs)


def step(
    prev: RoundState,
    population: list[EffortProfile],
    payment: PaymentFunction,
    n: int,
    rng: np.random.Generator,
) -> RoundState:
    """Synchronous best-response round against the previous votes."""
    if len(population) != n or len(prev.votes) != n:
        raise ValueError("population and previous state must both have n entries")
    tables, group = _response_tables(payment, population, n)
    return _state(_advance(np.array(prev.votes, dtype=bool), tables, group, rng))


def _final_votes(
    config: SimulationConfig,
    tables: np.ndarray,
    group: np.ndarray,
    zero_probs: np.ndarray,
    rng: np.random.Generator,
    record: list[np.ndarray] | None = None,
) -> np.ndarray:
    votes = rng.random(config.n) < zero_probs
    if record is not None:
        record.append(votes)
    for _ in range(config.rounds):
        votes = _advance(votes, tables, group, rng)
        if record is not None:
            record.append(votes)
    return votes


def simulate(config: SimulationConfig) -> Trajectory:
    """Run one seeded trajectory; identical configs give identical output."""
    population = assign_population(config.n, config.rho)
    tables, group = _response_tables(config.payment, population, config.n)
    zero_probs = np.array([curve.value(config.epsilon) for curve in population])
    rng = np.random.default_rng(config.seed)
    record: list[np.ndarray] = []
    votes = _final_votes(config, tables, group, zero_probs, rng, record)
    return Trajectory(
        states=tuple(_state(v) for v in record),
        final_correct=int(votes.sum()) > config.n / 2,
    )


def correctness_estimate(config: SimulationConfig, samples: int) -> float:
    """Fraction of independent runs whose final strict majority is correct.

    Sample k runs with seed derive_seed(config.seed, k), so the estimate is
    reproducible and each sample matches a standalone simulate() call with
    that derived seed.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    population = assign_population(config.n, config.rho)
    tables, group = _response_tables(config.payment, population, config.n)
    zero_probs = np.array([curve.value(config.epsilon) for curve in population])
    correct = 0
    for k in range(samples):
        rng = np.random.default_rng(derive_seed(config.seed, k))
        votes = _final_votes(config, tables, group, zero_probs, rng)
        if int(votes.sum()) > config.n / 2:
            correct += 1
    return correct / samples
