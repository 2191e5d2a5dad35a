"""Equilibrium machinery for the jury game.

Covers the exact distribution of the other jurors' vote counts, closed-form
best responses, equilibrium verification, the fidelity-flip mirror map, the
simple-equilibrium payment condition, and the root finder for symmetric
equilibria of homogeneous well-informed juries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import (
    EffortProfile,
    PaymentFunction,
    Strategy,
    StrategyProfile,
    expected_vote_advantage,
    vote_advantage,
    vote_probability,
)
from .payment_design import binomial_weights


def poisson_binomial_pmf(probabilities: Sequence[float]) -> np.ndarray:
    """Exact PMF of a sum of independent Bernoulli trials, by convolution.

    O(k^2) in the number of trials; plenty for juries up to a few thousand.
    """
    pmf = np.zeros(len(probabilities) + 1)
    pmf[0] = 1.0
    for p in probabilities:
        pmf[1:] = pmf[1:] * (1.0 - p) + pmf[:-1] * p
        pmf[0] *= 1.0 - p
    return pmf


def others_vote_pmf(profile: StrategyProfile, i: int) -> np.ndarray:
    """PMF of the number of ground-truth votes among all jurors except ``i``.

    Heterogeneous jurors make this a Poisson-binomial, not a plain binomial.
    """
    if not 0 <= i < profile.size:
        raise ValueError(f"agent index {i} out of range for jury of {profile.size}")
    probs = [
        vote_probability(e, s) for j, (e, s) in enumerate(profile.agents) if j != i
    ]
    return poisson_binomial_pmf(probs)


@dataclass(frozen=True)
class BestResponse:
    """Utility-maximizing play against a fixed vote advantage.

    ``fidelity`` is None when any value in [0, 1] is optimal, which can only
    happen at zero effort (the vote is then a coin flip regardless).
    """

    effort: float
    fidelity: float | None

    def __post_init__(self) -> None:
        if self.fidelity is None and self.effort != 0.0:
            raise ValueError("fidelity can be unconstrained only at zero effort")


def best_response(profile: EffortProfile, advantage: float) -> BestResponse:
    """Closed-form best response to a known vote advantage.

    Below the activation threshold (|slope at zero| * |advantage| <= 1) no
    effort is worthwhile.  Above it, effort rises to the point where the
    marginal signal gain exactly offsets the marginal cost, and the juror
    either trusts her signal fully or inverts it fully.
    """
    drive = profile.derivative(0.0) * advantage
    if abs(drive) <= 1.0:
        return BestResponse(0.0, None)
    effort = math.log(profile.rate * abs(advantage) / 2.0) / profile.rate
    return BestResponse(effort, 1.0 if drive > 0.0 else 0.0)


def best_response_to_pmf(
    profile: EffortProfile,
    payment: PaymentFunction,
    pmf: Sequence[float],
    n: int,
) -> BestResponse:
    """Best response when only the distribution of other votes is known."""
    return best_response(profile, expected_vote_advantage(payment, pmf, n))


@dataclass(frozen=True)
class AgentVerdict:
    case: str  # "a" (no effort), "b" (trust signal), "c" (invert), "invalid"
    residual: float
    ok: bool


@dataclass(frozen=True)
class EquilibriumReport:
    is_equilibrium: bool
    per_agent: tuple[AgentVerdict, ...]


def verify_equilibrium(
    profile: StrategyProfile,
    payment: PaymentFunction,
    tol: float = 1e-8,
) -> EquilibriumReport:
    """Check the first-order equilibrium conditions agent by agent.

    The case an agent must satisfy is read off her strategy: zero effort
    needs the advantage to be below the activation threshold; positive
    effort with fidelity 1 (resp. 0) needs the marginal condition
    slope * advantage = 1 (resp. -1).  Positive effort with fractional
    fidelity can never be optimal.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = profile.size
    verdicts = []
    for i, (curve, strategy) in enumerate(profile.agents):
        adv = expected_vote_advantage(payment, others_vote_pmf(profile, i), n)
        if strategy.effort == 0.0:
            residual = max(0.0, abs(curve.derivative(0.0) * adv) - 1.0)
            verdicts.append(AgentVerdict("a", residual, residual <= tol))
        elif strategy.fidelity == 1.0:
            residual = abs(curve.derivative(strategy.effort) * adv - 1.0)
            verdicts.append(AgentVerdict("b", residual, residual <= tol))
        elif strategy.fidelity == 0.0:
            residual = abs(curve.derivative(strategy.effort) * adv + 1.0)
            verdicts.append(AgentVerdict("c", residual, residual <= tol))
        else:
            verdicts.append(AgentVerdict("invalid", math.inf, False))
    return EquilibriumReport(all(v.ok for v in verdicts), tuple(verdicts))


def mirror(profile: StrategyProfile) -> StrategyProfile:
    """Flip every fidelity to 1 - fidelity, keeping efforts.

    Maps each equilibrium to the equilibrium that is biased toward the
    opposite alternative; an involution.
    """
    return StrategyProfile(
        tuple(
            (curve, Strategy(s.effort, 1.0 - s.fidelity))
            for curve, s in profile.agents
        )
    )


def satisfies_simple_condition(payment: PaymentFunction, n: int) -> bool:
    """Sufficient payment condition for all equilibria to be simple:
    the vote advantage must be non-decreasing in the others' count."""
    if n < 2:
        raise ValueError(f"need a jury of at least 2, got n={n}")
    for m in range(n - 1):
        gap = (
            payment.value((2 + m) / n, n)
            - payment.value((1 + m) / n, n)
            + payment.value((n - m) / n, n)
            - payment.value((n - m - 1) / n, n)
        )
        if gap < -1e-12:
            return False
    return True


def is_monotone_nondecreasing(payment: PaymentFunction, n: int) -> bool:
    """Whether payments never drop as the same-vote fraction grows."""
    if n < 2:
        raise ValueError(f"need a jury of at least 2, got n={n}")
    return all(
        payment.value((k + 1) / n, n) - payment.value(k / n, n) >= -1e-12
        for k in range(1, n)
    )


def is_simple_profile(profile: StrategyProfile) -> bool:
    """True when every juror's ground-truth-vote probability sits on the
    same side of 1/2 (probabilities of exactly 1/2 count as both sides)."""
    probs = [vote_probability(e, s) for e, s in profile.agents]
    return all(p >= 0.5 for p in probs) or all(p <= 0.5 for p in probs)


def find_symmetric_equilibria(
    profile: EffortProfile,
    payment: PaymentFunction,
    n: int,
    effort_cap: float = 20.0,
    scan_points: int = 10_000,
    tol: float = 1e-8,
) -> list[float]:
    """Positive efforts at which everyone playing (effort, fidelity 1) is an
    equilibrium of a homogeneous well-informed jury.

    Scans g(e) = slope(e) * advantage(e) - 1 on a grid over [0, effort_cap]
    for sign changes and bisects each bracket.  Returns all roots found,
    largest first; empty when g stays negative (no payment large enough to
    activate effort).
    """
    if not profile.well_informed:
        raise ValueError("symmetric-equilibrium search assumes well-informed jurors")
    if n < 2:
        raise ValueError(f"need a jury of at least 2, got n={n}")
    advantage_table = np.array([vote_advantage(payment, m, n) for m in range(n)])

    def g(effort: float) -> float:
        weights = binomial_weights(n, profile.value(effort))
        return profile.derivative(effort) * float(weights @ advantage_table) - 1.0

    grid = np.linspace(0.0, effort_cap, scan_points)
    values = [g(e) for e in grid]

    roots: list[float] = []
    for k in range(scan_points - 1):
        lo, hi = grid[k], grid[k + 1]
        g_lo, g_hi = values[k], values[k + 1]
        if g_lo == 0.0 and lo > 0.0:
            roots.append(float(lo))
            continue
        if g_lo * g_hi >= 0.0:
            continue
        while hi - lo > 1e-13:
            mid = 0.5 * (lo + hi)
            g_mid = g(mid)
            if g_mid == 0.0:
                lo = hi = mid
                break
            if (g_lo < 0.0) == (g_mid < 0.0):
                lo, g_lo = mid, g_mid
            else:
                hi = mid
        root = float(0.5 * (lo + hi))
        if root > 0.0 and abs(g(root)) <= tol:
            roots.append(root)

    # Collapse near-duplicate brackets around the same root.
    roots.sort(reverse=True)
    deduped: list[float] = []
    for r in roots:
        if not deduped or abs(deduped[-1] - r) > 1e-9:
            deduped.append(r)
    return deduped
