"""Core primitives of the jury game.

A binary adjudication task is put to ``n`` jurors.  Each juror exerts an
effort ``effort >= 0`` and receives a signal that equals the ground truth
with probability given by her effort curve; with probability ``fidelity``
she casts the signal as her vote, otherwise the opposite.  The mechanism
pays ``p(x)`` to a juror when a fraction ``x`` of the jury voted the same
way she did.

Everything here is an immutable value type plus pure functions, so objects
can be shared freely across threads and processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class AgentKind(Enum):
    """Whether extra effort improves or degrades a juror's signal."""

    WELL_INFORMED = "well-informed"
    MISINFORMED = "misinformed"


@dataclass(frozen=True)
class EffortProfile:
    """Exponential signal-quality curve with a decay ``rate``.

    Well-informed: ``f(e) = 1 - exp(-rate*e)/2`` (increasing, concave).
    Misinformed:   ``f(e) = exp(-rate*e)/2``     (decreasing, convex).
    Both start at exactly 1/2 with zero effort.
    """

    kind: AgentKind
    rate: float = 1.0

    def __post_init__(self) -> None:
        if not self.rate > 0.0:
            raise ValueError(f"rate must be positive, got {self.rate}")

    @property
    def well_informed(self) -> bool:
        return self.kind is AgentKind.WELL_INFORMED

    def value(self, effort: float) -> float:
        """Probability of receiving the ground truth at the given effort."""
        if effort < 0.0:
            raise ValueError(f"effort must be non-negative, got {effort}")
        half = math.exp(-self.rate * effort) / 2.0
        return 1.0 - half if self.well_informed else half

    def derivative(self, effort: float) -> float:
        """Slope of the signal-quality curve (negative for misinformed)."""
        if effort < 0.0:
            raise ValueError(f"effort must be non-negative, got {effort}")
        slope = self.rate * math.exp(-self.rate * effort) / 2.0
        return slope if self.well_informed else -slope

    def inverse(self, quality: float) -> float:
        """Effort level that produces the given signal quality.

        Accepts the closed end 1/2 (zero effort) so that
        ``inverse(value(e)) == e`` holds on the whole domain.
        """
        if self.well_informed:
            if not 0.5 <= quality < 1.0:
                raise ValueError(
                    f"well-informed quality must lie in [1/2, 1), got {quality}"
                )
            return -math.log(2.0 * (1.0 - quality)) / self.rate
        if not 0.0 < quality <= 0.5:
            raise ValueError(
                f"misinformed quality must lie in (0, 1/2], got {quality}"
            )
        return -math.log(2.0 * quality) / self.rate


class PaymentFunction:
    """Maps the same-vote fraction ``x`` to a payment.

    Evaluation is only ever needed at the grid fractions ``k/n`` produced by
    vote counts; fractions at exactly 1/2 take the majority branch.
    """

    def value(self, x: float, n: int) -> float:
        raise NotImplementedError


def _check_fraction(x: float) -> None:
    if not 0.0 < x <= 1.0:
        raise ValueError(f"vote fraction must lie in (0, 1], got {x}")


@dataclass(frozen=True)
class ThresholdPayment(PaymentFunction):
    """Fixed reward to every majority voter, nothing to the minority."""

    reward: float

    def value(self, x: float, n: int) -> float:
        _check_fraction(x)
        return self.reward if x >= 0.5 else 0.0


@dataclass(frozen=True)
class AwardLossSharingPayment(PaymentFunction):
    """Majority voters share a total award; minority voters share the same
    amount as a loss."""

    total_award: float

    def value(self, x: float, n: int) -> float:
        _check_fraction(x)
        share = self.total_award / (x * n)
        return share if x >= 0.5 else -share


@dataclass(frozen=True)
class KlerosPayment(PaymentFunction):
    """Majority voters share an award, minority voters share a (possibly
    different) loss.  ``award <= loss`` is required for simple equilibria but
    is checked by the equilibrium module, not assumed here."""

    award: float
    loss: float

    def value(self, x: float, n: int) -> float:
        _check_fraction(x)
        if x >= 0.5:
            return self.award / (x * n)
        return -self.loss / (x * n)


# Tabulated lookups tolerate this much deviation from an exact grid fraction.
GRID_TOL = 1e-12


@dataclass(frozen=True)
class TabulatedPayment(PaymentFunction):
    """Payment table over the grid x = 1/n, 2/n, ..., 1 (e.g. a designed
    payment).  Off-grid queries are errors, never interpolated."""

    jury_size: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.jury_size < 1:
            raise ValueError(f"jury_size must be >= 1, got {self.jury_size}")
        if len(self.values) != self.jury_size:
            raise ValueError(
                f"need exactly {self.jury_size} table values, got {len(self.values)}"
            )
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def value(self, x: float, n: int) -> float:
        _check_fraction(x)
        if n != self.jury_size:
            raise ValueError(
                f"table is for jury size {self.jury_size}, queried with n={n}"
            )
        k = round(x * n)
        if k < 1 or k > n or abs(x - k / n) > GRID_TOL:
            raise ValueError(f"x={x} is not a grid fraction k/{n}")
        return self.values[k - 1]


@dataclass(frozen=True)
class Strategy:
    """A juror's play: effort spent plus the probability of casting the
    received signal as the vote (``fidelity``)."""

    effort: float
    fidelity: float

    def __post_init__(self) -> None:
        if self.effort < 0.0:
            raise ValueError(f"effort must be non-negative, got {self.effort}")
        if not 0.0 <= self.fidelity <= 1.0:
            raise ValueError(f"fidelity must lie in [0, 1], got {self.fidelity}")


@dataclass(frozen=True)
class StrategyProfile:
    """Strategies for a whole jury, paired with each juror's effort curve."""

    agents: tuple[tuple[EffortProfile, Strategy], ...]

    def __post_init__(self) -> None:
        if len(self.agents) < 1:
            raise ValueError("a profile needs at least one agent")
        object.__setattr__(self, "agents", tuple(self.agents))

    @property
    def size(self) -> int:
        return len(self.agents)


def vote_probability(profile: EffortProfile, strategy: Strategy) -> float:
    """Probability this juror casts a vote for the ground truth."""
    f = profile.value(strategy.effort)
    b = strategy.fidelity
    return b * f + (1.0 - b) * (1.0 - f)


def validate_pmf(pmf: Sequence[float], n: int) -> None:
    """Check a vote-count PMF over {0, ..., n-1}: length n, entries >= 0,
    total mass 1 within 1e-9."""
    if len(pmf) != n:
        raise ValueError(f"PMF must have {n} entries (counts 0..{n - 1}), got {len(pmf)}")
    if any(p < 0.0 for p in pmf):
        raise ValueError("PMF entries must be non-negative")
    total = math.fsum(pmf)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"PMF must sum to 1 within 1e-9, got {total}")


def vote_advantage(payment: PaymentFunction, count: int, n: int) -> float:
    """Payment gain of a ground-truth vote over the opposite vote when
    exactly ``count`` of the other n-1 jurors vote for the ground truth."""
    if not 0 <= count <= n - 1:
        raise ValueError(f"count must lie in [0, {n - 1}], got {count}")
    return payment.value((1 + count) / n, n) - payment.value((n - count) / n, n)


def expected_vote_advantage(
    payment: PaymentFunction, pmf: Sequence[float], n: int
) -> float:
    """Expectation of :func:`vote_advantage` under a vote-count PMF."""
    validate_pmf(pmf, n)
    return math.fsum(
        p * vote_advantage(payment, t, n) for t, p in enumerate(pmf) if p != 0.0
    )


def expected_utility(
    profile: EffortProfile,
    strategy: Strategy,
    payment: PaymentFunction,
    pmf: Sequence[float],
    n: int,
) -> float:
    """Expected quasilinear utility of one juror against the others' votes.

    Equals minus the effort cost, plus the expected ground-truth-vote
    payment, plus a correction proportional to the expected vote advantage
    that accounts for the juror's actual signal quality and fidelity.
    """
    validate_pmf(pmf, n)
    pay_true = math.fsum(
        p * payment.value((1 + t) / n, n) for t, p in enumerate(pmf) if p != 0.0
    )
    adv = expected_vote_advantage(payment, pmf, n)
    f = profile.value(strategy.effort)
    b = strategy.fidelity
    return -strategy.effort + pay_true + (b * (2.0 * f - 1.0) - f) * adv
