"""Strategic jury adjudication: utilities, equilibria, payment design,
best-response dynamics, and the sweep harness that maps correctness over
payment and population parameters."""

from .dynamics import (
    RoundState,
    SimulationConfig,
    Trajectory,
    assign_population,
    correctness_estimate,
    derive_seed,
    round_zero,
    simulate,
    step,
)
from .equilibrium import (
    BestResponse,
    EquilibriumReport,
    best_response,
    best_response_to_pmf,
    find_symmetric_equilibria,
    is_monotone_nondecreasing,
    is_simple_profile,
    mirror,
    others_vote_pmf,
    poisson_binomial_pmf,
    satisfies_simple_condition,
    verify_equilibrium,
)
from .heatmap import color_hex, render_heatmap
from .model import (
    AgentKind,
    AwardLossSharingPayment,
    EffortProfile,
    KlerosPayment,
    PaymentFunction,
    Strategy,
    StrategyProfile,
    TabulatedPayment,
    ThresholdPayment,
    expected_utility,
    expected_vote_advantage,
    vote_advantage,
    vote_probability,
)
from .payment_design import (
    DesignError,
    DesignOptions,
    PaymentDesign,
    binomial_weights,
    build_lp,
    design_payments,
)
from .simplex import LinearProgram, PivotLimitError, Solution, SolveStatus, solve
from .sweep import (
    PRESETS,
    Axis,
    SweepConfig,
    SweepResult,
    config_from_json,
    config_to_json,
    run_sweep,
    write_csv,
)

__all__ = [
    "AgentKind",
    "AwardLossSharingPayment",
    "Axis",
    "BestResponse",
    "DesignError",
    "DesignOptions",
    "EffortProfile",
    "EquilibriumReport",
    "KlerosPayment",
    "LinearProgram",
    "PRESETS",
    "PaymentDesign",
    "PaymentFunction",
    "PivotLimitError",
    "RoundState",
    "SimulationConfig",
    "Solution",
    "SolveStatus",
    "Strategy",
    "StrategyProfile",
    "SweepConfig",
    "SweepResult",
    "TabulatedPayment",
    "ThresholdPayment",
    "Trajectory",
    "assign_population",
    "best_response",
    "best_response_to_pmf",
    "binomial_weights",
    "build_lp",
    "color_hex",
    "config_from_json",
    "config_to_json",
    "correctness_estimate",
    "derive_seed",
    "design_payments",
    "expected_utility",
    "expected_vote_advantage",
    "find_symmetric_equilibria",
    "is_monotone_nondecreasing",
    "is_simple_profile",
    "mirror",
    "others_vote_pmf",
    "poisson_binomial_pmf",
    "render_heatmap",
    "round_zero",
    "run_sweep",
    "satisfies_simple_condition",
    "simulate",
    "solve",
    "step",
    "verify_equilibrium",
    "vote_advantage",
    "vote_probability",
    "write_csv",
]
