"""Two-sector demand-hierarchy equilibrium engine.

Education shifts household preferences toward the high-tier good and fuels
learning-by-doing in its sector; demand and supply close through a
one-dimensional map for the relative price. The package finds and classifies
the map's fixed points, sweeps education levels for saddle-node thresholds,
simulates time paths, and evaluates the planner's education first-order
condition.
"""

__version__ = "0.1.0"

from .bifurcation import (
    BifurcationDiagram,
    ChannelCondition,
    DiagramRow,
    SaddleNode,
    SweepConfig,
    Transition,
    channel_condition,
    refine_saddle_node,
    sweep,
)
from .demand import (
    DemandSolution,
    HouseholdBudget,
    IncomeElasticities,
    PreferenceSchedule,
    ShareSlope,
    alpha_of,
    dshare_H_dE,
    gammaL_of,
    income_elasticities,
    solve_demand,
    stone_geary_utility,
    supernumerary_income,
)
from .dynamics import (
    GrowthFactors,
    HRatio,
    LearningSpec,
    LearningVariant,
    TechnologyState,
    TimePath,
    excess_share,
    excess_share_slope_E,
    growth_factors,
    h_ratio,
    price_map,
    simulate_path,
)
from .errors import (
    ConfigError,
    DegenerateChannel,
    DemandTierError,
    InvalidHorizon,
    InvalidPrice,
    InvalidState,
    NoConvergence,
    NonInteriorBudget,
    ShareOutOfRange,
    SpecVariantUnsupported,
)
from .planner import (
    FocReport,
    PlannerConfig,
    education_wedge_sign,
    evaluate_foc,
    kappa,
    kappa_prime,
)
from .scenario import (
    Scenario,
    SimulationConfig,
    StaticsConfig,
    default_scenario,
    dump_scenario,
    load_scenario,
    load_scenario_dict,
    scenario_to_dict,
)
from .solver import (
    FixedPoint,
    SolverConfig,
    Stability,
    classify_stability,
    find_fixed_points,
)

__all__ = [
    "BifurcationDiagram",
    "ChannelCondition",
    "ConfigError",
    "DegenerateChannel",
    "DemandSolution",
    "DemandTierError",
    "DiagramRow",
    "FixedPoint",
    "FocReport",
    "GrowthFactors",
    "HRatio",
    "HouseholdBudget",
    "IncomeElasticities",
    "InvalidHorizon",
    "InvalidPrice",
    "InvalidState",
    "LearningSpec",
    "LearningVariant",
    "NoConvergence",
    "NonInteriorBudget",
    "PlannerConfig",
    "PreferenceSchedule",
    "SaddleNode",
    "Scenario",
    "ShareOutOfRange",
    "ShareSlope",
    "SimulationConfig",
    "SolverConfig",
    "SpecVariantUnsupported",
    "Stability",
    "StaticsConfig",
    "SweepConfig",
    "TechnologyState",
    "TimePath",
    "Transition",
    "alpha_of",
    "channel_condition",
    "classify_stability",
    "default_scenario",
    "dshare_H_dE",
    "dump_scenario",
    "education_wedge_sign",
    "evaluate_foc",
    "excess_share",
    "excess_share_slope_E",
    "find_fixed_points",
    "gammaL_of",
    "growth_factors",
    "h_ratio",
    "income_elasticities",
    "kappa",
    "kappa_prime",
    "load_scenario",
    "load_scenario_dict",
    "price_map",
    "refine_saddle_node",
    "scenario_to_dict",
    "simulate_path",
    "solve_demand",
    "stone_geary_utility",
    "supernumerary_income",
    "sweep",
]
