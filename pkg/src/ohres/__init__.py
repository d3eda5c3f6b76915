"""Sizing toolkit for 100%-renewable offshore platform power systems.

Plans wind turbine count, battery storage and a hydrogen chain
(electrolyzer, salt cavern, fuel cell, compressor) that minimize lifetime
cost while meeting hourly load and an optional autonomy requirement, using a
self-contained exact MILP engine.
"""

from .analysis import (
    CostBreakdown,
    SubsystemCost,
    TraditionalBenchmark,
    average_energy_cost,
    cost_breakdown,
    solve_scenario,
    sweep_resilience,
    sweep_unit_costs,
    traditional_benchmark,
)
from .formulation import (
    DispatchSchedule,
    PlanDecision,
    ResilienceBounds,
    VariableIndex,
    build_milp,
    extract_solution,
    resilience_lower_bounds,
)
from .optim import (
    LpSolution,
    MilpProblem,
    MilpSolution,
    PointReport,
    SolverError,
    SolverOptions,
    check_point,
    format_problem,
    solve_lp,
    solve_milp,
)
from .scenario import (
    CostParameters,
    EfficiencyParameters,
    ResilienceSpec,
    ScenarioConfig,
    ScenarioError,
    TimeSeriesProfile,
    bundled_scenario_path,
    default_parameters,
    load_scenario,
    save_scenario,
)
from .validation import (
    BruteForceResult,
    ResidualReport,
    StressResult,
    brute_force_plan,
    resilience_stress_test,
    verify_dispatch,
)

__version__ = "0.1.0"

__all__ = [
    "CostBreakdown",
    "SubsystemCost",
    "TraditionalBenchmark",
    "average_energy_cost",
    "cost_breakdown",
    "solve_scenario",
    "sweep_resilience",
    "sweep_unit_costs",
    "traditional_benchmark",
    "DispatchSchedule",
    "PlanDecision",
    "ResilienceBounds",
    "VariableIndex",
    "build_milp",
    "extract_solution",
    "resilience_lower_bounds",
    "LpSolution",
    "MilpProblem",
    "MilpSolution",
    "PointReport",
    "SolverError",
    "SolverOptions",
    "check_point",
    "format_problem",
    "solve_lp",
    "solve_milp",
    "CostParameters",
    "EfficiencyParameters",
    "ResilienceSpec",
    "ScenarioConfig",
    "ScenarioError",
    "TimeSeriesProfile",
    "bundled_scenario_path",
    "default_parameters",
    "load_scenario",
    "save_scenario",
    "BruteForceResult",
    "ResidualReport",
    "StressResult",
    "brute_force_plan",
    "resilience_stress_test",
    "verify_dispatch",
]
