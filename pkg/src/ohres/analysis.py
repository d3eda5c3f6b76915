"""Lifetime economics: cost breakdowns, the diesel benchmark and sensitivity sweeps.

Lifetime energy is rated power times 8760 times the horizon in years
(8,760,000 MWh for the 50 MW / 20-year reference platform), and all sums are
undiscounted.  Sweep cells re-solve from scratch, in input order, so output
tables are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .formulation import PlanDecision, build_milp, extract_solution
from .optim import INFEASIBLE, OPTIMAL, SolverOptions, solve_milp
from .scenario import ScenarioConfig

HOURS_PER_YEAR = 8760

# The wind + storage pathway burns no fuel; its operating emissions are zero
# by construction and reported as an exact constant.
OHRES_EMISSIONS_T = 0.0

SWEEPABLE_COST_PARAMETERS = ("wt_capital", "bess_capital", "el_capital", "fc_capital")

RESILIENCE_SWEEP_COLUMNS = (
    "tr_hours,wt_count,bess_mwh,el_mw,fc_mw,cav_kg,"
    "capital_musd,operation_musd,total_musd,avg_usd_per_mwh,status"
)
COST_GRID_COLUMNS = "param1,value1,param2,value2,avg_usd_per_mwh,status"


@dataclass(frozen=True)
class SubsystemCost:
    capital: float       # M$
    om_lifetime: float   # M$ over the full horizon

    @property
    def total(self) -> float:
        return self.capital + self.om_lifetime


@dataclass(frozen=True)
class CostBreakdown:
    wt: SubsystemCost
    bess: SubsystemCost
    el: SubsystemCost
    fc: SubsystemCost
    comp: SubsystemCost
    cav: SubsystemCost
    capital_total: float      # M$
    operation_total: float    # M$
    grand_total: float        # M$
    average_cost: float       # $/MWh
    lifetime_energy: float    # MWh


@dataclass(frozen=True)
class TraditionalBenchmark:
    capital: float            # M$
    fuel_cost_per_mwh: float  # $/MWh
    emission_rate: float      # t CO2 per MWh
    lifetime_energy: float    # MWh
    operation_total: float    # M$
    grand_total: float        # M$
    average_cost: float       # $/MWh
    total_emissions: float    # t CO2


@dataclass(frozen=True)
class SweepRow:
    tr_hours: int
    status: str
    plan: PlanDecision | None
    costs: CostBreakdown | None


@dataclass(frozen=True)
class CostGridCell:
    param1: str
    value1: float
    param2: str
    value2: float
    status: str
    average_cost: float | None


def lifetime_energy_mwh(p_rig_rated: float, lifetime_years: int) -> float:
    return p_rig_rated * HOURS_PER_YEAR * lifetime_years


def average_energy_cost(grand_total: float, p_rig_rated: float, lifetime_years: int) -> float:
    """Lifetime cost (M$) spread over rated lifetime energy, in $/MWh."""
    if p_rig_rated <= 0 or lifetime_years <= 0:
        raise ValueError("p_rig_rated and lifetime_years must be positive")
    return grand_total * 1e6 / lifetime_energy_mwh(p_rig_rated, lifetime_years)


def cost_breakdown(plan: PlanDecision, scenario: ScenarioConfig) -> CostBreakdown:
    """Capital and lifetime O&M per subsystem for a plan, plus totals."""
    c = scenario.costs
    te = scenario.lifetime_years
    eps_h = scenario.efficiencies.eps_h
    cav_energy = plan.cav_mass * eps_h
    parts = {
        "wt": SubsystemCost(plan.wt_count * c.wt_capital, plan.wt_count * c.wt_om * te),
        "bess": SubsystemCost(plan.bess_energy * c.bess_capital, plan.bess_energy * c.bess_om * te),
        "el": SubsystemCost(plan.el_power * c.el_capital, plan.el_power * c.el_om * te),
        "fc": SubsystemCost(plan.fc_power * c.fc_capital, plan.fc_power * c.fc_om * te),
        # Compressor rated with the electrolyzer; its upkeep is folded into el_om.
        "comp": SubsystemCost(plan.el_power * c.comp_capital, 0.0),
        "cav": SubsystemCost(cav_energy * c.cav_capital_per_mwh, cav_energy * c.cav_om * te),
    }
    capital_total = sum(p.capital for p in parts.values())
    operation_total = sum(p.om_lifetime for p in parts.values())
    grand_total = capital_total + operation_total
    energy = lifetime_energy_mwh(scenario.p_rig_rated, te)
    return CostBreakdown(
        **parts,
        capital_total=capital_total,
        operation_total=operation_total,
        grand_total=grand_total,
        average_cost=grand_total * 1e6 / energy,
        lifetime_energy=energy,
    )


def traditional_benchmark(
    scenario: ScenarioConfig,
    capital: float = 12.5,
    fuel_cost_per_mwh: float = 90.0,
    emission_rate: float = 0.0601,
) -> TraditionalBenchmark:
    """Diesel-generator benchmark; defaults are back-derived from the published
    comparison totals, not independently sourced rates."""
    if min(capital, fuel_cost_per_mwh, emission_rate) < 0:
        raise ValueError("benchmark parameters must be >= 0")
    energy = lifetime_energy_mwh(scenario.p_rig_rated, scenario.lifetime_years)
    operation_total = fuel_cost_per_mwh * energy / 1e6
    grand_total = capital + operation_total
    return TraditionalBenchmark(
        capital=capital,
        fuel_cost_per_mwh=fuel_cost_per_mwh,
        emission_rate=emission_rate,
        lifetime_energy=energy,
        operation_total=operation_total,
        grand_total=grand_total,
        average_cost=grand_total * 1e6 / energy,
        total_emissions=emission_rate * energy,
    )


def solve_scenario(scenario: ScenarioConfig, options: SolverOptions | None = None):
    """Build, solve and unpack one scenario.

    Returns (solution, plan, costs, dispatch); plan/costs/dispatch are None
    unless the solve reached optimality.
    """
    problem, index = build_milp(scenario)
    solution = solve_milp(problem, options)
    if solution.status != OPTIMAL:
        return solution, None, None, None
    plan, dispatch = extract_solution(solution, index)
    return solution, plan, cost_breakdown(plan, scenario), dispatch


def sweep_resilience(
    scenario: ScenarioConfig,
    mode: str,
    tr_list,
    options: SolverOptions | None = None,
) -> list[SweepRow]:
    """One full solve per autonomy duration; infeasible rows are kept and marked."""
    rows = []
    for tr in tr_list:
        if tr < 0:
            raise ValueError(f"autonomy durations must be >= 0, got {tr}")
        solution, plan, costs, _ = solve_scenario(scenario.with_resilience(mode, tr), options)
        status = OPTIMAL if solution.status == OPTIMAL else INFEASIBLE
        rows.append(SweepRow(tr_hours=int(tr), status=status, plan=plan, costs=costs))
    return rows


def sweep_unit_costs(
    scenario: ScenarioConfig,
    mode: str,
    tr: int,
    axis1: tuple[str, list[float]],
    axis2: tuple[str, list[float]],
    options: SolverOptions | None = None,
) -> list[CostGridCell]:
    """Grid of average electricity cost over two capital-cost axes.

    All other parameters stay at their scenario values.  Cells are solved
    row-major in the given order, from scratch.
    """
    name1, values1 = axis1
    name2, values2 = axis2
    for name in (name1, name2):
        if name not in SWEEPABLE_COST_PARAMETERS:
            raise ValueError(
                f"unknown sweep parameter {name!r}; expected one of {SWEEPABLE_COST_PARAMETERS}"
            )
    if any(v < 0 for v in list(values1) + list(values2)):
        raise ValueError("sweep values must be >= 0")
    base = scenario.with_resilience(mode, tr)
    cells = []
    for v1 in values1:
        for v2 in values2:
            costs = replace(base.costs, **{name1: v1, name2: v2})
            cell_scenario = replace(base, costs=costs)
            solution, _, breakdown, _ = solve_scenario(cell_scenario, options)
            if solution.status == OPTIMAL:
                cells.append(CostGridCell(name1, v1, name2, v2, OPTIMAL, breakdown.average_cost))
            else:
                cells.append(CostGridCell(name1, v1, name2, v2, INFEASIBLE, None))
    return cells


def _fmt(value, decimals=2):
    return f"{max(value, 0.0):.{decimals}f}"


def resilience_sweep_csv(rows: list[SweepRow]) -> str:
    """Render sweep rows with the package's table precision (2 decimals,
    cavern mass 1 decimal); infeasible rows keep empty numeric cells."""
    lines = [RESILIENCE_SWEEP_COLUMNS]
    for row in rows:
        if row.status == OPTIMAL:
            p, c = row.plan, row.costs
            lines.append(
                ",".join(
                    [
                        str(row.tr_hours),
                        str(p.wt_count),
                        _fmt(p.bess_energy),
                        _fmt(p.el_power),
                        _fmt(p.fc_power),
                        _fmt(p.cav_mass, 1),
                        _fmt(c.capital_total),
                        _fmt(c.operation_total),
                        _fmt(c.grand_total),
                        _fmt(c.average_cost),
                        row.status,
                    ]
                )
            )
        else:
            lines.append(f"{row.tr_hours},,,,,,,,,,{row.status}")
    return "\n".join(lines) + "\n"


def cost_grid_csv(cells: list[CostGridCell]) -> str:
    lines = [COST_GRID_COLUMNS]
    for cell in cells:
        avg = _fmt(cell.average_cost) if cell.status == OPTIMAL else ""
        lines.append(
            f"{cell.param1},{_fmt(cell.value1)},{cell.param2},{_fmt(cell.value2)},{avg},{cell.status}"
        )
    return "\n".join(lines) + "\n"
