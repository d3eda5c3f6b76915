"""Independent correctness checks: a dispatch verifier that recomputes every
operating constraint by direct arithmetic, an autonomy stress simulator, and
a grid-enumeration planner for tiny instances.

None of these reuse the branch-and-bound solve path.  The brute-force planner
does lean on the LP core to decide dispatch feasibility with all sizing
variables pinned, which is the one dependency the oracle design accepts: the
LP core is itself checked against vertex enumeration in the test suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .analysis import cost_breakdown
from .formulation import DispatchSchedule, PlanDecision, SIZING_NAMES, build_milp
from .optim import OPTIMAL, SolverOptions, solve_lp
from .scenario import ScenarioConfig

_LIMIT_TOL = 1e-6  # threshold above which a cap breach counts as a violation


@dataclass(frozen=True)
class ResidualReport:
    max_power_balance_residual: float  # MW
    max_soc_violation: float           # MWh, battery recurrence + level bounds
    max_cavern_violation: float        # MWh, cavern recurrence + level bounds
    endpoint_errors: float             # MWh, worst end-of-cycle state mismatch
    mode_conflicts: int                # hours flagged as charging and discharging
    limit_violations: int              # power caps / gating / sign breaches

    @property
    def worst_residual(self) -> float:
        return max(
            self.max_power_balance_residual,
            self.max_soc_violation,
            self.max_cavern_violation,
            self.endpoint_errors,
        )

    @property
    def clean(self) -> bool:
        return (
            self.worst_residual <= _LIMIT_TOL
            and self.mode_conflicts == 0
            and self.limit_violations == 0
        )


@dataclass(frozen=True)
class StressResult:
    survived_hours: int
    passed: bool
    # One row per served hour: (bess_mwh, cav_mwh, fc_mw, bess_disc_mw),
    # stocks measured after the hour.
    trajectory: list[tuple[float, float, float, float]]


def verify_dispatch(
    plan: PlanDecision, dispatch: DispatchSchedule, scenario: ScenarioConfig
) -> ResidualReport:
    """Recompute every operating constraint from scratch and report the worst
    violations.  This shares no code with the problem builder."""
    eff = scenario.efficiencies
    load = np.asarray(scenario.load_profile.values)
    wind = np.asarray(scenario.wind_unit_profile.values)
    pd_ = np.asarray(dispatch.p_disc, dtype=float)
    pc = np.asarray(dispatch.p_char, dtype=float)
    pel = np.asarray(dispatch.p_el, dtype=float)
    pfc = np.asarray(dispatch.p_fc, dtype=float)
    pcu = np.asarray(dispatch.p_curt, dtype=float)
    eb = np.asarray(dispatch.e_bess, dtype=float)
    ec = np.asarray(dispatch.e_cav, dtype=float)
    ud = np.asarray(dispatch.u_disc, dtype=float)
    uc = np.asarray(dispatch.u_char, dtype=float)

    balance = pd_ + plan.wt_count * wind + pfc - load - pc - pel - pcu
    max_balance = float(np.abs(balance).max())

    eb_prev = np.concatenate([[scenario.bess_initial_frac * plan.bess_energy], eb[:-1]])
    soc_step = eb - eb_prev - eff.eta_char * pc + pd_ / eff.eta_disc
    soc_bounds = np.maximum(eb - plan.bess_energy, 0.0) + np.maximum(-eb, 0.0)
    max_soc = float(max(np.abs(soc_step).max(), soc_bounds.max()))

    cav_cap = plan.cav_mass * eff.eps_h
    ec_prev = np.concatenate([[scenario.cav_initial_frac * cav_cap], ec[:-1]])
    cav_step = ec - ec_prev - eff.eta_el * pel + pfc / eff.eta_fc
    cav_bounds = np.maximum(ec - cav_cap, 0.0) + np.maximum(-ec, 0.0)
    max_cav = float(max(np.abs(cav_step).max(), cav_bounds.max()))

    endpoint = max(
        abs(float(eb[-1]) - scenario.bess_initial_frac * plan.bess_energy),
        abs(float(ec[-1]) - scenario.cav_initial_frac * cav_cap),
    )

    mode_conflicts = int(np.count_nonzero(ud + uc > 1 + 1e-9))

    limit_violations = 0
    limit_violations += int(np.count_nonzero(pd_ > plan.bess_disc_power + _LIMIT_TOL))
    limit_violations += int(np.count_nonzero(pd_ > scenario.big_m * ud + _LIMIT_TOL))
    limit_violations += int(np.count_nonzero(pc > plan.bess_char_power + _LIMIT_TOL))
    limit_violations += int(np.count_nonzero(pc > scenario.big_m * uc + _LIMIT_TOL))
    limit_violations += int(np.count_nonzero(pel > plan.el_power + _LIMIT_TOL))
    limit_violations += int(np.count_nonzero(pfc > plan.fc_power + _LIMIT_TOL))
    for series in (pd_, pc, pel, pfc, pcu):
        limit_violations += int(np.count_nonzero(series < -_LIMIT_TOL))

    return ResidualReport(
        max_power_balance_residual=max_balance,
        max_soc_violation=max_soc,
        max_cavern_violation=max_cav,
        endpoint_errors=endpoint,
        mode_conflicts=mode_conflicts,
        limit_violations=limit_violations,
    )


def resilience_stress_test(
    plan: PlanDecision, scenario: ScenarioConfig, tr_hours: int
) -> StressResult:
    """Drawdown with wind at zero and rated demand, starting from full storage.

    The autonomy sizing rules pool the two storages: combined dischargeable
    power must cover the peak and combined deliverable energy must cover the
    outage, with no rule about how the split evolves hour by hour.  The
    simulation mirrors exactly that guarantee - one reservoir with the summed
    power cap and the two deliverable stocks, drained cavern-first - so a plan
    passes if and only if some feasible split of the pooled ratings serves the
    full outage.
    """
    eff = scenario.efficiencies
    demand = scenario.p_rig_rated
    power_cap = plan.bess_disc_power + plan.fc_power
    bess_stock = plan.bess_energy                  # stored MWh, starts full
    cav_stock = plan.cav_mass * eff.eps_h          # stored MWh of hydrogen energy
    tol = 1e-9 * max(1.0, demand)

    trajectory = []
    survived = 0
    for _ in range(int(tr_hours)):
        deliverable = cav_stock * eff.eta_fc + bess_stock * eff.eta_disc
        if power_cap + tol < demand or deliverable + tol < demand:
            break
        fc_out = min(demand, cav_stock * eff.eta_fc)
        disc_out = demand - fc_out
        cav_stock = max(0.0, cav_stock - fc_out / eff.eta_fc)
        bess_stock = max(0.0, bess_stock - disc_out / eff.eta_disc)
        survived += 1
        trajectory.append((bess_stock, cav_stock, fc_out, disc_out))
    return StressResult(
        survived_hours=survived,
        passed=survived >= int(tr_hours),
        trajectory=trajectory,
    )


@dataclass(frozen=True)
class BruteForceResult:
    status: str  # "optimal" or "all_infeasible"
    plan: PlanDecision | None
    objective: float | None


def brute_force_plan(
    scenario: ScenarioConfig,
    grids: dict[str, list[float]],
    options: SolverOptions | None = None,
    max_points: int = 100_000,
) -> BruteForceResult:
    """Exhaustive search over a sizing grid for tiny scenarios.

    Each grid point pins all seven sizing variables and asks the LP core
    whether any dispatch satisfies the operating constraints (charge/discharge
    statuses relaxed to [0, 1]); the cheapest feasible point wins.  Intended
    for short horizons, as an optimizer oracle rather than a planner.
    """
    options = options or SolverOptions()
    unknown = set(grids) - set(SIZING_NAMES)
    if unknown:
        raise ValueError(f"unknown sizing variable {sorted(unknown)[0]!r} in grid")
    axes = []
    for name in SIZING_NAMES:
        values = list(grids.get(name, [0.0]))
        if not values:
            raise ValueError(f"empty grid for sizing variable {name!r}")
        axes.append(values)
    total = math.prod(len(a) for a in axes)
    if total > max_points:
        raise ValueError(f"grid has {total} points, above the {max_points} limit")

    problem, index = build_milp(scenario)
    base_lower = problem.lower_bounds.copy()
    base_upper = problem.upper_bounds.copy()
    sizing_cols = index.sizing

    best_plan = None
    best_objective = math.inf
    for combo in itertools.product(*axes):
        plan = PlanDecision(
            wt_count=int(round(combo[0])),
            bess_energy=combo[1],
            bess_char_power=combo[2],
            bess_disc_power=combo[3],
            el_power=combo[4],
            fc_power=combo[5],
            cav_mass=combo[6],
        )
        lower = base_lower.copy()
        upper = base_upper.copy()
        for col, value in zip(sizing_cols, combo):
            lower[col] = value
            upper[col] = value
        problem.lower_bounds = lower
        problem.upper_bounds = upper
        lp = solve_lp(problem, options)
        if lp.status != OPTIMAL:
            continue
        objective = cost_breakdown(plan, scenario).grand_total
        if objective < best_objective - 1e-12:
            best_objective = objective
            best_plan = plan
    problem.lower_bounds = base_lower
    problem.upper_bounds = base_upper
    if best_plan is None:
        return BruteForceResult(status="all_infeasible", plan=None, objective=None)
    return BruteForceResult(status="optimal", plan=best_plan, objective=best_objective)
