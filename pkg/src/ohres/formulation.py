"""Build the sizing MILP from a scenario and map solutions back to domain types.

Decision variables: seven sizing variables (turbine count, battery energy,
battery charge/discharge power ratings, electrolyzer power, fuel-cell power,
cavern hydrogen mass) plus, per hour, five dispatch powers, two storage
levels and two charge/discharge status binaries.  The objective is lifetime
capital plus O&M; dispatch carries no cost and only matters for feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .optim import BINARY, CONTINUOUS, EQ, GE, INTEGER, LE, MilpProblem, OPTIMAL, Row
from .scenario import MODE_BASIC, MODE_BESS, MODE_HESS, MODE_JOINT, ScenarioConfig

SIZING_NAMES = (
    "wt_count", "bess_energy", "bess_char_power", "bess_disc_power",
    "el_power", "fc_power", "cav_mass",
)


@dataclass(frozen=True)
class VariableIndex:
    """Column indices of every decision variable in the built problem."""

    v_wt: int
    v_bess: int
    p_char_max: int
    p_disc_max: int
    v_el: int
    v_fc: int
    v_cav: int
    p_disc: tuple[int, ...]
    p_char: tuple[int, ...]
    p_el: tuple[int, ...]
    p_fc: tuple[int, ...]
    p_curt: tuple[int, ...]
    e_bess: tuple[int, ...]
    e_cav: tuple[int, ...]
    u_disc: tuple[int, ...]
    u_char: tuple[int, ...]
    num_vars: int

    @property
    def sizing(self) -> tuple[int, ...]:
        return (self.v_wt, self.v_bess, self.p_char_max, self.p_disc_max,
                self.v_el, self.v_fc, self.v_cav)


@dataclass(frozen=True)
class PlanDecision:
    wt_count: int
    bess_energy: float       # MWh
    bess_char_power: float   # MW
    bess_disc_power: float   # MW
    el_power: float          # MW
    fc_power: float          # MW
    cav_mass: float          # kg


@dataclass(frozen=True)
class DispatchSchedule:
    p_disc: np.ndarray   # MW
    p_char: np.ndarray   # MW
    p_el: np.ndarray     # MW
    p_fc: np.ndarray     # MW
    p_curt: np.ndarray   # MW
    e_bess: np.ndarray   # MWh
    e_cav: np.ndarray    # MWh of stored hydrogen energy
    u_disc: np.ndarray   # 0/1
    u_char: np.ndarray   # 0/1


@dataclass(frozen=True)
class ResilienceBounds:
    """Closed-form sizing floors implied by a resilience mode."""

    fc_power_min: float      # MW
    cav_energy_min: float    # MWh of stored hydrogen energy
    bess_power_min: float    # MW
    bess_energy_min: float   # MWh
    joint_energy_min: float  # MWh deliverable by battery and hydrogen together


def build_milp(scenario: ScenarioConfig) -> tuple[MilpProblem, VariableIndex]:
    """Translate a validated scenario into the sizing MILP."""
    horizon = scenario.horizon
    eff = scenario.efficiencies
    costs = scenario.costs
    te = scenario.lifetime_years
    eps_h = eff.eps_h
    big_m = scenario.big_m
    load = scenario.load_profile.values
    wind = scenario.wind_unit_profile.values

    names = ["v_wt", "v_bess", "p_char_max", "p_disc_max", "v_el", "v_fc", "v_cav"]

    def block(prefix):
        start = len(names)
        names.extend(f"{prefix}[{t + 1}]" for t in range(horizon))
        return tuple(range(start, start + horizon))

    index = VariableIndex(
        v_wt=0, v_bess=1, p_char_max=2, p_disc_max=3, v_el=4, v_fc=5, v_cav=6,
        p_disc=block("p_disc"),
        p_char=block("p_char"),
        p_el=block("p_el"),
        p_fc=block("p_fc"),
        p_curt=block("p_curt"),
        e_bess=block("e_bess"),
        e_cav=block("e_cav"),
        u_disc=block("u_disc"),
        u_char=block("u_char"),
        num_vars=7 + 9 * horizon,
    )
    n = index.num_vars

    objective = np.zeros(n)
    objective[index.v_wt] = costs.wt_capital + costs.wt_om * te
    objective[index.v_bess] = costs.bess_capital + costs.bess_om * te
    # The compressor is rated with the electrolyzer, so its capital rides on v_el.
    objective[index.v_el] = costs.el_capital + costs.comp_capital + costs.el_om * te
    objective[index.v_fc] = costs.fc_capital + costs.fc_om * te
    objective[index.v_cav] = eps_h * (costs.cav_capital_per_mwh + costs.cav_om * te)

    lower = np.zeros(n)
    upper = np.full(n, np.inf)
    upper[index.v_wt] = scenario.wt_count_max
    upper[index.p_char_max] = big_m
    upper[index.p_disc_max] = big_m
    integrality = [CONTINUOUS] * n
    integrality[index.v_wt] = INTEGER
    for t in range(horizon):
        for u in (index.u_disc[t], index.u_char[t]):
            upper[u] = 1.0
            integrality[u] = BINARY

    rows: list[Row] = []

    def add(entries, relation, rhs):
        idx, coef = zip(*entries)
        rows.append(Row(indices=idx, coeffs=coef, relation=relation, rhs=float(rhs)))

    # Hourly power balance: discharge + wind + fuel cell = load + charge
    # + electrolyzer + curtailment.
    for t in range(horizon):
        add(
            [
                (index.p_disc[t], 1.0),
                (index.v_wt, wind[t]),
                (index.p_fc[t], 1.0),
                (index.p_char[t], -1.0),
                (index.p_el[t], -1.0),
                (index.p_curt[t], -1.0),
            ],
            EQ,
            load[t],
        )
    # Battery energy recurrence; hour 0 holds bess_initial_frac of capacity.
    for t in range(horizon):
        entries = [
            (index.e_bess[t], 1.0),
            (index.p_char[t], -eff.eta_char),
            (index.p_disc[t], 1.0 / eff.eta_disc),
        ]
        if t == 0:
            entries.append((index.v_bess, -scenario.bess_initial_frac))
        else:
            entries.append((index.e_bess[t - 1], -1.0))
        add(entries, EQ, 0.0)
    # The daily cycle must hand back the initial battery state.
    add([(index.e_bess[horizon - 1], 1.0), (index.v_bess, -scenario.bess_initial_frac)], EQ, 0.0)
    # Battery level within capacity.
    for t in range(horizon):
        add([(index.e_bess[t], 1.0), (index.v_bess, -1.0)], LE, 0.0)
    # Charge, discharge or idle: never both.
    for t in range(horizon):
        add([(index.u_char[t], 1.0), (index.u_disc[t], 1.0)], LE, 1.0)
    # Discharge/charge limited by the purchased power rating and gated by the
    # status binary (two rows in place of the binary-times-rating product).
    for t in range(horizon):
        add([(index.p_disc[t], 1.0), (index.p_disc_max, -1.0)], LE, 0.0)
    for t in range(horizon):
        add([(index.p_disc[t], 1.0), (index.u_disc[t], -big_m)], LE, 0.0)
    for t in range(horizon):
        add([(index.p_char[t], 1.0), (index.p_char_max, -1.0)], LE, 0.0)
    for t in range(horizon):
        add([(index.p_char[t], 1.0), (index.u_char[t], -big_m)], LE, 0.0)
    # Cavern hydrogen-energy recurrence; hour 0 holds cav_initial_frac of capacity.
    for t in range(horizon):
        entries = [
            (index.e_cav[t], 1.0),
            (index.p_el[t], -eff.eta_el),
            (index.p_fc[t], 1.0 / eff.eta_fc),
        ]
        if t == 0:
            entries.append((index.v_cav, -scenario.cav_initial_frac * eps_h))
        else:
            entries.append((index.e_cav[t - 1], -1.0))
        add(entries, EQ, 0.0)
    add(
        [(index.e_cav[horizon - 1], 1.0), (index.v_cav, -scenario.cav_initial_frac * eps_h)],
        EQ,
        0.0,
    )
    # Cavern level within energy capacity.
    for t in range(horizon):
        add([(index.e_cav[t], 1.0), (index.v_cav, -eps_h)], LE, 0.0)
    # Electrolyzer / fuel-cell power within purchased rating.
    for t in range(horizon):
        add([(index.p_el[t], 1.0), (index.v_el, -1.0)], LE, 0.0)
    for t in range(horizon):
        add([(index.p_fc[t], 1.0), (index.v_fc, -1.0)], LE, 0.0)
    # The electrolyzer must be able to refill the cavern within one cycle.
    add([(index.v_el, horizon * eff.eta_el), (index.v_cav, -eps_h)], GE, 0.0)

    mode = scenario.resilience.mode
    tr = scenario.resilience.tr_hours
    autonomy = scenario.p_rig_rated * tr
    if mode == MODE_HESS:
        add([(index.v_fc, 1.0)], GE, scenario.p_load_max)
        add([(index.v_cav, eps_h * eff.eta_fc)], GE, autonomy)
    elif mode == MODE_BESS:
        add([(index.p_disc_max, 1.0)], GE, scenario.p_load_max)
        add([(index.v_bess, eff.eta_disc)], GE, autonomy)
    elif mode == MODE_JOINT:
        add([(index.p_disc_max, 1.0), (index.v_fc, 1.0)], GE, scenario.p_load_max)
        add([(index.v_bess, eff.eta_disc), (index.v_cav, eps_h * eff.eta_fc)], GE, autonomy)

    problem = MilpProblem(
        num_vars=n,
        objective=objective,
        constraints=rows,
        lower_bounds=lower,
        upper_bounds=upper,
        integrality=integrality,
        var_names=names,
    )
    problem.validate()
    return problem, index


def extract_solution(solution, index: VariableIndex) -> tuple[PlanDecision, DispatchSchedule]:
    """Copy an optimal solution into domain types, rounding integral variables."""
    if solution.status != OPTIMAL:
        raise ValueError(f"cannot extract a plan from a {solution.status!r} solution")
    x = solution.values

    def pos(j):
        return max(0.0, float(x[j]))

    plan = PlanDecision(
        wt_count=int(round(x[index.v_wt])),
        bess_energy=pos(index.v_bess),
        bess_char_power=pos(index.p_char_max),
        bess_disc_power=pos(index.p_disc_max),
        el_power=pos(index.v_el),
        fc_power=pos(index.v_fc),
        cav_mass=pos(index.v_cav),
    )

    def series(idxs):
        return np.array([pos(j) for j in idxs])

    dispatch = DispatchSchedule(
        p_disc=series(index.p_disc),
        p_char=series(index.p_char),
        p_el=series(index.p_el),
        p_fc=series(index.p_fc),
        p_curt=series(index.p_curt),
        e_bess=series(index.e_bess),
        e_cav=series(index.e_cav),
        u_disc=np.array([int(round(x[j])) for j in index.u_disc]),
        u_char=np.array([int(round(x[j])) for j in index.u_char]),
    )
    return plan, dispatch


def resilience_lower_bounds(mode: str, tr_hours: int, scenario: ScenarioConfig) -> ResilienceBounds:
    """Sizing floors implied by a mode's constraints, for tests and reporting."""
    eff = scenario.efficiencies
    autonomy = scenario.p_rig_rated * tr_hours
    if mode == MODE_BASIC:
        return ResilienceBounds(0.0, 0.0, 0.0, 0.0, 0.0)
    if mode == MODE_HESS:
        return ResilienceBounds(
            fc_power_min=scenario.p_load_max,
            cav_energy_min=autonomy / eff.eta_fc,
            bess_power_min=0.0,
            bess_energy_min=0.0,
            joint_energy_min=0.0,
        )
    if mode == MODE_BESS:
        return ResilienceBounds(
            fc_power_min=0.0,
            cav_energy_min=0.0,
            bess_power_min=scenario.p_load_max,
            bess_energy_min=autonomy / eff.eta_disc,
            joint_energy_min=0.0,
        )
    if mode == MODE_JOINT:
        return ResilienceBounds(
            fc_power_min=0.0,
            cav_energy_min=0.0,
            bess_power_min=0.0,
            bess_energy_min=0.0,
            joint_energy_min=autonomy,
        )
    raise ValueError(f"unknown resilience mode {mode!r}")
