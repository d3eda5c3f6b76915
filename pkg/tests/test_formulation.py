"""Problem construction: variable census, row counts, autonomy rows, solution
extraction and the storage-cycle invariants on a solved instance."""

import numpy as np
import pytest

from ohres.formulation import build_milp, extract_solution, resilience_lower_bounds
from ohres.optim import BINARY, GE, INTEGER, OPTIMAL, solve_milp
from ohres.scenario import default_parameters


@pytest.fixture(scope="module")
def scenario():
    return default_parameters()


@pytest.fixture(scope="module")
def solved_basic(scenario):
    problem, index = build_milp(scenario)
    solution = solve_milp(problem)
    assert solution.status == OPTIMAL
    return problem, index, solution


def test_variable_census(scenario):
    problem, index = build_milp(scenario)
    assert problem.num_vars == 223
    assert index.num_vars == 223
    assert sum(1 for k in problem.integrality if k == BINARY) == 48
    assert sum(1 for k in problem.integrality if k == INTEGER) == 1
    assert problem.integrality[index.v_wt] == INTEGER


def test_index_is_a_bijection(scenario):
    _, index = build_milp(scenario)
    cols = list(index.sizing)
    for block in (index.p_disc, index.p_char, index.p_el, index.p_fc,
                  index.p_curt, index.e_bess, index.e_cav, index.u_disc, index.u_char):
        cols.extend(block)
    assert sorted(cols) == list(range(index.num_vars))


def test_joint_adds_exactly_two_rows(scenario):
    basic, _ = build_milp(scenario.with_resilience("basic", 6))
    joint, _ = build_milp(scenario.with_resilience("joint", 6))
    assert len(joint.constraints) == len(basic.constraints) + 2


def test_hydrogen_autonomy_row_coefficients(scenario):
    problem, index = build_milp(scenario.with_resilience("hess", 6))
    rows = [r for r in problem.constraints if r.relation == GE and r.indices == (index.v_cav,)]
    assert len(rows) == 1
    row = rows[0]
    assert row.coeffs[0] == pytest.approx(0.033 * 0.6)
    assert row.rhs == pytest.approx(300.0)


def test_bounds_and_gating(scenario):
    problem, index = build_milp(scenario)
    assert problem.upper_bounds[index.v_wt] == scenario.wt_count_max
    assert problem.upper_bounds[index.p_disc_max] == scenario.big_m
    assert problem.upper_bounds[index.p_char_max] == scenario.big_m
    assert problem.lower_bounds.min() == 0.0
    for t in range(24):
        assert problem.upper_bounds[index.u_disc[t]] == 1.0


def test_extract_requires_optimal(scenario, solved_basic):
    problem, index, solution = solved_basic
    import dataclasses

    bad = dataclasses.replace(solution, status="infeasible")
    with pytest.raises(ValueError):
        extract_solution(bad, index)


def test_extract_rounds_near_integers(scenario, solved_basic):
    _, index, solution = solved_basic
    values = solution.values.copy()
    values[index.v_wt] = 41.9999997
    import dataclasses

    nudged = dataclasses.replace(solution, values=values)
    plan, _ = extract_solution(nudged, index)
    assert plan.wt_count == 42


def test_dispatch_mode_exclusivity(scenario, solved_basic):
    _, index, solution = solved_basic
    _, dispatch = extract_solution(solution, index)
    assert np.all(dispatch.u_disc + dispatch.u_char <= 1)
    assert np.all(dispatch.p_curt >= 0.0)


def test_power_balance_holds_each_hour(scenario, solved_basic):
    _, index, solution = solved_basic
    plan, d = extract_solution(solution, index)
    load = np.asarray(scenario.load_profile.values)
    wind = np.asarray(scenario.wind_unit_profile.values)
    residual = d.p_disc + plan.wt_count * wind + d.p_fc - load - d.p_char - d.p_el - d.p_curt
    assert np.abs(residual).max() <= 1e-6


def test_incumbent_point_residuals_tiny(solved_basic):
    problem, _, solution = solved_basic
    from ohres.optim import check_point

    report = check_point(problem, solution.values)
    assert report.max_violation <= 1e-7


def test_storage_telescoping_over_the_cycle(scenario, solved_basic):
    _, index, solution = solved_basic
    _, d = extract_solution(solution, index)
    eff = scenario.efficiencies
    bess_net = (d.p_char * eff.eta_char - d.p_disc / eff.eta_disc).sum()
    cav_net = (d.p_el * eff.eta_el - d.p_fc / eff.eta_fc).sum()
    assert abs(bess_net) <= 1e-6
    assert abs(cav_net) <= 1e-6


def test_battery_only_floor_reached(scenario):
    problem, index = build_milp(scenario.with_resilience("bess", 6))
    solution = solve_milp(problem)
    plan, _ = extract_solution(solution, index)
    assert plan.bess_energy >= 315.789
    assert plan.bess_disc_power >= scenario.p_load_max - 1e-9


def test_resilience_lower_bounds_examples(scenario):
    hess = resilience_lower_bounds("hess", 6, scenario)
    assert hess.cav_energy_min / scenario.efficiencies.eps_h == pytest.approx(15151.52, abs=0.01)
    assert hess.fc_power_min == 50.0
    bess = resilience_lower_bounds("bess", 12, scenario)
    assert bess.bess_energy_min == pytest.approx(631.58, abs=0.01)
    assert bess.bess_power_min == 50.0
    joint0 = resilience_lower_bounds("joint", 0, scenario)
    assert joint0.joint_energy_min == 0.0
    basic = resilience_lower_bounds("basic", 12, scenario)
    assert basic == resilience_lower_bounds("basic", 0, scenario)
    with pytest.raises(ValueError):
        resilience_lower_bounds("diesel", 6, scenario)


def test_joint_power_row_remains_at_zero_hours(scenario):
    problem, index = build_milp(scenario.with_resilience("joint", 0))
    power_rows = [
        r for r in problem.constraints
        if r.relation == GE and set(r.indices) == {index.p_disc_max, index.v_fc}
    ]
    assert len(power_rows) == 1
    assert power_rows[0].rhs == pytest.approx(scenario.p_load_max)


def test_short_horizon_scenario_builds():
    import dataclasses

    from ohres.scenario import TimeSeriesProfile

    sc = default_parameters()
    short = dataclasses.replace(
        sc,
        load_profile=TimeSeriesProfile(values=(10.0, 10.0, 10.0, 10.0)),
        wind_unit_profile=TimeSeriesProfile(values=(2.0, 0.5, 0.5, 2.0)),
        p_load_max=50.0,
        wt_count_max=12,
    ).validate(expected_intervals=None)
    problem, index = build_milp(short)
    assert problem.num_vars == 7 + 9 * 4
    assert solve_milp(problem).status == OPTIMAL
