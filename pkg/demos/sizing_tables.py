#!/usr/bin/env python3
"""Size the reference 50 MW platform under every resilience design.

Solves the unconstrained design plus the hydrogen-only, battery-only and
joint autonomy designs for 6/12/18/24-hour outages, then prints one table
per duration in the style of the published result tables.
"""

import time

from ohres import build_milp, cost_breakdown, default_parameters, extract_solution, solve_milp

MODES = [("basic", "Basic"), ("hess", "A: hydrogen"), ("bess", "B: battery"), ("joint", "C: joint")]


def solve_one(scenario, mode, tr):
    problem, index = build_milp(scenario.with_resilience(mode, tr))
    started = time.perf_counter()
    solution = solve_milp(problem)
    elapsed = time.perf_counter() - started
    plan, _ = extract_solution(solution, index)
    costs = cost_breakdown(plan, scenario)
    return plan, costs, solution, elapsed


def main():
    scenario = default_parameters()
    print("Reference platform: 50 MW rated load, 3 MW turbines, 20-year horizon.")
    print("Each column is one storage design; rows follow the published layout.\n")

    basic = solve_one(scenario, "basic", 0)
    for tr in (6, 12, 18, 24):
        columns = {"Basic": basic}
        for mode, label in MODES[1:]:
            columns[label] = solve_one(scenario, mode, tr)
        print(f"=== autonomy requirement: {tr} hours of rated load with no wind ===")
        header = f"{'':24}" + "".join(f"{label:>16}" for label in columns)
        print(header)
        rows = [
            ("WT units", lambda p, c: f"{p.wt_count d}" if False else f"{p.wt_count}"),
            ("BESS (MWh)", lambda p, c: f"{p.bess_energy:.2f}"),
            ("Electrolyzer (MW)", lambda p, c: f"{p.el_power:.2f}"),
            ("Fuel cell (MW)", lambda p, c: f"{p.fc_power:.2f}"),
            ("Cavern (kg)", lambda p, c: f"{p.cav_mass:.1f}"),
            ("Capital (M$)", lambda p, c: f"{c.capital_total:.2f}"),
            ("Operation (M$)", lambda p, c: f"{c.operation_total:.2f}"),
            ("Total (M$)", lambda p, c: f"{c.grand_total:.2f}"),
            ("Average ($/MWh)", lambda p, c: f"{c.average_cost:.2f}"),
        ]
        for label, fmt in rows:
            cells = "".join(f"{fmt(plan, costs):>16}" for plan, costs, _, _ in columns.values())
            print(f"{label:24}{cells}")
        times = ", ".join(f"{label}: {sec:.1f}s" for label, (_, _, _, sec) in columns.items())
        print(f"(solve times - {times})\n")


if __name__ == "__main__":
    main()
