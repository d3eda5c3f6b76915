"""Command-line front end: plan, sweep, compare and validate subcommands.

Exit codes: 0 success, 1 infeasible model or failed validation, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import analysis, validation
from .formulation import build_milp, extract_solution
from .optim import OPTIMAL, SolverError, solve_milp
from .results import RunResult, file_sha256, read_result, write_result
from .scenario import (
    MODES,
    ScenarioError,
    bundled_scenario_path,
    load_scenario,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT_ERROR = 2

_SUMMARY_HEADER = (
    f"{'WT':>4} {'BESS_MWh':>10} {'El_MW':>8} {'FC_MW':>8} {'Cavern_kg':>12} "
    f"{'Capital_M$':>11} {'Operation_M$':>13} {'Total_M$':>10} {'Avg_$/MWh':>10}"
)


def _resolve_scenario_path(raw: str) -> Path:
    """Use the literal path when it exists, else look in the seed directory."""
    path = Path(raw)
    if path.exists():
        return path
    bundled = bundled_scenario_path(raw)
    if bundled.exists():
        return bundled
    raise ScenarioError(f"scenario file not found: {raw}")


def _print_summary(plan, costs):
    print(_SUMMARY_HEADER)
    print(
        f"{plan.wt_count:>4} {plan.bess_energy:>10.2f} {plan.el_power:>8.2f} "
        f"{plan.fc_power:>8.2f} {plan.cav_mass:>12.1f} {costs.capital_total:>11.2f} "
        f"{costs.operation_total:>13.2f} {costs.grand_total:>10.2f} {costs.average_cost:>10.2f}"
    )


def cmd_plan(args) -> int:
    scenario_path = _resolve_scenario_path(args.scenario)
    scenario = load_scenario(scenario_path)
    mode = args.mode if args.mode is not None else scenario.resilience.mode
    tr = args.tr if args.tr is not None else scenario.resilience.tr_hours
    if tr < 0:
        raise ScenarioError("--tr must be >= 0")
    if mode == "basic":
        tr = 0  # no autonomy rows exist in basic mode; normalize the echo
    scenario = scenario.with_resilience(mode, tr)

    problem, index = build_milp(scenario)
    started = time.perf_counter()
    solution = solve_milp(problem)
    elapsed = time.perf_counter() - started
    if solution.status != OPTIMAL:
        print(f"solve ended with status {solution.status!r} "
              f"(mode={mode}, tr={tr}, nodes={solution.nodes_explored})", file=sys.stderr)
        return EXIT_INFEASIBLE
    plan, dispatch = extract_solution(solution, index)
    costs = analysis.cost_breakdown(plan, scenario)
    print(f"mode={mode} tr={scenario.resilience.tr_hours}h "
          f"nodes={solution.nodes_explored} gap={solution.relative_gap:.2e} "
          f"time={elapsed:.2f}s")
    _print_summary(plan, costs)
    if args.out:
        result = RunResult(
            scenario_path=str(args.scenario),
            scenario_sha256=file_sha256(scenario_path),
            resilience=scenario.resilience,
            plan=plan,
            dispatch=dispatch,
            costs=costs,
            status=solution.status,
            objective=solution.objective_value,
            best_bound=solution.best_bound,
            relative_gap=solution.relative_gap,
            nodes_explored=solution.nodes_explored,
            wall_time_s=elapsed,
        )
        write_result(result, args.out)
        print(f"result written to {args.out}")
    return EXIT_OK


def _parse_float_list(raw: str, flag: str) -> list[float]:
    items = [v for v in raw.split(",") if v.strip()]
    if not items:
        raise ScenarioError(f"{flag} needs a non-empty comma-separated list")
    try:
        return [float(v) for v in items]
    except ValueError as exc:
        raise ScenarioError(f"{flag} must be a comma-separated list of numbers") from exc


def cmd_sweep(args) -> int:
    scenario = load_scenario(_resolve_scenario_path(args.scenario))
    if args.kind == "tr":
        tr_list = [int(v) for v in _parse_float_list(args.list, "--list")]
        rows = analysis.sweep_resilience(scenario, args.mode, tr_list)
        csv_text = analysis.resilience_sweep_csv(rows)
    else:
        values1 = _parse_float_list(args.values1, "--values1")
        values2 = _parse_float_list(args.values2, "--values2")
        cells = analysis.sweep_unit_costs(
            scenario, args.mode, args.tr, (args.param1, values1), (args.param2, values2)
        )
        csv_text = analysis.cost_grid_csv(cells)
    if args.out:
        Path(args.out).write_text(csv_text)
        print(f"sweep written to {args.out}")
    else:
        print(csv_text, end="")
    return EXIT_OK


def cmd_compare(args) -> int:
    result = read_result(args.result)
    scenario = load_scenario(_resolve_scenario_path(result.scenario_path))
    bench = analysis.traditional_benchmark(
        scenario,
        capital=args.capital,
        fuel_cost_per_mwh=args.fuel,
        emission_rate=args.emission_rate,
    )
    c = result.costs
    print(f"{'Model':<12} {'Capital_M$':>11} {'Operation_M$':>13} {'Total_M$':>10} "
          f"{'Avg_$/MWh':>10} {'Emissions_t':>12}")
    print(f"{'Traditional':<12} {bench.capital:>11.2f} {bench.operation_total:>13.2f} "
          f"{bench.grand_total:>10.2f} {bench.average_cost:>10.2f} {bench.total_emissions:>12.1f}")
    print(f"{'OHRES':<12} {c.capital_total:>11.2f} {c.operation_total:>13.2f} "
          f"{c.grand_total:>10.2f} {c.average_cost:>10.2f} {analysis.OHRES_EMISSIONS_T:>12.1f}")
    return EXIT_OK


def cmd_validate(args) -> int:
    result = read_result(args.result)
    scenario = load_scenario(_resolve_scenario_path(result.scenario_path))
    scenario = scenario.with_resilience(result.resilience.mode, result.resilience.tr_hours)
    report = validation.verify_dispatch(result.plan, result.dispatch, scenario)
    print("dispatch check:")
    print(f"  max power balance residual : {report.max_power_balance_residual:.3e} MW")
    print(f"  max battery violation      : {report.max_soc_violation:.3e} MWh")
    print(f"  max cavern violation       : {report.max_cavern_violation:.3e} MWh")
    print(f"  endpoint errors            : {report.endpoint_errors:.3e} MWh")
    print(f"  mode conflicts             : {report.mode_conflicts}")
    print(f"  limit violations           : {report.limit_violations}")
    ok = report.clean
    if result.resilience.mode != "basic":
        stress = validation.resilience_stress_test(
            result.plan, scenario, result.resilience.tr_hours
        )
        verdict = "pass" if stress.passed else "FAIL"
        print(f"autonomy stress test ({result.resilience.tr_hours}h): {verdict} "
              f"(survived {stress.survived_hours}h)")
        ok = ok and stress.passed
    print("validation:", "clean" if ok else "VIOLATIONS FOUND")
    return EXIT_OK if ok else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ohres",
        description="Size a wind + battery + hydrogen power system for an offshore platform.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    plan = sub.add_parser("plan", help="solve one sizing problem and print a summary row")
    plan.add_argument("--scenario", required=True, help="scenario file (path or bundled name)")
    plan.add_argument("--mode", choices=MODES, default=None,
                      help="resilience mode (default: the scenario's)")
    plan.add_argument("--tr", type=int, default=None,
                      help="autonomy duration in hours (ignored for basic)")
    plan.add_argument("--out", default=None, help="write the full result file here")
    plan.set_defaults(func=cmd_plan)

    sweep = sub.add_parser("sweep", help="re-solve over a parameter range and emit CSV")
    sweep_sub = sweep.add_subparsers(dest="kind", required=True)
    sweep_tr = sweep_sub.add_parser("tr", help="sweep the autonomy duration")
    sweep_tr.add_argument("--scenario", required=True)
    sweep_tr.add_argument("--mode", choices=MODES, default="joint")
    sweep_tr.add_argument("--list", required=True, help="comma-separated hours, e.g. 6,12,18,24")
    sweep_tr.add_argument("--out", default=None)
    sweep_tr.set_defaults(func=cmd_sweep, kind="tr")
    sweep_cost = sweep_sub.add_parser("cost", help="sweep two unit-capital costs")
    sweep_cost.add_argument("--scenario", required=True)
    sweep_cost.add_argument("--mode", choices=MODES, default="joint")
    sweep_cost.add_argument("--tr", type=int, default=6)
    sweep_cost.add_argument("--param1", required=True)
    sweep_cost.add_argument("--values1", required=True)
    sweep_cost.add_argument("--param2", required=True)
    sweep_cost.add_argument("--values2", required=True)
    sweep_cost.add_argument("--out", default=None)
    sweep_cost.set_defaults(func=cmd_sweep, kind="cost")

    compare = sub.add_parser("compare", help="compare a result against the diesel benchmark")
    compare.add_argument("--result", required=True, help="result file from `plan --out`")
    compare.add_argument("--capital", type=float, default=12.5)
    compare.add_argument("--fuel", type=float, default=90.0)
    compare.add_argument("--emission-rate", type=float, default=0.0601)
    compare.set_defaults(func=cmd_compare)

    validate = sub.add_parser("validate", help="re-check a result file's dispatch and autonomy")
    validate.add_argument("--result", required=True)
    validate.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; normalize its exit code.
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ScenarioError, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
