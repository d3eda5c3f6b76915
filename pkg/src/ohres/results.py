"""Run-result container and its JSON file round trip.

The file mirrors the in-memory field names and is written with sorted keys so
repeated identical runs produce byte-identical output.  Wall time is tracked
in memory for reporting but deliberately kept out of the file, since result
files must be reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import CostBreakdown, SubsystemCost
from .formulation import DispatchSchedule, PlanDecision
from .scenario import ResilienceSpec


@dataclass(frozen=True)
class RunResult:
    scenario_path: str
    scenario_sha256: str
    resilience: ResilienceSpec
    plan: PlanDecision
    dispatch: DispatchSchedule
    costs: CostBreakdown
    status: str
    objective: float       # M$
    best_bound: float      # M$
    relative_gap: float
    nodes_explored: int
    wall_time_s: float = 0.0  # informational; excluded from serialized output


def file_sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _round_trip_float(value: float) -> float:
    return float(value) if math.isfinite(value) else 0.0


def result_to_dict(result: RunResult) -> dict:
    plan = result.plan
    d = result.dispatch
    c = result.costs

    def series(arr):
        return [float(v) for v in np.asarray(arr)]

    def subsystem(part: SubsystemCost):
        return {"capital": part.capital, "om_lifetime": part.om_lifetime}

    return {
        "scenario": {"path": result.scenario_path, "sha256": result.scenario_sha256},
        "resilience": {"mode": result.resilience.mode, "tr_hours": result.resilience.tr_hours},
        "plan": {
            "wt_count": plan.wt_count,
            "bess_energy": plan.bess_energy,
            "bess_char_power": plan.bess_char_power,
            "bess_disc_power": plan.bess_disc_power,
            "el_power": plan.el_power,
            "fc_power": plan.fc_power,
            "cav_mass": plan.cav_mass,
        },
        "dispatch": {
            "p_disc": series(d.p_disc),
            "p_char": series(d.p_char),
            "p_el": series(d.p_el),
            "p_fc": series(d.p_fc),
            "p_curt": series(d.p_curt),
            "e_bess": series(d.e_bess),
            "e_cav": series(d.e_cav),
            "u_disc": [int(v) for v in np.asarray(d.u_disc)],
            "u_char": [int(v) for v in np.asarray(d.u_char)],
        },
        "costs": {
            "wt": subsystem(c.wt),
            "bess": subsystem(c.bess),
            "el": subsystem(c.el),
            "fc": subsystem(c.fc),
            "comp": subsystem(c.comp),
            "cav": subsystem(c.cav),
            "capital_total": c.capital_total,
            "operation_total": c.operation_total,
            "grand_total": c.grand_total,
            "average_cost": c.average_cost,
            "lifetime_energy": c.lifetime_energy,
        },
        "solver": {
            "status": result.status,
            "objective": _round_trip_float(result.objective),
            "best_bound": _round_trip_float(result.best_bound),
            "relative_gap": _round_trip_float(result.relative_gap),
            "nodes_explored": result.nodes_explored,
        },
    }


def result_from_dict(data: dict) -> RunResult:
    plan = PlanDecision(**data["plan"])
    d = data["dispatch"]
    dispatch = DispatchSchedule(
        p_disc=np.array(d["p_disc"], dtype=float),
        p_char=np.array(d["p_char"], dtype=float),
        p_el=np.array(d["p_el"], dtype=float),
        p_fc=np.array(d["p_fc"], dtype=float),
        p_curt=np.array(d["p_curt"], dtype=float),
        e_bess=np.array(d["e_bess"], dtype=float),
        e_cav=np.array(d["e_cav"], dtype=float),
        u_disc=np.array(d["u_disc"], dtype=int),
        u_char=np.array(d["u_char"], dtype=int),
    )
    c = data["costs"]

    def subsystem(key):
        return SubsystemCost(capital=c[key]["capital"], om_lifetime=c[key]["om_lifetime"])

    costs = CostBreakdown(
        wt=subsystem("wt"),
        bess=subsystem("bess"),
        el=subsystem("el"),
        fc=subsystem("fc"),
        comp=subsystem("comp"),
        cav=subsystem("cav"),
        capital_total=c["capital_total"],
        operation_total=c["operation_total"],
        grand_total=c["grand_total"],
        average_cost=c["average_cost"],
        lifetime_energy=c["lifetime_energy"],
    )
    solver = data["solver"]
    return RunResult(
        scenario_path=data["scenario"]["path"],
        scenario_sha256=data["scenario"]["sha256"],
        resilience=ResilienceSpec(
            mode=data["resilience"]["mode"], tr_hours=int(data["resilience"]["tr_hours"])
        ),
        plan=plan,
        dispatch=dispatch,
        costs=costs,
        status=solver["status"],
        objective=solver["objective"],
        best_bound=solver["best_bound"],
        relative_gap=solver["relative_gap"],
        nodes_explored=int(solver["nodes_explored"]),
    )


def write_result(result: RunResult, path: str | Path):
    Path(path).write_text(json.dumps(result_to_dict(result), indent=2, sort_keys=True) + "\n")


def read_result(path: str | Path) -> RunResult:
    return result_from_dict(json.loads(Path(path).read_text()))
