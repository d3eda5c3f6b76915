"""Best-bound branch and bound over the bounded-variable simplex.

Node selection is best-bound first (ties broken by creation order) and
branching picks the most fractional integer variable (ties broken by lowest
index), so repeated runs on the same input explore the same tree and return
bit-identical answers.  Every node LP is solved from a fresh basis; at this
problem scale that costs little and keeps the search history-free.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .problem import (
    INFEASIBLE,
    NODE_LIMIT,
    OPTIMAL,
    UNBOUNDED,
    MilpProblem,
    SolverError,
    SolverOptions,
)
from .simplex import solve_lp_arrays, _primal_residual


@dataclass(frozen=True)
class MilpSolution:
    status: str
    values: np.ndarray | None
    objective_value: float
    best_bound: float
    relative_gap: float
    nodes_explored: int


def _gap(incumbent, bound):
    if not math.isfinite(incumbent) or not math.isfinite(bound):
        return math.inf
    return max(0.0, incumbent - bound) / max(1.0, abs(incumbent))


def _round_repair(A, rel, rhs, lb, ub, c, fractional, x, feas_tol):
    """Try to snap cost-free fractional integers to whole values.

    Returns a feasible point with the same objective as x, or None.  Only
    variables with zero objective coefficient may move, so a success closes
    the node: its own relaxation bound is attained.
    """
    if np.any(c[fractional] != 0.0):
        return None
    for rounder in (np.ceil, np.floor):
        cand = x.copy()
        cand[fractional] = np.clip(rounder(cand[fractional]), lb[fractional], ub[fractional])
        if _primal_residual(A, rel, rhs, lb, ub, cand) <= feas_tol:
            return cand
    return None


def solve_milp(problem: MilpProblem, options: SolverOptions | None = None) -> MilpSolution:
    """Solve a mixed-integer problem to proven optimality (within gap_tol)."""
    options = options or SolverOptions()
    options.validate()
    problem.validate()
    A, rel, rhs = problem.dense_rows()
    c = problem.objective
    int_idx = problem.integer_indices

    incumbent_obj = math.inf
    incumbent_x = None
    nodes = 0
    counter = 0
    pruned_lb = math.inf  # min LP bound among subtrees discarded without branching
    hit_limit = False
    # Heap entries: (parent LP bound, creation order, lower bounds, upper bounds).
    heap = [(-math.inf, counter, problem.lower_bounds.copy(), problem.upper_bounds.copy())]

    def prune_threshold():
        if not math.isfinite(incumbent_obj):
            return math.inf
        return incumbent_obj - options.gap_tol * max(1.0, abs(incumbent_obj))

    while heap:
        if heap[0][0] >= prune_threshold():
            # Best-bound order: every open node is at least as bad as this one.
            pruned_lb = min(pruned_lb, heap[0][0])
            heap.clear()
            break
        if nodes >= options.node_limit:
            hit_limit = True
            break
        bound, _, lb, ub = heapq.heappop(heap)
        nodes += 1
        status, x, obj, _ = solve_lp_arrays(A, rel, rhs, lb, ub, c, options.feas_tol)
        if status == INFEASIBLE:
            continue
        if status == UNBOUNDED:
            raise SolverError("LP relaxation is unbounded; the MILP objective has no minimum")
        if obj >= prune_threshold():
            pruned_lb = min(pruned_lb, obj)
            continue
        if int_idx.size:
            frac = x[int_idx] - np.floor(x[int_idx])
            dist = np.minimum(frac, 1.0 - frac)
            worst = int(np.argmax(dist))
        if not int_idx.size or dist[worst] <= options.int_tol:
            # Integral within tolerance, and strictly better than the incumbent
            # by the pruning rule above: the incumbent objective only decreases.
            incumbent_obj = obj
            incumbent_x = x
            continue
        fractional = int_idx[dist > options.int_tol]
        repaired = _round_repair(A, rel, rhs, lb, ub, c, fractional, x, options.feas_tol)
        if repaired is not None:
            incumbent_obj = obj
            incumbent_x = repaired
            continue
        j = int(int_idx[worst])
        floor_v = math.floor(x[j])
        lb_lo, ub_lo = lb.copy(), ub.copy()
        ub_lo[j] = floor_v
        lb_hi, ub_hi = lb.copy(), ub.copy()
        lb_hi[j] = floor_v + 1.0
        counter += 1
        heapq.heappush(heap, (obj, counter, lb_lo, ub_lo))
        counter += 1
        heapq.heappush(heap, (obj, counter, lb_hi, ub_hi))

    if hit_limit:
        open_lb = heap[0][0] if heap else math.inf
        best_bound = min(open_lb, pruned_lb, incumbent_obj)
        if incumbent_x is None:
            return MilpSolution(NODE_LIMIT, None, math.inf, best_bound, math.inf, nodes)
        return MilpSolution(
            NODE_LIMIT, incumbent_x, incumbent_obj, best_bound,
            _gap(incumbent_obj, best_bound), nodes,
        )
    if incumbent_x is None:
        return MilpSolution(INFEASIBLE, None, math.nan, math.nan, math.nan, nodes)
    best_bound = min(incumbent_obj, pruned_lb)
    return MilpSolution(
        OPTIMAL, incumbent_x, incumbent_obj, best_bound,
        _gap(incumbent_obj, best_bound), nodes,
    )
