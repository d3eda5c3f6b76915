"""Problem containers and raw point diagnostics for the MILP engine."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

LE = "<="
EQ = "="
GE = ">="
RELATIONS = (LE, EQ, GE)

CONTINUOUS = "continuous"
INTEGER = "integer"
BINARY = "binary"
INTEGRALITY = (CONTINUOUS, INTEGER, BINARY)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
NODE_LIMIT = "node_limit"


class SolverError(Exception):
    """Numerical breakdown inside the solver; never a silent wrong answer."""


@dataclass(frozen=True)
class Row:
    """One linear constraint, stored sparsely as parallel index/coefficient tuples."""

    indices: tuple[int, ...]
    coeffs: tuple[float, ...]
    relation: str
    rhs: float


@dataclass
class MilpProblem:
    """Minimize objective . x subject to rows, bounds and integrality marks."""

    num_vars: int
    objective: np.ndarray
    constraints: list[Row]
    lower_bounds: np.ndarray
    upper_bounds: np.ndarray
    integrality: list[str]
    var_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        self.lower_bounds = np.asarray(self.lower_bounds, dtype=float)
        self.upper_bounds = np.asarray(self.upper_bounds, dtype=float)
        if not self.var_names:
            self.var_names = [f"x{i}" for i in range(self.num_vars)]

    def validate(self):
        n = self.num_vars
        for name, arr in (
            ("objective", self.objective),
            ("lower_bounds", self.lower_bounds),
            ("upper_bounds", self.upper_bounds),
        ):
            if arr.shape != (n,):
                raise ValueError(f"{name} has shape {arr.shape}, expected ({n},)")
        if len(self.integrality) != n:
            raise ValueError(f"integrality has length {len(self.integrality)}, expected {n}")
        if len(self.var_names) != n:
            raise ValueError(f"var_names has length {len(self.var_names)}, expected {n}")
        if not np.all(np.isfinite(self.lower_bounds)):
            raise ValueError("lower bounds must be finite")
        if np.any(self.lower_bounds > self.upper_bounds):
            j = int(np.argmax(self.lower_bounds > self.upper_bounds))
            raise ValueError(f"variable {self.var_names[j]} has lower bound above upper bound")
        for j, kind in enumerate(self.integrality):
            if kind not in INTEGRALITY:
                raise ValueError(f"unknown integrality {kind!r} for {self.var_names[j]}")
            if kind == BINARY and (self.lower_bounds[j] < 0.0 or self.upper_bounds[j] > 1.0):
                raise ValueError(f"binary variable {self.var_names[j]} must have bounds within [0, 1]")
        for i, row in enumerate(self.constraints):
            if row.relation not in RELATIONS:
                raise ValueError(f"row {i} has unknown relation {row.relation!r}")
            if len(row.indices) != len(row.coeffs):
                raise ValueError(f"row {i} has mismatched index/coefficient lengths")
            for j in row.indices:
                if not 0 <= j < n:
                    raise ValueError(f"row {i} references variable index {j} out of range")

    @property
    def integer_indices(self) -> np.ndarray:
        return np.array(
            [j for j, k in enumerate(self.integrality) if k in (INTEGER, BINARY)], dtype=int
        )

    def dense_rows(self) -> tuple[np.ndarray, list[str], np.ndarray]:
        """Return (A, relations, rhs) with A dense, m x num_vars."""
        m = len(self.constraints)
        A = np.zeros((m, self.num_vars))
        rel = []
        rhs = np.zeros(m)
        for i, row in enumerate(self.constraints):
            for j, a in zip(row.indices, row.coeffs):
                A[i, j] += a
            rel.append(row.relation)
            rhs[i] = row.rhs
        return A, rel, rhs


@dataclass(frozen=True)
class SolverOptions:
    feas_tol: float = 1e-7      # max accepted primal residual / bound violation
    int_tol: float = 1e-6      # distance to nearest integer accepted as integral
    gap_tol: float = 1e-6      # relative incumbent/bound gap at optimality
    node_limit: int = 100000

    def validate(self):
        if min(self.feas_tol, self.int_tol, self.gap_tol) <= 0.0:
            raise ValueError("all solver tolerances must be positive")
        if self.node_limit < 1:
            raise ValueError("node_limit must be at least 1")


@dataclass(frozen=True)
class PointReport:
    """Raw residuals of a point against a problem; no tolerance applied."""

    max_le_violation: float
    max_eq_violation: float
    max_ge_violation: float
    max_bound_violation: float
    max_integrality_violation: float

    @property
    def max_violation(self) -> float:
        return max(
            self.max_le_violation,
            self.max_eq_violation,
            self.max_ge_violation,
            self.max_bound_violation,
            self.max_integrality_violation,
        )


def check_point(problem: MilpProblem, point) -> PointReport:
    """Evaluate a point against every row, bound and integrality mark."""
    x = np.asarray(point, dtype=float)
    if x.shape != (problem.num_vars,):
        raise ValueError(f"point has shape {x.shape}, expected ({problem.num_vars},)")
    worst = {LE: 0.0, EQ: 0.0, GE: 0.0}
    for row in problem.constraints:
        lhs = sum(a * x[j] for j, a in zip(row.indices, row.coeffs))
        if row.relation == LE:
            worst[LE] = max(worst[LE], lhs - row.rhs)
        elif row.relation == GE:
            worst[GE] = max(worst[GE], row.rhs - lhs)
        else:
            worst[EQ] = max(worst[EQ], abs(lhs - row.rhs))
    below = np.maximum(problem.lower_bounds - x, 0.0)
    above = np.where(
        np.isfinite(problem.upper_bounds), np.maximum(x - problem.upper_bounds, 0.0), 0.0
    )
    bound = float(max(below.max(initial=0.0), above.max(initial=0.0)))
    idx = problem.integer_indices
    integrality = float(np.abs(x[idx] - np.round(x[idx])).max()) if idx.size else 0.0
    return PointReport(
        max_le_violation=float(worst[LE]),
        max_eq_violation=float(worst[EQ]),
        max_ge_violation=float(worst[GE]),
        max_bound_violation=bound,
        max_integrality_violation=integrality,
    )


def format_problem(problem: MilpProblem) -> str:
    """Human-readable listing of a problem, one row per line, for diagnostics."""
    names = problem.var_names
    lines = ["minimize:"]
    terms = [
        f"{c:+g} {names[j]}" for j, c in enumerate(problem.objective) if c != 0.0
    ]
    lines.append("  " + (" ".join(terms) if terms else "0"))
    lines.append("subject to:")
    for i, row in enumerate(problem.constraints):
        body = " ".join(f"{a:+g} {names[j]}" for j, a in zip(row.indices, row.coeffs))
        lines.append(f"  r{i}: {body or '0'} {row.relation} {row.rhs:g}")
    lines.append("bounds:")
    for j in range(problem.num_vars):
        lo, hi = problem.lower_bounds[j], problem.upper_bounds[j]
        hi_s = f"{hi:g}" if math.isfinite(hi) else "inf"
        kind = problem.integrality[j]
        tag = "" if kind == CONTINUOUS else f"  [{kind}]"
        lines.append(f"  {lo:g} <= {names[j]} <= {hi_s}{tag}")
    return "\n".join(lines)
