"""Self-contained exact MILP engine: bounded-variable primal simplex plus
best-bound branch and bound.

Everything is dense 64-bit float arithmetic; the problems built by this
package are a few hundred rows/columns, where correctness and determinism
matter far more than sparse-matrix speed.
"""

from .problem import (
    BINARY,
    CONTINUOUS,
    INFEASIBLE,
    INTEGER,
    LE,
    EQ,
    GE,
    NODE_LIMIT,
    OPTIMAL,
    UNBOUNDED,
    MilpProblem,
    PointReport,
    Row,
    SolverError,
    SolverOptions,
    check_point,
    format_problem,
)
from .simplex import LpSolution, solve_lp
from .branch_bound import MilpSolution, solve_milp

__all__ = [
    "BINARY",
    "CONTINUOUS",
    "INTEGER",
    "LE",
    "EQ",
    "GE",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "NODE_LIMIT",
    "MilpProblem",
    "Row",
    "SolverOptions",
    "SolverError",
    "PointReport",
    "check_point",
    "format_problem",
    "LpSolution",
    "solve_lp",
    "MilpSolution",
    "solve_milp",
]
