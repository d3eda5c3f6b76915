"""Bounded-variable primal simplex.

Two-phase revised simplex over rows in equality form.  Every row gets one
slack column whose bounds encode the relation (<= : [0, inf), >= : (-inf, 0],
= : [0, 0]); rows whose slack cannot absorb the initial residual get an
artificial column which phase 1 drives to zero.  The basis inverse is kept
explicitly and rebuilt periodically, and once more before any claim of
optimality, so reported points are computed from a fresh factorization.

Pivoting is Dantzig (most negative reduced cost) with deterministic
tie-breaking; a run of degenerate steps switches to Bland's rule, which
guarantees termination, until progress resumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    OPTIMAL,
    UNBOUNDED,
    MilpProblem,
    SolverError,
    SolverOptions,
)

_AT_LOWER = 0
_AT_UPPER = 1
_BASIC = 2

_REFACTOR_EVERY = 100
_BLAND_AFTER = 30


@dataclass(frozen=True)
class LpSolution:
    status: str
    values: np.ndarray | None
    objective_value: float
    max_primal_residual: float


class _Simplex:
    """Working state for one LP solve over equality-form columns."""

    def __init__(self, A, b, lb, ub, feas_tol):
        self.A = A
        self.b = b
        self.lb = lb
        self.ub = ub
        self.m, self.n = A.shape
        self.feas_tol = feas_tol
        self.fixed = ub - lb <= 0.0
        # Nonbasic variables park at a finite bound; lower wins when both exist.
        self.park_at_upper = ~np.isfinite(lb)
        if np.any(self.park_at_upper & ~np.isfinite(ub)):
            raise SolverError("variable with no finite bound to park at")
        self.vstat = np.where(self.park_at_upper, _AT_UPPER, _AT_LOWER).astype(np.int8)
        self.x = np.where(self.park_at_upper, ub, lb).astype(float)
        self.basis = np.empty(0, dtype=int)
        self.binv = np.empty((0, 0))

    def set_basis(self, basis):
        self.basis = np.asarray(basis, dtype=int)
        self.vstat[self.basis] = _BASIC
        self.refactor()

    def refactor(self):
        B = self.A[:, self.basis]
        try:
            self.binv = np.linalg.inv(B)
        except np.linalg.LinAlgError as exc:
            raise SolverError("singular basis matrix") from exc
        self.recompute_basics()

    def recompute_basics(self):
        xn = self.x.copy()
        xn[self.basis] = 0.0
        self.x[self.basis] = self.binv @ (self.b - self.A @ xn)

    def optimize(self, c, phase, max_iter):
        """Run simplex iterations for cost vector c.  Returns a status string."""
        dual_tol = 1e-9 * max(1.0, float(np.abs(c).max(initial=0.0)))
        AT = np.ascontiguousarray(self.A.T)  # pricing walks columns; keep them contiguous
        bland = False
        degenerate_run = 0
        since_refactor = 0
        verified = False
        for _ in range(max_iter):
            y = self.binv.T @ c[self.basis]
            d = c - AT @ y
            d[self.basis] = 0.0
            nonbasic_ok = (self.vstat != _BASIC) & ~self.fixed
            eligible = nonbasic_ok & (
                ((self.vstat == _AT_LOWER) & (d < -dual_tol))
                | ((self.vstat == _AT_UPPER) & (d > dual_tol))
            )
            if not eligible.any():
                if verified or since_refactor == 0:
                    return OPTIMAL
                # Rebuild before declaring victory: pricing on a drifted
                # inverse can mask an improving column.
                self.refactor()
                since_refactor = 0
                verified = True
                continue
            verified = False
            if bland:
                q = int(np.flatnonzero(eligible)[0])
            else:
                q = int(np.argmax(np.where(eligible, np.abs(d), 0.0)))
            sigma = 1.0 if self.vstat[q] == _AT_LOWER else -1.0
            w = self.binv @ AT[q]
            step, leave_pos = self._ratio_test(q, sigma, w, bland)
            if not np.isfinite(step):
                if phase == 1:
                    raise SolverError("phase-1 objective unbounded; numerical breakdown")
                return UNBOUNDED
            self._apply_step(q, sigma, w, step, leave_pos)
            since_refactor += 1
            if step <= 1e-11:
                degenerate_run += 1
                if degenerate_run >= _BLAND_AFTER:
                    bland = True
            else:
                degenerate_run = 0
                bland = False
            if since_refactor >= _REFACTOR_EVERY:
                self.refactor()
                since_refactor = 0
        raise SolverError(f"simplex iteration limit reached in phase {phase}")

    def _ratio_test(self, q, sigma, w, bland):
        """Largest step for entering column q; returns (step, leaving position).

        leave_pos is -1 when the entering variable hits its own opposite bound
        (a bound flip, no basis change).
        """
        xB = self.x[self.basis]
        lbB = self.lb[self.basis]
        ubB = self.ub[self.basis]
        delta = sigma * w  # rate at which each basic variable *decreases*
        limits = np.full(self.m, np.inf)
        down = delta > 1e-9
        if down.any():
            limits[down] = np.maximum(xB[down] - lbB[down], 0.0) / delta[down]
        up = delta < -1e-9
        if up.any():
            head = np.where(np.isfinite(ubB[up]), np.maximum(ubB[up] - xB[up], 0.0), np.inf)
            limits[up] = head / (-delta[up])
        flip = self.ub[q] - self.lb[q]
        row_min = limits.min(initial=np.inf)
        step = min(flip, row_min)
        if not np.isfinite(step):
            return np.inf, -1
        if flip <= row_min:
            return flip, -1
        ties = np.flatnonzero(limits <= row_min + 1e-12)
        if bland:
            # Bland: lowest variable index among the tied rows.
            leave_pos = int(ties[np.argmin(self.basis[ties])])
        else:
            # Largest pivot magnitude for stability, then lowest variable index.
            mags = np.abs(delta[ties])
            best = mags.max()
            cand = ties[mags >= best - 1e-12 * max(1.0, best)]
            leave_pos = int(cand[np.argmin(self.basis[cand])])
        return float(limits[leave_pos]), leave_pos

    def _apply_step(self, q, sigma, w, step, leave_pos):
        if leave_pos < 0:
            # Bound flip: q jumps to its other bound, basis unchanged.
            self.x[self.basis] -= step * sigma * w
            if self.vstat[q] == _AT_LOWER:
                self.x[q] = self.ub[q]
                self.vstat[q] = _AT_UPPER
            else:
                self.x[q] = self.lb[q]
                self.vstat[q] = _AT_LOWER
            return
        pivot = w[leave_pos]
        if abs(pivot) < 1e-11:
            raise SolverError("pivot element vanished during basis update")
        entering_value = self.x[q] + sigma * step
        self.x[self.basis] -= step * sigma * w
        leaving = self.basis[leave_pos]
        # The leaving variable exits exactly at the bound it ran into.
        if sigma * pivot > 0:
            self.x[leaving] = self.lb[leaving]
            self.vstat[leaving] = _AT_LOWER
        else:
            self.x[leaving] = self.ub[leaving]
            self.vstat[leaving] = _AT_UPPER
        self.basis[leave_pos] = q
        self.vstat[q] = _BASIC
        self.x[q] = entering_value
        # Rank-one update of the explicit inverse.
        self.binv[leave_pos, :] /= pivot
        col = w.copy()
        col[leave_pos] = 0.0
        self.binv -= np.outer(col, self.binv[leave_pos, :])


def _slack_bounds(relation):
    if relation == LE:
        return 0.0, np.inf
    if relation == GE:
        return -np.inf, 0.0
    return 0.0, 0.0


def solve_lp_arrays(A, rel, rhs, lb, ub, c, feas_tol):
    """Solve min c.x over dense rows with relations; integrality is ignored.

    Returns (status, x, objective, residual, iterations-ish) where x covers the
    structural variables only.
    """
    m, n = A.shape
    # Drop structurally empty rows after checking they are satisfiable.
    nonzero = np.abs(A).sum(axis=1) > 0.0
    for i in np.flatnonzero(~nonzero):
        r = rhs[i]
        bad = (rel[i] == LE and r < -feas_tol) or (rel[i] == GE and r > feas_tol) or (
            rel[i] == EQ and abs(r) > feas_tol
        )
        if bad:
            return INFEASIBLE, None, np.nan, np.nan
    keep = np.flatnonzero(nonzero)
    A_k = A[keep]
    rel_k = [rel[i] for i in keep]
    rhs_k = rhs[keep]
    mk = len(keep)

    slack_lb = np.empty(mk)
    slack_ub = np.empty(mk)
    for i, r in enumerate(rel_k):
        slack_lb[i], slack_ub[i] = _slack_bounds(r)
    A_eq = np.hstack([A_k, np.eye(mk)])
    lb_eq = np.concatenate([lb, slack_lb])
    ub_eq = np.concatenate([ub, slack_ub])

    core = _Simplex(A_eq, rhs_k, lb_eq, ub_eq, feas_tol)
    resid = rhs_k - A_k @ core.x[:n]
    basis = []
    art_cols = []
    art_rows = []
    for i in range(mk):
        r = float(resid[i])
        fits = slack_lb[i] - 1e-12 <= r <= slack_ub[i] + 1e-12
        if fits:
            basis.append(n + i)
        else:
            art_rows.append(i)
            art_cols.append(np.sign(r))
    n_art = len(art_rows)
    if n_art:
        art = np.zeros((mk, n_art))
        for k, (i, s) in enumerate(zip(art_rows, art_cols)):
            art[i, k] = s
        core.A = np.hstack([core.A, art])
        core.lb = np.concatenate([core.lb, np.zeros(n_art)])
        core.ub = np.concatenate([core.ub, np.full(n_art, np.inf)])
        core.fixed = core.ub - core.lb <= 0.0
        core.vstat = np.concatenate([core.vstat, np.full(n_art, _AT_LOWER, dtype=np.int8)])
        core.x = np.concatenate([core.x, np.zeros(n_art)])
        core.n += n_art
        for k, i in enumerate(art_rows):
            basis.append(core.n - n_art + k)
    core.set_basis(sorted(basis))

    max_iter = 2000 + 40 * (core.m + core.n)
    if n_art:
        c1 = np.zeros(core.n)
        c1[core.n - n_art:] = 1.0
        status = core.optimize(c1, phase=1, max_iter=max_iter)
        if status != OPTIMAL:
            raise SolverError("phase 1 ended without optimality")
        core.refactor()
        infeas = float(core.x[core.n - n_art:].sum())
        if infeas > feas_tol:
            return INFEASIBLE, None, np.nan, np.nan
        # Pin artificials at zero for phase 2; basic ones stay at ~0 and are
        # squeezed out by degenerate pivots if their row is ever needed.
        core.lb[core.n - n_art:] = 0.0
        core.ub[core.n - n_art:] = 0.0
        core.fixed = core.ub - core.lb <= 0.0

    c2 = np.zeros(core.n)
    c2[:n] = c
    status = core.optimize(c2, phase=2, max_iter=max_iter)
    if status == UNBOUNDED:
        return UNBOUNDED, None, np.nan, np.nan
    core.refactor()
    x = core.x[:n].copy()
    residual = _primal_residual(A, rel, rhs, lb, ub, x)
    if residual > feas_tol:
        raise SolverError(f"optimal point violates feasibility tolerance ({residual:.3e})")
    return OPTIMAL, x, float(c @ x), residual


def _primal_residual(A, rel, rhs, lb, ub, x):
    worst = 0.0
    lhs = A @ x
    for i, r in enumerate(rel):
        if r == LE:
            worst = max(worst, lhs[i] - rhs[i])
        elif r == GE:
            worst = max(worst, rhs[i] - lhs[i])
        else:
            worst = max(worst, abs(lhs[i] - rhs[i]))
    worst = max(worst, float(np.maximum(lb - x, 0.0).max(initial=0.0)))
    finite = np.isfinite(ub)
    if finite.any():
        worst = max(worst, float(np.maximum(x[finite] - ub[finite], 0.0).max(initial=0.0)))
    return float(worst)


def solve_lp(problem: MilpProblem, options: SolverOptions | None = None) -> LpSolution:
    """Solve the LP relaxation of a problem (integrality marks are ignored)."""
    options = options or SolverOptions()
    options.validate()
    problem.validate()
    A, rel, rhs = problem.dense_rows()
    status, x, obj, residual = solve_lp_arrays(
        A, rel, rhs, problem.lower_bounds, problem.upper_bounds, problem.objective, options.feas_tol
    )
    if status != OPTIMAL:
        return LpSolution(status=status, values=None, objective_value=np.nan, max_primal_residual=np.nan)
    return LpSolution(status=OPTIMAL, values=x, objective_value=obj, max_primal_residual=residual)
