"""Dense LP solver and LP-derived checks.

Problems are ``min <c, x>  s.t.  <a_t, x> >= b_t`` with x free.  The solver is
a two-phase tableau simplex with Bland's anti-cycling rule; it is deliberately
dense and deterministic (identical inputs give identical outputs, bit for
bit).  Optimal results carry dual weights, infeasible results carry Farkas
weights, and both certificates are verified in the test suite.
"""

import numpy as np
from dataclasses import dataclass
from typing import Optional

from .config import default_tolerances
from .errors import (
    DimensionMismatchError,
    IterationLimitError,
    NumericalBreakdownError,
)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_PIVOT_TOL = 1e-9
_SLATER_CAP = 1e6


@dataclass(frozen=True)
class LinearProgram:
    """min <cost, x> subject to a_matrix @ x >= rhs (x free)."""

    cost: np.ndarray
    a_matrix: np.ndarray
    rhs: np.ndarray

    @classmethod
    def from_rows(cls, cost, rows) -> "LinearProgram":
        """Build from a list of (a, b) pairs meaning <a, x> >= b."""
        cost = np.asarray(cost, dtype=float)
        n = cost.shape[0]
        if rows:
            a = np.array([np.asarray(r[0], dtype=float) for r in rows])
            b = np.array([float(r[1]) for r in rows])
        else:
            a = np.zeros((0, n))
            b = np.zeros(0)
        return cls(cost=cost, a_matrix=a, rhs=b)

    def __post_init__(self):
        for arr in (self.cost, self.a_matrix, self.rhs):
            if not np.all(np.isfinite(arr)):
                raise ValueError("LP data must be finite")
        if self.a_matrix.ndim != 2 or self.a_matrix.shape[1] != self.cost.shape[0]:
            raise DimensionMismatchError(
                f"constraint matrix shape {self.a_matrix.shape} does not match "
                f"cost dimension {self.cost.shape[0]}"
            )
        if self.rhs.shape[0] != self.a_matrix.shape[0]:
            raise DimensionMismatchError("rhs length does not match row count")

    @property
    def n(self) -> int:
        return self.cost.shape[0]

    @property
    def m(self) -> int:
        return self.a_matrix.shape[0]


@dataclass(frozen=True)
class SolveResult:
    status: str
    value: float
    solution: Optional[np.ndarray]
    dual_weights: Optional[np.ndarray]  # Farkas weights when infeasible


@dataclass(frozen=True)
class SlaterCertificate:
    point: np.ndarray
    rho: float
    capped: bool  # slack unbounded; rho hit the configured cap


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    colvals = T[:, col].copy()
    colvals[row] = 0.0
    T -= np.outer(colvals, T[row])
    # re-sparsify the pivot column exactly
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _pivot_loop(T, basis, candidate_cols, tol, max_iter, bounded=False):
    """Run simplex pivots until optimal or an unbounded column is found.

    Returns ("optimal", -1) or ("unbounded", entering_col).  Bland's rule:
    entering column = smallest eligible index, leaving row breaks ratio ties
    by smallest basis index.  With bounded=True (phase 1, whose objective
    cannot be unbounded) a column with no eligible leaving row is numerical
    noise and is skipped instead of reported.
    """
    for _ in range(max_iter):
        obj = T[-1]
        pivoted = False
        for enter in candidate_cols:
            if obj[enter] >= -tol:
                continue
            col = T[:-1, enter]
            leave = -1
            best_ratio = np.inf
            for i in range(col.shape[0]):
                if col[i] > tol:
                    ratio = T[i, -1] / col[i]
                    if ratio < best_ratio - tol or (
                        abs(ratio - best_ratio) <= tol
                        and (leave < 0 or basis[i] < basis[leave])
                    ):
                        best_ratio = ratio
                        leave = i
            if leave < 0:
                if bounded:
                    continue
                return "unbounded", enter
            _pivot(T, basis, leave, enter)
            pivoted = True
            break
        if not pivoted:
            return "optimal", -1
    raise IterationLimitError("simplex iteration limit reached")


def solve(lp: LinearProgram, tol: float = None) -> SolveResult:
    """Solve the LP, classifying optimal / infeasible / unbounded.

    Optimal results satisfy primal feasibility, dual feasibility, and
    complementary slackness to within 1e-8 (verified by tests); infeasible
    results carry Farkas weights w >= 0 with A'w = 0 and b'w > 0.
    """
    if tol is None:
        tol = default_tolerances().feasibility
    n, m = lp.n, lp.m
    if m == 0:
        if np.all(lp.cost == 0.0):
            return SolveResult(OPTIMAL, 0.0, np.zeros(n), np.zeros(0))
        return SolveResult(UNBOUNDED, -np.inf, None, None)

    # standard form: x = u - v, slack s: [A, -A, -I] z = b, z >= 0
    sign = np.where(lp.rhs < 0.0, -1.0, 1.0)
    M = np.hstack([lp.a_matrix, -lp.a_matrix, -np.eye(m)]) * sign[:, None]
    rhs = lp.rhs * sign
    N = 2 * n + m
    max_iter = 2000 + 200 * (m + N)

    T = np.zeros((m + 1, N + m + 1))
    T[:m, :N] = M
    T[:m, N : N + m] = np.eye(m)
    T[:m, -1] = rhs
    basis = [N + i for i in range(m)]

    # phase 1: minimize sum of artificials (all basic initially)
    T[-1] = -T[:m].sum(axis=0)
    T[-1, N : N + m] = 0.0
    status, _ = _pivot_loop(T, basis, range(N), _PIVOT_TOL, max_iter, bounded=True)
    if status != "optimal":
        raise NumericalBreakdownError("phase-1 objective unbounded (impossible)")
    if T[-1, -1] < -max(tol, 1e-8) * max(1.0, np.abs(rhs).max()):
        # infeasible; phase-1 duals give Farkas weights for the original rows
        y = 1.0 - T[-1, N : N + m]
        farkas = np.maximum(sign * y, 0.0)
        return SolveResult(INFEASIBLE, np.inf, None, farkas)

    # drive leftover artificials out of the basis; drop redundant rows
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        pos = basis.index(N + i) if (N + i) in basis else -1
        if pos < 0:
            continue
        entry = np.flatnonzero(np.abs(T[pos, :N]) > _PIVOT_TOL)
        if entry.size:
            _pivot(T, basis, pos, int(entry[0]))
        else:
            keep[pos] = False  # redundant row; tableau rows track input rows
    if not keep.all():
        rows = np.flatnonzero(keep)
        T = np.vstack([T[rows], T[-1:]])
        basis = [basis[i] for i in rows]
    kept = np.flatnonzero(keep)

    # phase 2
    cost_full = np.zeros(T.shape[1])
    cost_full[:n] = lp.cost
    cost_full[n : 2 * n] = -lp.cost
    T[-1] = cost_full
    for i, bi in enumerate(basis):
        if cost_full[bi] != 0.0:
            T[-1] -= cost_full[bi] * T[i]
    status, _ = _pivot_loop(T, basis, range(N), _PIVOT_TOL, max_iter)
    if status == "unbounded":
        return SolveResult(UNBOUNDED, -np.inf, None, None)

    x = np.zeros(n)
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] += T[i, -1]
        elif bi < 2 * n:
            x[bi - n] -= T[i, -1]
    value = float(lp.cost @ x)

    # duals for the kept rows via B' y = c_B over the original standard form
    full = np.zeros((m, N + m))
    full[:, :N] = M
    full[:, N : N + m] = np.eye(m)
    B = full[kept][:, basis]
    c_b = cost_full[list(basis)]
    try:
        y = np.linalg.solve(B.T, c_b)
    except np.linalg.LinAlgError:
        y, *_ = np.linalg.lstsq(B.T, c_b, rcond=None)
    duals = np.zeros(m)
    duals[kept] = sign[kept] * y
    duals = np.maximum(duals, 0.0)
    return SolveResult(OPTIMAL, value, x, duals)


def slater_constant(rows, cap: float = _SLATER_CAP, tol: float = None):
    """Maximal strong-Slater constant rho* with an attaining point.

    Solves max rho s.t. <a_t, x> >= b_t + rho, rho <= cap, over (x, rho).
    Returns a SlaterCertificate, or None when rho* <= 0 (no strict slack).
    """
    if tol is None:
        tol = default_tolerances().feasibility
    rows = list(rows)
    if not rows:
        raise ValueError("slater_constant needs at least one row")
    n = np.asarray(rows[0][0], dtype=float).shape[0]
    aug_rows = [(np.append(np.asarray(a, dtype=float), -1.0), float(b)) for a, b in rows]
    aug_rows.append((np.append(np.zeros(n), -1.0), -cap))
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    res = solve(LinearProgram.from_rows(cost, aug_rows))
    if res.status != OPTIMAL:
        raise NumericalBreakdownError(f"slater LP status {res.status}")
    rho = -res.value
    if rho <= tol:
        return None
    return SlaterCertificate(
        point=res.solution[:n].copy(), rho=float(rho), capped=rho >= cap - 1e-6
    )


def optimal_face_bounded(lp: LinearProgram, tol: float = None) -> bool:
    """True iff the optimal face of a solvable LP is bounded.

    Recession-cone test: the face is bounded iff the cone
    {d : <a_t, d> >= 0, <c, d> = 0} is {0}; checked by 2n LPs maximizing
    +/- d_i over the cone intersected with the unit box.
    """
    if tol is None:
        tol = default_tolerances().optimality
    n = lp.n
    rows = [(lp.a_matrix[i], 0.0) for i in range(lp.m)]
    rows.append((lp.cost, 0.0))
    rows.append((-lp.cost, 0.0))
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        rows.append((e, -1.0))
        rows.append((-e, -1.0))
    for i in range(n):
        for s in (1.0, -1.0):
            cost = np.zeros(n)
            cost[i] = -s  # maximize s * d_i
            res = solve(LinearProgram.from_rows(cost, rows))
            if res.status != OPTIMAL:
                raise NumericalBreakdownError(f"recession LP status {res.status}")
            if -res.value > 100 * max(tol, 1e-8):
                return False
    return True
