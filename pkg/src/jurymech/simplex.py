"""Dense two-phase simplex solver.

Solves  minimize c @ v  subject to  G @ v >= h,  A @ v == b,  v >= lb,
where individual lower bounds may be -inf (free variables).  Free variables
are split into positive and negative parts, surplus variables turn the
inequality rows into equalities, and phase one drives a full artificial
basis to zero before phase two optimizes the real objective.

Bland's smallest-index pivot rule is used in both phases, so the method
terminates on degenerate problems.  Everything is double precision with a
hard pivot budget; exhausting the budget raises instead of returning a
possibly wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

_PIVOT_TOL = 1e-9  # tableau entries below this magnitude are treated as zero
_COST_TOL = 1e-9  # reduced costs above -this are non-improving
_FEAS_TOL = 1e-9  # phase-one objective above this means infeasible


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class PivotLimitError(RuntimeError):
    """Pivot budget exhausted before the solver reached a conclusion."""


@dataclass(frozen=True)
class LinearProgram:
    objective: np.ndarray
    ge_matrix: np.ndarray
    ge_rhs: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower_bounds: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.objective, dtype=float)
        n = c.shape[0]
        g = np.asarray(self.ge_matrix, dtype=float).reshape(-1, n)
        h = np.asarray(self.ge_rhs, dtype=float).reshape(-1)
        a = np.asarray(self.eq_matrix, dtype=float).reshape(-1, n)
        b = np.asarray(self.eq_rhs, dtype=float).reshape(-1)
        lb = np.asarray(self.lower_bounds, dtype=float).reshape(-1)
        if g.shape[0] != h.shape[0] or a.shape[0] != b.shape[0] or lb.shape[0] != n:
            raise ValueError("inconsistent LP dimensions")
        if np.any(np.isposinf(lb)) or np.any(np.isnan(lb)):
            raise ValueError("lower bounds must be finite or -inf")
        for name, arr in (("objective", c), ("ge", g), ("rhs", h), ("eq", a), ("eq rhs", b)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite entries in {name}")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "ge_matrix", g)
        object.__setattr__(self, "ge_rhs", h)
        object.__setattr__(self, "eq_matrix", a)
        object.__setattr__(self, "eq_rhs", b)
        object.__setattr__(self, "lower_bounds", lb)

    @property
    def num_vars(self) -> int:
        return self.objective.shape[0]


@dataclass(frozen=True)
class Solution:
    status: SolveStatus
    values: np.ndarray | None
    objective_value: float


class _Budget:
    def __init__(self, pivots: int) -> None:
        self.left = pivots

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise PivotLimitError("simplex pivot budget exhausted")


def _pivot(tableau: np.ndarray, zrow: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factor = tableau[:, col].copy()
    factor[row] = 0.0
    tableau -= np.outer(factor, tableau[row])
    zrow -= zrow[col] * tableau[row]
    basis[row] = col


def _iterate(
    tableau: np.ndarray,
    zrow: np.ndarray,
    basis: np.ndarray,
    num_cols: int,
    budget: _Budget,
) -> SolveStatus:
    """Run simplex iterations until no reduced cost improves (OPTIMAL for the
    current objective) or an improving ray is found (UNBOUNDED)."""
    while True:
        entering = -1
        for j in range(num_cols):  # Bland: smallest improving index
            if zrow[j] < -_COST_TOL:
                entering = j
                break
        if entering < 0:
            return SolveStatus.OPTIMAL
        column = tableau[:, entering]
        candidates = np.nonzero(column > _PIVOT_TOL)[0]
        if candidates.size == 0:
            return SolveStatus.UNBOUNDED
        ratios = tableau[candidates, -1] / column[candidates]
        best = ratios.min()
        # Bland tie-break: among minimum ratios, leave the basic variable
        # with the smallest index.
        tied = candidates[ratios <= best + 1e-15]
        leaving = tied[np.argmin(basis[tied])]
        budget.spend()
        _pivot(tableau, zrow, basis, int(leaving), entering)


def solve(lp: LinearProgram, max_pivots: int = 1_000_000) -> Solution:
    """Solve the LP; statuses other than OPTIMAL carry no point."""
    n = lp.num_vars
    free = ~np.isfinite(lp.lower_bounds)
    shift = np.where(free, 0.0, lp.lower_bounds)

    rows = np.vstack([lp.ge_matrix, lp.eq_matrix])
    rhs = np.concatenate([lp.ge_rhs, lp.eq_rhs]) - rows @ shift
    num_ge = lp.ge_matrix.shape[0]
    m = rows.shape[0]

    # Columns: shifted originals, negative parts of free vars, surplus vars.
    neg_part = -rows[:, free]
    surplus = np.zeros((m, num_ge))
    surplus[:num_ge, :] = -np.eye(num_ge)
    body = np.hstack([rows, neg_part, surplus])
    costs = np.concatenate([lp.objective, -lp.objective[free], np.zeros(num_ge)])
    num_real = body.shape[1]

    flip = rhs < 0.0
    body[flip] *= -1.0
    rhs = np.abs(rhs)

    budget = _Budget(max_pivots)

    # Phase one: artificial basis, minimize its total size.
    tableau = np.hstack([body, np.eye(m), rhs.reshape(-1, 1)])
    basis = np.arange(num_real, num_real + m)
    zrow = np.zeros(tableau.shape[1])
    zrow[num_real : num_real + m] = 1.0
    for r in range(m):
        zrow -= tableau[r]
    status = _iterate(tableau, zrow, basis, num_real, budget)
    if status is not SolveStatus.OPTIMAL or -zrow[-1] > _FEAS_TOL:
        return Solution(SolveStatus.INFEASIBLE, None, float("nan"))

    # Drive leftover artificials out of the (degenerate) basis.
    keep_rows = np.ones(m, dtype=bool)
    for r in range(m):
        if basis[r] < num_real:
            continue
        pivots = np.nonzero(np.abs(tableau[r, :num_real]) > _PIVOT_TOL)[0]
        if pivots.size:
            budget.spend()
            _pivot(tableau, zrow, basis, r, int(pivots[0]))
        else:
            keep_rows[r] = False  # redundant constraint
    tableau = tableau[keep_rows][:, list(range(num_real)) + [-1]]
    basis = basis[keep_rows]

    # Phase two: the real objective over the feasible basis found above.
    zrow = np.concatenate([costs, [0.0]])
    for r, bv in enumerate(basis):
        zrow -= costs[bv] * tableau[r]
    status = _iterate(tableau, zrow, basis, num_real, budget)
    if status is SolveStatus.UNBOUNDED:
        return Solution(SolveStatus.UNBOUNDED, None, float("nan"))

    extended = np.zeros(num_real)
    extended[basis] = np.maximum(tableau[:, -1], 0.0)
    values = shift + extended[:n]
    values[free] -= extended[n : n + int(free.sum())]

    _check_feasible(lp, values)
    return Solution(SolveStatus.OPTIMAL, values, float(lp.objective @ values))


def _check_feasible(lp: LinearProgram, values: np.ndarray) -> None:
    # Guard against silent numerical collapse; tests pin the tight 1e-9.
    guard = 1e-7
    if lp.ge_matrix.size and np.min(lp.ge_matrix @ values - lp.ge_rhs) < -guard:
        raise RuntimeError("simplex returned a point violating an inequality")
    if lp.eq_matrix.size and np.max(np.abs(lp.eq_matrix @ values - lp.eq_rhs)) > guard:
        raise RuntimeError("simplex returned a point violating an equality")
    finite = np.isfinite(lp.lower_bounds)
    if np.any(values[finite] < lp.lower_bounds[finite] - guard):
        raise RuntimeError("simplex returned a point violating a bound")
