"""Bounded-variable primal simplex for the covering LP relaxation.

Solves  min c.x  s.t.  A x >= b,  0 <= x <= u  (u finite), assuming x = u is
feasible, which holds for every covering instance whose sets reach the whole
universe.  Surplus variables turn the constraints into equalities; starting
with all structural variables nonbasic at their upper bound and the
surpluses basic gives an immediate basic feasible solution, so no phase-1 is
needed.  Pivoting uses Dantzig's rule and falls back to Bland's rule after a
run of degenerate steps, which guarantees termination.
"""

from __future__ import annotations

import numpy as np

from .errors import InfeasibleError, NumericError

TOL = 1e-9

AT_LOWER = 0
AT_UPPER = 1
BASIC = 2

_DEGENERATE_RUN = 12


def solve_bounded_geq(c, A, b, upper, start=None):
    """Solve min c.x, A x >= b, 0 <= x <= upper.

    Returns ``(x, objective, duals, basis_state)``; ``duals`` are the row
    multipliers at termination and ``basis_state`` can seed a warm restart
    of a nearby instance (same shape, different costs).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    upper = np.asarray(upper, dtype=float)
    m, n = A.shape
    if np.any(A @ upper < b - TOL):
        raise InfeasibleError("upper bounds do not satisfy the covering constraints")

    total = n + m
    full_a = np.hstack([A, -np.eye(m)])
    full_c = np.concatenate([c, np.zeros(m)])
    full_u = np.concatenate([upper, np.full(m, np.inf)])

    if start is not None:
        basis, status = list(start[0]), start[1].copy()
    else:
        status = np.full(total, AT_LOWER, dtype=np.int8)
        status[:n] = AT_UPPER
        basis = list(range(n, total))
        for j in basis:
            status[j] = BASIC

    def nonbasic_values():
        x = np.zeros(total)
        ups = status == AT_UPPER
        x[ups] = full_u[ups]
        return x

    stall = 0
    max_iter = 50 * total + 1000
    for _ in range(max_iter):
        basis_mat = full_a[:, basis]
        x = nonbasic_values()
        try:
            x[basis] = np.linalg.solve(basis_mat, b - full_a @ x)
            y = np.linalg.solve(basis_mat.T, full_c[basis])
        except np.linalg.LinAlgError as exc:
            raise NumericError("singular basis in simplex") from exc
        reduced = full_c - full_a.T @ y
        enter_lower = (status == AT_LOWER) & (reduced < -TOL)
        enter_upper = (status == AT_UPPER) & (reduced > TOL)
        eligible = np.nonzero(enter_lower | enter_upper)[0]
        if eligible.size == 0:
            return x[:n], float(full_c @ x), y, (tuple(basis), status.copy())
        if stall >= _DEGENERATE_RUN:
            j = int(eligible[0])
        else:
            j = int(eligible[np.argmax(np.abs(reduced[eligible]))])
        sigma = 1.0 if status[j] == AT_LOWER else -1.0
        try:
            w = np.linalg.solve(basis_mat, full_a[:, j])
        except np.linalg.LinAlgError as exc:
            raise NumericError("singular basis in simplex") from exc

        # largest step t >= 0 before a basic variable hits one of its bounds
        min_limit = np.inf
        leave_row = -1
        leave_to = AT_LOWER
        xb = x[basis]
        ub = full_u[basis]
        delta = sigma * w
        for k in range(m):
            if delta[k] > TOL:
                limit = max(xb[k], 0.0) / delta[k]
                to = AT_LOWER
            elif delta[k] < -TOL and np.isfinite(ub[k]):
                limit = max(ub[k] - xb[k], 0.0) / -delta[k]
                to = AT_UPPER
            else:
                continue
            if leave_row == -1 or limit < min_limit - TOL:
                min_limit, leave_row, leave_to = limit, k, to
            elif limit < min_limit + TOL and basis[k] < basis[leave_row]:
                min_limit, leave_row, leave_to = min(limit, min_limit), k, to
        flip_step = full_u[j]
        if not np.isfinite(min(flip_step, min_limit)):
            raise NumericError("LP is unbounded, which covering LPs cannot be")
        step = min(flip_step, min_limit)
        stall = stall + 1 if step < TOL else 0
        if flip_step <= min_limit:
            # bound flip: j traverses to its opposite bound, basis unchanged
            status[j] = AT_UPPER if status[j] == AT_LOWER else AT_LOWER
            continue
        out_col = basis[leave_row]
        status[out_col] = leave_to
        status[j] = BASIC
        basis[leave_row] = j
    raise NumericError("simplex failed to converge within the iteration cap")


def cover_matrix(sets, universe_size):
    A = np.zeros((universe_size, len(sets)))
    for j, cov in enumerate(sets):
        for i in range(universe_size):
            if (cov >> i) & 1:
                A[i, j] = 1.0
    return A


def cover_lp(weights, sets, universe_size, start=None):
    """LP relaxation of a covering instance given as row-index bitmasks.

    Returns ``(x, objective, duals, basis_state)``.
    """
    A = cover_matrix(sets, universe_size)
    return solve_bounded_geq(
        np.asarray(weights, dtype=float), A, np.ones(universe_size),
        np.ones(len(sets)), start=start,
    )
