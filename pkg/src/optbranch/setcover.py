"""Weighted minimum set cover: exact branch-and-bound and LP rounding.

Universe elements are row indices 0..universe_size-1 and every set is a
bitmask over them.  ``solve_exact`` is a proven-optimal search built around
a greedy incumbent (weight per newly covered element, include-first): sets
with identical coverage collapse to their cheapest representative and a
dual-ascent certificate settles easy instances outright.  Small instances
then run an element-disjunction branch-and-bound whose nodes are cut with
the stronger of the dual bound and the greedy fractional completion bound;
wide instances (thousands of sets, as rule synthesis produces on large
regions) instead branch on fractional variables with a simplex relaxation
bound per node and reduced-cost column fixing at the root, which closes the
integrality gap in a few hundred nodes where combinatorial bounds need
millions.  ``solve_lp`` solves the relaxation and rounds the fractional
solution with seeded inclusion trials plus greedy repair.

Weights are rescaled by an exact power of two so that tolerances are
meaningful even when gamma^-drho spans many orders of magnitude; reported
objectives are always in the caller's scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, InputError
from .graph import bits
from .simplex import cover_lp

PRUNE_TOL = 1e-12

LP_TOL = 1e-9

SMALL_SET_LIMIT = 96


@dataclass(frozen=True)
class WmscInstance:
    universe_size: int
    sets: tuple[int, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.sets) != len(self.weights):
            raise InputError("sets and weights must have equal length")
        if any(w <= 0 for w in self.weights):
            raise InputError("set weights must be positive")
        full = (1 << self.universe_size) - 1
        if any(cov & ~full for cov in self.sets):
            raise InputError("set covers an element outside the universe")

    def full_mask(self) -> int:
        return (1 << self.universe_size) - 1

    def check_feasible(self) -> None:
        union = 0
        for cov in self.sets:
            union |= cov
        if union != self.full_mask():
            raise InfeasibleError("sets do not cover the universe")


@dataclass(frozen=True)
class WmscSolution:
    chosen: tuple[int, ...]
    objective: float
    exact: bool
    lp_bound: float | None = None

    def covers(self, inst: WmscInstance) -> bool:
        got = 0
        for i in self.chosen:
            got |= inst.sets[i]
        return got == inst.full_mask()


def _collapse(inst: WmscInstance):
    """Cheapest representative per distinct coverage, ordered by index."""
    reps: dict[int, tuple[float, int]] = {}
    for idx, (cov, w) in enumerate(zip(inst.sets, inst.weights)):
        cur = reps.get(cov)
        if cur is None or (w, idx) < cur:
            reps[cov] = (w, idx)
    order = sorted((idx, cov, w) for cov, (w, idx) in reps.items())
    covs = [cov for _, cov, _ in order]
    weights = [w for _, _, w in order]
    indices = [idx for idx, _, _ in order]
    return covs, weights, indices


def _greedy_cover(covs, weights, full):
    """Greedy cover by weight per newly covered element, smallest index first."""
    uncov = full
    chosen = []
    total = 0.0
    while uncov:
        best = -1
        best_ratio = math.inf
        for i, cov in enumerate(covs):
            new = cov & uncov
            if not new:
                continue
            ratio = weights[i] / new.bit_count()
            if ratio < best_ratio - PRUNE_TOL:
                best_ratio = ratio
                best = i
        if best < 0:
            raise InfeasibleError("sets do not cover the universe")
        chosen.append(best)
        total += weights[best]
        uncov &= ~covs[best]
    return chosen, total


def _covering_lists(covs, universe_size):
    covering = [[] for _ in range(universe_size)]
    for i, cov in enumerate(covs):
        for e in bits(cov):
            covering[e].append(i)
    return covering


def _dual_ascent(covs, weights, universe_size, covering):
    """Feasible duals: raise y_e, scarcest elements first, inside set slacks."""
    slack = list(weights)
    y = [0.0] * universe_size
    for e in sorted(range(universe_size), key=lambda e: (len(covering[e]), e)):
        if not covering[e]:
            raise InfeasibleError("an element has no covering set")
        lift = min(slack[i] for i in covering[e])
        if lift > 0.0:
            y[e] = lift
            for i in covering[e]:
                slack[i] -= lift
    return y


def _bnb_python(covs, weights, universe_size, y, incumbent, node_cap=None):
    """Element-disjunction search; children ordered by ratio then index.

    ``incumbent`` is (objective, chosen-list); only strictly better covers
    replace it, so the greedy solution wins all exact ties.  Returns the
    incumbent pair and whether the search ran to completion.
    """
    best_obj, best_sol = incumbent
    best_sol = list(best_sol)
    nodes = 0
    full = (1 << universe_size) - 1

    def descend(uncov, weight, avail, chosen):
        nonlocal best_obj, best_sol, nodes
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            raise _NodeCap()
        if uncov == 0:
            if weight < best_obj - PRUNE_TOL:
                best_obj = weight
                best_sol = list(chosen)
            return
        ydual = weight
        for e in bits(uncov):
            ydual += y[e]
        if ydual >= best_obj - PRUNE_TOL:
            return
        avail = [i for i in avail if covs[i] & uncov]
        count = {}
        frac = {}
        for i in avail:
            new = covs[i] & uncov
            ratio = weights[i] / new.bit_count()
            for e in bits(new):
                count[e] = count.get(e, 0) + 1
                if ratio < frac.get(e, math.inf):
                    frac[e] = ratio
        bound = weight
        branch_e = -1
        branch_count = math.inf
        for e in bits(uncov):
            if e not in count:
                return
            bound += frac[e]
            if count[e] < branch_count:
                branch_count = count[e]
                branch_e = e
        if bound >= best_obj - PRUNE_TOL:
            return
        children = sorted(
            (i for i in avail if (covs[i] >> branch_e) & 1),
            key=lambda i: (weights[i] / (covs[i] & uncov).bit_count(), i),
        )
        remaining = avail
        for child in children:
            remaining = [i for i in remaining if i != child]
            chosen.append(child)
            descend(uncov & ~covs[child], weight + weights[child], remaining, chosen)
            chosen.pop()

    try:
        descend(full, 0.0, list(range(len(covs))), [])
    except _NodeCap:
        return (best_obj, best_sol), False
    return (best_obj, best_sol), True


class _NodeCap(Exception):
    pass


def _bnb_lp(covs, weights, universe_size, incumbent):
    """Fractional-variable branch-and-bound with a relaxation bound per node.

    Nodes solve the covering LP restricted by the branching fixings (HiGHS
    via scipy); a node whose relaxation cannot beat the incumbent is cut,
    an integral relaxation updates it.  Branching picks the most fractional
    variable and explores the fix-to-one side first, so the search dives to
    integral covers early.  Columns that cannot appear in any cover better
    than the incumbent, judged by root reduced costs, are dropped up front.
    """
    from scipy import sparse
    from scipy.optimize import linprog

    n = len(covs)
    rows = []
    cols = []
    for j, cov in enumerate(covs):
        for e in bits(cov):
            rows.append(e)
            cols.append(j)
    matrix = sparse.csc_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(universe_size, n)
    )
    warr = np.asarray(weights)
    rhs = -np.ones(universe_size)

    def relax(lower, upper):
        res = linprog(warr, A_ub=-matrix, b_ub=rhs,
                      bounds=np.column_stack([lower, upper]), method="highs")
        if res.status == 2:
            return None, None, None
        if res.status != 0:
            raise InfeasibleError(f"covering relaxation failed with status {res.status}")
        return res.fun, res.x, res.ineqlin.marginals

    best_obj, best_sol = incumbent
    best_sol = list(best_sol)

    root_val, root_x, root_marg = relax(np.zeros(n), np.ones(n))
    if root_val is None:
        raise InfeasibleError("sets do not cover the universe")
    # reduced-cost fixing against the incumbent
    y = np.maximum(0.0, -np.asarray(root_marg))
    rc = warr - matrix.T @ y
    root_bound = y.sum() + np.minimum(rc, 0.0).sum()
    keep = [int(j) for j in np.nonzero(root_bound + np.maximum(rc, 0.0) < best_obj - LP_TOL)[0]]
    union = 0
    for j in keep:
        union |= covs[j]
    if keep and union == (1 << universe_size) - 1:
        sub_covs = [covs[j] for j in keep]
        sub_map = keep
    else:
        sub_covs = list(covs)
        sub_map = list(range(n))

    m = len(sub_covs)
    rows = []
    cols = []
    for j, cov in enumerate(sub_covs):
        for e in bits(cov):
            rows.append(e)
            cols.append(j)
    sub_matrix = sparse.csc_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(universe_size, m)
    )
    sub_w = warr[sub_map]

    def sub_relax(lower, upper):
        res = linprog(sub_w, A_ub=-sub_matrix, b_ub=rhs,
                      bounds=np.column_stack([lower, upper]), method="highs")
        if res.status == 2:
            return None, None
        if res.status != 0:
            raise InfeasibleError(f"covering relaxation failed with status {res.status}")
        return res.fun, res.x

    def descend(lower, upper):
        nonlocal best_obj, best_sol
        while True:
            val, x = sub_relax(lower, upper)
            if val is None or val >= best_obj - LP_TOL:
                return
            frac = np.nonzero((x > LP_TOL) & (x < 1.0 - LP_TOL))[0]
            if frac.size == 0:
                chosen = [sub_map[int(j)] for j in np.nonzero(x > 0.5)[0]]
                val = sum(weights[j] for j in chosen)
                if val < best_obj - PRUNE_TOL:
                    best_obj = val
                    best_sol = chosen
                return
            j = int(frac[np.argmin(np.abs(x[frac] - 0.5))])
            ones = lower.copy()
            ones[j] = 1.0
            descend(ones, upper)
            upper = upper.copy()
            upper[j] = 0.0

    descend(np.zeros(m), np.ones(m))
    return best_obj, best_sol


def solve_exact(inst: WmscInstance, hint=None) -> WmscSolution:
    """Minimum-weight cover; deterministic, exact within the stated tolerances.

    Ties keep the first solution found, which is the greedy cover whenever
    it is optimal.  ``hint`` may carry a known-feasible choice of original
    set indices (for example last round's cover during the gamma fixed
    point); it seeds the incumbent when strictly cheaper than greedy but
    never changes which optima are reachable.
    """
    inst.check_feasible()
    universe = inst.universe_size
    covs, weights, indices = _collapse(inst)
    # exact rescale: power of two keeps comparisons meaningful for tiny weights
    scale = 2.0 ** -math.frexp(max(weights))[1]
    work_w = [w * scale for w in weights]
    full = (1 << universe) - 1

    greedy_sol, greedy_obj = _greedy_cover(covs, work_w, full)
    covering = _covering_lists(covs, universe)
    y = _dual_ascent(covs, work_w, universe, covering)
    incumbent = (greedy_obj, greedy_sol)
    if hint:
        rep_of = {indices[i]: i for i in range(len(indices))}
        rep_by_cov = {covs[i]: i for i in range(len(covs))}
        picked = []
        got = 0
        ok = True
        for idx in hint:
            rep = rep_of.get(idx, rep_by_cov.get(inst.sets[idx], -1))
            if rep < 0:
                ok = False
                break
            picked.append(rep)
            got |= covs[rep]
        if ok and got == full:
            hint_obj = sum(work_w[i] for i in picked)
            if hint_obj < incumbent[0] - PRUNE_TOL:
                incumbent = (hint_obj, picked)
    if greedy_obj <= sum(y) + PRUNE_TOL:
        chosen = greedy_sol
    elif len(covs) <= SMALL_SET_LIMIT:
        (obj, sol), _ = _bnb_python(covs, work_w, universe, y, incumbent)
        chosen = sol
    else:
        obj, chosen = _bnb_lp(covs, work_w, universe, incumbent)

    picked = tuple(sorted(indices[i] for i in chosen))
    objective = sum(inst.weights[i] for i in picked)
    return WmscSolution(picked, objective, exact=True)


def _greedy_repair(sets, weights, picked, uncovered):
    while uncovered:
        best = -1
        best_ratio = math.inf
        for i, cov in enumerate(sets):
            new = cov & uncovered
            if not new or picked[i]:
                continue
            ratio = weights[i] / new.bit_count()
            if ratio < best_ratio - PRUNE_TOL:
                best_ratio = ratio
                best = i
        if best < 0:
            raise InfeasibleError("rounding repair ran out of sets")
        picked[best] = True
        uncovered &= ~sets[best]


def _drop_redundant(sets, weights, picked, full):
    order = sorted(
        (i for i, p in enumerate(picked) if p),
        key=lambda i: (-weights[i], -i),
    )
    for i in order:
        rest = 0
        for j, p in enumerate(picked):
            if p and j != i:
                rest |= sets[j]
        if rest == full:
            picked[i] = False


def solve_lp(inst: WmscInstance, seed: int, trials: int = 32) -> WmscSolution:
    """LP relaxation plus the best of ``trials`` seeded rounding attempts.

    Fractional values are treated as inclusion probabilities; after sampling,
    greedy repair restores feasibility and redundant picks are dropped.  The
    returned objective is an upper bound and ``lp_bound`` the LP lower bound.
    """
    inst.check_feasible()
    scale = 2.0 ** -math.frexp(max(inst.weights))[1]
    scaled = [w * scale for w in inst.weights]
    x, lp_obj, _, _ = cover_lp(scaled, inst.sets, inst.universe_size)
    full = inst.full_mask()
    best_picked = None
    best_obj = math.inf
    for trial in range(trials):
        rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, trial])
        draw = rng.random(len(inst.sets))
        picked = [bool(d < xi) for d, xi in zip(draw, x)]
        covered = 0
        for i, p in enumerate(picked):
            if p:
                covered |= inst.sets[i]
        _greedy_repair(inst.sets, scaled, picked, full & ~covered)
        _drop_redundant(inst.sets, scaled, picked, full)
        obj = sum(w for w, p in zip(scaled, picked) if p)
        if obj < best_obj - PRUNE_TOL:
            best_obj = obj
            best_picked = tuple(i for i, p in enumerate(picked) if p)
    return WmscSolution(best_picked, sum(inst.weights[i] for i in best_picked),
                        exact=False, lp_bound=lp_obj / scale)
