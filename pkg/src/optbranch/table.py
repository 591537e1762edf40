"""Alpha tensors, their pruning, and boundary-grouped branching tables.

The alpha tensor of a region R assigns to every boundary configuration the
largest local independent set consistent with it (``NEG_INF`` when the
boundary bits themselves clash).  Pruning removes entries that can never be
part of a globally optimal solution; the survivors, grouped with their
witnessing configurations, form the branching table that rule synthesis
works on.

Bit conventions (fixed so tables are reproducible): local position i of a
region is bit i of a configuration integer, and boundary key bit j belongs
to the j-th boundary vertex in local order.  Rows are emitted by ascending
boundary key.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CapacityError, InternalError
from .graph import Graph, Region, bits

NEG_INF = -1

ENV_EXACT_LIMIT = 20


@dataclass(frozen=True)
class AlphaTensor:
    """Local MIS sizes of a region, indexed by packed boundary configuration."""

    region: Region
    values: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.region.boundary_positions())

    def surviving(self) -> tuple[int, ...]:
        """Boundary keys with finite entries, ascending."""
        return tuple(k for k, a in enumerate(self.values) if a != NEG_INF)


@dataclass(frozen=True)
class BranchingTable:
    """Boundary-grouped maximum configurations of a region.

    ``rows[i]`` holds every optimal local configuration for the i-th
    surviving boundary key (``row_keys[i]``); all of them have popcount
    ``row_alpha[i]``.
    """

    width: int
    rows: tuple[tuple[int, ...], ...]
    row_alpha: tuple[int, ...]
    row_keys: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.rows)


def alpha_tensor(r: Region, limit: int = 26) -> AlphaTensor:
    """Exhaustively enumerate the alpha tensor of ``r``.

    Every one of the 2^|V(R)| local configurations is tested for
    independence; the maximum popcount per boundary configuration survives.
    """
    if r.width > limit:
        raise CapacityError(
            f"region has {r.width} vertices, above the enumeration limit {limit}"
        )
    _, _, _, alpha = _kernels.config_scan(r.width, r.local_adj_masks(), r.boundary_positions())
    return AlphaTensor(r, tuple(int(a) for a in alpha))


def prune_irrelevant(t: AlphaTensor) -> AlphaTensor:
    """Drop entries dominated by a less restrictive boundary configuration.

    Entry ``t`` is dropped when some ``s`` with s subset-of t (bitwise) has an
    equal or larger value, or when ``t`` is already infeasible.  Computed with
    a subset-lattice max sweep, O(2^rank * rank).
    """
    rank = t.rank
    vals = np.asarray(t.values, dtype=np.int16)
    # closure[k] = max value over all subsets of k including k itself
    closure = vals.copy()
    for b in range(rank):
        folded = closure.reshape(-1, 2 << b)
        np.maximum(folded[:, (1 << b):], folded[:, : (1 << b)], out=folded[:, (1 << b):])
    # best[k] = max value over strict subsets = max of closure over children
    best = np.full(1 << rank, NEG_INF, dtype=np.int16)
    for b in range(rank):
        shaped_best = best.reshape(-1, 2 << b)
        shaped_clo = closure.reshape(-1, 2 << b)
        np.maximum(shaped_best[:, (1 << b):], shaped_clo[:, : (1 << b)], out=shaped_best[:, (1 << b):])
    pruned = np.where((vals == NEG_INF) | (best >= vals), np.int16(NEG_INF), vals)
    return AlphaTensor(t.region, tuple(int(v) for v in pruned))


def _boundary_set_mask(region: Region, key: int) -> int:
    """Host mask of the boundary vertices selected by packed key ``key``."""
    out = 0
    for j, v in enumerate(bits(region.boundary)):
        if (key >> j) & 1:
            out |= 1 << v
    return out


def _induced_alpha(host: Graph, vertex_mask: int, limit: int) -> int:
    """Exact alpha of the induced subgraph when small, else the vertex count."""
    count = vertex_mask.bit_count()
    if count == 0:
        return 0
    if count > limit:
        return count
    verts = tuple(bits(vertex_mask))
    pos = {v: i for i, v in enumerate(verts)}
    adj = [0] * count
    for i, v in enumerate(verts):
        for w in host.adj[v]:
            j = pos.get(w)
            if j is not None:
                adj[i] |= 1 << j
    size, _ = _kernels.max_independent(count, adj)
    return size


def prune_by_environment(t: AlphaTensor, host: Graph | None = None) -> AlphaTensor:
    """Prune further using the host-side neighbors of the boundary.

    A surviving configuration s is dropped when some retained configuration
    t' absorbs it: every completion of the s branch is matched, up to the
    vertices t' removes but s does not, by a completion of the t' branch.
    The alpha of that difference set is computed exactly when it has at most
    ``ENV_EXACT_LIMIT`` vertices, otherwise its vertex count stands in as a
    sound upper bound.  Configurations are considered in order of decreasing
    value so mutually absorbing pairs keep exactly one representative.
    """
    host = host or t.region.host
    region = t.region
    survivors = t.surviving()
    if len(survivors) <= 1:
        return t
    removed_by = {}
    for key in survivors:
        chosen = _boundary_set_mask(region, key)
        removed_by[key] = host.neighbors_mask(chosen) & ~region.vertices
    order = sorted(survivors, key=lambda k: (-t.values[k], k))
    kept: list[int] = []
    pruned = list(t.values)
    for s in order:
        absorbed = False
        for other in kept:
            diff = removed_by[other] & ~removed_by[s]
            bound = _induced_alpha(host, diff, ENV_EXACT_LIMIT)
            if t.values[s] + bound <= t.values[other]:
                absorbed = True
                break
        if absorbed:
            pruned[s] = NEG_INF
        else:
            kept.append(s)
    return AlphaTensor(region, tuple(pruned))


def boundary_grouped(t: AlphaTensor) -> BranchingTable:
    """Collect, per surviving entry, every optimal consistent configuration."""
    region = t.region
    survivors = t.surviving()
    if not survivors:
        raise InternalError("alpha tensor has no finite entries")
    indep, pop, key, _ = _kernels.config_scan(
        region.width, region.local_adj_masks(), region.boundary_positions()
    )
    alpha = np.full(1 << t.rank, NEG_INF, dtype=np.int16)
    for k in survivors:
        alpha[k] = t.values[k]
    hit = indep & (pop == alpha[key])
    configs = np.nonzero(hit)[0]
    config_keys = key[configs]
    rows = []
    row_alpha = []
    for k in survivors:
        members = configs[config_keys == k]
        if members.size == 0:
            raise InternalError(f"surviving boundary key {k} has no configurations")
        rows.append(tuple(int(c) for c in members))
        row_alpha.append(t.values[k])
    return BranchingTable(region.width, tuple(rows), tuple(row_alpha), survivors)
