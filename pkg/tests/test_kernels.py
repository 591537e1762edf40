import numpy as np
import pytest

from optbranch import _kernels
from optbranch.graph import Graph, region_of

from oracles import oracle_mis

BACKENDS = ["numpy"] + (["numba"] if _kernels.BACKEND == "numba" else [])


def random_graph(rng, n, p):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


@pytest.mark.parametrize("backend", BACKENDS)
def test_max_independent_matches_oracle(backend):
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(1, 15))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.6)))
        size, config = _kernels.max_independent(n, list(g.adj_mask), backend=backend)
        assert size == oracle_mis(g)
        assert g.is_independent(config)
        assert config.bit_count() == size


def test_backends_agree_bit_for_bit():
    if _kernels.BACKEND != "numba":
        pytest.skip("numba backend unavailable")
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(2, 14))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.6)))
        r = region_of(g, range(n), boundary=[v for v in range(n) if v % 3 == 0])
        bpos = r.boundary_positions()
        outs = {}
        for backend in ("numba", "numpy"):
            indep, pop, key, alpha = _kernels.config_scan(
                n, r.local_adj_masks(), bpos, backend=backend
            )
            outs[backend] = (indep, pop, key, alpha)
            assert _kernels.max_independent(n, list(g.adj_mask), backend=backend) == \
                _kernels.max_independent(n, list(g.adj_mask), backend="numpy")
        for a, b in zip(outs["numba"], outs["numpy"]):
            assert np.array_equal(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def test_scan_alpha_counts_boundary_keys():
    # triangle with one boundary vertex: alpha(0) = 1 (either other corner),
    # alpha(1) = 1 (the boundary vertex alone)
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    _, _, _, alpha = _kernels.config_scan(3, list(g.adj_mask), [0])
    assert list(alpha) == [1, 1]


def test_empty_width_scan():
    size, config = _kernels.max_independent(0, [])
    assert (size, config) == (0, 0)
