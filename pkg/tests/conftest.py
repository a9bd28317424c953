import numpy as np
import pytest

from rootspan.graph import build_csr, disjoint_union, generate


def random_tree_edges(n, seed):
    """Random labelled tree: attach vertex i to a random earlier one, then relabel."""
    rng = np.random.default_rng(seed)
    if n == 1:
        return np.empty((0, 2), dtype=np.int64)
    attach = np.array([rng.integers(0, i) for i in range(1, n)], dtype=np.int64)
    perm = rng.permutation(n)
    edges = np.stack([perm[np.arange(1, n)], perm[attach]], axis=1)
    return edges[rng.permutation(n - 1)]


def two_triangles():
    tri = generate("complete", 3)
    return disjoint_union(tri, tri)


def suite_graphs():
    """The acceptance validity suite."""
    graphs = {
        "path(10^4)": generate("path", 10_000),
        "star(10^4)": generate("star", 10_000),
        "grid(100x100)": generate("grid", 100, 100),
    }
    for s in range(1, 6):
        graphs[f"random(2000,0.005,{s})"] = generate("random", 2000, 0.005, s)
    graphs["two-triangles"] = two_triangles()
    graphs["single-vertex"] = generate("path", 1)
    return {k: build_csr(v) for k, v in graphs.items()}


@pytest.fixture(scope="session")
def suite():
    return suite_graphs()


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
