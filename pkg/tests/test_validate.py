import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootspan import ALGORITHMS
from rootspan.bfs import bfs_rst
from rootspan.graph import build_csr, generate, normalize_edges
from rootspan.validate import oracle_bfs, oracle_cc, oracle_root, validate_rooted_forest

from conftest import random_tree_edges, two_triangles


def test_path_bfs_ok():
    g = build_csr(generate("path", 4))
    f, _ = bfs_rst(g, 0)
    rep = validate_rooted_forest(g, f)
    assert rep.ok
    assert rep.depth == 3
    assert rep.components_found == 1


def test_two_cycle_reported():
    g = build_csr(generate("path", 2))
    rep = validate_rooted_forest(g, np.array([1, 0]))
    assert not rep.ok
    assert {rule for rule, _, _ in rep.violations} >= {"cycle"}


def test_non_edge_reported():
    g = build_csr(generate("path", 3))
    rep = validate_rooted_forest(g, np.array([0, 0, 0]))
    assert ("edge", 2) in [(rule, item) for rule, item, _ in rep.violations]


def test_two_roots_in_one_component():
    g = build_csr(generate("path", 3))
    rep = validate_rooted_forest(g, np.array([0, 1, 1]))
    assert any(rule == "component" for rule, _, _ in rep.violations)


def test_declared_root_must_self_point():
    g = build_csr(generate("path", 3))
    rep = validate_rooted_forest(g, np.array([0, 0, 1]), roots=[0, 2])
    assert any(rule == "root" and item == 2 for rule, item, _ in rep.violations)


def test_length_mismatch():
    with pytest.raises(ValueError):
        validate_rooted_forest(build_csr(generate("path", 3)), np.array([0, 0]))


def test_oracle_cc_examples():
    assert oracle_cc(build_csr(generate("path", 4))).tolist() == [0, 0, 0, 0]
    assert oracle_cc(build_csr(two_triangles())).tolist() == [0, 0, 0, 3, 3, 3]


def bfs_labels(g):
    labels = np.full(g.n, -1)
    for s in range(g.n):
        if labels[s] < 0:
            labels[oracle_bfs(g, s) >= 0] = s
    return labels


def test_oracle_cc_agrees_with_repeated_bfs():
    g = build_csr(generate("random", 100, 0.01, 3))
    assert np.array_equal(oracle_cc(g), bfs_labels(g))


def test_oracle_root_examples():
    assert oracle_root([(0, 1), (0, 2)], 0).tolist() == [0, 0, 0]
    assert oracle_root([(0, 1), (1, 2), (2, 3)], 3).tolist() == [1, 2, 3, 3]
    assert oracle_root([(0, 1), (0, 2), (0, 3)], 1).tolist() == [1, 1, 0, 0]


def test_oracle_root_errors():
    with pytest.raises(ValueError):
        oracle_root([(0, 1), (1, 2), (0, 2)], 0, 4)
    with pytest.raises(ValueError):
        oracle_root([(0, 1), (2, 3), (1, 0)], 0, 4)


@pytest.mark.parametrize("algo", sorted(ALGORITHMS))
@pytest.mark.parametrize("seed", range(4))
def test_soundness_rerooting_keeps_partition(algo, seed):
    g = build_csr(generate("random", 150, 0.015, seed))
    f, _ = ALGORITHMS[algo](g, 0)
    rep = validate_rooted_forest(g, f)
    assert rep.ok
    labels = oracle_cc(g)
    for r in f.roots:
        members = np.flatnonzero(labels == labels[r])
        kids = members[f.parent[members] != members]
        edges = np.stack([kids, f.parent[kids]], axis=1)
        # relabel to 0..k-1 and re-root with the oracle
        index = {int(v): i for i, v in enumerate(members)}
        local = [(index[int(a)], index[int(b)]) for a, b in edges]
        rerooted = oracle_root(local, index[int(r)], len(members))
        assert np.array_equal(members[rerooted], f.parent[members])


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 60), st.integers(0, 10**6), st.data())
def test_mutation_detected(n, seed, data):
    edges = random_tree_edges(n, seed)
    g = build_csr(normalize_edges(edges, n))
    parent = oracle_root(edges, 0, n)
    assert validate_rooted_forest(g, parent).ok
    v = data.draw(st.integers(0, n - 1))
    choices = [w for w in range(n) if w != parent[v]]
    parent = parent.copy()
    parent[v] = data.draw(st.sampled_from(choices))
    assert not validate_rooted_forest(g, parent).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 35).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=70)
    .map(lambda p: normalize_edges(p, n))))
def test_all_algorithms_valid_on_arbitrary_graphs(el):
    g = build_csr(el)
    for fn in ALGORITHMS.values():
        f, rep = fn(g, 0)
        assert validate_rooted_forest(g, f).ok
        assert len(f.tree_edges()) == g.n - len(set(oracle_cc(g).tolist()))
        assert rep.steps >= 1
