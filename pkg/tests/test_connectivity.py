import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootspan.connectivity import StateError, cc_spanning_forest, hook_step, jump, jump_to_convergence
from rootspan.engine import StepEngine
from rootspan.graph import EdgeList, build_csr, generate, normalize_edges
from rootspan.validate import oracle_cc

from conftest import two_triangles


def same_partition(a, b):
    a, b = np.asarray(a), np.asarray(b)
    pairs = set(zip(a.tolist(), b.tolist()))
    return len(pairs) == len(set(a.tolist())) == len(set(b.tolist()))


def union_find_accepts_all(n, pairs):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def test_hook_path_min_mode():
    g = build_csr(EdgeList(3, np.array([[0, 1], [1, 2]])))
    rep = np.arange(3)
    changed, winners = hook_step(g, rep, "min")
    assert changed
    assert rep.tolist() == [0, 0, 1]
    assert sorted(winners[winners >= 0].tolist()) == [0, 1]


def test_hook_no_cross_edge():
    g = build_csr(generate("path", 3))
    rep = np.zeros(3, dtype=np.int64)
    changed, winners = hook_step(g, rep, "min")
    assert not changed
    assert np.all(winners == -1)


def test_hook_star_lexicographic_winner():
    g = build_csr(generate("star", 3))
    rep = np.arange(3)
    _, winners = hook_step(g, rep, "min")
    assert rep.tolist() == [0, 0, 0]
    assert winners.tolist() == [-1, 0, 1]


def test_hook_contested_root_takes_lexicographic_min():
    # root 3 sees targets 1 (edge 1) and 0 (edge 0) and 0 again (edge 2)
    g = build_csr(EdgeList(4, np.array([[0, 3], [1, 3], [2, 3]])))
    rep = np.array([0, 1, 0, 3])  # 2 already under 0
    _, winners = hook_step(g, rep, "min")
    # candidates for root 3: (0, e0), (1, e1), (0, e2) -> (0, e0)
    assert winners[3] == 0
    assert rep[3] == 0


def test_hook_max_mode():
    g = build_csr(EdgeList(3, np.array([[0, 1], [1, 2]])))
    rep = np.arange(3)
    hook_step(g, rep, "max")
    assert rep.tolist() == [1, 2, 2]


def test_hook_rejects_uncompressed():
    g = build_csr(generate("path", 3))
    with pytest.raises(StateError):
        hook_step(g, np.array([0, 0, 1]), "min")


def test_jump_chain_of_three():
    rep = np.array([0, 0, 1, 2])
    eng = StepEngine()
    jump_to_convergence(rep, eng)
    assert rep.tolist() == [0, 0, 0, 0]
    assert eng.steps <= 2


def test_jump_already_compressed():
    rep = np.array([0, 0, 0])
    eng = StepEngine()
    jump_to_convergence(rep, eng)
    assert rep.tolist() == [0, 0, 0]
    assert eng.steps == 1


@pytest.mark.parametrize("length", [2, 5, 33, 1024])
def test_jump_halving_bound(length):
    rep = np.maximum(np.arange(length + 1) - 1, 0)
    eng = StepEngine()
    jump_to_convergence(rep, eng)
    assert np.all(rep == 0)
    assert eng.steps <= math.ceil(math.log2(length)) + 1


def test_jump_detects_cycle():
    with pytest.raises(StateError):
        jump_to_convergence(np.array([1, 2, 0]))
    with pytest.raises(StateError):
        jump_to_convergence(np.array([1, 0]))


def test_path5():
    sf, _ = cc_spanning_forest(build_csr(generate("path", 5)))
    assert sf.tree_edges.tolist() == [0, 1, 2, 3]
    assert sf.num_components == 1


def test_two_triangles():
    g = build_csr(two_triangles())
    sf, _ = cc_spanning_forest(g)
    assert len(sf.tree_edges) == 4
    assert sf.num_components == 2
    assert same_partition(sf.labels, oracle_cc(g))


def test_random_matches_union_find():
    g = build_csr(generate("random", 2000, 0.005, 1))
    sf, _ = cc_spanning_forest(g)
    labels = oracle_cc(g)
    assert same_partition(sf.labels, labels)
    assert len(sf.tree_edges) == g.n - len(set(labels.tolist()))
    assert union_find_accepts_all(g.n, sf.edges.tolist())


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 30).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=60)
    .map(lambda p: normalize_edges(p, n))))
def test_forest_properties(el):
    g = build_csr(el)
    sf, _ = cc_spanning_forest(g)
    labels = oracle_cc(g)
    assert same_partition(sf.labels, labels)
    assert len(sf.tree_edges) == g.n - len(set(labels.tolist()))
    assert union_find_accepts_all(g.n, sf.edges.tolist())


def test_logarithmic_steps_on_paths():
    per_k = {}
    for k in range(10, 15):
        _, rep = cc_spanning_forest(build_csr(generate("path", 2**k)))
        per_k[k] = rep.steps
    c = per_k[10] / 10
    for k, steps in per_k.items():
        assert steps <= c * k * 1.2


@pytest.mark.parametrize("workers", [1, 4])
def test_deterministic(workers):
    g = build_csr(generate("random", 800, 0.004, 5))
    a, ra = cc_spanning_forest(g)
    b, rb = cc_spanning_forest(g, workers=workers)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.tree_edges, b.tree_edges)
    assert ra.steps == rb.steps


def test_batched_jump_same_fixed_point():
    rng = np.random.default_rng(0)
    n = 500
    rep = np.array([0] + [int(rng.integers(0, i)) for i in range(1, n)])
    a, b = rep.copy(), rep.copy()
    jump(a, batch=1)
    jump(b, batch=5)
    assert np.array_equal(a, b)
