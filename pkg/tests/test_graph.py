import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootspan.graph import (EdgeList, GraphFormatError, build_csr, check_graph, format_edge_list,
                            generate, load_edge_list, normalize_edges)


def test_load_simple():
    el = load_edge_list("0 1\n1 2\n")
    assert el.num_vertices == 3
    assert el.pairs() == [(0, 1), (1, 2)]


def test_load_drops_self_loops_and_duplicates():
    el = load_edge_list("# c\n0 0\n0 1\n1 0\n")
    assert el.num_vertices == 2
    assert el.pairs() == [(0, 1)]


def test_load_dense_remap():
    text = "3 7\n"
    el = load_edge_list(text)
    # oracle: sorted unique ids, index by position
    ids = sorted({3, 7})
    assert el.num_vertices == len(ids)
    assert el.pairs() == [(ids.index(3), ids.index(7))]
    assert el.id_map.tolist() == [3, 7]


def test_load_without_remap_keeps_ids():
    el = load_edge_list("3 7\n", remap=False)
    assert el.num_vertices == 8
    assert el.pairs() == [(3, 7)]


def test_load_percent_comments_and_mm_header():
    text = "%%MatrixMarket matrix coordinate pattern symmetric\n% note\n3 3 2\n1 2\n2 3\n"
    el = load_edge_list(text)
    assert el.num_vertices == 3
    assert el.pairs() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text,line", [("0 1\n1 x\n", 2), ("0 1 2\n", 1), ("5\n", 1)])
def test_load_malformed_reports_line(text, line):
    with pytest.raises(GraphFormatError, match=f"line {line}"):
        load_edge_list(text)


@pytest.mark.parametrize("text", ["", "# only comments\n\n"])
def test_load_empty_is_error(text):
    with pytest.raises(GraphFormatError):
        load_edge_list(io.StringIO(text))


def test_build_csr_path():
    g = build_csr(EdgeList(3, np.array([[0, 1], [1, 2]])))
    assert g.offsets.tolist() == [0, 1, 3, 4]
    assert g.neighbors.tolist() == [1, 0, 2, 1]
    assert g.edge_origin.tolist() == [0, 0, 1, 1]


def test_build_csr_empty():
    g = build_csr(EdgeList(1, np.empty((0, 2), dtype=np.int64)))
    assert g.offsets.tolist() == [0, 0]
    assert g.neighbors.tolist() == []


def test_build_csr_star():
    g = build_csr(EdgeList(3, np.array([[0, 1], [0, 2]])))
    assert g.offsets.tolist() == [0, 2, 3, 4]
    assert g.neighbors.tolist() == [1, 2, 0, 0]


def test_generators():
    assert generate("path", 4).pairs() == [(0, 1), (1, 2), (2, 3)]
    assert generate("star", 4).pairs() == [(0, 1), (0, 2), (0, 3)]
    assert generate("complete", 4).m == 6


def test_grid_2x2_matches_lattice_enumeration():
    rows, cols = 2, 2
    expected = set()
    for r in range(rows):
        for c in range(cols):
            for dr, dc in ((0, 1), (1, 0)):
                rr, cc = r + dr, c + dc
                if rr < rows and cc < cols:
                    expected.add((r * cols + c, rr * cols + cc))
    el = generate("grid", rows, cols)
    assert set(el.pairs()) == expected
    assert el.m == 4


@pytest.mark.parametrize("kind,params", [("path", (0,)), ("star", (-1,)), ("grid", (0, 3)),
                                         ("random", (0, 0.5)), ("complete", (0,))])
def test_generators_reject_nonpositive(kind, params):
    with pytest.raises(ValueError):
        generate(kind, *params)


def test_random_reproducible_and_seed_sensitive():
    a = generate("random", 300, 0.02, 11)
    b = generate("random", 300, 0.02, 11)
    c = generate("random", 300, 0.02, 12)
    assert a == b
    assert a != c


def test_random_edge_density():
    n, p = 400, 0.05
    el = generate("random", n, p, 3)
    total = n * (n - 1) / 2
    sd = np.sqrt(total * p * (1 - p))
    assert abs(el.m - total * p) < 5 * sd
    assert np.all(el.edges[:, 0] < el.edges[:, 1])


def test_random_extremes():
    assert generate("random", 10, 0.0, 1).m == 0
    assert generate("random", 10, 1.0, 1) == generate("complete", 10)


def test_graph_is_immutable():
    g = build_csr(generate("path", 5))
    with pytest.raises(ValueError):
        g.neighbors[0] = 3


edge_lists = st.integers(1, 40).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=120)
    .map(lambda pairs: normalize_edges(pairs, n)))


@settings(max_examples=150, deadline=None)
@given(edge_lists)
def test_csr_invariants_hold(el):
    g = build_csr(el)
    assert check_graph(g) == []
    for u in range(g.n):
        for w in g.neighbors_of(u):
            assert u in g.neighbors_of(w)


@settings(max_examples=100, deadline=None)
@given(edge_lists)
def test_round_trip(el):
    if el.m == 0:
        return
    # densify first: an edge list cannot express isolated vertices
    g = build_csr(load_edge_list(format_edge_list(el)))
    assert np.all(g.degree() > 0)
    again = build_csr(load_edge_list(format_edge_list(g)))
    assert again == g
