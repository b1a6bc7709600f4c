import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdivlab import (
    bipartition,
    build_graph,
    incidence_matrix,
    iterate_subdivide,
    iterate_subdivide_with_map,
    predicted_size,
    q_subdivide,
)
from subdivlab.corpus import complete, cycle, path, petersen, star
from subdivlab.errors import (
    DisconnectedError,
    DuplicateEdgeError,
    GraphError,
    IndexOutOfRangeError,
    SelfLoopError,
    SizeLimitError,
)

from strategies import connected_graphs


def test_edges_are_canonical_and_sorted():
    g = build_graph(4, [(3, 2), (1, 0), (2, 0), (1, 3)])
    assert g.edges == ((0, 1), (0, 2), (1, 3), (2, 3))
    assert g.m == 4
    assert g.neighbors == ((1, 2), (0, 3), (0, 3), (1, 2))
    assert g.degrees.tolist() == [2, 2, 2, 2]


def test_graph_arrays_are_read_only():
    g = complete(3)
    with pytest.raises(ValueError):
        g.degrees[0] = 5


@pytest.mark.parametrize(
    "n,edges,exc",
    [
        (3, [(0, 1), (1, 1)], SelfLoopError),
        (3, [(0, 1), (1, 0), (1, 2)], DuplicateEdgeError),
        (4, [(0, 1), (2, 3)], DisconnectedError),
        (3, [(0, 1), (1, 3)], IndexOutOfRangeError),
        (1, [], GraphError),
    ],
)
def test_build_graph_rejects_bad_input(n, edges, exc):
    with pytest.raises(exc):
        build_graph(n, edges)


def test_out_of_range_is_also_an_index_error():
    with pytest.raises(IndexError):
        build_graph(2, [(0, 2)])


@pytest.mark.parametrize(
    "g,bip",
    [(path(3), True), (cycle(4), True), (star(4), True), (complete(3), False), (cycle(5), False), (petersen(), False)],
)
def test_bipartition(g, bip):
    b = bipartition(g)
    assert b.is_bipartite is bip
    if bip:
        assert all(b.color[u] != b.color[v] for u, v in g.edges)


@pytest.mark.parametrize("g", [path(3), cycle(4), complete(3), complete(4), cycle(5), petersen()])
def test_incidence_rank(g):
    B = incidence_matrix(g)
    assert B.shape == (g.n, g.m)
    assert np.all(B.sum(axis=0) == 2)
    expected = g.n - 1 if bipartition(g).is_bipartite else g.n
    assert np.linalg.matrix_rank(B) == expected


def test_q_subdivide_triangle_counts_and_labels():
    g = complete(3)
    h, smap = q_subdivide(g, 2)
    assert (h.n, h.m) == (9, 12)
    # new node n + (f - 1) m + j sits on edge j in copy f
    assert smap.node_index(2, 1) == 3 + 3 + 1
    p = smap.parent(7)
    assert (p.s, p.t, p.copy, p.edge_index) == (0, 2, 2, 1)
    assert h.neighbors[7] == (0, 2)
    assert smap.parent_array.shape == (6, 2)


def test_subdivision_map_errors():
    _, smap = q_subdivide(complete(3), 2)
    with pytest.raises(IndexOutOfRangeError):
        smap.parent(0)
    with pytest.raises(IndexOutOfRangeError):
        smap.node_index(3, 0)
    with pytest.raises(IndexOutOfRangeError):
        smap.node_index(1, 3)


def test_subdivision_map_to_dict():
    _, smap = q_subdivide(path(3), 1)
    d = smap.to_dict()
    assert d["old_count"] == 3 and d["new_count"] == 2
    assert d["parents"][1] == {"node": 4, "s": 1, "t": 2, "copy": 1, "edge_index": 1}


def test_q_must_be_positive():
    with pytest.raises(ValueError):
        q_subdivide(complete(3), 0)


def test_predicted_size_values():
    assert predicted_size(2, 1, 2, 5) == (684, 1024)
    assert predicted_size(2, 1, 2, 2) == (12, 16)
    assert predicted_size(3, 3, 2, 1) == (9, 12)
    assert predicted_size(5, 7, 3, 0) == (5, 7)


def test_iterate_subdivide_hierarchical_lattice():
    h = iterate_subdivide(build_graph(2, [(0, 1)]), 2, 2)
    assert (h.n, h.m) == (12, 16)
    h1 = iterate_subdivide(build_graph(2, [(0, 1)]), 2, 1)
    assert h1.edges == ((0, 2), (0, 3), (1, 2), (1, 3))  # the 4-cycle 0-2-1-3


def test_iterate_subdivide_size_cap():
    with pytest.raises(SizeLimitError):
        iterate_subdivide(complete(4), 3, 4, max_nodes=1000)
    with pytest.raises(ValueError):
        iterate_subdivide(complete(4), 2, -1)


def test_iterate_with_map_returns_last_step():
    g = complete(3)
    h, smap = iterate_subdivide_with_map(g, 2, 2)
    assert smap.old_count == 9 and smap.total_count == h.n
    assert iterate_subdivide_with_map(g, 2, 0) == (g, None)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(), st.integers(1, 3))
def test_subdivision_laws(g, q):
    h, smap = q_subdivide(g, q)
    # passes validation again and is always bipartite
    assert build_graph(h.n, h.edges) == h
    assert bipartition(h).is_bipartite
    assert (h.n, h.m) == (g.n + g.m * q, 2 * g.m * q)
    # degree law
    assert np.array_equal(h.degrees[: g.n], q * g.degrees)
    assert np.all(h.degrees[g.n:] == 2)
    # labeling law
    for f in range(1, q + 1):
        for j, (s, t) in enumerate(g.edges):
            x = g.n + (f - 1) * g.m + j
            p = smap.parent(x)
            assert (p.copy, p.edge_index, p.s, p.t) == (f, j, s, t)
            assert h.neighbors[x] == (s, t)


@settings(max_examples=20, deadline=None)
@given(connected_graphs(max_nodes=5), st.integers(1, 2), st.integers(0, 2))
def test_iterate_equals_repeated_subdivision(g, q, k):
    h = g
    for _ in range(k):
        h, _ = q_subdivide(h, q)
    assert iterate_subdivide(g, q, k) == h
    assert (h.n, h.m) == predicted_size(g.n, g.m, q, k)
