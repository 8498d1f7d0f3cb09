"""Structured instance generators: sizes, structure, and known invariants."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pottscolor.generators import (
    complete_graph,
    cycle_graph,
    edgeless_graph,
    myciel_graph,
    mycielski,
    path_graph,
    queens_graph,
    random_graph,
)


def test_complete_graph_sizes():
    for n in range(2, 8):
        g = complete_graph(n)
        assert g.edge_count == n * (n - 1) // 2
        assert (g.degrees == n - 1).all()


def test_cycle_and_path():
    c = cycle_graph(5)
    assert c.edge_count == 5 and (c.degrees == 2).all()
    p = path_graph(5)
    assert p.edge_count == 4
    assert sorted(p.degrees.tolist()) == [1, 1, 2, 2, 2]
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_edgeless():
    g = edgeless_graph(7)
    assert g.node_count == 7 and g.edge_count == 0


# published sizes of the queens benchmark family
QUEEN_SIZES = {
    (5, 5): 160,
    (6, 6): 290,
    (7, 7): 476,
    (8, 8): 728,
    (8, 12): 1368,
    (9, 9): 1056,
    (11, 11): 1980,
    (13, 13): 3328,
}


@pytest.mark.parametrize("shape,m", sorted(QUEEN_SIZES.items()))
def test_queens_edge_counts(shape, m):
    rows, cols = shape
    g = queens_graph(rows, cols)
    assert g.node_count == rows * cols
    assert g.edge_count == m


def test_queens_adjacency_semantics():
    g = queens_graph(4, 4)
    # node r*cols + c; row 0: nodes 0..3 pairwise adjacent
    assert g.has_edge(0, 3)
    # same column
    assert g.has_edge(1, 13)
    # diagonal
    assert g.has_edge(0, 5) and g.has_edge(3, 6)
    # knight-move squares do not attack
    assert not g.has_edge(0, 6)


def test_mycielski_step_properties():
    g = cycle_graph(5)
    h = mycielski(g)
    assert h.node_count == 2 * 5 + 1
    assert h.edge_count == 3 * 5 + 5  # original + two copies per edge + apex star
    # apex connects to every copy node and nothing else
    apex = 2 * 5
    assert h.neighbors(apex).tolist() == list(range(5, 10))
    # copy i is adjacent to the originals of i's neighborhood
    assert set(h.neighbors(5).tolist()) == {1, 4, apex}


# published sizes of the myciel benchmark family
@pytest.mark.parametrize(
    "k,n,m",
    [(1, 2, 1), (2, 5, 5), (3, 11, 20), (4, 23, 71), (5, 47, 236), (6, 95, 755)],
)
def test_myciel_sizes(k, n, m):
    g = myciel_graph(k)
    assert (g.node_count, g.edge_count) == (n, m)


def test_myciel_is_triangle_free():
    g = myciel_graph(4)
    adj = {i: set(g.neighbors(i).tolist()) for i in range(g.node_count)}
    for u, v in g.edges:
        assert not (adj[int(u)] & adj[int(v)])


def test_random_graph_determinism_and_bounds():
    a = random_graph(30, 0.3, seed=7)
    b = random_graph(30, 0.3, seed=7)
    c = random_graph(30, 0.3, seed=8)
    assert a == b
    assert a != c
    assert random_graph(30, 0.0, seed=1).edge_count == 0
    assert random_graph(10, 1.0, seed=1).edge_count == 45
    with pytest.raises(ValueError):
        random_graph(5, 1.5, seed=0)


@given(n=st.integers(1, 20), p=st.floats(0.0, 1.0), seed=st.integers(0, 10**6))
def test_random_graph_is_simple(n, p, seed):
    g = random_graph(n, p, seed)
    assert g.node_count == n
    if g.edge_count:
        assert (g.edges[:, 0] < g.edges[:, 1]).all()
        assert len(np.unique(g.edges, axis=0)) == g.edge_count
