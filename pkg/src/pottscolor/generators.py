"""Procedural graph families used for benchmarks and test oracles."""

from __future__ import annotations

import numpy as np

from .graphs import Graph, build_graph


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def edgeless_graph(n: int) -> Graph:
    return build_graph(n, [])


def queens_graph(rows: int, cols: int) -> Graph:
    """Queens graph on a rows x cols board.

    Square (r, c) is node r*cols + c (the row-major numbering used by the
    classic queenN-M benchmark files); two squares are adjacent iff queens
    placed on them attack each other (same row, column, or diagonal).
    """
    n = rows * cols
    edges = []
    for r1 in range(rows):
        for c1 in range(cols):
            u = r1 * cols + c1
            for r2 in range(rows):
                for c2 in range(cols):
                    v = r2 * cols + c2
                    if v <= u:
                        continue
                    if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                        edges.append((u, v))
    return build_graph(n, edges)


def mycielski(g: Graph) -> Graph:
    """Mycielski transformation: nodes 0..n-1 keep their identity, node
    n+i shadows node i, node 2n is the apex. Raises the chromatic number
    by one while keeping the graph triangle-free if it was.
    """
    n = g.node_count
    edges = [tuple(e) for e in g.edges]
    for i, j in g.edges:
        edges.append((i, n + j))
        edges.append((j, n + i))
    apex = 2 * n
    for i in range(n):
        edges.append((n + i, apex))
    return build_graph(2 * n + 1, edges)


def myciel_graph(k: int) -> Graph:
    """The benchmark myciel family: myciel1 = K2, myciel(k+1) = mycielski(myciel k).

    myciel2 is the 5-cycle, myciel3 the Groetzsch graph (11 nodes, 20
    edges), myciel5 has 47 nodes / 236 edges, myciel6 has 95 / 755.
    Each step raises the chromatic number by one (chi = k + 1) while
    keeping the graph triangle-free.
    """
    if k < 1:
        raise ValueError("myciel graphs start at k=1 (K2)")
    g = complete_graph(2)
    for _ in range(k - 1):
        g = mycielski(g)
    return g


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), deterministic under the seed."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return build_graph(n, edges)
