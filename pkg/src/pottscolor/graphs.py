"""Undirected simple graphs in adjacency form, plus DIMACS COL text I/O.

Node identifiers are dense 0-based integers; any external labels live in
side maps owned by callers. Graphs are immutable after construction and
safe to share across threads.
"""

from __future__ import annotations

import warnings

import numpy as np

from .errors import DomainError, InputError, ParseError


class Graph:
    """Immutable undirected simple graph.

    Neighbor lists are sorted ascending so that iteration order (and with
    it every seeded heuristic built on top) is deterministic.
    """

    __slots__ = ("_n", "_edges", "_adjacency", "_degrees", "_edge_set")

    def __init__(self, n: int, edges: np.ndarray):
        # Internal constructor: `edges` must already be canonical
        # (deduplicated, i < j, lexicographically sorted). Use build_graph().
        self._n = int(n)
        self._edges = edges
        self._edges.setflags(write=False)
        adjacency: list[list[int]] = [[] for _ in range(self._n)]
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        adj_arrays = []
        for nbrs in adjacency:
            a = np.array(sorted(nbrs), dtype=np.int64)
            a.setflags(write=False)
            adj_arrays.append(a)
        self._adjacency = tuple(adj_arrays)
        self._degrees = np.array([len(a) for a in adj_arrays], dtype=np.int64)
        self._degrees.setflags(write=False)
        self._edge_set = frozenset(map(tuple, edges.tolist()))

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> np.ndarray:
        """(m, 2) int array, each row (i, j) with i < j, sorted lexicographically."""
        return self._edges

    @property
    def adjacency(self) -> tuple[np.ndarray, ...]:
        """Per-node sorted neighbor arrays."""
        return self._adjacency

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def neighbors(self, v: int) -> np.ndarray:
        return self._adjacency[v]

    def has_edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return (i, j) in self._edge_set

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.edge_count})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edge_set == other._edge_set

    def __hash__(self) -> int:
        return hash((self._n, self._edge_set))


def build_graph(n: int, edge_list) -> Graph:
    """Build a canonical Graph from a (possibly messy) edge list.

    Self-loops are dropped; duplicate edges (including reversed pairs)
    collapse to one. Raises InputError for endpoints outside [0, n).
    """
    if n < 0:
        raise InputError(f"node count must be non-negative, got {n}")
    canonical = set()
    for i, j in edge_list:
        i, j = int(i), int(j)
        if not (0 <= i < n) or not (0 <= j < n):
            raise InputError(f"edge ({i}, {j}) out of range for {n} nodes")
        if i == j:
            continue
        canonical.add((i, j) if i < j else (j, i))
    edges = np.array(sorted(canonical), dtype=np.int64).reshape(len(canonical), 2)
    return Graph(n, edges)


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS COL format: `c` comments, one `p edge n m` line, then
    `e u v` lines with 1-based endpoints.

    Duplicate `e` lines are tolerated (COLOR files in the wild contain
    them); if the declared m disagrees with the deduplicated edge count,
    the actual count wins and a warning is emitted.
    """
    n = None
    declared_m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tokens) < 4:
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n = int(tokens[2])
                declared_m = int(tokens[3])
            except ValueError:
                raise ParseError(f"non-integer token in problem line {line!r}", lineno) from None
            if n < 0:
                raise ParseError(f"negative node count {n}", lineno)
        elif tokens[0] == "e":
            if n is None:
                raise ParseError("edge line before `p edge` line", lineno)
            if len(tokens) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise ParseError(f"non-integer vertex in edge line {line!r}", lineno) from None
            if not (1 <= u <= n) or not (1 <= v <= n):
                raise ParseError(f"vertex out of range in edge ({u}, {v}) with n={n}", lineno)
            edges.append((u - 1, v - 1))
        # other record types (n, x, ...) are ignored
    if n is None:
        raise ParseError("missing `p edge` line", None)
    g = build_graph(n, edges)
    if declared_m is not None and declared_m != g.edge_count:
        warnings.warn(
            f"DIMACS header declares {declared_m} edges, found {g.edge_count} after dedup",
            stacklevel=2,
        )
    return g


def render_dimacs(g: Graph, comment: str | None = None) -> str:
    """Canonical DIMACS writer: `p edge n m`, then `e u v` lines sorted
    lexicographically, 1-based."""
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"c {c}")
    lines.append(f"p edge {g.node_count} {g.edge_count}")
    for i, j in g.edges:
        lines.append(f"e {i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def complement(g: Graph) -> Graph:
    """Graph on the same nodes whose edges are exactly the non-edges of g."""
    n = g.node_count
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if not g.has_edge(i, j)
    ]
    return build_graph(n, edges)


def density(g: Graph) -> float:
    """|E| / (n(n-1)/2). Undefined for n < 2."""
    n = g.node_count
    if n < 2:
        raise DomainError(f"density undefined for n={n} (need n >= 2)")
    return g.edge_count / (n * (n - 1) / 2)
