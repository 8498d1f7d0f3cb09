"""Potts-model energies over hard and relaxed color assignments.

Couplings come in two flavors: uniform (one signed strength J for every
edge, antiferromagnetic J = -1 by default, energy summed once per edge)
and weighted (a symmetric J_ij over node pairs, energy summed over
ordered pairs i != j, so each unordered pair counts twice and the
modularity couplings reproduce the standard Newman normalization).
That ordered-pair convention doubles weighted energies relative to a
per-edge sum; callers comparing the two flavors must account for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InputError, SizeError
from .graphs import Graph

ROW_SUM_TOL = 1e-9
ENUMERATION_BUDGET = 10**8


@dataclass(frozen=True)
class Coloring:
    """Hard assignment of one of num_colors colors per node.

    Colors are 0-based internally; rendering for humans is 1-based.
    """

    assignment: np.ndarray
    num_colors: int

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int64)
        a.setflags(write=False)
        object.__setattr__(self, "assignment", a)
        if a.ndim != 1:
            raise InputError("coloring assignment must be one-dimensional")
        if a.size and (a.min() < 0 or a.max() >= self.num_colors):
            raise InputError(
                f"color indices must lie in [0, {self.num_colors}), "
                f"got range [{a.min()}, {a.max()}]"
            )

    def __len__(self) -> int:
        return len(self.assignment)

    def distinct_colors(self) -> int:
        return len(np.unique(self.assignment)) if len(self.assignment) else 0


@dataclass(frozen=True)
class SoftAssignment:
    """Row-stochastic n x q matrix of per-node class probabilities."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2:
            raise InputError("soft assignment must be an n x q matrix")

    @property
    def node_count(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_colors(self) -> int:
        return self.matrix.shape[1]

    def validate(self) -> "SoftAssignment":
        m = self.matrix
        if m.size:
            if m.min() < -ROW_SUM_TOL or m.max() > 1 + ROW_SUM_TOL:
                raise InputError("soft assignment entries must lie in [0, 1]")
            row_err = np.abs(m.sum(axis=1) - 1.0).max()
            if row_err > ROW_SUM_TOL:
                raise InputError(
                    f"soft assignment rows must sum to 1 (max deviation {row_err:.3e})"
                )
        return self


def one_hot(c: Coloring) -> SoftAssignment:
    m = np.zeros((len(c), c.num_colors))
    if len(c):
        m[np.arange(len(c)), c.assignment] = 1.0
    return SoftAssignment(m)


@dataclass(frozen=True)
class UniformCouplings:
    """One strength J for every edge; J = -1 penalizes monochromatic edges."""

    strength: float = -1.0


@dataclass(frozen=True)
class WeightedCouplings:
    """Explicit symmetric couplings over node pairs, stored once per pair i < j."""

    pairs: np.ndarray  # (k, 2) int, each row i < j
    weights: np.ndarray  # (k,) float

    def __post_init__(self):
        p = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        w = np.asarray(self.weights, dtype=np.float64)
        if len(p) != len(w):
            raise InputError("pairs and weights must have equal length")
        if len(p) and not (p[:, 0] < p[:, 1]).all():
            raise InputError("coupling pairs must satisfy i < j")
        order = np.lexsort((p[:, 1], p[:, 0]))
        p, w = p[order], w[order]
        p.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "pairs", p)
        object.__setattr__(self, "weights", w)

    def _check(self, n: int):
        if len(self.pairs) and self.pairs.max() >= n:
            raise InputError(
                f"coupling pair index {self.pairs.max()} out of range for {n} nodes"
            )

    def dense(self, n: int) -> np.ndarray:
        self._check(n)
        j = np.zeros((n, n))
        ii, jj = self.pairs[:, 0], self.pairs[:, 1]
        j[ii, jj] = self.weights
        j[jj, ii] = self.weights
        return j


@dataclass(frozen=True)
class ModularityCouplings:
    """J_ij = (1/2m)(A_ij - d_i d_j / 2m), stored implicitly.

    The adjacency part lives on the graph's edge list; the rank-one degree
    part is kept in factored form, so energy evaluation costs
    O(|E| + n q) instead of O(n^2). The diagonal of the formula is
    excluded from energies (it never matters for color clashes) but is
    included by dense(), which materializes the raw formula values.
    """

    graph: Graph
    two_m: int = field(init=False)

    def __post_init__(self):
        if self.graph.edge_count == 0:
            raise DomainError("modularity couplings need at least one edge (2m > 0)")
        object.__setattr__(self, "two_m", 2 * self.graph.edge_count)

    def dense(self) -> np.ndarray:
        d = self.graph.degrees.astype(np.float64)
        a = np.zeros((self.graph.node_count,) * 2)
        if self.graph.edge_count:
            ii, jj = self.graph.edges[:, 0], self.graph.edges[:, 1]
            a[ii, jj] = 1.0
            a[jj, ii] = 1.0
        return (a - np.outer(d, d) / self.two_m) / self.two_m


Couplings = UniformCouplings | WeightedCouplings | ModularityCouplings


def modularity_couplings(g: Graph) -> ModularityCouplings:
    """Community-detection couplings of the generalized Potts Hamiltonian."""
    return ModularityCouplings(g)


def _pair_indicator_hard(pairs: np.ndarray, assignment: np.ndarray) -> np.ndarray:
    return (assignment[pairs[:, 0]] == assignment[pairs[:, 1]]).astype(np.float64)


def _pair_overlap_soft(pairs: np.ndarray, p: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", p[pairs[:, 0]], p[pairs[:, 1]])


def _modularity_energy(two_m: int, edge_term: float, class_deg_sq: float,
                       deg_sq: float) -> float:
    # H = -(1/2m) [ 2 * (edge term) - (sum_a D_a^2 - sum_i d_i^2) / 2m ]
    # over ordered pairs i != j; identical expression for hard and soft
    # paths so one-hot inputs reproduce hard energies bitwise.
    return -(2.0 * edge_term - (class_deg_sq - deg_sq) / two_m) / two_m


def hard_energy(g: Graph, c: Coloring, j: Couplings | None = None) -> float:
    """Potts energy of a hard coloring.

    Uniform J = -1 returns the number of monochromatic edges (the cost);
    weighted couplings are summed over ordered pairs i != j.
    """
    if j is None:
        j = UniformCouplings()
    if len(c) != g.node_count:
        raise InputError(
            f"coloring has {len(c)} entries for a graph with {g.node_count} nodes"
        )
    sigma = c.assignment
    if isinstance(j, UniformCouplings):
        if g.edge_count == 0:
            return 0.0
        clashes = float(np.count_nonzero(_pair_indicator_hard(g.edges, sigma)))
        return -j.strength * clashes
    if isinstance(j, WeightedCouplings):
        j._check(g.node_count)
        if len(j.pairs) == 0:
            return 0.0
        return -2.0 * float(np.dot(j.weights, _pair_indicator_hard(j.pairs, sigma)))
    if isinstance(j, ModularityCouplings):
        d = g.degrees.astype(np.float64)
        mono = float(np.count_nonzero(_pair_indicator_hard(g.edges, sigma)))
        class_deg = np.bincount(sigma, weights=d, minlength=c.num_colors)
        return _modularity_energy(
            j.two_m, mono, float(np.dot(class_deg, class_deg)), float(np.dot(d, d))
        )
    raise InputError(f"unknown couplings type {type(j).__name__}")


def soft_loss(g: Graph, p: SoftAssignment, j: Couplings | None = None) -> float:
    """Relaxed Potts loss over row-stochastic assignments.

    Reduces exactly to hard_energy when the matrix is one-hot.
    """
    if j is None:
        j = UniformCouplings()
    if p.node_count != g.node_count:
        raise InputError(
            f"soft assignment has {p.node_count} rows for {g.node_count} nodes"
        )
    p.validate()
    m = p.matrix
    if isinstance(j, UniformCouplings):
        if g.edge_count == 0:
            return 0.0
        return -j.strength * float(np.sum(_pair_overlap_soft(g.edges, m)))
    if isinstance(j, WeightedCouplings):
        j._check(g.node_count)
        if len(j.pairs) == 0:
            return 0.0
        return -2.0 * float(np.dot(j.weights, _pair_overlap_soft(j.pairs, m)))
    if isinstance(j, ModularityCouplings):
        d = g.degrees.astype(np.float64)
        edge_term = float(np.sum(_pair_overlap_soft(g.edges, m)))
        class_deg = d @ m
        deg_sq = float(np.dot(d * d, np.einsum("ij,ij->i", m, m)))
        return _modularity_energy(
            j.two_m, edge_term, float(np.dot(class_deg, class_deg)), deg_sq
        )
    raise InputError(f"unknown couplings type {type(j).__name__}")


def soft_loss_gradient(g: Graph, p: SoftAssignment,
                       j: Couplings | None = None) -> np.ndarray:
    """d(soft_loss)/dP, the n x q gradient before any softmax backward step.

    For uniform J = -1 this is the neighbor sum: entry (i, a) equals
    sum_{u in N(i)} P[u, a].
    """
    if j is None:
        j = UniformCouplings()
    if p.node_count != g.node_count:
        raise InputError(
            f"soft assignment has {p.node_count} rows for {g.node_count} nodes"
        )
    p.validate()
    m = p.matrix
    grad = np.zeros_like(m)
    if isinstance(j, UniformCouplings):
        if g.edge_count:
            ii, jj = g.edges[:, 0], g.edges[:, 1]
            np.add.at(grad, ii, m[jj])
            np.add.at(grad, jj, m[ii])
            grad *= -j.strength
        return grad
    if isinstance(j, WeightedCouplings):
        j._check(g.node_count)
        if len(j.pairs):
            ii, jj = j.pairs[:, 0], j.pairs[:, 1]
            np.add.at(grad, ii, -2.0 * j.weights[:, None] * m[jj])
            np.add.at(grad, jj, -2.0 * j.weights[:, None] * m[ii])
        return grad
    if isinstance(j, ModularityCouplings):
        d = g.degrees.astype(np.float64)
        if g.edge_count:
            ii, jj = g.edges[:, 0], g.edges[:, 1]
            np.add.at(grad, ii, m[jj])
            np.add.at(grad, jj, m[ii])
        rank_one = np.outer(d, d @ m) - (d * d)[:, None] * m
        return -(2.0 * grad - 2.0 * rank_one / j.two_m) / j.two_m
    raise InputError(f"unknown couplings type {type(j).__name__}")


def count_proper_colorings(g: Graph, q: int,
                           budget: int = ENUMERATION_BUDGET) -> int:
    """Exact count of proper q-colorings by exhaustive enumeration.

    This is the small-graph oracle: it refuses (rather than samples) when
    q**n exceeds the state budget. The count equals the chromatic
    polynomial evaluated at q.
    """
    if q < 0:
        raise InputError(f"color count must be non-negative, got {q}")
    n = g.node_count
    total = q**n  # python ints: 0**0 == 1, as wanted for the empty graph
    if total > budget:
        raise SizeError(
            f"enumeration of {q}**{n} = {total} states exceeds budget {budget}"
        )
    if n == 0:
        return 1
    if q == 0:
        return 0
    if g.edge_count == 0:
        return total
    edges = g.edges
    powers = q ** np.arange(n, dtype=np.int64)
    chunk = max(1, min(1 << 16, 10**7 // max(1, g.edge_count)))
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % q
        clash = digits[:, edges[:, 0]] == digits[:, edges[:, 1]]
        count += int(np.count_nonzero(~clash.any(axis=1)))
    return count


def chromatic_number_exact(g: Graph, budget: int = ENUMERATION_BUDGET) -> int:
    """Smallest q with a proper q-coloring, by sweeping the enumeration oracle.

    Returns 0 for the empty graph and 1 for edgeless graphs.
    """
    for q in range(g.node_count + 1):
        if count_proper_colorings(g, q, budget=budget) > 0:
            return q
    # unreachable for simple graphs: n colors always suffice
    raise AssertionError("no proper coloring found up to q = n")


def normalized_error(energy: float, edge_count: int) -> float:
    """epsilon = H / |E|; the coloring accuracy is 1 - epsilon."""
    if edge_count <= 0:
        raise DomainError("normalized error needs a positive edge count")
    if energy < 0:
        raise InputError(f"energy must be non-negative, got {energy}")
    return energy / edge_count
