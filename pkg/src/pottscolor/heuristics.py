"""Classical coloring baselines and post-processing for relaxed solutions.

greedy_coloring gives the deterministic upper bound every other method is
measured against. tabucol is the local-search baseline: single-vertex
recolorings guided by a dynamic tabu list. purify repairs a near-feasible
coloring by spending extra colors; local_flip_refine polishes and
certifies 1-move local optimality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graphs import Graph
from .potts import Coloring

# standard dynamic-tenure settings; exposed because published results for
# this heuristic are notoriously sensitive to them
DEFAULT_TENURE_BASE = 7
DEFAULT_TENURE_RANDOM = 5
DEFAULT_TENURE_CONFLICT_SCALE = 0.6


def _try_interchange(g: Graph, sigma: np.ndarray, v: int, k: int) -> int:
    """Free an existing color for v by swapping a two-color subgraph.

    All k colors appear among v's colored neighbors. For a color pair
    (a, b), look at the subgraph induced by vertices colored a or b: its
    components are properly two-colored, so swapping a and b inside any
    component preserves properness everywhere. If no component contains
    both an a-neighbor and a b-neighbor of v, swapping the components
    that hold the a-neighbors leaves v with no a-colored neighbor, and a
    becomes available. Returns the freed color, or -1.
    """
    neigh_v = g.neighbors(v)
    colored = sigma[neigh_v] >= 0
    for a in range(k):
        a_neighbors = neigh_v[colored & (sigma[neigh_v] == a)]
        for b in range(a + 1, k):
            b_neighbors = neigh_v[colored & (sigma[neigh_v] == b)]
            # flood-fill components of the a/b subgraph from v's
            # a-neighbors; fail as soon as one reaches a b-neighbor
            b_set = set(int(x) for x in b_neighbors)
            visited = set()
            component_nodes = []
            ok = True
            for start in a_neighbors:
                start = int(start)
                if start in visited:
                    continue
                stack = [start]
                visited.add(start)
                while stack and ok:
                    u = stack.pop()
                    component_nodes.append(u)
                    if u in b_set:
                        ok = False
                        break
                    for w in g.neighbors(u):
                        w = int(w)
                        if w not in visited and sigma[w] in (a, b):
                            visited.add(w)
                            stack.append(w)
                if not ok:
                    break
            if ok:
                for u in component_nodes:
                    sigma[u] = b if sigma[u] == a else a
                return a
    return -1


def greedy_coloring(g: Graph, interchange: bool = True) -> tuple[Coloring, int]:
    """Largest-first greedy: always proper, chi_upper = colors used.

    Vertices are processed in non-increasing degree order, ties broken by
    ascending index; each gets the smallest color not present among its
    already-colored neighbors. With interchange (the default, and the
    variant behind the published upper-bound numbers), a vertex about to
    open a new color first tries to free an existing one by swapping a
    two-color component; plain mode skips that repair. Either way the
    result is proper and uses at most max_degree + 1 colors.
    """
    n = g.node_count
    if n == 0:
        return Coloring(np.zeros(0, dtype=np.int64), 1), 0
    order = np.lexsort((np.arange(n), -g.degrees))
    sigma = np.full(n, -1, dtype=np.int64)
    max_colors = int(g.degrees.max()) + 1 if g.edge_count else 1
    opened = 0
    for v in order:
        v = int(v)
        used = np.zeros(max_colors, dtype=bool)
        for u in g.neighbors(v):
            if sigma[u] >= 0:
                used[sigma[u]] = True
        color = int(np.argmin(used))  # first False = smallest free color
        if interchange and color == opened and opened >= 2:
            freed = _try_interchange(g, sigma, v, opened)
            if freed >= 0:
                color = freed
        sigma[v] = color
        opened = max(opened, color + 1)
    chi_upper = int(sigma.max()) + 1
    return Coloring(sigma, chi_upper), chi_upper


@dataclass(frozen=True)
class TabucolConfig:
    max_iterations: int = 100_000
    tenure_base: int = DEFAULT_TENURE_BASE
    tenure_random: int = DEFAULT_TENURE_RANDOM
    tenure_conflict_scale: float = DEFAULT_TENURE_CONFLICT_SCALE
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InputError("max_iterations must be at least 1")
        if self.tenure_base < 0 or self.tenure_random < 0:
            raise InputError("tenure terms must be non-negative")
        if self.tenure_conflict_scale < 0:
            raise InputError("tenure_conflict_scale must be non-negative")


def _conflict_table(g: Graph, sigma: np.ndarray, q: int) -> np.ndarray:
    """table[v, c] = number of neighbors of v currently colored c."""
    table = np.zeros((g.node_count, q), dtype=np.int64)
    if g.edge_count:
        ii, jj = g.edges[:, 0], g.edges[:, 1]
        np.add.at(table, (ii, sigma[jj]), 1)
        np.add.at(table, (jj, sigma[ii]), 1)
    return table


def tabucol(g: Graph, q: int,
            cfg: TabucolConfig | None = None) -> tuple[Coloring, int, int]:
    """Tabu search over single-vertex recolorings; returns best found.

    Starts from a seeded random q-coloring. Each iteration recolors one
    conflicted vertex by the best available move; the reverse move
    (vertex, old color) is tabu for tenure_base + uniform(0..tenure_random)
    + tenure_conflict_scale * current_cost iterations, and a tabu move is
    still allowed when it would beat the best cost seen (aspiration).
    Stops at cost 0 or max_iterations. Deterministic under cfg.seed.
    """
    if q < 1:
        raise InputError("q must be at least 1")
    if cfg is None:
        cfg = TabucolConfig()
    rng = np.random.default_rng(cfg.seed)
    n = g.node_count
    sigma = rng.integers(0, q, size=n)
    if n == 0 or g.edge_count == 0:
        return Coloring(sigma, q), 0, 0
    table = _conflict_table(g, sigma, q)
    node_ix = np.arange(n)
    cost = int(table[node_ix, sigma].sum()) // 2
    best_sigma = sigma.copy()
    best_cost = cost
    tabu_until = np.zeros((n, q), dtype=np.int64)
    adjacency = g.adjacency
    it = 0
    while it < cfg.max_iterations and best_cost > 0:
        it += 1
        if q == 1:
            break  # no alternative color exists; cost is frozen
        conflicted = np.flatnonzero(table[node_ix, sigma] > 0)
        # delta[k, c] = cost change from recoloring conflicted[k] to c
        delta = table[conflicted] - table[conflicted, sigma[conflicted]][:, None]
        valid = np.ones_like(delta, dtype=bool)
        valid[np.arange(len(conflicted)), sigma[conflicted]] = False
        allowed = valid & (
            (tabu_until[conflicted] <= it) | (cost + delta < best_cost)
        )
        pool = np.where(allowed, delta, np.iinfo(np.int64).max)
        best_delta = pool.min()
        if best_delta == np.iinfo(np.int64).max:
            # everything tabu and nothing aspirates: fall back to the
            # best move regardless of tabu status
            pool = np.where(valid, delta, np.iinfo(np.int64).max)
            best_delta = pool.min()
        choices = np.flatnonzero(pool.ravel() == best_delta)
        pick = choices[rng.integers(len(choices))]
        v = int(conflicted[pick // q])
        new_color = int(pick % q)
        old_color = int(sigma[v])
        neigh = adjacency[v]
        table[neigh, old_color] -= 1
        table[neigh, new_color] += 1
        sigma[v] = new_color
        cost += int(best_delta)
        tenure = cfg.tenure_base + int(
            rng.integers(0, cfg.tenure_random + 1)
        ) + int(cfg.tenure_conflict_scale * cost)
        tabu_until[v, old_color] = it + tenure
        if cost < best_cost:
            best_cost = cost
            best_sigma = sigma.copy()
    return Coloring(best_sigma, q), best_cost, it


@dataclass(frozen=True)
class PurifyResult:
    coloring: Coloring
    colors_used: int
    rounds: int
    feasible: bool


def purify(g: Graph, c: Coloring, seed: int = 0,
           max_rounds: int = 64) -> PurifyResult:
    """Repair clashes by spending one fresh color per round.

    Each round shuffles the currently conflicted edges and walks them:
    an edge still monochromatic gets one endpoint (uniformly random
    among the eligible ones) recolored to the round's fresh color. A
    node with a neighbor already on the fresh color is ineligible, so
    the fresh class is independent by construction and a round never
    creates new clashes; an edge with no eligible endpoint waits for the
    next round. Stops at feasibility or max_rounds (then feasible is
    False). colors_used counts distinct colors actually present.
    """
    if len(c) != g.node_count:
        raise InputError(
            f"coloring has {len(c)} entries for a graph with {g.node_count} nodes"
        )
    if max_rounds < 0:
        raise InputError("max_rounds must be non-negative")
    rng = np.random.default_rng(seed)
    sigma = c.assignment.copy()
    capacity = c.num_colors
    rounds = 0

    def conflicted_edges():
        if g.edge_count == 0:
            return np.zeros((0, 2), dtype=np.int64)
        mask = sigma[g.edges[:, 0]] == sigma[g.edges[:, 1]]
        return g.edges[mask]

    clashes = conflicted_edges()
    while len(clashes) and rounds < max_rounds:
        fresh = capacity
        capacity += 1
        rounds += 1
        order = rng.permutation(len(clashes))
        blocked = np.zeros(g.node_count, dtype=bool)  # has a fresh neighbor
        for u, v in clashes[order]:
            u, v = int(u), int(v)
            if sigma[u] != sigma[v]:
                continue  # an earlier move already fixed this edge
            candidates = [x for x in (u, v) if not blocked[x]]
            if not candidates:
                continue  # would break fresh-class independence; defer
            if len(candidates) == 2:
                pick = u if rng.random() < 0.5 else v
            else:
                pick = candidates[0]
            sigma[pick] = fresh
            blocked[g.neighbors(pick)] = True
        clashes = conflicted_edges()
    result = Coloring(sigma, capacity)
    return PurifyResult(
        coloring=result,
        colors_used=result.distinct_colors(),
        rounds=rounds,
        feasible=len(clashes) == 0,
    )


def local_flip_refine(g: Graph, c: Coloring,
                      q: int | None = None) -> tuple[Coloring, int, bool]:
    """Single-vertex descent to a 1-move local optimum.

    Scans vertices in ascending order; a vertex is recolored to the first
    color (ascending) that strictly reduces its conflict count. Repeats
    full passes until none changes anything. Never increases the cost;
    the returned flag certifies that no single recoloring improves.
    """
    if q is None:
        q = c.num_colors
    if len(c) != g.node_count:
        raise InputError(
            f"coloring has {len(c)} entries for a graph with {g.node_count} nodes"
        )
    if c.assignment.size and c.assignment.max() >= q:
        raise InputError(f"coloring uses colors beyond q={q}")
    sigma = c.assignment.copy()
    n = g.node_count
    if n == 0 or g.edge_count == 0:
        return Coloring(sigma, q), 0, True
    table = _conflict_table(g, sigma, q)
    adjacency = g.adjacency
    changed = True
    while changed:
        changed = False
        for v in range(n):
            current = table[v, sigma[v]]
            if current == 0:
                continue
            better = np.flatnonzero(table[v] < current)
            if len(better) == 0:
                continue
            new_color = int(better[0])
            old_color = int(sigma[v])
            neigh = adjacency[v]
            table[neigh, old_color] -= 1
            table[neigh, new_color] += 1
            sigma[v] = new_color
            changed = True
    cost = int(table[np.arange(n), sigma].sum()) // 2
    return Coloring(sigma, q), cost, True
