"""Benchmark harness: solver runs, seed sweeps, and table-style reports.

One InstanceReport per (graph, solver) pair. The GNN solvers run
best-of-k over consecutive seeds; Tabucol takes its budget as an
iteration cap; greedy is deterministic. Every report's cost is
recomputed from the coloring it ships with, so a report can never drift
from its artifact. Report dicts are byte-stable for fixed inputs apart
from wall_time_seconds.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .config import resolve_config
from .errors import InputError, ParseError
from .gnn import (
    GCN_STYLE,
    SAGE_STYLE,
    SEQUENTIAL,
    Hyperparams,
    SearchExhausted,
    find_q_upper,
    train,
)
from .graphs import Graph, density
from .heuristics import TabucolConfig, greedy_coloring, purify, tabucol
from .instances import load_instance
from .potts import Coloring, chromatic_number_exact, hard_energy
from .scheduling import (
    decode_assignment,
    encode_interval_graph,
    max_concurrency,
    parse_requests,
    start_order_assignment,
    validate_assignment,
)

PI_GCN = "PI_GCN"
PI_SAGE = "PI_SAGE"
TABUCOL = "TABUCOL"
GREEDY = "GREEDY"
SOLVERS = (PI_GCN, PI_SAGE, TABUCOL, GREEDY)

_MODEL_KIND = {PI_GCN: GCN_STYLE, PI_SAGE: SAGE_STYLE}

DEFAULT_SEEDS = 5
DEFAULT_TABUCOL_ITERATIONS = 100_000

# stop reasons specific to this layer (train() supplies its own)
ZERO_COST = "ZERO_COST"
MAX_ITERATIONS = "MAX_ITERATIONS"
TIME_BUDGET = "TIME_BUDGET"

MANIFEST_ROW_KEYS = ("graph", "preset", "solver", "q", "seeds", "budget")


@dataclass(frozen=True)
class InstanceReport:
    graph_name: str
    n: int
    edge_count: int
    density: float
    q: int
    solver: str
    cost: int
    epsilon: float
    chi_upper: int | None
    seeds_tried: int
    wall_time_seconds: float
    stop_reason: str

    def to_dict(self) -> dict:
        return {
            "graph_name": self.graph_name,
            "n": self.n,
            "edge_count": self.edge_count,
            "density": self.density,
            "q": self.q,
            "solver": self.solver,
            "cost": self.cost,
            "epsilon": self.epsilon,
            "chi_upper": self.chi_upper,
            "seeds_tried": self.seeds_tried,
            "wall_time_seconds": self.wall_time_seconds,
            "stop_reason": self.stop_reason,
        }


def _epsilon(cost: int, edge_count: int) -> float:
    return cost / edge_count if edge_count else 0.0


def render_coloring(c: Coloring) -> str:
    """CSV text, `node,color`, both 1-based to match DIMACS numbering."""
    lines = ["node,color"]
    lines.extend(
        f"{node + 1},{int(color) + 1}" for node, color in enumerate(c.assignment)
    )
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> Coloring:
    """Inverse of render_coloring; num_colors is the largest color seen."""
    lines = [ln.strip() for ln in io.StringIO(text)]
    rows = [ln for ln in lines if ln]
    if not rows or rows[0].lower() != "node,color":
        raise ParseError("expected a node,color header", 1)
    seen: dict[int, int] = {}
    for number, row in enumerate(rows[1:], start=2):
        parts = row.split(",")
        if len(parts) != 2 or not parts[0].strip().isdigit() \
                or not parts[1].strip().isdigit():
            raise ParseError(f"malformed row {row!r}", number)
        node, color = int(parts[0]), int(parts[1])
        if node < 1 or color < 1:
            raise ParseError("node and color are 1-based", number)
        if node in seen:
            raise ParseError(f"duplicate node {node}", number)
        seen[node] = color - 1
    n = max(seen) if seen else 0
    if len(seen) != n:
        raise ParseError(f"nodes must cover 1..{n} with no gaps", 1)
    assignment = np.array([seen[i + 1] for i in range(n)], dtype=np.int64)
    num_colors = int(assignment.max()) + 1 if n else 1
    return Coloring(assignment, num_colors)


def _resolve_graph(spec, graph: Graph | None = None) -> tuple[Graph, str]:
    if graph is not None:
        return graph, str(spec)
    if isinstance(spec, Graph):
        return spec, "graph"
    name = Path(str(spec)).stem
    return load_instance(spec), name


def _train_solver(g: Graph, hp: Hyperparams, solver: str, q: int, seeds: int,
                  time_budget: float | None):
    started = time.perf_counter()
    hp = replace(hp, model_kind=_MODEL_KIND[solver], num_colors=q)
    best = None
    tried = 0
    halted = False
    for i in range(seeds):
        if time_budget is not None and i > 0 \
                and time.perf_counter() - started > time_budget:
            halted = True
            break
        result = train(g, replace(hp, seed=hp.seed + i))
        tried += 1
        if best is None or (result.best_energy, result.best_loss) < (
            best.best_energy, best.best_loss
        ):
            best = result
        if best.best_energy == 0.0:
            break
    stop_reason = TIME_BUDGET if halted and best.best_energy > 0 \
        else best.stop_reason
    return best.best_coloring, tried, stop_reason


def _tabucol_solver(g: Graph, q: int, seeds: int, iterations: int,
                    base_seed: int):
    best = None
    tried = 0
    for i in range(seeds):
        cfg = TabucolConfig(max_iterations=iterations, seed=base_seed + i)
        coloring, cost, _ = tabucol(g, q, cfg)
        tried += 1
        if best is None or cost < best[1]:
            best = (coloring, cost)
        if best[1] == 0:
            break
    stop_reason = ZERO_COST if best[1] == 0 else MAX_ITERATIONS
    return best[0], tried, stop_reason


def run_color(graph_spec, config_spec=None, solver: str = PI_SAGE,
              seeds: int = DEFAULT_SEEDS, q: int | None = None,
              apply_purify: bool = False, budget=None,
              graph: Graph | None = None) -> tuple[InstanceReport, Coloring]:
    """Solve one instance with one solver; best coloring over the seeds.

    budget means iterations for TABUCOL and a wall-clock second limit on
    starting further seeds for the GNN solvers; GREEDY ignores it.
    """
    if solver not in SOLVERS:
        raise InputError(f"unknown solver {solver!r}; one of {', '.join(SOLVERS)}")
    if seeds < 1:
        raise InputError("seeds must be at least 1")
    g, name = _resolve_graph(graph_spec, graph)
    started = time.perf_counter()

    if solver == GREEDY:
        coloring, chi = greedy_coloring(g)
        q_used = max(chi, 1)
        tried, stop_reason = 1, ZERO_COST
    elif solver == TABUCOL:
        hp = resolve_config(config_spec) if config_spec is not None else None
        q_used = q if q is not None else (hp.num_colors if hp else None)
        if q_used is None:
            raise InputError("TABUCOL needs q (directly or from a config)")
        iterations = int(budget) if budget is not None \
            else DEFAULT_TABUCOL_ITERATIONS
        base_seed = hp.seed if hp is not None else 0
        coloring, tried, stop_reason = _tabucol_solver(
            g, q_used, seeds, iterations, base_seed
        )
    else:
        if config_spec is None:
            raise InputError(f"{solver} needs a config or preset")
        hp = resolve_config(config_spec)
        q_used = q if q is not None else hp.num_colors
        time_budget = float(budget) if budget is not None else None
        coloring, tried, stop_reason = _train_solver(
            g, hp, solver, q_used, seeds, time_budget
        )

    if apply_purify and hard_energy(g, coloring) > 0:
        coloring = purify(g, coloring, seed=0).coloring

    cost = int(hard_energy(g, coloring))
    chi_upper = coloring.distinct_colors() if cost == 0 and g.node_count else None
    report = InstanceReport(
        graph_name=name,
        n=g.node_count,
        edge_count=g.edge_count,
        q=q_used,
        solver=solver,
        cost=cost,
        epsilon=_epsilon(cost, g.edge_count),
        chi_upper=chi_upper,
        density=density(g) if g.node_count >= 2 else 0.0,
        seeds_tried=tried,
        wall_time_seconds=time.perf_counter() - started,
        stop_reason=stop_reason,
    )
    return report, coloring


def run_chromatic(graph_spec, config_spec=None, strategy: str = SEQUENTIAL,
                  q_max: int = 32, exact: bool = False,
                  graph: Graph | None = None) -> dict:
    """Upper-bound search report; exact=True enumerates instead (small n).

    Never raises on an exhausted search: found=False plus the best cost
    seen is the caller's signal.
    """
    g, name = _resolve_graph(graph_spec, graph)
    started = time.perf_counter()
    report: dict = {
        "graph_name": name,
        "n": g.node_count,
        "edge_count": g.edge_count,
        "strategy": "ENUMERATION" if exact else strategy,
        "attempts": [],
        "found": False,
        "chi_upper": None,
        "exact": exact,
        "coloring": None,
        "best_cost": None,
    }
    if exact:
        chi = chromatic_number_exact(g)
        report.update(found=True, chi_upper=chi, best_cost=0)
    else:
        if config_spec is None:
            raise InputError("chromatic search needs a config or preset")
        hp = resolve_config(config_spec)
        attempts = report["attempts"]

        def observer(q, cost, feasible):
            attempts.append(
                {"q": q, "cost": int(cost), "feasible": bool(feasible)}
            )

        try:
            q_found, coloring = find_q_upper(
                g, hp, strategy=strategy, q_max=q_max, observer=observer
            )
            report.update(
                found=True,
                chi_upper=q_found,
                best_cost=0,
                coloring=coloring.assignment.tolist(),
            )
        except SearchExhausted as exc:
            report["best_cost"] = int(exc.energy) if exc.energy is not None \
                else None
    report["wall_time_seconds"] = time.perf_counter() - started
    return report


def run_schedule(csv_text: str, config_spec=None, solver: str = TABUCOL,
                 seeds: int = DEFAULT_SEEDS, closed: bool = False,
                 budget=None) -> dict:
    """Bookings CSV -> resource assignment, via interval-graph coloring.

    The color budget starts at the exact concurrency lower bound, so a
    zero-cost solve is optimal by construction; a solver that falls
    short is repaired with purify (extra resources) and the report says
    so. feasible=False only when even the repair failed.
    """
    requests = parse_requests(csv_text)
    enc = encode_interval_graph(requests, closed=closed)
    lower = max_concurrency(requests, closed=closed)
    out: dict = {
        "requests": len(requests),
        "lower_bound": lower,
        "solver": solver,
        "feasible": True,
        "purified": False,
    }
    if not requests:
        out.update(assignment={}, resources_used=0, cost=0)
        return out

    _, coloring = run_color(
        "schedule", config_spec=config_spec, solver=solver, seeds=seeds,
        q=lower, budget=budget, graph=enc.graph,
    )
    cost = int(hard_energy(enc.graph, coloring))
    if cost > 0:
        repaired = purify(enc.graph, coloring, seed=0)
        if repaired.feasible:
            coloring = repaired.coloring
            out["purified"] = True
            cost = 0
    if cost > 0:
        out.update(
            feasible=False, assignment=None, resources_used=None, cost=cost
        )
        return out
    assignment = decode_assignment(coloring, enc)
    if not validate_assignment(requests, assignment, closed=closed):
        raise InputError("decoded assignment failed validation")
    out.update(
        assignment=dict(sorted(assignment.mapping.items())),
        resources_used=assignment.resources_used,
        cost=0,
    )
    return out


def schedule_by_sweep(csv_text: str, closed: bool = False) -> dict:
    """Classical exact route: greedy in start order, no coloring solver."""
    requests = parse_requests(csv_text)
    assignment = start_order_assignment(requests, closed=closed)
    if requests and not validate_assignment(requests, assignment, closed=closed):
        raise InputError("sweep assignment failed validation")
    return {
        "requests": len(requests),
        "lower_bound": max_concurrency(requests, closed=closed),
        "solver": "SWEEP",
        "feasible": True,
        "purified": False,
        "assignment": dict(sorted(assignment.mapping.items())),
        "resources_used": assignment.resources_used,
        "cost": 0,
    }


def load_manifest(source) -> list[dict]:
    """Manifest rows: bare list or {"rows": [...]}; strict row keys."""
    if isinstance(source, (str, Path)):
        p = Path(source)
        if not p.is_file():
            raise InputError(f"manifest file not found: {p}")
        try:
            source = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"manifest {p} is not valid JSON: {exc}") from None
    if isinstance(source, dict):
        if set(source) != {"rows"}:
            raise InputError('manifest object must have exactly a "rows" key')
        source = source["rows"]
    if not isinstance(source, list):
        raise InputError("manifest must be a list of rows")
    rows = []
    for index, row in enumerate(source):
        if not isinstance(row, dict):
            raise InputError(f"manifest row {index} must be an object")
        unknown = sorted(set(row) - set(MANIFEST_ROW_KEYS))
        if unknown:
            raise InputError(
                f"manifest row {index}: unknown keys {', '.join(unknown)}"
            )
        if "graph" not in row:
            raise InputError(f"manifest row {index}: missing graph")
        rows.append(dict(row))
    return rows


def _bench_row(row: dict) -> tuple[dict, str]:
    report, coloring = run_color(
        row["graph"],
        config_spec=row.get("preset"),
        solver=row.get("solver", PI_SAGE),
        seeds=int(row.get("seeds", DEFAULT_SEEDS)),
        q=row.get("q"),
        budget=row.get("budget"),
    )
    return report.to_dict(), render_coloring(coloring)


def run_bench(source, max_workers: int | None = None,
              out_dir=None) -> dict:
    """All manifest rows through a worker pool; failures become row errors.

    Returns {"rows": [...]} in manifest order; each row dict is either an
    InstanceReport (plus its coloring text) or {"graph", "solver",
    "error"}. With out_dir set, colorings and the aggregate JSON/CSV are
    written there.
    """
    rows = load_manifest(source)
    results: list[dict] = [{} for _ in rows]
    if rows:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = {
                pool.submit(_bench_row, row): index
                for index, row in enumerate(rows)
            }
            for future, index in futures.items():
                row = rows[index]
                try:
                    report, coloring_text = future.result()
                    report["coloring"] = coloring_text
                    results[index] = report
                except Exception as exc:
                    results[index] = {
                        "graph_name": str(row.get("graph")),
                        "solver": row.get("solver", PI_SAGE),
                        "error": str(exc),
                    }
    table = {"rows": results}
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for index, row in enumerate(results):
            if "coloring" in row:
                name = f"{index:03d}-{row['graph_name']}-{row['solver']}.csv"
                (out / name).write_text(row["coloring"])
        (out / "bench.json").write_text(reports_json(table))
        (out / "bench.csv").write_text(reports_csv(table))
    return table


_CSV_COLUMNS = ("graph_name", "n", "edge_count", "density", "q", "solver",
                "cost", "epsilon", "chi_upper", "seeds_tried", "stop_reason")


def reports_json(table: dict) -> str:
    return json.dumps(table, indent=2, sort_keys=True) + "\n"


def reports_csv(table: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for row in table["rows"]:
        if "error" in row:
            cells = [row["graph_name"], "", "", "", "", row["solver"],
                     "", "", "", "", f"error: {row['error']}"]
            writer.writerow(cells)
            continue
        cells = []
        for key in _CSV_COLUMNS:
            value = row.get(key)
            if key == "density":
                cells.append(f"{value:.4f}")
            elif key == "epsilon":
                cells.append(f"{value:.4%}")
            elif value is None:
                cells.append("")
            else:
                cells.append(str(value))
        writer.writerow(cells)
    return buffer.getvalue()


def render_table(table: dict) -> str:
    """Fixed-width presentation of the CSV content. Not byte-stable."""
    grid = list(csv.reader(io.StringIO(reports_csv(table))))
    widths = [max(len(row[i]) for row in grid if i < len(row))
              for i in range(len(grid[0]))]
    lines = []
    for row in grid:
        lines.append("  ".join(
            cell.ljust(widths[i]) for i, cell in enumerate(row)
        ).rstrip())
    return "\n".join(lines) + "\n"
