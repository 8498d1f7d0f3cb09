"""Command-line client for the HTTP API.

Every data command talks to the service: by default an in-process app
instance (no socket), or a remote server via --server. Local graph and
config paths are read and shipped inline, so remote mode needs no shared
filesystem.

Exit status: 0 success; 1 infeasible outcome after the budget was spent;
2 input or usage errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

EXIT_INFEASIBLE = 1
EXIT_INPUT = 2


class ApiClient:
    """httpx against a remote server, or the app mounted in-process."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                # the in-process client is an implementation detail; its
                # import-time deprecation chatter is not the user's problem
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def get(self, path: str) -> dict:
        return self._check(self._client.get(path))

    def post(self, path: str, payload: dict) -> dict:
        return self._check(self._client.post(path, json=payload))

    @staticmethod
    def _check(response) -> dict:
        if response.status_code in (400, 422):
            body = response.json()
            detail = body.get("detail")
            if isinstance(detail, list):  # pydantic validation report
                detail = "; ".join(
                    f"{'.'.join(str(p) for p in item.get('loc', []))}: "
                    f"{item.get('msg')}" for item in detail
                )
            click.echo(f"error: {detail}", err=True)
            sys.exit(EXIT_INPUT)
        response.raise_for_status()
        return response.json()


def _graph_payload(spec: str) -> dict:
    p = Path(spec)
    if p.is_file():
        return {"dimacs": p.read_text()}
    return {"instance": spec}


def _config_fields(spec: str | None) -> dict:
    if spec is None:
        return {}
    p = Path(spec)
    if p.is_file():
        try:
            return {"config": json.loads(p.read_text())}
        except json.JSONDecodeError as exc:
            click.echo(f"error: config {p} is not valid JSON: {exc}", err=True)
            sys.exit(EXIT_INPUT)
    return {"preset": spec}


def _emit(data: dict) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Remote service URL; default runs the API in-process.")
@click.pass_context
def main(ctx, server):
    """Potts-model graph coloring toolkit."""
    ctx.obj = ApiClient(server)


@main.command()
@click.argument("graph")
@click.option("--config", "config_spec", default=None, metavar="PATH|PRESET",
              help="JSON config file or preset name.")
@click.option("--solver", default="PI_SAGE",
              type=click.Choice(["PI_GCN", "PI_SAGE", "TABUCOL", "GREEDY"]))
@click.option("--seeds", default=5, show_default=True,
              help="Best-of-k consecutive seeds.")
@click.option("--q", default=None, type=int, help="Color budget override.")
@click.option("--purify", is_flag=True,
              help="Repair a near-feasible result with extra colors.")
@click.option("--budget", default=None, type=float,
              help="Iterations (TABUCOL) or seconds (GNN solvers).")
@click.option("--out", default=None, type=click.Path(file_okay=False),
              help="Directory for the report and coloring files.")
@click.pass_obj
def color(client, graph, config_spec, solver, seeds, q, purify, budget, out):
    """Color GRAPH (instance name or DIMACS path) with one solver."""
    payload = {
        "graph": _graph_payload(graph),
        "solver": solver,
        "seeds": seeds,
        "purify": purify,
        **_config_fields(config_spec),
    }
    if q is not None:
        payload["q"] = q
    if budget is not None:
        payload["budget"] = budget
    body = client.post("/color", payload)
    report = body["report"]
    if out is not None:
        directory = Path(out)
        directory.mkdir(parents=True, exist_ok=True)
        stem = f"{report['graph_name']}-{solver}"
        (directory / f"{stem}.report.json").write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n"
        )
        (directory / f"{stem}.coloring.csv").write_text(body["coloring"])
    _emit(report)
    if report["cost"] > 0:
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.argument("graph")
@click.option("--config", "config_spec", default=None, metavar="PATH|PRESET")
@click.option("--strategy", default="SEQUENTIAL",
              type=click.Choice(["SEQUENTIAL", "BINARY"]))
@click.option("--q-max", default=32, show_default=True)
@click.option("--exact", is_flag=True,
              help="Exact enumeration oracle (small graphs only).")
@click.pass_obj
def chromatic(client, graph, config_spec, strategy, q_max, exact):
    """Search for the smallest feasible color count on GRAPH."""
    payload = {
        "graph": _graph_payload(graph),
        "strategy": strategy,
        "q_max": q_max,
        "exact": exact,
        **_config_fields(config_spec),
    }
    body = client.post("/chromatic", payload)
    _emit(body)
    if not body["found"]:
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.argument("requests_csv")
@click.option("--config", "config_spec", default=None, metavar="PATH|PRESET")
@click.option("--solver", default="TABUCOL",
              type=click.Choice(
                  ["PI_GCN", "PI_SAGE", "TABUCOL", "GREEDY", "SWEEP"]
              ))
@click.option("--seeds", default=5, show_default=True)
@click.option("--closed", is_flag=True,
              help="Treat touching endpoints as conflicting.")
@click.option("--out", default=None, type=click.Path(file_okay=False),
              help="Directory for assignment.csv and summary.json.")
@click.pass_obj
def schedule(client, requests_csv, config_spec, solver, seeds, closed, out):
    """Assign resources to the bookings in REQUESTS_CSV (path or bundled name)."""
    p = Path(requests_csv)
    source = {"csv": p.read_text()} if p.is_file() \
        else {"bundled": requests_csv}
    payload = {
        "solver": solver,
        "seeds": seeds,
        "closed": closed,
        **source,
        **_config_fields(config_spec),
    }
    body = client.post("/schedule", payload)
    if out is not None and body.get("assignment") is not None:
        directory = Path(out)
        directory.mkdir(parents=True, exist_ok=True)
        lines = ["id,resource"]
        lines.extend(f"{rid},{res}" for rid, res in body["assignment"].items())
        (directory / "assignment.csv").write_text("\n".join(lines) + "\n")
        (directory / "summary.json").write_text(
            json.dumps(body, indent=2, sort_keys=True) + "\n"
        )
    _emit(body)
    if not body["feasible"]:
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", default=None, type=click.Path(file_okay=False),
              help="Directory for bench.json, bench.csv, and colorings.")
@click.option("--workers", default=None, type=int,
              help="Worker pool size (default: executor's choice).")
@click.pass_obj
def bench(client, manifest, out, workers):
    """Run every row of a JSON MANIFEST and print the results table."""
    try:
        rows = json.loads(Path(manifest).read_text())
    except json.JSONDecodeError as exc:
        click.echo(f"error: manifest is not valid JSON: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    if isinstance(rows, dict):
        rows = rows.get("rows", rows)
    payload = {"rows": rows}
    if workers is not None:
        payload["max_workers"] = workers
    body = client.post("/bench", payload)

    from .bench import render_table, reports_csv, reports_json

    if out is not None:
        directory = Path(out)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "bench.json").write_text(reports_json(body))
        (directory / "bench.csv").write_text(reports_csv(body))
        for index, row in enumerate(body["rows"]):
            if "coloring" in row:
                name = f"{index:03d}-{row['graph_name']}-{row['solver']}.csv"
                (directory / name).write_text(row["coloring"])
    click.echo(render_table(body), nl=False)
    failures = [row for row in body["rows"] if "error" in row]
    for row in failures:
        click.echo(
            f"error in row for {row['graph_name']}: {row['error']}", err=True
        )
    if failures:
        sys.exit(EXIT_INPUT)


@main.group()
def oracle():
    """Exact enumeration oracles (small graphs)."""


@oracle.command("count")
@click.argument("graph")
@click.option("--q", required=True, type=int, help="Number of colors.")
@click.pass_obj
def oracle_count(client, graph, q):
    """Count proper q-colorings of GRAPH exactly."""
    body = client.post(
        "/oracle/count", {"graph": _graph_payload(graph), "q": q}
    )
    _emit(body)


@oracle.command("chromatic")
@click.argument("graph")
@click.pass_obj
def oracle_chromatic(client, graph):
    """Exact chromatic number of GRAPH by enumeration."""
    body = client.post("/oracle/chromatic", {"graph": _graph_payload(graph)})
    _emit(body)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("pottscolor.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
