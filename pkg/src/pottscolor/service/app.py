"""FastAPI application exposing solvers, oracles, and the bench harness.

Input problems surface as HTTP 400 with the error class in the body;
infeasible solver outcomes are ordinary 200 responses whose payload says
found=false or feasible=false. That split mirrors the CLI's exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..bench import (
    render_coloring,
    run_bench,
    run_chromatic,
    run_color,
    run_schedule,
    schedule_by_sweep,
)
from ..config import hyperparams_to_dict, list_presets, load_preset
from ..errors import InputError, SizeError
from ..graphs import Graph, parse_dimacs
from ..instances import list_instances, load_instance, schedule_resource
from ..potts import chromatic_number_exact, count_proper_colorings
from .schemas import (
    BenchRequest,
    ChromaticRequest,
    ColorRequest,
    ColorResponse,
    GraphPayload,
    HealthResponse,
    OracleChromaticRequest,
    OracleCountRequest,
    ScheduleRequest,
)


def _graph_from(payload: GraphPayload) -> tuple[Graph, str]:
    if payload.instance is not None:
        return load_instance(payload.instance), payload.instance
    return parse_dimacs(payload.dimacs), "inline"


def create_app() -> FastAPI:
    app = FastAPI(title="pottscolor", version=__version__)

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        return JSONResponse(
            status_code=400,
            content={"detail": str(exc), "kind": type(exc).__name__},
        )

    @app.exception_handler(SizeError)
    async def _size_error(request: Request, exc: SizeError):
        return JSONResponse(
            status_code=400,
            content={"detail": str(exc), "kind": type(exc).__name__},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(
            status="ok", service="pottscolor", version=__version__
        )

    @app.get("/presets")
    def presets() -> dict:
        return {
            "presets": {
                name: hyperparams_to_dict(load_preset(name))
                for name in list_presets()
            }
        }

    @app.get("/instances")
    def instances() -> dict:
        return {"instances": list_instances()}

    @app.post("/color", response_model=ColorResponse)
    def color(body: ColorRequest) -> ColorResponse:
        graph, name = _graph_from(body.graph)
        report, coloring = run_color(
            name,
            config_spec=body.config_spec(),
            solver=body.solver,
            seeds=body.seeds,
            q=body.q,
            apply_purify=body.purify,
            budget=body.budget,
            graph=graph,
        )
        return ColorResponse(
            report=report.to_dict(), coloring=render_coloring(coloring)
        )

    @app.post("/chromatic")
    def chromatic(body: ChromaticRequest) -> dict:
        graph, name = _graph_from(body.graph)
        return run_chromatic(
            name,
            config_spec=body.config_spec(),
            strategy=body.strategy,
            q_max=body.q_max,
            exact=body.exact,
            graph=graph,
        )

    @app.post("/schedule")
    def schedule(body: ScheduleRequest) -> dict:
        text = body.csv if body.csv is not None \
            else schedule_resource(body.bundled)
        if body.solver == "SWEEP":
            return schedule_by_sweep(text, closed=body.closed)
        return run_schedule(
            text,
            config_spec=body.config_spec(),
            solver=body.solver,
            seeds=body.seeds,
            closed=body.closed,
            budget=body.budget,
        )

    @app.post("/bench")
    def bench(body: BenchRequest) -> dict:
        return run_bench(body.rows, max_workers=body.max_workers)

    @app.post("/oracle/count")
    def oracle_count(body: OracleCountRequest) -> dict:
        graph, _ = _graph_from(body.graph)
        return {"q": body.q, "count": count_proper_colorings(graph, body.q)}

    @app.post("/oracle/chromatic")
    def oracle_chromatic(body: OracleChromaticRequest) -> dict:
        graph, _ = _graph_from(body.graph)
        return {"chi": chromatic_number_exact(graph)}

    return app


app = create_app()
