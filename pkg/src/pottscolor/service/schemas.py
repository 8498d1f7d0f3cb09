"""Request and response bodies for the HTTP API.

Graphs and configs travel inline (DIMACS text, JSON objects) or by the
name of a shipped resource, so a remote server needs no shared
filesystem with its clients.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

Solver = Literal["PI_GCN", "PI_SAGE", "TABUCOL", "GREEDY"]
ScheduleSolver = Literal["PI_GCN", "PI_SAGE", "TABUCOL", "GREEDY", "SWEEP"]
Strategy = Literal["SEQUENTIAL", "BINARY"]


class GraphPayload(BaseModel):
    """Exactly one of: a known instance name, or inline DIMACS text."""

    instance: str | None = None
    dimacs: str | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.instance is None) == (self.dimacs is None):
            raise ValueError("provide exactly one of instance or dimacs")
        return self


class ConfigMixin(BaseModel):
    """At most one of: a preset name, or an inline config object."""

    preset: str | None = None
    config: dict | None = None

    @model_validator(mode="after")
    def _at_most_one(self):
        if self.preset is not None and self.config is not None:
            raise ValueError("provide preset or config, not both")
        return self

    def config_spec(self):
        return self.preset if self.preset is not None else self.config


class ColorRequest(ConfigMixin):
    graph: GraphPayload
    solver: Solver = "PI_SAGE"
    seeds: int = Field(default=5, ge=1)
    q: int | None = Field(default=None, ge=1)
    purify: bool = False
    budget: float | None = Field(default=None, gt=0)


class ColorResponse(BaseModel):
    report: dict
    coloring: str


class ChromaticRequest(ConfigMixin):
    graph: GraphPayload
    strategy: Strategy = "SEQUENTIAL"
    q_max: int = Field(default=32, ge=1)
    exact: bool = False


class ScheduleRequest(ConfigMixin):
    csv: str | None = None
    bundled: str | None = None
    solver: ScheduleSolver = "TABUCOL"
    seeds: int = Field(default=5, ge=1)
    closed: bool = False
    budget: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.csv is None) == (self.bundled is None):
            raise ValueError("provide exactly one of csv or bundled")
        return self


class BenchRequest(BaseModel):
    rows: list[dict]
    max_workers: int | None = Field(default=None, ge=1)


class OracleCountRequest(BaseModel):
    graph: GraphPayload
    q: int = Field(ge=0)


class OracleChromaticRequest(BaseModel):
    graph: GraphPayload


class HealthResponse(BaseModel):
    status: str
    service: str
    version: str
