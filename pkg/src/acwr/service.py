"""Stateless JSON-over-HTTP service backing the planner UI.

Every endpoint is pure over its request payload: series are posted inline,
responses carry method metadata, and Undefined ratios travel as an explicit
``defined: false`` marker with a null value - never NaN. Validation
failures return 422 with field-level diagnostics; computation errors map to
structured 400 bodies.
"""

from __future__ import annotations

from datetime import date

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator

from .audit import classify
from .config import (
    RunConfig,
    default_config,
    method_from_json,
    method_to_json,
    zones_to_json,
)
from .planner import PlanRequest, PlanStatus, max_safe_acute, project_schedule
from .ratios import RatioPoint, ratio_series
from .timeseries import Coupling, WorkloadSeries


class EntryPayload(BaseModel):
    date: date
    load: float = Field(ge=0)


class SeriesPayload(BaseModel):
    athlete_id: str = "athlete"
    entries: list[EntryPayload] = Field(min_length=1)

    def to_series(self) -> WorkloadSeries:
        return WorkloadSeries.from_entries(
            self.athlete_id, [(e.date, e.load) for e in self.entries]
        )


class RatioRequest(BaseModel):
    series: SeriesPayload
    method: dict = Field(default_factory=dict)


class PlanPayload(BaseModel):
    prior_weekly_totals: list[float] = Field(min_length=1)
    max_acceptable_ratio: float = Field(gt=0)
    coupling: str = "coupled"
    chronic_weeks: int = Field(default=4, ge=1)

    @field_validator("coupling")
    @classmethod
    def _known_coupling(cls, v: str) -> str:
        Coupling(v)
        return v


class ProjectRequest(BaseModel):
    history: SeriesPayload
    planned: SeriesPayload
    method: dict = Field(default_factory=dict)


def _point_doc(p: RatioPoint) -> dict:
    return {
        "date": p.at.isoformat(),
        "acute": p.acute,
        "chronic": p.chronic,
        "ratio": p.ratio,
        "defined": p.defined,
        "method": p.method.value,
        "converged": p.converged,
    }


def create_app(cfg: RunConfig | None = None) -> FastAPI:
    cfg = cfg or default_config()
    app = FastAPI(title="acwr planning service")

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": {"message": str(exc)}})

    @app.get("/api/defaults")
    def defaults() -> dict:
        return {
            "method": method_to_json(cfg.method),
            "zones": zones_to_json(cfg.zones),
            "clamp_bounds": list(cfg.clamp_bounds),
            "plan": {"max_acceptable_ratio": 1.3, "chronic_weeks": 4},
        }

    @app.post("/api/ratio")
    def ratio(req: RatioRequest) -> dict:
        method = method_from_json({**method_to_json(cfg.method), **req.method})
        series = req.series.to_series()
        points = ratio_series(series, method)
        return {
            "method": method_to_json(method),
            "points": [_point_doc(p) for p in points],
        }

    @app.post("/api/plan")
    def plan(req: PlanPayload) -> dict:
        result = max_safe_acute(
            PlanRequest(
                prior_weekly_totals=req.prior_weekly_totals,
                max_acceptable_ratio=req.max_acceptable_ratio,
                coupling=Coupling(req.coupling),
                chronic_weeks=req.chronic_weeks,
            )
        )
        return {
            "status": result.status.value,
            "unbounded": result.status is PlanStatus.UNBOUNDED,
            "max_acute_load": result.max_acute_load,
            "achieved_ratio_check": result.achieved_ratio_check,
            "note": result.note,
        }

    @app.post("/api/project")
    def project(req: ProjectRequest) -> dict:
        method = method_from_json({**method_to_json(cfg.method), **req.method})
        history = req.history.to_series()
        planned = req.planned.to_series()
        points = project_schedule(history, planned, method)
        return {
            "method": method_to_json(method),
            "points": [
                {**_point_doc(p), "zone": classify(p, cfg.zones)} for p in points
            ],
        }

    return app
