"""HTTP API wrapping the experiment runner.

Endpoints
---------
``GET  /v1/health``          -- liveness and version.
``POST /v1/config/validate`` -- parse config text, return the resolved config.
``POST /v1/runs``            -- execute a command and return rows, CSV text,
                                summary, and rendered SVG plots.

The service is stateless: clients send config text and receive rendered
outputs; nothing is written server-side.  Config errors map to HTTP 422
with the offending line number in the payload.
"""

from __future__ import annotations

import dataclasses
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .errors import ConfigError, Error
from .runner import CSV_COLUMNS, parse_config, run_experiment

__all__ = ["app", "create_app", "RunRequest", "RunResponse"]


class HealthResponse(BaseModel):
    status: str
    service: str
    version: str


class ValidateRequest(BaseModel):
    config_text: str = ""
    command: Literal["run", "converge", "defect", "soliton"] = "run"


class ValidateResponse(BaseModel):
    valid: bool
    resolved: dict


class RunRequest(BaseModel):
    command: Literal["run", "converge", "defect", "soliton"] = "run"
    config_text: str = ""
    seed: Optional[int] = None
    include_svg: bool = True


class RunRowModel(BaseModel):
    run_id: str
    scheme: str
    m: Optional[int] = None
    omega: Optional[float] = None
    dt: Optional[float] = None
    dx: Optional[float] = None
    seed: Optional[int] = None
    path_id: Optional[int] = None
    l2_error: Optional[float] = None
    mean_error: Optional[float] = None
    mass_drift: Optional[float] = None
    defect: Optional[float] = None
    order_fit: Optional[float] = None


class RunResponse(BaseModel):
    command: str
    columns: list[str] = Field(default_factory=lambda: list(CSV_COLUMNS))
    rows: list[RunRowModel]
    csv_text: str
    summary: dict
    svgs: dict[str, str]
    warnings: list[str]


def _resolved_dict(config) -> dict:
    out = {}
    for f in dataclasses.fields(config):
        val = getattr(config, f.name)
        if callable(val):
            continue
        out[f.name] = getattr(val, "value", val)
    out["n_steps"] = list(out["n_steps"])
    return out


def create_app() -> FastAPI:
    app = FastAPI(
        title="splitnls",
        version=__version__,
        description="Operator-splitting integrators for (stochastic) "
                    "nonlinear Schrodinger equations: experiment service.",
    )

    @app.get("/v1/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", service="splitnls", version=__version__)

    @app.post("/v1/config/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest) -> ValidateResponse:
        try:
            config = parse_config(req.config_text, command=req.command)
        except ConfigError as exc:
            raise HTTPException(
                status_code=422,
                detail={"message": str(exc), "line": exc.line}) from None
        return ValidateResponse(valid=True, resolved=_resolved_dict(config))

    @app.post("/v1/runs", response_model=RunResponse)
    def runs(req: RunRequest) -> RunResponse:
        text = req.config_text
        if req.seed is not None:
            text = text + f"\nseed = {int(req.seed)}\n"
        try:
            config = parse_config(text, command=req.command)
            result = run_experiment(config, command=req.command)
        except ConfigError as exc:
            raise HTTPException(
                status_code=422,
                detail={"message": str(exc), "line": exc.line}) from None
        except Error as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        rows = [RunRowModel(**dataclasses.asdict(row)) for row in result.rows]
        return RunResponse(
            command=result.command,
            rows=rows,
            csv_text=result.csv_text,
            summary=_sanitize(result.summary),
            svgs=result.svgs if req.include_svg else {},
            warnings=result.warnings,
        )

    return app


def _sanitize(obj):
    """Make summary JSON-safe (NaN/inf are not valid JSON numbers)."""
    import math

    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


app = create_app()
