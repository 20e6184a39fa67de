"""JSON HTTP API over the session pipeline, plus static hosting of the UI."""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import (
    AllProvidersFailed,
    ConfigError,
    EmptyQuery,
    NotFound,
    SemrankError,
    StoreCorrupt,
    UnknownEngine,
)
from .session import SessionRunner, SessionStore, rerank_view

_STATUS_BY_ERROR: tuple[tuple[type[SemrankError], int], ...] = (
    (EmptyQuery, 400),
    (ConfigError, 400),
    (UnknownEngine, 400),
    (NotFound, 404),
    (AllProvidersFailed, 502),
    (StoreCorrupt, 500),
)


def _status_for(exc: SemrankError) -> int:
    for error_type, status in _STATUS_BY_ERROR:
        if isinstance(exc, error_type):
            return status
    return 500


def _envelope(code: str, message: str, status: int) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


class SearchRequest(BaseModel):
    query: str
    engines: list[str] | None = None
    top_n: int | None = None
    alpha: float | None = None
    beta: float | None = None
    query_weighting: str | None = None


def _runner_for_request(runner: SessionRunner, body: SearchRequest) -> SessionRunner:
    """Derive a per-request runner from the configured one."""
    out = runner
    if body.engines is not None:
        wanted = [name.strip().lower() for name in body.engines]
        configured = {p.engine.value: p for p in runner.providers}
        missing = [name for name in wanted if name not in configured]
        if missing:
            raise UnknownEngine(f"engines not configured: {', '.join(missing)}")
        out = replace(out, providers=tuple(configured[name] for name in wanted))
    if body.top_n is not None:
        try:
            out = replace(out, provider_config=replace(out.provider_config, top_n=body.top_n))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    weighting_overrides = {
        key: value
        for key, value in (
            ("alpha", body.alpha),
            ("beta", body.beta),
            ("query_weighting", body.query_weighting),
        )
        if value is not None
    }
    if weighting_overrides:
        try:
            out = replace(out, weighting=replace(out.weighting, **weighting_overrides))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return out


def create_app(
    runner: SessionRunner, store: SessionStore, ui_dir: str | Path | None = None
) -> FastAPI:
    """Wire the API routes around a configured runner and store."""
    app = FastAPI(title="semrank", docs_url=None, redoc_url=None, openapi_url=None)

    @app.exception_handler(SemrankError)
    async def on_semrank_error(request: Request, exc: SemrankError) -> JSONResponse:
        del request
        return _envelope(exc.code, str(exc), _status_for(exc))

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        del request
        return _envelope("invalid_request", str(exc.errors()[:1]), 400)

    @app.post("/api/search")
    def search(body: SearchRequest) -> JSONResponse:
        if not body.query.strip():
            raise EmptyQuery("query must not be empty")
        session = _runner_for_request(runner, body).run(body.query)
        return JSONResponse(session.to_dict())

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> JSONResponse:
        return JSONResponse(store.load(session_id).to_dict())

    @app.get("/api/sessions/{session_id}/view")
    def get_view(session_id: str, mode: str = "semantic", engine: str | None = None) -> JSONResponse:
        session = store.load(session_id)
        return JSONResponse(rerank_view(session, mode, engine))

    @app.get("/api/concepts")
    def concepts(query: str = "") -> JSONResponse:
        if not query.strip():
            raise EmptyQuery("query must not be empty")
        return JSONResponse(runner.concepts(query).to_dict())

    @app.get("/api/health")
    def health() -> dict:
        return {
            "status": "ok",
            "engines": [provider.engine.value for provider in runner.providers],
            "synsets": len(runner.db.synsets),
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
