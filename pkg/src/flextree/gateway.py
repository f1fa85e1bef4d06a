"""Local HTTP session service wrapping the typing engine.

The gateway owns the sessions: clients create one, post command
selections with their own timestamps, and render whatever layout comes
back. Dwell detection stays in the client, which is the side holding the
pointer; the engine remains deterministic and timer-free. One model per
supported order is loaded up front so conditions can be switched per
session without retraining.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .metrics import report_from_log
from .ppm import PredModel
from .session import (
    SessionState,
    TargetNotNormalizedError,
    apply_command,
    is_complete,
    last_five,
    new_session,
    write_transcript,
)

DEFAULT_DWELL_MS = 1500


class ApiError(Exception):
    """Maps to the wire error body {"error": code, "message": message}."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class CreateSessionBody(BaseModel):
    order: int = 0
    target: Optional[str] = None
    dwell_ms: Optional[int] = None


class CommandBody(BaseModel):
    command_id: int
    t_ms: Optional[int] = None


@dataclass
class _LiveSession:
    state: SessionState
    config: dict
    created_at: float
    lock: threading.Lock = field(default_factory=threading.Lock)


def _metrics_snapshot(state: SessionState) -> dict:
    if not state.events:
        return {
            "empty": True,
            "letters": 0,
            "commands": 0,
            "duration_s": 0.0,
            "speed_lpm": 0.0,
            "itr_com_bpm": 0.0,
            "itr_letter_bpm": 0.0,
            "deletion_s_per_letter": None,
        }
    snapshot = report_from_log(state.events).to_dict()
    snapshot["empty"] = False
    return snapshot


def _completion(state: SessionState) -> Optional[bool]:
    return None if state.target_text is None else is_complete(state)


def create_app(
    models: dict[int, PredModel],
    default_dwell_ms: int = DEFAULT_DWELL_MS,
    transcript_dir: Optional[Path] = None,
) -> FastAPI:
    """Build the gateway app over pre-trained models keyed by order."""
    app = FastAPI(title="flextree gateway")
    sessions: dict[str, _LiveSession] = {}

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status, content={"error": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"error": "validation_error", "message": str(exc)}
        )

    def _get(session_id: str) -> _LiveSession:
        live = sessions.get(session_id)
        if live is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return live

    def _view(session_id: str, live: _LiveSession) -> dict:
        state = live.state
        return {
            "session_id": session_id,
            "level": state.level,
            "layout": state.current_layout.to_wire(),
            "text_entered": state.text_entered,
            "last_five": last_five(state),
            "complete": _completion(state),
            "config": live.config,
        }

    @app.get("/healthz")
    def healthz() -> dict:
        return {
            "status": "ok",
            "orders": sorted(models),
            "default_dwell_ms": default_dwell_ms,
        }

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody) -> dict:
        model = models.get(body.order)
        if model is None:
            raise ApiError(
                400,
                "unknown_order",
                f"no model of order {body.order}; loaded orders: {sorted(models)}",
            )
        try:
            state = new_session(model, target=body.target)
        except TargetNotNormalizedError as exc:
            raise ApiError(400, "malformed_target", str(exc))
        session_id = uuid.uuid4().hex
        config = {
            "order": body.order,
            "dwell_ms": body.dwell_ms if body.dwell_ms is not None else default_dwell_ms,
            "target": body.target,
        }
        sessions[session_id] = _LiveSession(
            state=state, config=config, created_at=time.time()
        )
        live = sessions[session_id]
        return {"session_id": session_id, "layout": state.current_layout.to_wire(), "config": live.config}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        live = _get(session_id)
        with live.lock:
            return _view(session_id, live)

    @app.post("/sessions/{session_id}/command")
    def post_command(session_id: str, body: CommandBody) -> dict:
        live = _get(session_id)
        if not 1 <= body.command_id <= 10:
            raise ApiError(
                400, "bad_command_id", f"command_id must be 1..10, got {body.command_id}"
            )
        with live.lock:
            event = apply_command(live.state, body.command_id, t_ms=body.t_ms)
            state = live.state
            return {
                "event": event.to_wire(),
                "level": state.level,
                "layout": state.current_layout.to_wire(),
                "text_entered": state.text_entered,
                "last_five": last_five(state),
                "complete": _completion(state),
                "metrics_snapshot": _metrics_snapshot(state),
            }

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(session_id: str) -> dict:
        live = _get(session_id)
        with live.lock:
            return _metrics_snapshot(live.state)

    @app.delete("/sessions/{session_id}")
    def end_session(session_id: str) -> dict:
        live = _get(session_id)
        with live.lock:
            sessions.pop(session_id, None)
            transcript_file = None
            if transcript_dir is not None:
                transcript_dir.mkdir(parents=True, exist_ok=True)
                path = transcript_dir / f"{session_id}.jsonl"
                write_transcript(live.state, path)
                transcript_file = str(path)
            return {
                "session_id": session_id,
                "transcript": [e.to_wire() for e in live.state.events],
                "metrics": _metrics_snapshot(live.state),
                "text_entered": live.state.text_entered,
                "transcript_file": transcript_file,
            }

    return app
