"""HTTP facade over the tracking service."""

from __future__ import annotations

from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .core import TrackingService
from .geo import StaticGeoProvider
from .models import ValidationError
from .notify import OutboxNotifier
from .store import JournalStore


class TraceIn(BaseModel):
    number: str
    camera_id: str = "cam-0"


class WatchIn(BaseModel):
    vehicle: str
    email: str
    mobile: str
    details: str = ""


def create_app(
    journal_path: str = "tracking.journal",
    outbox_path: str = "alerts.outbox",
    geo_map_path: str | None = None,
    timezone_name: str = "UTC",
    auth_token: str | None = None,
    ui_dir: str | None = None,
    service: TrackingService | None = None,
) -> FastAPI:
    """Build the app; pass a preconfigured `service` to override the wiring."""
    if service is None:
        geo = StaticGeoProvider.from_file(geo_map_path) if geo_map_path else StaticGeoProvider()
        service = TrackingService(
            store=JournalStore(journal_path),
            geo=geo,
            notifier=OutboxNotifier(outbox_path),
            timezone_name=timezone_name,
        )

    app = FastAPI(title="platetrace tracking service")
    app.state.service = service

    def require_auth(request: Request) -> None:
        if auth_token is None:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {auth_token}":
            raise HTTPException(status_code=401, detail="missing or invalid bearer token")

    @app.exception_handler(ValidationError)
    async def on_validation_error(_request: Request, exc: ValidationError):
        return JSONResponse(
            status_code=400, content={"error": {"field": exc.field, "message": exc.message}}
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/traces", status_code=201, dependencies=[Depends(require_auth)])
    def ingest_trace(body: TraceIn):
        return service.ingest_trace(body.number, body.camera_id).to_dict()

    @app.get("/traces", dependencies=[Depends(require_auth)])
    def search_traces(number: str):
        return [t.to_dict() for t in service.search(number)]

    @app.post("/watches", status_code=201, dependencies=[Depends(require_auth)])
    def register_watch(body: WatchIn):
        entry = service.register_watch(body.vehicle, body.email, body.mobile, body.details)
        return entry.to_dict()

    @app.get("/watches", dependencies=[Depends(require_auth)])
    def list_watches():
        return [w.to_dict() for w in service.list_watches()]

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
