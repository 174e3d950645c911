"""Read-only HTTP/JSON service over a run store.

The whole store is loaded (and validated) once at startup; requests are
answered from that immutable snapshot, so repeated GETs are byte-identical
and nothing here ever writes.  Restart the process to pick up new runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import analysis, store


@dataclass(frozen=True)
class ApiError:
    http_status: int
    code: str  # not_found | bad_request | internal
    message: str


def _json(payload, status_code: int = 200) -> Response:
    return Response(
        content=store.canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status: int, code: str, message: str) -> Response:
    err = ApiError(status, code, message)
    return _json(
        {"http_status": err.http_status, "code": err.code, "message": err.message},
        status_code=status,
    )


class _LoadedStore:
    """Immutable in-memory view of a store directory."""

    def __init__(self, store_dir):
        self.summaries = store.list_runs(store_dir)
        self.runs: dict[str, store.RunRecord] = {}
        self.angles: dict[str, list[list[analysis.AngleDelta]]] = {}
        for summary in self.summaries:
            record = store.load_run(store_dir, summary.run_id)
            self.runs[summary.run_id] = record
            self.angles[summary.run_id] = analysis.angle_deltas(record.snapshots)


def create_app(store_dir) -> FastAPI:
    data = _LoadedStore(store_dir)
    app = FastAPI(title="qnnlens", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException) -> Response:
        code = "not_found" if exc.status_code == 404 else "bad_request"
        return _error(exc.status_code, code, str(exc.detail))

    @app.exception_handler(Exception)
    async def _internal_error(request: Request, exc: Exception) -> Response:
        return _error(500, "internal", f"{type(exc).__name__}: {exc}")

    def get_run(run_id: str) -> store.RunRecord | Response:
        record = data.runs.get(run_id)
        if record is None:
            return _error(404, "not_found", f"run {run_id!r} not found")
        return record

    def parse_epoch(epoch: str) -> int | Response:
        try:
            return int(epoch)
        except ValueError:
            return _error(400, "bad_request", f"epoch must be an integer, got {epoch!r}")

    @app.get("/api/runs")
    def runs() -> Response:
        return _json(
            [
                {
                    "run_id": s.run_id,
                    "dataset_kind": s.dataset_kind,
                    "num_qubits": s.num_qubits,
                    "epochs": s.epochs,
                    "final_accuracy": s.final_accuracy,
                    "created_at": s.created_at,
                }
                for s in data.summaries
            ]
        )

    @app.get("/api/runs/{run_id}")
    def run_detail(run_id: str) -> Response:
        record = get_run(run_id)
        if isinstance(record, Response):
            return record
        return _json(store.meta_payload(record))

    @app.get("/api/runs/{run_id}/metrics")
    def metrics(run_id: str) -> Response:
        record = get_run(run_id)
        if isinstance(record, Response):
            return record
        return _json(
            {
                "schema_version": store.SCHEMA_VERSION,
                "run_id": record.run_id,
                "epochs": [s.epoch for s in record.snapshots],
                "loss": [s.loss for s in record.snapshots],
                "accuracy": [s.accuracy for s in record.snapshots],
                "thetas": [list(s.thetas) for s in record.snapshots],
            }
        )

    @app.get("/api/runs/{run_id}/epochs/{epoch}/datapoints/{datapoint_id}/states")
    def states(run_id: str, epoch: str, datapoint_id: str) -> Response:
        record = get_run(run_id)
        if isinstance(record, Response):
            return record
        e = parse_epoch(epoch)
        if isinstance(e, Response):
            return e
        per_point = record.traces.get(e)
        if per_point is None:
            return _error(404, "not_found", f"epoch {e} not sampled for run {run_id!r}")
        steps = per_point.get(datapoint_id)
        if steps is None:
            return _error(404, "not_found", f"datapoint {datapoint_id!r} not in run {run_id!r}")
        return _json([store.step_trace_to_json(t) for t in steps])

    @app.get("/api/runs/{run_id}/epochs/{epoch}/grid")
    def grid(run_id: str, epoch: str) -> Response:
        record = get_run(run_id)
        if isinstance(record, Response):
            return record
        e = parse_epoch(epoch)
        if isinstance(e, Response):
            return e
        cells = record.grids.get(e)
        if cells is None:
            return _error(404, "not_found", f"epoch {e} not sampled for run {run_id!r}")
        return _json(store.grid_payload(e, cells))

    @app.get("/api/runs/{run_id}/epochs/{epoch}/angles")
    def angles(run_id: str, epoch: str) -> Response:
        record = get_run(run_id)
        if isinstance(record, Response):
            return record
        e = parse_epoch(epoch)
        if isinstance(e, Response):
            return e
        if not 0 <= e < len(data.angles[run_id]):
            return _error(404, "not_found", f"epoch {e} outside run {run_id!r}")
        return _json(
            [
                {
                    "param_slot": d.param_slot,
                    "epoch": d.epoch,
                    "delta": d.delta,
                    "magnitude": d.magnitude,
                }
                for d in data.angles[run_id][e]
            ]
        )

    return app
