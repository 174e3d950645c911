"""Versioned on-disk store for recorded training runs.

Layout, one directory per run:

    <store>/<run_id>/meta.json        circuit, config, dataset, summary
    <store>/<run_id>/snapshots.json   per-epoch thetas, loss, accuracy
    <store>/<run_id>/traces/<e>.json  per-datapoint, per-step decompositions
    <store>/<run_id>/grids/<e>.json   the 225-cell feature grid

Every file is a JSON object carrying ``schema_version``.  Serialization is
canonical (sorted keys, floats at 17 significant digits) so that
serialize -> parse -> serialize is byte-identical and golden files are
stable across platforms.  Writes go to a temp directory that is renamed
into place, so readers never observe a partial run.

Basis-state labels are bitstrings with qubit 0 first ("100" means qubit 0
reads 1).  Raw amplitudes are stored alongside decompositions only for
runs of at most 4 qubits.
"""

from __future__ import annotations

import json
import math
import os
import shutil
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

import numpy as np

from . import analysis, circuit as circuit_mod, sim
from .analysis import FeatureGridCell, Marginal, StateDecomposition
from .circuit import CircuitGate, CircuitSpec, Step
from .train import LabeledDataset, LabeledPoint, TrainConfig, TrainingSnapshot

SCHEMA_VERSION = 1
AMPLITUDE_QUBIT_LIMIT = 4

PROBABILITY_SUM_TOL = 1e-9


class RunNotFoundError(LookupError):
    """Requested run_id (or epoch/datapoint inside it) is not in the store."""


class StoreSchemaError(ValueError):
    """A store file is missing, malformed, or violates an invariant."""


# ---------------------------------------------------------------------------
# Canonical JSON


def canonical_json(value) -> str:
    """Serialize to canonical JSON: sorted keys, 17-significant-digit floats.

    Floats keep a decimal point (or exponent) so they parse back as floats;
    17 digits make the round trip exact.  NaN/Inf are rejected.
    """
    out: list[str] = []
    _emit(value, out)
    out.append("\n")
    return "".join(out)


def _emit(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(_format_float(float(value)))
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _emit(value[key], out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} canonically")


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float {x!r} cannot be stored")
    text = format(x, ".17g")
    if "." not in text and "e" not in text and "n" not in text:
        text += ".0"
    return text


def write_canonical(path: Path, payload) -> None:
    path.write_text(canonical_json(payload), encoding="utf-8")


# ---------------------------------------------------------------------------
# Records


@dataclass(frozen=True)
class StepTrace:
    """One captured circuit step: its decomposition and, for small
    registers, the raw amplitudes as (re, im) pairs."""

    decomposition: StateDecomposition
    amplitudes: tuple[tuple[float, float], ...] | None = None


@dataclass(frozen=True)
class RunSummary:
    run_id: str
    dataset_kind: str
    num_qubits: int
    epochs: int
    final_accuracy: float
    created_at: str


@dataclass(frozen=True)
class RunRecord:
    run_id: str
    created_at: str
    circuit: CircuitSpec
    dataset: LabeledDataset
    config: TrainConfig
    snapshots: tuple[TrainingSnapshot, ...]
    sampled_epochs: tuple[int, ...]
    traces: dict[int, dict[str, tuple[StepTrace, ...]]]
    grids: dict[int, tuple[FeatureGridCell, ...]]


def default_epoch_sample(total_epochs: int) -> list[int]:
    """Epochs to persist: all of them up to 100, then a ~100-point subsample
    that always includes the first and last epoch."""
    if total_epochs <= 100:
        return list(range(total_epochs + 1))
    step = math.ceil(total_epochs / 100)
    return sorted(set(range(0, total_epochs + 1, step)) | {total_epochs})


# ---------------------------------------------------------------------------
# Recording


def record_run(
    store_dir,
    spec: CircuitSpec,
    dataset: LabeledDataset,
    config: TrainConfig,
    snapshots: Sequence[TrainingSnapshot],
    sample_epochs: Sequence[int] | None = None,
) -> RunRecord:
    """Compute all derived payloads for a finished training run and persist
    them atomically; returns the in-memory record that was written."""
    snapshots = tuple(snapshots)
    if len(snapshots) != config.epochs + 1 or any(
        s.epoch != e for e, s in enumerate(snapshots)
    ):
        raise ValueError("snapshots must cover epochs 0..config.epochs contiguously")
    if sample_epochs is None:
        sampled = default_epoch_sample(config.epochs)
    else:
        sampled = sorted(set(int(e) for e in sample_epochs))
        if any(e < 0 or e > config.epochs for e in sampled):
            raise ValueError("sample_epochs outside the recorded epoch range")
        if not sampled:
            raise ValueError("sample_epochs must not be empty")

    keep_amps = spec.num_qubits <= AMPLITUDE_QUBIT_LIMIT
    features = [p.features for p in dataset.points]
    traces: dict[int, dict[str, tuple[StepTrace, ...]]] = {}
    grids: dict[int, tuple[FeatureGridCell, ...]] = {}
    for e in sampled:
        thetas = snapshots[e].thetas
        boundaries = circuit_mod.trace_batch(spec, features, thetas)
        per_point: dict[str, tuple[StepTrace, ...]] = {}
        for row, point in enumerate(dataset.points):
            states = [sim.StateVector(spec.num_qubits, arr[row]) for arr in boundaries]
            per_point[point.id] = tuple(
                StepTrace(
                    analysis.decompose(s),
                    tuple((float(a.real), float(a.imag)) for a in s.amps)
                    if keep_amps
                    else None,
                )
                for s in states
            )
        traces[e] = per_point
        grids[e] = analysis.feature_grid(spec, thetas)

    store = Path(store_dir)
    store.mkdir(parents=True, exist_ok=True)
    created = datetime.now(timezone.utc)
    run_id = _fresh_run_id(store, created, config.seed)
    record = RunRecord(
        run_id=run_id,
        created_at=created.isoformat(),
        circuit=spec,
        dataset=dataset,
        config=config,
        snapshots=snapshots,
        sampled_epochs=tuple(sampled),
        traces=traces,
        grids=grids,
    )
    _write_run(store, record)
    return record


def _fresh_run_id(store: Path, created: datetime, seed: int) -> str:
    base = created.strftime("%Y%m%dT%H%M%S.%f") + f"Z-s{seed}"
    run_id = base
    k = 0
    while (store / run_id).exists():
        k += 1
        run_id = f"{base}-{k}"
    return run_id


def _write_run(store: Path, record: RunRecord) -> None:
    tmp = store / f".tmp-{record.run_id}-{os.getpid()}"
    try:
        (tmp / "traces").mkdir(parents=True)
        (tmp / "grids").mkdir()
        write_canonical(tmp / "meta.json", meta_payload(record))
        write_canonical(tmp / "snapshots.json", snapshots_payload(record.snapshots))
        for e in record.sampled_epochs:
            write_canonical(tmp / "traces" / f"{e}.json", trace_payload(e, record.traces[e]))
            write_canonical(tmp / "grids" / f"{e}.json", grid_payload(e, record.grids[e]))
        os.replace(tmp, store / record.run_id)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise


# ---------------------------------------------------------------------------
# JSON payload builders


def meta_payload(record: RunRecord) -> dict:
    last = record.snapshots[-1]
    return {
        "schema_version": SCHEMA_VERSION,
        "run_id": record.run_id,
        "created_at": record.created_at,
        "circuit": circuit_to_json(record.circuit),
        "config": {
            "epochs": record.config.epochs,
            "learning_rate": record.config.learning_rate,
            "seed": record.config.seed,
            "optimizer": record.config.optimizer,
        },
        "dataset": {
            "kind": record.dataset.kind,
            "points": [
                {"id": p.id, "features": list(p.features), "label": p.label}
                for p in record.dataset.points
            ],
        },
        "sampled_epochs": list(record.sampled_epochs),
        "summary": {"final_loss": last.loss, "final_accuracy": last.accuracy},
    }


def circuit_to_json(spec: CircuitSpec) -> dict:
    steps = []
    for step in spec.steps:
        gates = []
        for g in step.gates:
            gate: dict = {"kind": g.kind, "qubits": list(g.qubits)}
            if g.angle is not None:
                gate["angle"] = g.angle
            if g.feature is not None:
                gate["feature"] = g.feature
            if g.param_slot is not None:
                gate["param_slot"] = g.param_slot
            gates.append(gate)
        steps.append({"kind": step.kind, "gates": gates})
    return {
        "num_qubits": spec.num_qubits,
        "feature_dim": spec.feature_dim,
        "ansatz_layers": spec.ansatz_layers,
        "measured_qubit": spec.measured_qubit,
        "steps": steps,
    }


def snapshots_payload(snapshots: Sequence[TrainingSnapshot]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "snapshots": [
            {
                "epoch": s.epoch,
                "loss": s.loss,
                "accuracy": s.accuracy,
                "thetas": list(s.thetas),
            }
            for s in snapshots
        ],
    }


def decomposition_to_json(dec: StateDecomposition) -> dict:
    return {
        "num_qubits": dec.num_qubits,
        "basis": [{"label": label, "probability": p} for label, p in dec.basis],
        "marginals": [
            {
                "qubit": m.qubit,
                "value": m.value,
                "total": m.total,
                "contributions": [
                    {"label": label, "probability": p} for label, p in m.contributions
                ],
            }
            for m in dec.marginals
        ],
    }


def step_trace_to_json(trace: StepTrace) -> dict:
    payload = decomposition_to_json(trace.decomposition)
    if trace.amplitudes is not None:
        payload["amplitudes"] = [[re, im] for re, im in trace.amplitudes]
    return payload


def trace_payload(epoch: int, per_point: dict[str, tuple[StepTrace, ...]]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "epoch": epoch,
        "states": {
            point_id: [step_trace_to_json(t) for t in steps]
            for point_id, steps in per_point.items()
        },
    }


def cell_to_json(cell: FeatureGridCell) -> dict:
    return {
        "i": cell.cell_indices[0],
        "j": cell.cell_indices[1],
        "center": list(cell.center),
        "expectation": cell.expectation,
        "predicted_class": cell.predicted_class,
        "p0": cell.p0,
        "p1": cell.p1,
        "basis_probabilities": [
            {"label": label, "probability": p} for label, p in cell.basis_probabilities
        ],
    }


def grid_payload(epoch: int, cells: Sequence[FeatureGridCell]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "epoch": epoch,
        "cells": [cell_to_json(c) for c in cells],
    }


# ---------------------------------------------------------------------------
# Loading


def list_runs(store_dir) -> list[RunSummary]:
    """Summaries of every stored run, oldest first."""
    store = Path(store_dir)
    if not store.is_dir():
        return []
    summaries = []
    for child in store.iterdir():
        if not child.is_dir() or child.name.startswith("."):
            continue
        meta_path = child / "meta.json"
        if not meta_path.is_file():
            continue
        meta = _read_json(meta_path)
        _check_schema_version(meta, meta_path)
        summaries.append(
            RunSummary(
                run_id=_req(meta, "run_id", meta_path),
                dataset_kind=_req(_req(meta, "dataset", meta_path), "kind", meta_path),
                num_qubits=_req(_req(meta, "circuit", meta_path), "num_qubits", meta_path),
                epochs=_req(_req(meta, "config", meta_path), "epochs", meta_path),
                final_accuracy=_req(_req(meta, "summary", meta_path), "final_accuracy", meta_path),
                created_at=_req(meta, "created_at", meta_path),
            )
        )
    summaries.sort(key=lambda s: (s.created_at, s.run_id))
    return summaries


def load_run(store_dir, run_id: str) -> RunRecord:
    """Load and validate one run; raises RunNotFoundError / StoreSchemaError."""
    run_dir = Path(store_dir) / run_id
    if not run_dir.is_dir():
        raise RunNotFoundError(f"run {run_id!r} not found in {store_dir}")

    meta_path = run_dir / "meta.json"
    meta = _read_json(meta_path)
    _check_schema_version(meta, meta_path)
    spec = circuit_from_json(_req(meta, "circuit", meta_path), meta_path)
    dataset = _dataset_from_json(_req(meta, "dataset", meta_path), meta_path)
    config_obj = _req(meta, "config", meta_path)
    config = TrainConfig(
        epochs=_req(config_obj, "epochs", meta_path),
        learning_rate=_req(config_obj, "learning_rate", meta_path),
        seed=_req(config_obj, "seed", meta_path),
        optimizer=_req(config_obj, "optimizer", meta_path),
    )
    sampled = tuple(int(e) for e in _req(meta, "sampled_epochs", meta_path))

    snap_path = run_dir / "snapshots.json"
    snap_obj = _read_json(snap_path)
    _check_schema_version(snap_obj, snap_path)
    snapshots = tuple(
        TrainingSnapshot(
            epoch=_req(s, "epoch", snap_path),
            thetas=tuple(float(t) for t in _req(s, "thetas", snap_path)),
            loss=float(_req(s, "loss", snap_path)),
            accuracy=float(_req(s, "accuracy", snap_path)),
        )
        for s in _req(snap_obj, "snapshots", snap_path)
    )
    known_epochs = {s.epoch for s in snapshots}
    if not set(sampled) <= known_epochs:
        raise StoreSchemaError(
            f"sampled_epochs references epochs missing from snapshots in {snap_path}"
        )

    point_ids = {p.id for p in dataset.points}
    traces: dict[int, dict[str, tuple[StepTrace, ...]]] = {}
    grids: dict[int, tuple[FeatureGridCell, ...]] = {}
    for e in sampled:
        trace_path = run_dir / "traces" / f"{e}.json"
        trace_obj = _read_json(trace_path)
        _check_schema_version(trace_obj, trace_path)
        states = _req(trace_obj, "states", trace_path)
        per_point = {}
        for point_id, steps in states.items():
            if point_id not in point_ids:
                raise StoreSchemaError(
                    f"states key {point_id!r} not in dataset ({trace_path})"
                )
            per_point[point_id] = tuple(
                _step_trace_from_json(s, trace_path) for s in steps
            )
        traces[e] = per_point

        grid_path = run_dir / "grids" / f"{e}.json"
        grid_obj = _read_json(grid_path)
        _check_schema_version(grid_obj, grid_path)
        grids[e] = tuple(
            _cell_from_json(c, grid_path) for c in _req(grid_obj, "cells", grid_path)
        )

    return RunRecord(
        run_id=_req(meta, "run_id", meta_path),
        created_at=_req(meta, "created_at", meta_path),
        circuit=spec,
        dataset=dataset,
        config=config,
        snapshots=snapshots,
        sampled_epochs=sampled,
        traces=traces,
        grids=grids,
    )


def circuit_from_json(obj: dict, path) -> CircuitSpec:
    steps = []
    for step_obj in _req(obj, "steps", path):
        gates = tuple(
            CircuitGate(
                kind=_req(g, "kind", path),
                qubits=tuple(int(q) for q in _req(g, "qubits", path)),
                angle=g.get("angle"),
                feature=g.get("feature"),
                param_slot=g.get("param_slot"),
            )
            for g in _req(step_obj, "gates", path)
        )
        steps.append(Step(_req(step_obj, "kind", path), gates))
    return CircuitSpec(
        num_qubits=_req(obj, "num_qubits", path),
        feature_dim=_req(obj, "feature_dim", path),
        ansatz_layers=_req(obj, "ansatz_layers", path),
        steps=tuple(steps),
        measured_qubit=_req(obj, "measured_qubit", path),
    )


def _dataset_from_json(obj: dict, path) -> LabeledDataset:
    points = tuple(
        LabeledPoint(
            id=_req(p, "id", path),
            features=tuple(float(x) for x in _req(p, "features", path)),
            label=_req(p, "label", path),
        )
        for p in _req(obj, "points", path)
    )
    return LabeledDataset(points, kind=_req(obj, "kind", path))


def _decomposition_from_json(obj: dict, path) -> StateDecomposition:
    basis = tuple(
        (_req(b, "label", path), float(_req(b, "probability", path)))
        for b in _req(obj, "basis", path)
    )
    total_p = sum(p for _, p in basis)
    if abs(total_p - 1.0) > PROBABILITY_SUM_TOL:
        raise StoreSchemaError(
            f"basis probabilities sum to {total_p!r}, not 1 ({path})"
        )
    marginals = []
    for m in _req(obj, "marginals", path):
        marginals.append(
            Marginal(
                qubit=_req(m, "qubit", path),
                value=_req(m, "value", path),
                total=float(_req(m, "total", path)),
                contributions=tuple(
                    (_req(c, "label", path), float(_req(c, "probability", path)))
                    for c in _req(m, "contributions", path)
                ),
            )
        )
    for qubit in range(_req(obj, "num_qubits", path)):
        pair = [m for m in marginals if m.qubit == qubit]
        if abs(sum(m.total for m in pair) - 1.0) > PROBABILITY_SUM_TOL:
            raise StoreSchemaError(
                f"marginals for qubit {qubit} do not sum to 1 ({path})"
            )
    return StateDecomposition(_req(obj, "num_qubits", path), basis, tuple(marginals))


def _step_trace_from_json(obj: dict, path) -> StepTrace:
    amps = obj.get("amplitudes")
    return StepTrace(
        decomposition=_decomposition_from_json(obj, path),
        amplitudes=tuple((float(re), float(im)) for re, im in amps)
        if amps is not None
        else None,
    )


def _cell_from_json(obj: dict, path) -> FeatureGridCell:
    p0 = float(_req(obj, "p0", path))
    p1 = float(_req(obj, "p1", path))
    if abs(p0 + p1 - 1.0) > PROBABILITY_SUM_TOL:
        raise StoreSchemaError(f"cell p0 + p1 != 1 ({path})")
    basis = tuple(
        (_req(b, "label", path), float(_req(b, "probability", path)))
        for b in _req(obj, "basis_probabilities", path)
    )
    if abs(sum(p for _, p in basis) - 1.0) > PROBABILITY_SUM_TOL:
        raise StoreSchemaError(f"cell basis probabilities do not sum to 1 ({path})")
    center = _req(obj, "center", path)
    return FeatureGridCell(
        cell_indices=(int(_req(obj, "i", path)), int(_req(obj, "j", path))),
        center=(float(center[0]), float(center[1])),
        expectation=float(_req(obj, "expectation", path)),
        predicted_class=_req(obj, "predicted_class", path),
        basis_probabilities=basis,
        p0=p0,
        p1=p1,
    )


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StoreSchemaError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StoreSchemaError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise StoreSchemaError(f"top-level JSON value in {path} must be an object")
    return obj


def _check_schema_version(obj: dict, path: Path) -> None:
    if "schema_version" not in obj:
        raise StoreSchemaError(f"missing field 'schema_version' in {path}")
    if obj["schema_version"] != SCHEMA_VERSION:
        raise StoreSchemaError(
            f"unsupported schema_version {obj['schema_version']!r} in {path}"
        )


def _req(obj, key: str, path):
    if not isinstance(obj, dict) or key not in obj:
        raise StoreSchemaError(f"missing field {key!r} in {path}")
    return obj[key]
