"""Variational classifier circuits: feature encoder, trainable layers, steps.

A circuit is an ordered list of steps.  Each step is one visual column:
the feature-encoding rotations, one trainable rotation layer, or one block
of entangling cnot gates.  Execution can capture the state at every step
boundary so downstream consumers see the whole evolution of a datapoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import sim

ENCODING = "encoding"
ROTATION = "rotation"
ENTANGLING = "entangling"
STEP_KINDS = (ENCODING, ROTATION, ENTANGLING)


@dataclass(frozen=True)
class CircuitGate:
    """One gate slot inside a step.

    Exactly one of ``angle`` (fixed), ``feature`` (index into the
    datapoint) or ``param_slot`` (index into the trainable parameters) is
    set for rotation gates; h and cnot carry none of them.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    feature: int | None = None
    param_slot: int | None = None


@dataclass(frozen=True)
class Step:
    kind: str
    gates: tuple[CircuitGate, ...]


@dataclass(frozen=True)
class CircuitSpec:
    """Immutable circuit description.

    ``feature_dim`` counts encoded data dimensions (at most one encoding
    rotation per qubit), ``ansatz_layers`` the trainable rotation layers,
    and ``measured_qubit`` the qubit whose Z expectation is the output.
    """

    num_qubits: int
    feature_dim: int
    ansatz_layers: int
    steps: tuple[Step, ...]
    measured_qubit: int = 0

    @property
    def num_params(self) -> int:
        return self.ansatz_layers * self.num_qubits

    def param_slots(self) -> list[int]:
        """All parameter slots in circuit order."""
        return [
            g.param_slot
            for step in self.steps
            for g in step.gates
            if g.param_slot is not None
        ]


def build_default_circuit(num_qubits: int, feature_dim: int, layers: int) -> CircuitSpec:
    """Standard layout: ry feature encoder + alternating ry/cnot-ring layers.

    Layer L contributes parameter slots L*num_qubits + q for qubit q, so a
    3-qubit 4-layer circuit puts slot 9 on qubit 0 of the last layer.
    Entangling rings sit between consecutive rotation layers (none after
    the final layer, and none at all on a single qubit).
    """
    if not 1 <= num_qubits <= sim.MAX_QUBITS:
        raise ValueError(f"num_qubits must be in [1, {sim.MAX_QUBITS}], got {num_qubits}")
    if not 1 <= feature_dim <= num_qubits:
        raise ValueError(
            f"feature_dim must be in [1, num_qubits]={num_qubits}, got {feature_dim}"
        )
    if layers < 1:
        raise ValueError(f"layers must be >= 1, got {layers}")

    steps = [
        Step(
            ENCODING,
            tuple(CircuitGate("ry", (k,), feature=k) for k in range(feature_dim)),
        )
    ]
    for layer in range(layers):
        steps.append(
            Step(
                ROTATION,
                tuple(
                    CircuitGate("ry", (q,), param_slot=layer * num_qubits + q)
                    for q in range(num_qubits)
                ),
            )
        )
        if layer < layers - 1 and num_qubits > 1:
            ring = tuple(
                CircuitGate("cnot", (i, (i + 1) % num_qubits))
                for i in range(num_qubits)
            )
            steps.append(Step(ENTANGLING, ring))
    return CircuitSpec(num_qubits, feature_dim, layers, tuple(steps))


def encode(spec: CircuitSpec, datapoint: Sequence[float]) -> sim.StateVector:
    """State right after the encoding step, starting from the zero state.

    Qubits beyond ``feature_dim`` receive no gate, so any basis state
    assigning them 1 keeps probability exactly 0.
    """
    features = _check_features(spec, datapoint)
    state = sim.zero_state(spec.num_qubits)
    return sim.apply_gates(state, _bound_gates(spec.steps[0], features, None))


def run(spec: CircuitSpec, datapoint: Sequence[float], params: Sequence[float]) -> sim.StateVector:
    """Final state after encoder and ansatz."""
    features = _check_features(spec, datapoint)
    thetas = _check_params(spec, params)
    state = sim.zero_state(spec.num_qubits)
    for step in spec.steps:
        state = sim.apply_gates(state, _bound_gates(step, features, thetas))
    return state


def run_with_trace(
    spec: CircuitSpec, datapoint: Sequence[float], params: Sequence[float]
) -> list[sim.StateVector]:
    """States at every step boundary: initial, after each step, final.

    The returned list has len(steps) + 1 entries and its last entry is
    bit-identical to ``run`` on the same inputs (same operations, same
    order; capture adds no arithmetic).
    """
    features = _check_features(spec, datapoint)
    thetas = _check_params(spec, params)
    state = sim.zero_state(spec.num_qubits)
    captured = [state]
    for step in spec.steps:
        state = sim.apply_gates(state, _bound_gates(step, features, thetas))
        captured.append(state)
    return captured


def run_batch(
    spec: CircuitSpec, datapoints, params: Sequence[float]
) -> np.ndarray:
    """Final amplitudes for many datapoints at once, one row each.

    Row k is bit-identical to ``run(spec, datapoints[k], params).amps``;
    batching only amortizes numpy dispatch.
    """
    return trace_batch(spec, datapoints, params)[-1]


def trace_batch(
    spec: CircuitSpec, datapoints, params: Sequence[float]
) -> list[np.ndarray]:
    """Batched ``run_with_trace``: one (num_points, 2^N) array per boundary."""
    features = _check_feature_rows(spec, datapoints)
    thetas = _check_params(spec, params)
    amps = sim.batch_zero_state(features.shape[0], spec.num_qubits)
    captured = [amps]
    for step in spec.steps:
        for g in step.gates:
            if g.kind == "cnot":
                amps = sim.batch_apply(amps, spec.num_qubits, sim.cnot(*g.qubits))
            elif g.kind == "h":
                amps = sim.batch_apply(amps, spec.num_qubits, sim.h(g.qubits[0]))
            elif g.feature is not None:
                amps = sim.batch_apply(
                    amps,
                    spec.num_qubits,
                    sim.Gate(g.kind, g.qubits),
                    angles=features[:, g.feature],
                )
            else:
                bound = _bound_gates(Step(step.kind, (g,)), features[0], thetas)[0]
                amps = sim.batch_apply(amps, spec.num_qubits, bound)
        captured.append(amps)
    return captured


def _check_feature_rows(spec: CircuitSpec, datapoints) -> np.ndarray:
    features = np.asarray(datapoints, dtype=float)
    if features.ndim != 2 or features.shape[1] != spec.feature_dim:
        raise ValueError(
            f"datapoints must be (count, {spec.feature_dim}) shaped, got {features.shape}"
        )
    if features.shape[0] < 1:
        raise ValueError("datapoints must not be empty")
    if not np.isfinite(features).all() or np.any(np.abs(features) > 1.0):
        raise ValueError("features must lie in [-1, 1]")
    return features


def _check_features(spec: CircuitSpec, datapoint: Sequence[float]) -> np.ndarray:
    features = np.asarray(datapoint, dtype=float).reshape(-1)
    if features.size != spec.feature_dim:
        raise ValueError(
            f"datapoint has {features.size} features, circuit encodes {spec.feature_dim}"
        )
    if not np.isfinite(features).all() or np.any(np.abs(features) > 1.0):
        raise ValueError(f"features must lie in [-1, 1], got {features.tolist()}")
    return features


def _check_params(spec: CircuitSpec, params: Sequence[float]) -> np.ndarray:
    thetas = np.asarray(params, dtype=float).reshape(-1)
    if thetas.size != spec.num_params:
        raise ValueError(
            f"parameter vector has {thetas.size} entries, circuit needs {spec.num_params}"
        )
    if not np.isfinite(thetas).all():
        raise ValueError("parameters must be finite")
    return thetas


def _bound_gates(step: Step, features: np.ndarray, thetas: np.ndarray | None) -> list[sim.Gate]:
    bound = []
    for g in step.gates:
        if g.kind == "cnot":
            bound.append(sim.cnot(*g.qubits))
        elif g.kind == "h":
            bound.append(sim.h(g.qubits[0]))
        else:
            if g.param_slot is not None:
                if thetas is None:
                    raise ValueError("parameterized gate outside the ansatz")
                angle = thetas[g.param_slot]
            elif g.feature is not None:
                angle = features[g.feature]
            elif g.angle is not None:
                angle = g.angle
            else:
                raise ValueError(f"rotation gate {g} has no angle source")
            bound.append(sim.Gate(g.kind, g.qubits, float(angle)))
    return bound
