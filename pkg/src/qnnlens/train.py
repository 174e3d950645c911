"""Training of the variational classifier.

Labels map to targets +1 (class A) and -1 (class B); the loss is the mean
squared error between the measured Z expectation and the target, so it is
bounded by [0, 4].  Gradients use the exact two-point shift rule for Pauli
rotations, full batch, and the optimizer is Adam or plain gradient
descent.  Given identical inputs the whole run is bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import analysis, circuit

CLASS_A = analysis.CLASS_A
CLASS_B = analysis.CLASS_B
_TARGETS = {CLASS_A: 1.0, CLASS_B: -1.0}

_SHIFT = 0.5 * math.pi

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class LabeledPoint:
    id: str
    features: tuple[float, ...]
    label: str


@dataclass(frozen=True)
class LabeledDataset:
    """Classified 2-D points; ``kind`` names the generator that made them."""

    points: tuple[LabeledPoint, ...]
    kind: str = "custom"

    def __post_init__(self):
        ids = [p.id for p in self.points]
        if len(set(ids)) != len(ids):
            raise ValueError("datapoint ids must be unique")
        for p in self.points:
            if p.label not in _TARGETS:
                raise ValueError(f"label must be A or B, got {p.label!r}")

    def labels(self) -> set[str]:
        return {p.label for p in self.points}


@dataclass(frozen=True)
class TrainConfig:
    epochs: int
    learning_rate: float = 0.05
    seed: int = 42
    optimizer: str = "adam"

    def __post_init__(self):
        if self.epochs < 0:
            raise ValueError(f"epochs must be >= 0, got {self.epochs}")
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.optimizer not in ("adam", "sgd"):
            raise ValueError(f"optimizer must be adam or sgd, got {self.optimizer!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class TrainingSnapshot:
    epoch: int
    thetas: tuple[float, ...]
    loss: float
    accuracy: float


def expectation(spec: circuit.CircuitSpec, params: Sequence[float], datapoint) -> float:
    """Measured-qubit Z expectation for one datapoint."""
    return analysis.expectation_z(circuit.run(spec, datapoint, params), spec.measured_qubit)


def classify(spec: circuit.CircuitSpec, params: Sequence[float], datapoint) -> str:
    return analysis.predicted_class(expectation(spec, params, datapoint))


def expectation_loss(
    spec: circuit.CircuitSpec, params: Sequence[float], dataset: LabeledDataset
) -> float:
    """Mean squared error between expectations and +/-1 targets."""
    residuals = _residuals(spec, np.asarray(params, dtype=float), dataset)
    return float(np.mean(residuals**2))


def accuracy(
    spec: circuit.CircuitSpec, params: Sequence[float], dataset: LabeledDataset
) -> float:
    """Fraction of points whose sign rule matches the label (E=0 goes to A)."""
    values = _expectations(spec, np.asarray(params, dtype=float), dataset)
    correct = sum(
        1
        for e, p in zip(values, dataset.points)
        if analysis.predicted_class(float(e)) == p.label
    )
    return correct / len(dataset.points)


def parameter_shift_gradient(
    spec: circuit.CircuitSpec, params: Sequence[float], dataset: LabeledDataset
) -> np.ndarray:
    """Exact loss gradient via +/- pi/2 expectation shifts.

    Valid because every trainable gate is a Pauli rotation; checked before
    evaluating anything.
    """
    for step in spec.steps:
        for g in step.gates:
            if g.param_slot is not None and g.kind not in ("rx", "ry", "rz"):
                raise ValueError(
                    f"parameter slot {g.param_slot} sits on non-rotation gate {g.kind!r}"
                )
    thetas = np.asarray(params, dtype=float)
    residuals = _residuals(spec, thetas, dataset)
    m = len(dataset.points)
    grad = np.zeros(thetas.size)
    for j in range(thetas.size):
        shifted = thetas.copy()
        shifted[j] = thetas[j] + _SHIFT
        e_plus = _expectations(spec, shifted, dataset)
        shifted[j] = thetas[j] - _SHIFT
        e_minus = _expectations(spec, shifted, dataset)
        de = 0.5 * (e_plus - e_minus)
        grad[j] = 2.0 / m * float(np.dot(residuals, de))
    return grad


def train(
    spec: circuit.CircuitSpec, dataset: LabeledDataset, config: TrainConfig
) -> list[TrainingSnapshot]:
    """Full-batch training loop; returns epochs + 1 snapshots.

    Snapshot 0 carries the seeded uniform-[0, 2pi) initialization before
    any update; snapshot e carries the parameters after e updates together
    with their loss and accuracy.
    """
    if len(dataset.labels()) < 2:
        raise ValueError("training needs both classes present in the dataset")
    rng = np.random.default_rng(config.seed)
    thetas = rng.uniform(0.0, 2.0 * math.pi, spec.num_params)

    snapshots = [_snapshot(0, spec, thetas, dataset)]
    m = np.zeros_like(thetas)
    v = np.zeros_like(thetas)
    for epoch in range(1, config.epochs + 1):
        grad = parameter_shift_gradient(spec, thetas, dataset)
        if config.optimizer == "adam":
            m = ADAM_BETA1 * m + (1.0 - ADAM_BETA1) * grad
            v = ADAM_BETA2 * v + (1.0 - ADAM_BETA2) * grad**2
            m_hat = m / (1.0 - ADAM_BETA1**epoch)
            v_hat = v / (1.0 - ADAM_BETA2**epoch)
            thetas = thetas - config.learning_rate * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
        else:
            thetas = thetas - config.learning_rate * grad
        snapshots.append(_snapshot(epoch, spec, thetas, dataset))
    return snapshots


def _snapshot(
    epoch: int, spec: circuit.CircuitSpec, thetas: np.ndarray, dataset: LabeledDataset
) -> TrainingSnapshot:
    return TrainingSnapshot(
        epoch=epoch,
        thetas=tuple(float(t) for t in thetas),
        loss=expectation_loss(spec, thetas, dataset),
        accuracy=accuracy(spec, thetas, dataset),
    )


def _expectations(
    spec: circuit.CircuitSpec, thetas: np.ndarray, dataset: LabeledDataset
) -> np.ndarray:
    if not dataset.points:
        raise ValueError("dataset is empty")
    amps = circuit.run_batch(spec, [p.features for p in dataset.points], thetas)
    return analysis.batch_expectation_z(amps, spec.num_qubits, spec.measured_qubit)


def _residuals(
    spec: circuit.CircuitSpec, thetas: np.ndarray, dataset: LabeledDataset
) -> np.ndarray:
    targets = np.array([_TARGETS[p.label] for p in dataset.points])
    return _expectations(spec, thetas, dataset) - targets
