"""Derived quantities for the visual layer.

Everything the views draw comes from here: basis-state probabilities with
per-qubit marginal decompositions, Z expectations, per-parameter angle
drift across epochs, and the sampled feature-plane grid behind the class
heatmap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import circuit, sim

if TYPE_CHECKING:
    from .train import TrainingSnapshot

GRID_SIZE = 15

CLASS_A = "A"
CLASS_B = "B"

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Marginal:
    """Probability that one qubit reads ``value``, with its composition.

    ``contributions`` lists (basis label, probability) for exactly the
    basis states whose digit for this qubit equals ``value``, in ascending
    basis-index order; ``total`` is their sum.
    """

    qubit: int
    value: int
    total: float
    contributions: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class StateDecomposition:
    num_qubits: int
    basis: tuple[tuple[str, float], ...]
    marginals: tuple[Marginal, ...]

    def marginal(self, qubit: int, value: int) -> Marginal:
        return self.marginals[2 * qubit + value]


@dataclass(frozen=True)
class AngleDelta:
    """Signed drift of one trainable angle since epoch 0.

    ``delta`` is unwrapped; ``magnitude`` is |delta| clamped at 2*pi for
    display (a donut ring cannot show more than a full turn).
    """

    param_slot: int
    epoch: int
    delta: float
    magnitude: float


@dataclass(frozen=True)
class FeatureGridCell:
    cell_indices: tuple[int, int]
    center: tuple[float, float]
    expectation: float
    predicted_class: str
    basis_probabilities: tuple[tuple[str, float], ...]
    p0: float
    p1: float


@lru_cache(maxsize=None)
def _matching_indices(num_qubits: int, qubit: int, value: int) -> np.ndarray:
    """Ascending basis indices whose digit for ``qubit`` equals ``value``."""
    shift = num_qubits - 1 - qubit
    indices = [b for b in range(1 << num_qubits) if (b >> shift) & 1 == value]
    return np.array(indices, dtype=np.intp)


def decompose(state: sim.StateVector) -> StateDecomposition:
    """Basis probabilities plus every per-qubit marginal and its makeup."""
    n = state.num_qubits
    probs = sim.probabilities(state)
    basis = tuple(
        (sim.basis_label(b, n), float(probs[b])) for b in range(1 << n)
    )
    marginals = []
    for qubit in range(n):
        for value in (0, 1):
            idx = _matching_indices(n, qubit, value)
            contributions = tuple((basis[b][0], basis[b][1]) for b in idx)
            marginals.append(
                Marginal(qubit, value, float(probs[idx].sum()), contributions)
            )
    return StateDecomposition(n, basis, tuple(marginals))


def expectation_z(state: sim.StateVector, qubit: int) -> float:
    """P(qubit reads 0) - P(qubit reads 1); always in [-1, 1]."""
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(
            f"qubit index {qubit} out of range for {state.num_qubits} qubits"
        )
    probs = sim.probabilities(state)
    p0 = float(probs[_matching_indices(state.num_qubits, qubit, 0)].sum())
    p1 = float(probs[_matching_indices(state.num_qubits, qubit, 1)].sum())
    # Clamp away float-noise excursions past the physical range.
    return min(1.0, max(-1.0, p0 - p1))


def batch_expectation_z(amps: np.ndarray, num_qubits: int, qubit: int) -> np.ndarray:
    """Row-wise ``expectation_z`` over a (count, 2^N) amplitude batch."""
    if not 0 <= qubit < num_qubits:
        raise ValueError(f"qubit index {qubit} out of range for {num_qubits} qubits")
    probs = np.abs(amps) ** 2
    p0 = probs[:, _matching_indices(num_qubits, qubit, 0)].sum(axis=1)
    p1 = probs[:, _matching_indices(num_qubits, qubit, 1)].sum(axis=1)
    return np.clip(p0 - p1, -1.0, 1.0)


def predicted_class(expectation: float) -> str:
    """Decision rule: class A iff the expectation is >= 0 (ties to A)."""
    return CLASS_A if expectation >= 0.0 else CLASS_B


def angle_deltas(snapshots: Sequence["TrainingSnapshot"]) -> list[list[AngleDelta]]:
    """Per-epoch drift of every trainable angle relative to epoch 0.

    Returns one list per snapshot, aligned with the input order.  The
    snapshot for epoch 0 must be present (it is the reference point).
    """
    if not snapshots or snapshots[0].epoch != 0:
        raise ValueError("snapshots must be nonempty and start at epoch 0")
    reference = np.asarray(snapshots[0].thetas, dtype=float)
    per_epoch = []
    for snap in snapshots:
        thetas = np.asarray(snap.thetas, dtype=float)
        deltas = thetas - reference
        per_epoch.append(
            [
                AngleDelta(j, snap.epoch, float(d), min(abs(float(d)), _TWO_PI))
                for j, d in enumerate(deltas)
            ]
        )
    return per_epoch


def feature_grid(
    spec: circuit.CircuitSpec, params: Sequence[float]
) -> tuple[FeatureGridCell, ...]:
    """Sample the feature plane on a GRID_SIZE x GRID_SIZE lattice.

    Cell (i, j) is centered at (-1 + (i + 0.5) * 2/15, -1 + (j + 0.5) * 2/15);
    its quantities come from encoding the center and running the ansatz.
    Cells are returned row-major (i outer), 225 in total.
    """
    if spec.feature_dim != 2:
        raise ValueError(
            f"feature grid needs a 2-feature circuit, got feature_dim={spec.feature_dim}"
        )
    width = 2.0 / GRID_SIZE
    indices = [(i, j) for i in range(GRID_SIZE) for j in range(GRID_SIZE)]
    centers = [
        (-1.0 + (i + 0.5) * width, -1.0 + (j + 0.5) * width) for i, j in indices
    ]
    amps = circuit.run_batch(spec, centers, params)
    probs = np.abs(amps) ** 2
    p0s = probs[:, _matching_indices(spec.num_qubits, spec.measured_qubit, 0)].sum(axis=1)
    p1s = probs[:, _matching_indices(spec.num_qubits, spec.measured_qubit, 1)].sum(axis=1)
    labels = [sim.basis_label(b, spec.num_qubits) for b in range(probs.shape[1])]
    cells = []
    for k, (i, j) in enumerate(indices):
        p0, p1 = float(p0s[k]), float(p1s[k])
        expectation = min(1.0, max(-1.0, p0 - p1))
        cells.append(
            FeatureGridCell(
                cell_indices=(i, j),
                center=centers[k],
                expectation=expectation,
                predicted_class=predicted_class(expectation),
                basis_probabilities=tuple(
                    (label, float(p)) for label, p in zip(labels, probs[k])
                ),
                p0=p0,
                p1=p1,
            )
        )
    return tuple(cells)
