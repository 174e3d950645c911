"""qnnlens: train small variational quantum classifiers and expose every
quantity their explanation views need.

Layers, bottom up: ``sim`` (dense state vectors and gates), ``circuit``
(encoder + ansatz as traced steps), ``train`` (shift-rule gradients and the
optimizer loop), ``analysis`` (decompositions, expectations, angle drift,
feature grid), ``datasets`` (synthetic two-class data), ``store``
(versioned JSON persistence), ``server``/``cli`` (read-only API and entry
points).
"""

from .analysis import (
    AngleDelta,
    FeatureGridCell,
    GRID_SIZE,
    Marginal,
    StateDecomposition,
    angle_deltas,
    decompose,
    expectation_z,
    feature_grid,
)
from .circuit import (
    CircuitGate,
    CircuitSpec,
    Step,
    build_default_circuit,
    encode,
    run,
    run_with_trace,
)
from .datasets import DatasetSpec, generate_dataset
from .sim import Gate, StateVector, apply_gate, apply_gates, cnot, h, probabilities, rx, ry, rz, zero_state
from .store import (
    RunNotFoundError,
    RunRecord,
    RunSummary,
    StoreSchemaError,
    canonical_json,
    default_epoch_sample,
    list_runs,
    load_run,
    record_run,
)
from .train import (
    LabeledDataset,
    LabeledPoint,
    TrainConfig,
    TrainingSnapshot,
    accuracy,
    expectation_loss,
    parameter_shift_gradient,
)
from . import train  # the training op itself is qnnlens.train.train

__version__ = "0.1.0"

__all__ = [
    "AngleDelta",
    "CircuitGate",
    "CircuitSpec",
    "DatasetSpec",
    "FeatureGridCell",
    "GRID_SIZE",
    "Gate",
    "LabeledDataset",
    "LabeledPoint",
    "Marginal",
    "RunNotFoundError",
    "RunRecord",
    "RunSummary",
    "StateDecomposition",
    "StateVector",
    "Step",
    "StoreSchemaError",
    "TrainConfig",
    "TrainingSnapshot",
    "accuracy",
    "angle_deltas",
    "apply_gate",
    "apply_gates",
    "build_default_circuit",
    "canonical_json",
    "cnot",
    "decompose",
    "default_epoch_sample",
    "encode",
    "expectation_loss",
    "expectation_z",
    "feature_grid",
    "generate_dataset",
    "h",
    "list_runs",
    "load_run",
    "parameter_shift_gradient",
    "probabilities",
    "record_run",
    "rx",
    "ry",
    "rz",
    "run",
    "run_with_trace",
    "train",
    "zero_state",
]
