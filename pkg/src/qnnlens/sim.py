"""Dense state-vector simulation of small qubit registers.

Conventions used throughout the package:

* Qubit 0 is the most significant bit of a basis index.  For three qubits
  the label "100" (index 4) therefore means qubit 0 reads 1 and qubits 1
  and 2 read 0.
* Rotation gates are exp(-i * angle * P / 2) for Pauli P.  Global phase is
  not observable in any quantity derived here (probabilities and Z
  expectations are phase invariant).

Gate application pairs amplitudes with numpy stride tricks rather than
building the full 2^N x 2^N unitary; the dense Kronecker construction only
exists in the test suite as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 10

ROTATION_GATES = ("rx", "ry", "rz")
GATE_NAMES = ROTATION_GATES + ("h", "cnot")

_SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Gate:
    """A single concrete gate: name, target qubit(s), and a bound angle.

    ``qubits`` is ``(qubit,)`` for single-qubit gates and
    ``(control, target)`` for cnot.  ``angle`` is meaningful only for the
    rotation gates and is kept in radians, unwrapped.
    """

    name: str
    qubits: tuple[int, ...]
    angle: float = 0.0


def rx(qubit: int, angle: float) -> Gate:
    """Rotation about X by ``angle`` on ``qubit``."""
    return _rotation("rx", qubit, angle)


def ry(qubit: int, angle: float) -> Gate:
    """Rotation about Y by ``angle`` on ``qubit``."""
    return _rotation("ry", qubit, angle)


def rz(qubit: int, angle: float) -> Gate:
    """Rotation about Z by ``angle`` on ``qubit``."""
    return _rotation("rz", qubit, angle)


def h(qubit: int) -> Gate:
    """Hadamard on ``qubit``."""
    return Gate("h", (int(qubit),))


def cnot(control: int, target: int) -> Gate:
    """Controlled NOT with distinct ``control`` and ``target`` qubits."""
    if control == target:
        raise ValueError("cnot control and target must be distinct qubits")
    return Gate("cnot", (int(control), int(target)))


def _rotation(name: str, qubit: int, angle: float) -> Gate:
    angle = float(angle)
    if not math.isfinite(angle):
        raise ValueError(f"{name} angle must be finite, got {angle!r}")
    return Gate(name, (int(qubit),), angle)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of ``num_qubits`` qubits as 2^N complex amplitudes.

    Treated as immutable: every operation returns a fresh instance and
    never mutates ``amps`` in place, so values can be shared freely.
    """

    num_qubits: int
    amps: np.ndarray

    @classmethod
    def from_amplitudes(cls, amps, num_qubits: int | None = None) -> "StateVector":
        """Build a validated state from an amplitude sequence.

        The sequence must have length 2^N for 1 <= N <= MAX_QUBITS, contain
        only finite values, and be normalized within 1e-9.
        """
        arr = np.asarray(amps, dtype=complex).reshape(-1)
        n = int(arr.size).bit_length() - 1
        if arr.size < 2 or arr.size != (1 << n) or n > MAX_QUBITS:
            raise ValueError(
                f"amplitude count must be 2^N with 1 <= N <= {MAX_QUBITS}, got {arr.size}"
            )
        if num_qubits is not None and num_qubits != n:
            raise ValueError(f"expected {num_qubits} qubits, amplitudes imply {n}")
        if not np.isfinite(arr).all():
            raise ValueError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(arr) ** 2))
        if abs(norm_sq - 1.0) > 1e-9:
            raise ValueError(f"state not normalized: sum |amp|^2 = {norm_sq!r}")
        # Scrub the residual (<= 1e-9) normalization error so probability
        # sums stay within float noise of 1 everywhere downstream.
        return cls(n, arr / math.sqrt(norm_sq))


def zero_state(num_qubits: int) -> StateVector:
    """All-qubits-|0> state; ``num_qubits`` must be in [1, MAX_QUBITS]."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(int(num_qubits), amps)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate and return the resulting state.

    Pure: the input state is left untouched.  Raises ValueError for an
    unknown gate name, out-of-range qubit indices, or a cnot whose control
    equals its target.
    """
    n = state.num_qubits
    if gate.name not in GATE_NAMES:
        raise ValueError(f"unknown gate {gate.name!r}")
    for q in gate.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for {n} qubits")
    if gate.name == "cnot":
        control, target = gate.qubits
        if control == target:
            raise ValueError("cnot control and target must be distinct qubits")
        return StateVector(n, _apply_cnot(state.amps, n, control, target))
    (qubit,) = gate.qubits
    return StateVector(n, _apply_single(state.amps, n, qubit, _single_qubit_matrix(gate)))


def apply_gates(state: StateVector, gates) -> StateVector:
    """Fold ``apply_gate`` over a gate sequence."""
    for gate in gates:
        state = apply_gate(state, gate)
    return state


def probabilities(state: StateVector) -> np.ndarray:
    """Measurement probabilities: entry b is |amp_b|^2."""
    return np.abs(state.amps) ** 2


def basis_label(index: int, num_qubits: int) -> str:
    """Bitstring label of a basis index, qubit 0 first ("100" = index 4 of 3)."""
    return format(index, f"0{num_qubits}b")


def _single_qubit_matrix(gate: Gate) -> np.ndarray:
    if gate.name == "h":
        return np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)
    half = 0.5 * gate.angle
    c, s = math.cos(half), math.sin(half)
    if gate.name == "rx":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if gate.name == "ry":
        return np.array([[c, -s], [s, c]], dtype=complex)
    # rz
    return np.array([[complex(c, -s), 0.0], [0.0, complex(c, s)]], dtype=complex)


def _apply_single(amps: np.ndarray, n: int, qubit: int, u: np.ndarray) -> np.ndarray:
    # Qubit k is axis k of the (2,)*n tensor, so pairing strides fall out of
    # a reshape to (2^k, 2, 2^(n-k-1)).
    a = amps.reshape(1 << qubit, 2, -1)
    out = np.empty_like(a)
    out[:, 0, :] = u[0, 0] * a[:, 0, :] + u[0, 1] * a[:, 1, :]
    out[:, 1, :] = u[1, 0] * a[:, 0, :] + u[1, 1] * a[:, 1, :]
    return out.reshape(-1)


def _apply_cnot(amps: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    out = amps.reshape((2,) * n).copy()
    sel: list = [slice(None)] * n
    sel[control] = 1
    # Indexing away the control axis shifts later axes left by one.
    flip_axis = target if target < control else target - 1
    block = out[tuple(sel)]
    out[tuple(sel)] = np.flip(block, axis=flip_axis).copy()
    return out.reshape(-1)


# ---------------------------------------------------------------------------
# Batched execution.  Rows of a (count, 2^N) array evolve exactly as
# independent apply_gate calls would (same elementwise arithmetic), which
# keeps batched and sequential results bit-identical; the batch merely
# amortizes numpy dispatch across many datapoints.


def batch_zero_state(count: int, num_qubits: int) -> np.ndarray:
    """(count, 2^N) amplitude rows, each the all-|0> state."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    amps = np.zeros((count, 1 << num_qubits), dtype=complex)
    amps[:, 0] = 1.0
    return amps


def batch_apply(
    amps: np.ndarray, num_qubits: int, gate: Gate, angles: np.ndarray | None = None
) -> np.ndarray:
    """Apply one gate to every row of ``amps``.

    ``angles`` (one per row) overrides ``gate.angle`` for rotation gates so
    feature-encoding rotations can differ per datapoint.
    """
    n = num_qubits
    for q in gate.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for {n} qubits")
    if gate.name == "cnot":
        control, target = gate.qubits
        if control == target:
            raise ValueError("cnot control and target must be distinct qubits")
        return _batch_cnot(amps, n, control, target)
    if gate.name not in GATE_NAMES:
        raise ValueError(f"unknown gate {gate.name!r}")

    (qubit,) = gate.qubits
    if angles is None:
        u = _single_qubit_matrix(gate)
        u00, u01, u10, u11 = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
    else:
        if gate.name not in ROTATION_GATES:
            raise ValueError(f"per-row angles only apply to rotations, not {gate.name!r}")
        # Same expressions as the 2x2 matrix builder, per row.
        half = 0.5 * np.asarray(angles, dtype=float)
        if half.shape != (amps.shape[0],):
            raise ValueError("angles must provide one value per row")
        c = np.cos(half).astype(complex)[:, None, None]
        s = np.sin(half)[:, None, None]
        if gate.name == "rx":
            u00, u01, u10, u11 = c, -1j * s, -1j * s, c
        elif gate.name == "ry":
            sc = s.astype(complex)
            u00, u01, u10, u11 = c, -sc, sc, c
        else:  # rz
            zero = np.zeros_like(c)
            u00, u01, u10, u11 = c - 1j * s, zero, zero, c + 1j * s

    m = amps.shape[0]
    a = amps.reshape(m, 1 << qubit, 2, -1)
    u00, u01, u10, u11 = (np.asarray(x).reshape(-1, 1, 1) for x in (u00, u01, u10, u11))
    out = np.empty_like(a)
    out[:, :, 0, :] = u00 * a[:, :, 0, :] + u01 * a[:, :, 1, :]
    out[:, :, 1, :] = u10 * a[:, :, 0, :] + u11 * a[:, :, 1, :]
    return out.reshape(m, -1)


def _batch_cnot(amps: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    m = amps.shape[0]
    out = amps.reshape((m,) + (2,) * n).copy()
    sel: list = [slice(None)] * (n + 1)
    sel[control + 1] = 1
    flip_axis = (target if target < control else target - 1) + 1
    block = out[tuple(sel)]
    out[tuple(sel)] = np.flip(block, axis=flip_axis).copy()
    return out.reshape(m, -1)
