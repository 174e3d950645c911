"""Shared test helpers.

The dense-matrix oracle lives here, independent of the library's strided
gate kernels: every gate is written out as an explicit 2x2 matrix (or a
permutation for cnot) and embedded into the full register with Kronecker
products, qubit 0 being the leftmost factor.
"""

from __future__ import annotations

import math

import numpy as np

from qnnlens import sim

_ORACLE_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)


def oracle_single_qubit_matrix(name: str, angle: float = 0.0) -> np.ndarray:
    half = 0.5 * angle
    c, s = math.cos(half), math.sin(half)
    if name == "rx":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if name == "ry":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if name == "rz":
        return np.array([[complex(c, -s), 0.0], [0.0, complex(c, s)]], dtype=complex)
    if name == "h":
        return _ORACLE_H
    raise ValueError(name)


def oracle_unitary(gate: sim.Gate, num_qubits: int) -> np.ndarray:
    """Full 2^N x 2^N matrix for one gate (Kronecker embedding)."""
    if gate.name == "cnot":
        control, target = gate.qubits
        dim = 1 << num_qubits
        mat = np.zeros((dim, dim), dtype=complex)
        for b in range(dim):
            control_bit = (b >> (num_qubits - 1 - control)) & 1
            out = b ^ (1 << (num_qubits - 1 - target)) if control_bit else b
            mat[out, b] = 1.0
        return mat
    u = oracle_single_qubit_matrix(gate.name, gate.angle)
    mat = np.array([[1.0 + 0.0j]])
    for q in range(num_qubits):
        mat = np.kron(mat, u if q == gate.qubits[0] else np.eye(2, dtype=complex))
    return mat


def oracle_apply(state: sim.StateVector, gates) -> np.ndarray:
    """Apply a gate sequence by repeated full-matrix multiplication."""
    amps = state.amps.copy()
    for gate in gates:
        amps = oracle_unitary(gate, state.num_qubits) @ amps
    return amps


def random_state(rng: np.random.Generator, num_qubits: int) -> sim.StateVector:
    dim = 1 << num_qubits
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    amps = amps / np.linalg.norm(amps)
    return sim.StateVector.from_amplitudes(amps)


def random_gate(rng: np.random.Generator, num_qubits: int) -> sim.Gate:
    name = rng.choice(["rx", "ry", "rz", "h"] + (["cnot"] if num_qubits > 1 else []))
    if name == "cnot":
        control, target = rng.choice(num_qubits, size=2, replace=False)
        return sim.cnot(int(control), int(target))
    qubit = int(rng.integers(num_qubits))
    if name == "h":
        return sim.h(qubit)
    return sim.Gate(str(name), (qubit,), float(rng.uniform(-2.0 * math.pi, 2.0 * math.pi)))


def random_circuit_state(
    rng: np.random.Generator, num_qubits: int, depth: int
) -> sim.StateVector:
    state = sim.zero_state(num_qubits)
    for _ in range(depth):
        state = sim.apply_gate(state, random_gate(rng, num_qubits))
    return state
