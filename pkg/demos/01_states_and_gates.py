#!/usr/bin/env python3
# Build small quantum states by hand and watch gates move probability around.
#
# Index convention: qubit 0 is the most significant bit of a basis label,
# so for three qubits "100" means qubit 0 reads 1 and the others read 0.

import numpy as np

from qnnlens import sim


def show(title, state):
    probs = sim.probabilities(state)
    print(f"\n{title}")
    for b, p in enumerate(probs):
        bar = "#" * int(round(40 * p))
        print(f"  |{sim.basis_label(b, state.num_qubits)}>  {p:8.5f}  {bar}")
    print(f"  sum = {probs.sum():.12f}")


# The zero state concentrates everything on |000>.
state = sim.zero_state(3)
show("zero state", state)

# A Hadamard on qubit 0 splits the register into an equal superposition of
# the two qubit-0 branches.
state = sim.apply_gate(state, sim.h(0))
show("after h on qubit 0", state)

# cnot copies the qubit-0 branch marker onto qubit 1: only |000> and |110>
# survive, which no product of single-qubit states can describe.
state = sim.apply_gate(state, sim.cnot(0, 1))
show("after cnot(0, 1): entangled", state)

# Rotations move probability smoothly. ry(theta) on the zero state puts
# sin^2(theta/2) of the mass on the |1> branch.
theta = 0.8
rotated = sim.apply_gate(sim.zero_state(1), sim.ry(0, theta))
print(f"\nry({theta}) on |0>:")
print(f"  P(|1>) = {sim.probabilities(rotated)[1]:.6f}")
print(f"  sin^2(theta/2) = {np.sin(theta / 2) ** 2:.6f}")

# Every gate is reversible; applying the inverse rotation restores |0>.
restored = sim.apply_gate(rotated, sim.ry(0, -theta))
print(f"  back to |0> after ry(-{theta}): P(|0>) = {sim.probabilities(restored)[0]:.12f}")
