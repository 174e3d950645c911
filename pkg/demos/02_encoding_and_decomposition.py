#!/usr/bin/env python3
# Encode a 2-D datapoint into a 3-qubit register and decompose the result
# the way the Encoder View draws it: basis-state probabilities plus the
# per-qubit marginals they add up to.

from qnnlens import analysis, circuit

spec = circuit.build_default_circuit(num_qubits=3, feature_dim=2, layers=4)
point = [-0.58, 0.10]

state = circuit.encode(spec, point)
dec = analysis.decompose(state)

print(f"datapoint {point} encoded on {spec.num_qubits} qubits\n")
print("basis-state probabilities:")
for label, p in dec.basis:
    marker = "  <- dominant" if p > 0.05 else ""
    print(f"  |{label}>  {p:8.5f}{marker}")

# Feature 0 only nudges qubit 0, feature 1 only nudges qubit 1, and
# qubit 2 has no encoding gate at all, so every basis state that assigns
# it a 1 stays at exactly zero probability.
print("\nper-qubit marginals (value, total, nonzero contributions):")
for qubit in range(spec.num_qubits):
    for value in (0, 1):
        m = dec.marginal(qubit, value)
        parts = ", ".join(f"|{l}>={p:.4f}" for l, p in m.contributions if p > 0)
        print(f"  q{qubit}={value}:  {m.total:8.5f}   {parts or '-'}")

print("\nmeasured expectation on qubit 0 (P0 - P1):")
print(f"  {analysis.expectation_z(state, 0):+.5f}  -> class "
      f"{analysis.predicted_class(analysis.expectation_z(state, 0))}")
