#!/usr/bin/env python3
# Sample the feature plane on the 15x15 lattice behind the class heatmap
# and sketch it in the terminal: letter = predicted class, case = how
# confident the measurement is (|P0 - P1|).

import numpy as np

from qnnlens import analysis, circuit, train
from qnnlens.datasets import DatasetSpec, generate_dataset

data = generate_dataset(DatasetSpec(kind="blobs", num_points=80, noise=0.1, seed=42))
spec = circuit.build_default_circuit(num_qubits=3, feature_dim=2, layers=4)
snapshots = train.train(spec, data, train.TrainConfig(epochs=60, seed=42))


def sketch(thetas, title):
    cells = analysis.feature_grid(spec, thetas)
    byij = {c.cell_indices: c for c in cells}
    print(f"\n{title}")
    for j in range(analysis.GRID_SIZE - 1, -1, -1):  # y grows upward
        row = ""
        for i in range(analysis.GRID_SIZE):
            c = byij[(i, j)]
            letter = c.predicted_class
            row += letter if abs(c.expectation) > 0.5 else letter.lower()
        print("  " + row)


sketch(snapshots[0].thetas, "before training (random angles)")
sketch(snapshots[-1].thetas, f"after {snapshots[-1].epoch} epochs "
                             f"(accuracy {snapshots[-1].accuracy:.2f})")

# Each cell also carries the full basis breakdown the drill-down donut
# shows; pick the center cell and look at it.
cells = analysis.feature_grid(spec, snapshots[-1].thetas)
center = next(c for c in cells if c.cell_indices == (7, 7))
print(f"\ncell {center.cell_indices} at {tuple(round(v, 3) for v in center.center)}:")
print(f"  P0={center.p0:.4f}  P1={center.p1:.4f}  E={center.expectation:+.4f}"
      f"  -> {center.predicted_class}")
top = sorted(center.basis_probabilities, key=lambda lp: -lp[1])[:4]
print("  largest basis states:", ", ".join(f"|{l}>={p:.3f}" for l, p in top))
assert abs(sum(p for _, p in center.basis_probabilities) - 1.0) < 1e-9
