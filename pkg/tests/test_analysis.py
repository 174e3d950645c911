"""Decompositions, expectations, angle drift, and the feature grid."""

import math

import numpy as np
import pytest

from qnnlens import analysis, circuit, sim
from qnnlens.train import TrainingSnapshot

from conftest import oracle_apply, random_circuit_state, random_state


def brute_force_marginal(probs, num_qubits, qubit, value):
    shift = num_qubits - 1 - qubit
    return math.fsum(
        probs[b] for b in range(1 << num_qubits) if (b >> shift) & 1 == value
    )


class TestDecompose:
    def test_bell_like_distribution(self):
        state = sim.apply_gates(sim.zero_state(2), [sim.h(0), sim.cnot(0, 1)])
        dec = analysis.decompose(state)
        probs = dict(dec.basis)
        assert abs(probs["00"] - 0.5) < 1e-12 and abs(probs["11"] - 0.5) < 1e-12
        m = dec.marginal(0, 0)
        assert abs(m.total - 0.5) < 1e-12
        # Contributions list every matching basis state; only |00> is nonzero.
        assert [label for label, _ in m.contributions] == ["00", "01"]
        assert [p for label, p in m.contributions if p > 0] == [probs["00"]]
        m = dec.marginal(1, 1)
        assert abs(m.total - 0.5) < 1e-12
        assert [p for label, p in m.contributions if p > 0] == [probs["11"]]

    def test_reference_encoding_marginals(self):
        spec = circuit.build_default_circuit(3, 2, 4)
        dec = analysis.decompose(circuit.encode(spec, [-0.58, 0.10]))
        probs = dict(dec.basis)
        q0_one = dec.marginal(0, 1)
        assert abs(q0_one.total - (probs["100"] + probs["110"])) < 1e-15
        assert abs(q0_one.total - 0.0818) < 1e-4
        assert dec.marginal(2, 1).total == 0.0

    def test_two_qubit_structural_identity(self):
        # For any two-qubit state, the first qubit reads 0 with probability
        # Pr(|00>) + Pr(|01>).
        rng = np.random.default_rng(31)
        for _ in range(50):
            state = random_state(rng, 2)
            probs = sim.probabilities(state)
            dec = analysis.decompose(state)
            assert abs(dec.marginal(0, 0).total - (probs[0] + probs[1])) < 1e-12

    def test_marginal_sum_identity_random_states(self):
        rng = np.random.default_rng(32)
        for _ in range(60):
            n = int(rng.integers(1, 6))
            state = random_circuit_state(rng, n, depth=8)
            probs = sim.probabilities(state)
            dec = analysis.decompose(state)
            assert abs(sum(p for _, p in dec.basis) - 1.0) < 1e-9
            for qubit in range(n):
                for value in (0, 1):
                    m = dec.marginal(qubit, value)
                    assert m.qubit == qubit and m.value == value
                    want = brute_force_marginal(probs, n, qubit, value)
                    assert abs(m.total - want) < 1e-12
                    assert abs(m.total - math.fsum(p for _, p in m.contributions)) < 1e-12
                    labels = [label for label, _ in m.contributions]
                    shift = n - 1 - qubit
                    expected_labels = [
                        sim.basis_label(b, n)
                        for b in range(1 << n)
                        if (b >> shift) & 1 == value
                    ]
                    assert labels == expected_labels
                pair = dec.marginal(qubit, 0).total + dec.marginal(qubit, 1).total
                assert abs(pair - 1.0) < 1e-9


class TestExpectationZ:
    def test_zero_state_is_plus_one(self):
        assert analysis.expectation_z(sim.zero_state(3), 0) == 1.0

    def test_hadamard_on_measured_qubit_is_zero(self):
        for n in (1, 2, 4):
            state = sim.apply_gate(sim.zero_state(n), sim.h(0))
            assert abs(analysis.expectation_z(state, 0)) < 1e-12

    def test_reference_encoding_value(self):
        spec = circuit.build_default_circuit(3, 2, 4)
        value = analysis.expectation_z(circuit.encode(spec, [-0.58, 0.10]), 0)
        assert abs(value - math.cos(0.58)) < 1e-12
        assert abs(value - 0.8365) < 1e-4

    def test_agrees_with_decomposition(self):
        rng = np.random.default_rng(33)
        for _ in range(30):
            n = int(rng.integers(1, 6))
            state = random_state(rng, n)
            dec = analysis.decompose(state)
            for qubit in range(n):
                direct = analysis.expectation_z(state, qubit)
                derived = dec.marginal(qubit, 0).total - dec.marginal(qubit, 1).total
                assert abs(direct - derived) < 1e-12
                assert -1.0 <= direct <= 1.0

    def test_batch_matches_single(self):
        rng = np.random.default_rng(34)
        states = [random_state(rng, 3) for _ in range(6)]
        amps = np.stack([s.amps for s in states])
        batch = analysis.batch_expectation_z(amps, 3, 1)
        for k, state in enumerate(states):
            assert batch[k] == analysis.expectation_z(state, 1)

    def test_rejects_bad_qubit(self):
        with pytest.raises(ValueError):
            analysis.expectation_z(sim.zero_state(2), 2)


class TestAngleDeltas:
    @staticmethod
    def snap(epoch, thetas):
        return TrainingSnapshot(epoch=epoch, thetas=tuple(thetas), loss=0.0, accuracy=1.0)

    def test_epoch_zero_is_all_zero(self):
        deltas = analysis.angle_deltas([self.snap(0, [1.0, -2.0, 0.3])])
        assert [d.delta for d in deltas[0]] == [0.0, 0.0, 0.0]
        assert [d.magnitude for d in deltas[0]] == [0.0, 0.0, 0.0]

    def test_simple_drift(self):
        snaps = [self.snap(0, [0.0, 1.0]), self.snap(40, [0.5, 1.7])]
        deltas = analysis.angle_deltas(snaps)
        assert abs(deltas[1][1].delta - 0.7) < 1e-12
        assert deltas[1][1].param_slot == 1 and deltas[1][1].epoch == 40

    def test_constant_run(self):
        snaps = [self.snap(e, [0.4, 0.4]) for e in range(4)]
        for per_epoch in analysis.angle_deltas(snaps):
            assert all(d.delta == 0.0 for d in per_epoch)

    def test_magnitude_clamped_at_full_turn(self):
        snaps = [self.snap(0, [0.0]), self.snap(1, [-7.0])]
        delta = analysis.angle_deltas(snaps)[1][0]
        assert delta.delta == -7.0
        assert delta.magnitude == 2.0 * math.pi

    def test_requires_epoch_zero(self):
        with pytest.raises(ValueError):
            analysis.angle_deltas([self.snap(1, [0.0])])
        with pytest.raises(ValueError):
            analysis.angle_deltas([])


class TestFeatureGrid:
    def test_shape_and_centers(self):
        spec = circuit.build_default_circuit(2, 2, 1)
        cells = analysis.feature_grid(spec, np.zeros(2))
        assert len(cells) == 225
        assert cells[0].cell_indices == (0, 0)
        assert cells[0].center == (-1.0 + 1.0 / 15.0, -1.0 + 1.0 / 15.0)
        assert cells[-1].cell_indices == (14, 14)
        assert abs(cells[-1].center[0] - (1.0 - 1.0 / 15.0)) < 1e-15
        # Row-major: i advances every 15 cells, j cycles.
        assert cells[15].cell_indices == (1, 0)
        xs = sorted({c.center[0] for c in cells})
        assert len(xs) == 15
        assert abs(xs[1] - xs[0] - 2.0 / 15.0) < 1e-15

    def test_cell_quantities_are_consistent(self):
        spec = circuit.build_default_circuit(3, 2, 2)
        rng = np.random.default_rng(35)
        cells = analysis.feature_grid(spec, rng.uniform(0, 2 * math.pi, 6))
        for cell in cells:
            assert abs(cell.p0 + cell.p1 - 1.0) < 1e-9
            assert abs(cell.expectation - (cell.p0 - cell.p1)) < 1e-9
            assert cell.predicted_class == ("A" if cell.expectation >= 0 else "B")
            assert abs(sum(p for _, p in cell.basis_probabilities) - 1.0) < 1e-9

    @pytest.mark.parametrize("theta_seed", [None, 36])
    def test_against_dense_per_cell_oracle(self, theta_seed):
        # Zero parameters and random parameters; the oracle simulates each
        # cell independently with full Kronecker matrices.
        spec = circuit.build_default_circuit(3, 2, 2)
        if theta_seed is None:
            thetas = np.zeros(6)
        else:
            thetas = np.random.default_rng(theta_seed).uniform(0, 2 * math.pi, 6)
        cells = analysis.feature_grid(spec, thetas)
        for cell in cells[::16]:
            x, y = cell.center
            gates = [sim.ry(0, x), sim.ry(1, y)]
            gates += [sim.ry(q, thetas[q]) for q in range(3)]
            gates += [sim.cnot(0, 1), sim.cnot(1, 2), sim.cnot(2, 0)]
            gates += [sim.ry(q, thetas[3 + q]) for q in range(3)]
            amps = oracle_apply(sim.zero_state(3), gates)
            probs = np.abs(amps) ** 2
            want = brute_force_marginal(probs, 3, 0, 0) - brute_force_marginal(probs, 3, 0, 1)
            assert abs(cell.expectation - want) < 1e-10

    def test_grid_is_deterministic(self):
        spec = circuit.build_default_circuit(2, 2, 1)
        thetas = [0.3, -0.4]
        assert analysis.feature_grid(spec, thetas) == analysis.feature_grid(spec, thetas)

    def test_tie_breaks_to_class_a(self):
        assert analysis.predicted_class(0.0) == "A"
        assert analysis.predicted_class(-1e-300) == "B"

    def test_rejects_non_planar_circuits(self):
        spec = circuit.build_default_circuit(3, 3, 1)
        with pytest.raises(ValueError):
            analysis.feature_grid(spec, np.zeros(3))
