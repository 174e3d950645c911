"""Loss, shift-rule gradients, and the optimizer loop."""

import math

import numpy as np
import pytest

from qnnlens import circuit
from qnnlens.train import (
    ADAM_BETA1,
    ADAM_BETA2,
    ADAM_EPS,
    LabeledDataset,
    LabeledPoint,
    TrainConfig,
    accuracy,
    expectation,
    expectation_loss,
    parameter_shift_gradient,
    train,
)


def one_qubit_spec():
    """ry(x) encoder plus one trainable ry: expectation is cos(x + theta)."""
    return circuit.build_default_circuit(1, 1, 1)


def dataset(*points):
    return LabeledDataset(
        tuple(LabeledPoint(f"p{i}", tuple(x), label) for i, (x, label) in enumerate(points))
    )


def finite_difference_gradient(spec, thetas, data, h=1e-4):
    thetas = np.asarray(thetas, dtype=float)
    grad = np.zeros_like(thetas)
    for j in range(thetas.size):
        up, down = thetas.copy(), thetas.copy()
        up[j] += h
        down[j] -= h
        grad[j] = (
            expectation_loss(spec, up, data)
            - expectation_loss(spec, down, data)
        ) / (2 * h)
    return grad


class TestExpectationLoss:
    def test_perfect_class_a_point(self):
        spec = circuit.build_default_circuit(3, 2, 4)
        data = dataset(([0.0, 0.0], "A"))
        assert expectation_loss(spec, np.zeros(12), data) == 0.0

    def test_maximal_miss(self):
        spec = circuit.build_default_circuit(3, 2, 4)
        data = dataset(([0.0, 0.0], "B"))
        assert expectation_loss(spec, np.zeros(12), data) == 4.0

    def test_two_point_arithmetic(self):
        # Angles chosen so the two expectations are exactly 0.8 and -0.6:
        # loss = ((0.8-1)^2 + (-0.6+1)^2) / 2 = 0.10.
        spec = one_qubit_spec()
        x1 = -0.8
        theta = math.acos(0.8) - x1
        x2 = math.acos(-0.6) - theta
        assert -1.0 <= x2 <= 1.0
        data = dataset(([x1], "A"), ([x2], "B"))
        assert abs(expectation(spec, [theta], [x1]) - 0.8) < 1e-12
        assert abs(expectation(spec, [theta], [x2]) + 0.6) < 1e-12
        assert abs(expectation_loss(spec, [theta], data) - 0.10) < 1e-12

    def test_loss_bounds_random(self):
        spec = circuit.build_default_circuit(2, 2, 2)
        rng = np.random.default_rng(41)
        data = dataset(([0.5, -0.5], "A"), ([-0.5, 0.5], "B"))
        for _ in range(20):
            loss = expectation_loss(spec, rng.uniform(0, 2 * math.pi, 4), data)
            assert 0.0 <= loss <= 4.0

    def test_empty_dataset_rejected(self):
        spec = one_qubit_spec()
        with pytest.raises(ValueError):
            expectation_loss(spec, [0.0], LabeledDataset(()))


class TestParameterShiftGradient:
    def test_cosine_circuit_analytic(self):
        # With x = 0 the expectation is cos(theta); for one class-A point the
        # loss gradient is 2 (cos(theta) - 1)(-sin(theta)).
        spec = one_qubit_spec()
        data = dataset(([0.0], "A"))
        grad = parameter_shift_gradient(spec, [math.pi / 2.0], data)
        assert abs(grad[0] - 2.0) < 1e-12
        grad = parameter_shift_gradient(spec, [0.0], data)
        assert abs(grad[0]) < 1e-12
        for theta in (0.3, 1.1, -2.0):
            grad = parameter_shift_gradient(spec, [theta], data)
            want = 2.0 * (math.cos(theta) - 1.0) * (-math.sin(theta))
            assert abs(grad[0] - want) < 1e-12

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(42)
        spec = circuit.build_default_circuit(3, 2, 4)
        data = dataset(
            ([0.4, -0.2], "A"), ([-0.6, 0.8], "B"), ([0.1, 0.9], "A"), ([-0.9, -0.3], "B")
        )
        for _ in range(3):
            thetas = rng.uniform(0, 2 * math.pi, 12)
            ps = parameter_shift_gradient(spec, thetas, data)
            fd = finite_difference_gradient(spec, thetas, data)
            np.testing.assert_allclose(ps, fd, atol=1e-5)

    def test_rejects_parameterized_non_rotation(self):
        bad = circuit.CircuitSpec(
            num_qubits=1,
            feature_dim=1,
            ansatz_layers=1,
            steps=(
                circuit.Step(circuit.ENCODING, (circuit.CircuitGate("ry", (0,), feature=0),)),
                circuit.Step(circuit.ROTATION, (circuit.CircuitGate("h", (0,), param_slot=0),)),
            ),
        )
        data = dataset(([0.0], "A"))
        with pytest.raises(ValueError):
            parameter_shift_gradient(bad, [0.0], data)


class TestTrain:
    @staticmethod
    def small_data():
        return dataset(
            ([0.5, 0.5], "B"), ([0.6, 0.4], "B"), ([-0.5, -0.5], "A"), ([-0.4, -0.6], "A")
        )

    def test_zero_epochs_returns_initialization_only(self):
        spec = circuit.build_default_circuit(2, 2, 1)
        snaps = train(spec, self.small_data(), TrainConfig(epochs=0, seed=5))
        assert len(snaps) == 1 and snaps[0].epoch == 0
        assert all(0.0 <= t < 2.0 * math.pi for t in snaps[0].thetas)

    def test_fixed_seed_reproducibility(self):
        spec = circuit.build_default_circuit(2, 2, 2)
        config = TrainConfig(epochs=5, seed=9)
        first = train(spec, self.small_data(), config)
        second = train(spec, self.small_data(), config)
        assert first == second

    def test_snapshot_metrics_recomputable(self):
        spec = circuit.build_default_circuit(2, 2, 2)
        data = self.small_data()
        snaps = train(spec, data, TrainConfig(epochs=4, seed=3))
        assert [s.epoch for s in snaps] == [0, 1, 2, 3, 4]
        for s in snaps:
            assert accuracy(spec, s.thetas, data) == s.accuracy
            assert expectation_loss(spec, s.thetas, data) == s.loss
            assert 0.0 <= s.loss <= 4.0
            assert 0.0 <= s.accuracy <= 1.0

    def test_rejects_single_class(self):
        spec = circuit.build_default_circuit(2, 2, 1)
        data = dataset(([0.1, 0.2], "A"), ([0.3, 0.1], "A"))
        with pytest.raises(ValueError):
            train(spec, data, TrainConfig(epochs=1))

    def test_sgd_step_is_plain_descent(self):
        spec = circuit.build_default_circuit(2, 2, 1)
        data = self.small_data()
        config = TrainConfig(epochs=1, seed=6, optimizer="sgd", learning_rate=0.1)
        snaps = train(spec, data, config)
        theta0 = np.array(snaps[0].thetas)
        grad = parameter_shift_gradient(spec, theta0, data)
        np.testing.assert_array_equal(np.array(snaps[1].thetas), theta0 - 0.1 * grad)

    def test_adam_first_step_matches_hand_update(self):
        spec = circuit.build_default_circuit(2, 2, 1)
        data = self.small_data()
        lr = 0.05
        snaps = train(spec, data, TrainConfig(epochs=1, seed=6, learning_rate=lr))
        theta0 = np.array(snaps[0].thetas)
        g = parameter_shift_gradient(spec, theta0, data)
        m_hat = (1 - ADAM_BETA1) * g / (1 - ADAM_BETA1)
        v_hat = (1 - ADAM_BETA2) * g**2 / (1 - ADAM_BETA2)
        want = theta0 - lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
        np.testing.assert_array_equal(np.array(snaps[1].thetas), want)

    def test_loss_decreases_on_separable_data(self):
        spec = circuit.build_default_circuit(2, 2, 2)
        snaps = train(spec, self.small_data(), TrainConfig(epochs=25, seed=1))
        assert snaps[-1].loss < snaps[0].loss

    def test_config_validation(self):
        with pytest.raises(ValueError):
            TrainConfig(epochs=-1)
        with pytest.raises(ValueError):
            TrainConfig(epochs=1, learning_rate=0.0)
        with pytest.raises(ValueError):
            TrainConfig(epochs=1, optimizer="lbfgs")

    def test_dataset_validation(self):
        with pytest.raises(ValueError):
            LabeledDataset(
                (LabeledPoint("a", (0.0, 0.0), "A"), LabeledPoint("a", (0.1, 0.1), "B"))
            )
        with pytest.raises(ValueError):
            LabeledDataset((LabeledPoint("a", (0.0, 0.0), "C"),))
