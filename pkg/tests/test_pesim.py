"""Tests for the phase-estimation simulator against independent oracles."""

import numpy as np
import pytest

from phaselab import (
    DomainError,
    DyadicPhase,
    ResourceError,
    cat_flatten_equiv,
    pe_distribution,
    pe_simulate,
    qft_matrix,
    tv_distance,
)


def brute_force_distribution(k: int, phi: float) -> np.ndarray:
    """Direct summation of the geometric series, the independent oracle."""
    size = 1 << k
    probs = np.empty(size)
    for m in range(size):
        amp = sum(np.exp(2j * np.pi * j * (phi - m / size)) for j in range(size)) / size
        probs[m] = abs(amp) ** 2
    return probs


class TestPeDistribution:
    def test_exact_dyadic_point_mass(self):
        dist = pe_distribution(3, DyadicPhase(5, 3))
        expected = np.zeros(8)
        expected[5] = 1.0
        assert np.array_equal(dist.probabilities, expected)

    def test_one_bit_zero_phase(self):
        dist = pe_distribution(1, DyadicPhase(0, 1))
        assert dist[0] == 1.0

    def test_third_against_brute_force(self):
        dist = pe_distribution(3, 1 / 3)
        oracle = brute_force_distribution(3, 1 / 3)
        assert np.abs(dist.probabilities - oracle).max() <= 1e-12

    def test_real_phase_matches_brute_force(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            k = int(rng.integers(1, 7))
            phi = float(rng.random())
            dist = pe_distribution(k, phi)
            assert np.abs(dist.probabilities - brute_force_distribution(k, phi)).max() <= 1e-11

    def test_sums_to_one_random(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            k = int(rng.integers(1, 17))
            if rng.random() < 0.5:
                phi = DyadicPhase(int(rng.integers(0, 1 << k)), k)
            else:
                phi = float(rng.random())
            total = pe_distribution(k, phi).probabilities.sum()
            assert abs(total - 1.0) <= 1e-10

    def test_point_mass_for_every_numerator(self):
        for k in range(1, 11):
            size = 1 << k
            step = max(1, size // 16)
            for m in range(0, size, step):
                probs = pe_distribution(k, DyadicPhase(m, k)).probabilities
                assert probs[m] == 1.0
                assert probs.sum() == 1.0

    def test_rejects_k_zero(self):
        with pytest.raises(DomainError):
            pe_distribution(0, 0.3)


class TestPeSimulate:
    def test_exact_two_bit(self):
        dist = pe_simulate(2, DyadicPhase(1, 2))
        assert dist[1] == pytest.approx(1.0, abs=1e-12)

    def test_matches_closed_form_random_dyadic(self):
        rng = np.random.default_rng(5)
        k = 8
        for _ in range(10):
            phi = DyadicPhase(int(rng.integers(0, 1 << k)), k)
            assert tv_distance(pe_simulate(k, phi), pe_distribution(k, phi)) <= 1e-9

    def test_matches_closed_form_third(self):
        assert tv_distance(pe_simulate(3, 1 / 3), pe_distribution(3, 1 / 3)) <= 1e-12

    def test_resource_limit(self):
        with pytest.raises(ResourceError):
            pe_simulate(13, 0.1)


class TestQft:
    def test_unitarity_up_to_ten_qubits(self):
        rng = np.random.default_rng(9)
        for bits in (1, 4, 7, 10):
            q = qft_matrix(bits)
            state = rng.normal(size=1 << bits) + 1j * rng.normal(size=1 << bits)
            state /= np.linalg.norm(state)
            back = q.conj().T @ (q @ state)
            assert np.abs(back - state).max() <= 1e-12

    def test_inverse_qft_is_fft(self):
        # The simulator applies the inverse-QFT matrix through an FFT.
        from phaselab.pesim import _inverse_qft_apply

        rng = np.random.default_rng(2)
        for bits in (1, 3, 6):
            state = rng.normal(size=1 << bits) + 1j * rng.normal(size=1 << bits)
            state /= np.linalg.norm(state)
            direct = qft_matrix(bits).conj().T @ state
            assert np.abs(_inverse_qft_apply(state) - direct).max() <= 1e-12


class TestCatFlatten:
    def test_single_qubit(self):
        phi = DyadicPhase(3, 4)
        state = cat_flatten_equiv(1, phi).amplitudes
        assert state[0] == pytest.approx(1 / np.sqrt(2))
        assert state[1] == pytest.approx(np.exp(2j * np.pi * 3 / 16) / np.sqrt(2))

    def test_three_qubits_eighth(self):
        state = cat_flatten_equiv(3, DyadicPhase(1, 3)).amplitudes
        ratio = state[1] / state[0]
        assert ratio == pytest.approx(np.exp(2j * np.pi * 3 / 8), abs=1e-12)

    def test_seven_qubits_random_phases(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            phi = float(rng.random())
            state = cat_flatten_equiv(7, phi).amplitudes
            expected = np.array([1, np.exp(2j * np.pi * 7 * phi)]) / np.sqrt(2)
            assert np.abs(state - expected).max() <= 1e-10

    def test_flattening_equivalence_all_sizes(self):
        rng = np.random.default_rng(33)
        for p in range(1, 11):
            for _ in range(20):
                phi = float(rng.random())
                state = cat_flatten_equiv(p, phi).amplitudes
                expected = np.array([1, np.exp(2j * np.pi * p * phi)]) / np.sqrt(2)
                assert np.abs(state - expected).max() <= 1e-10

    def test_resource_limits(self):
        with pytest.raises(ResourceError):
            cat_flatten_equiv(0, 0.1)
        with pytest.raises(ResourceError):
            cat_flatten_equiv(11, 0.1)
