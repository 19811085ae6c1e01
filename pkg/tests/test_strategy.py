"""Tests for profile reductions and the explicit strategies."""

import numpy as np
import pytest

from phaselab import (
    AmplitudeProfile,
    DomainError,
    DyadicPhase,
    adaptive_protocol,
    build_promise_set,
    collapse_to_weight_profile,
    comb_budget,
    comb_delta,
    comb_profile,
    final_state,
    flattened_pe_profile,
    nonadaptive_strategy,
    pairwise_overlap,
    profile_convolve_squared,
)


def random_profile(rng, n):
    beta = rng.random(n + 1)
    return AmplitudeProfile(beta / np.linalg.norm(beta))


class TestAmplitudeProfile:
    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            AmplitudeProfile(np.array([0.8, -0.6]))

    def test_rejects_unnormalised(self):
        with pytest.raises(DomainError):
            AmplitudeProfile(np.array([1.0, 1.0]))


class TestFinalState:
    def test_point_mass_ignores_phase(self):
        profile = AmplitudeProfile(np.array([1.0, 0.0, 0.0]))
        state = final_state(profile, DyadicPhase(7, 5))
        assert np.array_equal(state, np.array([1, 0, 0], dtype=complex))

    def test_comb_state_at_zero_phase(self):
        n, profile = comb_profile(16, 1)
        state = final_state(profile, DyadicPhase(0, 16))
        expected = np.zeros(n + 1, dtype=complex)
        expected[[0, n // 2, n]] = 1 / np.sqrt(3)
        assert np.abs(state - expected).max() <= 1e-15

    def test_matches_elementwise_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            profile = random_profile(rng, int(rng.integers(1, 40)))
            phi = DyadicPhase(int(rng.integers(0, 1 << 10)), 10)
            state = final_state(profile, phi)
            oracle = np.array(
                [b * np.exp(2j * np.pi * j * float(phi)) for j, b in enumerate(profile.beta)]
            )
            assert np.abs(state - oracle).max() <= 1e-10
            assert abs(np.linalg.norm(state) - 1) <= 1e-10


class TestCollapse:
    def test_point_mass_single_weight(self):
        alpha = np.zeros(8, dtype=complex)
        alpha[0b110] = 1.0
        profile = collapse_to_weight_profile(alpha)
        assert np.array_equal(profile.beta, [0, 0, 1, 0])

    def test_uniform_two_bits(self):
        alpha = np.full(4, 0.5, dtype=complex)
        profile = collapse_to_weight_profile(alpha)
        assert np.abs(profile.beta - [0.5, np.sqrt(0.5), 0.5]).max() <= 1e-12

    def test_rejects_unnormalised(self):
        with pytest.raises(DomainError):
            collapse_to_weight_profile(np.ones(4, dtype=complex))

    def test_gram_preserved_over_promise_set(self):
        # Collapsing weight classes must preserve every pairwise overlap of
        # the full 2^N-dimensional final states over the promise set.
        rng = np.random.default_rng(12)
        n = 10
        k = 5
        promise = build_promise_set(k, 1)
        alpha = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        alpha /= np.linalg.norm(alpha)
        profile = collapse_to_weight_profile(alpha)
        weights = np.array([bin(x).count("1") for x in range(1 << n)])
        for phi in promise.phases:
            for phi2 in promise.phases:
                full = np.sum(
                    np.abs(alpha) ** 2
                    * np.exp(2j * np.pi * weights * (float(phi2) - float(phi)))
                )
                collapsed = pairwise_overlap(profile, phi, phi2)
                assert abs(full - collapsed) <= 1e-12


class TestConvolve:
    def test_identity_element(self):
        rng = np.random.default_rng(8)
        profile = random_profile(rng, 6)
        merged = profile_convolve_squared(AmplitudeProfile(np.array([1.0])), profile)
        assert np.abs(merged.beta - profile.beta).max() <= 1e-12

    def test_plus_state_squared(self):
        plus = AmplitudeProfile(np.full(2, 1 / np.sqrt(2)))
        merged = profile_convolve_squared(plus, plus)
        assert np.abs(merged.beta - [0.5, np.sqrt(0.5), 0.5]).max() <= 1e-12

    def test_overlap_factorises(self):
        rng = np.random.default_rng(10)
        k = 8
        for _ in range(50):
            p1 = random_profile(rng, int(rng.integers(1, 12)))
            p2 = random_profile(rng, int(rng.integers(1, 12)))
            phi = DyadicPhase(int(rng.integers(0, 1 << k)), k)
            phi2 = DyadicPhase(int(rng.integers(0, 1 << k)), k)
            merged = profile_convolve_squared(p1, p2)
            product = pairwise_overlap(p1, phi, phi2) * pairwise_overlap(p2, phi, phi2)
            assert abs(pairwise_overlap(merged, phi, phi2) - product) <= 1e-12


class TestCombProfile:
    def test_budget_k16_ell1(self):
        n, profile = comb_profile(16, 1)
        assert n == 43692
        assert abs(float(comb_delta(16, 1))) < 2
        assert len(profile.support()) == 3

    def test_budget_k16_ell2(self):
        n, _ = comb_profile(16, 2)
        assert n == 52432
        assert abs(float(comb_delta(16, 2))) == pytest.approx(3.2)

    def test_support_size_and_step(self):
        for k, ell in [(7, 1), (9, 2), (11, 3), (13, 4)]:
            n, profile = comb_profile(k, ell)
            support = profile.support()
            assert len(support) == (1 << ell) + 1
            assert (n >> ell) % (1 << ell) == 0
            assert abs(float(comb_delta(k, ell))) < 1 << (2 * ell - 1)
            assert np.array_equal(np.diff(support), np.full(1 << ell, n >> ell))

    def test_rejects_small_k(self):
        with pytest.raises(DomainError):
            comb_profile(2, 1)

    def test_total_cost_bound(self):
        for k, ell in [(8, 1), (10, 2), (12, 3)]:
            strategy = nonadaptive_strategy(k, ell)
            limit = (1 << ell) / ((1 << ell) + 1) * (1 << k) + (1 << (2 * ell - 1)) + (1 << ell)
            assert strategy.total_cost <= limit


class TestFlattenedFrontEnd:
    def test_uniform_profile(self):
        profile = flattened_pe_profile(3)
        assert np.abs(profile.beta - 1 / np.sqrt(8)).max() <= 1e-15
        assert profile.n_applications == 7


class TestAdaptiveProtocol:
    def test_worst_case_cost_ell1(self):
        for k in range(8, 17):
            strategy = adaptive_protocol(k, 1)
            assert strategy.worst_case_cost == (1 << (k - 1)) + 1

    def test_pair_zero_stage2_perfect(self):
        strategy = adaptive_protocol(12, 1)
        # M_0 (r+1) is exactly half a turn, so the pair-0 test is error-free;
        # pair 0's lower phase also passes stage 1 exactly.
        assert strategy.per_phase_success[0] == 1.0

    def test_error_probability_small(self):
        for k in range(8, 17):
            assert adaptive_protocol(k, 1).error_prob <= 64 * 2.0**-k

    def test_exact_probability_tree_oracle(self):
        # Recompute the worst-case error by enumerating the two-stage tree
        # directly from first principles.
        import math

        from phaselab import helstrom_two, pe_distribution

        k, ell = 14, 2
        strategy = adaptive_protocol(k, ell)
        promise = build_promise_set(k, ell)
        worst = 0.0
        for r in range(1 << ell):
            m_r = strategy.stage2_costs[r]
            turns = (m_r * (r + 1)) % (1 << k) / (1 << k)
            stage2 = helstrom_two(abs(math.cos(math.pi * turns)))
            for phi in promise.pair_phases(r):
                stage1 = pe_distribution(ell, phi)[r]
                worst = max(worst, 1 - stage1 * stage2)
        assert strategy.error_prob == pytest.approx(worst, abs=1e-15)
        assert strategy.error_prob <= 16 * 2.0**-k

    def test_cost_ratio_band(self):
        for k, ell in [(8, 1), (10, 2), (12, 3), (13, 2)]:
            strategy = adaptive_protocol(k, ell)
            ratio = strategy.worst_case_cost / (1 << k)
            assert 0.5 <= ratio <= 0.5 + 2 ** (ell + 1) / (1 << k)
