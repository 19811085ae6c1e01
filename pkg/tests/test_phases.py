"""Tests for exact dyadic phases and promise sets."""

import cmath

import numpy as np
import pytest

from phaselab import DyadicPhase, DomainError, build_promise_set, min_gap, unit_phase
from phaselab.phases import PromiseSet


class TestDyadicPhase:
    def test_value_and_range(self):
        phi = DyadicPhase(5, 4)
        assert float(phi) == 5 / 16

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            DyadicPhase(16, 4)
        with pytest.raises(DomainError):
            DyadicPhase(-1, 4)

    def test_equality_across_precisions(self):
        assert DyadicPhase(1, 2) == DyadicPhase(2, 3)
        assert hash(DyadicPhase(1, 2)) == hash(DyadicPhase(2, 3))
        assert DyadicPhase(1, 2) != DyadicPhase(3, 3)

    def test_lift(self):
        assert DyadicPhase(3, 3).lift(6) == 24
        with pytest.raises(DomainError):
            DyadicPhase(3, 3).lift(2)


class TestUnitPhase:
    def test_zero_applications(self):
        assert unit_phase(0, DyadicPhase(7, 4)) == 1

    def test_half_turn(self):
        k = 9
        assert unit_phase(1 << (k - 1), DyadicPhase(1, k)) == pytest.approx(-1)

    def test_matches_repeated_multiplication(self):
        phi = DyadicPhase(5, 4)
        base = cmath.exp(2j * cmath.pi * 5 / 16)
        assert unit_phase(3, phi) == pytest.approx(base**3, abs=1e-12)

    def test_additive_in_applications(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            k = int(rng.integers(1, 14))
            phi = DyadicPhase(int(rng.integers(0, 1 << k)), k)
            j1, j2 = int(rng.integers(0, 1 << 16)), int(rng.integers(0, 1 << 16))
            lhs = unit_phase(j1, phi) * unit_phase(j2, phi)
            assert abs(lhs - unit_phase(j1 + j2, phi)) <= 1e-12

    def test_exact_periodicity(self):
        phi = DyadicPhase(11, 5)
        for j in range(40):
            assert unit_phase(j + 32, phi) == unit_phase(j, phi)

    def test_unit_modulus(self):
        phi = DyadicPhase(123, 10)
        for j in (1, 17, 999):
            assert abs(abs(unit_phase(j, phi)) - 1) < 1e-15

    def test_negative_count_rejected(self):
        with pytest.raises(DomainError):
            unit_phase(-1, DyadicPhase(1, 3))


class TestPromiseSet:
    def test_four_phase_set(self):
        k = 7
        promise = build_promise_set(k, 1)
        values = [float(p) for p in promise.phases]
        assert values == [0.0, 2**-k, 0.5, 0.5 + 2 ** (-k + 1)]

    def test_eight_phase_set(self):
        k = 9
        promise = build_promise_set(k, 2)
        expected = []
        for r in range(4):
            expected += [r / 4, r / 4 + (r + 1) * 2**-k]
        assert [float(p) for p in promise.phases] == expected

    def test_pair_structure(self):
        promise = build_promise_set(9, 2)
        for r in range(4):
            lo, hi = promise.pair_phases(r)
            assert float(hi) - float(lo) == (r + 1) * 2**-9

    def test_phase_count_and_distinct(self):
        for ell in (1, 2, 3):
            k = 2 * ell + 1
            promise = build_promise_set(k, ell)
            assert len(promise) == 2 ** (ell + 1)
            nums = [p.lift(k) for p in promise.phases]
            assert len(set(nums)) == len(nums)
            assert nums == sorted(nums)

    def test_boundary_precision_rejected(self):
        with pytest.raises(DomainError):
            build_promise_set(2, 1)
        with pytest.raises(DomainError):
            build_promise_set(4, 2)
        with pytest.raises(DomainError):
            build_promise_set(5, 0)

    def test_json_round_trip(self):
        promise = build_promise_set(8, 2)
        again = PromiseSet.from_json(promise.to_json())
        assert again == promise


class TestMinGap:
    def test_promise_set_gap(self):
        for ell in (1, 2, 3):
            k = 2 * ell + 2
            assert min_gap(build_promise_set(k, ell)) == DyadicPhase(1, k)

    def test_wraparound(self):
        k = 6
        gap = min_gap([DyadicPhase(0, k), DyadicPhase((1 << k) - 1, k)])
        assert gap == DyadicPhase(1, k)

    def test_singleton_rejected(self):
        with pytest.raises(DomainError):
            min_gap([DyadicPhase(0, 3)])
