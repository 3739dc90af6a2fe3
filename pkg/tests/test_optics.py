"""Interferometer optics: mode transform, unitarity, click statistics."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dpsqkd.optics import (
    CoherentBlock,
    click_probability,
    coefficient_matrix,
    honest_click_rate,
    mz_transform,
    wrong_detector_amplitude,
)
from dpsqkd.protocol import difference_bits


def random_block(rng, n):
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return CoherentBlock(amps)


class TestCoherentBlock:
    def test_honest_signs_follow_bits(self):
        block = CoherentBlock.honest(np.array([0, 1, 1, 0]), alpha=0.5, eta=0.25)
        assert_allclose(block.amplitudes, [-0.25, 0.25, 0.25, -0.25])

    def test_honest_magnitudes_equal(self, rng):
        x = rng.integers(0, 2, size=12)
        block = CoherentBlock.honest(x, alpha=0.338, eta=0.7)
        mags = np.abs(block.amplitudes)
        assert np.ptp(mags) == 0.0
        assert mags[0] == pytest.approx(np.sqrt(0.7) * 0.338)

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            CoherentBlock(np.array([1.0]))

    def test_bad_eta_rejected(self):
        with pytest.raises(ValueError):
            CoherentBlock(np.array([1.0, 1.0]), eta=1.5)


class TestMzTransform:
    def test_equal_phases_interfere_into_detector_zero(self):
        a = 0.3 + 0.1j
        out = mz_transform(CoherentBlock(np.array([a, a, a])))
        assert_allclose(out.delta1, [0.0, 0.0])
        assert_allclose(np.abs(out.delta0), [abs(a), abs(a)])

    def test_opposite_phases_interfere_into_detector_one(self):
        a = 0.4
        out = mz_transform(CoherentBlock(np.array([a, -a])))
        assert abs(out.delta1[0]) == pytest.approx(a)
        assert out.delta0[0] == 0.0

    def test_energy_conservation_random_blocks(self, rng):
        """Direct summation oracle: output energy equals input energy."""
        for _ in range(50):
            block = random_block(rng, 4)
            out = mz_transform(block)
            total_in = float(np.sum(np.abs(block.amplitudes) ** 2))
            total_out = (
                np.sum(np.abs(out.delta0) ** 2)
                + np.sum(np.abs(out.delta1) ** 2)
                + np.sum(np.abs(out.undetected) ** 2)
            )
            assert abs(total_out - total_in) <= 1e-10

    def test_undetected_carry_half_the_edge_pulses(self, rng):
        block = random_block(rng, 5)
        out = mz_transform(block)
        assert abs(out.undetected[0]) ** 2 == pytest.approx(
            abs(block.amplitudes[0]) ** 2 / 2
        )
        assert abs(out.undetected[1]) ** 2 == pytest.approx(
            abs(block.amplitudes[-1]) ** 2 / 2
        )


class TestCoefficientMatrix:
    def test_two_pulse_detector_one_row(self):
        """Coefficients over (a_2, a_1, b_2, b_1) are (1/2, -1/2, i/2, i/2)."""
        m = coefficient_matrix(2)
        row = m[1]  # d^1 of the single slot; columns (a_1, a_2, b_1, b_2)
        assert row[1] == 0.5
        assert row[0] == -0.5
        assert row[3] == 0.5j
        assert row[2] == 0.5j

    def test_two_pulse_detector_zero_row(self):
        m = coefficient_matrix(2)
        row = m[0]
        assert row[1] == 0.5j
        assert row[0] == 0.5j
        assert row[2] == 0.5  # b_1 enters with +1/2
        assert row[3] == -0.5  # b_2 with -1/2

    def test_detector_rows_orthogonal(self):
        m = coefficient_matrix(2)
        assert np.vdot(m[0], m[1]) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 5, 16, 64])
    def test_unitary(self, n):
        m = coefficient_matrix(n)
        dev = np.abs(m @ m.conj().T - np.eye(2 * n)).max()
        assert dev <= 1e-12

    def test_consistent_with_mz_transform(self, rng):
        """Applying the unitary to (signal, vacuum) reproduces mz_transform."""
        block = random_block(rng, 6)
        n = block.n_pulses
        inputs = np.concatenate([block.amplitudes, np.zeros(n)])
        outputs = coefficient_matrix(n) @ inputs
        out = mz_transform(block)
        assert_allclose(outputs[0 : 2 * (n - 1) : 2], out.delta0, atol=1e-12)
        assert_allclose(outputs[1 : 2 * (n - 1) : 2], out.delta1, atol=1e-12)
        assert_allclose(outputs[2 * n - 2 :], out.undetected, atol=1e-12)

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            coefficient_matrix(1)


class TestClickProbability:
    def test_vacuum_never_clicks(self):
        assert click_probability(0.0) == 0.0

    def test_direct_exponential_value(self):
        # frozen: 1 - exp(-0.1)
        delta = np.sqrt(0.1)
        assert click_probability(delta) == pytest.approx(0.0951625819640, abs=1e-9)

    def test_bright_limit(self):
        assert click_probability(100.0) == 1.0

    def test_monotone_in_intensity(self):
        probs = [click_probability(d) for d in (0.0, 0.3, 0.7, 1.5)]
        assert probs == sorted(probs)


class TestWrongDetectorAmplitude:
    def test_honest_block_gives_machine_zeros(self):
        x = np.array([0, 1, 1])
        block = CoherentBlock.honest(x, alpha=0.5, eta=1.0)
        wrong = wrong_detector_amplitude(block, difference_bits(x))
        assert np.all(wrong == 0.0)

    def test_all_equal_bits(self):
        x = np.zeros(6, dtype=np.uint8)
        block = CoherentBlock.honest(x, alpha=0.9, eta=0.42)
        assert np.all(wrong_detector_amplitude(block, difference_bits(x)) == 0.0)

    def test_honest_blocks_exact_zero_for_all_eta(self, rng):
        for eta in (0.0, 0.05, 0.5, 1.0):
            x = rng.integers(0, 2, size=10)
            block = CoherentBlock.honest(x, alpha=0.338, eta=eta)
            assert np.all(wrong_detector_amplitude(block, difference_bits(x)) == 0.0)

    def test_tampered_intensity_leaks_into_wrong_detector(self):
        """Scaling one pulse breaks the cancellation at both adjacent slots."""
        x = np.array([0, 1, 1, 0])
        block = CoherentBlock.honest(x, alpha=0.5, eta=1.0)
        block.amplitudes[1] *= 0.5
        wrong = wrong_detector_amplitude(block, difference_bits(x))
        assert abs(wrong[0]) > 0.0
        assert abs(wrong[1]) > 0.0
        assert wrong[2] == 0.0  # slots away from the tampered pulse stay dark

    def test_length_mismatch_rejected(self):
        block = CoherentBlock.honest(np.array([0, 1, 1]), 0.5, 1.0)
        with pytest.raises(ValueError):
            wrong_detector_amplitude(block, np.array([1]))


class TestHonestClickStatistics:
    def test_per_slot_rate_is_slot_and_bit_independent(self, rng):
        """Correct-detector click probability is 1 - exp(-eta alpha^2) everywhere."""
        alpha, eta = 0.338, 0.6
        expected = honest_click_rate(alpha, eta)
        for _ in range(10):
            x = rng.integers(0, 2, size=8)
            l = difference_bits(x)
            out = mz_transform(CoherentBlock.honest(x, alpha, eta))
            correct = np.where(l == 1, out.delta1, out.delta0)
            for amp in correct:
                assert click_probability(amp) == pytest.approx(expected, abs=1e-12)

    def test_closed_form_matches_pipeline(self):
        x = np.array([0, 1, 0, 0, 1])
        alpha, eta = 0.5, 0.3
        out = mz_transform(CoherentBlock.honest(x, alpha, eta))
        l = difference_bits(x)
        correct = np.where(l == 1, out.delta1, out.delta0)
        assert honest_click_rate(alpha, eta) == pytest.approx(
            click_probability(correct[0]), abs=1e-15
        )

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            honest_click_rate(-1.0, 0.5)
        with pytest.raises(ValueError):
            honest_click_rate(0.5, 1.5)
