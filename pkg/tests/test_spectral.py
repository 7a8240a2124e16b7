"""Transform correctness against the direct-summation oracle, plus frame types."""

import numpy as np
import pytest

from spectrig.spectral import BinSet, FftPlan, Frame, SpectralFeatures, fft, magnitude

from oracles import naive_dft

SIZES = [8, 16, 32, 64, 128, 256, 512, 1024]


def rel_error(actual, expected) -> float:
    expected = np.asarray(expected)
    scale = np.max(np.abs(expected))
    if scale == 0:
        return float(np.max(np.abs(actual)))
    return float(np.max(np.abs(np.asarray(actual) - expected)) / scale)


def make_frame(samples, index=0, rate=1000.0) -> Frame:
    return Frame(samples=np.asarray(samples, dtype=float), frame_index=index, sample_rate_hz=rate)


class TestFrame:
    def test_accepts_power_of_two(self):
        frame = make_frame(np.zeros(16))
        assert frame.size == 16

    @pytest.mark.parametrize("n", [4, 7, 12, 100])
    def test_rejects_bad_sizes(self, n):
        with pytest.raises(ValueError):
            make_frame(np.zeros(n))

    def test_rejects_non_finite(self):
        samples = np.zeros(8)
        samples[3] = np.nan
        with pytest.raises(ValueError):
            make_frame(samples)
        samples[3] = np.inf
        with pytest.raises(ValueError):
            make_frame(samples)

    def test_rejects_negative_index_and_rate(self):
        with pytest.raises(ValueError):
            make_frame(np.zeros(8), index=-1)
        with pytest.raises(ValueError):
            make_frame(np.zeros(8), rate=0.0)


class TestBinSet:
    def test_valid(self):
        bins = BinSet((1, 5, 9))
        assert len(bins) == 3
        assert list(bins) == [1, 5, 9]
        assert 5 in bins

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            BinSet(())

    def test_rejects_unsorted_or_duplicate(self):
        with pytest.raises(ValueError):
            BinSet((5, 1))
        with pytest.raises(ValueError):
            BinSet((1, 1, 5))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            BinSet((-1, 3))

    def test_validate_for_range(self):
        BinSet((0, 32)).validate_for(64)
        with pytest.raises(ValueError):
            BinSet((0, 33)).validate_for(64)

    def test_frequencies(self):
        freqs = BinSet((1, 4)).frequencies_hz(128, 1000.0)
        assert freqs == pytest.approx([1000.0 / 128, 4 * 1000.0 / 128])


class TestFft:
    def test_dc_case(self):
        c = 3.25
        frame = make_frame(np.full(32, c))
        spectrum = fft(frame)
        expected = np.zeros(32, dtype=complex)
        expected[0] = 32 * c
        assert rel_error(spectrum, expected) < 1e-9

    def test_impulse_case(self):
        samples = np.zeros(64)
        samples[0] = 1.0
        spectrum = fft(make_frame(samples))
        assert rel_error(spectrum, np.ones(64, dtype=complex)) < 1e-9

    def test_matches_naive_dft_n64(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            x = rng.normal(size=64)
            assert rel_error(fft(make_frame(x)), naive_dft(x)) < 1e-9

    @pytest.mark.parametrize("n", SIZES)
    def test_matches_naive_dft_each_size(self, n):
        rng = np.random.default_rng(n)
        for _ in range(10):
            x = rng.normal(size=n)
            assert rel_error(fft(make_frame(x)), naive_dft(x)) < 1e-9

    @pytest.mark.parametrize("n", SIZES)
    def test_parseval(self, n):
        rng = np.random.default_rng(n + 1)
        x = rng.normal(size=n)
        spectrum = fft(make_frame(x))
        time_energy = np.sum(np.abs(x) ** 2)
        freq_energy = np.sum(np.abs(spectrum) ** 2) / n
        assert abs(time_energy - freq_energy) / time_energy < 1e-6

    def test_linearity(self):
        rng = np.random.default_rng(11)
        plan = FftPlan(128)
        x = rng.normal(size=128)
        y = rng.normal(size=128)
        a, b = 2.5, -0.75
        combined = plan(a * x + b * y)
        separate = a * plan(x) + b * plan(y)
        assert rel_error(combined, separate) < 1e-9

    def test_conjugate_symmetry_for_real_input(self):
        rng = np.random.default_rng(13)
        x = rng.normal(size=256)
        spectrum = fft(make_frame(x))
        mirrored = np.conj(spectrum[(-np.arange(256)) % 256])
        assert rel_error(spectrum, mirrored) < 1e-9

    def test_plan_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            FftPlan(12)
        with pytest.raises(ValueError):
            FftPlan(0)

    def test_plan_rejects_wrong_length_and_non_finite(self):
        plan = FftPlan(16)
        with pytest.raises(ValueError):
            plan(np.zeros(8))
        bad = np.zeros(16)
        bad[0] = np.nan
        with pytest.raises(ValueError):
            plan(bad)

    def test_deterministic(self):
        rng = np.random.default_rng(17)
        x = rng.normal(size=64)
        frame = make_frame(x)
        first = fft(frame)
        second = fft(frame)
        assert np.array_equal(first, second)


class TestMagnitude:
    def test_three_four_five(self):
        spectrum = np.zeros(16, dtype=complex)
        spectrum[2] = 3 + 4j
        features = magnitude(spectrum, BinSet((2,)))
        assert features.magnitudes[0] == pytest.approx(5.0)

    def test_zero_spectrum(self):
        features = magnitude(np.zeros(16, dtype=complex), BinSet((0, 3, 8)))
        assert np.all(features.magnitudes == 0.0)

    def test_matches_modulus_oracle(self):
        rng = np.random.default_rng(19)
        spectrum = rng.normal(size=32) + 1j * rng.normal(size=32)
        bins = BinSet((1, 5, 9))
        features = magnitude(spectrum, bins, frame_index=4)
        expected = [abs(spectrum[k]) for k in (1, 5, 9)]
        assert features.magnitudes == pytest.approx(expected, rel=1e-12)
        assert features.frame_index == 4

    def test_bin_out_of_range(self):
        with pytest.raises(ValueError):
            magnitude(np.zeros(16, dtype=complex), BinSet((9,)))

    def test_features_reject_negative_or_non_finite(self):
        with pytest.raises(ValueError):
            SpectralFeatures(frame_index=0, magnitudes=np.array([1.0, -2.0]))
        with pytest.raises(ValueError):
            SpectralFeatures(frame_index=0, magnitudes=np.array([np.nan]))
