"""Frame-domain types and the spectral transform feeding the trigger chain."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class Frame:
    """One acquisition window of real-valued sensor samples.

    The sample count must be a power of two (>= 8) so the radix-2
    transform applies directly.
    """

    samples: np.ndarray
    frame_index: int
    sample_rate_hz: float

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("frame samples must be one-dimensional")
        if samples.size < 8 or not is_power_of_two(samples.size):
            raise ValueError(
                f"frame size must be a power of two >= 8, got {samples.size}"
            )
        if not np.all(np.isfinite(samples)):
            raise ValueError("frame samples must all be finite")
        if self.frame_index < 0:
            raise ValueError("frame_index must be non-negative")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", samples)

    @property
    def size(self) -> int:
        return self.samples.size


@dataclass(frozen=True)
class BinSet:
    """Ordered, distinct frequency bin indices monitored by the trigger."""

    bins: tuple[int, ...]

    def __post_init__(self) -> None:
        bins = tuple(int(b) for b in self.bins)
        if not bins:
            raise ValueError("at least one monitored bin is required")
        if bins[0] < 0:
            raise ValueError("bin indices must be non-negative")
        if any(b <= a for a, b in zip(bins, bins[1:])):
            raise ValueError("bin indices must be strictly increasing")
        object.__setattr__(self, "bins", bins)

    def __len__(self) -> int:
        return len(self.bins)

    def __iter__(self):
        return iter(self.bins)

    def __contains__(self, k) -> bool:
        return k in self.bins

    def validate_for(self, frame_size: int) -> None:
        """Check every index fits the one-sided spectrum of ``frame_size``."""
        if self.bins[-1] > frame_size // 2:
            raise ValueError(
                f"bin {self.bins[-1]} out of range for frame size {frame_size}"
            )

    def frequencies_hz(self, frame_size: int, sample_rate_hz: float) -> np.ndarray:
        """Center frequency of each monitored bin: k * f / frame_size."""
        return np.asarray(self.bins, dtype=np.float64) * sample_rate_hz / frame_size


@dataclass(frozen=True, eq=False)
class SpectralFeatures:
    """Magnitudes at the monitored bins for one frame."""

    frame_index: int
    magnitudes: np.ndarray

    def __post_init__(self) -> None:
        mags = np.asarray(self.magnitudes, dtype=np.float64)
        if not np.all(np.isfinite(mags)) or np.any(mags < 0):
            raise ValueError("magnitudes must be finite and non-negative")
        object.__setattr__(self, "magnitudes", mags)


def _bit_reverse_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.intp)
    rev = np.zeros(n, dtype=np.intp)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


class FftPlan:
    """Iterative radix-2 decimation-in-time transform for one frame size.

    Bit-reversal indices and per-stage twiddle factors are computed once at
    construction, so repeated calls do no trigonometry. The transform is the
    plain unscaled forward DFT: X[k] = sum_n x[n] * exp(-2j*pi*k*n/N).
    """

    def __init__(self, size: int):
        if size < 2 or not is_power_of_two(size):
            raise ValueError(f"transform size must be a power of two >= 2, got {size}")
        self.size = size
        self._reorder = _bit_reverse_indices(size)
        self._twiddles = []
        m = 2
        while m <= size:
            self._twiddles.append(np.exp(-2j * np.pi * np.arange(m // 2) / m))
            m *= 2

    def __call__(self, samples) -> np.ndarray:
        x = np.asarray(samples)
        if x.shape != (self.size,):
            raise ValueError(f"expected {self.size} samples, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("samples must all be finite")
        x = x.astype(np.complex128)[self._reorder]
        for w in self._twiddles:
            half = w.size
            x = x.reshape(-1, 2 * half)
            upper = x[:, :half].copy()
            lower = x[:, half:] * w
            x[:, :half] = upper + lower
            x[:, half:] = upper - lower
            x = x.reshape(-1)
        return x


@lru_cache(maxsize=32)
def _plan_for(size: int) -> FftPlan:
    return FftPlan(size)


def fft(frame: Frame) -> np.ndarray:
    """Complex spectrum of one frame (length N, unscaled)."""
    return _plan_for(frame.size)(frame.samples)


def magnitude(spectrum, bins: BinSet, frame_index: int = 0) -> SpectralFeatures:
    """Extract sqrt(Re^2 + Im^2) at the monitored bins only."""
    spec = np.asarray(spectrum, dtype=np.complex128)
    bins.validate_for(spec.size)
    mags = np.abs(spec[np.asarray(bins.bins, dtype=np.intp)])
    return SpectralFeatures(frame_index=frame_index, magnitudes=mags)
