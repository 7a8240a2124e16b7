"""Temporal noise-floor trackers: dual-stage cascaded median and an EMA variant."""

from __future__ import annotations

import math

import numpy as np


class MedianBuffer:
    """Fixed-capacity circular window with order-statistic median.

    Until the window is full, the median is taken over the filled portion.
    The selected order statistic is index ``fill_count // 2`` (zero-based),
    i.e. the upper-middle sample for even counts — median selection never
    interpolates, so the output is always a value that was inserted.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("buffer capacity must be >= 1")
        self.capacity = capacity
        self._values = np.zeros(capacity, dtype=np.float64)
        self._next = 0
        self.fill_count = 0

    def push(self, value: float) -> None:
        """Insert one value, evicting the oldest once the window is full."""
        self._values[self._next] = value
        self._next = (self._next + 1) % self.capacity
        if self.fill_count < self.capacity:
            self.fill_count += 1

    def median(self) -> float:
        """Order-statistic median of the filled window contents.

        Selection partially sorts a copy up to the median position; the
        buffer itself is never reordered.
        """
        if self.fill_count == 0:
            raise ValueError("median of an empty buffer")
        window = self._values[: self.fill_count] if self.fill_count < self.capacity else self._values
        mid = self.fill_count // 2
        return float(np.partition(window, mid)[mid])

    def contents(self) -> np.ndarray:
        """Copy of the filled window (storage order, not insertion order)."""
        if self.fill_count < self.capacity:
            return self._values[: self.fill_count].copy()
        return self._values.copy()


class NoiseFloorState:
    """Per-bin dual-stage cascaded median tracker.

    Stage 1 is a short window that absorbs single-frame artifacts; its
    median feeds stage 2, a long window that follows slow ambient drift.
    Both stages update unconditionally on every frame, trigger or not.
    """

    def __init__(self, bins, fast_window: int = 3, slow_window: int = 64):
        if fast_window < 1 or slow_window < 1:
            raise ValueError("window sizes must be >= 1")
        self.bins = tuple(bins)
        self.fast_window = fast_window
        self.slow_window = slow_window
        self.stage1 = {k: MedianBuffer(fast_window) for k in self.bins}
        self.stage2 = {k: MedianBuffer(slow_window) for k in self.bins}
        self._estimates = {k: 0.0 for k in self.bins}

    def update(self, bin_index: int, magnitude: float) -> float:
        """Insert one magnitude for one bin and return the refreshed estimate."""
        if bin_index not in self._estimates:
            raise KeyError(f"bin {bin_index} is not tracked")
        if not math.isfinite(magnitude) or magnitude < 0:
            raise ValueError(f"magnitude must be finite and >= 0, got {magnitude}")
        stage1 = self.stage1[bin_index]
        stage1.push(magnitude)
        stage2 = self.stage2[bin_index]
        stage2.push(stage1.median())
        estimate = stage2.median()
        self._estimates[bin_index] = estimate
        return estimate

    def update_all(self, magnitudes) -> np.ndarray:
        """Update every tracked bin in order; returns the estimate vector."""
        mags = np.asarray(magnitudes, dtype=np.float64)
        if mags.shape != (len(self.bins),):
            raise ValueError(f"expected {len(self.bins)} magnitudes, got {mags.shape}")
        return np.array([self.update(k, m) for k, m in zip(self.bins, mags)])

    @property
    def estimates(self) -> np.ndarray:
        """Current per-bin estimates, aligned with the bin order."""
        return np.array([self._estimates[k] for k in self.bins])


class EmaTracker:
    """Single-pole exponential tracker, selectable in place of the cascade.

    estimate <- alpha * estimate + (1 - alpha) * magnitude, seeded with the
    first magnitude seen per bin.
    """

    def __init__(self, bins, alpha: float = 0.95):
        if not 0.0 < alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")
        self.bins = tuple(bins)
        self.alpha = alpha
        self._estimates: dict[int, float | None] = {k: None for k in self.bins}

    def update(self, bin_index: int, magnitude: float) -> float:
        if bin_index not in self._estimates:
            raise KeyError(f"bin {bin_index} is not tracked")
        if not math.isfinite(magnitude) or magnitude < 0:
            raise ValueError(f"magnitude must be finite and >= 0, got {magnitude}")
        previous = self._estimates[bin_index]
        if previous is None:
            estimate = magnitude
        else:
            estimate = self.alpha * previous + (1.0 - self.alpha) * magnitude
        self._estimates[bin_index] = estimate
        return estimate

    def update_all(self, magnitudes) -> np.ndarray:
        mags = np.asarray(magnitudes, dtype=np.float64)
        if mags.shape != (len(self.bins),):
            raise ValueError(f"expected {len(self.bins)} magnitudes, got {mags.shape}")
        return np.array([self.update(k, m) for k, m in zip(self.bins, mags)])

    @property
    def estimates(self) -> np.ndarray:
        return np.array([self._estimates[k] or 0.0 for k in self.bins])
