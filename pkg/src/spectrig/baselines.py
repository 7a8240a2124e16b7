"""Comparison detectors: fixed spectral threshold and decimated time-domain adaptive.

Both are deliberately simple reference points for head-to-head runs against
the adaptive spectral pipeline; neither adapts the way the main detector
does, which is exactly what the comparison is meant to expose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import Frame, SpectralFeatures


@dataclass(frozen=True)
class FixedThresholdConfig:
    """Constant per-bin magnitude thresholds, never adapted."""

    thresholds: tuple[float, ...]

    def __post_init__(self) -> None:
        thresholds = tuple(float(t) for t in self.thresholds)
        if not thresholds:
            raise ValueError("at least one threshold is required")
        if any(not math.isfinite(t) or t <= 0 for t in thresholds):
            raise ValueError("thresholds must be finite and > 0")
        object.__setattr__(self, "thresholds", thresholds)

    @classmethod
    def uniform(cls, threshold: float, count: int) -> "FixedThresholdConfig":
        return cls(thresholds=(threshold,) * count)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.thresholds, dtype=np.float64)


@dataclass(frozen=True)
class DecimationConfig:
    """Every D-th frame is inspected in the time domain; the rest are skipped."""

    decimation_factor: int = 4
    threshold_ratio: float = 1.2
    alpha: float = 0.95

    def __post_init__(self) -> None:
        if self.decimation_factor < 1:
            raise ValueError("decimation_factor must be >= 1")
        if self.threshold_ratio <= 0 or not math.isfinite(self.threshold_ratio):
            raise ValueError("threshold_ratio must be finite and > 0")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")


def magnitude_matrix(features) -> np.ndarray:
    """Stack a stream of SpectralFeatures (or rows) into a (frames, bins) array."""
    rows = [
        f.magnitudes if isinstance(f, SpectralFeatures) else np.asarray(f, dtype=np.float64)
        for f in features
    ]
    if not rows:
        return np.empty((0, 0))
    return np.vstack(rows)


def calibrate_fixed_thresholds(features, sigma_multiple: float = 3.0) -> FixedThresholdConfig:
    """Mean + k*sigma per bin over a calibration stretch of features."""
    mags = magnitude_matrix(features)
    if mags.size == 0:
        raise ValueError("calibration requires at least one frame of features")
    thresholds = mags.mean(axis=0) + sigma_multiple * mags.std(axis=0)
    return FixedThresholdConfig(thresholds=tuple(float(t) for t in thresholds))


def fixed_spectral_detector(features, config: FixedThresholdConfig) -> np.ndarray:
    """Event flag per frame: 1 iff any bin magnitude exceeds its constant threshold."""
    mags = magnitude_matrix(features)
    if mags.size == 0:
        return np.zeros(0, dtype=np.int64)
    thresholds = config.as_array()
    if mags.shape[1] != thresholds.size:
        raise ValueError(
            f"feature width {mags.shape[1]} does not match {thresholds.size} thresholds"
        )
    return (mags > thresholds).any(axis=1).astype(np.int64)


def frame_rms(samples) -> float:
    """Root-mean-square amplitude of one frame of samples."""
    x = np.asarray(samples, dtype=np.float64)
    return float(np.sqrt(np.mean(np.square(x))))


def decimated_adaptive_detector(frames, config: DecimationConfig) -> np.ndarray:
    """Time-domain envelope detector that only looks at every D-th frame.

    The amplitude baseline is a single-pole tracker over the RMS of the
    frames it actually sees, seeded by the first one (which never fires).
    Skipped frames always report 0 — events falling between inspected
    frames go unseen, which is this paradigm's known weakness.
    """
    flags = []
    baseline: float | None = None
    for i, frame in enumerate(frames):
        if i % config.decimation_factor != 0:
            flags.append(0)
            continue
        samples = frame.samples if isinstance(frame, Frame) else frame
        rms = frame_rms(samples)
        if baseline is None:
            baseline = rms
            flags.append(0)
            continue
        flags.append(1 if rms > config.threshold_ratio * baseline else 0)
        baseline = config.alpha * baseline + (1.0 - config.alpha) * rms
    return np.asarray(flags, dtype=np.int64)
