"""Per-frame detection pipeline: transform, track the floor, decide, emit."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .noisefloor import EmaTracker, NoiseFloorState
from .spectral import BinSet, FftPlan, Frame, SpectralFeatures, is_power_of_two, magnitude
from .trigger import (
    ThresholdConfig,
    TriggerEvent,
    decide_bin,
    decide_event,
    first_firing_bin,
)

TRACKER_MEDIAN = "median"
TRACKER_EMA = "ema"


@dataclass
class PipelineConfig:
    """Everything a detector instance needs, validated up front.

    ``window`` is an optional amplitude taper multiplied into each frame
    before the transform; the default (None) means a rectangular window.
    ``warmup_frames`` defaults to fast_window + slow_window: triggers are
    suppressed until both median stages have filled.
    """

    frame_size: int
    sample_rate_hz: float
    bins: BinSet
    fast_window: int = 3
    slow_window: int = 64
    thresholds: ThresholdConfig | None = None
    tracker: str = TRACKER_MEDIAN
    ema_alpha: float = 0.95
    warmup_frames: int | None = None
    window: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.frame_size < 8 or not is_power_of_two(self.frame_size):
            raise ValueError("frame_size must be a power of two >= 8")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        self.bins.validate_for(self.frame_size)
        if self.fast_window < 1 or self.slow_window < 1:
            raise ValueError("window sizes must be >= 1")
        if self.thresholds is None:
            self.thresholds = ThresholdConfig.uniform(1.5, len(self.bins))
        if len(self.thresholds) != len(self.bins):
            raise ValueError("one threshold coefficient per monitored bin required")
        if self.tracker not in (TRACKER_MEDIAN, TRACKER_EMA):
            raise ValueError(f"unknown tracker {self.tracker!r}")
        if self.tracker == TRACKER_EMA and not 0.0 < self.ema_alpha < 1.0:
            raise ValueError("ema_alpha must be in (0, 1)")
        if self.warmup_frames is None:
            self.warmup_frames = self.fast_window + self.slow_window
        if self.warmup_frames < 0:
            raise ValueError("warmup_frames must be >= 0")
        if self.window is not None:
            window = np.asarray(self.window, dtype=np.float64)
            if window.shape != (self.frame_size,):
                raise ValueError("window length must equal frame_size")
            self.window = window


@dataclass(eq=False)
class FrameResult:
    """Outputs of one pipeline step, enough to reconstruct the decision."""

    frame_index: int
    features: SpectralFeatures
    estimates: np.ndarray
    margins: np.ndarray
    event: int
    event_record: TriggerEvent | None = field(default=None)


class Pipeline:
    """Stateful detector: owns the transform plan and the floor tracker.

    One instance per simulated node; process frames strictly in order.
    Analysis of frame t never depends on frame t+1, so sequential
    processing is behaviorally identical to the double-buffered
    acquire/analyze overlap it models (the overlap only matters for the
    latency budget, see latency_budget).
    """

    def __init__(self, config: PipelineConfig):
        self.config = config
        self._plan = FftPlan(config.frame_size)
        if config.tracker == TRACKER_EMA:
            self._tracker = EmaTracker(config.bins, alpha=config.ema_alpha)
        else:
            self._tracker = NoiseFloorState(
                config.bins,
                fast_window=config.fast_window,
                slow_window=config.slow_window,
            )
        self._coefficients = config.thresholds.as_array()
        self._frames_processed = 0
        self._last_event_frame: int | None = None

    @property
    def tracker(self):
        return self._tracker

    @property
    def frames_processed(self) -> int:
        return self._frames_processed

    def process_frame(self, frame: Frame) -> FrameResult:
        """Run one frame through transform, floor update, and decision.

        Estimates update on every frame; the event flag is forced to 0
        while the warm-up period lasts.
        """
        if frame.size != self.config.frame_size:
            raise ValueError(
                f"frame size {frame.size} does not match configured {self.config.frame_size}"
            )
        samples = frame.samples
        if self.config.window is not None:
            samples = samples * self.config.window
        spectrum = self._plan(samples)
        features = magnitude(spectrum, self.config.bins, frame_index=frame.frame_index)
        mags = features.magnitudes

        estimates = self._tracker.update_all(mags)
        margins = mags - self._coefficients * estimates

        decisions = [
            decide_bin(m, e, c)
            for m, e, c in zip(mags, estimates, self._coefficients)
        ]
        warming_up = self._frames_processed < self.config.warmup_frames
        event = 0 if warming_up else decide_event(decisions)

        record = None
        if event:
            pos = first_firing_bin(decisions)
            bin_id = self.config.bins.bins[pos]
            estimate = estimates[pos]
            strength = float(mags[pos] / estimate) if estimate > 0 else math.inf
            if self._last_event_frame is None:
                delta = frame.frame_index
            else:
                delta = frame.frame_index - self._last_event_frame
            record = TriggerEvent(frame_delta=delta, bin_id=bin_id, strength=strength)
            self._last_event_frame = frame.frame_index

        self._frames_processed += 1
        return FrameResult(
            frame_index=frame.frame_index,
            features=features,
            estimates=estimates,
            margins=margins,
            event=event,
            event_record=record,
        )

    def run_stream(self, frames) -> list[FrameResult]:
        """Process frames in order; per-frame errors carry the frame position."""
        results = []
        for i, frame in enumerate(frames):
            try:
                results.append(self.process_frame(frame))
            except (ValueError, KeyError) as exc:
                raise ValueError(f"frame {i}: {exc}") from exc
        return results


def run_stream(config: PipelineConfig, frames) -> list[FrameResult]:
    """Convenience wrapper: fresh pipeline, frames processed sequentially."""
    return Pipeline(config).run_stream(frames)


def latency_budget(
    config: PipelineConfig,
    fft_time_s: float,
    median_time_s: float,
    decision_time_s: float,
) -> float:
    """Worst-case seconds from physical event to trigger availability.

    Acquisition contributes one frame period (frame_size / sample_rate);
    the double buffer overlaps acquisition of the next frame with analysis
    of the current one, so processing terms add once.
    """
    if min(fft_time_s, median_time_s, decision_time_s) < 0:
        raise ValueError("component times must be >= 0")
    if config.sample_rate_hz <= 0:
        raise ValueError("sample rate must be positive")
    acquire = config.frame_size / config.sample_rate_hz
    return acquire + fft_time_s + median_time_s + decision_time_s


def state_entry_count(config: PipelineConfig) -> int:
    """Persistent state entries: double sample buffer, median windows, coefficients."""
    m = len(config.bins)
    return 2 * config.frame_size + m * (config.fast_window + config.slow_window) + m


def state_memory_bytes(config: PipelineConfig, bits_per_entry: int = 16) -> int:
    """Footprint of the accounting formula at a given entry width."""
    if bits_per_entry <= 0 or bits_per_entry % 8:
        raise ValueError("bits_per_entry must be a positive multiple of 8")
    return state_entry_count(config) * (bits_per_entry // 8)
