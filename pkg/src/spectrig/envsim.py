"""Deterministic synthetic sensor streams with ground-truth event annotations.

The generator synthesizes each frame in the frequency domain: every interior
bin carries the phase's ambient level (with a bounded relative wobble and a
fresh random phase per frame) and event frames add a tone at the target
bin. The inverse transform of that flat random-phase spectrum is the usual
surrogate for broadband Gaussian noise — energy is spread diffusely over all
bins while the per-bin magnitude stays pinned to the ambient level, which is
what makes multiplicative triggering against a tracked floor well-posed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import BinSet, Frame, is_power_of_two

GENERATOR_ID = "numpy:PCG64"


@dataclass(frozen=True)
class Ramp:
    """Linear ambient-level sweep across one phase."""

    start: float
    end: float

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < 0:
            raise ValueError("ramp endpoints must be >= 0")


@dataclass(frozen=True)
class PhaseSpec:
    """One environmental phase: frame budget, noise level, event quota."""

    name: str
    frame_count: int
    broadband_level: float = 0.0
    ramp: Ramp | None = None
    event_count: int = 0

    def __post_init__(self) -> None:
        if self.frame_count < 1:
            raise ValueError("phase frame_count must be >= 1")
        if self.broadband_level < 0:
            raise ValueError("broadband_level must be >= 0")
        if self.event_count < 0:
            raise ValueError("event_count must be >= 0")

    def levels(self) -> np.ndarray:
        """Per-frame ambient level across the phase."""
        if self.ramp is not None:
            return np.linspace(self.ramp.start, self.ramp.end, self.frame_count)
        return np.full(self.frame_count, self.broadband_level, dtype=np.float64)


@dataclass(frozen=True)
class EventSpec:
    """How synthetic events look and where they may land."""

    target_bins: tuple[int, ...]
    amplitude_ratio: float
    duration_frames: int = 1
    min_gap_frames: int = 1

    def __post_init__(self) -> None:
        targets = tuple(int(b) for b in self.target_bins)
        if not targets:
            raise ValueError("at least one event target bin is required")
        if self.amplitude_ratio <= 1:
            raise ValueError("amplitude_ratio must exceed 1")
        if self.duration_frames < 1:
            raise ValueError("duration_frames must be >= 1")
        if self.min_gap_frames < 0:
            raise ValueError("min_gap_frames must be >= 0")
        object.__setattr__(self, "target_bins", targets)


@dataclass(frozen=True)
class EventInterval:
    """Half-open frame interval [start_frame, end_frame) of one true event."""

    start_frame: int
    end_frame: int
    bin: int

    def __post_init__(self) -> None:
        if self.end_frame <= self.start_frame:
            raise ValueError("interval must span at least one frame")

    def covers(self, frame: int) -> bool:
        return self.start_frame <= frame < self.end_frame


@dataclass(frozen=True)
class GroundTruth:
    """Sorted, non-overlapping true event intervals."""

    intervals: tuple[EventInterval, ...]

    def __post_init__(self) -> None:
        intervals = tuple(self.intervals)
        for a, b in zip(intervals, intervals[1:]):
            if b.start_frame < a.end_frame:
                raise ValueError("truth intervals must be sorted and non-overlapping")
        object.__setattr__(self, "intervals", intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)


@dataclass(frozen=True)
class ScenarioConfig:
    """Full experiment definition; every derived artifact is a pure function
    of this object (including the seed)."""

    seed: int
    frame_size: int
    sample_rate_hz: float
    bins: BinSet
    phases: tuple[PhaseSpec, ...]
    events: EventSpec
    warmup_frames: int = 67
    magnitude_jitter: float = 0.1

    def __post_init__(self) -> None:
        if self.frame_size < 8 or not is_power_of_two(self.frame_size):
            raise ValueError("frame_size must be a power of two >= 8")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        self.bins.validate_for(self.frame_size)
        if not self.phases:
            raise ValueError("at least one phase is required")
        if self.warmup_frames < 0:
            raise ValueError("warmup_frames must be >= 0")
        if not 0.0 <= self.magnitude_jitter < 1.0:
            raise ValueError("magnitude_jitter must be in [0, 1)")
        nyquist = self.frame_size // 2
        for k in self.events.target_bins:
            if k not in self.bins:
                raise ValueError(f"event target bin {k} is not monitored")
            if k <= 0 or k >= nyquist:
                raise ValueError(f"event target bin {k} must be interior (0 < k < {nyquist})")
        object.__setattr__(self, "phases", tuple(self.phases))

    @property
    def total_frames(self) -> int:
        return sum(p.frame_count for p in self.phases)

    def phase_bounds(self) -> list[tuple[str, int, int]]:
        """(name, start_frame, end_frame_exclusive) per phase, in order."""
        bounds = []
        start = 0
        for phase in self.phases:
            bounds.append((phase.name, start, start + phase.frame_count))
            start += phase.frame_count
        return bounds


def _place_events(rng, lo: int, hi: int, count: int, duration: int, gap: int) -> list[int]:
    """Start frames for `count` non-overlapping events with starts in [lo, hi].

    Draws sorted anchors in a shrunk range, then spreads them by the event
    stride — uniform placement with the spacing constraint built in.
    """
    if count == 0:
        return []
    stride = duration + gap
    upper = hi - (count - 1) * stride
    if upper < lo:
        raise ValueError(
            f"cannot place {count} events of duration {duration} (gap {gap}) in frames [{lo}, {hi}]"
        )
    anchors = np.sort(rng.integers(lo, upper + 1, size=count))
    return [int(a + i * stride) for i, a in enumerate(anchors)]


def generate(scenario: ScenarioConfig) -> tuple[list[Frame], GroundTruth]:
    """Produce the frame stream and its ground truth, fully seeded.

    Per frame, interior bins carry magnitude level * (1 + u) with
    u ~ Uniform(-jitter, +jitter) and an independent uniform phase; event
    frames additionally carry a tone of magnitude amplitude_ratio * level at
    the target bin. DC and Nyquist stay empty so the samples are zero-mean.
    """
    rng = np.random.default_rng(scenario.seed)
    size = scenario.frame_size
    nyquist = size // 2
    total = scenario.total_frames

    levels = np.concatenate([p.levels() for p in scenario.phases])

    n_noise_bins = nyquist - 1  # interior bins 1 .. nyquist-1
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(total, n_noise_bins))
    jitter = rng.uniform(
        -scenario.magnitude_jitter, scenario.magnitude_jitter, size=(total, n_noise_bins)
    )

    half_spectrum = np.zeros((total, nyquist + 1), dtype=np.complex128)
    half_spectrum[:, 1:nyquist] = (
        levels[:, None] * (1.0 + jitter) * np.exp(1j * phases)
    )

    intervals: list[EventInterval] = []
    spec = scenario.events
    for phase, (_, phase_start, phase_end) in zip(scenario.phases, scenario.phase_bounds()):
        lo = max(phase_start, scenario.warmup_frames)
        hi = phase_end - spec.duration_frames
        starts = _place_events(
            rng, lo, hi, phase.event_count, spec.duration_frames, spec.min_gap_frames
        )
        for start in starts:
            target = int(rng.choice(spec.target_bins))
            tone_phase = rng.uniform(0.0, 2.0 * np.pi)
            end = start + spec.duration_frames
            tone = spec.amplitude_ratio * levels[start:end] * np.exp(1j * tone_phase)
            half_spectrum[start:end, target] += tone
            intervals.append(EventInterval(start_frame=start, end_frame=end, bin=target))

    samples = np.fft.irfft(half_spectrum, n=size, axis=1)
    frames = [
        Frame(samples=samples[t], frame_index=t, sample_rate_hz=scenario.sample_rate_hz)
        for t in range(total)
    ]
    truth = GroundTruth(intervals=tuple(sorted(intervals, key=lambda e: e.start_frame)))
    return frames, truth


REPLICA_BINS = (3, 9, 14, 21, 27, 36, 44, 52)
REPLICA_LOW_LEVEL = 40.0
REPLICA_HIGH_LEVEL = 200.0


def replica_scenario(seed: int = 42) -> ScenarioConfig:
    """Canonical three-phase benchmark scenario: 2,800 + 2,000 + 1,984
    frames carrying 98 + 11 + 30 one-frame events, with the ambient floor
    rising 5x between the quiet and loud phases."""
    return ScenarioConfig(
        seed=seed,
        frame_size=128,
        sample_rate_hz=1000.0,
        bins=BinSet(REPLICA_BINS),
        phases=(
            PhaseSpec("low_noise", 2800, broadband_level=REPLICA_LOW_LEVEL, event_count=98),
            PhaseSpec(
                "transition",
                2000,
                ramp=Ramp(REPLICA_LOW_LEVEL, REPLICA_HIGH_LEVEL),
                event_count=11,
            ),
            PhaseSpec("high_noise", 1984, broadband_level=REPLICA_HIGH_LEVEL, event_count=30),
        ),
        events=EventSpec(
            target_bins=REPLICA_BINS,
            amplitude_ratio=6.0,
            duration_frames=1,
            min_gap_frames=2,
        ),
        warmup_frames=67,
        magnitude_jitter=0.1,
    )
