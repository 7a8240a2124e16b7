"""On-disk formats: binary frame container, CSV truth/event logs, JSON configs.

Frame container layout (all little-endian):
  bytes 0-3    magic b"STFR"
  bytes 4-5    format version (u16, currently 1)
  bytes 6-7    frame size N (u16)
  bytes 8-11   sample rate in Hz (f32)
  bytes 12-15  frame count (u32)
  bytes 16-    frame_count * N float64 samples, frame-major
"""

from __future__ import annotations

import csv
import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .envsim import (
    EventInterval,
    EventSpec,
    GroundTruth,
    PhaseSpec,
    Ramp,
    ScenarioConfig,
)
from .pipeline import PipelineConfig
from .spectral import BinSet, Frame
from .trigger import ThresholdConfig

FRAMES_MAGIC = b"STFR"
FRAMES_VERSION = 1
_HEADER = struct.Struct("<4sHHfI")


def write_frames(path, frames) -> None:
    frames = list(frames)
    if not frames:
        raise ValueError("cannot write an empty frame stream")
    size = frames[0].size
    rate = frames[0].sample_rate_hz
    data = np.vstack([f.samples for f in frames]).astype("<f8")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(FRAMES_MAGIC, FRAMES_VERSION, size, rate, len(frames)))
        fh.write(data.tobytes())


def read_frames(path) -> list[Frame]:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ValueError(f"{path}: truncated frame container header")
        magic, version, size, rate, count = _HEADER.unpack(header)
        if magic != FRAMES_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if version != FRAMES_VERSION:
            raise ValueError(f"{path}: unsupported container version {version}")
        payload = fh.read()
    expected = count * size * 8
    if len(payload) != expected:
        raise ValueError(f"{path}: expected {expected} sample bytes, found {len(payload)}")
    samples = np.frombuffer(payload, dtype="<f8").reshape(count, size)
    return [
        Frame(samples=samples[t].copy(), frame_index=t, sample_rate_hz=float(rate))
        for t in range(count)
    ]


def write_truth(path, truth: GroundTruth) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["start_frame", "end_frame", "bin"])
        for interval in truth:
            writer.writerow([interval.start_frame, interval.end_frame, interval.bin])


def read_truth(path) -> GroundTruth:
    intervals = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            intervals.append(
                EventInterval(
                    start_frame=int(row["start_frame"]),
                    end_frame=int(row["end_frame"]),
                    bin=int(row["bin"]),
                )
            )
    return GroundTruth(intervals=tuple(intervals))


@dataclass(frozen=True)
class EventRow:
    """One detector firing as logged to events.csv."""

    frame: int
    frame_delta: int
    bin: int
    strength: float
    payload: int


def write_events(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["frame", "frame_delta", "bin", "strength", "payload"])
        for row in rows:
            writer.writerow(
                [
                    row.frame,
                    row.frame_delta,
                    row.bin,
                    repr(float(row.strength)),
                    f"0x{row.payload:016x}",
                ]
            )


def read_events(path) -> list[EventRow]:
    rows = []
    with open(path, newline="") as fh:
        for record in csv.DictReader(fh):
            rows.append(
                EventRow(
                    frame=int(record["frame"]),
                    frame_delta=int(record["frame_delta"]),
                    bin=int(record["bin"]),
                    strength=float(record["strength"]),
                    payload=int(record["payload"], 16),
                )
            )
    return rows


def write_series(path, columns: dict[str, np.ndarray]) -> None:
    """Plot-ready per-frame series; all columns must share one length."""
    names = list(columns)
    arrays = [np.asarray(columns[n]) for n in names]
    lengths = {a.shape[0] for a in arrays}
    if len(lengths) != 1:
        raise ValueError(f"series columns differ in length: {sorted(lengths)}")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for i in range(arrays[0].shape[0]):
            writer.writerow(
                [
                    int(a[i]) if np.issubdtype(a.dtype, np.integer) else repr(float(a[i]))
                    for a in arrays
                ]
            )


def read_series(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        names = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    data = np.asarray(rows, dtype=np.float64) if rows else np.empty((0, len(names)))
    return {name: data[:, i] for i, name in enumerate(names)}


def scenario_to_dict(scenario: ScenarioConfig) -> dict:
    phases = []
    for phase in scenario.phases:
        entry: dict = {"name": phase.name, "frames": phase.frame_count, "events": phase.event_count}
        if phase.ramp is not None:
            entry["ramp"] = {"start": phase.ramp.start, "end": phase.ramp.end}
        else:
            entry["level"] = phase.broadband_level
        phases.append(entry)
    return {
        "seed": scenario.seed,
        "frame_size": scenario.frame_size,
        "sample_rate_hz": scenario.sample_rate_hz,
        "bins": list(scenario.bins.bins),
        "warmup_frames": scenario.warmup_frames,
        "magnitude_jitter": scenario.magnitude_jitter,
        "phases": phases,
        "events": {
            "target_bins": list(scenario.events.target_bins),
            "amplitude_ratio": scenario.events.amplitude_ratio,
            "duration_frames": scenario.events.duration_frames,
            "min_gap_frames": scenario.events.min_gap_frames,
        },
    }


def scenario_from_dict(data: dict) -> ScenarioConfig:
    try:
        phases = tuple(
            PhaseSpec(
                name=p["name"],
                frame_count=int(p["frames"]),
                broadband_level=float(p.get("level", 0.0)),
                ramp=Ramp(float(p["ramp"]["start"]), float(p["ramp"]["end"]))
                if "ramp" in p
                else None,
                event_count=int(p.get("events", 0)),
            )
            for p in data["phases"]
        )
        events = data["events"]
        return ScenarioConfig(
            seed=int(data["seed"]),
            frame_size=int(data["frame_size"]),
            sample_rate_hz=float(data["sample_rate_hz"]),
            bins=BinSet(tuple(data["bins"])),
            phases=phases,
            events=EventSpec(
                target_bins=tuple(events["target_bins"]),
                amplitude_ratio=float(events["amplitude_ratio"]),
                duration_frames=int(events.get("duration_frames", 1)),
                min_gap_frames=int(events.get("min_gap_frames", 1)),
            ),
            warmup_frames=int(data.get("warmup_frames", 67)),
            magnitude_jitter=float(data.get("magnitude_jitter", 0.1)),
        )
    except KeyError as exc:
        raise ValueError(f"scenario config missing field: {exc}") from exc


def pipeline_config_to_dict(config: PipelineConfig) -> dict:
    return {
        "frame_size": config.frame_size,
        "sample_rate_hz": config.sample_rate_hz,
        "bins": list(config.bins.bins),
        "fast_window": config.fast_window,
        "slow_window": config.slow_window,
        "threshold_coefficients": list(config.thresholds.coefficients),
        "tracker": config.tracker,
        "ema_alpha": config.ema_alpha,
        "warmup_frames": config.warmup_frames,
    }


def pipeline_config_from_dict(data: dict) -> PipelineConfig:
    try:
        bins = BinSet(tuple(data["bins"]))
        if "threshold_coefficients" in data:
            thresholds = ThresholdConfig(tuple(data["threshold_coefficients"]))
        elif "threshold" in data:
            thresholds = ThresholdConfig.uniform(float(data["threshold"]), len(bins))
        else:
            thresholds = None
        return PipelineConfig(
            frame_size=int(data["frame_size"]),
            sample_rate_hz=float(data["sample_rate_hz"]),
            bins=bins,
            fast_window=int(data.get("fast_window", 3)),
            slow_window=int(data.get("slow_window", 64)),
            thresholds=thresholds,
            tracker=data.get("tracker", "median"),
            ema_alpha=float(data.get("ema_alpha", 0.95)),
            warmup_frames=int(data["warmup_frames"]) if "warmup_frames" in data else None,
        )
    except KeyError as exc:
        raise ValueError(f"pipeline config missing field: {exc}") from exc


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump_json(path, payload: dict) -> None:
    """Stable serialization: sorted keys, two-space indent, trailing newline."""
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_scenario(path) -> ScenarioConfig:
    return scenario_from_dict(load_json(path))


def save_scenario(path, scenario: ScenarioConfig) -> None:
    dump_json(path, scenario_to_dict(scenario))


def load_pipeline_config(path) -> PipelineConfig:
    return pipeline_config_from_dict(load_json(path))


def save_pipeline_config(path, config: PipelineConfig) -> None:
    dump_json(path, pipeline_config_to_dict(config))


def ensure_dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
