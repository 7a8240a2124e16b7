"""Command-line front end: generate scenarios, run detectors, score results."""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .baselines import (
    DecimationConfig,
    calibrate_fixed_thresholds,
    decimated_adaptive_detector,
    fixed_spectral_detector,
)
from .envsim import GENERATOR_ID, ScenarioConfig, generate, replica_scenario
from .evaluation import (
    derive_metrics,
    per_phase_scores,
    payload_comparison,
    score,
    threshold_adaptation,
    traffic_stats,
)
from .pipeline import Pipeline, PipelineConfig
from .spectral import magnitude, FftPlan
from .trigger import PAYLOAD_BITS, TriggerEvent, encode_event

BITS_PER_FEATURE = 16


def replica_pipeline_config(scenario: ScenarioConfig, tracker: str = "median") -> PipelineConfig:
    """Detector settings used for the one-shot replica run."""
    return PipelineConfig(
        frame_size=scenario.frame_size,
        sample_rate_hz=scenario.sample_rate_hz,
        bins=scenario.bins,
        fast_window=3,
        slow_window=64,
        tracker=tracker,
        warmup_frames=scenario.warmup_frames,
    )


def _finite_or_none(value):
    if value is None:
        return None
    return value if math.isfinite(value) else None


def _run_proposed(frames, config: PipelineConfig):
    """Run the pipeline over frames; return (event rows, series columns)."""
    pipeline = Pipeline(config)
    results = pipeline.run_stream(frames)

    rows = []
    total = len(results)
    rms = np.empty(total)
    feature = np.empty(total)
    threshold = np.empty(total)
    margin = np.empty(total)
    flags = np.zeros(total, dtype=np.int64)
    for i, result in enumerate(results):
        rms[i] = float(np.sqrt(np.mean(np.square(frames[i].samples))))
        pos = int(np.argmax(result.margins))
        feature[i] = result.features.magnitudes[pos]
        margin[i] = result.margins[pos]
        threshold[i] = feature[i] - margin[i]
        flags[i] = result.event
        if result.event_record is not None:
            record = result.event_record
            rows.append(
                io.EventRow(
                    frame=result.frame_index,
                    frame_delta=record.frame_delta,
                    bin=record.bin_id,
                    strength=record.strength,
                    payload=encode_event(record),
                )
            )
    series = {
        "frame": np.arange(total, dtype=np.int64),
        "rms": rms,
        "feature": feature,
        "threshold": threshold,
        "margin": margin,
        "event": flags,
    }
    return rows, series


def _features_for(frames, config: PipelineConfig) -> np.ndarray:
    plan = FftPlan(config.frame_size)
    mags = [magnitude(plan(f.samples), config.bins, f.frame_index).magnitudes for f in frames]
    return np.vstack(mags)


def _rows_from_flags(frames_fired, bins, strengths):
    """Delta-encode a plain flag stream into event rows."""
    rows = []
    previous = None
    for frame, bin_id, strength in zip(frames_fired, bins, strengths):
        delta = frame if previous is None else frame - previous
        event = TriggerEvent(frame_delta=delta, bin_id=bin_id, strength=strength)
        rows.append(
            io.EventRow(
                frame=frame,
                frame_delta=delta,
                bin=bin_id,
                strength=strength,
                payload=encode_event(event),
            )
        )
        previous = frame
    return rows


def _run_fixed(frames, config: PipelineConfig, calib_frames: int):
    mags = _features_for(frames, config)
    if calib_frames < 1 or calib_frames > len(frames):
        raise ValueError("--calib-frames must be within the frame stream")
    fixed = calibrate_fixed_thresholds(mags[:calib_frames])
    flags = fixed_spectral_detector(mags, fixed)
    thresholds = fixed.as_array()
    fired = np.flatnonzero(flags)
    bins = []
    strengths = []
    for t in fired:
        over = np.flatnonzero(mags[t] > thresholds)
        pos = int(over[0])
        bins.append(config.bins.bins[pos])
        strengths.append(float(mags[t, pos] / thresholds[pos]))
    return _rows_from_flags(fired.tolist(), bins, strengths)


def _run_decimated(frames, decimation: DecimationConfig):
    flags = decimated_adaptive_detector(frames, decimation)
    fired = np.flatnonzero(flags).tolist()
    # Time-domain detector: no spectral bin to report.
    return _rows_from_flags(fired, [0] * len(fired), [0.0] * len(fired))


def build_metrics(
    event_frames,
    truth,
    total_frames: int,
    warmup_frames: int,
    phase_bounds=None,
    threshold_series=None,
    monitored_bins: int | None = None,
) -> dict:
    """Assemble the full metrics document (JSON-ready)."""
    cm = score(event_frames, truth, total_frames, warmup_frames)
    derived = derive_metrics(cm)
    transmitted = len({int(f) for f in event_frames if int(f) >= warmup_frames})
    document = {
        "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn, "total": cm.total},
        "derived": {
            "sensitivity": derived.sensitivity,
            "specificity": derived.specificity,
            "precision": derived.precision,
            "accuracy": derived.accuracy,
            "false_alarm_rate": derived.false_alarm_rate,
        },
        "frames": {"total": total_frames, "warmup_excluded": warmup_frames},
        "events_transmitted": transmitted,
    }
    if monitored_bins is not None:
        traffic = traffic_stats(
            total_frames, transmitted, monitored_bins, BITS_PER_FEATURE, PAYLOAD_BITS
        )
        document["traffic"] = {
            "data_reduction": traffic.data_reduction,
            "feature_stream_bits": traffic.feature_stream_bits,
            "trigger_stream_bits": traffic.trigger_stream_bits,
            "reduction_factor": _finite_or_none(traffic.reduction_factor),
        }
    if phase_bounds is not None:
        phase_rows = per_phase_scores(event_frames, truth, phase_bounds, warmup_frames)
        document["per_phase"] = [
            {
                "name": p.name,
                "start_frame": p.start_frame,
                "end_frame": p.end_frame,
                "true_events": p.true_events,
                "detected_events": p.detected_events,
                "missed_events": p.missed_events,
                "false_positives": p.false_positives,
            }
            for p in phase_rows
        ]
        if threshold_series is not None:
            summary = threshold_adaptation(threshold_series, phase_bounds, warmup_frames)
            document["threshold"] = {
                "min": summary.minimum,
                "max": summary.maximum,
                "settled_first_phase": summary.settled_first_phase,
                "settled_last_phase": summary.settled_last_phase,
                "adaptation_ratio": _finite_or_none(summary.adaptation_ratio),
            }
            series = np.asarray(threshold_series, dtype=np.float64)
            for entry, (_, start, end) in zip(document["per_phase"], phase_bounds):
                lo = max(start, warmup_frames)
                window = series[lo:end]
                entry["threshold_min"] = float(window.min())
                entry["threshold_max"] = float(window.max())
    return document


def _write_metrics_files(out_dir: Path, metrics: dict) -> None:
    io.dump_json(out_dir / "metrics.json", metrics)
    with open(out_dir / "confusion.csv", "w", newline="") as fh:
        fh.write("tp,fp,fn,tn\n")
        cm = metrics["confusion"]
        fh.write(f"{cm['tp']},{cm['fp']},{cm['fn']},{cm['tn']}\n")
    if "per_phase" in metrics:
        with open(out_dir / "per_phase.csv", "w", newline="") as fh:
            fh.write(
                "name,start_frame,end_frame,true_events,detected_events,missed_events,false_positives\n"
            )
            for p in metrics["per_phase"]:
                fh.write(
                    f"{p['name']},{p['start_frame']},{p['end_frame']},{p['true_events']},"
                    f"{p['detected_events']},{p['missed_events']},{p['false_positives']}\n"
                )


def _print_metrics(metrics: dict, fmt: str) -> None:
    if fmt == "json":
        import json

        print(json.dumps(metrics, indent=2, sort_keys=True))
    else:
        cm = metrics["confusion"]
        print("metric,value")
        for key in ("tp", "fp", "fn", "tn"):
            print(f"{key},{cm[key]}")
        for key, value in sorted(metrics["derived"].items()):
            print(f"{key},{value}")


def cmd_generate(args) -> int:
    scenario = io.load_scenario(args.config)
    if args.seed is not None:
        scenario = dataclasses.replace(scenario, seed=args.seed)
    out_dir = io.ensure_dir(args.out_dir)
    frames, truth = generate(scenario)
    io.write_frames(out_dir / "frames.bin", frames)
    io.write_truth(out_dir / "truth.csv", truth)
    io.save_scenario(out_dir / "scenario.json", scenario)
    print(f"generated {len(frames)} frames, {len(truth)} events -> {out_dir}")
    return 0


def _resolve_pipeline_config(args, frames) -> PipelineConfig:
    if args.config is not None:
        config = io.load_pipeline_config(args.config)
    else:
        scenario = replica_scenario()
        if frames[0].size != scenario.frame_size:
            raise ValueError(
                "frame size differs from the built-in defaults; pass --config"
            )
        config = replica_pipeline_config(
            dataclasses.replace(scenario, sample_rate_hz=frames[0].sample_rate_hz)
        )
    if args.tracker is not None:
        config = dataclasses.replace(config, tracker=args.tracker)
    return config


def cmd_detect(args) -> int:
    frames = io.read_frames(args.frames)
    config = _resolve_pipeline_config(args, frames)
    out_dir = io.ensure_dir(args.out_dir)

    if args.detector == "proposed":
        rows, series = _run_proposed(frames, config)
        io.write_series(out_dir / "series.csv", series)
    elif args.detector == "fixed":
        rows = _run_fixed(frames, config, args.calib_frames)
    elif args.detector == "decimated":
        rows = _run_decimated(frames, DecimationConfig(decimation_factor=args.decimation))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown detector {args.detector}")

    io.write_events(out_dir / "events.csv", rows)
    io.save_pipeline_config(out_dir / "pipeline.json", config)
    print(f"detector={args.detector} events={len(rows)} -> {out_dir}")
    return 0


def cmd_eval(args) -> int:
    events = io.read_events(args.events)
    truth = io.read_truth(args.truth)
    out_dir = io.ensure_dir(args.out_dir)

    phase_bounds = None
    threshold_series = None
    monitored_bins = None
    if args.scenario is not None:
        scenario = io.load_scenario(args.scenario)
        total_frames = scenario.total_frames
        warmup = scenario.warmup_frames
        phase_bounds = scenario.phase_bounds()
        monitored_bins = len(scenario.bins)
    else:
        if args.total_frames is None:
            raise ValueError("pass --scenario or --total-frames")
        total_frames = args.total_frames
        warmup = args.warmup_frames
    if args.series is not None:
        threshold_series = io.read_series(args.series)["threshold"]

    metrics = build_metrics(
        [row.frame for row in events],
        truth,
        total_frames,
        warmup,
        phase_bounds=phase_bounds,
        threshold_series=threshold_series,
        monitored_bins=monitored_bins,
    )
    _write_metrics_files(out_dir, metrics)
    _print_metrics(metrics, args.format)
    return 0


def cmd_replica(args) -> int:
    started = time.monotonic()
    scenario = replica_scenario(seed=args.seed)
    pipeline_config = replica_pipeline_config(scenario, tracker=args.tracker)
    out_dir = io.ensure_dir(args.out_dir)

    frames, truth = generate(scenario)
    io.write_frames(out_dir / "frames.bin", frames)
    io.write_truth(out_dir / "truth.csv", truth)
    io.save_scenario(out_dir / "scenario.json", scenario)

    rows, series = _run_proposed(frames, pipeline_config)
    io.write_events(out_dir / "events.csv", rows)
    io.write_series(out_dir / "series.csv", series)
    io.save_pipeline_config(out_dir / "pipeline.json", pipeline_config)

    metrics = build_metrics(
        [row.frame for row in rows],
        truth,
        scenario.total_frames,
        scenario.warmup_frames,
        phase_bounds=scenario.phase_bounds(),
        threshold_series=series["threshold"],
        monitored_bins=len(scenario.bins),
    )
    _write_metrics_files(out_dir, metrics)

    report = {
        "config": {
            "scenario": io.scenario_to_dict(scenario),
            "pipeline": io.pipeline_config_to_dict(pipeline_config),
            "detector": "proposed",
            "generator": GENERATOR_ID,
        },
        "metrics": metrics,
        "payload_comparison_bits": payload_comparison(),
        "files": {
            "frames": "frames.bin",
            "truth": "truth.csv",
            "events": "events.csv",
            "series": "series.csv",
            "metrics": "metrics.json",
        },
    }
    io.dump_json(out_dir / "report.json", report)

    _print_metrics(metrics, args.format)
    # Wall-clock time is reported here only; files stay byte-reproducible.
    elapsed = time.monotonic() - started
    print(f"replica seed={args.seed} runtime_seconds={elapsed:.3f} -> {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectrig",
        description="Spectral event triggering with temporal noise-floor adaptation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="scenario config -> frames + ground truth")
    p_gen.add_argument("--config", required=True, help="scenario JSON file")
    p_gen.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p_gen.add_argument("--out-dir", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_det = sub.add_parser("detect", help="frames + detector choice -> events")
    p_det.add_argument("--frames", required=True, help="frames.bin container")
    p_det.add_argument("--config", default=None, help="pipeline JSON file")
    p_det.add_argument(
        "--detector", choices=("proposed", "fixed", "decimated"), default="proposed"
    )
    p_det.add_argument("--tracker", choices=("median", "ema"), default=None)
    p_det.add_argument(
        "--calib-frames",
        type=int,
        default=500,
        help="fixed detector: leading frames used for mean+3*sigma calibration",
    )
    p_det.add_argument(
        "--decimation", type=int, default=4, help="decimated detector: frame stride"
    )
    p_det.add_argument("--out-dir", required=True)
    p_det.set_defaults(func=cmd_detect)

    p_eval = sub.add_parser("eval", help="events + truth -> metrics")
    p_eval.add_argument("--events", required=True)
    p_eval.add_argument("--truth", required=True)
    p_eval.add_argument("--scenario", default=None, help="scenario JSON for frame/phase layout")
    p_eval.add_argument("--series", default=None, help="series.csv for threshold statistics")
    p_eval.add_argument("--total-frames", type=int, default=None)
    p_eval.add_argument("--warmup-frames", type=int, default=0)
    p_eval.add_argument("--format", choices=("json", "csv"), default="json")
    p_eval.add_argument("--out-dir", required=True)
    p_eval.set_defaults(func=cmd_eval)

    p_rep = sub.add_parser(
        "replica", help="one-shot three-phase experiment: generate + detect + eval"
    )
    p_rep.add_argument("--seed", type=int, default=42)
    p_rep.add_argument("--tracker", choices=("median", "ema"), default="median")
    p_rep.add_argument("--format", choices=("json", "csv"), default="json")
    p_rep.add_argument("--out-dir", required=True)
    p_rep.set_defaults(func=cmd_replica)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
