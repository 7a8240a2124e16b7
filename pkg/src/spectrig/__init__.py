"""Spectral event triggering with temporal noise-floor adaptation.

Library layout:
  spectral    frame/bin types and the radix-2 transform
  noisefloor  dual-stage cascaded median tracker (and an EMA variant)
  trigger     multiplicative threshold decisions and the 64-bit payload
  pipeline    per-frame detector, latency and memory accounting
  envsim      deterministic three-phase scenario generator + ground truth
  baselines   fixed-threshold and decimated comparison detectors
  evaluation  confusion scoring, traffic and payload metrics
  io          file formats (frame container, CSV logs, JSON configs)
  cli         generate / detect / eval / replica subcommands
"""

from .baselines import (
    DecimationConfig,
    FixedThresholdConfig,
    calibrate_fixed_thresholds,
    decimated_adaptive_detector,
    fixed_spectral_detector,
)
from .envsim import (
    EventInterval,
    EventSpec,
    GroundTruth,
    PhaseSpec,
    Ramp,
    ScenarioConfig,
    generate,
    replica_scenario,
)
from .evaluation import (
    ConfusionMatrix,
    DerivedMetrics,
    PhaseScore,
    TrafficStats,
    amplification,
    derive_metrics,
    payload_comparison,
    per_phase_scores,
    score,
    threshold_adaptation,
    traffic_stats,
)
from .noisefloor import EmaTracker, MedianBuffer, NoiseFloorState
from .pipeline import (
    FrameResult,
    Pipeline,
    PipelineConfig,
    latency_budget,
    run_stream,
    state_entry_count,
    state_memory_bytes,
)
from .spectral import BinSet, FftPlan, Frame, SpectralFeatures, fft, magnitude
from .trigger import (
    PAYLOAD_BITS,
    ThresholdConfig,
    TriggerEvent,
    decide_bin,
    decide_event,
    decode_event,
    encode_event,
    first_firing_bin,
    payload_from_bytes,
    payload_to_bytes,
)

__version__ = "0.1.0"

__all__ = [
    "BinSet",
    "ConfusionMatrix",
    "DecimationConfig",
    "DerivedMetrics",
    "EmaTracker",
    "EventInterval",
    "EventSpec",
    "FftPlan",
    "FixedThresholdConfig",
    "Frame",
    "FrameResult",
    "GroundTruth",
    "MedianBuffer",
    "NoiseFloorState",
    "PAYLOAD_BITS",
    "PhaseScore",
    "PhaseSpec",
    "Pipeline",
    "PipelineConfig",
    "Ramp",
    "ScenarioConfig",
    "SpectralFeatures",
    "ThresholdConfig",
    "TrafficStats",
    "TriggerEvent",
    "amplification",
    "calibrate_fixed_thresholds",
    "decide_bin",
    "decide_event",
    "decimated_adaptive_detector",
    "decode_event",
    "derive_metrics",
    "encode_event",
    "fft",
    "first_firing_bin",
    "fixed_spectral_detector",
    "generate",
    "latency_budget",
    "magnitude",
    "payload_comparison",
    "payload_from_bytes",
    "payload_to_bytes",
    "per_phase_scores",
    "replica_scenario",
    "run_stream",
    "score",
    "state_entry_count",
    "state_memory_bytes",
    "threshold_adaptation",
    "traffic_stats",
]
