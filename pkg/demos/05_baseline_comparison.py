"""Three detection paradigms on one stream: adaptive spectral, fixed
spectral, and decimated time-domain.

The fixed threshold is calibrated honestly on the quiet phase and then
drowns in false alarms when the ambient floor rises; the decimated
detector stays clean but sleeps through off-grid events; the adaptive
detector catches everything with zero false alarms.
"""

import numpy as np

from spectrig import (
    DecimationConfig,
    calibrate_fixed_thresholds,
    decimated_adaptive_detector,
    fixed_spectral_detector,
    generate,
    replica_scenario,
    run_stream,
    score,
)
from spectrig.cli import replica_pipeline_config
from spectrig.spectral import FftPlan, magnitude

scenario = replica_scenario(seed=42)
frames, truth = generate(scenario)
total = scenario.total_frames
warmup = scenario.warmup_frames
print(f"{total} frames, {len(truth)} true events, floor rises 5x across phases\n")

# --- proposed: adaptive spectral trigger ---
results = run_stream(replica_pipeline_config(scenario), frames)
proposed = score([r.frame_index for r in results if r.event], truth, total, warmup)

# --- baseline B: fixed spectral threshold, calibrated on the quiet phase ---
plan = FftPlan(scenario.frame_size)
mags = np.vstack([magnitude(plan(f.samples), scenario.bins).magnitudes for f in frames])
quiet = scenario.phases[0].frame_count
fixed_config = calibrate_fixed_thresholds(mags[:quiet])
fixed_flags = fixed_spectral_detector(mags, fixed_config)
fixed = score(np.flatnonzero(fixed_flags), truth, total, warmup)

# --- baseline A: decimated time-domain adaptive threshold ---
decimated_flags = decimated_adaptive_detector(frames, DecimationConfig(decimation_factor=4))
decimated = score(np.flatnonzero(decimated_flags), truth, total, warmup)

print("detector                     TP    FP    FN      TN")
for name, cm in [
    ("adaptive spectral (ours)", proposed),
    ("fixed spectral threshold", fixed),
    ("decimated time-domain", decimated),
]:
    print(f"{name:<26} {cm.tp:4d} {cm.fp:5d} {cm.fn:5d} {cm.tn:7d}")

print("\nfixed thresholds fail when the environment gets louder: every loud")
print("noise frame clears a threshold tuned for the quiet phase.")
print("decimation (D=4) misses whatever lands between inspected frames:")
print(f"  {sum(1 for iv in truth if iv.start_frame % 4 != 0)} of {len(truth)} events sit off the grid.")
