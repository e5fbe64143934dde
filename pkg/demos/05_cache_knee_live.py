#!/usr/bin/env python3
"""Probe this machine's cache with the traversal-order experiment.

Runs the row-major and column-major variants over a ladder of working-set
sizes and looks for the point where their timings persistently diverge.
On most machines the column-major walk collapses once a full image row no
longer fits in cache alongside the output. Expect a couple of minutes.
"""

import tempfile

from graybench import Series, TargetSpec, Variant, detect_knee, run_suite
from graybench.analysis import format_bytes
from graybench.workloads import select_sizes

specs = select_sizes("65536..4194304")
print(f"timing {len(specs)} sizes from {specs[0].pixels} to {specs[-1].pixels} px")

with tempfile.TemporaryDirectory() as tmp:
    rm = run_suite(TargetSpec.builtin(Variant.DOUBLE2D_RM), specs, reps=3, workdir=tmp)
    cm = run_suite(TargetSpec.builtin(Variant.DOUBLE2D_CM), specs, reps=3, workdir=tmp)

rm_series = Series.from_records("rm", rm.records)
cm_series = Series.from_records("cm", cm.records)

print(f"\n{'pixels':>9} {'rm min':>10} {'cm min':>10} {'ratio':>7}")
for a, b in zip(rm_series.points, cm_series.points):
    print(f"{a.pixels:>9} {a.min:>10.4f} {b.min:>10.4f} {b.min / a.min:>7.2f}")

report = detect_knee(rm_series, cm_series, threshold=1.5)
if report.knee_pixels is None:
    print("\nno persistent divergence in this range on this machine")
else:
    print(f"\nknee at {report.knee_pixels} px")
    if report.cache_bytes_low is not None:
        print(
            f"cache size bracket: {format_bytes(report.cache_bytes_low)}"
            f" .. {format_bytes(report.cache_bytes_high)}"
        )
