#!/usr/bin/env python3
"""Measuring a target: min-of-N wall clock over the reference workloads.

Each workload is materialized once and the target runs five times
back-to-back; the minimum is the headline number (the least
noise-contaminated estimate), with avg and max kept alongside. The timed
span covers read + convert + write, so these are system measurements, not
pure-compute ones. Results are persisted as CSV next to a manifest that
records the platform.
"""

import tempfile
from pathlib import Path

from graybench import Series, TargetSpec, Variant, capture_manifest, emit_csv, run_suite
from graybench.matrix import format_manifest
from graybench.workloads import select_sizes

target = TargetSpec.builtin(Variant.DOUBLE1D)
specs = select_sizes("first:10")

result = run_suite(target, specs, reps=5)
print(f"{'pixels':>8} {'min':>12} {'avg':>12} {'max':>12}")
for r in result.records:
    print(f"{r.pixels:>8} {r.min:>12.6f} {r.avg:>12.6f} {r.max:>12.6f}")

out = Path(tempfile.mkdtemp()) / "double1d.csv"
emit_csv(Series.from_records(target.label, result.records), out)
manifest = capture_manifest()
out.with_suffix(".manifest").write_text(format_manifest({target.label: manifest}))
print(f"\nwrote {out}")
print(f"platform: {manifest.platform_line()}")
print(f"timer resolution: {manifest.timer_resolution_seconds} s")
