#!/usr/bin/env python3
"""Same C source, different machine code: the compiler/flag matrix.

Builds the C corpus at two optimization levels, runs every binary over a
few workloads, and compares. The sources never change; only the flags do.
Requires a C compiler on PATH (cc).
"""

import shutil
import sys
import tempfile
from pathlib import Path

from graybench import Series, TargetSpec, run_suite, speedup
from graybench.kernels import Variant
from graybench.matrix import CompilerSpec, FlagSet, build_external
from graybench.workloads import select_sizes

if shutil.which("cc") is None:
    sys.exit("this demo needs a C compiler (cc) on PATH")

corpus = Path(__file__).resolve().parent.parent / "corpus"
cc = CompilerSpec("cc", "cc")
flag_sets = [FlagSet("o0", ("-O0",)), FlagSet("o3", ("-O3",))]
variants = [Variant.DOUBLE1D, Variant.INT1D]
specs = select_sizes("262144..4194304")

results = {}
with tempfile.TemporaryDirectory() as tmp:
    for flags in flag_sets:
        for variant in variants:
            built = build_external(variant, cc, flags, corpus, Path(tmp) / "build")
            label = built.executable.name
            print(f"built {label}  [{built.manifest.compiler_version}]")
            suite = run_suite(
                TargetSpec.external(built.executable, label=label),
                specs, reps=3, workdir=tmp,
            )
            results[(flags.label, variant)] = Series.from_records(label, suite.records)

print(f"\n{'variant':>10} {'pixels':>9} {'-O0 min':>10} {'-O3 min':>10} {'gain':>6}")
for variant in variants:
    o0 = results[("o0", variant)]
    o3 = results[("o3", variant)]
    for point in speedup(o0, o3):
        o0_min = o0.stat(point.pixels, "min")
        o3_min = o3.stat(point.pixels, "min")
        print(
            f"{variant.value:>10} {point.pixels:>9} {o0_min:>10.4f} "
            f"{o3_min:>10.4f} {point.ratio:>6.2f}x"
        )
