#!/usr/bin/env python3
"""The full analysis pipeline over the bundled historical tables.

The bundled CSVs were measured on a 2013-era workstation; absolute
timings are history, but every derived quantity below is a reproducible
fact about the data: normalization, language/IO speedups, I/O
subtraction, and the traversal-order knee that brackets that machine's
cache size.
"""

from graybench import detect_knee, normalize, speedup, subtract_io
from graybench.analysis import format_bytes
from graybench.fixtures import fixture_names, load_fixture

print(f"{len(fixture_names())} bundled tables:")
for name in fixture_names():
    print(f"  {name}")

hs = load_fixture("hs")
il = load_fixture("c-clang-o3-il-double2d")
unix = load_fixture("c-clang-o3-unix-double2d")
unix_cm = load_fixture("c-clang-o3-unix-double2dt")
unix_empty = load_fixture("c-clang-o3-unix-empty")

# 1. normalization: cost per pixel stabilizes once sizes are non-trivial
points = normalize(hs, "min")
print("\nhs seconds/pixel at the largest sizes:")
for p in points[-3:]:
    print(f"  {p.pixels:>9} px: {p.seconds_per_pixel:.3e}")

# 2. software-stack speedups at the largest size
lang = {p.pixels: p.ratio for p in speedup(hs, il)}
io = {p.pixels: p.ratio for p in speedup(il, unix)}
print(f"\nC vs Haskell (same image library):  {lang[16777216]:.1f}x")
print(f"POSIX I/O vs image library (same C): {io[16777216]:.1f}x")

# 3. isolate computation by subtracting the empty (I/O only) variant
comp = subtract_io(unix, unix_empty)
print(f"\ncomputation-only time at 4194304 px: {comp.stat(4194304, 'min'):.6f} s")

# 4. where row-major and column-major diverge -> cache size bracket
report = detect_knee(unix, unix_cm, threshold=1.5)
print(f"\nrow/column traversal ratios (column-major / row-major):")
for p in report.ratios[-6:]:
    marker = "  <- knee" if p.pixels == report.knee_pixels else ""
    print(f"  {p.pixels:>9} px: {p.ratio:5.2f}{marker}")
print(
    f"cache size bracket: {format_bytes(report.cache_bytes_low)}"
    f" .. {format_bytes(report.cache_bytes_high)}"
)
