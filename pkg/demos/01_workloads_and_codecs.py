#!/usr/bin/env python3
"""Reference workloads and the netpbm codecs.

A benchmark input is not "an image": it is a pinned byte sequence. This
demo shows the reference size table, generates a workload file, and
round-trips it through the binary PPM codec.
"""

import tempfile
from pathlib import Path

from graybench import decode_ppm, encode_ppm, generate_image
from graybench.workloads import materialize, reference_sizes

sizes = reference_sizes()
print(f"{len(sizes)} reference sizes, from "
      f"{sizes[0].width}x{sizes[0].height} ({sizes[0].pixels} px) to "
      f"{sizes[-1].width}x{sizes[-1].height} ({sizes[-1].pixels} px)")
print("the grid mixes binary and decimal powers, e.g.:")
for spec in sizes:
    if spec.pixels in (999424, 1048576):
        print(f"  {spec.width}x{spec.height} = {spec.pixels} px")

# generation is a pure function of (width, height, seed): the same triple
# yields the same bytes on any machine, so results stay comparable
img = generate_image(64, 31, 7)
again = generate_image(64, 31, 7)
print(f"\ngenerate_image(64, 31, 7) twice -> identical bytes: "
      f"{img.tobytes() == again.tobytes()}")

data = encode_ppm(img)
print(f"encoded PPM: {len(data)} bytes, header {data[:11]!r}")
print(f"decode(encode(img)) == img: {decode_ppm(data) == img}")

with tempfile.TemporaryDirectory() as tmp:
    for spec in sizes[:5]:
        path = materialize(spec, Path(tmp))
        print(f"materialized {path.name}: {path.stat().st_size} bytes")
