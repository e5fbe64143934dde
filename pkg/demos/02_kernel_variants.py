#!/usr/bin/env python3
"""The conversion variants: same function, different machine behavior.

Six kernels compute (or skip) the same luminance 0.3r + 0.59g + 0.11b.
They differ in traversal order, loop structure, and arithmetic type —
exactly the axes along which machine code, not the algorithm, determines
performance. Their outputs must agree: bit-exact across the float64
variants, within one gray level for the float32 and integer ones.
"""

import numpy as np

from graybench import Variant, generate_image, run_variant

img = generate_image(256, 195, 42)
outputs = {v: run_variant(v, img) for v in Variant}

rm = outputs[Variant.DOUBLE2D_RM]
print("double2d_rm == double2d_cm:",
      rm == outputs[Variant.DOUBLE2D_CM])
print("double2d_rm == double1d:   ",
      rm == outputs[Variant.DOUBLE1D])

base = outputs[Variant.DOUBLE1D].pixels.astype(int)
for v in (Variant.FLOAT1D, Variant.INT1D):
    diff = np.abs(outputs[v].pixels.astype(int) - base)
    print(f"max |{v} - double1d| per sample: {diff.max()}")

print("empty output is all zero:  ", not outputs[Variant.EMPTY].pixels.any())

# corner pixels: white must stay white on every arithmetic path
from graybench import gray_pixel_double, gray_pixel_int

print("\nper-pixel checks:")
for rgb in [(255, 255, 255), (0, 0, 0), (255, 0, 0), (0, 255, 0), (0, 0, 255)]:
    print(f"  {rgb}: double={gray_pixel_double(*rgb):3d}  int={gray_pixel_int(*rgb):3d}")
