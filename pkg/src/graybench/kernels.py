"""Grayscale conversion variants as individually timeable kernels.

Each variant computes the same per-pixel luminance but walks memory
differently, so the variants stress the machine differently even though
their outputs agree:

* ``double2d_rm``  - float64, Python loop over rows, inner vector op runs
  along contiguous row memory (row-major traversal);
* ``double2d_cm``  - float64, Python loop over columns, inner vector op
  strides by a full row (column-major traversal);
* ``double1d``     - float64, one flattened vector op over all pixels;
* ``float1d``      - float32 flattened;
* ``int1d``        - fixed-point integer flattened;
* ``empty``        - no arithmetic, zero-filled output of the same size
  (isolates file/codec overhead when timed).

The three float64 variants are byte-for-byte identical because the
per-pixel arithmetic is order-independent. The traversal structures must
stay distinct: collapsing them into one shared implementation would defeat
the point of timing them separately. Kernels are pure and single-threaded.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .imagekit import GrayImage, Image


@dataclass(frozen=True)
class GrayscaleCoefficients:
    """Luminance weights, in float and /256 fixed-point renderings.

    The decimal weights sum to exactly 1.00 and the integer weights sum to
    exactly 2**fixed_shift, so a white pixel maps to 255 on both paths.
    """

    cr: float = 0.3
    cg: float = 0.59
    cb: float = 0.11
    fixed_r: int = 77
    fixed_g: int = 151
    fixed_b: int = 28
    fixed_shift: int = 8

    def __post_init__(self):
        if self.fixed_r + self.fixed_g + self.fixed_b != 1 << self.fixed_shift:
            raise ValueError("fixed-point weights must sum to 2**fixed_shift")


COEFFICIENTS = GrayscaleCoefficients()


class Variant(enum.Enum):
    """Closed set of kernel variants."""

    DOUBLE2D_RM = "double2d_rm"
    DOUBLE2D_CM = "double2d_cm"
    DOUBLE1D = "double1d"
    FLOAT1D = "float1d"
    INT1D = "int1d"
    EMPTY = "empty"

    @classmethod
    def parse(cls, name: str) -> "Variant":
        for variant in cls:
            if variant.value == name:
                return variant
        valid = ", ".join(v.value for v in cls)
        raise ValueError(f"unknown variant {name!r} (expected one of: {valid})")

    @property
    def corpus_name(self) -> str:
        """Source-file stem used by the C corpus and result labels."""
        return _CORPUS_NAMES[self]

    def __str__(self) -> str:
        return self.value


_CORPUS_NAMES = {
    Variant.DOUBLE2D_RM: "double2d",
    Variant.DOUBLE2D_CM: "double2dt",
    Variant.DOUBLE1D: "double1d",
    Variant.FLOAT1D: "float1d",
    Variant.INT1D: "int1d",
    Variant.EMPTY: "empty",
}


def _check_channels(r: int, g: int, b: int) -> None:
    for name, v in (("r", r), ("g", g), ("b", b)):
        if not 0 <= v <= 255:
            raise ValueError(f"channel {name} out of range: {v}")


def gray_pixel_double(r: int, g: int, b: int) -> int:
    """Float64 luminance: 0.3*r + 0.59*g + 0.11*b, clamped, truncated.

    Truncation toward zero mirrors a C double-to-byte cast.
    """
    _check_channels(r, g, b)
    c = COEFFICIENTS
    v = c.cr * r + c.cg * g + c.cb * b
    if v < 0.0:
        v = 0.0
    elif v > 255.0:
        v = 255.0
    return int(v)


def gray_pixel_int(r: int, g: int, b: int) -> int:
    """Fixed-point luminance: (77*r + 151*g + 28*b) >> 8, pure integers."""
    _check_channels(r, g, b)
    c = COEFFICIENTS
    return (c.fixed_r * r + c.fixed_g * g + c.fixed_b * b) >> c.fixed_shift


def _finish_float(v: np.ndarray) -> np.ndarray:
    # clamp before the cast: float rounding may land just above 255.0
    return np.clip(v, 0.0, 255.0).astype(np.uint8)


def _convert_rows_double(px: np.ndarray) -> np.ndarray:
    h, w, _ = px.shape
    out = np.empty((h, w), dtype=np.uint8)
    c = COEFFICIENTS
    for y in range(h):
        row = px[y].astype(np.float64)
        out[y] = _finish_float(c.cr * row[:, 0] + c.cg * row[:, 1] + c.cb * row[:, 2])
    return out


def _convert_cols_double(px: np.ndarray) -> np.ndarray:
    h, w, _ = px.shape
    out = np.empty((h, w), dtype=np.uint8)
    c = COEFFICIENTS
    for x in range(w):
        col = px[:, x, :].astype(np.float64)
        out[:, x] = _finish_float(
            c.cr * col[:, 0] + c.cg * col[:, 1] + c.cb * col[:, 2]
        )
    return out


def _convert_flat_double(px: np.ndarray) -> np.ndarray:
    h, w, _ = px.shape
    flat = px.reshape(-1, 3).astype(np.float64)
    c = COEFFICIENTS
    v = c.cr * flat[:, 0] + c.cg * flat[:, 1] + c.cb * flat[:, 2]
    return _finish_float(v).reshape(h, w)


def _convert_flat_float32(px: np.ndarray) -> np.ndarray:
    h, w, _ = px.shape
    flat = px.reshape(-1, 3).astype(np.float32)
    c = COEFFICIENTS
    v = (
        np.float32(c.cr) * flat[:, 0]
        + np.float32(c.cg) * flat[:, 1]
        + np.float32(c.cb) * flat[:, 2]
    )
    return _finish_float(v).reshape(h, w)


def _convert_flat_int(px: np.ndarray) -> np.ndarray:
    h, w, _ = px.shape
    flat = px.reshape(-1, 3).astype(np.int32)
    c = COEFFICIENTS
    v = c.fixed_r * flat[:, 0] + c.fixed_g * flat[:, 1] + c.fixed_b * flat[:, 2]
    return (v >> c.fixed_shift).astype(np.uint8).reshape(h, w)


def _convert_empty(px: np.ndarray) -> np.ndarray:
    h, w, _ = px.shape
    return np.zeros((h, w), dtype=np.uint8)


_CONVERTERS = {
    Variant.DOUBLE2D_RM: _convert_rows_double,
    Variant.DOUBLE2D_CM: _convert_cols_double,
    Variant.DOUBLE1D: _convert_flat_double,
    Variant.FLOAT1D: _convert_flat_float32,
    Variant.INT1D: _convert_flat_int,
    Variant.EMPTY: _convert_empty,
}


def run_variant(variant: Variant, image: Image) -> GrayImage:
    """Convert ``image`` with the chosen variant; dimensions are preserved."""
    gray = _CONVERTERS[variant](image.pixels)
    return GrayImage(image.width, image.height, gray)
