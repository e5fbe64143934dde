"""Raster types, deterministic image synthesis, and binary PPM/PGM codecs.

Images are stored as C-order numpy arrays: ``(height, width, 3)`` uint8 for
RGB, ``(height, width)`` uint8 for grayscale, so "row-major pixel sequence"
and "memory order" are the same thing.

The synthetic generator is pinned to a specific 64-bit LCG so that any
reimplementation, in any language, produces byte-identical workload files
from the same (width, height, seed) triple.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import (
    InvalidDimensionError,
    NetpbmFormatError,
    TruncatedPayloadError,
    UnsupportedMaxvalError,
)

# Pinned PRNG contract: state <- state * MULT + INC (mod 2^64), output = top byte.
# A zero seed is replaced so the stream never starts from the fixed point 0.
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
ZERO_SEED_STATE = 0x9E3779B97F4A7C15

_WHITESPACE = b" \t\n\r\x0b\x0c"


class Rgb8(NamedTuple):
    """One 8-bit RGB sample."""

    r: int
    g: int
    b: int


def _check_dims(width: int, height: int) -> None:
    if width < 1 or height < 1:
        raise InvalidDimensionError(
            f"image dimensions must be >= 1, got {width}x{height}"
        )


class Image:
    """8-bit RGB raster with explicit dimensions.

    ``pixels`` is a ``(height, width, 3)`` uint8 array; rows run top to
    bottom and samples within a row are contiguous in memory.
    """

    __slots__ = ("width", "height", "pixels")

    def __init__(self, width: int, height: int, pixels: np.ndarray):
        _check_dims(width, height)
        arr = np.asarray(pixels, dtype=np.uint8)
        if arr.shape != (height, width, 3):
            raise InvalidDimensionError(
                f"pixel array shape {arr.shape} does not match "
                f"(height={height}, width={width}, 3)"
            )
        self.width = width
        self.height = height
        self.pixels = arr

    @classmethod
    def from_bytes(cls, width: int, height: int, data: bytes) -> "Image":
        """Build an image from a flat row-major RGB byte string."""
        _check_dims(width, height)
        if len(data) != 3 * width * height:
            raise InvalidDimensionError(
                f"expected {3 * width * height} bytes, got {len(data)}"
            )
        arr = np.frombuffer(data, dtype=np.uint8).reshape(height, width, 3)
        return cls(width, height, arr)

    def tobytes(self) -> bytes:
        return np.ascontiguousarray(self.pixels).tobytes()

    def pixel(self, x: int, y: int) -> Rgb8:
        r, g, b = self.pixels[y, x]
        return Rgb8(int(r), int(g), int(b))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.width, self.height, self.tobytes()))

    def __repr__(self) -> str:
        return f"Image({self.width}x{self.height})"


class GrayImage:
    """8-bit grayscale raster, ``(height, width)`` uint8."""

    __slots__ = ("width", "height", "pixels")

    def __init__(self, width: int, height: int, pixels: np.ndarray):
        _check_dims(width, height)
        arr = np.asarray(pixels, dtype=np.uint8)
        if arr.shape != (height, width):
            raise InvalidDimensionError(
                f"pixel array shape {arr.shape} does not match "
                f"(height={height}, width={width})"
            )
        self.width = width
        self.height = height
        self.pixels = arr

    @classmethod
    def from_bytes(cls, width: int, height: int, data: bytes) -> "GrayImage":
        _check_dims(width, height)
        if len(data) != width * height:
            raise InvalidDimensionError(
                f"expected {width * height} bytes, got {len(data)}"
            )
        arr = np.frombuffer(data, dtype=np.uint8).reshape(height, width)
        return cls(width, height, arr)

    def tobytes(self) -> bytes:
        return np.ascontiguousarray(self.pixels).tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.width, self.height, self.tobytes()))

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


def lcg_stream(count: int, seed: int, _block: int = 1 << 16) -> np.ndarray:
    """Return ``count`` bytes of the pinned LCG stream as a uint8 array.

    Vectorized with affine jumps: after k steps the state is
    ``a^k * s + c * (a^(k-1) + ... + 1)  (mod 2^64)``, so a block of
    successive states is one fused multiply-add over precomputed
    coefficient tables. uint64 arithmetic wraps mod 2^64 by construction.
    """
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    state = np.uint64(seed if seed != 0 else ZERO_SEED_STATE)
    out = np.empty(count, dtype=np.uint8)
    if count == 0:
        return out
    block = min(count, _block)
    with np.errstate(over="ignore"):
        powers = np.cumprod(np.full(block, LCG_MULTIPLIER, dtype=np.uint64))
        sums = np.empty(block, dtype=np.uint64)
        sums[0] = 1
        if block > 1:
            np.cumsum(powers[:-1], out=sums[1:])
            sums[1:] += np.uint64(1)
        adds = sums * np.uint64(LCG_INCREMENT)
        pos = 0
        while pos < count:
            n = min(block, count - pos)
            states = powers[:n] * state + adds[:n]
            out[pos : pos + n] = (states >> np.uint64(56)).astype(np.uint8)
            state = states[-1]
            pos += n
    return out


def generate_image(width: int, height: int, seed: int) -> Image:
    """Deterministic noise image; bytes depend only on (width, height, seed)."""
    _check_dims(width, height)
    data = lcg_stream(3 * width * height, seed)
    return Image(width, height, data.reshape(height, width, 3))


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next header token, skipping whitespace and '#' comment lines."""
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == ord("#"):
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise NetpbmFormatError("unterminated comment in header")
            pos = nl + 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
        pos += 1
    if start == pos:
        raise NetpbmFormatError("truncated header")
    return data[start:pos], pos


def _parse_header(data: bytes, magic: bytes) -> tuple[int, int, int]:
    """Parse a netpbm header; returns (width, height, payload offset)."""
    got, pos = _read_token(data, 0)
    if got != magic:
        raise NetpbmFormatError(f"expected magic {magic!r}, got {got!r}")
    fields = []
    for name in ("width", "height", "maxval"):
        token, pos = _read_token(data, pos)
        if not token.isdigit():
            raise NetpbmFormatError(f"non-numeric {name} token {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise UnsupportedMaxvalError(f"only maxval 255 is supported, got {maxval}")
    _check_dims(width, height)
    # exactly one whitespace byte separates the maxval from the payload
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise NetpbmFormatError("missing whitespace after maxval")
    return width, height, pos + 1


def encode_ppm(image: Image) -> bytes:
    """Binary PPM (P6), fixed header grammar ``P6\\n<w> <h>\\n255\\n``."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.tobytes()


def decode_ppm(data: bytes) -> Image:
    """Parse binary PPM (P6); liberal in header whitespace and comments."""
    width, height, offset = _parse_header(data, b"P6")
    need = 3 * width * height
    payload = data[offset : offset + need]
    if len(payload) < need:
        raise TruncatedPayloadError(
            f"payload holds {len(payload)} of {need} expected bytes"
        )
    return Image.from_bytes(width, height, payload)


def encode_pgm(image: GrayImage) -> bytes:
    """Binary PGM (P5), fixed header grammar ``P5\\n<w> <h>\\n255\\n``."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.tobytes()


def decode_pgm(data: bytes) -> GrayImage:
    """Parse binary PGM (P5); symmetric to :func:`decode_ppm`."""
    width, height, offset = _parse_header(data, b"P5")
    need = width * height
    payload = data[offset : offset + need]
    if len(payload) < need:
        raise TruncatedPayloadError(
            f"payload holds {len(payload)} of {need} expected bytes"
        )
    return GrayImage.from_bytes(width, height, payload)
