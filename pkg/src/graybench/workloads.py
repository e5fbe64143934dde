"""Reference workload table and materialization of workload input files."""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import ConfigError
from .imagekit import encode_ppm, generate_image

# The 40 reference (width, height) pairs, ascending by pixel count. The
# pixel counts deliberately mix binary and decimal powers (1048576 next to
# 999424) so cache-boundary effects are sampled from both grids.
REFERENCE_DIMENSIONS: tuple[tuple[int, int], ...] = (
    (5, 2),
    (4, 4),
    (5, 4),
    (8, 4),
    (8, 6),
    (8, 8),
    (16, 6),
    (16, 8),
    (16, 12),
    (16, 16),
    (32, 15),
    (32, 16),
    (32, 31),
    (32, 32),
    (64, 31),
    (64, 32),
    (64, 64),
    (128, 39),
    (128, 64),
    (128, 78),
    (128, 128),
    (256, 78),
    (256, 128),
    (256, 195),
    (256, 256),
    (512, 195),
    (512, 256),
    (512, 390),
    (512, 512),
    (1024, 488),
    (1024, 512),
    (1024, 976),
    (1024, 1024),
    (2048, 976),
    (2048, 1024),
    (2048, 2048),
    (2048, 2441),
    (4096, 2048),
    (4096, 2441),
    (4096, 4096),
)


@dataclass(frozen=True)
class WorkloadSpec:
    """One benchmark input: dimensions plus the generator seed.

    The seed defaults to the pixel count, so every reference workload is
    distinct yet reproducible with no extra configuration.
    """

    width: int
    height: int
    pixels: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"bad workload dimensions {self.width}x{self.height}")
        expected = self.width * self.height
        if self.pixels is None:
            object.__setattr__(self, "pixels", expected)
        elif self.pixels != expected:
            raise ValueError(
                f"pixels={self.pixels} does not equal {self.width}x{self.height}"
            )
        if self.seed is None:
            object.__setattr__(self, "seed", self.pixels)

    @property
    def filename(self) -> str:
        return f"{self.width}x{self.height}.ppm"


def reference_sizes() -> tuple[WorkloadSpec, ...]:
    """The full reference table, ascending by pixel count."""
    return tuple(WorkloadSpec(w, h) for w, h in REFERENCE_DIMENSIONS)


def select_sizes(selector: str) -> tuple[WorkloadSpec, ...]:
    """Subset of :func:`reference_sizes` named by a selector string.

    Grammar:
      * ``all``            - every reference size;
      * ``first:N``        - the N smallest;
      * ``A..B``           - sizes with A <= pixels <= B;
      * ``P1,P2,...``      - exact pixel counts, each of which must exist.
    """
    sizes = reference_sizes()
    sel = selector.strip()
    if sel == "all":
        return sizes
    if sel.startswith("first:"):
        try:
            n = int(sel[len("first:") :])
        except ValueError:
            raise ConfigError(f"bad size selector {selector!r}") from None
        if not 1 <= n <= len(sizes):
            raise ConfigError(f"first:{n} out of range 1..{len(sizes)}")
        return sizes[:n]
    if ".." in sel:
        lo_s, _, hi_s = sel.partition("..")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise ConfigError(f"bad size selector {selector!r}") from None
        picked = tuple(s for s in sizes if lo <= s.pixels <= hi)
        if not picked:
            raise ConfigError(f"no reference sizes in range {selector!r}")
        return picked
    try:
        wanted = [int(tok) for tok in sel.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"bad size selector {selector!r}") from None
    if not wanted:
        raise ConfigError("empty size selector")
    by_pixels = {s.pixels: s for s in sizes}
    missing = [p for p in wanted if p not in by_pixels]
    if missing:
        raise ConfigError(f"unknown reference pixel counts: {missing}")
    return tuple(by_pixels[p] for p in sorted(wanted))


def materialize(spec: WorkloadSpec, directory: Path) -> Path:
    """Write the workload's PPM file into ``directory``; returns the path.

    Idempotent: the bytes depend only on the spec, so repeated calls
    rewrite the same content.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"not a writable directory: {directory}")
    path = directory / spec.filename
    data = encode_ppm(generate_image(spec.width, spec.height, spec.seed))
    path.write_bytes(data)
    return path


def sizes_csv(specs: Sequence[WorkloadSpec] | None = None) -> str:
    """Machine-readable listing of the size table."""
    specs = reference_sizes() if specs is None else specs
    buf = io.StringIO()
    buf.write("width,height,pixels,seed\n")
    for s in specs:
        buf.write(f"{s.width},{s.height},{s.pixels},{s.seed}\n")
    return buf.getvalue()
