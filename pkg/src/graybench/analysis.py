"""Derived quantities over measurement series.

All operations work on the summary-table statistics (avg/min/max per input
size). The headline statistic everywhere is ``min``: the smallest of N
repetitions is the least noise-contaminated estimate of the true cost, and
it is what the result tables are compared on. Functions are pure; series
are immutable.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .errors import (
    AlignmentError,
    InsufficientDataError,
    OrderingError,
    UndefinedRatioError,
)

logger = logging.getLogger(__name__)

STATS = ("min", "avg", "max")


@dataclass(frozen=True)
class ResultRow:
    """One summary-table row: timing statistics for one input size."""

    pixels: int
    avg: float
    min: float
    max: float
    width: int
    height: int


@dataclass(frozen=True)
class Series:
    """A labeled result curve: rows strictly ascending by pixel count."""

    label: str
    points: tuple[ResultRow, ...]
    derived: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        last = -1
        for row in self.points:
            if row.pixels <= last:
                raise OrderingError(
                    f"series {self.label!r}: pixel counts must be strictly "
                    f"ascending (saw {row.pixels} after {last})"
                )
            last = row.pixels

    @classmethod
    def from_records(cls, label: str, records: Iterable) -> "Series":
        """Build a series from measurement records (sorted by pixels)."""
        rows = tuple(
            ResultRow(
                pixels=r.pixels,
                avg=r.avg,
                min=r.min,
                max=r.max,
                width=r.width,
                height=r.height,
            )
            for r in sorted(records, key=lambda r: r.pixels)
        )
        return cls(label, rows)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(row.pixels for row in self.points)

    def stat(self, pixels: int, stat: str = "min") -> float:
        _check_stat(stat)
        for row in self.points:
            if row.pixels == pixels:
                return getattr(row, stat)
        raise AlignmentError(f"series {self.label!r} has no size {pixels}")

    def __len__(self) -> int:
        return len(self.points)


class NormalizedPoint(NamedTuple):
    pixels: int
    seconds_per_pixel: float


class SpeedupPoint(NamedTuple):
    pixels: int
    ratio: float


class RatioPoint(NamedTuple):
    pixels: int
    ratio: float


class CacheEstimate(NamedTuple):
    low_bytes: int
    high_bytes: int


@dataclass(frozen=True)
class KneeReport:
    """Where two traversal orders' timings persistently diverge.

    ``knee_pixels`` is None when the ratio never stays above the threshold.
    Cache bounds are None when no knee was found or the knee is the
    smallest common size (no lower bound available).
    """

    knee_pixels: Optional[int]
    ratios: tuple[RatioPoint, ...]
    threshold: float
    cache_bytes_low: Optional[int] = None
    cache_bytes_high: Optional[int] = None


def _check_stat(stat: str) -> None:
    if stat not in STATS:
        raise ValueError(f"stat must be one of {STATS}, got {stat!r}")


def _row_map(series: Series) -> dict[int, ResultRow]:
    return {row.pixels: row for row in series.points}


def normalize(series: Series, stat: str = "min") -> list[NormalizedPoint]:
    """Per-pixel cost: the chosen statistic divided by the input size."""
    _check_stat(stat)
    if not series.points:
        raise InsufficientDataError(f"series {series.label!r} is empty")
    return [
        NormalizedPoint(row.pixels, getattr(row, stat) / row.pixels)
        for row in series.points
    ]


def subtract_io(total: Series, empty: Series) -> Series:
    """Computation cost: the empty (I/O only) series subtracted per size.

    avg/min/max are each transformed with the same rule, clamped at zero:
    small negative differences are measurement noise, not information.
    The result is flagged derived; its columns are no longer guaranteed to
    satisfy min <= avg <= max.
    """
    empty_rows = _row_map(empty)
    out = []
    clamped = []
    for row in total.points:
        base = empty_rows.get(row.pixels)
        if base is None:
            raise AlignmentError(
                f"size {row.pixels} present in {total.label!r} but missing "
                f"in {empty.label!r}"
            )
        values = {}
        for stat in STATS:
            diff = getattr(row, stat) - getattr(base, stat)
            if diff < 0.0:
                clamped.append((row.pixels, stat, diff))
                diff = 0.0
            values[stat] = diff
        out.append(
            ResultRow(
                pixels=row.pixels,
                avg=values["avg"],
                min=values["min"],
                max=values["max"],
                width=row.width,
                height=row.height,
            )
        )
    if clamped:
        logger.warning(
            "%s: clamped %d negative difference(s) to 0 (e.g. %s=%.3g at %d px)",
            total.label,
            len(clamped),
            clamped[0][1],
            clamped[0][2],
            clamped[0][0],
        )
    return Series(label=f"{total.label}-minus-io", points=tuple(out), derived=True)


def common_sizes(a: Series, b: Series) -> list[int]:
    """Sizes present in both series, ascending."""
    present = set(b.sizes)
    return [p for p in a.sizes if p in present]


def speedup(
    baseline: Series, contender: Series, stat: str = "min"
) -> list[SpeedupPoint]:
    """baseline/contender ratio at each common size; >1 means contender faster."""
    _check_stat(stat)
    sizes = common_sizes(baseline, contender)
    if not sizes:
        raise InsufficientDataError(
            f"no common sizes between {baseline.label!r} and {contender.label!r}"
        )
    points = []
    for pixels in sizes:
        denom = contender.stat(pixels, stat)
        if denom == 0.0:
            raise UndefinedRatioError(
                f"{contender.label!r} has {stat}=0 at {pixels} px"
            )
        points.append(SpeedupPoint(pixels, baseline.stat(pixels, stat) / denom))
    return points


def detect_knee(
    series_a: Series,
    series_b: Series,
    threshold: float = 1.5,
    stat: str = "min",
    bytes_per_pixel: int = 4,
) -> KneeReport:
    """Smallest size from which b/a stays at or above the threshold.

    The persistence rule (every larger common size must also exceed the
    threshold) keeps one-off noise spikes from registering as a knee.
    When a knee exists, the working set at the preceding size still fit
    whatever cache level is being probed, which brackets the cache size.
    """
    _check_stat(stat)
    if not threshold > 1.0:
        raise ValueError(f"threshold must be > 1, got {threshold}")
    sizes = common_sizes(series_a, series_b)
    if len(sizes) < 2:
        raise InsufficientDataError(
            f"need at least 2 common sizes, got {len(sizes)}"
        )
    ratios = []
    for pixels in sizes:
        denom = series_a.stat(pixels, stat)
        if denom == 0.0:
            raise UndefinedRatioError(f"{series_a.label!r} has {stat}=0 at {pixels} px")
        ratios.append(RatioPoint(pixels, series_b.stat(pixels, stat) / denom))

    # scan from the largest size down: the knee heads the longest suffix of
    # ratios that stay at or above the threshold
    knee = None
    for point in reversed(ratios):
        if point.ratio >= threshold:
            knee = point.pixels
        else:
            break

    low = high = None
    if knee is not None:
        idx = sizes.index(knee)
        if idx > 0:
            low, high = estimate_cache_size(knee, sizes[idx - 1], bytes_per_pixel)
    return KneeReport(
        knee_pixels=knee,
        ratios=tuple(ratios),
        threshold=threshold,
        cache_bytes_low=low,
        cache_bytes_high=high,
    )


def estimate_cache_size(
    knee_pixels: int, previous_pixels: int, bytes_per_pixel: int = 4
) -> CacheEstimate:
    """Bracket the cache size from the knee and the size before it.

    bytes_per_pixel defaults to 4: three RGB input bytes plus one gray
    output byte streamed per pixel. A coarse traffic model, deliberately.
    """
    if not previous_pixels < knee_pixels:
        raise ValueError(
            f"previous_pixels ({previous_pixels}) must be smaller than "
            f"knee_pixels ({knee_pixels})"
        )
    if bytes_per_pixel < 1:
        raise ValueError(f"bytes_per_pixel must be >= 1, got {bytes_per_pixel}")
    return CacheEstimate(
        bytes_per_pixel * previous_pixels, bytes_per_pixel * knee_pixels
    )


def format_bytes(n: int) -> str:
    """Human-readable byte count (binary units)."""
    if n <= 0:
        return str(n)
    units = ("B", "KiB", "MiB", "GiB", "TiB")
    exp = min(int(math.log2(n) // 10), len(units) - 1)
    value = n / (1 << (10 * exp))
    text = f"{value:.1f}".rstrip("0").rstrip(".")
    return f"{text} {units[exp]}"
