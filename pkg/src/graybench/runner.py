"""Timing protocol: run a target N times per workload, collect statistics.

A target is either a builtin kernel variant or an external executable
honoring the benchmark interface ``<exe> <input.ppm> <output.pgm>`` (read
binary PPM, write binary PGM, exit 0). Timed spans are whole-program in
both cases: builtins time read + convert + write, externals time process
spawn to exit, so the two kinds are comparable as system benchmarks.

The headline statistic is the minimum over repetitions; avg and max are
retained alongside. There are no warmup runs and no cache flushing:
min-of-N already suppresses outliers, and anything beyond that would be
guessing. Repetitions run back-to-back, never in parallel, and a global
lock keeps any two measurements from overlapping within a process.
"""

from __future__ import annotations

import logging
import math
import subprocess
import tempfile
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import workloads
from .errors import TargetFailureError
from .imagekit import decode_ppm, encode_pgm
from .kernels import Variant, run_variant
from .workloads import WorkloadSpec

logger = logging.getLogger(__name__)

Clock = Callable[[], float]

# one measurement at a time per process; building/reporting may run alongside
_MEASUREMENT_LOCK = threading.Lock()

# records with min below this many timer ticks are flagged low-confidence
LOW_CONFIDENCE_TICKS = 100


def timer_resolution() -> float:
    """Resolution of the monotonic clock used for measurements, in seconds."""
    return time.get_clock_info("perf_counter").resolution


@dataclass(frozen=True)
class TargetSpec:
    """What is being timed: a builtin variant or an external executable."""

    label: str
    variant: Optional[Variant] = None
    executable: Optional[Path] = None

    def __post_init__(self):
        if (self.variant is None) == (self.executable is None):
            raise ValueError("exactly one of variant/executable must be set")
        if not self.label:
            raise ValueError("target label must be non-empty")

    @property
    def kind(self) -> str:
        return "builtin" if self.variant is not None else "external"

    @classmethod
    def builtin(cls, variant: Variant, label: Optional[str] = None) -> "TargetSpec":
        return cls(label=label or f"builtin-{variant.value}", variant=variant)

    @classmethod
    def external(cls, executable, label: Optional[str] = None) -> "TargetSpec":
        executable = Path(executable)
        return cls(label=label or executable.stem, executable=executable)


@dataclass(frozen=True)
class Sample:
    """One wall-clock measurement."""

    seconds: float

    def __post_init__(self):
        if self.seconds < 0:
            raise ValueError(f"negative sample: {self.seconds}")


@dataclass(frozen=True)
class MeasurementRecord:
    """Timing statistics for one target at one workload."""

    target: str
    width: int
    height: int
    pixels: int
    reps: int
    avg: float
    min: float
    max: float
    samples: tuple[Sample, ...]

    def __post_init__(self):
        if len(self.samples) != self.reps:
            raise ValueError("samples length must equal reps")
        if not self.min <= self.avg <= self.max:
            raise ValueError("expected min <= avg <= max")

    @classmethod
    def from_samples(
        cls, target: TargetSpec, spec: WorkloadSpec, samples: Sequence[Sample]
    ) -> "MeasurementRecord":
        seconds = [s.seconds for s in samples]
        lo, hi = min(seconds), max(seconds)
        # exact-sum mean, pinned into [lo, hi] against last-ulp rounding
        avg = min(max(math.fsum(seconds) / len(seconds), lo), hi)
        return cls(
            target=target.label,
            width=spec.width,
            height=spec.height,
            pixels=spec.pixels,
            reps=len(samples),
            avg=avg,
            min=lo,
            max=hi,
            samples=tuple(samples),
        )

    def low_confidence(self, resolution: Optional[float] = None) -> bool:
        """True when min is too close to the timer resolution to trust."""
        res = timer_resolution() if resolution is None else resolution
        return self.min < LOW_CONFIDENCE_TICKS * res


def _time_builtin(
    variant: Variant, input_path: Path, output_path: Path, clock: Clock
) -> float:
    start = clock()
    data = input_path.read_bytes()
    image = decode_ppm(data)
    gray = run_variant(variant, image)
    output_path.write_bytes(encode_pgm(gray))
    return clock() - start


def _time_external(
    executable: Path, input_path: Path, output_path: Path, clock: Clock
) -> float:
    if not input_path.exists():
        raise FileNotFoundError(f"input file missing: {input_path}")
    start = clock()
    try:
        proc = subprocess.run(
            [str(executable), str(input_path), str(output_path)],
            capture_output=True,
        )
    except OSError as exc:
        raise TargetFailureError(f"could not spawn {executable}: {exc}") from exc
    elapsed = clock() - start
    if proc.returncode != 0:
        stderr = proc.stderr.decode("utf-8", "replace")
        raise TargetFailureError(
            f"{executable} exited with status {proc.returncode}", stderr=stderr
        )
    return elapsed


def time_once(
    target: TargetSpec,
    input_path,
    output_path,
    clock: Clock = time.perf_counter,
) -> Sample:
    """One timed run of the target; the output file is (over)written."""
    input_path = Path(input_path)
    output_path = Path(output_path)
    with _MEASUREMENT_LOCK:
        if target.variant is not None:
            elapsed = _time_builtin(target.variant, input_path, output_path, clock)
        else:
            elapsed = _time_external(target.executable, input_path, output_path, clock)
    return Sample(seconds=max(elapsed, 0.0))


def run_series(
    target: TargetSpec,
    spec: WorkloadSpec,
    reps: int = 5,
    *,
    workdir=None,
    clock: Clock = time.perf_counter,
) -> MeasurementRecord:
    """Time the target ``reps`` times on one materialized workload.

    Runs are sequential on the same input file, no warmup. ``workdir``
    holds the input/output files; a temporary directory is used when None.
    """
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    if workdir is None:
        with tempfile.TemporaryDirectory(prefix="graybench-") as tmp:
            return run_series(target, spec, reps, workdir=tmp, clock=clock)
    workdir = Path(workdir)
    input_path = workloads.materialize(spec, workdir)
    output_path = workdir / f"{spec.width}x{spec.height}.pgm"
    samples = [time_once(target, input_path, output_path, clock) for _ in range(reps)]
    return MeasurementRecord.from_samples(target, spec, samples)


@dataclass(frozen=True)
class SuiteFailure:
    """A workload the suite could not measure."""

    spec: WorkloadSpec
    error: Exception


@dataclass(frozen=True)
class SuiteResult:
    records: tuple[MeasurementRecord, ...]
    failures: tuple[SuiteFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_suite(
    target: TargetSpec,
    specs: Sequence[WorkloadSpec],
    reps: int = 5,
    *,
    workdir=None,
    clock: Clock = time.perf_counter,
) -> SuiteResult:
    """One record per workload, in the given order; failures don't abort.

    Progress and failures go to the module logger (the diagnostics
    channel); persisting results is the caller's business.
    """
    if not specs:
        raise ValueError("specs must be non-empty")
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    records = []
    failures = []
    for i, spec in enumerate(specs, 1):
        logger.info(
            "[%d/%d] %s on %dx%d (%d px)",
            i,
            len(specs),
            target.label,
            spec.width,
            spec.height,
            spec.pixels,
        )
        try:
            records.append(run_series(target, spec, reps, workdir=workdir, clock=clock))
        except (TargetFailureError, OSError, ValueError) as exc:
            logger.warning("workload %dx%d failed: %s", spec.width, spec.height, exc)
            failures.append(SuiteFailure(spec=spec, error=exc))
    return SuiteResult(records=tuple(records), failures=tuple(failures))
