"""Benchmark matrix: expand configs into jobs, build the C corpus, and
capture reproducibility manifests.

A matrix crosses kernel variants with compilers and flag sets. External
jobs are labeled ``c-<compiler>-<flags>-unix-<variant>`` so that freshly
produced results and the bundled historical tables parse through the same
naming scheme. Every external build is hermetic (its own output
directory) and is described by a manifest: who compiled what, with which
flags, from which sources, on which machine. Fields that cannot be probed
are recorded as the explicit string "unknown" rather than omitted.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import platform
import socket
import subprocess
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import __version__ as _harness_version
from .errors import BuildError, ConfigError, ToolchainError
from .kernels import Variant
from .runner import TargetSpec, timer_resolution

CORPUS_DRIVER = "bench.c"
CORPUS_IO = "ppm_unix.c"
CORPUS_HEADER = "graybench.h"


@dataclass(frozen=True)
class CompilerSpec:
    """A compiler identity and the command that invokes it."""

    id: str
    command: str


@dataclass(frozen=True)
class FlagSet:
    """A labeled set of compiler flags ('base' typically means none)."""

    label: str
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class MatrixConfig:
    variants: tuple[Variant, ...]
    compilers: tuple[CompilerSpec, ...] = ()
    flag_sets: tuple[FlagSet, ...] = ()
    include_builtin: bool = False
    reps: int = 5
    sizes: str = "all"

    def __post_init__(self):
        if not self.variants:
            raise ConfigError("config needs at least one variant")
        if not self.include_builtin and not self.compilers:
            raise ConfigError("config needs include_builtin or a compiler")
        if self.compilers and not self.flag_sets:
            raise ConfigError("compilers given but no flag sets")
        labels = [fs.label for fs in self.flag_sets]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"duplicate flag set labels: {labels}")
        ids = [c.id for c in self.compilers]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate compiler ids: {ids}")
        if self.reps < 1:
            raise ConfigError(f"reps must be >= 1, got {self.reps}")


@dataclass(frozen=True)
class Job:
    """One timeable unit of the matrix, uniquely labeled by provenance."""

    label: str
    variant: Variant
    compiler: Optional[CompilerSpec] = None
    flag_set: Optional[FlagSet] = None

    @property
    def kind(self) -> str:
        return "builtin" if self.compiler is None else "external"

    @property
    def provenance(self) -> str:
        if self.compiler is None:
            return "builtin"
        return f"{self.compiler.id}/{self.flag_set.label}/{self.variant.value}"


def external_label(compiler_id: str, flag_label: str, variant: Variant) -> str:
    return f"c-{compiler_id}-{flag_label}-unix-{variant.corpus_name}"


def builtin_label(variant: Variant) -> str:
    return f"builtin-{variant.value}"


def expand(config: MatrixConfig) -> list[Job]:
    """Deterministic job list: compilers x flag sets x variants + builtins."""
    jobs = []
    for compiler in config.compilers:
        for flag_set in config.flag_sets:
            for variant in config.variants:
                jobs.append(
                    Job(
                        label=external_label(compiler.id, flag_set.label, variant),
                        variant=variant,
                        compiler=compiler,
                        flag_set=flag_set,
                    )
                )
    if config.include_builtin:
        for variant in config.variants:
            jobs.append(Job(label=builtin_label(variant), variant=variant))
    if not jobs:
        raise ConfigError("configuration expands to zero jobs")
    return jobs


# --- config file format -------------------------------------------------
#
#   variants = double2d_rm, double1d
#   include_builtin = true
#   reps = 5
#   sizes = first:14
#   compiler clang = clang
#   flags o3 = -O3
#   flags base =
#
# Lines starting with '#' and blank lines are ignored. 'compiler' and
# 'flags' may repeat; everything else is a scalar key.


def parse_config(text: str) -> MatrixConfig:
    variants: list[Variant] = []
    compilers: list[CompilerSpec] = []
    flag_sets: list[FlagSet] = []
    include_builtin = False
    reps = 5
    sizes = "all"
    seen: set[str] = set()

    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key.startswith("compiler "):
            compilers.append(CompilerSpec(id=key.split(None, 1)[1], command=value))
        elif key.startswith("flags "):
            flag_sets.append(
                FlagSet(label=key.split(None, 1)[1], flags=tuple(value.split()))
            )
        elif key in ("variants", "include_builtin", "reps", "sizes") and key in seen:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        elif key == "variants":
            try:
                variants = [
                    Variant.parse(tok.strip())
                    for tok in value.split(",")
                    if tok.strip()
                ]
            except ValueError as exc:
                raise ConfigError(f"line {line_no}: {exc}") from exc
        elif key == "include_builtin":
            if value not in ("true", "false"):
                raise ConfigError(f"line {line_no}: include_builtin must be true/false")
            include_builtin = value == "true"
        elif key == "reps":
            try:
                reps = int(value)
            except ValueError:
                raise ConfigError(f"line {line_no}: reps must be an integer") from None
        elif key == "sizes":
            sizes = value
        else:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        seen.add(key)

    return MatrixConfig(
        variants=tuple(variants),
        compilers=tuple(compilers),
        flag_sets=tuple(flag_sets),
        include_builtin=include_builtin,
        reps=reps,
        sizes=sizes,
    )


def format_config(config: MatrixConfig) -> str:
    """Canonical text form; parse(format(parse(t))) == parse(t)."""
    lines = [
        "variants = " + ", ".join(v.value for v in config.variants),
        f"include_builtin = {'true' if config.include_builtin else 'false'}",
        f"reps = {config.reps}",
        f"sizes = {config.sizes}",
    ]
    for compiler in config.compilers:
        lines.append(f"compiler {compiler.id} = {compiler.command}")
    for fs in config.flag_sets:
        lines.append(f"flags {fs.label} = {' '.join(fs.flags)}".rstrip())
    return "\n".join(lines) + "\n"


def load_config(path) -> MatrixConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


# --- manifests ------------------------------------------------------------


@dataclass(frozen=True)
class ToolchainManifest:
    """Everything a peer needs to reproduce one timed binary."""

    timestamp: str
    hostname: str
    os: str
    cpu: str
    compiler_id: str
    compiler_version: str
    flags: tuple[str, ...]
    source_digests: Mapping[str, str] = field(default_factory=dict)
    harness_version: str = _harness_version
    timer_resolution_seconds: float = field(default_factory=timer_resolution)

    def platform_line(self) -> str:
        return f"{self.hostname} | {self.cpu} | {self.os}"


def _cpu_model() -> str:
    try:
        with open("/proc/cpuinfo", encoding="utf-8") as fh:
            for line in fh:
                if line.lower().startswith("model name"):
                    return line.partition(":")[2].strip()
    except OSError:
        pass
    return platform.processor() or "unknown"


def compiler_version(command: str) -> str:
    """The compiler's own version report, stored verbatim (first line)."""
    try:
        proc = subprocess.run(
            [command, "--version"], capture_output=True, timeout=30
        )
    except (OSError, subprocess.TimeoutExpired):
        return "unknown"
    if proc.returncode != 0:
        return "unknown"
    text = proc.stdout.decode("utf-8", "replace").strip()
    return text.splitlines()[0] if text else "unknown"


def source_digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def capture_manifest(
    compiler: Optional[CompilerSpec] = None,
    flags: Sequence[str] = (),
    source_files: Iterable[Path] = (),
) -> ToolchainManifest:
    """Probe the environment; unprobeable fields become "unknown"."""
    digests = {}
    for path in source_files:
        path = Path(path)
        try:
            digests[path.name] = source_digest(path)
        except OSError:
            digests[path.name] = "unknown"
    if compiler is None:
        compiler_id = "builtin"
        version = f"python {platform.python_version()}"
    else:
        compiler_id = compiler.id
        version = compiler_version(compiler.command)
    try:
        hostname = socket.gethostname() or "unknown"
    except OSError:
        hostname = "unknown"
    return ToolchainManifest(
        timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat(),
        hostname=hostname,
        os=platform.platform() or "unknown",
        cpu=_cpu_model(),
        compiler_id=compiler_id,
        compiler_version=version,
        flags=tuple(flags),
        source_digests=dict(digests),
    )


def format_manifest(entries: Mapping[str, ToolchainManifest]) -> str:
    """UTF-8 'key: value' lines, one blank-line-separated record per label."""
    blocks = []
    for label, m in entries.items():
        lines = [
            f"label: {label}",
            f"timestamp: {m.timestamp}",
            f"hostname: {m.hostname}",
            f"os: {m.os}",
            f"cpu: {m.cpu}",
            f"compiler_id: {m.compiler_id}",
            f"compiler_version: {m.compiler_version}",
            f"flags: {' '.join(m.flags)}",
            f"harness_version: {m.harness_version}",
            f"timer_resolution_seconds: {m.timer_resolution_seconds!r}",
        ]
        for name in sorted(m.source_digests):
            lines.append(f"source_digest[{name}]: {m.source_digests[name]}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def parse_manifest(text: str) -> dict[str, dict[str, str]]:
    """String-level inverse of :func:`format_manifest`, keyed by label."""
    records: dict[str, dict[str, str]] = {}
    current: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            current = {}
            continue
        key, sep, value = line.partition(":")
        if not sep:
            continue
        key, value = key.strip(), value.strip()
        if key == "label":
            current = {}
            records[value] = current
        current[key] = value
    return records


# --- external builds --------------------------------------------------------


@dataclass(frozen=True)
class BuildResult:
    executable: Path
    manifest: ToolchainManifest


def corpus_sources(variant: Variant, corpus_dir: Path) -> list[Path]:
    corpus_dir = Path(corpus_dir)
    return [
        corpus_dir / CORPUS_DRIVER,
        corpus_dir / f"{variant.corpus_name}.c",
        corpus_dir / CORPUS_IO,
        corpus_dir / CORPUS_HEADER,
    ]


def build_external(
    variant: Variant,
    compiler: CompilerSpec,
    flag_set: FlagSet,
    corpus_dir,
    out_dir,
) -> BuildResult:
    """Compile driver + variant body + POSIX I/O into one executable.

    The build is hermetic per job: its own subdirectory of ``out_dir``,
    no object files shared between flag sets.
    """
    corpus_dir = Path(corpus_dir)
    sources = corpus_sources(variant, corpus_dir)
    missing = [str(p) for p in sources if not p.exists()]
    if missing:
        raise BuildError(f"corpus sources missing: {missing}")
    label = external_label(compiler.id, flag_set.label, variant)
    job_dir = Path(out_dir) / label
    job_dir.mkdir(parents=True, exist_ok=True)
    executable = job_dir / label
    compile_units = [str(p) for p in sources if p.suffix == ".c"]
    cmd = [
        compiler.command,
        *flag_set.flags,
        f"-I{corpus_dir}",
        "-o",
        str(executable),
        *compile_units,
    ]
    try:
        proc = subprocess.run(cmd, capture_output=True, timeout=300)
    except OSError as exc:
        raise ToolchainError(f"compiler {compiler.command!r} not runnable: {exc}") from exc
    except subprocess.TimeoutExpired as exc:
        raise BuildError(f"compilation timed out: {' '.join(cmd)}") from exc
    if proc.returncode != 0:
        raise BuildError(
            f"{compiler.command} failed with status {proc.returncode}",
            diagnostics=proc.stderr.decode("utf-8", "replace"),
        )
    manifest = capture_manifest(
        compiler=compiler, flags=flag_set.flags, source_files=sources
    )
    return BuildResult(executable=executable, manifest=manifest)


def job_target(job: Job, corpus_dir=None, build_dir=None) -> tuple[TargetSpec, ToolchainManifest]:
    """Realize a job as a timeable target plus its manifest."""
    if job.kind == "builtin":
        kernels_src = Path(__file__).with_name("kernels.py")
        manifest = capture_manifest(source_files=[kernels_src])
        return TargetSpec.builtin(job.variant, label=job.label), manifest
    if corpus_dir is None or build_dir is None:
        raise ConfigError("external jobs need corpus_dir and build_dir")
    built = build_external(job.variant, job.compiler, job.flag_set, corpus_dir, build_dir)
    return (
        TargetSpec(label=job.label, executable=built.executable),
        built.manifest,
    )
