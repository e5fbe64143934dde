"""Command-line interface. The only module that talks to the terminal.

Exit status: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, analysis, matrix, report, runner, workloads
from .errors import GraybenchError
from .kernels import Variant


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; this CLI reserves 2 for runtime failures
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_usage()}")


def _target_from_args(args) -> runner.TargetSpec:
    if args.exe is not None:
        return runner.TargetSpec.external(args.exe, label=args.label)
    variant = Variant.parse(args.variant)
    return runner.TargetSpec.builtin(variant, label=args.label)


def _write_results(out_csv: Path, series: analysis.Series, manifest) -> Path:
    report.emit_csv(series, out_csv)
    manifest_path = out_csv.with_suffix(".manifest")
    manifest_path.write_text(
        matrix.format_manifest({series.label: manifest}), encoding="utf-8"
    )
    return manifest_path


def _print_records(records, resolution: float) -> None:
    print(f"{'pixels':>10} {'min':>12} {'avg':>12} {'max':>12}  note")
    for r in records:
        note = "low-confidence" if r.low_confidence(resolution) else ""
        print(f"{r.pixels:>10} {r.min:>12.6f} {r.avg:>12.6f} {r.max:>12.6f}  {note}")


def _cmd_sizes(args) -> int:
    if args.csv:
        sys.stdout.write(workloads.sizes_csv())
        return 0
    print(f"{'width':>6} {'height':>6} {'pixels':>9} {'seed':>9}")
    for s in workloads.reference_sizes():
        print(f"{s.width:>6} {s.height:>6} {s.pixels:>9} {s.seed:>9}")
    return 0


def _cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for spec in workloads.select_sizes(args.sizes):
        path = workloads.materialize(spec, out)
        print(path)
    return 0


def _cmd_run(args, variant_override: str | None = None) -> int:
    if variant_override is not None:
        args.variant = variant_override
        args.exe = None
    target = _target_from_args(args)
    specs = workloads.select_sizes(args.sizes)
    result = runner.run_suite(target, specs, reps=args.reps, workdir=args.workdir)
    series = analysis.Series.from_records(target.label, result.records)
    if target.kind == "builtin":
        manifest = matrix.capture_manifest(
            source_files=[Path(matrix.__file__).with_name("kernels.py")]
        )
    else:
        manifest = matrix.capture_manifest(source_files=[target.executable])
    out_csv = Path(args.out)
    manifest_path = _write_results(out_csv, series, manifest)
    _print_records(result.records, manifest.timer_resolution_seconds)
    print(f"wrote {out_csv} and {manifest_path}")
    for failure in result.failures:
        print(
            f"FAILED {failure.spec.width}x{failure.spec.height}: {failure.error}",
            file=sys.stderr,
        )
    return 2 if result.failures else 0


def _cmd_matrix(args) -> int:
    config = matrix.load_config(args.config)
    jobs = matrix.expand(config)
    specs = workloads.select_sizes(config.sizes)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    build_dir = out_dir / "build"
    failed = 0
    for job in jobs:
        print(f"== {job.label} ({job.provenance})")
        try:
            target, manifest = matrix.job_target(
                job, corpus_dir=args.corpus, build_dir=build_dir
            )
            result = runner.run_suite(
                target, specs, reps=config.reps, workdir=args.workdir
            )
            series = analysis.Series.from_records(job.label, result.records)
            _write_results(out_dir / f"{job.label}.csv", series, manifest)
            if result.failures:
                failed += 1
                for f in result.failures:
                    print(f"  FAILED {f.spec.pixels} px: {f.error}", file=sys.stderr)
        except GraybenchError as exc:
            failed += 1
            print(f"  FAILED: {exc}", file=sys.stderr)
    print(f"{len(jobs) - failed}/{len(jobs)} jobs ok, results in {out_dir}")
    return 2 if failed else 0


def _cmd_analyze(args) -> int:
    needed = 1 if args.kind == "normalize" else 2
    if len(args.csv) != needed:
        raise UsageError(f"analyze {args.kind} takes exactly {needed} CSV file(s)")
    out = sys.stdout
    if args.kind == "normalize":
        series = report.parse_csv(args.csv[0])
        out.write("pixels,seconds_per_pixel\n")
        for p in analysis.normalize(series, stat=args.stat):
            out.write(f"{p.pixels},{p.seconds_per_pixel!r}\n")
    elif args.kind == "subtract":
        total = report.parse_csv(args.csv[0])
        empty = report.parse_csv(args.csv[1])
        derived = analysis.subtract_io(total, empty)
        if args.out:
            report.emit_csv(derived, Path(args.out))
            print(f"wrote {args.out}")
        else:
            report.emit_csv(derived, sys.stdout.buffer)
    elif args.kind == "speedup":
        baseline = report.parse_csv(args.csv[0])
        contender = report.parse_csv(args.csv[1])
        out.write("pixels,ratio\n")
        for p in analysis.speedup(baseline, contender, stat=args.stat):
            out.write(f"{p.pixels},{p.ratio!r}\n")
    elif args.kind == "knee":
        a = report.parse_csv(args.csv[0])
        b = report.parse_csv(args.csv[1])
        rep = analysis.detect_knee(
            a, b, threshold=args.threshold, stat=args.stat,
            bytes_per_pixel=args.bytes_per_pixel,
        )
        if rep.knee_pixels is None:
            print(f"knee: none (no ratio stays >= {rep.threshold})")
        else:
            print(f"knee: {rep.knee_pixels}")
        if rep.cache_bytes_low is not None:
            print(
                f"cache bytes: {rep.cache_bytes_low} .. {rep.cache_bytes_high} "
                f"({analysis.format_bytes(rep.cache_bytes_low)} .. "
                f"{analysis.format_bytes(rep.cache_bytes_high)})"
            )
    return 0


def _cmd_report(args) -> int:
    series_list = [report.parse_csv(p) for p in args.csv]
    title = args.title
    if not title:
        if args.manifest:
            records = matrix.parse_manifest(
                Path(args.manifest).read_text(encoding="utf-8")
            )
            first = next(iter(records.values()), {})
            title = " | ".join(
                first.get(k, "unknown") for k in ("hostname", "cpu", "os")
            )
        else:
            title = matrix.capture_manifest().platform_line()
    options = report.PlotOptions(
        normalized=args.normalized,
        logx=args.logx,
        logy=args.logy,
        title=title,
        stat=args.stat,
    )
    bundle = report.emit_gnuplot(series_list, options)
    for path in bundle.write(Path(args.out), basename=args.basename):
        print(path)
    return 0


def _cmd_manifest(args) -> int:
    compiler = None
    if args.compiler:
        compiler = matrix.CompilerSpec(id=Path(args.compiler).name, command=args.compiler)
    manifest = matrix.capture_manifest(compiler=compiler)
    sys.stdout.write(matrix.format_manifest({"environment": manifest}))
    return 0


def _cmd_config(args) -> int:
    config = matrix.load_config(args.file)
    sys.stdout.write(matrix.format_config(config))
    return 0


def _add_target_args(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--variant", help="builtin kernel variant to time")
    group.add_argument("--exe", help="external executable honoring '<exe> in.ppm out.pgm'")
    p.add_argument("--label", help="label for the result series")


def _add_common_run_args(p):
    p.add_argument("--sizes", default="all", help="size selector (all, first:N, A..B, P1,P2,...)")
    p.add_argument("--reps", type=int, default=5, help="repetitions per workload")
    p.add_argument("--workdir", help="directory for input/output files (default: temp)")
    p.add_argument("--out", default="results.csv", help="output CSV path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graybench", description=__doc__)
    parser.add_argument("--version", action="version", version=f"graybench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sizes", help="print the reference workload table")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of a table")
    p.set_defaults(func=_cmd_sizes)

    p = sub.add_parser("gen", help="materialize workload PPM files")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--sizes", default="all", help="size selector")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("run", help="time a target over workloads")
    _add_target_args(p)
    _add_common_run_args(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("baseline", help="time the I/O-only empty variant")
    _add_common_run_args(p)
    p.set_defaults(func=lambda a: _cmd_run(_with_empty_target(a)))

    p = sub.add_parser("matrix", help="expand a config, build, and run all jobs")
    p.add_argument("--config", required=True, help="matrix config file")
    p.add_argument("--corpus", default="corpus", help="C corpus source directory")
    p.add_argument("--out", required=True, help="result directory")
    p.add_argument("--workdir", help="directory for workload files (default: temp)")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("analyze", help="derive quantities from result CSVs")
    p.add_argument("kind", choices=("normalize", "subtract", "speedup", "knee"))
    p.add_argument("csv", nargs="+", help="input CSV file(s)")
    p.add_argument("--stat", default="min", choices=analysis.STATS)
    p.add_argument("--threshold", type=float, default=1.5, help="knee ratio threshold")
    p.add_argument("--bytes-per-pixel", type=int, default=4, help="cache traffic model")
    p.add_argument("--out", help="output CSV path (subtract only)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("report", help="emit gnuplot script + data files")
    p.add_argument("csv", nargs="+", help="input CSV file(s)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--basename", default="plot", help="script file basename")
    p.add_argument("--normalized", action="store_true", help="divide by pixel count")
    p.add_argument("--logx", action="store_true")
    p.add_argument("--logy", action="store_true")
    p.add_argument("--stat", default="min", choices=analysis.STATS)
    p.add_argument("--title", default="", help="plot title (default: platform line)")
    p.add_argument("--manifest", help="manifest file whose platform line titles the plot")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("manifest", help="print a reproducibility manifest")
    p.add_argument("--compiler", help="compiler command to probe")
    p.set_defaults(func=_cmd_manifest)

    p = sub.add_parser("config", help="matrix config utilities")
    config_sub = p.add_subparsers(dest="config_command", required=True)
    cp = config_sub.add_parser("print", help="parse and re-emit a config canonically")
    cp.add_argument("file")
    cp.set_defaults(func=_cmd_config)

    return parser


def _with_empty_target(args):
    args.variant = "empty"
    args.exe = None
    args.label = None
    return args


def cli(argv=None) -> int:
    """Run the CLI; returns the exit status instead of raising SystemExit."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"graybench: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"graybench: {exc}", file=sys.stderr)
        return 1
    except (GraybenchError, OSError, ValueError) as exc:
        print(f"graybench: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
