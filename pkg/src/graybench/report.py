"""Result persistence (CSV) and gnuplot script/data emission.

The CSV schema is ``pixels,avg,min,max,width,height``, one row per input
size, ascending. Seconds are printed with the shortest decimal that
round-trips the underlying float, so parse -> emit is lossless.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import ResultRow, Series, normalize
from .errors import SchemaError

CSV_HEADER = ("pixels", "avg", "min", "max", "width", "height")


def _fmt(value: float) -> str:
    # str() on a float is the shortest representation that round-trips
    return str(int(value)) if isinstance(value, int) else str(value)


def emit_csv(series: Series, destination) -> int:
    """Write the series as CSV; returns the number of bytes written.

    ``destination`` is a path or a binary file object.
    """
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for row in series.points:
        buf.write(
            f"{row.pixels},{_fmt(row.avg)},{_fmt(row.min)},{_fmt(row.max)},"
            f"{row.width},{row.height}\n"
        )
    data = buf.getvalue().encode("utf-8")
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        Path(destination).write_bytes(data)
    return len(data)


def _parse_row(cells: list[str], line_no: int) -> ResultRow:
    try:
        return ResultRow(
            pixels=int(cells[0]),
            avg=float(cells[1]),
            min=float(cells[2]),
            max=float(cells[3]),
            width=int(cells[4]),
            height=int(cells[5]),
        )
    except ValueError as exc:
        raise SchemaError(f"line {line_no}: bad cell ({exc})") from exc


def parse_csv(source, label: str | None = None) -> Series:
    """Inverse of :func:`emit_csv`.

    ``source`` is a path or a text file object. The label defaults to the
    file stem. Raises SchemaError for header/cell problems; the Series
    constructor raises OrderingError for non-ascending or duplicate sizes.
    """
    if hasattr(source, "read"):
        text = source.read()
        if label is None:
            name = getattr(source, "name", None)
            label = Path(name).stem if isinstance(name, str) else "series"
    else:
        path = Path(source)
        text = path.read_text(encoding="utf-8")
        if label is None:
            label = path.stem

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SchemaError("empty CSV")
    header = tuple(cell.strip() for cell in lines[0].split(","))
    if header != CSV_HEADER:
        raise SchemaError(
            f"expected header {','.join(CSV_HEADER)!r}, got {lines[0]!r}"
        )
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != len(CSV_HEADER):
            raise SchemaError(f"line {i}: expected {len(CSV_HEADER)} cells")
        rows.append(_parse_row(cells, i))
    return Series(label=label, points=tuple(rows))


@dataclass(frozen=True)
class PlotOptions:
    """Rendering choices for the emitted gnuplot script."""

    normalized: bool = False
    logx: bool = False
    logy: bool = False
    title: str = ""
    stat: str = "min"


@dataclass(frozen=True)
class GnuplotBundle:
    """A plot script plus the whitespace-separated data file per series."""

    script: str
    data_files: dict[str, str] = field(default_factory=dict)

    def write(self, directory, basename: str = "plot") -> list[Path]:
        """Write script and data files into ``directory``; returns paths."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for name, content in self.data_files.items():
            p = directory / name
            p.write_text(content, encoding="utf-8")
            paths.append(p)
        script_path = directory / f"{basename}.gp"
        script_path.write_text(self.script, encoding="utf-8")
        paths.append(script_path)
        return paths


def _data_name(label: str) -> str:
    safe = "".join(c if c.isalnum() or c in "-_." else "_" for c in label)
    return f"{safe}.dat"


def emit_gnuplot(series_list, options: PlotOptions = PlotOptions()) -> GnuplotBundle:
    """One data file per series plus a gnuplot 5 script referencing them."""
    series_list = list(series_list)
    if not series_list:
        raise ValueError("need at least one series to plot")
    labels = [s.label for s in series_list]
    if len(set(labels)) != len(labels):
        raise ValueError(f"series labels must be unique, got {labels}")
    data_files: dict[str, str] = {}
    for series in series_list:
        buf = io.StringIO()
        buf.write(f"# {series.label}: pixels  value\n")
        if options.normalized:
            for point in normalize(series, options.stat):
                buf.write(f"{point.pixels} {point.seconds_per_pixel!r}\n")
        else:
            for row in series.points:
                buf.write(f"{row.pixels} {getattr(row, options.stat)!r}\n")
        data_files[_data_name(series.label)] = buf.getvalue()

    ylabel = "seconds per pixel" if options.normalized else "seconds"
    lines = [
        "#!/usr/bin/env gnuplot",
        'set terminal pngcairo size 1024,600',
        'set output "plot.png"',
        f'set title "{options.title}"',
        'set xlabel "pixels"',
        f'set ylabel "{ylabel} ({options.stat})"',
        "set key left top",
    ]
    if options.logx:
        lines.append("set logscale x")
    if options.logy:
        lines.append("set logscale y")
    clauses = [
        f'"{name}" using 1:2 with linespoints title "{series.label}"'
        for name, series in zip(data_files, series_list)
    ]
    lines.append("plot \\")
    lines.append(", \\\n".join("    " + clause for clause in clauses))
    lines.append("")
    return GnuplotBundle(script="\n".join(lines), data_files=data_files)
