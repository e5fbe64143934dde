"""Bundled reference result tables.

These CSVs are historical measurements of the benchmark corpus on a
2013-era x86 workstation (Clang/LLVM 3.3 vs GNU C 4.8, several
optimization levels, POSIX vs image-library I/O, plus a Haskell port
labeled ``hs``). They drive the analysis regression tests and the demos:
the derived quantities computed from them (normalizations, speedups,
I/O subtraction, traversal-order knee) are machine-independent facts
about the data.

Set ``GRAYBENCH_FIXTURES`` to point at a different directory of CSVs
with the same schema.
"""

from __future__ import annotations

import os
from pathlib import Path

from ..analysis import Series
from ..report import parse_csv

ENV_VAR = "GRAYBENCH_FIXTURES"


def fixtures_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent


def fixture_names() -> list[str]:
    return sorted(p.stem for p in fixtures_dir().glob("*.csv"))


def load_fixture(name: str) -> Series:
    path = fixtures_dir() / f"{name}.csv"
    if not path.exists():
        raise FileNotFoundError(
            f"no fixture {name!r} in {fixtures_dir()} "
            f"(available: {', '.join(fixture_names()) or 'none'})"
        )
    return parse_csv(path)
