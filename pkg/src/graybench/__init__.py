"""graybench: a grayscale-conversion benchmark harness and analysis toolkit.

The package generates deterministic image workloads, times grayscale
kernel variants (builtin or external executables) under a compiler/flag
matrix, and derives the interesting quantities from the timings:
per-pixel cost, I/O-free computation time, pairwise speedups, and the
traversal-order divergence point that brackets the cache size.
"""

__version__ = "0.1.0"

from .analysis import (
    CacheEstimate,
    KneeReport,
    ResultRow,
    Series,
    detect_knee,
    estimate_cache_size,
    normalize,
    speedup,
    subtract_io,
)
from .errors import GraybenchError
from .imagekit import (
    GrayImage,
    Image,
    Rgb8,
    decode_pgm,
    decode_ppm,
    encode_pgm,
    encode_ppm,
    generate_image,
)
from .kernels import (
    COEFFICIENTS,
    GrayscaleCoefficients,
    Variant,
    gray_pixel_double,
    gray_pixel_int,
    run_variant,
)
from .matrix import (
    CompilerSpec,
    FlagSet,
    Job,
    MatrixConfig,
    ToolchainManifest,
    build_external,
    capture_manifest,
    expand,
)
from .report import PlotOptions, emit_csv, emit_gnuplot, parse_csv
from .runner import (
    MeasurementRecord,
    Sample,
    SuiteResult,
    TargetSpec,
    run_series,
    run_suite,
    time_once,
)
from .workloads import WorkloadSpec, materialize, reference_sizes, select_sizes

__all__ = [
    "__version__",
    "CacheEstimate",
    "COEFFICIENTS",
    "CompilerSpec",
    "FlagSet",
    "GrayImage",
    "GraybenchError",
    "GrayscaleCoefficients",
    "Image",
    "Job",
    "KneeReport",
    "MatrixConfig",
    "MeasurementRecord",
    "PlotOptions",
    "ResultRow",
    "Rgb8",
    "Sample",
    "Series",
    "SuiteResult",
    "TargetSpec",
    "ToolchainManifest",
    "Variant",
    "WorkloadSpec",
    "build_external",
    "capture_manifest",
    "decode_pgm",
    "decode_ppm",
    "detect_knee",
    "emit_csv",
    "emit_gnuplot",
    "encode_pgm",
    "encode_ppm",
    "estimate_cache_size",
    "expand",
    "generate_image",
    "gray_pixel_double",
    "gray_pixel_int",
    "materialize",
    "normalize",
    "parse_csv",
    "reference_sizes",
    "run_series",
    "run_suite",
    "run_variant",
    "select_sizes",
    "speedup",
    "subtract_io",
    "time_once",
]
