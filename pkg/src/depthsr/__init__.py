"""Guided depth image super-resolution with low-gradient regularization.

A numpy toolkit for upsampling low-resolution depth maps with a
high-resolution intensity guide: edge-preserving guided filtering, a
banded gradient-count penalty with a closed-form threshold operator, an
exact FFT solve of the coupled quadratic, and a simulation/evaluation
harness around them.
"""

from .bench import EvalRecord, EvalReport, discover_dataset, reference_table, run_benchmark
from .fft_solver import DiffOtf, build_otf, gradient, solve_quadratic
from .guided import GuidedFilterParams, box_filter, guided_filter
from .image_io import (
    ImageIOError,
    MalformedHeaderError,
    TruncatedPayloadError,
    UnsupportedFormatError,
    read_guide,
    read_image,
    to_grayscale,
    write_image,
)
from .metrics import GradientStats, gradient_stats, rmse
from .pipeline import (
    ConvergenceTrace,
    IterationRecord,
    NumericalAbortError,
    SolverParams,
    objective,
    upsample,
)
from .resample import bicubic_resize, cubic_kernel, simulate_lr
from .shrinkage import Thresholds, hard_shrink, penalty, penalty_sum, shrink, thresholds
from .synthetic import FLAT_REGION, STAIRCASE_REGION, staircase_scene, write_scene

__version__ = "0.1.0"

__all__ = [
    "EvalRecord",
    "EvalReport",
    "discover_dataset",
    "reference_table",
    "run_benchmark",
    "DiffOtf",
    "build_otf",
    "gradient",
    "solve_quadratic",
    "GuidedFilterParams",
    "box_filter",
    "guided_filter",
    "ImageIOError",
    "MalformedHeaderError",
    "TruncatedPayloadError",
    "UnsupportedFormatError",
    "read_guide",
    "read_image",
    "to_grayscale",
    "write_image",
    "GradientStats",
    "gradient_stats",
    "rmse",
    "ConvergenceTrace",
    "IterationRecord",
    "NumericalAbortError",
    "SolverParams",
    "objective",
    "upsample",
    "bicubic_resize",
    "cubic_kernel",
    "simulate_lr",
    "Thresholds",
    "hard_shrink",
    "penalty",
    "penalty_sum",
    "shrink",
    "thresholds",
    "FLAT_REGION",
    "STAIRCASE_REGION",
    "staircase_scene",
    "write_scene",
    "__version__",
]
