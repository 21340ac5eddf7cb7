"""Exact counting and capacity analysis for skip-sliding-window constrained codes."""

from .core import (SswParams, brute_force_count, brute_force_counts, is_admissible,
                   is_valid_sequence, validate)
from .counting import METHODS, count, count_series
from .errors import SswError
from .matrixfsm import TransitionMatrix, build_skip_matrix, count_fsm
from .noisy import BoundReport, Channel, ba_sec_capacity, bound_report, mgl_lower, zw_lower
from .reduced import ReducedFsm, build_reduced, count_reduced, refined_gj_series
from .cluster import gj_bad_series
from .series import TruncatedSeries
from .spectral import capacity, dominant_eigenvalue, finite_rate, rate_curve

__version__ = "0.1.0"

__all__ = [
    "SswParams", "validate", "is_admissible", "is_valid_sequence",
    "brute_force_count", "brute_force_counts",
    "METHODS", "count", "count_series",
    "TransitionMatrix", "build_skip_matrix", "count_fsm",
    "gj_bad_series", "ReducedFsm", "build_reduced", "count_reduced", "refined_gj_series",
    "TruncatedSeries", "capacity", "dominant_eigenvalue", "finite_rate", "rate_curve",
    "Channel", "BoundReport", "mgl_lower", "zw_lower", "ba_sec_capacity", "bound_report",
    "SswError", "__version__",
]
