"""Single entry point over the independent counting methods."""

from __future__ import annotations

from .cluster import gj_bad_series
from .core import SswParams, brute_force_counts, is_admissible, validate
from .matrixfsm import CountSeries, count_fsm
from .reduced import count_reduced, refined_gj_series

METHODS = ("fsm", "gj", "reduced", "rgj", "oracle")
ALIGNED_ONLY = frozenset({"gj", "reduced", "rgj"})


def _oracle(params, k_max):
    return CountSeries(params, brute_force_counts(params, params.L + k_max * params.J), "oracle")


_COUNTERS = {
    "fsm": count_fsm,
    "gj": gj_bad_series,
    "reduced": count_reduced,
    "rgj": refined_gj_series,
    "oracle": _oracle,
}


def auto_method(params: SswParams) -> str:
    """``reduced`` when aligned and its state bound is no larger than the FSM's."""
    params = validate(params)
    if params.aligned:
        bound = min(params.J + 1, params.W + 1) ** (params.ell - 1)
        if bound <= params.num_states:
            return "reduced"
    return "fsm"


def resolve_method(params: SswParams, method: str) -> str:
    if method == "auto":
        return auto_method(params)
    if method not in _COUNTERS:
        raise ValueError(f"unknown counting method {method!r}; choose from {METHODS}")
    return method


def count_series(params: SswParams, k_max: int, method: str = "auto") -> CountSeries:
    """Counts at L + kJ for ``0 <= k <= k_max`` by the chosen method."""
    params = validate(params)
    return _COUNTERS[resolve_method(params, method)](params, k_max)


def count(params: SswParams, n: int, method: str = "auto") -> int:
    """M(n); zero for lengths off the L + kJ grid."""
    params = validate(params)
    if not is_admissible(params, n):
        return 0
    return count_series(params, (n - params.L) // params.J, method)[n]
