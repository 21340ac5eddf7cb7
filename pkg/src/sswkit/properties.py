"""Finite-length inequalities on SSW code sizes and rates, as executable checks.

Each check returns a :class:`Comparison` holding both sides exactly (counts) or
as floats (rates), so callers can test the inequality and, separately, whether
it is tight.  The conjectured rate monotonicity is only reported, never
enforced.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import SswParams, validate
from .errors import NotAligned
from .matrixfsm import count_fsm
from .spectral import capacity, convergence_bound, log2_int

RATE_EPS = 1e-12


@dataclass(frozen=True)
class Comparison:
    """``lhs <= rhs`` expected; ``equal`` reports tightness."""

    lhs: float
    rhs: float
    label: str = ""
    eps: float = 0.0

    @property
    def holds(self) -> bool:
        # exact for big ints: adding a float eps would round them
        if not self.eps:
            return self.lhs <= self.rhs
        return self.lhs <= self.rhs + self.eps

    @property
    def equal(self) -> bool:
        if not self.eps:
            return self.lhs == self.rhs
        return abs(self.lhs - self.rhs) <= self.eps


@lru_cache(maxsize=256)
def _counts(params: SswParams, k_max: int) -> dict[int, int]:
    return dict(count_fsm(params, k_max).counts)


def M(params: SswParams, n: int) -> int:
    """Exact code size at length ``n`` (0 off the grid)."""
    if n < params.L or (n - params.L) % params.J:
        return 0
    k = (n - params.L) // params.J
    # round the horizon up so nearby lengths share one cached series
    return _counts(params, max(16, 1 << k.bit_length()))[n]


def rate(params: SswParams, n: int) -> float:
    return log2_int(M(params, n)) / n


def _aligned(params):
    params = validate(params)
    if not params.aligned:
        raise NotAligned(f"{params} is not aligned")
    return params


def _check_hk(params, *hs):
    for h in hs:
        if h < params.ell:
            raise ValueError(f"block counts must be >= l = {params.ell}, got {h}")


def submultiplicative(params: SswParams, h: int, k: int) -> Comparison:
    """M((h+k)J) <= M(hJ) M(kJ)."""
    p = _aligned(params)
    _check_hk(p, h, k)
    J = p.J
    return Comparison(M(p, (h + k) * J), M(p, h * J) * M(p, k * J), "submultiplicative")


def supermultiplicative(params: SswParams, h: int, k: int) -> Comparison:
    """M(hJ) M(kJ) <= M((h+k)J + L - J)."""
    p = _aligned(params)
    _check_hk(p, h, k)
    J = p.J
    return Comparison(M(p, h * J) * M(p, k * J), M(p, (h + k) * J + p.L - J), "supermultiplicative")


def power_chain(params: SswParams, h: int, k: int) -> tuple[Comparison, Comparison]:
    """M(khJ) <= M(hJ)^k <= M(khJ + (k-1)(L-J))."""
    p = _aligned(params)
    _check_hk(p, h)
    J = p.J
    mid = M(p, h * J) ** k
    return (Comparison(M(p, k * h * J), mid, "chain-left"),
            Comparison(mid, M(p, k * h * J + (k - 1) * (p.L - J)), "chain-right"))


def rate_scaling(params: SswParams, h: int, k: int) -> tuple[Comparison, Comparison]:
    """rate(khJ) <= rate(hJ) <= (m / kh) rate(mJ) with m = kh + (k-1)(l-1)."""
    p = _aligned(params)
    _check_hk(p, h)
    J, ell = p.J, p.ell
    m = k * h + (k - 1) * (ell - 1)
    mid = rate(p, h * J)
    return (Comparison(rate(p, k * h * J), mid, "rate-left", RATE_EPS),
            Comparison(mid, m / (k * h) * rate(p, m * J), "rate-right", RATE_EPS))


def rate_above_capacity(params: SswParams, k: int, cap: float | None = None) -> Comparison:
    """capacity <= rate(L + kJ)."""
    p = _aligned(params)
    c = capacity(p).value if cap is None else cap
    return Comparison(c, rate(p, p.L + k * p.J), "rate-capacity", 1e-9)


def convergence_gap(params: SswParams, k: int, cap: float | None = None) -> Comparison:
    """rate(L + kJ) - capacity < convergence bound."""
    p = validate(params)
    c = capacity(p).value if cap is None else cap
    return Comparison(rate(p, p.L + k * p.J) - c, convergence_bound(p, k), "convergence")


# equality conditions, including the degenerate codes (W = 0: every string
# valid; W = L: only the all-ones string) that make both sides trivially equal

def submultiplicative_tight(params: SswParams) -> bool:
    return params.L == params.J or params.W in (0, params.L)


def supermultiplicative_tight(params: SswParams) -> bool:
    return params.W == params.L or params.L == params.J


def rate_capacity_tight(params: SswParams) -> bool:
    return submultiplicative_tight(params)


# --- diagnostics ----------------------------------------------------------------------

def conjecture_violations(params: SswParams, h: int, k_max: int) -> list[tuple[int, float, float]]:
    """Lengths where rate((k+1)hL) > rate(khL), 1 <= k < k_max.

    Returns ``(k, rate(khL), rate((k+1)hL))`` for each violation.
    """
    p = _aligned(params)
    out = []
    for k in range(1, k_max):
        a, b = rate(p, k * h * p.L), rate(p, (k + 1) * h * p.L)
        if b > a + RATE_EPS:
            out.append((k, a, b))
    return out


def rate_increases(params: SswParams, k_max: int) -> list[tuple[int, float, float]]:
    """Steps where rate(L + (k+1)J) > rate(L + kJ), 0 <= k < k_max."""
    p = validate(params)
    out = []
    for k in range(k_max):
        a, b = rate(p, p.L + k * p.J), rate(p, p.L + (k + 1) * p.J)
        if b > a + RATE_EPS:
            out.append((k, a, b))
    return out
