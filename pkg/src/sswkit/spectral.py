"""Perron eigenvalues, noiseless capacity and finite-length rates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.sparse import identity

from .core import SswParams, validate
from .counting import count, count_series
from .errors import DimensionTooLarge, EmptyCode, InternalConsistencyError, NoConvergence
from .matrixfsm import TransitionMatrix, build_skip_matrix, check_irreducible, count_walks
from .reduced import build_reduced

DEFAULT_TOL = 1e-12
MAX_ITER = 10**6


def log2_int(n: int) -> float:
    """log2 of a positive integer of any size, relative error well below 1e-12."""
    if n <= 0:
        raise ValueError("log2 of a nonpositive integer")
    shift = n.bit_length() - 64
    if shift <= 0:
        return math.log2(n)
    return math.log2(n >> shift) + shift


class Eigen(NamedTuple):
    lam: float
    residual: float


def _power_iteration(m: TransitionMatrix, tol: float, max_iter: int):
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m.nnz == 0:
        raise ValueError("matrix has no nonzero entries")
    a = m.to_scipy()
    shifted = (a + identity(m.dim, format="csr")).tocsr()
    x = np.full(m.dim, 1.0)
    mu = 0.0
    for _ in range(max_iter):
        y = shifted @ x
        mu_new = float(y.max())
        y /= mu_new
        done = abs(mu_new - mu) <= tol * mu_new and float(np.abs(y - x).max()) <= tol
        x, mu = y, mu_new
        if done:
            return a, mu - 1.0, x
    lam = mu - 1.0
    raise NoConvergence(f"power iteration did not converge in {max_iter} steps",
                        estimate=lam, residual=_residual(a, x, lam))


def dominant_eigenvalue(m: TransitionMatrix, tol: float = DEFAULT_TOL,
                        max_iter: int = MAX_ITER) -> Eigen:
    """Largest eigenvalue of a nonnegative matrix by power iteration on ``M + I``.

    The identity shift makes the iteration aperiodic; the start vector is
    uniform.  Returns the eigenvalue of ``M`` and the residual
    ``||Mx - lam x||_inf / ||x||_inf`` at the final iterate.
    """
    a, lam, x = _power_iteration(m, tol, max_iter)
    return Eigen(lam, _residual(a, x, lam))


def perron_vector(m: TransitionMatrix, tol: float = DEFAULT_TOL,
                  max_iter: int = MAX_ITER) -> tuple[float, np.ndarray]:
    """Dominant eigenvalue and its right eigenvector, scaled to max entry 1."""
    _, lam, x = _power_iteration(m, tol, max_iter)
    return lam, x


def _residual(a, x, lam):
    return float(np.abs(a @ x - lam * x).max() / np.abs(x).max())


@dataclass(frozen=True)
class CapacityEstimate:
    value: float
    method: str
    lam: float
    residual: float
    reducible: bool = False


def perron_bounds_hold(m: TransitionMatrix, lam: float, rel: float = 1e-9) -> bool:
    sums = m.row_sums()
    slack = rel * max(1.0, lam)
    return min(sums) - slack <= lam <= max(sums) + slack


def capacity(params: SswParams, method: str = "fsm", tol: float = DEFAULT_TOL) -> CapacityEstimate:
    """Noiseless capacity log2(lam) / J from the FSM or the reduced FSM."""
    params = validate(params)
    if method == "auto":
        method = "reduced" if params.aligned else "fsm"
    if method == "fsm":
        _, m = build_skip_matrix(params)
    elif method == "reduced":
        m = build_reduced(params).matrix
    else:
        raise ValueError(f"capacity method must be 'fsm' or 'reduced', got {method!r}")
    lam, res = dominant_eigenvalue(m, tol)
    if not perron_bounds_hold(m, lam):
        raise InternalConsistencyError(
            f"eigenvalue {lam} outside the row-sum bounds of the {method} matrix for {params}")
    reducible = not check_irreducible(m).irreducible
    value = math.log2(lam) / params.J
    return CapacityEstimate(value, method, lam, res, reducible)


@dataclass(frozen=True)
class RatePoint:
    n: int
    rate: float
    count: int


def finite_rate(params: SswParams, n: int, method: str = "fsm") -> RatePoint:
    """log2(M(n)) / n from an exact count."""
    params = validate(params)
    c = count(params, n, method)
    if c == 0:
        raise EmptyCode(f"no {params}-SSW sequences of length {n}")
    return RatePoint(n, log2_int(c) / n, c)


def rate_curve(params: SswParams, k_max: int, method: str = "auto") -> list[RatePoint]:
    """Rates at every grid length L + kJ, ``0 <= k <= k_max``."""
    series = count_series(params, k_max, method)
    return [RatePoint(n, log2_int(c) / n, c) for n, c in series.items()]


# --- convergence bound --------------------------------------------------------------

def _sigma_nu(b: int, k: int) -> tuple[float, float]:
    lk = math.log2(k)
    if b == 2:
        return 0.5 * (lk + 1) * (lk + 2), lk + 1
    e = k ** (math.log2(b - 1) / math.log2(b))
    return (b - 1) ** 3 / (b - 2) ** 2 * e, (b - 1) ** 2 / (b - 2) * e


def convergence_bound(params: SswParams, k: int, max_dim: int = 64) -> float:
    """Upper bound on ``rate(L + kJ) - capacity`` for ``k >= 1``.

    Evaluates sigma_b(k)/(kJ) * log2(2^b - 1) + nu_b(k)/(kJ) * log2((1'B1)^b / 1'B^b 1)
    for the b x b FSM matrix B.
    """
    params = validate(params)
    if k < 1:
        raise ValueError("the convergence bound is stated for k >= 1")
    b = params.num_states
    if b > max_dim:
        raise DimensionTooLarge(f"FSM dimension {b} exceeds {max_dim}")
    if b < 2:
        raise ValueError("the convergence bound needs an FSM with at least 2 states")
    _, m = build_skip_matrix(params)
    walks = count_walks(m, [1] * b, b)
    sigma, nu = _sigma_nu(b, k)
    kj = k * params.J
    ratio_log = b * log2_int(walks[1]) - log2_int(walks[b])
    return sigma / kj * log2_int((1 << b) - 1) + nu / kj * ratio_log
