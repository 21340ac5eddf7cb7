"""Capacity bounds for SSW codes over the binary symmetric and erasure channels.

Lower bounds: Mrs. Gerber's Lemma applied to the noiseless capacity, and the
Zehavi-Wolf bound for a stationary Markov source on the code's FSM, maximised
numerically over the edge probabilities.  Upper bound: the smaller of the
noiseless capacity and the (L, L, W) subblock-energy capacity, the latter
computed by Blahut-Arimoto on the L-bit super-letter channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .core import SswParams, validate
from .errors import AlphabetTooLarge, InfeasibleFsm, NotAligned
from .matrixfsm import StateSpace, TransitionMatrix, build_skip_matrix
from .spectral import capacity, perron_vector

BSC = "bsc"
BEC = "bec"
GRID_POINTS = 50
PROB_FLOOR = 1e-9


@dataclass(frozen=True)
class Channel:
    kind: str
    param: float

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind == BSC:
            if not 0.0 <= self.param <= 0.5:
                raise ValueError(f"BSC crossover must lie in [0, 0.5], got {self.param}")
        elif kind == BEC:
            if not 0.0 <= self.param <= 1.0:
                raise ValueError(f"BEC erasure probability must lie in [0, 1], got {self.param}")
        else:
            raise ValueError(f"unknown channel kind {self.kind!r}")

    @property
    def outputs_per_letter(self) -> int:
        return 2 if self.kind == BSC else 3

    def letter_matrix(self) -> np.ndarray:
        """Single-use transition probabilities; BEC output 2 is the erasure."""
        a = self.param
        if self.kind == BSC:
            return np.array([[1 - a, a], [a, 1 - a]])
        return np.array([[1 - a, 0.0, a], [0.0, 1 - a, a]])

    def superletter_matrix(self, n: int) -> np.ndarray:
        """Transition matrix of ``n`` channel uses, inputs as n-bit codes (first
        bit most significant) and outputs as base-2 or base-3 codes likewise."""
        return reduce(np.kron, [self.letter_matrix()] * n, np.ones((1, 1)))

    def noise_entropy(self) -> float:
        return binary_entropy(self.param)


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def star(a: float, b: float) -> float:
    return a * (1 - b) + (1 - a) * b


def inverse_binary_entropy(c: float, tol: float = 1e-12) -> float:
    """The alpha in [0, 1/2] with h(alpha) = c, by bisection."""
    if c <= 0.0:
        return 0.0
    if c >= 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < c:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _entropy_rows(p: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(p > 0, -p * np.log2(p), 0.0)
    return t.sum(axis=1)


# --- Mrs. Gerber's Lemma ------------------------------------------------------------

def mgl_lower(params: SswParams, ch: Channel, noiseless: float | None = None) -> float:
    params = validate(params)
    c = capacity(params, "auto").value if noiseless is None else noiseless
    if ch.kind == BSC:
        alpha = inverse_binary_entropy(c)
        return binary_entropy(star(alpha, ch.param)) - binary_entropy(ch.param)
    return (1 - ch.param) * c


# --- Zehavi-Wolf Markov-source bound ------------------------------------------------

@dataclass
class MarkovSource:
    """Stationary Markov chain on the FSM; ``outputs[i, j]`` is the J-bit block
    emitted on the edge i -> j (the last J bits of state j)."""

    space: StateSpace
    matrix: TransitionMatrix
    Q: np.ndarray
    outputs: np.ndarray
    pi: np.ndarray

    def stationary_residual(self) -> float:
        return float(np.abs(self.pi @ self.Q - self.pi).max())


def stationary_distribution(Q: np.ndarray) -> np.ndarray:
    b = Q.shape[0]
    a = Q.T - np.eye(b)
    a[-1, :] = 1.0
    rhs = np.zeros(b)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError:
        pi = np.linalg.lstsq(a, rhs, rcond=None)[0]
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def _project_simplex(v: np.ndarray, floor: float) -> np.ndarray:
    """Euclidean projection onto {q >= floor, sum q = 1}."""
    n = v.size
    mass = 1.0 - n * floor
    u = v - floor
    s = np.sort(u)[::-1]
    css = np.cumsum(s) - mass
    rho = np.nonzero(s - css / np.arange(1, n + 1) > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(u - theta, 0.0) + floor


class _ZwProblem:
    """Objective sum_i pi_i H(Y | S = s_i) / J - h(param) over edge probabilities."""

    def __init__(self, params: SswParams, ch: Channel, fsm=None):
        self.params = params
        self.ch = ch
        self.space, self.matrix = fsm if fsm is not None else build_skip_matrix(params)
        b = self.matrix.dim
        if any(self.matrix.indptr[r] == self.matrix.indptr[r + 1] for r in range(b)):
            raise InfeasibleFsm(f"some state of the {params} FSM has no outgoing edge")
        self.rows = [np.array([c for c, _ in self.matrix.row(r)]) for r in range(b)]
        mask = (1 << params.J) - 1
        blocks = np.array([s & mask for s in self.space.states])
        # row j: output distribution of the block written when entering state j
        self.emit = ch.superletter_matrix(params.J)[blocks, :]
        self.noise = ch.noise_entropy()
        self.evaluations = 0

    def to_matrix(self, rows: Sequence[np.ndarray]) -> np.ndarray:
        b = self.matrix.dim
        Q = np.zeros((b, b))
        for r, (cols, q) in enumerate(zip(self.rows, rows)):
            Q[r, cols] = q / q.sum()
        return Q

    def value(self, rows) -> float:
        self.evaluations += 1
        Q = self.to_matrix(rows)
        pi = stationary_distribution(Q)
        h = _entropy_rows(Q @ self.emit)
        return float(pi @ h) / self.params.J - self.noise

    def gradient(self, rows, step=1e-6) -> list[np.ndarray]:
        grads = []
        for r in range(len(rows)):
            g = np.zeros_like(rows[r])
            if rows[r].size > 1:
                for t in range(rows[r].size):
                    plus = [x.copy() for x in rows]
                    minus = [x.copy() for x in rows]
                    plus[r][t] += step
                    minus[r][t] -= step
                    g[t] = (self.value(plus) - self.value(minus)) / (2 * step)
            grads.append(g)
        return grads

    def parry_start(self) -> list[np.ndarray]:
        lam, vec = perron_vector(self.matrix)
        return [vec[cols] / (lam * vec[r]) for r, cols in enumerate(self.rows)]

    def random_start(self, rng: np.random.Generator) -> list[np.ndarray]:
        return [rng.dirichlet(np.ones(cols.size)) for cols in self.rows]

    def ascend(self, rows, max_iter: int = 300, tol: float = 1e-13):
        rows = [_project_simplex(q / q.sum(), min(PROB_FLOOR, 0.5 / q.size)) for q in rows]
        f = self.value(rows)
        step = 0.1
        it = 0
        for it in range(1, max_iter + 1):
            g = self.gradient(rows)
            improved = False
            while step > 1e-12:
                cand = [_project_simplex(q + step * d, min(PROB_FLOOR, 0.5 / q.size))
                        for q, d in zip(rows, g)]
                fc = self.value(cand)
                if fc > f:
                    gain = fc - f
                    rows, f = cand, fc
                    step *= 2.0
                    improved = True
                    break
                step *= 0.5
            if not improved or gain < tol:
                break
        return rows, f, it


def zw_lower(params: SswParams, ch: Channel, restarts: int = 8, seed: int = 0,
             max_iter: int = 300, fsm=None):
    """Best Zehavi-Wolf objective over the Parry start and ``restarts`` random starts.

    Any stationary source gives a valid lower bound, so the returned value is
    certified regardless of how close the ascent gets to the supremum.
    Returns ``(value, MarkovSource, diagnostics)``.
    """
    params = validate(params)
    limit = 12 if ch.kind == BSC else 8
    if params.J > limit:
        raise AlphabetTooLarge(f"J={params.J} exceeds the super-letter limit {limit} for {ch.kind}")
    prob = _ZwProblem(params, ch, fsm)
    rng = np.random.default_rng(seed)
    starts = [prob.parry_start()] + [prob.random_start(rng) for _ in range(restarts)]
    best, best_rows, best_start, iters = -math.inf, None, 0, 0
    for i, s in enumerate(starts):
        rows, f, it = prob.ascend(s, max_iter)
        iters += it
        if f > best:
            best, best_rows, best_start = f, rows, i
    Q = prob.to_matrix(best_rows)
    pi = stationary_distribution(Q)
    mask = (1 << params.J) - 1
    outputs = np.zeros(Q.shape, dtype=np.int64)
    for r, cols in enumerate(prob.rows):
        outputs[r, cols] = [prob.space.states[c] & mask for c in cols]
    source = MarkovSource(prob.space, prob.matrix, Q, outputs, pi)
    diagnostics = {"restarts": restarts, "best_objective": best, "best_start": best_start,
                   "iterations": iters, "evaluations": prob.evaluations}
    return max(best, 0.0), source, diagnostics


# --- Blahut-Arimoto SEC capacity ----------------------------------------------------

def ba_sec_capacity(subblock_len: int, min_weight: int, ch: Channel, tol: float = 1e-9,
                    max_iter: int = 100_000, max_entries: int = 1 << 25) -> float:
    """Per-bit capacity of subblock-energy-constrained coding over ``ch``.

    Inputs are the ``subblock_len``-bit words of weight >= ``min_weight``; the
    super-letter channel is ``subblock_len`` independent uses of ``ch``.
    Iterates until the Blahut-Arimoto upper and lower estimates agree to
    relative tolerance ``tol``.
    """
    L, W = subblock_len, min_weight
    if L < 1 or not 0 <= W <= L:
        raise ValueError(f"invalid subblock constraint L={L}, W={W}")
    n_out = ch.outputs_per_letter ** L
    words = [x for x in range(1 << L) if x.bit_count() >= W]
    if L > 10 or len(words) * n_out > max_entries:
        raise AlphabetTooLarge(f"{len(words)} x {n_out} super-letter channel is too large")
    T = ch.superletter_matrix(L)[words, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        tlogt = np.where(T > 0, T * np.log(T), 0.0).sum(axis=1)
    r = np.full(len(words), 1.0 / len(words))
    lower = 0.0
    for _ in range(max_iter):
        q = r @ T
        with np.errstate(divide="ignore"):
            logq = np.where(q > 0, np.log(np.where(q > 0, q, 1.0)), 0.0)
        d = tlogt - T @ logq
        upper = float(d.max())
        z = r * np.exp(d - upper)
        lower = upper + math.log(z.sum())
        if upper - lower <= tol * max(upper, 0.0) + 1e-15:
            break
        r = z / z.sum()
    return max(lower, 0.0) / math.log(2) / L


def upper_bound(params: SswParams, ch: Channel, noiseless: float | None = None) -> float:
    params = validate(params)
    if not params.aligned:
        raise NotAligned(f"the SEC upper bound needs L a multiple of J, got {params}")
    c = capacity(params, "auto").value if noiseless is None else noiseless
    return min(c, ba_sec_capacity(params.L, params.W, ch))


# --- reports -------------------------------------------------------------------------

@dataclass
class BoundReport:
    params: SswParams
    channel: Channel
    lower_mgl: float
    lower_zw: float
    upper: float
    zw_diagnostics: dict = field(default_factory=dict)


def bound_report(params: SswParams, ch: Channel, restarts: int = 8, seed: int = 0,
                 noiseless: float | None = None) -> BoundReport:
    """All three bounds for one channel parameter.

    For non-aligned parameters the SEC term does not apply and the upper bound
    falls back to the noiseless capacity.
    """
    params = validate(params)
    c = capacity(params, "auto").value if noiseless is None else noiseless
    mgl = mgl_lower(params, ch, c)
    zw, _, diag = zw_lower(params, ch, restarts, seed)
    up = upper_bound(params, ch, c) if params.aligned else c
    return BoundReport(params, ch, mgl, zw, up, diag)


def channel_grid(kind: str, points: int = GRID_POINTS) -> list[float]:
    top = 0.5 if kind.lower() == BSC else 1.0
    return [float(x) for x in np.linspace(0.0, top, points)]


def bound_sweep(params: SswParams, kind: str, points: int = GRID_POINTS, restarts: int = 8,
                seed: int = 0) -> list[BoundReport]:
    params = validate(params)
    c = capacity(params, "auto").value
    return [bound_report(params, Channel(kind, x), restarts, seed, c)
            for x in channel_grid(kind, points)]
