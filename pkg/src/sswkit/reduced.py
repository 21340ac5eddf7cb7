"""Weight-vector reductions of the FSM and of the bad-word cluster system.

For aligned parameters (L = lJ) the future of a state depends only on the
Hamming weights of its last l - 1 J-bit blocks.  Grouping states by that weight
vector shrinks the state count from sum_{i>=W} C(L, i) to at most
min(J+1, W+1)^(l-1); e.g. (40, 20, 20) needs 21 states instead of ~6.2e11.

Block weights at or above W are interchangeable (any window holding such a
block is satisfied), so a weight class ``W`` stands for every weight in
``W..J`` when ``W <= J``.  That keeps the construction exact for J >= W.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, prod

from .cluster import counts_from_block_series, solve_cluster_system
from .core import SswParams, validate
from .errors import NotAligned
from .matrixfsm import CountSeries, TransitionMatrix
from .series import TruncatedSeries, series_sum

WeightVector = tuple


def _require_aligned(params):
    if not params.aligned:
        raise NotAligned(f"weight-vector reduction needs L a multiple of J, got {params}")


def weight_cap(params: SswParams) -> int:
    return min(params.J, params.W)


def class_size(params: SswParams, i: int) -> int:
    """Number of J-bit blocks in weight class ``i``."""
    J, W = params.J, params.W
    if i >= W:
        return sum(comb(J, t) for t in range(W, J + 1))
    return comb(J, i)


def _tail(J: int, lo: int) -> int:
    """sum_{i=max(lo,0)}^{J} C(J, i)."""
    return sum(comb(J, i) for i in range(max(lo, 0), J + 1))


@dataclass(frozen=True)
class ReducedFsm:
    params: SswParams
    states: tuple[WeightVector, ...]
    matrix: TransitionMatrix
    v: tuple[int, ...]

    def labels(self) -> list[str]:
        return [format_weight_vector(w) for w in self.states]


def format_weight_vector(w: WeightVector) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def weight_vectors(params: SswParams) -> list[WeightVector]:
    """The state set: vectors in {0..min(J,W)}^(l-1) with sum >= W - J, lexicographic."""
    _require_aligned(params)
    cap = weight_cap(params)
    return [w for w in product(range(cap + 1), repeat=params.ell - 1)
            if sum(w) >= params.W - params.J]


def state_count(params: SswParams, w: WeightVector) -> int:
    """How many full L-bit states have last-block weight classes ``w``."""
    return prod(class_size(params, x) for x in w) * _tail(params.J, params.W - sum(w))


def build_reduced(params: SswParams) -> ReducedFsm:
    params = validate(params)
    _require_aligned(params)
    J, W = params.J, params.W
    if params.ell == 1:
        # J = L: a single state; every heavy block may follow
        n = _tail(J, W)
        return ReducedFsm(params, ((),), TransitionMatrix.from_entries(1, {(0, 0): n}), (n,))
    states = weight_vectors(params)
    index = {w: i for i, w in enumerate(states)}
    cap = weight_cap(params)
    entries = {}
    for i, w in enumerate(states):
        s = sum(w)
        for a in range(cap + 1):
            # the window formed by w and the appended block must reach W
            if s + a >= W:
                entries[(i, index[w[1:] + (a,)])] = class_size(params, a)
    m = TransitionMatrix.from_entries(len(states), entries)
    v = tuple(state_count(params, w) for w in states)
    return ReducedFsm(params, tuple(states), m, v)


def count_reduced(params: SswParams, k_max: int, fsm: ReducedFsm | None = None) -> CountSeries:
    """Counts at lengths kJ for ``l <= k <= l + k_max`` as ``v^T A_R^(k-l) 1``.

    ``v`` weights the starting window class and each edge multiplicity counts
    the appended blocks, so ``v`` multiplies from the left.
    """
    params = validate(params)
    r = fsm if fsm is not None else build_reduced(params)
    x = [1] * r.matrix.dim
    counts = {}
    for t in range(k_max + 1):
        counts[(params.ell + t) * params.J] = sum(a * b for a, b in zip(r.v, x))
        if t < k_max:
            x = r.matrix.matvec(x)
    return CountSeries(params, counts, "reduced")


# --- refined Goulden-Jackson ---------------------------------------------------------

def refined_bad_system(params: SswParams):
    """Unknowns, constant terms and grouped couplings of the refined cluster system.

    A bad word is l consecutive block weights summing to < W; it is keyed by
    its last l - 1 weights, the free first weight being summed out.
    """
    params = validate(params)
    _require_aligned(params)
    J, W, ell = params.J, params.W, params.ell
    top = min(J, W - 1)
    bad = [w for w in product(range(top + 1), repeat=ell - 1) if sum(w) < W] if W > 0 else []
    const = [prod(comb(J, x) for x in w) * sum(comb(J, i) for i in range(W - sum(w)))
             for w in bad]
    # group (o, p): bad vectors whose last o weights equal p
    group_of: dict[tuple, int] = {}
    groups: list[list[int]] = []
    for idx, w in enumerate(bad):
        for o in range(1, ell):
            key = (o, w[ell - 1 - o:])
            if key not in group_of:
                group_of[key] = len(groups)
                groups.append([])
            groups[group_of[key]].append(idx)
    terms = []
    for w in bad:
        row = []
        for o in range(1, ell):
            mult = prod(comb(J, w[k - 1]) for k in range(o, ell))
            if not mult:
                continue
            # overlapped prefix: free first weight i, then w_1..w_{o-1}
            for i in range(min(top, W - sum(w) - 1) + 1):
                g = group_of.get((o, (i,) + w[:o - 1]))
                if g is not None:
                    row.append((g, ell - o, mult))
        terms.append(row)
    return bad, const, groups, terms


def refined_gj_block_series(params: SswParams, order: int) -> TruncatedSeries:
    params = validate(params)
    bad, const, groups, terms = refined_bad_system(params)
    clusters = solve_cluster_system(const, params.ell, groups, terms, order)
    total = series_sum(clusters, order)
    denom = (TruncatedSeries.monomial(1, 0, order)
             - TruncatedSeries.monomial(1 << params.J, 1, order) - total)
    return denom.reciprocal()


def refined_gj_series(params: SswParams, k_max: int) -> CountSeries:
    """Counts at lengths kJ, ``l <= k <= l + k_max``, from the refined cluster system."""
    params = validate(params)
    _require_aligned(params)
    f = refined_gj_block_series(params, params.ell + k_max)
    return counts_from_block_series(params, f, k_max, "rgj")
