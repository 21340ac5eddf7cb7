"""Goulden-Jackson cluster counting of (lJ, J, W)-SSW sequences via bad words.

Read a string of length kJ as k letters from the alphabet {0,1}^J.  It is a
valid SSW sequence exactly when it avoids every bad word: an l-letter word of
total weight < W.  With cluster(x) the cluster generating function of the bad
words,

    f(x) = 1 / (1 - 2^J x - cluster(x)),

and [x^k] f(x) is the number of valid strings of length kJ for every k >= l.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .core import SswParams, as_bits, validate
from .errors import BadWordLimitExceeded, InternalConsistencyError, NotAligned
from .matrixfsm import CountSeries
from .series import TruncatedSeries, series_sum

BADWORD_LIMIT = 4096


@dataclass(frozen=True)
class BadWordSet:
    """All ``word_len``-bit words of weight < W, as sorted integers (bit 1 = MSB)."""

    word_len: int
    J: int
    W: int
    words: tuple[int, ...]

    @classmethod
    def for_params(cls, params: SswParams) -> "BadWordSet":
        L = params.ell * params.J
        codes = np.arange(1 << L, dtype=np.int64)
        codes = codes[np.bitwise_count(codes) < params.W]
        return cls(L, params.J, params.W, tuple(int(c) for c in codes))

    @staticmethod
    def expected_size(params: SswParams) -> int:
        return sum(comb(params.L, i) for i in range(params.W))

    def __len__(self):
        return len(self.words)


def overlaps(b_prev, b, J: int) -> set[int]:
    """Block counts ``o`` (1 <= o < l) where the last o blocks of ``b_prev``
    equal the first o blocks of ``b``."""
    sp, s = as_bits(b_prev), as_bits(b)
    if len(sp) != len(s) or len(s) % J:
        raise ValueError("overlap words must share a length that is a multiple of J")
    ell = len(s) // J
    return {o for o in range(1, ell) if sp[len(sp) - o * J:] == s[:o * J]}


def solve_cluster_system(const: Sequence[int], const_degree: int,
                         groups: Sequence[Sequence[int]],
                         terms: Sequence[Sequence[tuple[int, int, int]]],
                         order: int) -> list[TruncatedSeries]:
    """Fixed-point solve of a Goulden-Jackson cluster system.

    Unknown ``b`` satisfies

        C_b = -const[b] x^const_degree - sum mult * x^shift * G_g

    over its ``terms`` entries ``(g, shift, mult)``, where ``G_g`` is the sum of
    the unknowns listed in ``groups[g]``.  Every shift is >= 1, so each sweep
    fixes at least one more coefficient and the iteration reaches its fixed
    point within ``order + 1`` sweeps.
    """
    n = len(const)
    for row in terms:
        for _, d, _ in row:
            if d < 1:
                raise ValueError("coupling shifts must be >= 1 for the iteration to converge")
    base = [TruncatedSeries.monomial(-c, const_degree, order) for c in const]
    cur = [TruncatedSeries.zero(order) for _ in range(n)]
    for _ in range(order + 2):
        gsum = [series_sum([cur[i] for i in members], order) for members in groups]
        nxt = []
        for b in range(n):
            acc = list(base[b].coeffs)
            for g, d, mult in terms[b]:
                src = gsum[g].coeffs
                for i in range(order + 1 - d):
                    if src[i]:
                        acc[i + d] -= mult * src[i]
            nxt.append(TruncatedSeries(acc))
        if nxt == cur:
            return cur
        cur = nxt
    raise InternalConsistencyError("cluster iteration failed to reach a fixed point")


def counts_from_block_series(params: SswParams, f: TruncatedSeries, k_max: int,
                             method: str) -> CountSeries:
    """Read counts at lengths kJ, l <= k <= l + k_max, off the block-variable series ``f``."""
    ell, J = params.ell, params.J
    counts = {}
    for k in range(ell, ell + k_max + 1):
        c = f[k]
        if not (isinstance(c, int) and c >= 0):
            raise InternalConsistencyError(
                f"coefficient of x^{k} for {params} is {c}, not a nonnegative integer")
        counts[k * J] = c
    return CountSeries(params, counts, method)


def bad_word_system(params: SswParams, badword_limit: int = BADWORD_LIMIT):
    """Bad words plus the grouped overlap structure used by the cluster solve."""
    params = validate(params)
    if not params.aligned:
        raise NotAligned(f"cluster counting needs L a multiple of J, got {params}")
    size = BadWordSet.expected_size(params)
    if size > badword_limit:
        raise BadWordLimitExceeded(f"{size} bad words for {params} exceed the limit {badword_limit}")
    bad = BadWordSet.for_params(params)
    ell, J = params.ell, params.J
    # group (o, s): bad words whose last o blocks spell s
    group_of: dict[tuple[int, int], int] = {}
    groups: list[list[int]] = []
    for idx, w in enumerate(bad.words):
        for o in range(1, ell):
            key = (o, w & ((1 << (o * J)) - 1))
            if key not in group_of:
                group_of[key] = len(groups)
                groups.append([])
            groups[group_of[key]].append(idx)
    terms: list[list[tuple[int, int, int]]] = []
    for w in bad.words:
        row = []
        for o in range(1, ell):
            g = group_of.get((o, w >> ((ell - o) * J)))
            if g is not None:
                row.append((g, ell - o, 1))
        terms.append(row)
    return bad, groups, terms


def gj_bad_block_series(params: SswParams, order: int,
                        badword_limit: int = BADWORD_LIMIT) -> TruncatedSeries:
    """``f(x)`` in the block variable, truncated at ``x^order``."""
    bad, groups, terms = bad_word_system(params, badword_limit)
    ell, J = params.ell, params.J
    clusters = solve_cluster_system([1] * len(bad), ell, groups, terms, order)
    total = series_sum(clusters, order)
    denom = TruncatedSeries.monomial(1, 0, order) - TruncatedSeries.monomial(1 << J, 1, order) - total
    return denom.reciprocal()


def gj_bad_series(params: SswParams, k_max: int,
                  badword_limit: int = BADWORD_LIMIT) -> CountSeries:
    """Counts at lengths kJ for ``l <= k <= l + k_max`` by the bad-word cluster method.

    These are the lengths L + k'J with ``k' = k - l``, the same grid as
    :func:`count_fsm` with ``k_max``.
    """
    params = validate(params)
    if not params.aligned:
        raise NotAligned(f"cluster counting needs L a multiple of J, got {params}")
    f = gj_bad_block_series(params, params.ell + k_max, badword_limit)
    return counts_from_block_series(params, f, k_max, "gj")


def gj_bad_generating_function(params: SswParams, order: int,
                               badword_limit: int = BADWORD_LIMIT) -> TruncatedSeries:
    """``g(x) = f(x^J)`` in the bit-length variable, truncated at ``x^order``."""
    params = validate(params)
    f = gj_bad_block_series(params, order // params.J, badword_limit)
    return f.stretch(params.J, order)
