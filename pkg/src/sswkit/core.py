"""Constraint parameters, bit-string helpers and the brute-force counting oracle.

A binary string of length ``n = L + kJ`` is an (L, J, W)-SSW sequence when each
of the ``k + 1`` length-L windows starting at bit positions ``1, J+1, 2J+1, ...``
holds at least W ones.  Position 1 is the leftmost (first transmitted) bit; when
a string is packed into an integer, position 1 is the most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import BadLength, InvalidParams, NotAligned, OracleLimitExceeded

ORACLE_LIMIT = 24


@dataclass(frozen=True, order=True)
class SswParams:
    """The (L, J, W) triple: window length, skip length, minimum window weight."""

    L: int
    J: int
    W: int

    def __post_init__(self):
        _check(self.L, self.J, self.W)

    @property
    def aligned(self) -> bool:
        return self.L % self.J == 0

    @property
    def ell(self) -> int:
        """Blocks per window, L / J; only defined for aligned parameters."""
        if not self.aligned:
            raise NotAligned(f"L={self.L} is not a multiple of J={self.J}")
        return self.L // self.J

    @property
    def num_states(self) -> int:
        """Number of L-bit words of weight >= W (FSM dimension)."""
        return sum(comb(self.L, i) for i in range(self.W, self.L + 1))

    def __str__(self):
        return f"({self.L},{self.J},{self.W})"


def _check(L, J, W):
    for name, v in (("L", L), ("J", J), ("W", W)):
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
            raise InvalidParams(f"{name} must be an integer, got {v!r}")
    if J < 1:
        raise InvalidParams(f"skip length J must be >= 1, got {J}")
    if J > L:
        raise InvalidParams(f"skip length J={J} exceeds window length L={L}")
    if W < 0 or W > L:
        raise InvalidParams(f"minimum weight W={W} outside [0, L={L}]")


def validate(params) -> SswParams:
    """Return ``params`` unchanged if it is a well-formed constraint triple.

    Accepts an :class:`SswParams` or any ``(L, J, W)`` sequence.
    """
    if isinstance(params, SswParams):
        _check(params.L, params.J, params.W)
        return params
    try:
        L, J, W = params
    except (TypeError, ValueError):
        raise InvalidParams(f"expected an (L, J, W) triple, got {params!r}") from None
    return SswParams(L, J, W)


# --- admissible lengths -----------------------------------------------------

def is_admissible(params: SswParams, n: int) -> bool:
    return n >= params.L and (n - params.L) % params.J == 0


def admissible_lengths(params: SswParams, k_max: int) -> list[int]:
    """Lengths ``L + kJ`` for ``0 <= k <= k_max``."""
    return [params.L + k * params.J for k in range(k_max + 1)]


@dataclass(frozen=True)
class LengthGrid:
    params: SswParams
    k_max: int

    @property
    def lengths(self) -> list[int]:
        return admissible_lengths(self.params, self.k_max)

    def __contains__(self, n) -> bool:
        return is_admissible(self.params, n) and (n - self.params.L) // self.params.J <= self.k_max


# --- bit strings --------------------------------------------------------------

def as_bits(b) -> str:
    """Normalise a bit string given as ``str`` or a sequence of 0/1 ints."""
    if isinstance(b, str):
        s = b.replace(" ", "")
    else:
        s = "".join(str(int(x)) for x in b)
    if s.strip("01"):
        raise ValueError(f"not a bit string: {b!r}")
    return s


def weight(b) -> int:
    return as_bits(b).count("1")


def bits_to_int(b) -> int:
    s = as_bits(b)
    return int(s, 2) if s else 0


def int_to_bits(x: int, n: int) -> str:
    return format(x, f"0{n}b") if n else ""


def is_valid_sequence(b, params: SswParams) -> bool:
    """True iff every checked window of ``b`` has weight >= W.

    Strings whose length is not of the form L + kJ are rejected.
    """
    s = as_bits(b)
    n = len(s)
    if not is_admissible(params, n):
        return False
    L, J, W = params.L, params.J, params.W
    return all(s[m:m + L].count("1") >= W for m in range(0, n - L + 1, J))


# --- brute-force oracle ---------------------------------------------------------

def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def _check_budget(n: int, limit: int):
    if n > limit:
        raise OracleLimitExceeded(
            f"brute force over 2^{n} strings exceeds the oracle limit n <= {limit}")


def valid_sequences(params: SswParams, n: int, oracle_limit: int = ORACLE_LIMIT) -> np.ndarray:
    """All valid sequences of length ``n`` as sorted integers (bit 1 = MSB).

    Enumerates candidate strings J bits at a time and drops a prefix as soon as
    its newest window fails, so every surviving string has been checked against
    every window.
    """
    params = validate(params)
    if not is_admissible(params, n):
        return np.zeros(0, dtype=np.int64)
    _check_budget(n, oracle_limit)
    L, J, W = params.L, params.J, params.W
    mask = (1 << L) - 1
    cur = np.arange(1 << L, dtype=np.int64)
    cur = cur[_popcount(cur) >= W]
    for _ in range((n - L) // J):
        ext = (cur[:, None] << J) | np.arange(1 << J, dtype=np.int64)[None, :]
        ext = ext.ravel()
        cur = ext[_popcount(ext & mask) >= W]
    return np.sort(cur)


def brute_force_count(params: SswParams, n: int, oracle_limit: int = ORACLE_LIMIT) -> int:
    """Exact number of valid length-``n`` sequences by exhaustive enumeration.

    Returns 0 for lengths not of the form L + kJ.
    """
    return int(valid_sequences(params, n, oracle_limit).size)


def brute_force_counts(params: SswParams, n_max: int,
                       oracle_limit: int = ORACLE_LIMIT) -> dict[int, int]:
    """Oracle counts at every admissible length ``<= n_max`` in one pass."""
    params = validate(params)
    out: dict[int, int] = {}
    if n_max < params.L:
        return out
    _check_budget(max(n for n in range(params.L, n_max + 1, params.J)), oracle_limit)
    L, J, W = params.L, params.J, params.W
    mask = (1 << L) - 1
    cur = np.arange(1 << L, dtype=np.int64)
    cur = cur[_popcount(cur) >= W]
    n = L
    while True:
        out[n] = int(cur.size)
        if n + J > n_max:
            return out
        ext = ((cur[:, None] << J) | np.arange(1 << J, dtype=np.int64)[None, :]).ravel()
        cur = ext[_popcount(ext & mask) >= W]
        n += J


def naive_count(params: SswParams, n: int) -> int:
    """Filter all 2^n strings through :func:`is_valid_sequence`. Tiny n only."""
    return sum(is_valid_sequence(int_to_bits(x, n), params) for x in range(1 << n))


# --- 2^J-ary equivalence ----------------------------------------------------------

def to_qary(b, params: SswParams) -> list[int]:
    """Read ``b`` as consecutive J-bit blocks, each block giving one symbol."""
    if not params.aligned:
        raise NotAligned(f"L={params.L} is not a multiple of J={params.J}")
    s = as_bits(b)
    J = params.J
    if len(s) % J:
        raise BadLength(f"length {len(s)} is not a multiple of J={J}")
    return [int(s[i:i + J], 2) for i in range(0, len(s), J)]


def from_qary(symbols: Iterable[int], J: int) -> str:
    out = []
    for q in symbols:
        if not 0 <= q < (1 << J):
            raise ValueError(f"symbol {q} outside [0, 2^{J})")
        out.append(int_to_bits(q, J))
    return "".join(out)


def is_valid_qary(symbols: Sequence[int], window: int, min_cost, cost) -> bool:
    """Windowed cost constraint with skip 1 over a q-ary alphabet.

    Every run of ``window`` consecutive symbols must have total ``cost`` at
    least ``min_cost``; a sequence shorter than one window is rejected.
    """
    n = len(symbols)
    if n < window:
        return False
    return all(sum(cost(q) for q in symbols[m:m + window]) >= min_cost
               for m in range(n - window + 1))


def hamming_cost(q: int) -> int:
    return int(q).bit_count()
