"""Finite-state machine of an (L, J, W)-SSW code and transfer-matrix counting.

States are the L-bit words of weight >= W, i.e. the last L bits written so far.
Appending J bits moves a state to the word formed by its last L - J bits
followed by the new block; the move is an edge when the target is also a state.
The resulting 0/1 matrix is the de Bruijn power A^J restricted to heavy words,
built here without ever forming the 2^L-state matrix A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import SswParams, admissible_lengths, is_admissible, validate
from .errors import StateLimitExceeded

STATE_LIMIT = 1 << 20


@dataclass(frozen=True)
class StateSpace:
    L: int
    states: tuple[int, ...]
    index: Mapping[int, int] = field(repr=False, compare=False)

    @classmethod
    def heavy_words(cls, L: int, W: int) -> "StateSpace":
        codes = np.arange(1 << L, dtype=np.int64)
        codes = codes[np.bitwise_count(codes) >= W]
        states = tuple(int(c) for c in codes)
        return cls(L, states, {s: i for i, s in enumerate(states)})

    def __len__(self):
        return len(self.states)

    def label(self, i: int) -> str:
        return format(self.states[i], f"0{self.L}b")


@dataclass(frozen=True)
class TransitionMatrix:
    """Square nonnegative integer matrix in compressed-row form.

    Only strictly positive entries are stored; entries are Python ints so
    binomial multiplicities and walk counts never overflow.
    """

    dim: int
    indptr: tuple[int, ...]
    indices: tuple[int, ...]
    data: tuple[int, ...]

    @classmethod
    def from_entries(cls, dim: int, entries: Mapping[tuple[int, int], int]) -> "TransitionMatrix":
        rows: list[list[tuple[int, int]]] = [[] for _ in range(dim)]
        for (r, c), v in entries.items():
            if not (0 <= r < dim and 0 <= c < dim):
                raise IndexError(f"entry ({r}, {c}) outside a {dim}x{dim} matrix")
            v = int(v)
            if v < 0:
                raise ValueError("transition matrices are nonnegative")
            if v:
                rows[r].append((c, v))
        return cls._from_rows(dim, rows)

    @classmethod
    def from_dense(cls, a) -> "TransitionMatrix":
        a = [[int(x) for x in row] for row in a]
        return cls.from_entries(len(a), {(i, j): v for i, row in enumerate(a)
                                         for j, v in enumerate(row) if v})

    @classmethod
    def _from_rows(cls, dim, rows):
        indptr, indices, data = [0], [], []
        for row in rows:
            for c, v in sorted(row):
                indices.append(c)
                data.append(v)
            indptr.append(len(indices))
        return cls(dim, tuple(indptr), tuple(indices), tuple(data))

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return {(r, c): v for r in range(self.dim) for c, v in self.row(r)}

    @property
    def nnz(self) -> int:
        return len(self.data)

    def row(self, r: int) -> list[tuple[int, int]]:
        a, b = self.indptr[r], self.indptr[r + 1]
        return list(zip(self.indices[a:b], self.data[a:b]))

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        for cc, v in self.row(r):
            if cc == c:
                return v
        return 0

    def row_sums(self) -> list[int]:
        return [sum(self.data[self.indptr[r]:self.indptr[r + 1]]) for r in range(self.dim)]

    def matvec(self, x: Sequence[int]) -> list[int]:
        """Exact product ``M @ x``."""
        ip, ix, d = self.indptr, self.indices, self.data
        return [sum(d[t] * x[ix[t]] for t in range(ip[r], ip[r + 1])) for r in range(self.dim)]

    def to_scipy(self, dtype=float) -> csr_matrix:
        return csr_matrix((np.asarray(self.data, dtype=dtype), np.asarray(self.indices),
                           np.asarray(self.indptr)), shape=(self.dim, self.dim))

    def to_dense(self, dtype=float) -> np.ndarray:
        return self.to_scipy(dtype).toarray()


@dataclass(frozen=True)
class CountSeries:
    """Exact codeword counts M(n) indexed by length.

    Lengths outside the L + kJ grid read as 0; grid lengths that were not
    computed raise ``KeyError``.
    """

    params: SswParams
    counts: Mapping[int, int]
    method: str = ""

    def __getitem__(self, n: int) -> int:
        if not is_admissible(self.params, n):
            return 0
        return self.counts[n]

    def lengths(self) -> list[int]:
        return sorted(self.counts)

    def items(self):
        return sorted(self.counts.items())


def build_skip_matrix(params: SswParams, state_limit: int = STATE_LIMIT):
    """Return ``(StateSpace, TransitionMatrix)`` for the FSM of ``params``."""
    params = validate(params)
    L, J, W = params.L, params.J, params.W
    b = params.num_states
    if b > state_limit:
        raise StateLimitExceeded(f"{b} FSM states for {params} exceed the limit {state_limit}")
    space = StateSpace.heavy_words(L, W)
    codes = np.asarray(space.states, dtype=np.int64)
    mask = (1 << L) - 1
    targets = ((codes[:, None] << J) | np.arange(1 << J, dtype=np.int64)[None, :]) & mask
    keep = np.bitwise_count(targets) >= W
    # canonical state order is ascending code value, so ordinals come from a sorted search
    cols = np.searchsorted(codes, targets)
    indptr = [0]
    indices: list[int] = []
    for r in range(b):
        row = np.unique(cols[r][keep[r]])
        indices.extend(int(c) for c in row)
        indptr.append(len(indices))
    m = TransitionMatrix(b, tuple(indptr), tuple(indices), (1,) * len(indices))
    return space, m


def count_walks(m: TransitionMatrix, start: Sequence[int], k_max: int) -> list[int]:
    """``1^T M^k start`` for ``k = 0..k_max`` by repeated exact mat-vec."""
    v = list(start)
    out = [sum(v)]
    for _ in range(k_max):
        v = m.matvec(v)
        out.append(sum(v))
    return out


def count_fsm(params: SswParams, k_max: int, state_limit: int = STATE_LIMIT,
              fsm=None) -> CountSeries:
    """Counts at lengths L + kJ, ``0 <= k <= k_max``, as ``1^T B^k 1``."""
    params = validate(params)
    _, m = fsm if fsm is not None else build_skip_matrix(params, state_limit)
    totals = count_walks(m, [1] * m.dim, k_max)
    return CountSeries(params, dict(zip(admissible_lengths(params, k_max), totals)), "fsm")


@dataclass(frozen=True)
class Irreducibility:
    irreducible: bool
    component_sizes: tuple[int, ...]
    anchor_component_size: int

    def __bool__(self):
        return self.irreducible


def check_irreducible(m: TransitionMatrix, anchor: int | None = None) -> Irreducibility:
    """Strongly connected components of the nonzero pattern of ``m``.

    ``anchor`` defaults to the last ordinal, which is the all-ones state of a
    heavy-word state space and the all-saturated state of a reduced FSM.
    """
    if anchor is None:
        anchor = m.dim - 1
    n, labels = connected_components(m.to_scipy(), directed=True, connection="strong")
    sizes = np.bincount(labels, minlength=n)
    anchor_size = int(sizes[labels[anchor]])
    return Irreducibility(anchor_size == m.dim, tuple(sorted((int(s) for s in sizes), reverse=True)),
                          anchor_size)


# --- text dump -------------------------------------------------------------------

def dump_matrix(m: TransitionMatrix, labels: Sequence[str]) -> str:
    """One ``row_state col_state entry`` line per nonzero entry, rows in canonical order."""
    lines = []
    for r in range(m.dim):
        for c, v in m.row(r):
            lines.append(f"{labels[r]} {labels[c]} {v}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_matrix_dump(text: str, labels: Sequence[str]) -> TransitionMatrix:
    pos = {lab: i for i, lab in enumerate(labels)}
    entries = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        r, c, v = line.split()
        entries[(pos[r], pos[c])] = int(v)
    return TransitionMatrix.from_entries(len(labels), entries)


def fsm_labels(space: StateSpace) -> list[str]:
    return [space.label(i) for i in range(len(space))]
