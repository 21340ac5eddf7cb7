import numpy as np
import pytest

from sswkit.core import SswParams, brute_force_counts
from sswkit.errors import StateLimitExceeded
from sswkit.matrixfsm import (StateSpace, TransitionMatrix, build_skip_matrix, check_irreducible,
                              count_fsm, count_walks, dump_matrix, fsm_labels, parse_matrix_dump)

from conftest import all_params


def test_state_space_is_heavy_words():
    space = StateSpace.heavy_words(4, 3)
    assert fsm_labels(space) == ["0111", "1011", "1101", "1110", "1111"]


def test_skip_matrix_small():
    space, m = build_skip_matrix(SswParams(3, 2, 2))
    labels = fsm_labels(space)
    assert labels == ["011", "101", "110", "111"]
    # 011 -> 1xy needs weight >= 2: 101, 110, 111
    assert [labels[c] for c, _ in m.row(0)] == ["101", "110", "111"]
    assert all(v == 1 for v in m.entries.values())


def test_transition_matrix_ops():
    m = TransitionMatrix.from_dense([[0, 2], [1, 1]])
    assert m.nnz == 3 and m[0, 1] == 2 and m[0, 0] == 0
    assert m.row_sums() == [2, 2]
    assert m.matvec([1, 1]) == [2, 2]
    assert np.array_equal(m.to_dense(), [[0, 2], [1, 1]])
    assert count_walks(m, [1, 0], 3) == [1, 1, 3, 5]


def test_big_int_exact():
    # W = 0 with J = L gives 2^(L(k+1)) exactly, far past float range
    c = count_fsm(SswParams(2, 2, 0), 600)
    assert c[2 + 600 * 2] == 2 ** 1202


@pytest.mark.parametrize("L,J,W", all_params(6))
def test_fsm_matches_oracle(L, J, W):
    p = SswParams(L, J, W)
    truth = brute_force_counts(p, 16)
    got = count_fsm(p, (16 - L) // J)
    assert dict(got.items()) == {n: c for n, c in truth.items()}


def test_off_grid_zero():
    s = count_fsm(SswParams(3, 2, 2), 3)
    assert s[4] == 0 and s[5] == 10


def test_state_limit():
    with pytest.raises(StateLimitExceeded):
        build_skip_matrix(SswParams(12, 1, 0), state_limit=100)


def test_irreducible():
    _, m = build_skip_matrix(SswParams(4, 2, 3))
    assert check_irreducible(m).irreducible
    # isolated states break strong connectivity
    m2 = TransitionMatrix.from_dense([[1, 0], [0, 1]])
    r = check_irreducible(m2)
    assert not r.irreducible and r.component_sizes == (1, 1)


def test_dump_roundtrip():
    space, m = build_skip_matrix(SswParams(4, 2, 2))
    labels = fsm_labels(space)
    text = dump_matrix(m, labels)
    assert text.splitlines()[0].split()[2] == "1"
    assert parse_matrix_dump(text, labels).entries == m.entries
