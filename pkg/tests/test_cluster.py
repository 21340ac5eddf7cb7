import pytest

from sswkit.cluster import (BadWordSet, gj_bad_generating_function, gj_bad_series, overlaps,
                            solve_cluster_system)
from sswkit.core import SswParams, brute_force_counts
from sswkit.errors import BadWordLimitExceeded, NotAligned
from sswkit.matrixfsm import count_fsm

from conftest import all_params


def test_bad_words():
    bw = BadWordSet.for_params(SswParams(4, 2, 2))
    assert len(bw) == BadWordSet.expected_size(SswParams(4, 2, 2)) == 5


def test_overlaps():
    assert overlaps("0100", "0001", 2) == {1}
    assert overlaps("0100", "1000", 2) == set()
    assert overlaps("000000", "000000", 2) == {1, 2}
    with pytest.raises(ValueError):
        overlaps("010", "0001", 2)


@pytest.mark.parametrize("L,J,W", all_params(8, aligned=True))
def test_gj_matches_oracle(L, J, W):
    p = SswParams(L, J, W)
    k_max = (18 - L) // J
    truth = brute_force_counts(p, L + k_max * J)
    assert dict(gj_bad_series(p, k_max).items()) == truth


def test_gj_long_lengths_match_fsm():
    p = SswParams(6, 2, 3)
    assert dict(gj_bad_series(p, 60).items()) == dict(count_fsm(p, 60).items())


def test_generating_function_in_bits():
    p = SswParams(4, 2, 3)
    f = gj_bad_generating_function(p, 12)
    assert f[6] == 11 and f[8] == 21 and f[7] == 0


def test_requires_alignment():
    with pytest.raises(NotAligned):
        gj_bad_series(SswParams(3, 2, 1), 3)


def test_badword_limit():
    with pytest.raises(BadWordLimitExceeded):
        gj_bad_series(SswParams(8, 1, 5), 2, badword_limit=10)


def test_cluster_solver_geometric():
    # single unknown C = -x - x C  ->  C = -x / (1 + x)
    (c,) = solve_cluster_system([1], 1, [[0]], [[(0, 1, 1)]], 5)
    assert c.coeffs == [0, -1, 1, -1, 1, -1]
    with pytest.raises(ValueError):
        solve_cluster_system([1], 1, [[0]], [[(0, 0, 1)]], 5)
