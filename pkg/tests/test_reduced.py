from math import comb

import pytest

from sswkit.core import SswParams, brute_force_counts
from sswkit.counting import auto_method, count, count_series
from sswkit.errors import NotAligned
from sswkit.matrixfsm import count_fsm
from sswkit.reduced import (build_reduced, class_size, count_reduced, format_weight_vector,
                            refined_gj_series, state_count, weight_vectors)

from conftest import all_params


def test_small_reduced_fsm():
    r = build_reduced(SswParams(4, 2, 3))
    assert r.states == ((1,), (2,))
    assert r.v == (2, 3)
    assert r.matrix.entries == {(0, 1): 1, (1, 0): 2, (1, 1): 1}
    assert r.labels() == ["(1)", "(2)"]


def test_saturated_class_when_j_exceeds_w():
    p = SswParams(6, 3, 1)
    # weights 1..3 collapse into the class 1
    assert class_size(p, 1) == 7 and class_size(p, 0) == 1
    assert weight_vectors(p) == [(0,), (1,)]


def test_v_totals_fsm_states():
    for L, J, W in all_params(8, aligned=True):
        p = SswParams(L, J, W)
        r = build_reduced(p)
        assert sum(r.v) == p.num_states
        assert all(state_count(p, w) == v for w, v in zip(r.states, r.v))


def test_single_block_window():
    r = build_reduced(SswParams(3, 3, 2))
    assert r.matrix.entries == {(0, 0): 4} and r.v == (4,)


def test_w_zero_single_state():
    r = build_reduced(SswParams(6, 2, 0))
    assert len(r.states) == 1


@pytest.mark.parametrize("L,J,W", all_params(8, aligned=True))
def test_reduced_and_rgj_match_oracle(L, J, W):
    p = SswParams(L, J, W)
    k_max = (20 - L) // J
    truth = brute_force_counts(p, L + k_max * J)
    assert dict(count_reduced(p, k_max).items()) == truth
    assert dict(refined_gj_series(p, k_max).items()) == truth


def test_large_instance_against_fsm():
    p = SswParams(12, 4, 7)
    want = dict(count_fsm(p, 25).items())
    assert dict(count_reduced(p, 25).items()) == want
    assert dict(refined_gj_series(p, 25).items()) == want


def test_forty_twenty_twenty():
    r = build_reduced(SswParams(40, 20, 20))
    assert len(r.states) <= 21
    assert sum(r.v) == sum(comb(40, i) for i in range(20, 41))


def test_requires_alignment():
    with pytest.raises(NotAligned):
        build_reduced(SswParams(5, 2, 2))


def test_format():
    assert format_weight_vector((1, 2)) == "(1,2)"


def test_counting_front_end():
    p = SswParams(4, 2, 3)
    assert auto_method(p) == "reduced"
    assert auto_method(SswParams(5, 2, 3)) == "fsm"
    assert count(p, 6) == 11 and count(p, 7) == 0
    for m in ("fsm", "gj", "reduced", "rgj", "oracle"):
        assert count_series(p, 3, m)[10] == 43
    with pytest.raises(ValueError):
        count(p, 6, "magic")
