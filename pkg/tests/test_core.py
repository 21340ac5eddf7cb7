import pytest
from hypothesis import given, strategies as st

from sswkit.core import (SswParams, admissible_lengths, as_bits, bits_to_int, brute_force_count,
                         brute_force_counts, from_qary, hamming_cost, int_to_bits, is_admissible,
                         is_valid_qary, is_valid_sequence, naive_count, to_qary, valid_sequences,
                         validate)
from sswkit.errors import BadLength, InvalidParams, NotAligned, OracleLimitExceeded

from conftest import all_params


def test_params_validation():
    p = SswParams(4, 2, 3)
    assert p.aligned and p.ell == 2 and str(p) == "(4,2,3)"
    assert p.num_states == 5
    assert validate((4, 2, 3)) == p
    for bad in [(0, 1, 0), (3, 4, 1), (3, 0, 1), (3, 1, 4), (3, 1, -1)]:
        with pytest.raises(InvalidParams):
            SswParams(*bad)
    with pytest.raises(NotAligned):
        SswParams(5, 2, 1).ell


def test_admissible_grid():
    p = SswParams(3, 2, 2)
    assert admissible_lengths(p, 3) == [3, 5, 7, 9]
    assert is_admissible(p, 5) and not is_admissible(p, 4) and not is_admissible(p, 1)


def test_bits_roundtrip():
    assert as_bits([1, 0, 1]) == "101"
    assert bits_to_int("100") == 4
    assert int_to_bits(5, 4) == "0101"


def test_valid_sequence_examples():
    p = SswParams(3, 2, 2)
    assert is_valid_sequence("11011", p)
    assert not is_valid_sequence("11001", p)   # second window 001
    assert not is_valid_sequence("1111", p)    # off the L + kJ grid
    with pytest.raises(BadLength):
        to_qary("11011", SswParams(4, 2, 3))


def test_known_counts():
    assert brute_force_count(SswParams(3, 2, 2), 5) == 10
    assert brute_force_count(SswParams(3, 2, 2), 4) == 0
    assert [brute_force_count(SswParams(4, 2, 3), n) for n in (4, 6, 8)] == [5, 11, 21]
    assert brute_force_count(SswParams(6, 2, 3), 6) == 42


def test_degenerate_weights():
    assert brute_force_count(SswParams(4, 2, 0), 8) == 256
    assert brute_force_count(SswParams(4, 2, 4), 8) == 1


@pytest.mark.parametrize("L,J,W", all_params(5))
def test_fast_oracle_matches_naive(L, J, W):
    p = SswParams(L, J, W)
    for n in admissible_lengths(p, (12 - L) // J):
        assert brute_force_count(p, n) == naive_count(p, n)


def test_valid_sequences_are_valid():
    p = SswParams(5, 2, 3)
    seqs = valid_sequences(p, 9)
    assert len(seqs) == brute_force_count(p, 9)
    assert all(is_valid_sequence(int_to_bits(int(x), 9), p) for x in seqs)


def test_oracle_limit():
    with pytest.raises(OracleLimitExceeded):
        brute_force_count(SswParams(2, 1, 1), 30)


def test_counts_dict():
    d = brute_force_counts(SswParams(3, 2, 2), 9)
    assert d == {3: 4, 5: 10, 7: 24, 9: 58}


@given(st.integers(1, 4), st.data())
def test_qary_equivalence(J, data):
    ell = data.draw(st.integers(1, 3))
    L = ell * J
    W = data.draw(st.integers(0, L))
    k = data.draw(st.integers(0, 3))
    p = SswParams(L, J, W)
    n = L + k * J
    b = data.draw(st.text("01", min_size=n, max_size=n))
    q = to_qary(b, p)
    assert len(q) == n // J and all(0 <= s < 2 ** J for s in q)
    assert from_qary(q, J) == b
    assert is_valid_qary(q, ell, W, hamming_cost) == is_valid_sequence(b, p)
