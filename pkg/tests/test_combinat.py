import pytest
from hypothesis import given, strategies as st

from plabicflow.combinat import (
    check_ksubset,
    cyclic_interval,
    format_ksubset,
    ksubsets,
    lex_max,
    max_diag,
    necklace_check,
    necklace_of_positroid,
    pairwise_weakly_separated,
    parse_ksubset,
    rectangle_label,
    shifted_key,
    subset_of_young,
    weakly_separated,
    young_cells,
    young_of,
)


def test_ksubsets_order_and_count():
    subs = ksubsets(4, 2)
    assert subs == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(ksubsets(9, 4)) == 126


def test_check_ksubset_rejects():
    with pytest.raises(ValueError):
        check_ksubset((0, 2), 4)
    with pytest.raises(ValueError):
        check_ksubset((2, 5), 4)
    with pytest.raises(ValueError):
        check_ksubset((2, 2), 4)


def test_parse_format():
    assert parse_ksubset("25", 5) == (2, 5)
    assert parse_ksubset("1,4,10", 12) == (1, 4, 10)
    assert format_ksubset((2, 5), 5) == "25"
    assert format_ksubset((1, 4, 10), 12) == "1,4,10"
    with pytest.raises(ValueError):
        parse_ksubset("99", 9)


@given(st.integers(2, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n), min_size=1))))
def test_parse_format_roundtrip(tn):
    n, s = tn
    I = tuple(sorted(s))
    assert parse_ksubset(format_ksubset(I, n), n) == I


def test_cyclic_interval():
    assert cyclic_interval(2, 4, 5) == [2, 3, 4]
    assert cyclic_interval(4, 2, 5) == [4, 5, 1, 2]
    assert cyclic_interval(3, 3, 5) == [3]


@given(st.integers(3, 9).flatmap(lambda n: st.tuples(
    st.just(n),
    st.sets(st.integers(1, n), min_size=2, max_size=n - 1),
    st.sets(st.integers(1, n), min_size=2, max_size=n - 1),
)))
def test_weak_separation_symmetric(args):
    n, A, B = args
    k = min(len(A), len(B))
    I, J = tuple(sorted(A)[:k]), tuple(sorted(B)[:k])
    assert weakly_separated(I, J, n) == weakly_separated(J, I, n)


def test_weak_separation_examples():
    # 13 and 24 cross on the 4-cycle; 13 and 14 do not
    assert not weakly_separated((1, 3), (2, 4), 4)
    assert weakly_separated((1, 3), (1, 4), 4)
    assert pairwise_weakly_separated([(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)], 4)
    assert not pairwise_weakly_separated([(1, 3), (2, 4)], 4)


def test_young_roundtrip_and_cells():
    # partition shape of a k-subset inside the k x (n-k) box: the first
    # window [1,k] is the empty shape, the last window the full box
    assert young_of((1, 2), 4) == (0, 0)
    assert young_of((3, 4), 4) == (2, 2)
    assert young_of((1, 4, 5, 7), 9) == (3, 2, 2, 0)
    for I in ksubsets(6, 3):
        assert subset_of_young(young_of(I, 6), 6) == I
    assert young_cells((2, 1)) == {(1, 1), (1, 2), (2, 1)}


def test_max_diag_values():
    # number of cells on the longest diagonal of the skew shape of J over I
    assert max_diag((1, 2), (1, 2), 4) == 0
    assert max_diag((3, 4), (1, 2), 4) == 2
    assert max_diag((3, 4), (1, 3), 4) == 1
    assert max_diag((2, 3), (1, 2), 4) == 1
    assert max_diag((1, 2), (3, 4), 4) == 0  # contained shape
    # full box over the shape of 1457 in the 4x5 grid
    assert max_diag((6, 7, 8, 9), (1, 4, 5, 7), 9) == 3


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n - 1))).flatmap(lambda nk: st.tuples(
        st.just(nk[0]),
        st.sets(st.integers(1, nk[0]), min_size=nk[1], max_size=nk[1]),
        st.sets(st.integers(1, nk[0]), min_size=nk[1], max_size=nk[1]),
)))
def test_max_diag_zero_iff_contained(args):
    n, A, B = args
    J, I = tuple(sorted(A)), tuple(sorted(B))
    contained = young_cells(young_of(J, n)) <= young_cells(young_of(I, n))
    assert (max_diag(J, I, n) == 0) == contained


def test_shifted_key_and_lex_max():
    P = [(1, 2), (1, 3), (2, 3)]
    assert lex_max(P) == (2, 3)
    assert shifted_key((2, 3), 2, 3) == (0, 1)


def test_necklace():
    neck = ((1, 2), (2, 3), (3, 4), (1, 4), (1, 5))
    ok, _ = necklace_check(neck, 5)
    assert ok
    bad = ((1, 2), (3, 4), (2, 3), (1, 4), (1, 5))
    ok, why = necklace_check(bad, 5)
    assert not ok and why


def test_necklace_of_positroid_full():
    P = ksubsets(4, 2)
    assert necklace_of_positroid(P, 4) == ((1, 2), (2, 3), (3, 4), (1, 4))


def test_rectangle_label():
    assert rectangle_label(2, 4, 1, 1) == (1, 3)
    assert rectangle_label(2, 4, 2, 2) == (3, 4)
    assert rectangle_label(3, 7, 2, 3) == (1, 5, 6)
    assert rectangle_label(4, 9, 4, 5) == (6, 7, 8, 9)
    # the (k, n-k) corner is always the last k window
    for k, n in [(2, 5), (3, 6), (4, 9)]:
        assert rectangle_label(k, n, k, n - k) == tuple(range(n - k + 1, n + 1))
