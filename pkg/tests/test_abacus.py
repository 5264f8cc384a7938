import pytest
from hypothesis import given, strategies as st

from conftest import partitions_upto
from hecke_wild.abacus import (BlockId, ScopesError, block_of, core_and_weight, decode_quotient,
                               decode_triple, decode_wt2, decode_wt3, e_quotient, enumerate_block,
                               from_display, is_core, regular_members, remove_first_row,
                               runner_remove, runner_removal, scopes_moves, scopes_swap,
                               scopes_triple, tag_of, to_display)
from hecke_wild.partitions import Partition, conjugate, is_e_regular, partitions_of

EMPTY = Partition(())


def test_display_of_scopes_core():
    d = to_display((6, 4, 2, 2, 1, 1), 3, 9)
    assert d.positions == frozenset({14, 11, 8, 7, 5, 4, 2, 1, 0})
    assert to_display((), 3, 3).positions == frozenset({0, 1, 2})


@pytest.mark.parametrize("lam,core,w", [
    ((5, 1), (), 2), ((6, 4, 2, 2, 1, 1), (6, 4, 2, 2, 1, 1), 0), ((3, 2, 1), (), 2)])
def test_core_and_weight(lam, core, w):
    assert core_and_weight(lam, 3) == (Partition(core), w)


def test_p_positions_differences():
    b = BlockId(3, Partition((6, 4, 2, 2, 1, 1)), 3)
    assert [x - b.p[0] for x in b.p] == [0, 7, 14]
    b = BlockId(3, EMPTY, 2)
    assert [x - b.p[0] for x in b.p] == [0, 1, 2]
    b = BlockId(3, Partition((3, 1, 1)), 2)
    assert [x - b.p[0] for x in b.p] == [0, 4, 8]


def test_block_contents():
    b = BlockId(3, EMPTY, 2)
    members = enumerate_block(b)
    assert len(members) == 9
    assert {(6,), (5, 1), (4, 1, 1), (3, 3), (3, 2, 1)} <= set(members)
    assert block_of((5, 1), 3) == b
    assert enumerate_block(BlockId(3, Partition((2,)), 0)) == [Partition((2,))]
    rows = {Partition.parse(x) for x in ("8,2", "7,3", "7,2,1", "6,2,1,1", "5,2,2,1")}
    assert rows <= set(enumerate_block(BlockId(3, Partition((1,)), 3)))


def test_quotients_in_rouquier_block():
    b = decode_triple([1, 4, 7], 4)
    lam = decode_quotient(b, [(2, 1), (1,), ()])
    assert e_quotient(lam, b) == (Partition((2, 1)), Partition((1,)), EMPTY)
    assert all(sum(x.size for x in e_quotient(mu, b)) == 4 for mu in enumerate_block(b))
    b0 = BlockId(3, b.core, 0)
    assert e_quotient(b.core, b0) == (EMPTY,) * 3


def test_weight_two_tags():
    b = BlockId(3, EMPTY, 2)
    assert decode_wt2(b, "<2>") == Partition((6,))
    assert decode_wt2(b, "<1,2>") == Partition((3, 3))
    assert decode_wt2(b, "<2^2>") == Partition((3, 1, 1, 1))
    with pytest.raises(ValueError):
        decode_wt2(b, "<2,1,0>")


def test_weight_three_tags():
    assert decode_wt3(BlockId(3, Partition((2,)), 3), "<1>") == Partition((7, 3, 1))
    assert decode_wt3(BlockId(3, Partition((1,)), 3), "<2,2>") == Partition((7, 2, 1))
    assert decode_wt3(BlockId(3, Partition((1, 1)), 3), "<1>") == Partition((9, 2))


def test_scopes_swap_small():
    target, phi = scopes_swap(BlockId(3, Partition((2,)), 1), 1)
    assert target.core == Partition((1,))
    assert phi(Partition((5,))) == Partition((4,))
    core_target, core_phi = scopes_swap(BlockId(3, Partition((2,)), 0), 1)
    assert core_phi(Partition((2,))) == core_target.core == Partition((1,))
    with pytest.raises(ScopesError):
        scopes_swap(BlockId(3, EMPTY, 2), 1)


def test_remove_first_row():
    assert remove_first_row((9, 4, 1)) == Partition((4, 1))
    with pytest.raises(ValueError):
        remove_first_row(())


def test_runner_removal_of_small_cores():
    assert runner_remove((3,), (3,), 3) == (Partition((2,)), Partition((2,)))


def test_triples():
    b = decode_triple([1, 4, 7], 4)
    assert b.core == Partition((9, 7, 5, 3, 3, 2, 2, 1, 1))
    assert [x - b.p[0] for x in b.p] == [0, 10, 20]
    assert scopes_triple(b) == [1, 4, 7]
    cores = {tuple(decode_triple(s, 4).core) for s in
             ([1, 2, 4], [1, 2, 5], [1, 3, 5], [1, 3, 6], [1, 4, 6], [1, 4, 7])}
    assert len(cores) == 6


def test_triple_conjugation_law():
    for s2 in range(2, 9):
        for s1 in range(1, s2 + 1):
            core = decode_triple([1, s1, s2], 0).core
            partner = decode_triple([1, s2 - s1 + 1, s2], 0).core
            assert conjugate(core) == partner


@given(partitions_upto(15), st.sampled_from([3, 4, 5, 6]))
def test_display_roundtrip(lam, e):
    r = len(lam) + e
    for rr in (r, r + e):
        d = to_display(lam, e, rr)
        assert len(d.positions) == rr
        assert from_display(d) == lam
        assert from_display(d.shifted(e)) == lam


@given(partitions_upto(20), st.sampled_from([3, 4, 5, 6]))
def test_core_weight_sizes(lam, e):
    core, w = core_and_weight(lam, e)
    assert lam.size == core.size + e * w
    assert is_core(core, e)
    b = block_of(lam, e)
    q = e_quotient(lam, b)
    assert sum(x.size for x in q) == w


@given(partitions_upto(10), st.sampled_from([3, 4, 5]), st.integers(0, 3))
def test_p_differences_independent_of_bead_count(core, e, w):
    core, _ = core_and_weight(core, e)
    b = BlockId(e, core, w)
    d = to_display(core, e, b.r + e)
    big = sorted(max(x for x in d.positions if x % e == j) for j in range(e))
    assert [x - big[0] for x in big] == [x - b.p[0] for x in b.p]
    assert len({x % e for x in b.p}) == e


@given(partitions_upto(8), st.sampled_from([3, 4]), st.integers(1, 2))
def test_quotient_roundtrip(core, e, w):
    core, _ = core_and_weight(core, e)
    b = BlockId(e, core, w)
    for lam in enumerate_block(b):
        assert decode_quotient(b, e_quotient(lam, b)) == lam


@given(partitions_upto(9), st.sampled_from([3, 4]))
def test_tags_decode_inside_block(core, e):
    core, _ = core_and_weight(core, e)
    for w, decode in ((2, decode_wt2), (3, decode_wt3)):
        b = BlockId(e, core, w)
        members = enumerate_block(b)
        decoded = [decode(b, tag_of(lam, b)) for lam in members]
        assert decoded == members


def test_scopes_swaps_exhaustive():
    for n in range(0, 13):
        for lam in partitions_of(n):
            core, w = core_and_weight(lam, 3)
            if lam != core or w:
                continue
            for ww in (1, 2, 3):
                b = BlockId(3, core, ww)
                if b.n > 12:
                    continue
                for shift, i, k in scopes_moves(b):
                    target, phi = scopes_swap(b, i, shift)
                    src = enumerate_block(b)
                    assert len(enumerate_block(target)) == len(src)
                    assert core_and_weight(target.core, 3) == (target.core, 0)
                    for mu in src:
                        img = phi(mu)
                        assert target.contains(img)
                        assert img.size == mu.size - k
                        assert is_e_regular(img, 3) == is_e_regular(mu, 3)


def test_runner_removal_from_e4():
    b = BlockId(4, EMPTY, 2)
    lam = decode_wt2(b, "<3>")
    r, j, reduced = runner_removal([lam], 4)
    assert reduced == [Partition((6,))]
    assert len(regular_members(b)) > len(regular_members(BlockId(3, EMPTY, 2)))
