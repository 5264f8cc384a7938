import copy

import pytest
from hypothesis import given, settings, strategies as st

from hecke_wild.abacus import BlockId, decode_triple
from hecke_wild.certify import (EXIT_CODES, ROUQ_WT3_P2_PARTS, CharFailure, Unsound, candidates,
                                certify, char_free_check, choose_partitions, conjugate_block,
                                cores, gap_case, get_pattern, is_wt2_rouquier_class,
                                match_pattern, over_extended_type, pattern_library,
                                pattern_matches, quiver_edges, row_removal, verify_certificate)
from hecke_wild.fock import submatrix_char0
from hecke_wild.laurent import ONE, ZERO, LaurentPoly
from hecke_wild.partitions import Partition, conjugate

EMPTY = Partition(())
FILL = {"1": ONE, "0": ZERO, "v": LaurentPoly({1: 1}), "v2": LaurentPoly({2: 1})}


def instance(P, star=ZERO):
    return [[FILL[c] if c != "*" else star for c in row] for row in P.cells]


def test_library_shape():
    lib = pattern_library()
    assert len(lib) == 10
    assert {P.size for P in lib} == {5, 6}
    types = {P.ascii: over_extended_type(P.size, P.edges()) for P in lib}
    assert types.pop("spade") == "D4^(1)∧"
    assert set(types.values()) == {"A3^(1)∧"}
    assert get_pattern("spade").edges() == [(3, 1), (3, 2), (4, 3), (5, 3), (6, 5)]


@pytest.mark.parametrize("P", pattern_library(), ids=lambda P: P.ascii)
def test_pattern_self_match(P):
    for star in (ZERO, LaurentPoly({1: 1}), LaurentPoly({2: 1, 3: 1})):
        M = instance(P, star)
        assert pattern_matches(P, M)
        assert match_pattern(M, prefer=P.ascii) == P.name
    assert len(quiver_edges(P)) == 5


def test_pattern_rejects_wrong_cells():
    P = get_pattern("dagger")
    M = instance(P)
    M[1][0] = LaurentPoly({2: 1})
    assert not pattern_matches(P, M)
    with pytest.raises(ValueError):
        match_pattern([[ONE]])
    assert over_extended_type(5, [(1, 2), (2, 3), (3, 4), (4, 5)]) is None


def test_printed_weight_two_matrix_is_a_target():
    M = submatrix_char0([(6,), (5, 1), (4, 1, 1), (3, 3), (3, 2, 1)], 3)
    assert match_pattern(M) is not None


def test_guards():
    assert certify(BlockId(2, EMPTY, 3), 0).status == "Unsupported"
    assert certify(BlockId(3, Partition((1,)), 1), 0).status == "NotWild"
    assert certify(BlockId(3, EMPTY, 0), 2).status == "NotWild"
    b = BlockId(3, Partition((3, 1, 1)), 2)
    assert is_wt2_rouquier_class(b) and gap_case(b) == 5
    assert certify(b, 0).status == "Excluded"
    with pytest.raises(ValueError):
        choose_partitions(b, 0)
    assert EXIT_CODES["Excluded"] == 3 and EXIT_CODES["Certified"] == 0


def test_dataset_backed_rouquier_weight_three():
    b = BlockId(3, Partition((6, 4, 2, 2, 1, 1)), 3)
    cert = certify(b, 2)
    assert cert.status == "DatasetBacked"
    assert [x.text() for x in cert.partitions] == list(ROUQ_WT3_P2_PARTS)
    assert cert.citations
    assert certify(b, 3).status == "Certified"


@pytest.mark.parametrize("core,w", [((), 2), ((1,), 2), ((), 3), ((1,), 3), ((2,), 3), ((3, 1, 1), 3)])
@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_small_blocks_certify_and_verify(core, w, p):
    cert = certify(BlockId(3, Partition(core), w), p)
    assert cert.status == "Certified", cert.notes
    assert verify_certificate(cert)
    js = cert.to_json()
    assert js["status"] == "Certified" and len(js["partitions"]) == len(js["submatrix"])


def test_tampering_is_caught():
    cert = certify(BlockId(3, EMPTY, 2), 0)
    bad = copy.deepcopy(cert)
    bad.partitions = list(reversed(bad.partitions))
    with pytest.raises(Unsound):
        verify_certificate(bad)
    bad = copy.deepcopy(cert)
    bad.pattern = "spade"
    with pytest.raises(Unsound):
        verify_certificate(bad)
    bad = copy.deepcopy(cert)
    bad.quiver_edges = [(1, 2)]
    with pytest.raises(Unsound):
        verify_certificate(bad)


@pytest.mark.parametrize("triple", [[1, 4, 7], [1, 4, 6], [1, 3, 6], [1, 3, 5]])
def test_weight_four_flagships(triple):
    b = decode_triple(triple, 4)
    for p in (0, 2, 3, 5):
        cert = certify(b, p)
        assert cert.status == "Certified", (p, cert.notes)
        assert verify_certificate(cert)
        if p == 3:
            assert cert.pattern == "♠"


def test_runner_removal_chain_recorded():
    cert = certify(BlockId(4, EMPTY, 2), 0)
    assert cert.status == "Certified"
    kinds = [s["kind"] for s in cert.reduction_chain]
    assert "RunnerRemoval" in kinds
    assert all(s["equal_at_p0"] for s in cert.reduction_chain if s["kind"] == "RunnerRemoval")


def test_row_removal_helper():
    assert row_removal([(9, 4, 1), (9, 3, 2)]) == [Partition((4, 1)), Partition((3, 2))]
    assert row_removal([(9, 4, 1), (8, 5, 1)]) is None


def test_conjugate_block():
    b = BlockId(3, Partition((5, 3, 1, 1)), 2)
    assert conjugate_block(b).core == conjugate(b.core)


def test_char_free_check_rejects_unknown():
    b = decode_triple([1, 2, 4], 4)
    parts = candidates(b, 2)[0].parts
    if parts:
        with pytest.raises(CharFailure):
            char_free_check(b, 2, parts)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(cores(4, 10)), st.sampled_from([0, 2, 3, 5]))
def test_e4_weight_two_blocks_certify(core, p):
    cert = certify(BlockId(4, core, 2), p)
    assert cert.status in ("Certified", "Excluded")
    if cert.status == "Certified":
        assert verify_certificate(cert)
