"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py`` or directly with
``python3 tests/test_acceptance.py``.
"""
import json
import random
import sys
import time
from importlib import resources

import pytest

from hecke_wild.abacus import BlockId, decode_triple, scopes_triple
from hecke_wild.certify import (RECIPES, _large_config, _ordered, _quotient_parts, _wlarge_choice,
                                certify, char_free_check, classify_scopes, conjugate_block, cores,
                                gap_case, get_pattern, is_wt2_rouquier_class, pattern_matches,
                                row_removal_step, verify_certificate, wlarge_conjugates, CharFailure)
from hecke_wild.fock import submatrix_char0
from hecke_wild.modular import decomp_matrix
from hecke_wild.partitions import Partition

RESULTS: dict[int, tuple[bool, str]] = {}


def fixtures():
    root = resources.files("hecke_wild") / "data" / "corpus"
    out = [json.loads(f.read_text()) for f in sorted(root.iterdir(), key=lambda f: f.name)
           if f.name.endswith(".json")]
    return {fx["id"]: fx for fx in out}


def text(M):
    return [[str(x) for x in row] for row in M]


def report(n, ok, detail):
    RESULTS[n] = (ok, detail)
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    print(line, file=sys.__stdout__, flush=True)
    return ok


# ------------------------------------------------------------------ 1

def criterion_1():
    fx = fixtures()
    bad, slowest = [], 0.0
    start = time.perf_counter()
    for key, f in fx.items():
        t = time.perf_counter()
        parts = [Partition.parse(x) for x in f["partitions"]]
        if text(submatrix_char0(parts, BlockId.parse(f["block"]).e)) != f["matrix"]:
            bad.append(key)
        slowest = max(slowest, time.perf_counter() - t)
    total = time.perf_counter() - start
    same = fx["wt2-gap5-e4-small"]["matrix"] == fx["wt2-gap5-e4-large"]["matrix"]
    ok = not bad and same and total <= 600 and slowest <= 300
    detail = f"{len(fx) - len(bad)}/{len(fx)} printed matrices reproduced in {total:.1f}s"
    if bad:
        detail += f"; mismatched: {', '.join(bad)}"
        if bad == ["wt4-rouquier"]:
            detail += (" (LLT puts 2v^2 at (3,1), v^2 at (4,1), v^3 at (5,1); the 6x6 p=3 display"
                       " and every other matrix agree)")
    if not same:
        detail += "; the n=17 and n=23 matrices differ"
    return report(1, ok, detail)


# ------------------------------------------------------------------ 2

def criterion_2():
    fx = fixtures()
    bad, checked = [], 0
    for key, f in fx.items():
        b = BlockId.parse(f["block"])
        parts = [Partition.parse(x) for x in f["partitions"]]
        for p in f["char_free_p"]:
            checked += 1
            if b.w in (2, 3):
                if decomp_matrix(b, p).submatrix(parts) != submatrix_char0(parts, b.e):
                    bad.append(f"{key}@p={p}")
            else:
                try:
                    char_free_check(b, p, parts)
                except CharFailure:
                    bad.append(f"{key}@p={p}")
    for key in ("wt3-gap5-core311-p2", "wt3-gap5-core42211-p2"):
        f = fx[key]
        b = BlockId.parse(f["block"])
        parts = [Partition.parse(x) for x in f["partitions"]]
        M = decomp_matrix(b, 2).submatrix(parts)
        if text(M) != f["matrix"] or not pattern_matches(get_pattern("♣″"), M):
            bad.append(f"{key} not of form ♣″ at p=2")
    for key in ("wt2-gap3", "wt2-gap4"):
        cert = certify(BlockId.parse(fx[key]["block"]), 2)
        if cert.status != "Certified" or cert.evidence[0]["kind"] != "ext1":
            bad.append(f"{key} Ext1 route at p=2")
    detail = f"{checked} characteristic-free claims and the p=2 variants checked"
    if bad:
        detail += "; failing: " + ", ".join(bad)
    return report(2, not bad, detail)


# ------------------------------------------------------------------ 3

def criterion_3():
    start = time.perf_counter()
    rouq_rep = classify_scopes(BlockId(3, Partition((3, 1, 1)), 2))[0]
    counts, bad = {}, []
    for core in cores(3, 12):
        for w in (2, 3):
            b = BlockId(3, core, w)
            in_class = w == 2 and classify_scopes(b)[0] == rouq_rep
            if in_class != (w == 2 and is_wt2_rouquier_class(b)):
                bad.append(f"{b.text()} class test disagrees")
            for p in (0, 2, 3, 5):
                cert = certify(b, p)
                counts[cert.status] = counts.get(cert.status, 0) + 1
                want = "Excluded" if in_class else "Certified"
                if cert.status != want:
                    bad.append(f"{b.text()} p={p}: {cert.status}")
                elif want == "Certified":
                    try:
                        verify_certificate(cert)
                    except AssertionError as exc:
                        bad.append(f"{b.text()} p={p}: unsound ({exc})")
    rng = random.Random(1234)
    pool = [(e, c) for e in (4, 5) for c in cores(e, 14)]
    runner = 0
    for e, c in rng.sample(pool, 10):
        b = BlockId(e, c, 2)
        p = rng.choice([0, 2, 3, 5])
        cert = certify(b, p)
        kinds = [s["kind"] for s in cert.reduction_chain]
        if cert.status != "Certified":
            bad.append(f"{b.text()} p={p}: {cert.status}")
            continue
        verify_certificate(cert)
        if "RunnerRemoval" in kinds:
            runner += 1
        elif not (e == 4 and gap_case(b) == 5):
            bad.append(f"{b.text()} p={p}: no runner-removal chain")
    took = time.perf_counter() - start
    detail = (f"e=3 sweep {counts} in {took:.1f}s; 10 sampled e in {{4,5}} blocks certified, "
              f"{runner} through runner removal")
    if runner < 10:
        detail += " (the rest are e=4 gap case 5, which stays at e=4)"
    if bad:
        detail += "; failing: " + "; ".join(bad[:8])
    return report(3, not bad and took <= 1800, detail)


# ------------------------------------------------------------------ 4

def criterion_4():
    bad = []
    for triple in ([1, 4, 7], [1, 4, 6], [1, 3, 6], [1, 3, 5]):
        b = decode_triple(triple, 4)
        for p in (0, 2, 3, 5):
            cert = certify(b, p)
            want = "♠" if p == 3 else "†"
            if cert.status != "Certified" or cert.pattern != want:
                bad.append(f"{triple} p={p}: {cert.status} {cert.pattern}")
                continue
            verify_certificate(cert)
            kinds = {e["kind"] for e in cert.evidence}
            if triple == [1, 4, 7]:
                expect = {0: {"characteristic-zero"}, 2: {"fixture", "jantzen-vanishing"},
                          3: {"jantzen-vanishing"}, 5: {"identity-adjustment"}}[p]
            else:
                expect = {0: {"characteristic-zero"}, 2: {"restriction-sandwich"},
                          3: {"restriction-sandwich"}, 5: {"identity-adjustment"}}[p]
            if not kinds <= expect | {"fixture"}:
                bad.append(f"{triple} p={p}: evidence {sorted(kinds)}")
    detail = "four weight-4 flagships at p in {0,2,3,5}"
    if bad:
        detail += "; failing: " + "; ".join(bad)
    return report(4, not bad, detail)


# ------------------------------------------------------------------ 5

def criterion_5():
    import test_abacus
    import test_certify
    import test_fock
    import test_modular
    from hecke_wild.abacus import (block_of, core_and_weight, e_quotient, from_display,
                                   to_display)
    from hecke_wild.certify import pattern_library
    from hecke_wild.partitions import partitions_of

    bad = []
    for n in range(21):
        for lam in partitions_of(n):
            for e in (3, 4, 5, 6):
                r = len(lam) + e
                if from_display(to_display(lam, e, r)) != lam or \
                        from_display(to_display(lam, e, r + e)) != lam:
                    bad.append(f"roundtrip {lam.text()} e={e}")
                core, w = core_and_weight(lam, e)
                if lam.size != core.size + e * w:
                    bad.append(f"size {lam.text()} e={e}")
                if n <= 14 and sum(x.size for x in e_quotient(lam, block_of(lam, e))) != w:
                    bad.append(f"quotient {lam.text()} e={e}")
    checks = [
        test_fock.test_invariants_all_small_blocks,
        test_fock.test_scopes_invariance,
        test_fock.test_runner_removal_equalities,
        test_fock.test_row_removal_equalities,
        test_modular.test_jantzen_dominates_char0,
        test_abacus.test_scopes_swaps_exhaustive,
    ]
    for fn in checks:
        try:
            fn()
        except AssertionError as exc:
            bad.append(f"{fn.__name__}: {exc}")
    for P in pattern_library():
        try:
            test_certify.test_pattern_self_match(P)
        except AssertionError as exc:
            bad.append(f"pattern {P.ascii}: {exc}")
    detail = "roundtrips, sizes, quotients, matrix invariants, Scopes, runner/row removal, Jantzen, patterns"
    if bad:
        detail += "; failing: " + "; ".join(bad[:6])
    return report(5, not bad, detail)


# ------------------------------------------------------------------ 6

def large_classes(w):
    """Scopes class representatives of weight w satisfying the large-gap hypothesis."""
    out = set()
    for s1 in range(1, 14):
        for s2 in range(1, 14):
            rep, _ = classify_scopes(decode_triple([1, s1, s2], w))
            t = tuple(scopes_triple(rep))
            if _large_config(decode_triple(t, w)):
                out.add(t)
    return sorted(out)


def wlarge_outcome(t, w):
    b = decode_triple(t, w)
    work = conjugate_block(b) if wlarge_conjugates(b) else b
    if not _large_config(work):
        return f"conjugate {scopes_triple(work)} leaves the gap hypothesis"
    key = _wlarge_choice(work)
    parts = _quotient_parts(work, RECIPES[key][0])
    if parts is None:
        return f"{key} labels are not partitions at w={w}"
    step = row_removal_step(work, _ordered(parts))
    if step is None:
        return "first rows differ"
    if not step["equal_at_p0"]:
        return "row removal changes the p=0 submatrix"
    target = BlockId.parse(step["to"])
    cert = certify(target, 0)
    if cert.status != "Certified" or target.w not in (2, 3, 4):
        return f"reduced block {scopes_triple(target)} w={target.w}: {cert.status}"
    return None


def criterion_6():
    pool = [(t, w) for w in (5, 6) for t in large_classes(w)]
    sample = random.Random(6).sample(pool, 20)
    bad = []
    for t, w in sample:
        why = wlarge_outcome(t, w)
        if why:
            bad.append(f"{list(t)} w={w}: {why}")
    detail = f"{20 - len(bad)}/20 sampled classes (of {len(pool)}) reduce by row removal"
    if bad:
        detail += "; failing: " + "; ".join(bad)
    return report(6, not bad, detail)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 7)])
def test_criterion(check):
    assert check(), RESULTS[CRITERIA.index(check) + 1][1]


if __name__ == "__main__":
    import os
    sys.path.insert(0, os.path.dirname(__file__))
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
