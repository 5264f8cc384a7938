"""Command line: ``hecke-wild {block,decomp,certify,scopes,patterns,corpus}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .abacus import BlockId, enumerate_block, regular_members, scopes_triple
from .certify import (EXIT_CODES, CharFailure, certify, char_free_check, classify_scopes,
                      gap_case, gap_classes, is_wt2_rouquier_class, match_pattern,
                      over_extended_type, pattern_library, sweep, table_rows, _large_config)
from .fock import decomp_matrix_char0, submatrix_char0
from .modular import UnknownAdjustment, decomp_matrix
from .partitions import Partition, is_e_regular

CASE_TEXT = {
    1: "case 1: p_{e-1}-p_{e-3} < e",
    2: "case 2: p_{e-1}-p_{e-2} < e, p_{e-2}-p_{e-3} < e, p_{e-1}-p_{e-3} > e",
    3: "case 3: p_{e-1}-p_{e-2} > e, p_{e-2}-p_{e-3} < e",
    4: "case 4: p_{e-1}-p_{e-2} < e, p_{e-2}-p_{e-3} > e",
    5: "case 5: p_{e-1}-p_{e-2} > e, p_{e-2}-p_{e-3} > e",
}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False)


def _block(args) -> BlockId:
    return BlockId(args.e, Partition.parse(args.core), args.w)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"), encoding="utf-8")
    else:
        print(text)


def case_label(b: BlockId) -> str:
    if b.w <= 1:
        return "weight <= 1 (finite type)"
    if b.e < 3:
        return "e = 2 (unsupported)"
    if b.w in (2, 3):
        label = CASE_TEXT[gap_case(b)]
        if is_wt2_rouquier_class(b):
            label += " (Rouquier class, excluded)"
        return label
    if _large_config(b):
        return "e = 3 with p_2-p_1 > 2e and p_1-p_0 > e (Rouquier-type recipes)"
    rows = table_rows(b, 0)
    return "table rows " + ",".join(r.split("-")[1] for r in rows) if rows else "table (no row for p = 0)"


def run_block(args) -> int:
    b = _block(args)
    members = enumerate_block(b)
    report = {
        "block": b.text(), "n": b.n, "p": list(b.p), "gaps": gap_classes(b) if b.e >= 3 else {},
        "case": case_label(b), "size": len(members), "e_regular": len(regular_members(b)),
    }
    if b.e == 3:
        report["triple"] = scopes_triple(b)
    _emit(dumps(report), args.out)
    return 0


def run_decomp(args) -> int:
    b = _block(args)
    try:
        D = decomp_matrix(b, args.p)
    except UnknownAdjustment as exc:
        print(f"unknown adjustment: {exc}; emitting characteristic 0", file=sys.stderr)
        D = decomp_matrix_char0(b)
    text = D.to_csv() if args.format == "csv" else dumps(D.to_json())
    _emit(text, args.out)
    return 0


def run_certify(args) -> int:
    if args.sweep:
        weights = [int(x) for x in args.weights.split(",")]
        ps = [int(x) for x in args.ps.split(",")]
        certs = list(sweep(args.e, args.max_core, weights, ps))
        counts: dict = {}
        for c in certs:
            counts[c.status] = counts.get(c.status, 0) + 1
        bad = [c for c in certs if c.status == "Unsupported"
               or (c.status == "Excluded" and not is_wt2_rouquier_class(c.block))]
        summary = {"counts": counts, "total": len(certs),
                   "failures": [f"{c.block.text()} p={c.p}: {c.status}" for c in bad]}
        if args.full:
            summary["certificates"] = [c.to_json() for c in certs]
        _emit(dumps(summary), args.out)
        return 1 if bad else 0
    cert = certify(_block(args), args.p)
    _emit(dumps(cert.to_json()), args.out)
    return EXIT_CODES[cert.status]


def run_scopes(args) -> int:
    b = _block(args)
    rep, chain = classify_scopes(b)
    report = {"block": b.text(), "representative": rep.text(), "chain": chain}
    if b.e == 3:
        report["triple"] = scopes_triple(b)
        report["representative_triple"] = scopes_triple(rep)
    _emit(dumps(report), args.out)
    return 0


def run_patterns(args) -> int:
    out = []
    for P in pattern_library():
        edges = P.edges()
        out.append({"name": P.name, "ascii": P.ascii, "size": P.size, "display": P.display().split("\n"),
                    "edges": [list(e) for e in edges], "type": over_extended_type(P.size, edges)})
    _emit(dumps(out), args.out)
    return 0


def corpus_dir(override: str | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("HECKE_WILD_CORPUS")
    if env:
        return Path(env)
    return Path(str(resources.files("hecke_wild") / "data" / "corpus"))


def check_fixture(fx: dict) -> list[str]:
    """Problems found when recomputing one fixture; empty means it passes."""
    problems = []
    b = BlockId.parse(fx["block"])
    parts = [Partition.parse(x) for x in fx["partitions"]]
    for x in parts:
        if not b.contains(x) or not is_e_regular(x, b.e):
            problems.append(f"{x.text()} is not an e-regular member of {b.text()}")
    if problems:
        return problems
    M = submatrix_char0(parts, b.e)
    got = [[str(c) for c in row] for row in M]
    if got != fx["matrix"]:
        for i, (r1, r2) in enumerate(zip(got, fx["matrix"])):
            for j, (x, y) in enumerate(zip(r1, r2)):
                if x != y:
                    problems.append(f"entry ({i + 1},{j + 1}): computed {x}, fixture {y}")
    else:
        name = match_pattern(M, prefer=fx["pattern"])
        if name != fx["pattern"]:
            problems.append(f"pattern {name}, fixture says {fx['pattern']}")
    for p in fx.get("char_free_p", []):
        try:
            char_free_check(b, p, parts)
        except CharFailure as exc:
            problems.append(f"not characteristic-free at p={p}: {exc}")
    return problems


def run_corpus(args) -> int:
    d = corpus_dir(args.dir)
    files = sorted(d.glob("*.json")) if d.is_dir() else []
    if not files:
        print(f"no fixtures found in {d}", file=sys.stderr)
        return 2
    failed = 0
    for f in files:
        try:
            fx = json.loads(f.read_text(encoding="utf-8"))
            problems = check_fixture(fx)
        except (ValueError, KeyError) as exc:
            fx, problems = {"id": f.stem, "anchor": "?"}, [f"unreadable fixture: {exc}"]
        if problems:
            failed += 1
            print(f"FAIL {fx['id']} [{fx.get('anchor', '')}]")
            for msg in problems:
                print(f"    {msg}")
        elif args.verbose:
            print(f"ok   {fx['id']}")
    print(f"{len(files)} fixtures, {len(files) - failed} pass")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hecke-wild", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True)

    def block_opts(p, need_p=False):
        p.add_argument("--core", default="", help='e-core, e.g. "6,4,2,2,1,1"; "" or "-" for empty')
        p.add_argument("--e", type=int, default=3)
        p.add_argument("--w", type=int, default=2)
        if need_p:
            p.add_argument("--p", type=int, default=0)
        p.add_argument("--out", default=None)

    block_opts(sub.add_parser("block", help="describe a block"))
    dp = sub.add_parser("decomp", help="graded decomposition matrix")
    block_opts(dp, need_p=True)
    dp.add_argument("--format", choices=("json", "csv"), default="json")
    cp = sub.add_parser("certify", help="certify strict wildness")
    block_opts(cp, need_p=True)
    cp.add_argument("--sweep", action="store_true", help="certify every block with a small core")
    cp.add_argument("--max-core", type=int, default=12)
    cp.add_argument("--weights", default="2,3")
    cp.add_argument("--ps", default="0,2,3,5")
    cp.add_argument("--full", action="store_true", help="include every certificate in sweep output")
    block_opts(sub.add_parser("scopes", help="Scopes class representative"))
    pp = sub.add_parser("patterns", help="list the target patterns")
    pp.add_argument("--out", default=None)
    co = sub.add_parser("corpus", help="recompute the fixture corpus")
    co.add_argument("--dir", default=None)
    co.add_argument("--verbose", "-v", action="store_true")
    return ap


COMMANDS = {"block": run_block, "decomp": run_decomp, "certify": run_certify,
            "scopes": run_scopes, "patterns": run_patterns, "corpus": run_corpus}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
