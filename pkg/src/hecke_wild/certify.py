"""Certificates of strict wildness.

A block is strictly wild as soon as five (or six) e-regular partitions in it
carry a characteristic-0 submatrix of one of ten fixed shapes, provided the
characteristic-p decomposition numbers at v = 1 agree with the
characteristic-0 ones on those rows.  This module holds the shapes, picks the
partitions for a given block, checks the characteristic condition and
assembles a :class:`Certificate` that can be re-verified from scratch.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

from .abacus import (BlockId, ScopesError, block_of, decode_quotient, decode_tag,
                     runner_removal, scopes_moves, scopes_swap, scopes_triple)
from .fock import submatrix_char0
from .laurent import ONE, LaurentPoly
from .modular import adjustment, ext1_wt2, resolve_column, restriction_bound
from .partitions import Partition, conjugate, is_e_regular

STATUSES = ("Certified", "Excluded", "NotWild", "Unsupported", "DatasetBacked")

# exit codes used by the command line; kept here so they travel with the statuses
EXIT_CODES = {"Certified": 0, "DatasetBacked": 0, "Excluded": 3, "NotWild": 4, "Unsupported": 5}


# ------------------------------------------------------------------ patterns

CELL_TEXT = {"1": "1", "0": "·", "v": "v", "v2": "v²", "*": "*"}


@dataclass(frozen=True)
class Pattern:
    """A lower unitriangular shape; cells are "1", "0", "v", "v2" or "*"."""

    name: str
    ascii: str
    cells: tuple

    @property
    def size(self) -> int:
        return len(self.cells)

    def display(self) -> str:
        return "\n".join(" ".join(CELL_TEXT[c] for c in row) for row in self.cells)

    def edges(self) -> list[tuple[int, int]]:
        return quiver_edges(self)


def _pattern(name: str, ascii_name: str, rows: str) -> Pattern:
    lower = [r.split() for r in rows.strip().split(";")]
    n = len(lower)
    cells = []
    for i, row in enumerate(lower):
        row = [{"·": "0", "v²": "v2"}.get(c, c) for c in row]
        if len(row) != i + 1:
            raise ValueError(f"pattern {name}: row {i + 1} has {len(row)} cells")
        cells.append(tuple(row + ["0"] * (n - i - 1)))
    return Pattern(name, ascii_name, tuple(cells))


_LIBRARY = (
    _pattern("†", "dagger", "1; v 1; * v 1; * v * 1; * * v v 1"),
    _pattern("†′", "dagger1", "1; * 1; v v 1; * v * 1; * * v v 1"),
    _pattern("†″", "dagger2", "1; * 1; * v 1; v * v 1; v * v * 1"),
    _pattern("‡", "ddagger", "1; * 1; v v 1; * * v 1; v * * v 1"),
    _pattern("‡′", "ddagger1", "1; v 1; * v 1; v * v 1; * * * v 1"),
    _pattern("‡″", "ddagger2", "1; v 1; * v 1; * v * 1; v * * v 1"),
    _pattern("♣", "club", "1; * 1; v v 1; * * v 1; * v * v 1"),
    _pattern("♣′", "club1", "1; v 1; * v 1; v * v 1; * * v * 1"),
    _pattern("♣″", "club2", "1; v 1; * v 1; * * v 1; * v * v 1"),
    _pattern("♠", "spade", "1; · 1; v v 1; · v² v 1; v² · v · 1; · · v² · v 1"),
)


def pattern_library() -> list[Pattern]:
    return list(_LIBRARY)


def get_pattern(name: str) -> Pattern:
    for P in _LIBRARY:
        if name in (P.name, P.ascii):
            return P
    raise KeyError(f"no pattern named {name!r}")


def cell_matches(cell: str, x: LaurentPoly) -> bool:
    if cell == "*":
        return True
    if cell == "1":
        return x == ONE
    if cell == "0":
        return x.is_zero()
    if cell == "v":
        return x.is_monomial(1)
    if cell == "v2":
        return x.is_monomial(2)
    raise ValueError(f"unknown cell {cell!r}")


def pattern_matches(P: Pattern, M: Sequence[Sequence[LaurentPoly]]) -> bool:
    if len(M) != P.size:
        return False
    return all(cell_matches(P.cells[i][j], M[i][j]) for i in range(P.size) for j in range(P.size))


def _check_shape(M) -> int:
    n = len(M)
    if n not in (5, 6) or any(len(row) != n for row in M):
        raise ValueError("match_pattern needs a 5x5 or 6x6 matrix")
    for i in range(n):
        if M[i][i] != ONE or any(not M[i][j].is_zero() for j in range(i + 1, n)):
            raise ValueError("matrix is not lower unitriangular")
    return n


def match_pattern(M: Sequence[Sequence[LaurentPoly]], prefer: str | None = None) -> str | None:
    """Name of the first library pattern M fits, trying ``prefer`` first."""
    _check_shape(M)
    order = list(_LIBRARY)
    if prefer is not None:
        first = get_pattern(prefer)
        order.remove(first)
        order.insert(0, first)
    for P in order:
        if pattern_matches(P, M):
            return P.name
    return None


def quiver_edges(P: Pattern) -> list[tuple[int, int]]:
    """Edges (row, col), 1-based, at the "v" cells; raises if not over-extended."""
    edges = [(i + 1, j + 1) for i in range(P.size) for j in range(i) if P.cells[i][j] == "v"]
    if over_extended_type(P.size, edges) is None:
        raise RuntimeError(f"pattern {P.name} does not give an over-extended diagram")
    return edges


@lru_cache(maxsize=None)
def _model_graphs():
    a3 = nx.cycle_graph(4)
    a3.add_edge(0, 4)
    d4 = nx.star_graph(4)
    d4.add_edge(4, 5)
    return {"A3^(1)∧": a3, "D4^(1)∧": d4}


def over_extended_type(n: int, edges: Iterable[tuple[int, int]]) -> str | None:
    """Which over-extended diagram the undirected graph is, if any.

    Both models are bipartite, so a zigzag orientation always exists.
    """
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    G.add_edges_from(edges)
    for name, H in _model_graphs().items():
        if G.number_of_nodes() == H.number_of_nodes() and nx.is_isomorphic(G, H):
            return name
    return None


# ------------------------------------------------------------------ recipes

@dataclass
class Candidate:
    recipe: str
    parts: list
    expected: str | None
    route: str = "matrix"  # "matrix" or "ext1"
    note: str = ""


_WT2 = {
    "wt2-case1": (("e-1", "e-2", "e-3", "e-2,e-1", "e-3,e-1"), "†"),
    "wt2-case2": (("e-1", "e-2", "e-2,e-1", "e-1^2", "e-3"), "†″"),
    "wt2-case3": (("e-1", "e-1^2", "e-2,e-1", "e-2", "e-3"), "‡"),
    "wt2-case4": (("e-1", "e-2", "e-2,e-1", "e-1^2", "e-2^2"), "‡′"),
    "wt2-case5": (("e-1^2", "e-2,e-1", "e-3,e-1", "e-2^2", "e-3,e-2"), "†"),
    "wt2-large-a": (("e-1^2", "e-2,e-1", "e-3,e-1", "e-2", "e-3"), "†"),
}

_WT3 = {
    "wt3-case1": (("e-3", "e-1,e-2", "e-1,e-3", "e-2,e-3", "e-3,e-2"), "‡"),
    "wt3-case2": (("e-2", "e-1,e-2", "e-1,e-1", "e-3", "e-2,e-3"), "‡″"),
    "wt3-case3a": (("e-1,e-1", "e-1,e-2", "e-2", "e-1^2,e-2", "e-1^2,e-3"), "‡″"),
    "wt3-case3b": (("e-1,e-1", "e-1^2,e-2", "e-3,e-1", "e-3", "e-2,e-3"), "♣"),
    "wt3-case3c": (("e-1^2,e-2", "e-2,e-1", "e-3,e-1", "e-3", "e-2,e-3"), "♣″"),
    "wt3-case4a": (("e-2", "e-1,e-1", "e-2,e-2", "e-1^2,e-2", "e-2^2,e-1"), "†′"),
    "wt3-case4b": (("e-2", "e-1,e-2", "e-1,e-1", "e-2,e-2", "e-2^2,e-1"), "‡′"),
    "wt3-case4c": (("e-2", "e-1,e-2", "e-1,e-1", "e-2,e-2", "e-1^3"), "♣′"),
    "wt3-case5a": (("e-1,e-1", "e-1,e-2", "e-2", "e-1^2,e-2", "e-1^3"), "‡″"),
    "wt3-case5a-p2": (("e-1,e-1", "e-1,e-2", "e-2", "e-2,e-1", "e-1^2,e-2"), "♣″"),
    "wt3-case5b": (("e-1,e-1", "e-1,e-2", "e-1^2,e-2", "e-1^3", "e-2^2,e-1"), "‡′"),
    "wt3-case5d": (("e-1,e-2", "e-1^3", "e-1^2,e-2", "e-2,e-1", "e-2^2,e-1"), "†″"),
    "wt3-case5e": (("e-1,e-1", "e-1^2,e-2", "e-1^2,e-3", "e-2^2,e-1", "e-3,e-2,e-1"), "†"),
}

# quotient recipes; W2, W3, W4 stand for w-2, w-3, w-4 and components are
# listed from the p_{e-1} runner downwards
_TABLE = {
    "table-r1": (("W2,2", "W2|2", "W2,1|1", "W2||2", "W2,1||1"), "†"),
    "table-r2": (("W2,2", "W2|2", "W2||2", "W2,1|1", "W2,1,1"), "†″"),
    "table-r3": (("W2,2", "W2,1|1", "W2,1,1", "W2|2", "W2||2"), "‡"),
    "table-r4": (("W2,1|1", "W2,1||1", "W2,1,1", "W2|2", "W2||2"), "†"),
    "table-r5": (("W2,2", "W2|2", "W2|1,1", "W2,1|1", "W2,1,1"), "‡′"),
    "table-r6": (("W2,1|1", "W2,1||1", "W2,1,1", "W2|1,1", "W2|1|1"), "†"),
    "table-r7": (("W2|2", "W2||2", "W2|1|1", "W2|||2", "W2|1||1"), "†"),
    "table-r8": (("W2|2", "W2||2", "W2|1|1", "W2,2", "W2,1|1"), "†"),
    "table-r9": (("W2|2", "W2,2", "W2,1|1", "W2||2", "W2|1|1"), "†"),
    "table-r10": (("W2|2", "W2,2", "W2||2", "W2,1|1", "W2|1,1"), "†″"),
    "table-r11": (("W2|2", "W2,2", "W2,1,1", "W2,1|1", "W2|1,1"), "‡′"),
}

_ROUQ = {
    "rouq-wt4": (("2,1|1", "1,1|1,1", "1|2,1", "1|1,1,1", "|2,1,1"), "†"),
    "rouq-wt4-p3": (("2,2", "2,1,1", "2,1|1", "2|2", "2|1,1", "1|1,1,1"), "♠"),
    "wlarge-w3": (("W3,2,1", "W3,2|1", "W3,1,1|1", "W3,1,1,1", "W3,1|1,1"), "‡′"),
    "wlarge-w3-p2": (("W3,2,1", "W3,2|1", "W3|3", "W3,1|2", "W3,1,1|1"), "♣″"),
    "wlarge-w4": (("W4,2,1|1", "W4,1,1|1,1", "W4,1|2,1", "W4,1|1,1,1", "W4|2,1,1"), "†"),
    "wlarge-w4-p3": (("W4,2,2", "W4,2,1,1", "W4,2,1|1", "W4,2|2", "W4,2|1,1", "W4,1|1,1,1"), "♠"),
}

RECIPES = {**_WT2, **_WT3, **_TABLE, **_ROUQ}


def expand_tag(template: str, e: int) -> str:
    return re.sub(r"e-(\d)", lambda m: str(e - int(m.group(1))), template)


def _tag_parts(b: BlockId, templates) -> list | None:
    out = []
    for t in templates:
        tag = expand_tag(t, b.e)
        try:
            out.append(decode_tag(b, tag))
        except ValueError:
            return None
    return out


def parse_quotient(b: BlockId, spec: str) -> Partition | None:
    """Decode a quotient recipe such as "W2,1|1"; None if it is not a partition tuple."""
    comps = spec.split("|")
    if len(comps) > b.e:
        return None
    quotient = []
    for c in comps + [""] * (b.e - len(comps)):
        parts = []
        for tok in filter(None, c.split(",")):
            parts.append(b.w - int(tok[1:]) if tok.startswith("W") else int(tok))
        if any(x <= 0 for x in parts) or parts != sorted(parts, reverse=True):
            return None
        quotient.append(Partition(parts))
    try:
        return decode_quotient(b, quotient)
    except ValueError:
        return None


def _quotient_parts(b: BlockId, specs) -> list | None:
    out = [parse_quotient(b, s) for s in specs]
    return None if any(x is None for x in out) else out


def _ordered(parts: list) -> list:
    """Most dominant first; reverse lexicographic order refines dominance."""
    return sorted(parts, key=tuple, reverse=True)


def gap_classes(b: BlockId) -> dict:
    e = b.e
    return {"A": b.gap(e - 1, e - 2), "B": b.gap(e - 2, e - 3),
            "C": b.gap(e - 1, e - 3), "D": b.gap(e - 1, e - 4)}


def gap_case(b: BlockId) -> int:
    """The five weight-2/3 cases, by comparing gaps with e."""
    g, e = gap_classes(b), b.e
    if g["C"] < e:
        return 1
    if g["A"] < e and g["B"] < e:
        return 2
    if g["A"] > e and g["B"] < e:
        return 3
    if g["A"] < e and g["B"] > e:
        return 4
    return 5


def is_wt2_rouquier_class(b: BlockId) -> bool:
    return b.e == 3 and b.w == 2 and gap_case(b) == 5


def _large_config(b: BlockId) -> bool:
    g = gap_classes(b)
    return b.e == 3 and g["A"] > 2 * b.e and g["B"] > b.e


def table_rows(b: BlockId, p: int) -> list[str]:
    """Rows of the weight >= 4 table whose gap conditions b satisfies."""
    e, g = b.e, gap_classes(b)
    A, B, C, D = g["A"], g["B"], g["C"], g["D"]
    alpha = lambda x: x < e
    beta = lambda x: e < x < 2 * e
    gamma = lambda x: x > 2 * e
    delta = lambda x: x > e
    conds = {
        "table-r1": beta(A) and alpha(B) and beta(C),
        "table-r2": beta(A) and alpha(B) and gamma(C),
        "table-r3": gamma(A) and alpha(B) and p != 2,
        "table-r4": gamma(A) and alpha(B) and p == 2 and e >= 4,
        "table-r5": beta(A) and delta(B),
        "table-r6": gamma(A) and delta(B) and e >= 4,
        "table-r7": alpha(D),
        "table-r8": alpha(C) and delta(D),
        "table-r9": alpha(A) and alpha(B) and beta(C),
        "table-r10": alpha(A) and delta(B) and C < 2 * e,
        "table-r11": alpha(A) and delta(B) and gamma(C),
    }
    return [k for k, ok in conds.items() if ok]


def _wlarge_choice(b: BlockId) -> str:
    s0, s1, s2 = scopes_triple(b)
    if s1 <= s2:
        return "wlarge-w3" if s2 - s1 == 2 else "wlarge-w4"
    return "wlarge-w3" if s1 - s2 == 3 else "wlarge-w4"


def wlarge_conjugates(b: BlockId) -> bool:
    """Whether the large-weight recipe first passes to the conjugate block."""
    s0, s1, s2 = scopes_triple(b)
    if s1 <= s2:
        return s2 - s1 > s1 - 1
    return s2 < s1 - s2


def _recipe_order(b: BlockId, p: int) -> list[str]:
    e, w = b.e, b.w
    if w == 2:
        case = gap_case(b)
        first = [f"wt2-case{case}"]
        if case == 3 and e >= 4:
            first.append("wt2-large-a")
        return first + [k for k in _WT2 if k not in first]
    if w == 3:
        case = gap_case(b)
        first = {
            1: ["wt3-case1"], 2: ["wt3-case2"],
            3: ["wt3-case3a", "wt3-case3b", "wt3-case3c"],
            4: ["wt3-case4a", "wt3-case4b", "wt3-case4c"],
            5: (["wt3-case5a-p2", "wt3-case5e"] if p == 2 else
                ["wt3-case5a", "wt3-case5b", "wt3-case5d", "wt3-case5e"]),
        }[case]
        return first + [k for k in _WT3 if k not in first]
    if _large_config(b):
        if w == 4:
            first = ["rouq-wt4-p3" if p == 3 else "rouq-wt4"]
        else:
            w3 = "wlarge-w3-p2" if p == 2 else "wlarge-w3"
            w4 = "wlarge-w4-p3" if p == 3 else "wlarge-w4"
            first = [w3, w4] if _wlarge_choice(b) == "wlarge-w3" else [w4, w3]
        return first + list(_TABLE)
    first = table_rows(b, p)
    return first + [k for k in _TABLE if k not in first]


def candidates(b: BlockId, p: int) -> list[Candidate]:
    """Every recipe that makes sense in b, most appropriate first."""
    out = []
    if b.w == 4 and _large_config(b):
        hit = sandwich_parts(p).get(b)
        if hit is not None:
            expected = "♠" if p == 3 else "†"
            out.append(Candidate("rouq-wt4-sandwich", list(hit[0]), expected,
                                 note="images of the Rouquier recipe under restriction"))
    for key in _recipe_order(b, p):
        templates, expected = RECIPES[key]
        if b.w in (2, 3) and key.startswith(f"wt{b.w}"):
            parts = _tag_parts(b, templates)
        elif b.w >= 4 and not key.startswith("wt"):
            parts = _quotient_parts(b, templates)
        else:
            continue
        if parts is None:
            continue
        route = "ext1" if key in ("wt2-case3", "wt2-case4") and p == 2 else "matrix"
        out.append(Candidate(key, _ordered(parts), expected, route))
    return out


def choose_partitions(b: BlockId, p: int):
    """(parts, expected pattern, plan) for the first recipe the dispatcher picks."""
    if b.e == 2:
        raise ValueError("Unsupported: e = 2")
    if b.w <= 1:
        raise ValueError("NotWild: weight at most 1")
    if is_wt2_rouquier_class(b):
        raise ValueError("Excluded: the e = 3 weight-2 Rouquier class")
    for work, steps in _plans(b, p):
        cands = candidates(work, p)
        if cands:
            c = cands[0]
            plan = steps + [s for s in _reduction_steps(work, c.parts)]
            return c.parts, c.expected, plan
    raise ValueError(f"no recipe applies to {b.text()}")


# ---------------------------------------------------------------- reductions

def conjugate_block(b: BlockId) -> BlockId:
    return BlockId(b.e, conjugate(b.core), b.w)


def classify_scopes(b: BlockId) -> tuple[BlockId, list[dict]]:
    """Shrink b by Scopes moves until none applies."""
    chain = []
    while True:
        moves = scopes_moves(b)
        if not moves:
            return b, chain
        shift, i, k = moves[0]
        target, _ = scopes_swap(b, i, shift)
        chain.append({"kind": "ScopesSwap", "i": i, "shift": shift, "k": k,
                      "from": b.text(), "to": target.text()})
        b = target


def scopes_map(b: BlockId, chain: list[dict], parts: Iterable) -> list[Partition]:
    out = [Partition(x) for x in parts]
    for step in chain:
        if step["from"] != b.text():
            raise ValueError("Scopes chain does not start at this block")
        target, phi = scopes_swap(b, step["i"], step["shift"])
        out = [phi(x) for x in out]
        b = target
    return out


def _mat_text(M) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


def runner_removal_chain(parts: Sequence, e: int, stop: int = 3) -> list[dict]:
    """Remove runners while e exceeds ``stop``, checking the p = 0 submatrix each time."""
    steps = []
    cur = [Partition(x) for x in parts]
    while e > stop:
        res = runner_removal(cur, e)
        if res is None:
            break
        r, runner, reduced = res
        if not all(is_e_regular(x, e - 1) for x in reduced):
            break
        before = submatrix_char0(cur, e)
        after = submatrix_char0(reduced, e - 1)
        steps.append({"kind": "RunnerRemoval", "e_from": e, "e_to": e - 1, "r": r, "runner": runner,
                      "parts": [x.text() for x in reduced], "equal_at_p0": before == after})
        if before != after:
            break
        cur, e = reduced, e - 1
    return steps


def row_removal(parts: Sequence) -> list[Partition] | None:
    """Strip the first row when every label has the same one."""
    parts = [Partition(x) for x in parts]
    if not parts or not parts[0] or len({x[0] if x else 0 for x in parts}) != 1:
        return None
    return [Partition(x[1:]) for x in parts]


def row_removal_step(b: BlockId, parts: Sequence) -> dict | None:
    reduced = row_removal(parts)
    if reduced is None:
        return None
    rb = block_of(reduced[0], b.e)
    if not all(rb.contains(x) for x in reduced) or rb.w >= b.w or rb.w < 2:
        return None
    before = submatrix_char0(parts, b.e)
    after = submatrix_char0(reduced, b.e)
    return {"kind": "RowRemoval", "from": b.text(), "to": rb.text(),
            "parts": [x.text() for x in reduced], "equal_at_p0": before == after}


def _reduction_steps(b: BlockId, parts: Sequence) -> list[dict]:
    steps = []
    if b.e > 3:
        steps.extend(runner_removal_chain(parts, b.e))
    if b.w >= 4:
        s = row_removal_step(b, parts)
        if s is not None:
            steps.append(s)
    return steps


# -------------------------------------------------- restriction sandwich

@lru_cache(maxsize=None)
def rouquier_wt4_block() -> BlockId:
    from .abacus import decode_triple
    return decode_triple([1, 4, 7], 4)


@lru_cache(maxsize=None)
def sandwich_parts(p: int) -> dict:
    """Blocks reached from the weight-4 Rouquier block by removing all i-nodes.

    Maps block -> (parts, path).  Along each step every pair of labels keeps
    its d(1) value, so equality d^p = d^0 on the source rows carries over.
    """
    src = rouquier_wt4_block()
    key = "rouq-wt4-p3" if p == 3 else "rouq-wt4"
    start = tuple(_ordered(_quotient_parts(src, RECIPES[key][0])))
    found = {src: (start, ())}
    frontier = [src]
    for _ in range(4):
        nxt = []
        for X in frontier:
            parts, path = found[X]
            for i in range(X.e):
                images = {}
                ok = True
                for lam in parts:
                    for mu in parts:
                        res = restriction_bound(lam, mu, i, X.e)
                        if res is None:
                            ok = False
                            break
                        images[lam], images[mu] = res
                    if not ok:
                        break
                if not ok:
                    continue
                img = [images[x] for x in parts]
                Y = block_of(img[0], X.e)
                if Y in found or Y.w != 4 or not all(Y.contains(x) for x in img):
                    continue
                if not all(is_e_regular(x, X.e) for x in img) or len(set(img)) != len(img):
                    continue
                if [[c.at_one() for c in row] for row in submatrix_char0(parts, X.e)] != \
                        [[c.at_one() for c in row] for row in submatrix_char0(img, X.e)]:
                    continue
                step = {"kind": "Restriction", "residue": i, "from": X.text(), "to": Y.text()}
                found[Y] = (tuple(img), path + (step,))
                nxt.append(Y)
        frontier = nxt
    return found


# ------------------------------------------------------- characteristic

class CharFailure(Exception):
    """The characteristic condition could not be established."""


def char_free_check(b: BlockId, p: int, parts: Sequence) -> list[dict]:
    """Evidence that d^{e,p}(1) = d^{e,0}(1) on the rows; raises CharFailure otherwise."""
    parts = [Partition(x) for x in parts]
    for x in parts:
        if not b.contains(x) or not is_e_regular(x, b.e):
            raise CharFailure(f"{x.text()} is not an e-regular member of {b.text()}")
    if p == 0:
        return [{"kind": "characteristic-zero"}]
    A = adjustment(b, p)
    if A.status == "exact":
        return _adjustment_evidence(b, p, parts, A)
    if b.w == 4 and b == rouquier_wt4_block():
        return _fixture_evidence(b, p, parts, A)
    if b.w == 4 and _large_config(b):
        hit = sandwich_parts(p).get(b)
        if hit is not None and list(hit[0]) == parts:
            src = rouquier_wt4_block()
            base = char_free_check(src, p, list(sandwich_parts(p)[src][0]))
            return [{"kind": "restriction-sandwich", "source": src.text(),
                     "path": list(hit[1]), "source_evidence": base}]
    if b.w == 4:
        rep, chain = classify_scopes(b)
        if rep != b and (rep == rouquier_wt4_block() or rep in sandwich_parts(p)):
            mapped = scopes_map(b, chain, parts)
            order = sorted(range(len(parts)), key=lambda k: tuple(mapped[k]), reverse=True)
            mapped = [mapped[k] for k in order]
            try:
                inner = char_free_check(rep, p, mapped)
            except CharFailure:
                pass
            else:
                return [{"kind": "scopes-transfer", "to": rep.text(), "chain": chain, "inner": inner}]
    step = row_removal_step(b, parts)
    if step is not None and step["equal_at_p0"]:
        rb = BlockId.parse(step["to"])
        inner = char_free_check(rb, p, [Partition.parse(x) for x in step["parts"]])
        return [{"kind": "row-removal", "to": step["to"], "inner": inner}]
    raise CharFailure("cannot certify characteristic")


def _adjustment_evidence(b: BlockId, p: int, parts: list, A) -> list[dict]:
    ev = []
    D0 = submatrix_char0(parts, b.e)
    for j, mu in enumerate(parts):
        col = {nu: a for (nu, m), a in A.entries.items() if m == mu}
        if not col:
            ev.append({"kind": "identity-adjustment", "column": mu.text()})
            continue
        from .modular import dp_entry
        for i, lam in enumerate(parts):
            dp = dp_entry(lam, mu, A)
            if dp is None or dp.at_one() != D0[i][j].at_one():
                raise CharFailure(f"d^p differs from d^0 at ({lam.text()}, {mu.text()})")
        ev.append({"kind": "llt-recompute", "column": mu.text(),
                   "nonzero_a": sorted(nu.text() for nu in col)})
    return ev


def _fixture_evidence(b: BlockId, p: int, parts: list, A) -> list[dict]:
    ev = []
    D0 = submatrix_char0(parts, b.e)
    from .fock import d0
    for j, mu in enumerate(parts):
        proof = resolve_column(b, p, mu, A)
        for i, lam in enumerate(parts):
            total = D0[i][j].at_one()
            for xi, val in proof.values.items():
                d = d0(lam, xi, b.e).at_one()
                if not d:
                    continue
                if val is None:
                    raise CharFailure(f"a({xi.text()}, {mu.text()}) unknown and needed")
                total += d * val
            if total != D0[i][j].at_one():
                raise CharFailure(f"d^p differs from d^0 at ({lam.text()}, {mu.text()})")
        kinds = sorted({proof.reasons[x] for x in proof.values
                        if any(d0(l, x, b.e) for l in parts)})
        ev.append({"kind": "fixture" if "fixture" in kinds else "jantzen-vanishing",
                   "column": mu.text(), "resolved_by": kinds})
    return ev


def ext1_quiver(b: BlockId, parts: Sequence, p: int) -> list[tuple[int, int]]:
    parts = [Partition(x) for x in parts]
    return [(i + 1, j + 1) for i in range(len(parts)) for j in range(i)
            if ext1_wt2(b, parts[i], parts[j], p)]


# ------------------------------------------------------------ certificates

@dataclass
class Certificate:
    block: BlockId
    p: int
    status: str
    reduction_chain: list = field(default_factory=list)
    partitions: list = field(default_factory=list)
    submatrix: list = field(default_factory=list)
    pattern: str | None = None
    quiver_edges: list = field(default_factory=list)
    evidence: list = field(default_factory=list)
    citations: list = field(default_factory=list)
    working_block: BlockId | None = None
    recipe: str | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "block": self.block.text(),
            "p": self.p,
            "status": self.status,
            "reduction_chain": self.reduction_chain,
            "working_block": self.working_block.text() if self.working_block else None,
            "recipe": self.recipe,
            "partitions": [Partition(x).text() for x in self.partitions],
            "submatrix": _mat_text(self.submatrix),
            "pattern": self.pattern,
            "quiver_edges": [list(e) for e in self.quiver_edges],
            "evidence": self.evidence,
            "citations": self.citations,
            "notes": self.notes,
        }


ROUQ_WT3_P2_PARTS = ("15,4,2,2,1,1", "12,7,2,2,1,1", "12,4,4,3,1,1", "9,7,5,2,1,1", "9,7,4,3,1,1")


def _plans(b: BlockId, p: int) -> list[tuple[BlockId, list[dict]]]:
    """Working blocks to try, each with the steps that lead to it."""
    plans = [(b, [])]
    conj = conjugate_block(b)
    conj_step = {"kind": "Conjugate", "from": b.text(), "to": conj.text()}
    if b.w >= 5 and _large_config(b) and wlarge_conjugates(b):
        plans.insert(0, (conj, [conj_step]))
    elif conj != b:
        plans.append((conj, [conj_step]))
    rep, chain = classify_scopes(b)
    if rep != b:
        plans.append((rep, chain))
        rc = conjugate_block(rep)
        if rc != rep:
            plans.append((rc, chain + [{"kind": "Conjugate", "from": rep.text(), "to": rc.text()}]))
    seen, out = set(), []
    for work, steps in plans:
        if work not in seen:
            seen.add(work)
            out.append((work, steps))
    return out


def _try(work: BlockId, p: int, c: Candidate) -> tuple | None:
    parts = c.parts
    if len(set(parts)) != len(parts) or not all(is_e_regular(x, work.e) and work.contains(x) for x in parts):
        return None
    M = submatrix_char0(parts, work.e)
    try:
        name = match_pattern(M, prefer=c.expected)
    except ValueError:
        return None
    if name is None:
        return None
    try:
        ev = char_free_check(work, p, parts)
        return M, name, quiver_edges(get_pattern(name)), ev
    except CharFailure as exc:
        if c.route == "ext1" and work.w == 2:
            edges = ext1_quiver(work, parts, p)
            if over_extended_type(len(parts), edges):
                return M, name, edges, [{"kind": "ext1", "edges": [list(x) for x in edges],
                                         "reason": str(exc)}]
        return None


def certify(b: BlockId, p: int) -> Certificate:
    """Run the recipes for b in characteristic p and return a checked certificate."""
    if b.e == 2:
        return Certificate(b, p, "Unsupported", notes=["e = 2 is outside the method"])
    if b.w <= 1:
        return Certificate(b, p, "NotWild", notes=["weight at most 1: finite representation type"])
    if is_wt2_rouquier_class(b):
        return Certificate(b, p, "Excluded", notes=["e = 3 weight-2 Rouquier class is left open"])
    if b.e == 3 and b.w == 3 and p == 2 and gap_case(b) == 5:
        rep, chain = classify_scopes(b)
        if rep.core == Partition((6, 4, 2, 2, 1, 1)):
            return Certificate(b, p, "DatasetBacked", reduction_chain=chain, working_block=rep,
                               partitions=[Partition.parse(x) for x in ROUQ_WT3_P2_PARTS],
                               citations=["rouquier-wt3-p2-specht-homomorphisms"],
                               notes=["Ext^1 edges come from Specht homomorphisms, not recomputed"])
    failures = []
    for work, steps in _plans(b, p):
        for c in candidates(work, p):
            got = _try(work, p, c)
            if got is None:
                failures.append(f"{work.text()}:{c.recipe}")
                continue
            M, name, edges, ev = got
            chain = steps + _reduction_steps(work, c.parts)
            cert = Certificate(b, p, "Certified", reduction_chain=chain, partitions=list(c.parts),
                               submatrix=M, pattern=name, quiver_edges=edges, evidence=ev,
                               citations=[c.recipe], working_block=work, recipe=c.recipe,
                               notes=['"*" cells are unconstrained'])
            verify_certificate(cert)
            return cert
    return Certificate(b, p, "Unsupported", notes=["no recipe succeeded"] + failures[:20])


# ---------------------------------------------------------------- soundness

class Unsound(AssertionError):
    pass


def _replay_chain(b: BlockId, chain: list[dict]) -> BlockId:
    cur = b
    for step in chain:
        kind = step["kind"]
        if kind in ("RunnerRemoval", "RowRemoval"):
            continue
        if step["from"] != cur.text():
            raise Unsound(f"chain breaks at {kind}: expected {cur.text()}")
        if kind == "Conjugate":
            cur = conjugate_block(cur)
        elif kind == "ScopesSwap":
            try:
                cur, _ = scopes_swap(cur, step["i"], step["shift"])
            except ScopesError as exc:
                raise Unsound(str(exc)) from exc
        else:
            raise Unsound(f"unknown step {kind}")
        if cur.text() != step["to"]:
            raise Unsound(f"{kind} lands in {cur.text()}, not {step['to']}")
    return cur


def verify_certificate(cert: Certificate) -> bool:
    """Re-derive everything a Certified certificate claims; raise Unsound on mismatch."""
    if cert.status != "Certified":
        return True
    work = _replay_chain(cert.block, cert.reduction_chain)
    if cert.working_block is not None and work != cert.working_block:
        raise Unsound("working block does not follow from the chain")
    parts = [Partition(x) for x in cert.partitions]
    for x in parts:
        if not work.contains(x) or not is_e_regular(x, work.e):
            raise Unsound(f"{x.text()} is not an e-regular member of {work.text()}")
    M = submatrix_char0(parts, work.e)
    if _mat_text(M) != _mat_text(cert.submatrix):
        raise Unsound("submatrix does not match a fresh LLT computation")
    if not pattern_matches(get_pattern(cert.pattern), M):
        raise Unsound(f"submatrix is not of form {cert.pattern}")
    if over_extended_type(len(parts), cert.quiver_edges) is None:
        raise Unsound("quiver is not over-extended")
    for step in cert.reduction_chain:
        if step["kind"] in ("RunnerRemoval", "RowRemoval") and not step["equal_at_p0"]:
            raise Unsound(f"{step['kind']} changes the p = 0 submatrix")
    if cert.evidence and cert.evidence[0]["kind"] == "ext1":
        if sorted(map(tuple, cert.quiver_edges)) != sorted(ext1_quiver(work, parts, cert.p)):
            raise Unsound("Ext^1 quiver does not recompute")
    else:
        try:
            ev = char_free_check(work, cert.p, parts)
        except CharFailure as exc:
            raise Unsound(str(exc)) from exc
        if ev != cert.evidence:
            raise Unsound("characteristic evidence does not recompute")
        if sorted(map(tuple, cert.quiver_edges)) != sorted(quiver_edges(get_pattern(cert.pattern))):
            raise Unsound("quiver edges differ from the pattern's")
    return True


# -------------------------------------------------------------------- sweeps

def cores(e: int, max_size: int) -> list[Partition]:
    from .abacus import is_core
    from .partitions import partitions_of
    return [lam for n in range(max_size + 1) for lam in partitions_of(n) if is_core(lam, e)]


def sweep(e: int, max_core: int, weights: Sequence[int], ps: Sequence[int]):
    """Certify every block B(core, w) with |core| <= max_core; yields certificates."""
    for core in cores(e, max_core):
        for w in weights:
            b = BlockId(e, core, w)
            for p in ps:
                yield certify(b, p)
