"""Partitions, dominance, e-regularity and node residues.

A partition is stored as a plain tuple of positive integers in weakly
decreasing order.  Nodes are 1-indexed ``(row, col)`` pairs and the node
``(r, c)`` has residue ``(c - r) mod e``.
"""
from __future__ import annotations

from itertools import accumulate
from typing import Iterable, Iterator, NamedTuple


class Node(NamedTuple):
    row: int
    col: int

    def residue(self, e: int) -> int:
        return (self.col - self.row) % e


class Partition(tuple):
    """An integer partition; behaves like the tuple of its parts."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``"6,4,2,2,1,1"``; ``"-"`` or ``""`` give the empty partition."""
        text = text.strip().strip("()")
        if text in ("", "-", "∅"):
            return cls()
        return cls(int(x) for x in text.replace(" ", "").split(",") if x)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, r: int) -> int:
        """Length of row r (1-indexed), zero past the end."""
        return self[r - 1] if 1 <= r <= len(self) else 0

    def __contains__(self, node) -> bool:  # type: ignore[override]
        r, c = node
        return r >= 1 and c >= 1 and c <= self.part(r)

    def nodes(self) -> Iterator[Node]:
        for r, row in enumerate(self, start=1):
            for c in range(1, row + 1):
                yield Node(r, c)

    def text(self) -> str:
        return ",".join(map(str, self)) if self else "-"

    def __repr__(self) -> str:
        return f"Partition({self.text()})"

    def __str__(self) -> str:
        return self.text()


def conjugate(lam: Iterable[int]) -> Partition:
    lam = tuple(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for x in lam if x >= c) for c in range(1, lam[0] + 1))


def dominates(mu: Iterable[int], lam: Iterable[int]) -> bool:
    """True iff mu ⊵ lam.  Partitions of different sizes are an error."""
    mu, lam = tuple(mu), tuple(lam)
    if sum(mu) != sum(lam):
        raise ValueError("incomparable sizes")
    n = max(len(mu), len(lam))
    pm = accumulate(mu + (0,) * (n - len(mu)))
    pl = accumulate(lam + (0,) * (n - len(lam)))
    return all(a >= b for a, b in zip(pm, pl))


def is_e_regular(lam: Iterable[int], e: int) -> bool:
    lam = tuple(lam)
    run = 1
    for a, b in zip(lam, lam[1:]):
        run = run + 1 if a == b else 1
        if run >= e:
            return False
    return e > 1 or not lam


def addable_nodes(lam: Iterable[int]) -> list[Node]:
    lam = tuple(lam)
    out = []
    for r in range(1, len(lam) + 2):
        c = (lam[r - 1] if r <= len(lam) else 0) + 1
        if r == 1 or lam[r - 2] >= c:
            out.append(Node(r, c))
    return out


def removable_nodes(lam: Iterable[int]) -> list[Node]:
    lam = tuple(lam)
    out = []
    for r in range(1, len(lam) + 1):
        nxt = lam[r] if r < len(lam) else 0
        if lam[r - 1] > nxt:
            out.append(Node(r, lam[r - 1]))
    return out


def i_nodes(lam: Iterable[int], e: int, i: int) -> tuple[list[Node], list[Node]]:
    """Addable and removable nodes of residue i, each ordered by increasing row."""
    i %= e
    add = [n for n in addable_nodes(lam) if n.residue(e) == i]
    rem = [n for n in removable_nodes(lam) if n.residue(e) == i]
    return add, rem


def add_node(lam: Iterable[int], node: Node) -> Partition:
    parts = list(lam)
    r, c = node
    if r == len(parts) + 1:
        parts.append(0)
    if parts[r - 1] + 1 != c:
        raise ValueError(f"{node} is not addable to {tuple(lam)}")
    parts[r - 1] += 1
    return Partition(parts)


def remove_node(lam: Iterable[int], node: Node) -> Partition:
    parts = list(lam)
    r, c = node
    if parts[r - 1] != c:
        raise ValueError(f"{node} is not removable from {tuple(lam)}")
    parts[r - 1] -= 1
    return Partition(parts)


def residue_content(lam: Iterable[int], e: int) -> tuple[int, ...]:
    counts = [0] * e
    for r, row in enumerate(lam, start=1):
        for c in range(1, row + 1):
            counts[(c - r) % e] += 1
    return tuple(counts)


def partitions_of(n: int, maxpart: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, maxpart), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest)


def lex_key(lam: Iterable[int]) -> tuple[int, ...]:
    """Sort key: larger key = earlier in the dominance-refining order."""
    return tuple(lam)
