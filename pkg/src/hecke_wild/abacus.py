"""Abacus displays, blocks, e-quotients and the bead-sliding notations.

Conventions used throughout the package:

* the display of λ with r beads has beads at ``λ_i + r - i`` for ``1 <= i <= r``;
* a bead at position x sits on runner ``x mod e``, level ``x // e``; beads
  "fall" towards larger positions, so the *lowest* bead on a runner is the
  largest occupied position on it;
* for a block B(ρ, w) the integers p_0 < ... < p_{e-1} are the lowest-bead
  positions of the core's display, and "runner i" in a tag always means the
  runner that holds p_i (not the i-th runner from the left);
* the e-quotient is listed starting from the p_{e-1} runner, then p_{e-2}, ...

Tags for weight 2 and 3 are short strings with the runner indices (in
p-order) separated by commas, ``^`` marking exponents.  At weight 2 ``"i,j"``
means one step on each of runners i and j; at weight 3 it means two steps on
runner i and one on j (and ``"i,i"`` slides the lowest bead two and the next
bead one).  ``"i^2"``, ``"i^2,j"``, ``"i^3"`` and ``"i,j,k"`` are as usual.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

from .partitions import Partition, is_e_regular, partitions_of


# ----------------------------------------------------------------- displays

def beta_set(lam: Iterable[int], r: int) -> list[int]:
    lam = tuple(lam)
    if r < len(lam):
        raise ValueError(f"bead count {r} too small for {len(lam)} parts")
    padded = lam + (0,) * (r - len(lam))
    return [padded[i] + r - 1 - i for i in range(r)]


def from_beta(positions: Iterable[int]) -> Partition:
    beads = sorted(positions, reverse=True)
    r = len(beads)
    if len(set(beads)) != r or (beads and beads[-1] < 0):
        raise ValueError("positions must be distinct and non-negative")
    return Partition(b - (r - 1 - i) for i, b in enumerate(beads))


@dataclass(frozen=True)
class AbacusDisplay:
    e: int
    r: int
    positions: frozenset

    def partition(self) -> Partition:
        return from_beta(self.positions)

    def runner(self, j: int) -> list[int]:
        """Occupied levels on runner j, increasing."""
        return sorted(x // self.e for x in self.positions if x % self.e == j)

    def counts(self) -> list[int]:
        c = [0] * self.e
        for x in self.positions:
            c[x % self.e] += 1
        return c

    def shifted(self, s: int) -> "AbacusDisplay":
        """Add s beads at the top (positions move down by s)."""
        return AbacusDisplay(self.e, self.r + s,
                             frozenset(range(s)) | frozenset(x + s for x in self.positions))

    def to_json(self) -> dict:
        return {"e": self.e, "r": self.r, "positions": sorted(self.positions)}

    @classmethod
    def from_json(cls, data: dict) -> "AbacusDisplay":
        pos = frozenset(int(x) for x in data["positions"])
        if len(pos) != int(data["r"]):
            raise ValueError("bead count does not match positions")
        return cls(int(data["e"]), int(data["r"]), pos)


def to_display(lam: Iterable[int], e: int, r: int) -> AbacusDisplay:
    return AbacusDisplay(e, r, frozenset(beta_set(lam, r)))


def from_display(d: AbacusDisplay) -> Partition:
    return d.partition()


def _push_up(positions: Iterable[int], e: int) -> list[int]:
    by_runner: dict[int, int] = {}
    for x in positions:
        by_runner[x % e] = by_runner.get(x % e, 0) + 1
    return [j + e * k for j, c in by_runner.items() for k in range(c)]


def core_and_weight(lam: Iterable[int], e: int) -> tuple[Partition, int]:
    lam = Partition(lam)
    beads = beta_set(lam, len(lam))
    pushed = _push_up(beads, e)
    core = from_beta(pushed)
    w = (lam.size - core.size) // e
    return core, w


def is_core(lam: Iterable[int], e: int) -> bool:
    return core_and_weight(lam, e)[1] == 0


def rim_hook_witness(lam: Iterable[int], e: int) -> tuple[int, int] | None:
    """A bead move x -> x-e exhibiting a removable e-rim-hook, or None."""
    lam = Partition(lam)
    beads = set(beta_set(lam, len(lam)))
    for x in sorted(beads, reverse=True):
        if x - e >= 0 and x - e not in beads:
            return x, x - e
    return None


# ------------------------------------------------------------------- blocks

def canonical_r(core: Sequence[int], e: int, w: int) -> int:
    # weight 0 still needs a bead on every runner for p to be defined
    need = len(core) + e * max(w, 1) + 1
    return -(-need // e) * e


@dataclass(frozen=True)
class BlockId:
    """B(core, w) for the Hecke algebra at e."""

    e: int
    core: Partition
    w: int

    def __post_init__(self):
        object.__setattr__(self, "core", Partition(self.core))
        if self.e < 2:
            raise ValueError("e must be at least 2")
        if self.w < 0:
            raise ValueError("weight must be non-negative")
        hook = rim_hook_witness(self.core, self.e)
        if hook is not None:
            x, y = hook
            raise ValueError(
                f"{self.core.text()} is not a {self.e}-core: bead {x} can move to {y} "
                f"(removable {self.e}-rim hook)")

    @property
    def n(self) -> int:
        return self.core.size + self.e * self.w

    @cached_property
    def r(self) -> int:
        return canonical_r(self.core, self.e, self.w)

    @cached_property
    def core_display(self) -> AbacusDisplay:
        return to_display(self.core, self.e, self.r)

    @cached_property
    def _lowest(self) -> list[tuple[int, int]]:
        e = self.e
        low = {}
        for x in self.core_display.positions:
            if x > low.get(x % e, -1):
                low[x % e] = x
        return sorted((x, j) for j, x in low.items())

    @cached_property
    def p(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self._lowest)

    @cached_property
    def p_runner(self) -> tuple[int, ...]:
        """Display runner (position residue) holding p_i."""
        return tuple(j for _, j in self._lowest)

    def p_at(self, i: int) -> int:
        """p_i, with the virtual p_e = p_{e-1} + 2e + 1; p_{-1} is -infinity-like."""
        if 0 <= i < self.e:
            return self.p[i]
        if i == self.e:
            return self.p[-1] + 2 * self.e + 1
        if i < 0:
            return -10 ** 9
        raise IndexError(i)

    def gap(self, i: int, j: int) -> int:
        """p_i - p_j."""
        return self.p_at(i) - self.p_at(j)

    def text(self) -> str:
        return f"e={self.e};core={self.core.text()};w={self.w}"

    def __str__(self) -> str:
        return self.text()

    @classmethod
    def parse(cls, text: str) -> "BlockId":
        fields = dict(part.split("=", 1) for part in text.strip().split(";") if part)
        return cls(int(fields["e"]), Partition.parse(fields.get("core", "")), int(fields["w"]))

    def contains(self, lam: Iterable[int]) -> bool:
        lam = Partition(lam)
        return lam.size == self.n and core_and_weight(lam, self.e)[0] == self.core


def block_of(lam: Iterable[int], e: int) -> BlockId:
    core, w = core_and_weight(lam, e)
    return BlockId(e, core, w)


def p_positions(b: BlockId) -> list[int]:
    return list(b.p)


# --------------------------------------------------------------- quotients

def _runner_partition(levels: Sequence[int]) -> Partition:
    return from_beta(levels)


def e_quotient(lam: Iterable[int], b: BlockId) -> tuple[Partition, ...]:
    lam = Partition(lam)
    if not b.contains(lam):
        raise ValueError(f"{lam.text()} is not in block {b.text()}")
    d = to_display(lam, b.e, b.r)
    return tuple(_runner_partition(d.runner(b.p_runner[b.e - 1 - j])) for j in range(b.e))


def decode_quotient(b: BlockId, quotient: Sequence[Iterable[int]]) -> Partition:
    quotient = [Partition(q) for q in quotient]
    if len(quotient) != b.e:
        raise ValueError(f"quotient needs {b.e} components")
    if sum(q.size for q in quotient) != b.w:
        raise ValueError("quotient size differs from block weight")
    e = b.e
    positions = []
    for j, nu in enumerate(quotient):
        rho = b.p_runner[e - 1 - j]
        c = len(b.core_display.runner(rho))
        levels = beta_set(nu, c)
        positions.extend(rho + e * lev for lev in levels)
    return from_beta(positions)


def _multipartitions(w: int, k: int):
    if k == 0:
        if w == 0:
            yield ()
        return
    for first in range(w, -1, -1):
        for nu in partitions_of(first):
            for rest in _multipartitions(w - first, k - 1):
                yield (nu,) + rest


def enumerate_block(b: BlockId) -> list[Partition]:
    """All members of b, most dominant first (reverse lexicographic order)."""
    return _enumerate_block(b.e, b.core, b.w)


@lru_cache(maxsize=None)
def _enumerate_block(e: int, core: Partition, w: int) -> list[Partition]:
    b = BlockId(e, core, w)
    out = {decode_quotient(b, q) for q in _multipartitions(w, e)}
    return sorted(out, reverse=True)


def regular_members(b: BlockId) -> list[Partition]:
    return [lam for lam in enumerate_block(b) if is_e_regular(lam, b.e)]


# -------------------------------------------------------------------- tags

def tag_components(tag: str, w: int) -> dict[int, Partition]:
    """Runner (p-order) -> one-runner partition for a weight-2 or weight-3 tag."""
    items = [t.strip() for t in str(tag).strip("<>⟨⟩ ").split(",") if t.strip()]
    parsed = []
    for t in items:
        base, _, ex = t.partition("^")
        parsed.append((int(base), int(ex) if ex else 1))
    out: dict[int, Partition] = {}

    def put(i, nu):
        if i in out:
            raise ValueError(f"runner {i} used twice in tag {tag!r}")
        out[i] = Partition(nu)

    shape = tuple(x for _, x in parsed)
    idx = [i for i, _ in parsed]
    if w == 2:
        if shape == (1,):
            put(idx[0], (2,))
        elif shape == (2,):
            put(idx[0], (1, 1))
        elif shape == (1, 1) and idx[0] < idx[1]:
            put(idx[0], (1,)); put(idx[1], (1,))
        else:
            raise ValueError(f"invalid weight-2 tag {tag!r}")
    elif w == 3:
        if shape == (1,):
            put(idx[0], (3,))
        elif shape == (3,):
            put(idx[0], (1, 1, 1))
        elif shape == (1, 1) and idx[0] == idx[1]:
            put(idx[0], (2, 1))
        elif shape == (1, 1):
            put(idx[0], (2,)); put(idx[1], (1,))
        elif shape == (2, 1):
            put(idx[0], (1, 1)); put(idx[1], (1,))
        elif shape == (1, 1, 1) and idx[0] < idx[1] < idx[2]:
            for i in idx:
                put(i, (1,))
        else:
            raise ValueError(f"invalid weight-3 tag {tag!r}")
    else:
        raise ValueError("tags exist only for weights 2 and 3")
    return out


def decode_tag(b: BlockId, tag: str) -> Partition:
    comps = tag_components(tag, b.w)
    quotient = [Partition()] * b.e
    for i, nu in comps.items():
        if not 0 <= i < b.e:
            raise ValueError(f"runner index {i} out of range for e={b.e}")
        quotient[b.e - 1 - i] = nu
    return decode_quotient(b, quotient)


def decode_wt2(b: BlockId, tag: str) -> Partition:
    if b.w != 2:
        raise ValueError("decode_wt2 needs a weight-2 block")
    return decode_tag(b, tag)


def decode_wt3(b: BlockId, tag: str) -> Partition:
    if b.w != 3:
        raise ValueError("decode_wt3 needs a weight-3 block")
    return decode_tag(b, tag)


def tag_of(lam: Iterable[int], b: BlockId) -> str:
    """Canonical tag string of a weight-2 or weight-3 block member."""
    q = e_quotient(lam, b)
    comps = {b.e - 1 - j: nu for j, nu in enumerate(q) if nu}
    shapes = sorted(((i, tuple(nu)) for i, nu in comps.items()))
    if b.w == 2:
        if len(shapes) == 1:
            i, nu = shapes[0]
            return f"{i}" if nu == (2,) else f"{i}^2"
        return f"{shapes[0][0]},{shapes[1][0]}"
    if b.w == 3:
        if len(shapes) == 1:
            i, nu = shapes[0]
            return {(3,): f"{i}", (2, 1): f"{i},{i}", (1, 1, 1): f"{i}^3"}[nu]
        if len(shapes) == 3:
            return ",".join(str(i) for i, _ in shapes)
        (i, a), (j, c) = sorted(shapes, key=lambda t: -sum(t[1]))
        return f"{i},{j}" if a == (2,) else f"{i}^2,{j}"
    raise ValueError("tags exist only for weights 2 and 3")


# ------------------------------------------------------------ Scopes moves

class ScopesError(ValueError):
    pass


def _swap_runners(positions: Iterable[int], e: int, i: int) -> list[int]:
    out = []
    for x in positions:
        j = x % e
        if j == i:
            out.append(x - 1)
        elif j == i - 1:
            out.append(x + 1)
        else:
            out.append(x)
    return out


def scopes_swap(b: BlockId, i: int, shift: int = 0) -> tuple[BlockId, Callable[[Partition], Partition]]:
    """Swap runners i-1 and i of b's canonical display (after adding `shift` beads)."""
    e = b.e
    if not 1 <= i <= e - 1:
        raise ValueError("runner index must lie in 1..e-1")
    disp = b.core_display.shifted(shift)
    counts = disp.counts()
    k = counts[i] - counts[i - 1]
    if k < b.w:
        raise ScopesError(f"Scopes move inapplicable: runner {i} has {k} more beads than runner {i-1}, "
                          f"need at least {b.w}")
    r = disp.r
    new_core = from_beta(_swap_runners(disp.positions, e, i))
    target = BlockId(e, new_core, b.w)

    def phi(lam: Iterable[int]) -> Partition:
        lam = Partition(lam)
        if not b.contains(lam):
            raise ValueError(f"{lam.text()} not in {b.text()}")
        return from_beta(_swap_runners(beta_set(lam, r), e, i))

    return target, phi


def scopes_moves(b: BlockId) -> list[tuple[int, int, int]]:
    """All applicable (shift, i, k) Scopes moves that shrink n."""
    out = []
    for s in range(b.e):
        counts = b.core_display.shifted(s).counts()
        for i in range(1, b.e):
            k = counts[i] - counts[i - 1]
            if k >= b.w and k > 0:
                out.append((s, i, k))
    return out


# --------------------------------------------------------- runner removal

def _delete_runner(positions: Iterable[int], e: int, j: int) -> list[int]:
    out = []
    for x in positions:
        q, t = divmod(x, e)
        if t == j:
            continue
        out.append(q * (e - 1) + (t - (t > j)))
    return out


def runner_removal(parts: Sequence[Iterable[int]], e: int) -> tuple[int, int, list[Partition]] | None:
    """Find a runner whose last bead precedes every empty space in all displays.

    Returns ``(r, runner, reduced)`` with the (e-1)-runner decodings, or None.
    """
    parts = [Partition(p) for p in parts]
    base = max((len(p) for p in parts), default=0) + e
    for r in range(base, base + e):
        displays = [set(beta_set(p, r)) for p in parts]
        for j in range(e):
            beads_j = [x for d in displays for x in d if x % e == j]
            if not beads_j:
                continue
            if all(max((x for x in d if x % e == j), default=-1) < min(
                    x for x in range(r + 1) if x not in d) for d in displays):
                reduced = [from_beta(_delete_runner(d, e, j)) for d in displays]
                return r, j, reduced
    return None


def runner_remove(lam: Iterable[int], mu: Iterable[int], e: int) -> tuple[Partition, Partition] | None:
    res = runner_removal([lam, mu], e)
    if res is None:
        return None
    return res[2][0], res[2][1]


def remove_first_row(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        raise ValueError("cannot remove the first row of the empty partition")
    return Partition(lam[1:])


# ----------------------------------------------------- truncated triples

def decode_triple(s: Sequence[int], w: int) -> BlockId:
    if len(s) != 3 or min(s) < 0:
        raise ValueError("a triple has three non-negative bead counts")
    positions = [j + 3 * k for j in range(3) for k in range(s[j])]
    return BlockId(3, from_beta(positions), w)


def scopes_triple(b: BlockId) -> list[int]:
    if b.e != 3:
        raise ValueError("triples are defined for e = 3 only")
    p0 = b.p[0]
    s = [0, 0, 0]
    for x in b.p:
        t = x - p0
        s[t % 3] = t // 3 + 1
    return s
