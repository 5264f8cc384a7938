"""Characteristic p: adjustment matrices, Ext^1 at weight 2, Jantzen bounds.

The adjustment identity is D_p = D_0 . A with A lower unitriangular, i.e.

    d^{e,p}_{λμ}(v) = d^{e,0}_{λμ}(v) + Σ_{ν ◁ μ} d^{e,0}_{λν}(v) a_{νμ}(v).

Weights 2 and 3 use closed-form rules on the gaps p_i - p_j of the block.
Weight 4 is only known on a handful of curated blocks; those entries are
shipped in ``data/wt4_adjustment.json`` and every other weight-4 block gives
an explicit "unknown" result for p in {2, 3}.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .abacus import (BlockId, beta_set, block_of, decode_quotient, e_quotient, from_beta,
                     regular_members, tag_of)
from .fock import DecompMatrix, d0, decomp_matrix_char0
from .laurent import ONE, ZERO, LaurentPoly
from .partitions import Partition, dominates, i_nodes, is_e_regular, remove_node


class UnknownAdjustment(LookupError):
    """The adjustment matrix of this block is not available."""


@dataclass
class AdjustmentMatrix:
    """Off-diagonal nonzero entries a_{νμ}(v); the diagonal is implicitly 1.

    ``status`` is "exact" when every entry is determined, "partial" for the
    fixture-backed weight-4 data (``known_zero`` and ``exhaustive`` then say
    which zeros are actually known), and "unknown" otherwise.
    """

    block: BlockId
    p: int
    entries: dict = field(default_factory=dict)  # (nu, mu) -> LaurentPoly
    status: str = "exact"
    known_zero: set = field(default_factory=set)  # (nu, mu) pairs proven 0
    exhaustive: set = field(default_factory=set)  # mu whose column is fully listed
    citations: dict = field(default_factory=dict)  # (nu, mu) -> citation id
    profile_rule: bool = False  # a_{νμ} = 0 unless ν, μ have equal quotient sizes

    def a(self, nu, mu) -> LaurentPoly | None:
        """a_{νμ}(v), or None where the value is not known."""
        nu, mu = Partition(nu), Partition(mu)
        if nu == mu:
            return ONE
        hit = self.entries.get((nu, mu))
        if hit is not None:
            return hit
        if self.status == "exact" or (nu, mu) in self.known_zero or mu in self.exhaustive:
            return ZERO
        if self.profile_rule and profile(nu, self.block) != profile(mu, self.block):
            return ZERO
        return None

    def column(self, mu) -> dict:
        mu = Partition(mu)
        return {nu: c for (nu, m), c in self.entries.items() if m == mu}

    @property
    def is_identity(self) -> bool:
        return self.status == "exact" and not self.entries

    def check_invariants(self) -> None:
        for (nu, mu), c in self.entries.items():
            if not dominates(mu, nu) or nu == mu:
                raise ValueError(f"a_({nu.text()},{mu.text()}) breaks unitriangularity")
            if not c.has_nonnegative_coeffs() or not c.is_bar_invariant():
                raise ValueError(f"a_({nu.text()},{mu.text()}) = {c} is not bar-symmetric and nonnegative")


def identity_adjustment(b: BlockId, p: int) -> AdjustmentMatrix:
    return AdjustmentMatrix(b, p)


# ------------------------------------------------------------ weight 2

def _wt2_rule(b: BlockId, nu_tag: str, mu_tag: str) -> bool:
    e = b.e
    for i in range(1, e):
        if nu_tag != f"{i}^2":
            continue
        left = b.gap(i, i - 1) > e
        if mu_tag == f"{i}" and left and b.gap(i + 1, i) > e:
            return True
        if i < e - 1 and mu_tag == f"{i},{i + 1}" and left and b.gap(i + 1, i) < e:
            return True
    return False


def adjustment_wt2(b: BlockId, p: int) -> AdjustmentMatrix:
    if b.w != 2:
        raise ValueError(f"adjustment_wt2 needs a weight-2 block, got weight {b.w}")
    A = AdjustmentMatrix(b, p)
    if p != 2:
        return A
    regs = regular_members(b)
    tags = {lam: tag_of(lam, b) for lam in regs}
    for nu in regs:
        for mu in regs:
            if nu != mu and _wt2_rule(b, tags[nu], tags[mu]):
                A.entries[(nu, mu)] = ONE
    return A


# ------------------------------------------------------------ weight 3

@dataclass(frozen=True)
class InductionTarget:
    """ω in a Rouquier block, reached by semisimple or almost semisimple induction."""

    kind: str  # "i", "i,i", "i^3", "i,k", "k,i", "i^2,k", "k^2,i"
    tag: str  # concrete tag of ω, e.g. "2,1"
    mode: str = "semisimple"

    def __str__(self) -> str:
        return f"<{self.tag}>" + ("" if self.mode == "semisimple" else " (almost)")


def _wt3_table(b: BlockId):
    """Yield (λ tag, InductionTarget) for every row of the induction table holding on b."""
    e = b.e
    P = b.p_at

    def valid(*idx):
        return all(0 <= x <= e - 1 for x in idx)

    for i in range(1, e):
        # ω = <i>
        if P(i + 1) - P(i) > 2 * e:
            yield f"{i}", InductionTarget("i", f"{i}")
        if valid(i + 1) and P(i + 1) - P(i) < 2 * e and P(i + 2) - P(i) > e:
            yield f"{i},{i + 1}", InductionTarget("i", f"{i}")
        if valid(i + 2) and P(i + 2) - P(i) < e:
            yield f"{i},{i + 1},{i + 2}", InductionTarget("i", f"{i}")
        # ω = <i,i>
        if P(i + 1) - P(i) > e and P(i) - P(i - 1) > e:
            yield f"{i},{i}", InductionTarget("i,i", f"{i},{i}")
        if valid(i + 1) and P(i + 1) - P(i) < e and P(i) - P(i - 1) > e:
            yield f"{i}^2,{i + 1}", InductionTarget("i,i", f"{i},{i}")
        # ω = <i^3>
        if P(i) - P(i - 1) > 2 * e:
            yield f"{i}^3", InductionTarget("i^3", f"{i}^3")
        # the almost semisimple rule
        if e < P(i) - P(i - 1) < 2 * e and P(i + 1) - P(i - 1) > 2 * e:
            yield f"{i - 1}", InductionTarget("i^3", f"{i}^3", "almost")
        for k in range(i + 1, e):
            # ω = <i,k>
            if P(k) - P(i) > 2 * e and P(i + 1) - P(i) > e:
                yield f"{i},{k}", InductionTarget("i,k", f"{i},{k}")
            if i + 1 < k and P(k) - P(i + 1) > e and P(i + 1) - P(i) < e:
                yield f"{i},{i + 1},{k}", InductionTarget("i,k", f"{i},{k}")
            if P(k) - P(i + 1) < e and P(k) - P(i) < 2 * e and P(k) - P(i - 1) > e:
                yield f"{k}^2,{i}", InductionTarget("i,k", f"{i},{k}")
            # ω = <k,i>
            if P(k + 1) - P(k) > e and P(k) - P(i) > e:
                yield f"{k},{i}", InductionTarget("k,i", f"{k},{i}")
            if P(k + 1) - P(k) > e and P(k) - P(i) < e and P(k) - P(i - 1) > e:
                yield f"{k},{k}", InductionTarget("k,i", f"{k},{i}")
            if valid(k + 1) and P(k + 1) - P(k) < e and P(k) - P(i) > e:
                yield f"{i},{k},{k + 1}", InductionTarget("k,i", f"{k},{i}")
            if valid(k + 1) and P(k + 1) - P(k) < e and P(k) - P(i) < e and P(k) - P(i - 1) > e:
                yield f"{k}^2,{k + 1}", InductionTarget("k,i", f"{k},{i}")
            # ω = <i^2,k>
            if P(k) - P(i) > e and P(i) - P(i - 1) > e:
                yield f"{i}^2,{k}", InductionTarget("i^2,k", f"{i}^2,{k}")
            if P(k) - P(i) < e and P(k) - P(i - 1) > 2 * e:
                yield f"{k}^3", InductionTarget("i^2,k", f"{i}^2,{k}")
            # ω = <k^2,i>
            if P(k) - P(i) > 2 * e and P(k) - P(k - 1) > e:
                yield f"{k}^2,{i}", InductionTarget("k^2,i", f"{k}^2,{i}")
            if (2 * e > P(k) - P(i) > e and P(k) - P(i - 1) > 2 * e
                    and 2 * e > P(k) - P(k - 1) > e):
                yield f"{k}^3", InductionTarget("k^2,i", f"{k}^2,{i}")


@lru_cache(maxsize=4096)
def _targets_by_tag(b: BlockId) -> dict:
    out: dict[str, list] = {}
    for lam_tag, target in _wt3_table(b):
        lst = out.setdefault(lam_tag, [])
        if target not in lst:
            lst.append(target)
    return out


def semisimple_targets(lam, b: BlockId) -> list[InductionTarget]:
    if b.w != 3:
        raise ValueError("induction targets are tabulated for weight 3 only")
    lam = Partition(lam)
    if lam == b.core:
        return []
    return list(_targets_by_tag(b).get(tag_of(lam, b), []))


def _wt3_pair(p: int, nu_t: list, mu_t: list) -> bool:
    ss_mu = {t.tag for t in mu_t if t.mode == "semisimple"}
    for t in nu_t:
        if p == 2:
            if t.kind == "i^3":
                i = t.tag.split("^")[0]
                if i in ss_mu:
                    return True
            if t.kind in ("i^2,k", "k^2,i") and t.mode == "semisimple":
                a, k = t.tag.split("^2,")
                if f"{a},{k}" in ss_mu and a != k:
                    return True
        elif p == 3 and t.mode == "semisimple":
            if t.kind == "i^3":
                i = t.tag.split("^")[0]
                if f"{i},{i}" in ss_mu:
                    return True
            if t.kind == "i,i":
                i = t.tag.split(",")[0]
                if i in ss_mu:
                    return True
    return False


def adjustment_wt3(b: BlockId, p: int) -> AdjustmentMatrix:
    if b.w != 3:
        raise ValueError(f"adjustment_wt3 needs a weight-3 block, got weight {b.w}")
    A = AdjustmentMatrix(b, p)
    if p not in (2, 3):
        return A
    regs = regular_members(b)
    targets = {lam: semisimple_targets(lam, b) for lam in regs}
    for nu in regs:
        if not targets[nu]:
            continue
        for mu in regs:
            if nu != mu and targets[mu] and _wt3_pair(p, targets[nu], targets[mu]):
                A.entries[(nu, mu)] = ONE
    return A


# ------------------------------------------------------------ weight 4

WT4_FIXTURE = "wt4_adjustment.json"


@lru_cache(maxsize=1)
def load_wt4_fixture() -> tuple:
    text = resources.files("hecke_wild.data").joinpath(WT4_FIXTURE).read_text()
    return tuple(json.loads(text)["blocks"])


def _quotient_partition(b: BlockId, q: str) -> Partition:
    comps = [Partition.parse(c) for c in q.split("|")]
    comps += [Partition()] * (b.e - len(comps))
    return decode_quotient(b, comps)


def adjustment_wt4(b: BlockId, p: int) -> AdjustmentMatrix:
    if b.w != 4:
        raise ValueError(f"adjustment_wt4 needs a weight-4 block, got weight {b.w}")
    if p not in (2, 3):
        return AdjustmentMatrix(b, p)
    for rec in load_wt4_fixture():
        if BlockId.parse(rec["block"]) != b or rec["p"] != p:
            continue
        A = AdjustmentMatrix(b, p, status="partial")
        for ent in rec["entries"]:
            nu = _quotient_partition(b, ent["nu"])
            mu = _quotient_partition(b, ent["mu"])
            val = LaurentPoly.parse(ent["value"])
            if val:
                A.entries[(nu, mu)] = val
            else:
                A.known_zero.add((nu, mu))
            A.citations[(nu, mu)] = ent["citation"]
        A.exhaustive = {_quotient_partition(b, q) for q in rec.get("exhaustive_columns", [])}
        A.profile_rule = bool(rec.get("profile_rule"))
        return A
    return AdjustmentMatrix(b, p, status="unknown")


def adjustment(b: BlockId, p: int) -> AdjustmentMatrix:
    """Dispatch on weight; weight <= 1 and p = 0 are always trivial."""
    if p == 0 or b.w <= 1:
        return AdjustmentMatrix(b, p)
    if b.w == 2:
        return adjustment_wt2(b, p)
    if b.w == 3:
        return adjustment_wt3(b, p)
    if b.w == 4:
        return adjustment_wt4(b, p)
    return AdjustmentMatrix(b, p, status="unknown")


def profile(lam, b: BlockId) -> tuple[int, ...]:
    """Sizes of the quotient components; adjustment entries respect it on Rouquier-type blocks."""
    return tuple(q.size for q in e_quotient(lam, b))


# ------------------------------------------------------- the identity

def apply_adjustment(D0: DecompMatrix, A: AdjustmentMatrix) -> DecompMatrix:
    if D0.block != A.block:
        raise ValueError("adjustment matrix belongs to a different block")
    if A.status != "exact":
        raise UnknownAdjustment(f"adjustment matrix for {A.block.text()} at p={A.p} is {A.status}")
    entries = dict(D0.entries)
    for (nu, mu), a in A.entries.items():
        j = D0._ci[tuple(mu)]
        k = D0._ci[tuple(nu)]
        for i in range(len(D0.rows)):
            c = D0.entries.get((i, k))
            if c:
                new = entries.get((i, j), ZERO) + c * a
                if new:
                    entries[(i, j)] = new
    return DecompMatrix(D0.block, D0.rows, D0.cols, entries, A.p)


def decomp_matrix(b: BlockId, p: int) -> DecompMatrix:
    D0 = decomp_matrix_char0(b)
    if p == 0:
        return D0
    return apply_adjustment(D0, adjustment(b, p))


def dp_entry(lam, mu, A: AdjustmentMatrix) -> LaurentPoly | None:
    """d^{e,p}_{λμ}(v) from d^{e,0} and A; None if some needed a_{νμ} is unknown."""
    lam, mu = Partition(lam), Partition(mu)
    e = A.block.e
    total = d0(lam, mu, e)
    for nu in regular_members(A.block):
        if nu == mu or not dominates(mu, nu):
            continue
        d = d0(lam, nu, e)
        if not d:
            continue
        a = A.a(nu, mu)
        if a is None:
            return None
        total = total + d * a
    return total


# ------------------------------------------------------------- Ext^1

def adjacent(lam, mu, e: int) -> bool:
    """λ adjacent to μ (or μ to λ): the characteristic-0 entry is exactly v."""
    return d0(lam, mu, e).is_monomial(1) or d0(mu, lam, e).is_monomial(1)


def ext1_wt2(b: BlockId, lam, mu, p: int = 2) -> int:
    """dim Ext^1(D^λ, D^μ) for a weight-2 block.

    For p = 2 this is the closed-form rule.  For other p the answer is read off
    adjacency in characteristic 0, which is only a heuristic.
    """
    if b.w != 2:
        raise ValueError("ext1_wt2 needs a weight-2 block")
    lam, mu = Partition(lam), Partition(mu)
    for x in (lam, mu):
        if not is_e_regular(x, b.e) or not b.contains(x):
            raise ValueError(f"{x.text()} is not an e-regular member of {b.text()}")
    if lam == mu:
        return 0
    if p != 2:
        return int(adjacent(lam, mu, b.e))
    e = b.e

    def special(x):
        t = tag_of(x, b)
        if t.endswith("^2"):
            i = int(t[:-2])
            if 1 <= i and b.gap(i, i - 1) > e:
                return i
        return None

    for x, y in ((lam, mu), (mu, lam)):
        i = special(x)
        if i is not None:
            t = tag_of(y, b)
            if t == f"{i}" and b.gap(i + 1, i) > e:
                return 1
            if t == f"{i},{i + 1}" and b.gap(i + 1, i) < e:
                return 1
            return 0
    return int(adjacent(lam, mu, e))


# ------------------------------------------------------------ Jantzen

def _nu_ep(h: int, e: int, p: int) -> int:
    if h % e:
        return 0
    if p == 0:
        return 1
    m, v = h // e, 0
    while m % p == 0:
        m //= p
        v += 1
    return 1 + v


@lru_cache(maxsize=100_000)
def _jantzen(lam: tuple, e: int, p: int) -> tuple:
    r = len(lam) + 1
    beads = beta_set(lam, r)
    S = set(beads)
    out: dict[Partition, int] = {}
    for a in beads:
        for b in beads:
            if b >= a:
                continue
            for h in range(1, b + 1):
                if a + h in S or b - h in S:
                    continue
                val = _nu_ep(a - b + h, e, p) - _nu_ep(h, e, p)
                if not val:
                    continue
                sgn = sum(1 for x in S if a < x < a + h) + sum(1 for x in S if b - h < x < b)
                kappa = from_beta((S - {a, b}) | {a + h, b - h})
                out[kappa] = out.get(kappa, 0) + (-1) ** sgn * val
    return tuple(sorted((k, v) for k, v in out.items() if v))


def jantzen_coefficients(lam, e: int, p: int) -> dict[Partition, int]:
    """c_{λκ} with Σ_i [S^λ(i)] = Σ_κ c_{λκ} [S^κ] in the Grothendieck group."""
    return dict(_jantzen(tuple(lam), e, p))


def jantzen_bound(lam, e: int, p: int, d=None) -> dict[Partition, int]:
    """J_{λμ} = Σ_κ c_{λκ} d_{κμ}(1) over e-regular μ of λ's block.

    ``d(κ, μ)`` must return the characteristic-p value at v = 1; the default
    uses d^{e,0}, which is exact only when the adjustment matrix does not
    touch the κ rows.  The caller is responsible for that justification.
    """
    lam = Partition(lam)
    coeffs = jantzen_coefficients(lam, e, p)
    if not coeffs:
        return {}
    if d is None:
        def d(kappa, mu):
            return d0(kappa, mu, e).at_one()
    b = block_of(lam, e)
    out = {}
    for mu in regular_members(b):
        if mu == lam:
            continue
        s = sum(c * d(k, mu) for k, c in coeffs.items())
        if s:
            out[mu] = s
    return out


# --------------------------------------------------------- restriction

def restriction_bound(lam, mu, i: int, e: int):
    """Remove all removable i-nodes from λ and μ when the counts line up.

    Returns (λ̄, μ̄) if λ and μ both have exactly k removable i-nodes and λ̄,
    μ̄ both have exactly k addable i-nodes; then d_{λμ}(1) >= d_{λ̄μ̄}(1).
    """
    lam, mu = Partition(lam), Partition(mu)
    _, rl = i_nodes(lam, e, i)
    _, rm = i_nodes(mu, e, i)
    if len(rl) != len(rm):
        return None
    k = len(rl)
    lb, mb = lam, mu
    for node in reversed(rl):
        lb = remove_node(lb, node)
    for node in reversed(rm):
        mb = remove_node(mb, node)
    if len(i_nodes(lb, e, i)[0]) != k or len(i_nodes(mb, e, i)[0]) != k:
        return None
    return lb, mb


@dataclass
class ColumnProof:
    """Values a_{ξμ}(1) for one column μ and how each was obtained."""

    mu: Partition
    values: dict = field(default_factory=dict)  # ξ -> int, or None if unknown
    reasons: dict = field(default_factory=dict)  # ξ -> "fixture" | "jantzen-vanishing" | ...

    def unknown(self) -> list:
        return [x for x, v in self.values.items() if v is None]


def resolve_column(b: BlockId, p: int, mu, A: AdjustmentMatrix) -> ColumnProof:
    """Determine a_{ξμ}(1) for every e-regular ξ ◁ μ, most dominant first.

    Entries listed in A are used as given.  Anything else is first attempted
    with the Jantzen bound: J_{ξμ} = Σ_κ c_{ξκ} d^{e,p}_{κμ}(1) >= d^{e,p}_{ξμ}(1)
    >= a_{ξμ}(1), where the characteristic-p values in the κ rows are rebuilt
    from the entries already settled.  Only if that fails do we fall back on
    a blanket zero from A (exhaustive columns, exact formulas).  When A
    carries the block-diagonal rule, ξ with other quotient sizes are skipped.
    """
    mu = Partition(mu)
    e = b.e
    proof = ColumnProof(mu)
    prof = profile(mu, b) if A.profile_rule else None
    cands = [x for x in regular_members(b)
             if x != mu and dominates(mu, x) and (prof is None or profile(x, b) == prof)]

    def dp1(kappa) -> int | None:
        total = d0(kappa, mu, e).at_one()
        for x in cands:
            if x not in proof.values:
                continue
            d = d0(kappa, x, e).at_one()
            if not d:
                continue
            v = proof.values[x]
            if v is None:
                return None
            total += d * v
        return total

    for xi in cands:  # reverse-lex order refines dominance
        if (xi, mu) in A.entries or (xi, mu) in A.known_zero:
            proof.values[xi] = A.a(xi, mu).at_one()
            proof.reasons[xi] = "fixture"
            continue
        J, ok = 0, True
        for kappa, c in jantzen_coefficients(xi, e, p).items():
            v = dp1(kappa)
            if v is None:
                ok = False
                break
            J += c * v
        if ok and J == 0:
            proof.values[xi] = 0
            proof.reasons[xi] = "jantzen-vanishing"
            continue
        blanket = A.a(xi, mu)
        if blanket is not None:
            proof.values[xi] = blanket.at_one()
            proof.reasons[xi] = "formula" if A.status == "exact" else "fixture"
        else:
            proof.values[xi] = None
            proof.reasons[xi] = "unknown"
    return proof
