"""The level-one Fock space and the LLT algorithm.

Vectors are plain dicts ``partition tuple -> LaurentPoly``.  The canonical
basis element G(μ) is computed from the ladder vector A(μ) by bar-invariant
straightening, and its coefficients are the characteristic-zero graded
decomposition numbers d_{λμ}(v).

Grading of the generators: f_i adds an addable i-node A with weight
v^{N}, where N = #(addable i-nodes above A) - #(removable i-nodes above A).
"Above" means smaller row index.  With residues (c - r) mod e this is the
choice under which A(μ) has leading coefficient 1 and the off-diagonal
coefficients of G(μ) lie in vN[v]; the mirror convention is kept available
for the calibration test.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .abacus import BlockId, enumerate_block
from .laurent import ONE, ZERO, LaurentPoly, bar_symmetrize_nonpositive, quantum_factorial
from .partitions import Partition, is_e_regular

GRADING = "above"

FockVector = dict  # partition tuple -> LaurentPoly


class ConventionError(RuntimeError):
    """Raised when an internal consistency check of the LLT algorithm fails."""


# ------------------------------------------------------------ generators

def _i_data(lam: tuple, e: int, i: int):
    add, rem = [], []
    n = len(lam)
    for r in range(n + 1):
        row = lam[r] if r < n else 0
        # addable node in row r+1, column row+1
        if r == 0 or lam[r - 1] > row:
            if (row - r) % e == i:
                add.append(r)
        if r < n:
            nxt = lam[r + 1] if r + 1 < n else 0
            if row > nxt and (row - 1 - r) % e == i:
                rem.append(r)
    return add, rem


@lru_cache(maxsize=500_000)
def _f_single(lam: tuple, e: int, i: int, k: int, grading: str) -> tuple:
    """Terms (partition, exponent) of f_i^{(k)} applied to one partition."""
    add, rem = _i_data(lam, e, i)
    if k > len(add):
        return ()
    out = []
    for chosen in itertools.combinations(range(len(add)), k):
        cs = set(chosen)
        N = 0
        for a in chosen:
            row = add[a]
            if grading == "above":
                N += sum(1 for b in range(a) if b not in cs)
                N -= sum(1 for x in rem if x < row)
            else:
                N += sum(1 for b in range(a + 1, len(add)) if b not in cs)
                N -= sum(1 for x in rem if x > row)
        new = list(lam)
        for a in chosen:
            row = add[a]
            if row == len(new):
                new.append(1)
            else:
                new[row] += 1
        out.append((tuple(new), N))
    return tuple(out)


def _accumulate(target: dict, lam: tuple, poly: LaurentPoly) -> None:
    old = target.get(lam)
    new = poly if old is None else old + poly
    if new:
        target[lam] = new
    else:
        target.pop(lam, None)


def f_divided(x: Mapping, i: int, k: int, e: int, grading: str | None = None) -> FockVector:
    """Divided power f_i^{(k)} = f_i^k / [k]! via the closed-form subset sum."""
    grading = grading or GRADING
    out: FockVector = {}
    if k == 0:
        return dict(x)
    for lam, c in x.items():
        for mu, N in _f_single(tuple(lam), e, i % e, k, grading):
            _accumulate(out, mu, c.shift(N))
    return out


def f_apply(x: Mapping, i: int, e: int, grading: str | None = None) -> FockVector:
    return f_divided(x, i, 1, e, grading)


def f_power_divided(x: Mapping, i: int, k: int, e: int, grading: str | None = None) -> FockVector:
    """f_i^k(x) divided exactly by [k]!; the slow route, kept as an oracle."""
    y = dict(x)
    for _ in range(k):
        y = f_apply(y, i, e, grading)
    qf = quantum_factorial(k)
    out = {}
    for lam, c in y.items():
        try:
            out[lam] = c.exact_div(qf)
        except ArithmeticError as exc:
            raise ConventionError(f"f_{i}^{k} not divisible by [{k}]! at {lam}") from exc
    return out


def vector_at_one(x: Mapping) -> dict:
    return {lam: c.at_one() for lam, c in x.items() if c.at_one()}


# -------------------------------------------------------------- ladders

def ladder_sequence(mu: Iterable[int], e: int) -> list[tuple[int, int]]:
    mu = tuple(mu)
    if not is_e_regular(mu, e):
        raise ValueError(f"{mu} is not {e}-regular")
    counts: dict[int, int] = {}
    for r, row in enumerate(mu, start=1):
        for c in range(1, row + 1):
            L = r + (e - 1) * (c - 1)
            counts[L] = counts.get(L, 0) + 1
    return [((1 - L) % e, counts[L]) for L in sorted(counts)]


def ladder_vector(mu: Iterable[int], e: int, grading: str | None = None) -> FockVector:
    """A(μ): divided powers along the ladders of μ applied to the empty partition."""
    x: FockVector = {(): ONE}
    for i, k in ladder_sequence(mu, e):
        x = f_divided(x, i, k, e, grading)
    return x


# ------------------------------------------------------ canonical basis

class LLT:
    """Memoizing canonical-basis engine for a fixed e."""

    def __init__(self, e: int, grading: str | None = None):
        self.e = e
        self.grading = grading or GRADING
        self._G: dict[tuple, dict] = {}
        self._partial: dict[tuple, dict] = {}

    def G(self, mu: Iterable[int]) -> dict:
        mu = tuple(mu)
        hit = self._G.get(mu)
        if hit is not None:
            return hit
        # resolve dependencies iteratively to avoid deep recursion
        stack = [mu]
        while stack:
            top = stack[-1]
            if top in self._G:
                stack.pop()
                continue
            need = self._straighten(top)
            if need is None:
                stack.pop()
            else:
                if need in stack:
                    raise ConventionError(f"cyclic straightening at {need}")
                stack.append(need)
        return self._G[mu]

    def _straighten(self, mu: tuple):
        """Compute G(mu) if every needed G(nu) is known; else return the missing nu."""
        A = self._partial.pop(mu, None)
        if A is None:
            A = ladder_vector(mu, self.e, self.grading)
            if A.get(mu) != ONE:
                raise ConventionError(f"ladder vector of {mu} has leading coefficient {A.get(mu)}")
        while True:
            bad = [nu for nu, c in A.items() if nu != mu and c.min_degree() <= 0]
            if not bad:
                break
            nu = max(bad)
            if nu > mu:
                raise ConventionError(f"{nu} above {mu} in A({mu})")
            if not is_e_regular(nu, self.e):
                raise ConventionError(f"non-positive coefficient at {self.e}-singular {nu}")
            Gnu = self._G.get(nu)
            if Gnu is None:
                self._partial[mu] = A
                return nu
            alpha = bar_symmetrize_nonpositive(A[nu])
            for lam, c in Gnu.items():
                _accumulate(A, lam, -(alpha * c))
        for lam, c in A.items():
            if lam != mu and not c.in_v_N_v():
                raise ConventionError(f"G({mu}) has coefficient {c} at {lam}")
        self._G[mu] = A
        return None

    def d(self, lam: Iterable[int], mu: Iterable[int]) -> LaurentPoly:
        return self.G(mu).get(tuple(lam), ZERO)


_ENGINES: dict[tuple[int, str], LLT] = {}


def engine(e: int, grading: str | None = None) -> LLT:
    key = (e, grading or GRADING)
    if key not in _ENGINES:
        _ENGINES[key] = LLT(e, key[1])
    return _ENGINES[key]


def canonical_basis(b: BlockId) -> dict[Partition, dict]:
    eng = engine(b.e)
    out = {}
    for mu in reversed(enumerate_block(b)):
        if is_e_regular(mu, b.e):
            out[mu] = {Partition(k): v for k, v in eng.G(mu).items()}
    return out


def d0(lam: Iterable[int], mu: Iterable[int], e: int) -> LaurentPoly:
    """Characteristic-zero graded decomposition number d^{e,0}_{λμ}(v)."""
    return engine(e).d(lam, mu)


# --------------------------------------------------------------- matrices

@dataclass
class DecompMatrix:
    block: BlockId | None
    rows: list
    cols: list
    entries: dict = field(default_factory=dict)  # (row idx, col idx) -> LaurentPoly
    characteristic: int = 0

    def entry(self, lam, mu) -> LaurentPoly:
        i = self._ri[tuple(lam)]
        j = self._ci[tuple(mu)]
        return self.entries.get((i, j), ZERO)

    def __post_init__(self):
        self.rows = [Partition(r) for r in self.rows]
        self.cols = [Partition(c) for c in self.cols]
        self._ri = {tuple(r): k for k, r in enumerate(self.rows)}
        self._ci = {tuple(c): k for k, c in enumerate(self.cols)}

    def as_lists(self) -> list[list[LaurentPoly]]:
        return [[self.entries.get((i, j), ZERO) for j in range(len(self.cols))]
                for i in range(len(self.rows))]

    def submatrix(self, parts: Sequence) -> list[list[LaurentPoly]]:
        return [[self.entry(lam, mu) for mu in parts] for lam in parts]

    def to_json(self) -> dict:
        return {
            "block": self.block.text() if self.block else None,
            "characteristic": self.characteristic,
            "rows": [r.text() for r in self.rows],
            "cols": [c.text() for c in self.cols],
            "entries": [[self.entries.get((i, j), ZERO).to_json() for j in range(len(self.cols))]
                        for i in range(len(self.rows))],
        }

    def to_csv(self) -> str:
        lines = ["," + ",".join(f'"{c.text()}"' for c in self.cols)]
        for i, r in enumerate(self.rows):
            cells = [str(self.entries.get((i, j), ZERO)) for j in range(len(self.cols))]
            lines.append(f'"{r.text()}",' + ",".join(cells))
        return "\n".join(lines) + "\n"

    def check_invariants(self) -> None:
        from .partitions import dominates
        for j, mu in enumerate(self.cols):
            if self.entry(mu, mu) != ONE:
                raise ConventionError(f"diagonal entry at {mu} is not 1")
            for i, lam in enumerate(self.rows):
                c = self.entries.get((i, j), ZERO)
                if not c or lam == mu:
                    continue
                if not dominates(mu, lam):
                    raise ConventionError(f"entry at ({lam},{mu}) violates dominance")
                if self.characteristic == 0 and not c.in_v_N_v():
                    raise ConventionError(f"entry {c} at ({lam},{mu}) not in vN[v]")


def decomp_matrix_char0(b: BlockId) -> DecompMatrix:
    rows = enumerate_block(b)
    cols = [mu for mu in rows if is_e_regular(mu, b.e)]
    G = canonical_basis(b)
    ri = {tuple(r): i for i, r in enumerate(rows)}
    entries = {}
    for j, mu in enumerate(cols):
        for lam, c in G[mu].items():
            entries[(ri[tuple(lam)], j)] = c
    return DecompMatrix(b, rows, cols, entries, 0)


def submatrix_char0(parts: Sequence, e: int) -> list[list[LaurentPoly]]:
    eng = engine(e)
    return [[eng.d(lam, mu) for mu in parts] for lam in parts]
