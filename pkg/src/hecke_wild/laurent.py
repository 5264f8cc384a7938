"""Exact Laurent polynomials in one variable v with integer coefficients."""
from __future__ import annotations

import re
from typing import Iterable, Mapping


class LaurentPoly:
    """Sparse degree -> coefficient map.  Zero coefficients are never stored.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | int | None = None):
        c: dict[int, int] = {}
        if terms is None:
            pass
        elif isinstance(terms, int):
            if terms:
                c[0] = terms
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for d, a in items:
                if a:
                    c[d] = c.get(d, 0) + a
                    if not c[d]:
                        del c[d]
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({degree: coeff} if coeff else {})

    # -- inspection
    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def coeff(self, d: int) -> int:
        return self._c.get(d, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_degree(self) -> int:
        return min(self._c)

    def max_degree(self) -> int:
        return max(self._c)

    def at_one(self) -> int:
        return sum(self._c.values())

    def derivative_at_one(self) -> int:
        return sum(d * a for d, a in self._c.items())

    def is_monomial(self, degree: int, coeff: int = 1) -> bool:
        return len(self._c) == 1 and self._c.get(degree) == coeff

    def is_bar_invariant(self) -> bool:
        return all(self._c.get(-d) == a for d, a in self._c.items())

    def has_nonnegative_coeffs(self) -> bool:
        return all(a > 0 for a in self._c.values())

    def in_v_N_v(self) -> bool:
        """Every term has positive degree and positive coefficient."""
        return all(d > 0 and a > 0 for d, a in self._c.items())

    # -- arithmetic
    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for d, a in other._c.items():
            s = c.get(d, 0) + a
            if s:
                c[d] = s
            else:
                c.pop(d, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({d: -a for d, a in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({d: a * other for d, a in self._c.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for d1, a1 in self._c.items():
            for d2, a2 in other._c.items():
                d = d1 + d2
                s = c.get(d, 0) + a1 * a2
                if s:
                    c[d] = s
                else:
                    c.pop(d, None)
        return LaurentPoly._raw(c)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentPoly._raw({d + k: a for d, a in self._c.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers only for monomials; use shift")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient self/other, raising ArithmeticError unless the division is exact."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return ZERO
        rem = dict(self._c)
        top_d = other.max_degree()
        top_a = other._c[top_d]
        q: dict[int, int] = {}
        lo = self.min_degree() - other.min_degree()
        while rem:
            d = max(rem)
            qd = d - top_d
            if qd < lo:
                raise ArithmeticError("inexact Laurent division")
            a, r = divmod(rem[d], top_a)
            if r:
                raise ArithmeticError("inexact Laurent division")
            q[qd] = a
            for d2, a2 in other._c.items():
                s = rem.get(d2 + qd, 0) - a * a2
                if s:
                    rem[d2 + qd] = s
                else:
                    rem.pop(d2 + qd, None)
        return LaurentPoly._raw(q)

    # -- comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- text
    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for d, a in sorted(self._c.items()):
            if d == 0:
                body = str(abs(a))
            else:
                mono = "v" if d == 1 else f"v^{d}"
                body = mono if abs(a) == 1 else f"{abs(a)}{mono}"
            sign = "-" if a < 0 else "+"
            out.append((sign, body))
        s = "".join(sg + b for sg, b in out)
        return s[1:] if s.startswith("+") else s

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``; also accepts "·" and "." for zero and "v²" style exponents."""
        t = text.strip().replace(" ", "").replace("²", "^2").replace("³", "^3")
        if t in ("", "0", "·", "."):
            return ZERO
        c: dict[int, int] = {}
        for term in re.split(r"(?<!\^)(?=[+-])", t):
            if not term:
                continue
            m = _TERM.fullmatch(term)
            if not m or not (m.group(2) or m.group(3)) or (m.group(4) and not m.group(3)):
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign, coef, var, exp = m.groups()
            a = int(coef) if coef else 1
            d = (int(exp) if exp else 1) if var else 0
            c[d] = c.get(d, 0) + (-a if sign == "-" else a)
        return cls(c)

    def to_json(self) -> list[list[int]]:
        return [[d, a] for d, a in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls((int(d), int(a)) for d, a in data)


_TERM = re.compile(r"([+-]?)(\d*)(v)?(?:\^(-?\d+))?")


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
V = LaurentPoly.monomial(1)


def bar(f: LaurentPoly) -> LaurentPoly:
    """The involution v -> v^{-1}."""
    return LaurentPoly._raw({-d: a for d, a in f._c.items()})


def quantum_integer(k: int) -> LaurentPoly:
    return LaurentPoly._raw({k - 1 - 2 * j: 1 for j in range(k)})


def quantum_factorial(k: int) -> LaurentPoly:
    out = ONE
    for j in range(2, k + 1):
        out = out * quantum_integer(j)
    return out


def bar_symmetrize_nonpositive(f: LaurentPoly) -> LaurentPoly:
    """The unique bar-invariant α with f − α ∈ vZ[v]."""
    c = {}
    for d, a in f._c.items():
        if d <= 0:
            c[d] = a
            if d < 0:
                c[-d] = a
    return LaurentPoly._raw(c)
