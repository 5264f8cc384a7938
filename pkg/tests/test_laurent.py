import pytest
from hypothesis import given, strategies as st

from hecke_wild.laurent import (ONE, V, ZERO, LaurentPoly, bar, bar_symmetrize_nonpositive,
                                quantum_factorial, quantum_integer)

polys = st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=5).map(LaurentPoly)


def test_printing_and_parsing():
    f = LaurentPoly({2: 1, 0: 1, -1: 2})
    assert str(f) == "2v^-1+1+v^2"
    assert LaurentPoly.parse(str(f)) == f
    assert str(ZERO) == "0" and str(ONE) == "1" and str(V) == "v"
    assert LaurentPoly.parse("v^2") == V * V


def test_quantum_numbers():
    assert quantum_integer(2) == V + LaurentPoly.monomial(-1)
    assert quantum_factorial(0) == ONE
    assert str(quantum_factorial(3)) == "v^-3+2v^-1+2v+v^3"


def test_bar_flips_degrees():
    assert bar(LaurentPoly({1: 2, -3: 1})) == LaurentPoly({-1: 2, 3: 1})


def test_exact_division():
    q = quantum_factorial(3)
    assert q.exact_div(quantum_integer(3)) == quantum_integer(2)
    with pytest.raises(ArithmeticError):
        (V + 1).exact_div(V + 2)


def test_specialisation_helpers():
    f = LaurentPoly({1: 1, 2: 1})
    assert f.at_one() == 2 and f.in_v_N_v()
    assert not LaurentPoly({0: 1, 1: 1}).in_v_N_v()
    assert not LaurentPoly({1: -1}).in_v_N_v()


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert f - f == ZERO
    assert bar(f * g) == bar(f) * bar(g)


@given(polys)
def test_bar_symmetrisation(f):
    s = bar_symmetrize_nonpositive(f)
    assert s.is_bar_invariant()
    rest = f - s
    assert rest.is_zero() or rest.min_degree() > 0


@given(polys)
def test_json_roundtrip(f):
    assert LaurentPoly.from_json(f.to_json()) == f
    assert LaurentPoly.parse(str(f)) == f
