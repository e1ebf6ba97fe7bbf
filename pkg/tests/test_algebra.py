from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hfib.algebra import (
    H,
    HP,
    Q,
    DivergentLimitError,
    HPoly,
    render_terms,
    rising_rational,
    shifted_factorial,
)
from oracles import HP as SHP
from oracles import assert_matches, hpoly_to_sympy, oracle_shift

coeffs = st.one_of(
    st.integers(min_value=-50, max_value=50),
    st.fractions(min_value=-20, max_value=20, max_denominator=9),
)
exponents = st.tuples(
    st.integers(min_value=0, max_value=5),
    st.integers(min_value=0, max_value=5),
    st.integers(min_value=0, max_value=3),
)
polys = st.dictionaries(exponents, coeffs, max_size=6).map(
    lambda d: HPoly.from_terms((e, c) for e, c in d.items())
)


def test_constants_and_zero() -> None:
    assert HPoly.zero().is_zero
    assert not HPoly.zero()
    assert HPoly.one() == 1
    assert HPoly.const(Fraction(3, 2)) == Fraction(3, 2)
    assert HPoly.const(0).is_zero
    assert len(H * HP * Q) == 1


def test_from_terms_merges_and_drops_zeros() -> None:
    p = HPoly.from_terms([((1, 0, 0), 2), ((1, 0, 0), -2), ((0, 1, 0), 5)])
    assert p == 5 * HP
    assert len(p) == 1


def test_arithmetic_small() -> None:
    p = (1 + H * HP) ** 2
    assert p == 1 + 2 * H * HP + H**2 * HP**2
    assert p - p == 0
    assert -p + p == 0
    assert p * 0 == 0
    assert (H + HP) * (H - HP) == H**2 - HP**2


def test_pow_rejects_negative() -> None:
    with pytest.raises(ValueError):
        (1 + H) ** -1


def test_scalar_coercion() -> None:
    assert H * Fraction(1, 2) + H * Fraction(1, 2) == H
    with pytest.raises(TypeError):
        HPoly.const(0.5)
    with pytest.raises(TypeError):
        H + 1.5  # type: ignore[operator]


def test_canonical_term_order() -> None:
    # (total degree, then h, hp, q exponents) ascending
    p = H**2 * HP + HP**3 + H + 1
    keys = [e for e, _ in p.terms()]
    assert keys == [(0, 0, 0), (1, 0, 0), (0, 3, 0), (2, 1, 0)]


def test_rendering() -> None:
    assert str(HPoly.zero()) == "0"
    assert str(HPoly.one()) == "1"
    assert str(1 + 3 * H * HP - H**2 * HP) == "1 + 3*h*hp - h^2*hp"
    assert str(-H) == "-h"
    assert str(H * Q - HP) == "-hp + h*q"
    assert str(HPoly.const(Fraction(-1, 2)) * H) == "-1/2*h"


def test_render_terms_custom_names() -> None:
    # renders in the order given; HPoly/OpPoly pre-sort canonically
    text = render_terms([((2,), 1), ((0,), -1)], ("z",))
    assert text == "z^2 - 1"


def test_total_degree_and_max_exponents() -> None:
    p = H**2 * HP + Q**3
    assert p.total_degree == 3
    assert p.max_exponents() == (2, 1, 3)
    assert HPoly.zero().total_degree == 0
    assert HPoly.zero().max_exponents() == (0, 0, 0)


def test_constant_term() -> None:
    assert (3 + H).constant_term() == 3
    assert H.constant_term() == 0


def test_equality_and_hash() -> None:
    a = 1 + H * HP
    b = HPoly.one() + H * HP
    assert a == b
    assert hash(a) == hash(b)
    assert a != 1
    assert HPoly.const(7) == 7
    assert {a: "x"}[b] == "x"


def test_exponent_overflow_guard() -> None:
    with pytest.raises(OverflowError):
        H ** (2**21)
    big = H ** (2**20)
    with pytest.raises(OverflowError):
        big * big


def test_shift_hprime_matches_substitution() -> None:
    p = 2 * H**2 * HP**3 + HP - 5
    for delta in (-2, -1, 0, 1, 3):
        assert_matches(p.shift_hprime(delta), oracle_shift(hpoly_to_sympy(p), delta))


def test_shift_hprime_rejects_non_integer() -> None:
    with pytest.raises(TypeError):
        HP.shift_hprime(Fraction(1, 2))  # type: ignore[arg-type]


def test_substitute_q() -> None:
    p = 1 + H * Q + HP * Q**2
    assert p.substitute_q(1) == 1 + H + HP
    assert p.substitute_q(0) == HPoly.one()
    assert p.substitute_q(Fraction(1, 2)) == 1 + H * Fraction(1, 2) + HP * Fraction(1, 4)
    assert p.substitute_q(2).max_exponents()[2] == 0


def test_eval_point() -> None:
    p = 1 + 3 * H * HP + H**2 * HP + H**2 * HP**2
    assert p.eval_point(1, 1) == 6
    assert p.eval_point(Fraction(1, 2), 2) == 1 + 3 + Fraction(1, 2) + 1
    assert (H * Q).eval_point(2, 1, q=3) == 6
    assert (H * Q).eval_point(2, 1) == 0


def test_classical_limit() -> None:
    # hp = 1/h, h -> 0: monomials with equal h and hp exponents survive
    p = 1 + 3 * H * HP + H**2 * HP + H**2 * HP**2
    assert p.classical_limit() == 5
    assert HPoly.const(Fraction(2, 3)).classical_limit() == Fraction(2, 3)
    assert (H**2 * HP).classical_limit() == 0
    with pytest.raises(DivergentLimitError):
        (H * HP**2).classical_limit()
    with pytest.raises(ValueError):
        (H * Q).classical_limit()


def test_json_round_trip() -> None:
    p = 1 - H * HP * Fraction(7, 3) + Q**2
    data = p.to_json_terms()
    assert all(set(obj) <= {"coeff", "h", "hp", "q"} for obj in data)
    assert HPoly.from_json_terms(data) == p
    assert HPoly.from_json_terms([]) == 0


def test_json_omits_zero_exponents() -> None:
    (obj,) = (3 * H).to_json_terms()
    assert obj == {"coeff": "3", "h": 1}


def test_shifted_factorial_values() -> None:
    assert shifted_factorial(HP, 1, 0) == 1
    assert shifted_factorial(HP, 1, 2) == HP + HP**2
    assert shifted_factorial(H * HP, H, 3) == 2 * H**3 * HP + 3 * H**3 * HP**2 + H**3 * HP**3
    assert_matches(shifted_factorial(HP, 1, 5), sympy.expand(sympy.rf(SHP, 5)))
    with pytest.raises(ValueError):
        shifted_factorial(HP, 1, -1)


def test_rising_rational() -> None:
    assert rising_rational(Fraction(1, 2), 0) == 1
    assert rising_rational(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)
    assert rising_rational(Fraction(-2), 4) == 0


@given(polys, polys, polys)
def test_ring_axioms(a: HPoly, b: HPoly, c: HPoly) -> None:
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a
    assert a * 1 == a
    assert a - a == 0


@given(polys, polys, st.integers(min_value=-3, max_value=3))
def test_shift_hprime_is_ring_map(a: HPoly, b: HPoly, delta: int) -> None:
    assert (a + b).shift_hprime(delta) == a.shift_hprime(delta) + b.shift_hprime(delta)
    assert (a * b).shift_hprime(delta) == a.shift_hprime(delta) * b.shift_hprime(delta)
    assert a.shift_hprime(delta).shift_hprime(-delta) == a


@given(
    polys,
    polys,
    st.fractions(min_value=-9, max_value=9, max_denominator=4),
    st.fractions(min_value=-9, max_value=9, max_denominator=4),
    st.fractions(min_value=-9, max_value=9, max_denominator=4),
)
def test_eval_point_is_ring_map(a: HPoly, b: HPoly, hv: Fraction, hpv: Fraction, qv: Fraction) -> None:
    assert (a + b).eval_point(hv, hpv, qv) == a.eval_point(hv, hpv, qv) + b.eval_point(hv, hpv, qv)
    assert (a * b).eval_point(hv, hpv, qv) == a.eval_point(hv, hpv, qv) * b.eval_point(hv, hpv, qv)


@given(polys, st.integers(min_value=0, max_value=4))
def test_pow_matches_repeated_product(a: HPoly, n: int) -> None:
    expected = HPoly.one()
    for _ in range(n):
        expected = expected * a
    assert a**n == expected


@given(polys)
def test_json_round_trip_property(a: HPoly) -> None:
    assert HPoly.from_json_terms(a.to_json_terms()) == a
