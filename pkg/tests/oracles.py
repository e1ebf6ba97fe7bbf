"""Independent sympy oracles used to cross-check package results.

Everything here is built from sympy primitives (symbols, rf, binomial)
and shares no code paths with the package, so agreement is meaningful.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

H, HP, Q = sympy.symbols("h hp q")


def hpoly_to_sympy(value) -> sympy.Expr:
    total = sympy.Integer(0)
    for (eh, ehp, eq), coeff in value.terms():
        total += sympy.Rational(Fraction(coeff)) * H**eh * HP**ehp * Q**eq
    return sympy.expand(total)


def oppoly_to_sympy(value, d: sympy.Symbol) -> sympy.Expr:
    total = sympy.Integer(0)
    for exp, coeff in value.terms():
        total += sympy.Rational(Fraction(coeff)) * d**exp
    return sympy.expand(total)


def oracle_h_binomial(n: int, k: int) -> sympy.Expr:
    # C(n,k) * h^k * hp(hp+1)...(hp+k-1)
    return sympy.expand(sympy.binomial(n, k) * H**k * sympy.rf(HP, k))


def oracle_hfib(n: int) -> sympy.Expr:
    total = sympy.Integer(0)
    for k in range((n - 1) // 2 + 1):
        total += oracle_h_binomial(n - 1 - k, k)
    return sympy.expand(total)


def oracle_shift(expr: sympy.Expr, delta: int) -> sympy.Expr:
    return sympy.expand(expr.subs(HP, HP + delta))


def assert_matches(value, expr: sympy.Expr) -> None:
    got = hpoly_to_sympy(value)
    want = sympy.expand(expr)
    assert sympy.simplify(got - want) == 0, f"{got} != {want}"
