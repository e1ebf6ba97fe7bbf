"""h-deformed Fibonacci numbers: four routes and their identity suites.

The deformed Fibonacci number F_n is the diagonal sum of the deformed
Pascal triangle, a polynomial in h and hp that collapses to the ordinary
Fibonacci number in the classical limit h*hp = 1, h -> 0.  Four
independent computation routes are kept deliberately separate so they
can be played against each other:

  * hfib_diagonal   - diagonal sums of deformed binomial coefficients
  * hfib_recurrence - the two-step recurrence, whose second term shifts
                      hp by one: F_(n+1) = F_n + h*hp*F_(n-1)[hp -> hp+1]
  * hfib_hypergeometric - a terminating 3F1-type series
  * operators.binet_fib + op_eval - the exact Binet formula in Q[D]

Negative indices are rationally deformed: F_(-n) is a ratio whose
denominator is h^n * (hp)(hp+1)...(hp+n-1); NegHFib carries the
numerator and that denominator shape exactly.

Some of the summation identities circulate in print with missing
weights or shifted parameters; their verify functions try the literal
form first, then pin the corrected form when the literal fails,
recording the choice in the report (see verify_doubling_sum).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from fractions import Fraction

from hfib.algebra import H, HP, HPoly, shifted_factorial
from hfib.operators import binet_fib, neg_fib_op, op_eval
from hfib.pascal import h_binomial
from hfib.report import IdentityReport


@lru_cache(maxsize=None)
def classical_fib(n: int) -> int:
    """Ordinary Fibonacci number, F_0 = 0, F_1 = 1."""
    if n < 0:
        raise ValueError("index must be non-negative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def hfib_diagonal(n: int) -> HPoly:
    """Diagonal sum route: F_n = sum_k C_h(n-1-k, k), F_0 = 0."""
    if n < 0:
        raise ValueError("index must be non-negative; use hfib_negative")
    if n == 0:
        return HPoly.zero()
    total = HPoly.zero()
    for k in range((n - 1) // 2 + 1):
        total = total + h_binomial(n - 1 - k, k)
    return total


@lru_cache(maxsize=None)
def hfib_recurrence(n: int) -> HPoly:
    """Recurrence route: F_(n+1) = F_n + h*hp * F_(n-1) with hp shifted by one."""
    if n < 0:
        raise ValueError("index must be non-negative; use hfib_negative")
    if n == 0:
        return HPoly.zero()
    if n <= 2:
        return HPoly.one()
    return hfib_recurrence(n - 1) + H * HP * hfib_recurrence(n - 2).shift_hprime(1)


def hfib_hypergeometric(n: int) -> HPoly:
    """Terminating hypergeometric route.

    F_n = sum_k [((1-n)/2)_k ((2-n)/2)_k / ((1-n)_k k!)] * (-4h)^k
               * (hp)(hp+1)...(hp+k-1),

    where (x)_k is the ordinary rising factorial.  One of the two
    numerator factors hits zero before the denominator factor (1-n)_k
    can vanish, so the series terminates while every partial coefficient
    stays a well-defined rational.
    """
    if n < 1:
        raise ValueError("hypergeometric route is defined for n >= 1")
    a = Fraction(1 - n, 2)
    b = Fraction(2 - n, 2)
    d = Fraction(1 - n)
    total = HPoly.one()
    coeff = Fraction(1)
    h_power = HPoly.one()
    rising = HPoly.one()
    k = 0
    while True:
        fa, fb = a + k, b + k
        if fa == 0 or fb == 0:
            return total
        fd = d + k
        if fd == 0:
            raise ArithmeticError("series hit the denominator pole before terminating")
        coeff *= fa * fb / (fd * (k + 1))
        h_power = h_power * (-4 * H)
        rising = rising * (HP + k)
        k += 1
        total = total + coeff * h_power * rising


@dataclass(frozen=True)
class NegHFib:
    """Negative-index value F_(-n) as an exact ratio.

    numerator / (h^n * (hp)(hp+1)...(hp+n-1)); denominator_count is the
    length n of that shifted factorial.
    """

    n: int
    numerator: HPoly

    @property
    def denominator_count(self) -> int:
        return self.n

    @property
    def denominator(self) -> HPoly:
        return H**self.n * shifted_factorial(HP, 1, self.n)


def hfib_negative(n: int) -> NegHFib:
    """F_(-n) for n >= 1, via the reflection F_(-n) = (-1)^(n-1) F_n / (h^n (hp)_n)."""
    if n < 1:
        raise ValueError("hfib_negative takes the positive magnitude n of the index -n")
    return NegHFib(n, (-1) ** (n - 1) * hfib_diagonal(n))


# -- tabulation ----------------------------------------------------------


@dataclass(frozen=True)
class FibTableRow:
    n: int
    value: HPoly
    classical: int


@dataclass(frozen=True)
class FibTable:
    rows: tuple[FibTableRow, ...]
    pinned_conventions: tuple[tuple[str, str], ...]


def fib_table(n_max: int = 10) -> FibTable:
    """First deformed Fibonacci numbers with their classical limits.

    The printed source table misprints the top-degree weight of row 9
    (h^3 where the diagonal sum forces h^4); the computed value is
    authoritative and the discrepancy is flagged so downstream renderers
    can footnote it.
    """
    if n_max < 0:
        raise ValueError("row count must be non-negative")
    rows = []
    for n in range(n_max + 1):
        value = hfib_diagonal(n)
        limit = value.classical_limit()
        assert limit.denominator == 1
        rows.append(FibTableRow(n, value, int(limit)))
    pins = []
    if n_max >= 9:
        pins.append(
            (
                "printed row n = 9 shows a top term h^3 * hp*(hp+1)*(hp+2)*(hp+3)",
                "the diagonal sum forces h^4 on that term; the computed row is used",
            )
        )
    return FibTable(tuple(rows), tuple(pins))


# -- identity suites ------------------------------------------------------


def verify_routes(n_max: int = 30) -> IdentityReport:
    """All four routes agree: diagonal vs recurrence, hypergeometric, Binet."""
    report = IdentityReport("fib-route-equivalence")
    for n in range(n_max + 1):
        base = hfib_diagonal(n)
        report.check({"n": n, "route": "recurrence"}, hfib_recurrence(n), base)
        if n >= 1:
            report.check({"n": n, "route": "hypergeometric"}, hfib_hypergeometric(n), base)
        report.check({"n": n, "route": "binet"}, op_eval(binet_fib(n)), base)
    return report


def verify_classical_limit(n_max: int = 30) -> IdentityReport:
    """Classical limits of F_n against the ordinary Fibonacci numbers."""
    report = IdentityReport("fib-classical-limit")
    for n in range(n_max + 1):
        report.check(
            {"n": n}, hfib_diagonal(n).classical_limit(), Fraction(classical_fib(n))
        )
    return report


def verify_partial_sum(n_max: int = 20) -> IdentityReport:
    """Partial sums: h*hp * sum_k F_k[hp -> hp+1] = F_(n+2) - 1.

    The printed right side carries a stray hp-shift marker on F_(n+2);
    taking F_(n+2) at the unshifted parameters makes every instance
    pass.  The literal reading is tried first and the unshifted one
    pinned when it fails.
    """
    report = IdentityReport("fib-partial-sum")

    def lhs(n: int) -> HPoly:
        acc = HPoly.zero()
        for k in range(1, n + 1):
            acc = acc + hfib_diagonal(k).shift_hprime(1)
        return H * HP * acc

    def rhs_literal(n: int) -> HPoly:
        return hfib_diagonal(n + 2).shift_hprime(1) - 1

    def rhs_unshifted(n: int) -> HPoly:
        return hfib_diagonal(n + 2) - 1

    rhs = rhs_literal
    if not all(lhs(n) == rhs_literal(n) for n in range(1, n_max + 1)):
        rhs = rhs_unshifted
        report.pin(
            "shift marker printed on the right side F_(n+2)",
            "right side is F_(n+2) at unshifted (h, hp); the shift applies "
            "only inside the summed terms",
        )
    for n in range(1, n_max + 1):
        report.check({"n": n}, lhs(n), rhs(n))
    return report


def _doubling_weight(n: int, k: int) -> HPoly:
    return H ** (n - k) * shifted_factorial(HP, 1, n - k)


def verify_odd_even_sums(n_max: int = 20) -> IdentityReport:
    """Weighted sums of odd-index terms to F_(2n) and even-index to F_(2n+1)."""
    report = IdentityReport("fib-odd-even-sums")
    for n in range(1, n_max + 1):
        odd_acc = HPoly.zero()
        even_acc = HPoly.zero()
        for k in range(1, n + 1):
            weight = _doubling_weight(n, k)
            odd_acc = odd_acc + weight * hfib_diagonal(2 * k - 1).shift_hprime(n - k)
            even_acc = even_acc + weight * hfib_diagonal(2 * k).shift_hprime(n - k)
        report.check({"n": n, "parity": "odd indices"}, odd_acc, hfib_diagonal(2 * n))
        report.check(
            {"n": n, "parity": "even indices"},
            even_acc,
            hfib_diagonal(2 * n + 1) - _doubling_weight(n, 0),
        )
    return report


def verify_doubling_sum(n_max: int = 12) -> IdentityReport:
    """Binomial doubling sum_(i) C(n,i) ... F_i[hp -> hp+n-i] = F_(2n).

    The literal print carries no weight on the summands, which already
    fails at n = 2; the evaluated image of the operator doubling
    identity carries the weight h^(n-i) * (hp)(hp+1)...(hp+n-i-1).  The
    literal form is tried first and the weighted form pinned when it
    fails.
    """
    report = IdentityReport("fib-doubling-sum")

    def literal(n: int) -> HPoly:
        acc = HPoly.zero()
        for i in range(1, n + 1):
            acc = acc + comb(n, i) * hfib_diagonal(i).shift_hprime(n - i)
        return acc

    def weighted(n: int) -> HPoly:
        acc = HPoly.zero()
        for i in range(1, n + 1):
            acc = acc + comb(n, i) * _doubling_weight(n, i) * hfib_diagonal(i).shift_hprime(n - i)
        return acc

    literal_ok = all(literal(n) == hfib_diagonal(2 * n) for n in range(1, n_max + 1))
    form = literal
    if not literal_ok:
        form = weighted
        report.pin(
            "binomial doubling sum printed without weights on the summands",
            "each summand carries h^(n-i) * (hp)(hp+1)...(hp+n-i-1), the "
            "evaluated image of the operator doubling identity",
        )
    for n in range(1, n_max + 1):
        report.check({"n": n}, form(n), hfib_diagonal(2 * n))
    return report


def verify_alternating_sum(n_max: int = 12) -> IdentityReport:
    """Alternating binomial sum sum_(i) C(n,i) (-1)^(n-i) F_i = (-1)^(n-1) F_n.

    All indices at the same (h, hp); the literal print holds as stated.
    """
    report = IdentityReport("fib-alternating-sum")
    for n in range(1, n_max + 1):
        acc = HPoly.zero()
        for i in range(1, n + 1):
            acc = acc + comb(n, i) * (-1) ** (n - i) * hfib_diagonal(i)
        report.check({"n": n}, acc, (-1) ** (n - 1) * hfib_diagonal(n))
    return report


def verify_negative_reflection(n_max: int = 15) -> IdentityReport:
    """NegHFib numerators against the operator-route negative indices."""
    report = IdentityReport("fib-negative-reflection")
    for n in range(1, n_max + 1):
        value = hfib_negative(n)
        report.check(
            {"n": n, "route": "reflection"},
            value.numerator,
            (-1) ** (n - 1) * hfib_diagonal(n),
        )
        report.check(
            {"n": n, "route": "operator"},
            op_eval(neg_fib_op(n).g),
            value.numerator,
        )
    return report


def verify_fibonacci(n_max: int | None = None) -> list[IdentityReport]:
    """All h-Fibonacci suites; n_max, when given, overrides every scale."""
    return [
        verify_routes(n_max or 30),
        verify_classical_limit(n_max or 30),
        verify_partial_sum(n_max or 20),
        verify_odd_even_sums(n_max or 20),
        verify_doubling_sum(n_max or 12),
        verify_alternating_sum(n_max or 12),
        verify_negative_reflection(n_max or 15),
    ]
