"""Two-parameter (q, h) analogue: Gaussian layer under the h-deformation.

The q-deformed binomial coefficient (Gaussian binomial) is layered under
the h-weight to give

    C_qh(n, k) = C_q(n, k) * h^k * (hp)(hp+1)...(hp+k-1),

which satisfies two q-Pascal recurrences (checked exactly) and reduces
to the plain h-deformed coefficient at q = 1.  One notational ambiguity
is pinned by oracle: the shifted factorial attached to the q-coefficient
is the plain length-k one, not a product stepped by q-integers; the
alternative reading breaks the additive recurrence at (n, k) = (2, 3)
and the rejection is recorded in the report.

The q-Fibonacci layer is experimental.  q_fibonacci sums q^(k^2)-
weighted diagonals (with the summation bound widened to the full
diagonal so that q = 1 recovers the h-Fibonacci numbers), and
experimental_report measures its candidate identities without asserting
any of them: results are data, recorded per instance, with every
convention that was needed to make a candidate well-formed written into
the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from hfib.algebra import H, HP, HPoly, Q, shifted_factorial
from hfib.fibonacci import hfib_diagonal
from hfib.pascal import h_binomial
from hfib.report import SCHEMA, IdentityReport, PinnedConvention


def q_int(n: int) -> HPoly:
    """q-integer [n] = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q-integer index must be non-negative")
    total = HPoly.zero()
    for i in range(n):
        total = total + Q**i
    return total


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> HPoly:
    """Gaussian binomial coefficient via the q-Pascal recurrence."""
    if n < 0:
        raise ValueError("row index must be non-negative")
    if k < 0 or k > n:
        return HPoly.zero()
    if k == 0 or k == n:
        return HPoly.one()
    return q_binomial(n - 1, k - 1) + Q**k * q_binomial(n - 1, k)


@lru_cache(maxsize=None)
def qh_binomial(n: int, k: int) -> HPoly:
    """(q, h)-deformed binomial C_q(n, k) * h^k * (hp)(hp+1)...(hp+k-1)."""
    if n < 0:
        raise ValueError("row index must be non-negative")
    if k < 0 or k > n:
        return HPoly.zero()
    return q_binomial(n, k) * H**k * shifted_factorial(HP, 1, k)


def _qh_binomial_stepped(n: int, k: int) -> HPoly:
    # Rejected alternative reading: shifted factorial stepped by
    # q-integers, prod_j (hp + [j]).  Kept only to document its failure.
    if k < 0 or k > n:
        return HPoly.zero()
    prod = HPoly.one()
    for j in range(k):
        prod = prod * (HP + q_int(j))
    return q_binomial(n, k) * H**k * prod


@lru_cache(maxsize=None)
def q_fibonacci(n: int) -> HPoly:
    """q-weighted diagonal sum: F_n = sum_k q^(k^2) C_qh(n-1-k, k).

    The upper bound runs over the full diagonal (k up to (n-1)/2); the
    printed bound n/2 - 1 stops one term short on even diagonals and
    would break the q = 1 reduction to the h-Fibonacci numbers.
    """
    if n < 0:
        raise ValueError("index must be non-negative")
    if n == 0:
        return HPoly.zero()
    total = HPoly.zero()
    for k in range((n - 1) // 2 + 1):
        total = total + Q ** (k * k) * qh_binomial(n - 1 - k, k)
    return total


@lru_cache(maxsize=None)
def _q_fibonacci_alt(n: int) -> HPoly:
    # Alternative deformation weight q^(k^2 + k), measured alongside.
    if n == 0:
        return HPoly.zero()
    total = HPoly.zero()
    for k in range((n - 1) // 2 + 1):
        total = total + Q ** (k * k + k) * qh_binomial(n - 1 - k, k)
    return total


def verify_qh_recurrences(n_max: int = 10) -> IdentityReport:
    """Both q-Pascal recurrences on the (q, h) triangle, exactly."""
    report = IdentityReport("qh-recurrences")
    report.pin(
        "shifted factorial attached to the q-binomial (bracketed length)",
        "plain length-k factorial (hp)(hp+1)...(hp+k-1); the reading "
        "stepped by q-integers breaks the additive recurrence",
    )
    rejected = None
    for n in range(n_max + 1):
        for k in range(n + 2):
            lhs = _qh_binomial_stepped(n + 1, k)
            rhs = Q**k * _qh_binomial_stepped(n, k) + H * HP * _qh_binomial_stepped(
                n, k - 1
            ).shift_hprime(1)
            if lhs != rhs:
                rejected = (n, k)
                break
        if rejected:
            break
    if rejected:
        report.pin(
            "evidence for the rejected stepped reading",
            f"additive recurrence first fails at (n, k) = {rejected}",
        )
    for n in range(n_max + 1):
        for k in range(n + 2):
            lhs = qh_binomial(n + 1, k)
            rhs = Q**k * qh_binomial(n, k) + H * HP * qh_binomial(n, k - 1).shift_hprime(1)
            report.check({"rule": "additive", "n": n, "k": k}, lhs, rhs)
        for k in range(n + 1):
            lhs = q_int(k + 1) * qh_binomial(n + 1, k + 1)
            rhs = q_int(n + 1) * H * HP * qh_binomial(n, k).shift_hprime(1)
            report.check({"rule": "absorption", "n": n, "k": k}, lhs, rhs)
    return report


def verify_q_one_reduction(n_max: int = 12) -> IdentityReport:
    """q = 1 collapses every (q, h) object onto its h-deformed counterpart."""
    report = IdentityReport("qh-q1-reduction")
    for n in range(n_max + 1):
        for k in range(n + 1):
            report.check(
                {"object": "binomial", "n": n, "k": k},
                qh_binomial(n, k).substitute_q(1),
                h_binomial(n, k),
            )
        report.check(
            {"object": "fibonacci", "n": n},
            q_fibonacci(n).substitute_q(1),
            hfib_diagonal(n),
        )
    return report


def verify_qh(n_max: int | None = None) -> list[IdentityReport]:
    return [
        verify_qh_recurrences(n_max or 10),
        verify_q_one_reduction(n_max or 12),
    ]


# -- experimental layer ----------------------------------------------------


@dataclass(frozen=True)
class ExperimentalCheck:
    identity: str
    n: int
    holds: bool


@dataclass
class ExperimentalReport:
    """Measured (never asserted) candidate identities for the q-layer.

    `pinned` names the candidates that held for every measured instance;
    a strict consumer may choose to gate on exactly those.
    """

    suite: str = "qh-experimental"
    checks: list[ExperimentalCheck] = field(default_factory=list)
    conventions: list[PinnedConvention] = field(default_factory=list)

    def record(self, identity: str, n: int, lhs: HPoly, rhs: HPoly) -> None:
        self.checks.append(ExperimentalCheck(identity, n, lhs == rhs))

    def summary(self) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for check in self.checks:
            out[check.identity] = out.get(check.identity, True) and check.holds
        return out

    @property
    def pinned(self) -> tuple[str, ...]:
        return tuple(name for name, holds in sorted(self.summary().items()) if holds)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "experimental": True,
            "summary": dict(sorted(self.summary().items())),
            "pinned": list(self.pinned),
            "checks": [
                {"identity": c.identity, "n": c.n, "holds": c.holds} for c in self.checks
            ],
            "conventions": [c.to_dict() for c in self.conventions],
        }


def experimental_report(n_max: int = 10) -> ExperimentalReport:
    """Measure the candidate q-Fibonacci identities instance by instance.

    Candidates follow the printed h-analogue statements with q-weights;
    where a printed form is not even well-formed over Q[h, hp, q] the
    minimal repair is applied and documented in `conventions`.  Nothing
    here asserts; consumers read the matrix.
    """
    report = ExperimentalReport()
    report.conventions.append(
        PinnedConvention(
            "q-Fibonacci summation bound",
            "full diagonal k <= (n-1)/2, so q = 1 recovers the h-numbers",
        )
    )
    report.conventions.append(
        PinnedConvention(
            "odd-index partial sum lower bound",
            "the k = 0 term would reference the negative index F_(-1); "
            "it is dropped (sum starts at k = 1)",
        )
    )
    report.conventions.append(
        PinnedConvention(
            "even-index partial sum q-denominators",
            "q^(1-2k) factors are cleared by multiplying both sides by "
            "q^(2n-1), keeping everything polynomial",
        )
    )

    for n in range(1, n_max + 1):
        lhs = q_fibonacci(n + 1)
        literal = q_fibonacci(n) + Q ** (n - 1) * q_fibonacci(n - 1).shift_hprime(1)
        augmented = q_fibonacci(n) + Q ** (n - 1) * H * HP * q_fibonacci(n - 1).shift_hprime(1)
        report.record("recurrence-literal", n, lhs, literal)
        report.record("recurrence-augmented", n, lhs, augmented)
        report.record(
            "recurrence-augmented-q1",
            n,
            lhs.substitute_q(1),
            augmented.substitute_q(1),
        )

        alt_lhs = _q_fibonacci_alt(n + 1)
        alt_literal = _q_fibonacci_alt(n) + Q ** (n - 1) * _q_fibonacci_alt(n - 1).shift_hprime(1)
        alt_augmented = _q_fibonacci_alt(n) + Q ** (n - 1) * H * HP * _q_fibonacci_alt(
            n - 1
        ).shift_hprime(1)
        alt_qn = _q_fibonacci_alt(n) + Q**n * H * HP * _q_fibonacci_alt(n - 1).shift_hprime(1)
        report.record("alt-weight-recurrence-literal", n, alt_lhs, alt_literal)
        report.record("alt-weight-recurrence-augmented", n, alt_lhs, alt_augmented)
        report.record("alt-weight-recurrence-qn-augmented", n, alt_lhs, alt_qn)

        partial = HPoly.zero()
        for k in range(n + 1):
            partial = partial + Q**k * q_fibonacci(k).shift_hprime(1)
        report.record("partial-sum", n, H * HP * partial, q_fibonacci(n + 2) - 1)

        odd_acc = HPoly.zero()
        even_acc = HPoly.zero()
        for k in range(1, n + 1):
            weight = H ** (n - k) * shifted_factorial(HP, 1, n - k)
            odd_acc = odd_acc + Q ** (2 * k) * weight * q_fibonacci(2 * k - 1).shift_hprime(n - k)
            even_acc = even_acc + Q ** (2 * n - 2 * k) * weight * q_fibonacci(2 * k).shift_hprime(
                n - k
            )
        report.record("odd-index-sum", n, odd_acc, q_fibonacci(2 * n))
        head = H**n * shifted_factorial(HP, 1, n)
        report.record(
            "even-index-sum-cleared",
            n,
            even_acc,
            Q ** (2 * n - 1) * (q_fibonacci(2 * n + 1) - head),
        )
    return report
