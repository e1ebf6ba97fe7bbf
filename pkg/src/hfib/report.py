"""Structured results for identity suites.

Every verification suite returns an IdentityReport: how many instances
were checked, which failed (with both sides rendered), and which
notational ambiguities had to be pinned to a convention before the
checks could run.  Reports serialize under the "hfib-report/1" schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SCHEMA = "hfib-report/1"

# Default seed for every randomized sampling path (CLI and library).
# Fixed so identical invocations are byte-identical; override per call.
DEFAULT_SEED = 112358


@dataclass(frozen=True)
class Failure:
    params: dict
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        return {"params": dict(self.params), "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class PinnedConvention:
    ambiguity: str
    resolution: str

    def to_dict(self) -> dict:
        return {"ambiguity": self.ambiguity, "resolution": self.resolution}


@dataclass
class IdentityReport:
    suite: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    pinned_conventions: list[PinnedConvention] = field(default_factory=list)

    def check(self, params: dict, lhs, rhs) -> bool:
        """Record one instance; both sides are rendered only on failure."""
        self.cases += 1
        if lhs == rhs:
            return True
        self.failures.append(Failure(params=dict(params), lhs=str(lhs), rhs=str(rhs)))
        return False

    def pin(self, ambiguity: str, resolution: str) -> None:
        self.pinned_conventions.append(PinnedConvention(ambiguity, resolution))

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "cases": self.cases,
            "failures": [f.to_dict() for f in self.failures],
            "pinned_conventions": [p.to_dict() for p in self.pinned_conventions],
        }


def merge_reports(suite: str, reports: list[IdentityReport]) -> IdentityReport:
    """Fold sub-suite reports into one, prefixing params with the sub-suite."""
    merged = IdentityReport(suite)
    for r in reports:
        merged.cases += r.cases
        for f in r.failures:
            merged.failures.append(
                Failure(params={"suite": r.suite, **f.params}, lhs=f.lhs, rhs=f.rhs)
            )
        merged.pinned_conventions.extend(r.pinned_conventions)
    return merged
