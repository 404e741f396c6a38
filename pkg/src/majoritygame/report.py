"""Structured pass/fail records shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field

#: Witness strings kept per report; further failures are only counted.
WITNESS_CAP = 20


@dataclass
class SuiteReport:
    """Outcome of one verification suite.

    ``cases`` counts every identity checked; ``failures`` holds the first
    few witness descriptions while ``failure_count`` keeps the true
    total.  ``details`` carries extremal data such as minimal slacks.
    """

    suite: str
    cases: int = 0
    failure_count: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def add_failure(self, witness: str) -> None:
        self.failure_count += 1
        if len(self.failures) < WITNESS_CAP:
            self.failures.append(witness)

    def merge(self, other: "SuiteReport") -> None:
        """Fold another report's tallies into this one."""
        self.cases += other.cases
        self.failure_count += other.failure_count
        for witness in other.failures:
            if len(self.failures) < WITNESS_CAP:
                self.failures.append(witness)
        if other.details:
            self.details[other.suite] = other.details

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.suite} (cases={self.cases}"
        if self.failure_count:
            line += f", failures={self.failure_count}"
        line += ")"
        if self.failures:
            line += f" first: {self.failures[0]}"
        return line
