"""Small result containers shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class IdentityResult:
    name: str
    max_exponent: Fraction
    passed: bool
    first_difference: Fraction | None = None
    seconds: float = 0.0
    note: str = ""

    def line(self):
        status = "ok" if self.passed else "FAIL"
        extra = ""
        if not self.passed and self.first_difference is not None:
            extra = f"  first difference at q^{self.first_difference}"
        if self.note:
            extra += f"  [{self.note}]"
        return (f"{status:4} {self.name}  (checked to q^{self.max_exponent},"
                f" {self.seconds:.2f}s){extra}")


@dataclass
class VerifyReport:
    suite: str
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def extend(self, other):
        self.results.extend(other.results)
        return self

    def lines(self):
        return [r.line() for r in self.results]

    def failures(self):
        return [r for r in self.results if not r.passed]
