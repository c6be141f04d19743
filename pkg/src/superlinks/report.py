"""Check reports: one ``CASE <id> <lhs> <rhs> <PASS|FAIL>`` line per comparison."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["Case", "Report"]


def _flat(x) -> str:
    return " ".join(str(x).split())


@dataclass(frozen=True)
class Case:
    id: str
    lhs: str
    rhs: str
    passed: bool

    def line(self) -> str:
        return f"CASE {self.id} {_flat(self.lhs)} {_flat(self.rhs)} {'PASS' if self.passed else 'FAIL'}"


@dataclass
class Report:
    title: str = ""
    cases: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, id: str, lhs, rhs, passed: bool | None = None) -> Case:
        if passed is None:
            passed = lhs == rhs
        c = Case(id, str(lhs), str(rhs), bool(passed))
        self.cases.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.cases:
            self.cases.append(Case(prefix + c.id, c.lhs, c.rhs, c.passed))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in sorted(self.cases, key=lambda c: c.id)]

    def text(self) -> str:
        return "\n".join(self.lines()) + ("\n" if self.cases else "")

    def summary(self) -> str:
        n = len(self.cases)
        bad = len(self.failures)
        return f"{self.title or 'report'}: {n - bad}/{n} PASS, {bad} FAIL"
