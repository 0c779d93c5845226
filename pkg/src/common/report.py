"""
Validation reports returned by the model and automaton validators
"""
from dataclasses import dataclass, field
from typing import List


@dataclass(frozen=True)
class Violation:
    """A single violated invariant"""
    rule: str
    location: str
    detail: str = ""

    def __str__(self) -> str:
        suffix = f" ({self.detail})" if self.detail else ""
        return f"[{self.rule}] at {self.location}{suffix}"


@dataclass
class ValidationReport:
    """Outcome of a validation pass; empty means pass"""
    subject: str
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, location: str, detail: str = "") -> None:
        self.violations.append(Violation(rule, location, detail))

    def rules(self) -> List[str]:
        return [v.rule for v in self.violations]

    def describe(self) -> str:
        if self.ok:
            return f"{self.subject}: pass"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines.extend(f"  - {v}" for v in self.violations)
        return "\n".join(lines)
