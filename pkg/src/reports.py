"""Check reports shared by every verification routine."""

from dataclasses import dataclass, field
from typing import Iterable, List, Tuple


@dataclass(frozen=True)
class Violation:
    """A single failed instance of a check."""

    check: str
    location: Tuple[int, ...]
    message: str

    def __str__(self) -> str:
        where = ",".join(str(k) for k in self.location)
        return f"[{self.check}] at ({where}): {self.message}"


@dataclass
class Report:
    """Outcome of a check: how many instances were examined and which failed."""

    name: str
    violations: List[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, check: str, location: Iterable[int], message: str) -> None:
        self.violations.append(Violation(check, tuple(location), message))

    def of_kind(self, check: str) -> List[Violation]:
        return [v for v in self.violations if v.check == check]

    def format(self) -> str:
        """Human-readable summary, one violation per line."""
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        lines = [f"{self.name}: {status} ({self.checked} checked)"]
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)
