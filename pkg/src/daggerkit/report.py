"""Validation reports shared by every checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field

WITNESS_CAP = 20


class StructureError(ValueError):
    """Raised when tables reference ids that do not exist (not an axiom failure)."""


class SearchSpaceExceeded(RuntimeError):
    """Raised when an exhaustive search passes its configured ceiling."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(str(x) for x in self.witness)
        s = f"{self.axiom}: ({w})"
        return f"{s} {self.detail}" if self.detail else s


@dataclass
class ValidationReport:
    """Violations grouped by axiom.

    Only the first ``cap`` witnesses per axiom are kept; ``counts`` always
    holds the true number found.  A report is valid iff ``counts`` is empty.
    """

    subject: str = ""
    cap: int = WITNESS_CAP
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    unchecked: list = field(default_factory=list)

    def add(self, axiom: str, witness, detail: str = "") -> None:
        n = self.counts.get(axiom, 0)
        if n < self.cap:
            if not isinstance(witness, tuple):
                witness = (witness,)
            self.violations.append(Violation(axiom, witness, detail))
        self.counts[axiom] = n + 1

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            name = prefix + v.axiom
            n = self.counts.get(name, 0)
            if n < self.cap:
                self.violations.append(Violation(name, v.witness, v.detail))
            self.counts[name] = n + 1
        # keep true totals even when the other report elided witnesses
        for axiom, total in other.counts.items():
            kept = sum(1 for v in other.violations if v.axiom == axiom)
            if total > kept:
                self.counts[prefix + axiom] += total - kept
        self.warnings.extend(other.warnings)
        self.unchecked.extend(x for x in other.unchecked if x not in self.unchecked)

    @property
    def ok(self) -> bool:
        return not self.counts

    def __bool__(self):
        return self.ok

    def axioms(self) -> list:
        return list(self.counts)

    def first(self, axiom: str):
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def elided(self, axiom: str) -> int:
        kept = sum(1 for v in self.violations if v.axiom == axiom)
        return self.counts.get(axiom, 0) - kept

    def __str__(self):
        if self.ok:
            return f"{self.subject or 'report'}: OK"
        lines = [f"{self.subject or 'report'}: {sum(self.counts.values())} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)
