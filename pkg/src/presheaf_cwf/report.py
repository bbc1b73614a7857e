"""Validation reports: a flat list of law violations with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    law: str
    witness: str
    lhs: str | None = None
    rhs: str | None = None
    structural: bool = False

    def __str__(self) -> str:
        kind = "structural" if self.structural else "law"
        s = f"[{kind}] {self.law}: {self.witness}"
        if self.lhs is not None or self.rhs is not None:
            s += f" (lhs={self.lhs}, rhs={self.rhs})"
        return s

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "witness": self.witness,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "structural": self.structural,
        }


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def has_structural(self) -> bool:
        return any(v.structural for v in self.violations)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }
