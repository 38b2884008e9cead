from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str

    def __str__(self):
        return f"[{self.clause}] {self.message}"


@dataclass
class Report:
    """Collected violations of a check; empty means PASS."""

    subject: str = ""
    violations: list[Violation] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    limit: int = 20

    def fail(self, clause: str, message: str):
        if sum(v.clause == clause for v in self.violations) < self.limit:
            self.violations.append(Violation(clause, message))

    def check(self, clause: str):
        if clause not in self.checked:
            self.checked.append(clause)

    def merge(self, other: "Report", prefix: str | None = None):
        for c in other.checked:
            self.check(prefix or c)
        for v in other.violations:
            self.fail(prefix or v.clause, v.message)
        self.notes.extend(other.notes)
        return self

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def failed_clauses(self) -> list[str]:
        out = []
        for v in self.violations:
            if v.clause not in out:
                out.append(v.clause)
        return out

    def verdict(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": self.verdict(),
            "checked": list(self.checked),
            "failed": self.failed_clauses,
            "violations": [{"clause": v.clause, "message": v.message} for v in self.violations],
            "notes": list(self.notes),
        }

    def lines(self) -> list[str]:
        out = [f"{self.subject or 'check'}: {self.verdict()}"]
        for c in self.checked:
            bad = [v for v in self.violations if v.clause == c]
            out.append(f"  {c}: {'FAIL' if bad else 'ok'}")
            out.extend(f"    {v.message}" for v in bad[:5])
        for c in self.failed_clauses:
            if c not in self.checked:
                out.append(f"  {c}: FAIL")
                out.extend(f"    {v.message}" for v in self.violations if v.clause == c)
        out.extend(f"  note: {n}" for n in self.notes)
        return out

    def __str__(self):
        return "\n".join(self.lines())
