"""Structured pass/fail reports for the verification batteries."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    verdict: str  # "pass" | "fail" | "not-applicable"
    witness: str | None = None

    def to_dict(self) -> dict:
        d: dict = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    """An ordered list of named checks with an overall verdict."""

    command: str = ""
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: str | None = None) -> None:
        self.checks.append(
            CheckResult(name, "pass" if ok else "fail", None if ok else witness)
        )

    def add_na(self, name: str, witness: str | None = None) -> None:
        self.checks.append(CheckResult(name, "not-applicable", witness))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                CheckResult(prefix + c.name if prefix else c.name, c.verdict, c.witness)
            )

    @property
    def ok(self) -> bool:
        return all(c.verdict != "fail" for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.verdict != "pass"]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "checks": [c.to_dict() for c in self.checks],
        }

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            mark = {"pass": "ok", "fail": "FAIL", "not-applicable": "n/a"}[c.verdict]
            line = f"[{mark:>4}] {c.name}"
            if c.witness:
                line += f"\n       witness: {c.witness}"
            lines.append(line)
        return "\n".join(lines)
