"""A small pass/fail report shared by the audits."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    ok: bool = True
    problems: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, msg: str):
        self.ok = False
        self.problems.append(msg)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        head = "pass" if self.ok else f"FAIL ({len(self.problems)} problems)"
        lines = [head] + [f"  {k}: {v}" for k, v in self.details.items()]
        lines += [f"  - {p}" for p in self.problems[:20]]
        return "\n".join(lines)
