"""Verification reports: an ordered list of named identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    group: str
    passed: bool
    witness: Any = None
    required: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "group": self.group,
            "passed": self.passed,
            "required": self.required,
            "witness": _jsonable(self.witness),
            "note": self.note,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else ("FAIL" if self.required else "INFO")
        text = f"[{status}] {self.group}/{self.name}"
        if not self.passed and self.witness is not None:
            text += f"  witness={_jsonable(self.witness)}"
        if self.note:
            text += f"  ({self.note})"
        return text


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, (tuple, list)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return str(obj)


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, group: str, passed: bool, witness=None, required: bool = True, note: str = "") -> bool:
        self.checks.append(Check(name, group, bool(passed), None if passed else witness, required, note))
        return bool(passed)

    def compare(self, name: str, group: str, lhs, rhs, *, context=None, required: bool = True) -> bool:
        """Record an exact equality check between two tensors (or matrices)."""
        diff = lhs.first_difference(rhs)
        witness = None
        if diff is not None:
            witness = {"at": diff} if context is None else {"at": diff, "for": context}
        return self.add(name, group, diff is None, witness, required)

    def compare_all(self, name: str, group: str, cases, required: bool = True) -> bool:
        """One check over many (context, lhs, rhs) cases; the witness names the first failing case."""
        for context, lhs, rhs in cases:
            diff = lhs.first_difference(rhs)
            if diff is not None:
                return self.add(name, group, False, {"at": diff, "for": context}, required)
        return self.add(name, group, True, required=required)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.required and not c.passed]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())
