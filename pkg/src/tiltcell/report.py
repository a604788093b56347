"""Structured pass/fail reports shared by the verification operations.

A report never raises on a mathematical failure: each checked item records
both sides of its equality so the CLI can render exactly what disagreed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class ReportItem:
    input: Any
    lhs: Any
    rhs: Any
    passed: bool

    def to_dict(self) -> dict:
        return {"input": self.input, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


@dataclass
class Report:
    check: str
    context: dict
    items: list[ReportItem] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def failures(self) -> list[ReportItem]:
        return [item for item in self.items if not item.passed]

    def add(self, input: Any, lhs: Any, rhs: Any, passed: bool | None = None) -> None:
        if passed is None:
            passed = lhs == rhs
        self.items.append(ReportItem(input, lhs, rhs, passed))

    def extend(self, other: "Report") -> None:
        self.items.extend(other.items)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "context": self.context,
            "pass": self.all_pass,
            "items": [item.to_dict() for item in self.items],
        }
