"""Residual reports returned by every checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Union

from .polyring import Poly
from .module import ModuleElement, TensorElement

Residual = Union[Poly, ModuleElement, TensorElement]


@dataclass(frozen=True)
class Check:
    axiom: str
    tuple: tuple[str, ...]
    residual: Residual
    verdict: bool | None = None

    @property
    def passed(self) -> bool:
        if self.verdict is not None:
            return self.verdict
        return self.residual.is_zero()

    def record(self, subject: str) -> dict:
        return {
            "subject": subject,
            "axiom": self.axiom,
            "tuple": list(self.tuple),
            "passed": self.passed,
            "residual": str(self.residual),
        }


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, axiom: str, labels: Iterable[str], residual: Residual,
            verdict: bool | None = None) -> None:
        self.checks.append(Check(axiom, tuple(labels), residual, verdict))

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def axioms(self) -> list[str]:
        seen: list[str] = []
        for c in self.checks:
            if c.axiom not in seen:
                seen.append(c.axiom)
        return seen

    def only(self, *axioms: str) -> "Report":
        return Report(self.subject, [c for c in self.checks if c.axiom in axioms])

    def verdict(self, axiom: str) -> bool:
        return all(c.passed for c in self.checks if c.axiom == axiom)

    def sorted(self) -> "Report":
        order = {a: i for i, a in enumerate(self.axioms())}
        return Report(self.subject, sorted(self.checks, key=lambda c: (order[c.axiom], c.tuple)))

    def records(self) -> list[dict]:
        return [c.record(self.subject) for c in self.checks]

    def to_json_lines(self) -> str:
        return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in self.records())

    def to_text(self, verbose: bool = False) -> str:
        lines = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            line = f"{tag} {self.subject} {c.axiom} ({', '.join(c.tuple)})"
            if not c.passed or verbose:
                line += f": {c.residual}"
            lines.append(line)
        status = "passed" if self.passed else "FAILED"
        lines.append(f"{self.subject}: {len(self.checks)} checks, "
                     f"{len(self.failures())} failing, {status}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()
