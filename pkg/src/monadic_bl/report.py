"""Exceptions and verification reports shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class MBLError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(MBLError, ValueError):
    """Operation tables are malformed (wrong shape or out-of-range entry)."""


class InvalidParameter(MBLError, ValueError):
    pass


class PreconditionError(MBLError):
    """An operation was called on an input outside its domain.

    ``witness`` carries whatever evidence the caller needs to see why,
    typically a tuple of element indices.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BoundExceeded(PreconditionError):
    pass


class InternalError(MBLError):
    """A computed result contradicts a theorem the code relies on."""


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[int, ...]
    note: str = ""

    def to_dict(self, labels: Sequence[str] | None = None) -> dict:
        out = {"law": self.law, "witness": list(self.witness)}
        if labels is not None:
            out["labels"] = [labels[i] for i in self.witness]
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    """Outcome of checking a list of laws, in the order they were checked.

    Every law maps to the list of its failing instances; an empty list means
    the law holds everywhere.
    """

    title: str
    laws: dict[str, list[Violation]] = field(default_factory=dict)
    labels: tuple[str, ...] | None = None
    info: dict = field(default_factory=dict)

    def record(self, law: str, witnesses: Iterable[tuple[int, ...]] = (), note: str = "") -> None:
        bucket = self.laws.setdefault(law, [])
        bucket.extend(Violation(law, tuple(int(v) for v in w), note) for w in witnesses)

    @property
    def ok(self) -> bool:
        return all(not v for v in self.laws.values())

    def __bool__(self) -> bool:
        return self.ok

    @property
    def total(self) -> int:
        return len(self.laws)

    @property
    def passed(self) -> int:
        return sum(1 for v in self.laws.values() if not v)

    @property
    def failed_laws(self) -> list[str]:
        return [name for name, v in self.laws.items() if v]

    def violations(self, law: str | None = None) -> list[Violation]:
        if law is not None:
            return list(self.laws.get(law, []))
        return [v for vs in self.laws.values() for v in vs]

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.title}: {status} ({self.passed}/{self.total})"

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "passed": self.passed,
            "total": self.total,
            "laws": {
                name: [v.to_dict(self.labels) for v in vs] for name, vs in self.laws.items()
            },
            **({"info": self.info} if self.info else {}),
        }

    def __str__(self) -> str:
        lines = [self.summary()]
        for name, vs in self.laws.items():
            if not vs:
                continue
            shown = ", ".join(_fmt_witness(v.witness, self.labels) for v in vs[:5])
            more = f" (+{len(vs) - 5} more)" if len(vs) > 5 else ""
            lines.append(f"  {name}: {len(vs)} failure(s) at {shown}{more}")
        return "\n".join(lines)


def _fmt_witness(w: tuple[int, ...], labels: Sequence[str] | None) -> str:
    if labels is None:
        return "(" + ",".join(map(str, w)) + ")"
    return "(" + ",".join(labels[i] for i in w) + ")"
