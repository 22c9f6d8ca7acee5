"""Check records and the JSON-serializable verification suite."""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "vacuous", "inconclusive", "skipped")


def jsonable(x):
    """Tuples and sets become lists, mapping keys become strings."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


@dataclass
class Check:
    name: str
    status: str
    detail: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    seconds: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown check status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError(f"failed check {self.name!r} must carry a witness")
        self.detail = jsonable(self.detail)
        self.witness = jsonable(self.witness)

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "detail": self.detail, "witness": self.witness}
        if self.seconds is not None:
            d["seconds"] = self.seconds
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(d["name"], d["status"], d.get("detail", {}), d.get("witness"), d.get("seconds"))


def passed(name: str, **detail) -> Check:
    return Check(name, "pass", detail)


def failed(name: str, witness, **detail) -> Check:
    return Check(name, "fail", detail, witness)


def verdict(name: str, ok: bool, witness=None, **detail) -> Check:
    if ok:
        return Check(name, "pass", detail)
    return Check(name, "fail", detail, witness if witness is not None else detail or name)


@dataclass
class VerificationSuite:
    checks: list[Check] = field(default_factory=list)
    config: dict[str, Any] = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "summary": self.counts(),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationSuite":
        return cls([Check.from_dict(c) for c in d.get("checks", [])], d.get("config", {}))

    @classmethod
    def from_json(cls, text: str) -> "VerificationSuite":
        return cls.from_dict(json.loads(text))
