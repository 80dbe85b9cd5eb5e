"""Check reports with witnesses."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .exactlin import Field, LinMap, NotInSubspace, Q
from .tensor import NotInCotensorDomain


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


class CheckReport:
    """An ordered list of named checks; ``passed`` iff the witness is empty."""

    def __init__(self, checks: Iterable[Check] = (), info: dict | None = None):
        self.checks: list = list(checks)
        self.info: dict = dict(info or {})

    def add(self, name: str, passed: bool, witness: dict | None = None) -> bool:
        witness = {} if passed else (witness or {"detail": "failed"})
        self.checks.append(Check(name, passed, witness))
        return passed

    def add_parts(self, name: str, parts: Iterable[Callable[[], dict | None]]) -> bool:
        """Run witness-producing thunks in order; the first witness fails the check."""
        for part in parts:
            w = part()
            if w:
                return self.add(name, False, w)
        return self.add(name, True)

    def merge(self, other: CheckReport, prefix: str = "") -> CheckReport:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(c.name == name for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    @property
    def names(self) -> list:
        return [c.name for c in self.checks]

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def verdicts(self) -> dict:
        return {c.name: c.passed for c in self.checks}

    def to_json(self) -> dict:
        out = {"passed": self.ok, "checks": [c.to_json() for c in self.checks]}
        if self.info:
            out["info"] = self.info
        return out

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"CHECK {c.name}: {'PASS' if c.passed else 'FAIL'}"
            if not c.passed:
                line += " " + json.dumps(c.witness, sort_keys=True)
            lines.append(line)
        for k, v in self.info.items():
            lines.append(f"INFO {k}: {v}")
        return "\n".join(lines)

    def __repr__(self):
        return f"CheckReport({len(self.checks)} checks, ok={self.ok})"


def fmt_vec(v: dict, F: Field = Q) -> dict:
    """JSON-friendly sparse vector; tuple keys become comma-joined strings."""
    out = {}
    for k in sorted(v):
        key = ",".join(map(str, k)) if isinstance(k, tuple) else str(k)
        out[key] = F.format(v[k])
    return out


def equation(items, lhs, rhs, F: Field = Q, part: str | None = None) -> dict | None:
    """Compare ``lhs(arg)`` and ``rhs(arg)`` over labelled arguments.

    Returns a witness for the first mismatch (or the first out-of-domain
    evaluation), else ``None``.
    """
    for label, arg in items:
        try:
            a = lhs(arg)
            b = rhs(arg)
        except (NotInCotensorDomain, NotInSubspace) as e:
            w = {"basis": label, "error": type(e).__name__, "detail": str(e)}
            if part:
                w["part"] = part
            return w
        if a != b:
            w = {"basis": label, "lhs": fmt_vec(a, F), "rhs": fmt_vec(b, F)}
            if part:
                w["part"] = part
            return w
    return None


def maps_differ(A: LinMap, B: LinMap, part: str | None = None) -> dict | None:
    """Witness for the first column where two maps differ."""
    if (A.rows, A.cols) != (B.rows, B.cols):
        return {"detail": f"shape {A.rows}x{A.cols} vs {B.rows}x{B.cols}", **({"part": part} if part else {})}
    for j, (a, b) in enumerate(zip(A.columns, B.columns)):
        if a != b:
            w = {"basis": j, "lhs": fmt_vec(a, A.field), "rhs": fmt_vec(b, A.field)}
            if part:
                w["part"] = part
            return w
    return None
