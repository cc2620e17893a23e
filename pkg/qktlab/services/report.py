# Author: RD7
# Purpose: Check records and the JSON verification report
# Created: 2025-10-11

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

__all__ = ["Check", "Report", "compare"]


@dataclass(frozen=True)
class Check:
    """
    One identity evaluated on a model.

    For tensor identities lhs and rhs are the entries where the two sides
    differ the most.
    """

    id: str
    description: str
    ref: str
    lhs: float
    rhs: float
    abs_err: float
    passed: bool


@dataclass
class Report:
    model: str
    suite: str
    tol: float
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def references(self) -> dict[str, str]:
        return {c.id: c.ref for c in self.checks}

    def extend(self, checks: list[Check]) -> None:
        """Append checks; an id keeps the one non-empty ref it was first reported with."""
        refs = self.references()
        for check in checks:
            if not check.ref:
                raise ValueError(f"check {check.id} has no ref")
            if refs.setdefault(check.id, check.ref) != check.ref:
                raise ValueError(f"check {check.id} reported with refs {refs[check.id]!r} and {check.ref!r}")
        self.checks.extend(checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "suite": self.suite,
            "tol": self.tol,
            "passed": self.passed,
            "wall_time": self.wall_time,
            "notes": list(self.notes),
            "checks": [asdict(c) for c in sorted(self.checks, key=lambda c: c.id)],
        }

    def to_json(self) -> str:
        """
        Sorted, indented JSON. Floats use repr, the shortest string that
        round-trips a double (never more than 17 significant digits).
        """
        return json.dumps(_finite_or_none(self.to_dict()), indent=2, allow_nan=False)

    def write(self, path: str | Path) -> Path:
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(self.to_json() + "\n", encoding="utf-8")
        return out


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def compare(id: str, description: str, ref: str, lhs, rhs, tol: float) -> Check:
    """Build a Check from two scalars or two equally shaped arrays."""
    lhs = np.asarray(lhs, dtype=np.float64)
    rhs = np.asarray(rhs, dtype=np.float64)
    diff = np.abs(lhs - rhs)
    if diff.size == 0:
        return Check(id, description, ref, 0.0, 0.0, 0.0, True)

    worst = int(np.argmax(diff))
    lhs_val = float(np.broadcast_to(lhs, diff.shape).flat[worst])
    rhs_val = float(np.broadcast_to(rhs, diff.shape).flat[worst])
    err = float(diff.flat[worst])
    return Check(id, description, ref, lhs_val, rhs_val, err, bool(err < tol))


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
def _finite_or_none(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite_or_none(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    return obj
