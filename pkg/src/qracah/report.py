"""Structured results of identity checks and their serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

SCHEMA_VERSION = 1


def serialize_value(x):
    """Canonical JSON-friendly form: exact rationals as "num/den" strings."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, complex):
        return repr(x)
    if isinstance(x, (list, tuple)):
        return [serialize_value(v) for v in x]
    return x


def residual_string(res) -> str:
    """Residuals as decimal-style strings; exact zeros as the literal "0"."""
    if res == 0:
        return "0"
    if isinstance(res, Fraction):
        return f"{res.numerator}/{res.denominator}"
    return repr(res)


@dataclass
class CheckReport:
    """One verified parameter point of one identity."""

    suite: str
    check: str
    params: dict
    residual: str
    passed: bool
    backend: str
    elapsed_ms: float
    error: str = ""

    def to_json(self) -> str:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "check": self.check,
            "params": {k: serialize_value(v) for k, v in self.params.items()},
            "residual": self.residual,
            "pass": self.passed,
            "backend": self.backend,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.error:
            payload["error"] = self.error
        return json.dumps(payload, separators=(",", ":"))
