"""Check records and the versioned JSON report."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__

SCHEMA_VERSION = 1

PASS, FAIL, WARNING = "pass", "fail", "warning"


@dataclass
class CheckResult:
    """Outcome of one verification.  Truthy iff the check passed."""

    name: str
    status: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    message: str = ""
    timing_ms: float = 0.0

    def __bool__(self):
        return self.status == PASS

    @property
    def passed(self):
        return self.status == PASS

    def to_json(self):
        out = {"name": self.name, "status": self.status, "witnesses": self.witnesses}
        if self.message:
            out["message"] = self.message
        if self.details:
            out["details"] = self.details
        out["timing_ms"] = round(self.timing_ms, 3)
        return out


def result(name, ok, witnesses=(), details=None, message=""):
    return CheckResult(name, PASS if ok else FAIL, list(witnesses), dict(details or {}), message)


@dataclass
class Report:
    command: str
    spec_text: str
    checks: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)

    def add(self, check):
        self.checks.append(check)
        return check

    @property
    def spec_hash(self):
        return hashlib.sha256(self.spec_text.encode("utf-8")).hexdigest()

    @property
    def ok(self):
        return all(c.status != FAIL for c in self.checks)

    def exit_code(self):
        return 0 if self.ok else 1

    def to_json(self):
        return {
            "schema": SCHEMA_VERSION,
            "tool": {"name": "twistfrt", "version": __version__},
            "spec_hash": self.spec_hash,
            "command": self.command,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
            "outputs": self.outputs,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def text(self):
        lines = [f"# {self.command}  (spec {self.spec_hash[:12]})"]
        for key, value in self.outputs.items():
            if isinstance(value, list) and all(isinstance(v, (int, float)) for v in value):
                lines.append(f"{key}: {', '.join(map(str, value))}")
            elif isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  {v}" for v in value)
            elif isinstance(value, dict):
                lines.append(f"{key}:")
                lines.extend(f"  {k}: {v}" for k, v in value.items())
            else:
                lines.append(f"{key}: {value}")
        for c in sorted(self.checks, key=lambda c: c.name):
            line = f"[{c.status.upper():7}] {c.name}"
            if c.message:
                line += f"  -- {c.message}"
            lines.append(line)
            for w in c.witnesses[:8]:
                lines.append(f"          witness: {json.dumps(w, ensure_ascii=False, sort_keys=True)}")
            if len(c.witnesses) > 8:
                lines.append(f"          ... {len(c.witnesses) - 8} more")
        return "\n".join(lines) + "\n"


def strip_timing(payload):
    """Copy of a report payload without timing fields (for determinism diffs)."""
    payload = json.loads(json.dumps(payload))
    for c in payload.get("checks", []):
        c.pop("timing_ms", None)
    return payload
