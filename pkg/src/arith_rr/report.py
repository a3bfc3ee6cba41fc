"""Report records shared by the CLI and the acceptance suite."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

from . import __version__

__all__ = ["Report", "numeric_check"]


def numeric_check(name: str, value: str, reference: str, error: float, tolerance: float, **extra) -> Dict[str, Any]:
    rec = {
        "check": name,
        "value": value,
        "reference": reference,
        "error": f"{error:.3e}",
        "tolerance": f"{tolerance:.1e}",
        "passed": bool(error < tolerance),
    }
    rec.update(extra)
    return rec


def _record_ok(rec: Dict[str, Any]) -> bool:
    if "equal" in rec:
        return bool(rec["equal"])
    if "passed" in rec:
        return bool(rec["passed"])
    return True


@dataclass
class Report:
    command: str
    parameters: Dict[str, Any]
    results: List[Dict[str, Any]] = field(default_factory=list)
    tool_version: str = __version__
    overall_status: str = ""

    def __post_init__(self):
        if not self.overall_status:
            self.overall_status = "pass" if all(_record_ok(r) for r in self.results) else "fail"

    @property
    def passed(self) -> bool:
        return self.overall_status == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "Report":
        return cls(
            command=doc["command"],
            parameters=dict(doc["parameters"]),
            results=[dict(r) for r in doc["results"]],
            tool_version=doc["tool_version"],
            overall_status=doc["overall_status"],
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        lines = [f"arith-rr {self.tool_version}: {self.command} {params}".rstrip()]
        for rec in self.results:
            status = "PASS" if _record_ok(rec) else "FAIL"
            if "statement_id" in rec:
                key = next(k for k in rec if k not in (
                    "statement_id", "pipeline_value", "closed_form_value", "equal", "residual"))
                lines.append(f"{status} {rec['statement_id']} {key}={rec[key]} residual={rec['residual']}")
                lines.append(f"     value: {rec['pipeline_value']}")
            elif "check" in rec:
                lines.append(f"{status} {rec['check']} value={rec['value']} error={rec['error']} "
                             f"tol={rec['tolerance']}")
            else:
                lines.append("     " + " ".join(f"{k}={v}" for k, v in rec.items()))
        lines.append(f"overall: {self.overall_status}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()
