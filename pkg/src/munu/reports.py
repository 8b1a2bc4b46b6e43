"""Uniform result records.

Every check in the package reports through PrincipleReport: the name of
the principle checked, whether it held, a rendered counterexample when
it did not, and how many candidates were examined. `holds` is true
exactly when `counterexample` is None.

REPORT_SCHEMA is the single JSON schema that every CLI/service report
envelope validates against (see munu.service.models.Report).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class PrincipleReport:
    principle: str
    holds: bool
    counterexample: str | None
    checked_count: int

    def __post_init__(self):
        assert self.holds == (self.counterexample is None)

    def to_json(self) -> dict[str, Any]:
        return {
            "principle": self.principle,
            "holds": self.holds,
            "counterexample": self.counterexample,
            "checked_count": self.checked_count,
        }


# Schema for the envelope emitted by the service and by `munu --json`.
# One schema covers every command; fields that do not apply are null.
REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "munu.report/v1",
    "$defs": {
        "report": {
            "type": "object",
            "properties": {
                "schema": {"const": "munu.report/v1"},
                "command": {"type": "string"},
                "holds": {"type": ["boolean", "null"]},
                "principle": {"type": ["string", "null"]},
                "counterexample": {"type": ["string", "null"]},
                "checked_count": {"type": ["integer", "null"]},
                "value": {},
                "assumption_trace": {
                    "type": ["array", "null"],
                    "items": {"type": "string"},
                },
                "failure_pair": {"type": ["string", "null"]},
                "universe_depth": {"type": ["integer", "null"]},
                "notion": {"enum": ["literal", "family", None]},
                "seed": {"type": ["integer", "null"]},
                "reports": {
                    "type": ["array", "null"],
                    "items": {"$ref": "#/$defs/report"},
                },
            },
            "required": ["schema", "command", "holds"],
            "additionalProperties": False,
        }
    },
    "$ref": "#/$defs/report",
}
