"""Request and response models.

Report is the one response envelope, shared by every endpoint and by
the CLI's --json mode; it mirrors munu.reports.REPORT_SCHEMA field for
field. Queries leave `holds` null; property checks set it, and a False
means the counterexample field says why.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    report_schema: Literal["munu.report/v1"] = Field(
        default="munu.report/v1", alias="schema")
    command: str
    holds: Optional[bool] = None
    principle: Optional[str] = None
    counterexample: Optional[str] = None
    checked_count: Optional[int] = None
    value: Any = None
    assumption_trace: Optional[list[str]] = None
    failure_pair: Optional[str] = None
    universe_depth: Optional[int] = None
    notion: Optional[Literal["literal", "family"]] = None
    seed: Optional[int] = None
    reports: Optional[list["Report"]] = None

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True)


class LatticeFunRequest(BaseModel):
    """A .lat source plus the name of one of its fun blocks."""
    model_config = ConfigDict(extra="forbid")
    source: str
    fun: str


class LatticeElementRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    source: str
    lattice: str
    x: str
    y: Optional[str] = None


class StructuralPairRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    left: str
    right: str
    defs: Optional[str] = None


class StructuralOracleRequest(StructuralPairRequest):
    oracle_depth: int = 4


class DenoteRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    type: str
    depth: int = 3
    truncated: bool = False
    defs: Optional[str] = None


class EndoRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    body: str
    hole: str = "X"
    depth: int = 3
    defs: Optional[str] = None


class TableRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    table: str
    depth: int = 1


class NomSubtypeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    table: str
    left: str
    right: str


class NomNameRequest(TableRequest):
    name: str


class NomClassifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    table: str
    name: str
    candidate: str


class NomNegationRequest(TableRequest):
    subject: str


class NomNegCheckRequest(TableRequest):
    neg: str
    pos: str
    base: str


class CheckRequest(BaseModel):
    """File contents keyed by (relative) name; extensions route them."""
    model_config = ConfigDict(extra="forbid")
    files: dict[str, str]
    seed: int = 0
    depth: int = 1
    oracle_depth: int = 4
