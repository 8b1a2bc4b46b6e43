"""FastAPI wrapper around the handlers.

Domain errors surface as 422 with a structured detail (error class,
message, line/col when the source position is known); everything else
is a plain 500. Handlers are synchronous and stateless, so the app
needs no startup hooks.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..errors import DslError, MunuError
from ..reports import REPORT_SCHEMA
from . import handlers
from .models import (
    CheckRequest,
    DenoteRequest,
    EndoRequest,
    LatticeElementRequest,
    LatticeFunRequest,
    NomClassifyRequest,
    NomNameRequest,
    NomNegCheckRequest,
    NomNegationRequest,
    NomSubtypeRequest,
    Report,
    StructuralOracleRequest,
    StructuralPairRequest,
    TableRequest,
)


def _detail(exc: MunuError) -> dict:
    detail = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, DslError):
        detail["line"] = exc.line
        detail["col"] = exc.col
    return detail


def _guarded(fn, req) -> Report:
    try:
        return fn(req)
    except MunuError as exc:
        raise HTTPException(status_code=422, detail=_detail(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(title="munu", description="fixed points, lattices and "
                  "two subtyping engines behind one report envelope")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/schema")
    def schema() -> dict:
        return REPORT_SCHEMA

    @app.post("/lattice/lfp", response_model=Report)
    def lattice_lfp(req: LatticeFunRequest) -> Report:
        return _guarded(handlers.lat_lfp, req)

    @app.post("/lattice/gfp", response_model=Report)
    def lattice_gfp(req: LatticeFunRequest) -> Report:
        return _guarded(handlers.lat_gfp, req)

    @app.post("/lattice/prefix", response_model=Report)
    def lattice_prefix(req: LatticeFunRequest) -> Report:
        return _guarded(handlers.lat_prefix, req)

    @app.post("/lattice/postfix", response_model=Report)
    def lattice_postfix(req: LatticeFunRequest) -> Report:
        return _guarded(handlers.lat_postfix, req)

    @app.post("/lattice/induction", response_model=Report)
    def lattice_induction(req: LatticeFunRequest) -> Report:
        return _guarded(handlers.lat_induction, req)

    @app.post("/lattice/coinduction", response_model=Report)
    def lattice_coinduction(req: LatticeFunRequest) -> Report:
        return _guarded(handlers.lat_coinduction, req)

    @app.post("/lattice/dual", response_model=Report)
    def lattice_dual(req: LatticeFunRequest) -> Report:
        return _guarded(handlers.lat_dual, req)

    @app.post("/lattice/neg", response_model=Report)
    def lattice_neg(req: LatticeElementRequest) -> Report:
        return _guarded(handlers.lat_neg, req)

    @app.post("/lattice/imp", response_model=Report)
    def lattice_imp(req: LatticeElementRequest) -> Report:
        return _guarded(handlers.lat_imp, req)

    @app.post("/structural/sub", response_model=Report)
    def structural_sub(req: StructuralPairRequest) -> Report:
        return _guarded(handlers.st_sub, req)

    @app.post("/structural/eq", response_model=Report)
    def structural_eq(req: StructuralPairRequest) -> Report:
        return _guarded(handlers.st_eq, req)

    @app.post("/structural/denote", response_model=Report)
    def structural_denote(req: DenoteRequest) -> Report:
        return _guarded(handlers.st_denote, req)

    @app.post("/structural/oracle", response_model=Report)
    def structural_oracle(req: StructuralOracleRequest) -> Report:
        return _guarded(handlers.st_oracle, req)

    @app.post("/structural/endo", response_model=Report)
    def structural_endo(req: EndoRequest) -> Report:
        return _guarded(handlers.st_endo, req)

    @app.post("/nominal/sub", response_model=Report)
    def nominal_sub(req: NomSubtypeRequest) -> Report:
        return _guarded(handlers.nom_sub, req)

    @app.post("/nominal/free", response_model=Report)
    def nominal_free(req: NomNameRequest) -> Report:
        return _guarded(handlers.nom_free, req)

    @app.post("/nominal/classify", response_model=Report)
    def nominal_classify(req: NomClassifyRequest) -> Report:
        return _guarded(handlers.nom_classify, req)

    @app.post("/nominal/family", response_model=Report)
    def nominal_family(req: NomNameRequest) -> Report:
        return _guarded(handlers.nom_family, req)

    @app.post("/nominal/least-pre", response_model=Report)
    def nominal_least_pre(req: NomNameRequest) -> Report:
        return _guarded(handlers.nom_least_pre, req)

    @app.post("/nominal/covariance", response_model=Report)
    def nominal_covariance(req: NomNameRequest) -> Report:
        return _guarded(handlers.nom_covariance, req)

    @app.post("/nominal/neg", response_model=Report)
    def nominal_neg(req: NomNegationRequest) -> Report:
        return _guarded(handlers.nom_neg, req)

    @app.post("/nominal/negcheck", response_model=Report)
    def nominal_negcheck(req: NomNegCheckRequest) -> Report:
        return _guarded(handlers.nom_negcheck, req)

    @app.post("/nominal/universe", response_model=Report)
    def nominal_universe(req: TableRequest) -> Report:
        return _guarded(handlers.nom_universe, req)

    @app.post("/nominal/export", response_model=Report)
    def nominal_export(req: TableRequest) -> Report:
        return _guarded(handlers.nom_export, req)

    @app.post("/check/all", response_model=Report)
    def check_all(req: CheckRequest) -> Report:
        return _guarded(handlers.check_all, req)

    return app


app = create_app()
