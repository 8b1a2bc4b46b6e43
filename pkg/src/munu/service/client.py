"""Dispatch a request either in process or to a running server.

The CLI goes through this module, so the same invocation produces the
same Report whether or not --server is given; only transport errors
differ. Remote 422s are re-raised as the original error class when it
is one of ours, keeping the CLI's exit-code mapping uniform.
"""

from __future__ import annotations

from pydantic import BaseModel

from ..errors import DslError, GuardExceeded, MunuError, OrderError, PreconditionError
from . import handlers
from .models import Report

ROUTES = {
    "/lattice/lfp": handlers.lat_lfp,
    "/lattice/gfp": handlers.lat_gfp,
    "/lattice/prefix": handlers.lat_prefix,
    "/lattice/postfix": handlers.lat_postfix,
    "/lattice/induction": handlers.lat_induction,
    "/lattice/coinduction": handlers.lat_coinduction,
    "/lattice/dual": handlers.lat_dual,
    "/lattice/neg": handlers.lat_neg,
    "/lattice/imp": handlers.lat_imp,
    "/structural/sub": handlers.st_sub,
    "/structural/eq": handlers.st_eq,
    "/structural/denote": handlers.st_denote,
    "/structural/oracle": handlers.st_oracle,
    "/structural/endo": handlers.st_endo,
    "/nominal/sub": handlers.nom_sub,
    "/nominal/free": handlers.nom_free,
    "/nominal/classify": handlers.nom_classify,
    "/nominal/family": handlers.nom_family,
    "/nominal/least-pre": handlers.nom_least_pre,
    "/nominal/covariance": handlers.nom_covariance,
    "/nominal/neg": handlers.nom_neg,
    "/nominal/negcheck": handlers.nom_negcheck,
    "/nominal/universe": handlers.nom_universe,
    "/nominal/export": handlers.nom_export,
    "/check/all": handlers.check_all,
}

_ERROR_CLASSES = {
    "DslError": DslError,
    "OrderError": OrderError,
    "PreconditionError": PreconditionError,
    "GuardExceeded": GuardExceeded,
}


def _raise_remote(detail) -> None:
    if isinstance(detail, dict) and detail.get("error") in _ERROR_CLASSES:
        cls = _ERROR_CLASSES[detail["error"]]
        if cls is DslError:
            raise DslError(detail.get("message", "remote error"),
                           detail.get("line", 1), detail.get("col", 1))
        raise cls(detail.get("message", "remote error"))
    raise MunuError(f"server rejected the request: {detail!r}")


def call(path: str, request: BaseModel, server: str | None = None) -> Report:
    if server is None:
        return ROUTES[path](request)
    import httpx

    resp = httpx.post(server.rstrip("/") + path,
                      json=request.model_dump(), timeout=60.0)
    if resp.status_code == 422:
        _raise_remote(resp.json().get("detail"))
    if resp.status_code != 200:
        raise MunuError(f"server returned {resp.status_code}: {resp.text[:200]}")
    return Report.model_validate(resp.json())
