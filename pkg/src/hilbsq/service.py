"""FastAPI service wrapping the report builders.

Run with ``uvicorn hilbsq.service:app``.  Every endpoint is a pure
function of its request body, so the service is safe to scale out; the
CLI produces the same reports in-process or through ``--server``.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException

from . import __version__, k3pic, reports, zlattice as zl
from .schemas import (
    BcnsRequest,
    BeauvilleRequest,
    FamilyRequest,
    HealthModel,
    LatticeInfoRequest,
    PellRequest,
    ReportModel,
    Theorem2Request,
    VerifyAllRequest,
)

app = FastAPI(
    title="hilbsq",
    version=__version__,
    description=(
        "Exact-arithmetic reports on Pell equations, integral quadratic "
        "lattices and involutions of Hilbert squares of K3 surfaces."
    ),
)


def _report(builder, *args, **kwargs) -> ReportModel:
    try:
        report = builder(*args, **kwargs)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return ReportModel(**report.to_dict())


def _env_coeff_bound() -> int:
    env = os.environ.get("HILBSQ_COEFF_BOUND")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise HTTPException(
                status_code=500,
                detail=f"HILBSQ_COEFF_BOUND must be an integer: {env!r}",
            ) from exc
    return k3pic.DEFAULT_COEFF_BOUND


@app.get("/healthz", response_model=HealthModel)
def healthz() -> HealthModel:
    return HealthModel(status="ok", version=__version__)


@app.post("/pell", response_model=ReportModel)
def pell_endpoint(request: PellRequest) -> ReportModel:
    return _report(reports.pell_report, request.d, request.m)


@app.post("/bcns", response_model=ReportModel)
def bcns_endpoint(request: BcnsRequest) -> ReportModel:
    return _report(reports.bcns_report, request.t)


@app.post("/family", response_model=ReportModel)
def family_endpoint(request: FamilyRequest) -> ReportModel:
    return _report(reports.family_report, request.family, request.bound)


@app.post("/beauville", response_model=ReportModel)
def beauville_endpoint(request: BeauvilleRequest) -> ReportModel:
    return _report(reports.beauville_report, request.n)


@app.post("/theorem2", response_model=ReportModel)
def theorem2_endpoint(request: Theorem2Request) -> ReportModel:
    return _report(reports.theorem2_report, request.n)


@app.post("/lattice-info", response_model=ReportModel)
def lattice_info_endpoint(request: LatticeInfoRequest) -> ReportModel:
    if (request.name is None) == (request.gram is None):
        raise HTTPException(
            status_code=422, detail="provide exactly one of 'name' or 'gram'"
        )
    if request.name is not None:
        return _report(reports.lattice_info_report, request.name)

    def _from_gram() -> reports.Report:
        return reports.lattice_info_from(zl.make_lattice(request.gram), "<inline gram>")

    return _report(_from_gram)


@app.post("/verify-all", response_model=ReportModel)
def verify_all_endpoint(request: VerifyAllRequest) -> ReportModel:
    bound = request.coeff_bound if request.coeff_bound is not None else _env_coeff_bound()
    return _report(
        reports.verify_all_report,
        n_max=request.n_max,
        k_max=request.k_max,
        sn_max=request.sn_max,
        seed=request.seed,
        coeff_bound=bound,
    )
