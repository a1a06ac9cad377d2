"""FastAPI application exposing every workbench operation as POST /v1/<op>.

Responses are CommandResult envelopes; domain failures come back as HTTP 400
with status "error" and the originating message in diagnostics, while
malformed requests get FastAPI's usual 422.
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import models
from .handlers import CommandResult, handle

API_PREFIX = "/v1"


def _respond(result: CommandResult) -> JSONResponse:
    return JSONResponse(
        status_code=200 if result.ok else 400, content=result.as_dict()
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="freelattice service",
        description="Free Banach lattice workbench over HTTP",
        version="0.1.0",
    )

    @app.get(f"{API_PREFIX}/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.post(f"{API_PREFIX}/canon")
    async def canon(request: models.CanonRequest) -> JSONResponse:
        return _respond(handle("canon", request.model_dump()))

    @app.post(f"{API_PREFIX}/eval")
    async def eval_expr(request: models.EvalRequest) -> JSONResponse:
        return _respond(handle("eval", request.model_dump()))

    @app.post(f"{API_PREFIX}/equal")
    async def equal(request: models.EqualRequest) -> JSONResponse:
        return _respond(handle("equal", request.model_dump()))

    @app.post(f"{API_PREFIX}/norm")
    async def norm(request: models.NormRequest) -> JSONResponse:
        return _respond(handle("norm", request.model_dump()))

    @app.post(f"{API_PREFIX}/dual-norm")
    async def dual_norm(request: models.DualNormRequest) -> JSONResponse:
        return _respond(handle("dual-norm", request.model_dump()))

    @app.post(f"{API_PREFIX}/quotient-norm")
    async def quotient_norm(request: models.QuotientNormRequest) -> JSONResponse:
        return _respond(handle("quotient-norm", request.model_dump()))

    @app.post(f"{API_PREFIX}/project")
    async def project(request: models.ProjectRequest) -> JSONResponse:
        return _respond(handle("project", request.model_dump()))

    @app.post(f"{API_PREFIX}/lift-disjoint")
    async def lift_disjoint(request: models.LiftDisjointRequest) -> JSONResponse:
        return _respond(handle("lift-disjoint", request.model_dump()))

    @app.post(f"{API_PREFIX}/lift-families")
    async def lift_families(request: models.LiftFamiliesRequest) -> JSONResponse:
        return _respond(handle("lift-families", request.model_dump()))

    @app.post(f"{API_PREFIX}/projlift")
    async def projlift(request: models.ProjliftRequest) -> JSONResponse:
        return _respond(handle("projlift", request.model_dump()))

    @app.post(f"{API_PREFIX}/symnorm")
    async def symnorm(request: models.SymnormRequest) -> JSONResponse:
        return _respond(handle("symnorm", request.model_dump()))

    return app


app = create_app()
