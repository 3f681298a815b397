"""Stateless-JSON HTTP facade over the core modules.

Sessions are held in memory by a :class:`~quiverlab.session.SessionStore`;
every session response carries the full current object, so clients never
need to mirror mutation arithmetic.  The ``/analysis`` routes are pure
functions of their request bodies.  Domain errors surface as HTTP 400
with the module error embedded; unknown sessions as 404.
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .analysis import (
    check_sign_coherence,
    find_full_subquiver,
    mutation_class_bfs,
    probe_two_universal,
)
from .errors import QuiverLabError, UnknownSession
from .serialize import certificate_from_obj, certificate_to_obj, matrix_from_obj
from .session import (
    SessionStore,
    class_report_obj,
    coherence_report_obj,
    contains_report_obj,
    probe_report_obj,
    verification_obj,
)
from .solver import embed_matrix, embed_quiver, verify_certificate

__all__ = ["create_app", "app"]


class CreateSessionBody(BaseModel):
    object: Optional[dict] = None
    construction: Optional[str] = None
    params: dict = Field(default_factory=dict)


class MutateBody(BaseModel):
    vertex: int


class MoveBody(BaseModel):
    move: str
    location: int


class ClassBody(BaseModel):
    object: dict
    max_nodes: int = 10000
    max_depth: Optional[int] = None


class ProbeBody(BaseModel):
    object: dict
    target_mult: int = 3
    max_depth: int = 6
    max_nodes: Optional[int] = None


class CoherenceBody(BaseModel):
    object: dict
    trials: int = 100
    max_len: int = 10
    seed: int = 0


class ContainsBody(BaseModel):
    needle: dict
    haystack: dict


class EmbedBody(BaseModel):
    target: dict
    core: str = "somos"
    symmetrizer: Optional[list[int]] = None


class VerifyBody(BaseModel):
    certificate: dict


def create_app(store: Optional[SessionStore] = None) -> FastAPI:
    app = FastAPI(title="quiverlab", docs_url=None, redoc_url=None)
    # the explorer page is served statically from another port
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = store if store is not None else SessionStore()

    @app.exception_handler(QuiverLabError)
    async def _domain_error(_: Request, exc: QuiverLabError) -> JSONResponse:
        status = 404 if isinstance(exc, UnknownSession) else 400
        return JSONResponse(status_code=status, content={"error": exc.payload()})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    # -- sessions ----------------------------------------------------------------

    @app.post("/sessions")
    def create_session(body: CreateSessionBody) -> dict:
        state = sessions.create(
            obj=body.object, construction=body.construction, params=body.params
        )
        return state.view()

    @app.get("/sessions/{sid}")
    def get_session(sid: str) -> dict:
        return sessions.get(sid).view()

    @app.post("/sessions/{sid}/mutate")
    def apply_mutation(sid: str, body: MutateBody) -> dict:
        return sessions.apply(sid, {"op": "mutate", "vertex": body.vertex}).view()

    @app.post("/sessions/{sid}/move")
    def apply_move(sid: str, body: MoveBody) -> dict:
        op = {"op": "move", "move": body.move, "location": body.location}
        return sessions.apply(sid, op).view()

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str) -> dict:
        return sessions.undo(sid).view()

    @app.get("/sessions/{sid}/export")
    def export(sid: str, format: str = "json") -> dict:
        return {"format": format, "content": sessions.export(sid, format)}

    @app.delete("/sessions/{sid}")
    def delete_session(sid: str) -> dict:
        sessions.delete(sid)
        return {"deleted": sid}

    # -- stateless analysis --------------------------------------------------------

    @app.post("/analysis/class")
    def analysis_class(body: ClassBody) -> dict:
        m = matrix_from_obj(body.object)
        depth = body.max_depth if body.max_depth is not None else body.max_nodes
        return class_report_obj(mutation_class_bfs(m, (body.max_nodes, depth)))

    @app.post("/analysis/probe2")
    def analysis_probe2(body: ProbeBody) -> dict:
        m = matrix_from_obj(body.object)
        seq = probe_two_universal(
            m, body.max_depth, body.target_mult, max_nodes=body.max_nodes
        )
        return probe_report_obj(seq)

    @app.post("/analysis/sign-coherence")
    def analysis_sign_coherence(body: CoherenceBody) -> dict:
        m = matrix_from_obj(body.object)
        report = check_sign_coherence(m, body.trials, body.max_len, body.seed)
        return coherence_report_obj(report)

    @app.post("/analysis/contains")
    def analysis_contains(body: ContainsBody) -> dict:
        needle = matrix_from_obj(body.needle)
        haystack = matrix_from_obj(body.haystack)
        return contains_report_obj(find_full_subquiver(haystack, needle))

    @app.post("/analysis/embed")
    def analysis_embed(body: EmbedBody) -> dict:
        target = matrix_from_obj(body.target)
        if body.symmetrizer is not None:
            cert = embed_matrix(target, body.symmetrizer)
        else:
            cert = embed_quiver(target, core=body.core)
        return certificate_to_obj(cert)

    @app.post("/analysis/verify")
    def analysis_verify(body: VerifyBody) -> dict:
        cert = certificate_from_obj(body.certificate)
        return verification_obj(verify_certificate(cert))

    return app


app = create_app()
