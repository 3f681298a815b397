"""Shared operational layer for the CLI and the HTTP service.

Holds the named-construction resolver (so ``make`` on the command line
and session creation over HTTP accept exactly the same names), the
report-to-dict shims for the analysis probes, and an in-memory session
store.  A session wraps one evolving object -- an exchange matrix or a
bicolored graph -- together with the log of operations applied to it;
replaying that log against the session's seed always reproduces the
current object exactly, which is how ``undo`` is implemented.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Optional

from .analysis import ClassReport, SignCoherenceReport
from .constructions import (
    GluingSpec,
    core_by_name,
    d_universal_matrix,
    glue_universal,
    named_quiver,
)
from .drawing import PlanarQuiver, planar_universal
from .errors import (
    BadParameters,
    NotApplicable,
    SchemaError,
    UnknownName,
    UnknownSession,
)
from .matrix import ExchangeMatrix, MutationSequence
from .plabic import PlabicGraph, flip_move, square_move, universal_plabic
from .serialize import (
    detect_kind,
    dumps_canonical,
    matrix_from_obj,
    matrix_to_dot,
    matrix_to_obj,
    plabic_from_obj,
    plabic_to_dot,
    plabic_to_obj,
    planar_to_obj,
)
from .solver import VerificationResult

__all__ = [
    "build_object",
    "object_to_obj",
    "class_report_obj",
    "probe_report_obj",
    "coherence_report_obj",
    "contains_report_obj",
    "verification_obj",
    "SessionState",
    "SessionStore",
]


# --- named constructions -------------------------------------------------------

_FIXED_NAMES = ("extended_somos4", "double_four_cycle", "markov", "two_universal_3")

# name -> (required params, optional params)
_FAMILIES = {
    "grid": ({"k", "ell"}, set()),
    "kronecker": ({"m"}, set()),
    "universal": ({"n"}, {"core"}),
    "d_universal": ({"d"}, set()),
    "planar_universal": ({"n"}, set()),
    "universal_plabic": ({"n"}, set()),
}


def build_object(
    name: str,
    *,
    n: Optional[int] = None,
    k: Optional[int] = None,
    ell: Optional[int] = None,
    m: Optional[int] = None,
    d: Optional[list[int]] = None,
    core: Optional[str] = None,
) -> Any:
    """Build a named object: an :class:`ExchangeMatrix`, a
    :class:`PlanarQuiver` (``planar_universal``), or a
    :class:`PlabicGraph` (``universal_plabic``)."""
    given = {
        key
        for key, val in (
            ("n", n), ("k", k), ("ell", ell), ("m", m), ("d", d), ("core", core),
        )
        if val is not None
    }
    if name in _FIXED_NAMES:
        if given:
            raise BadParameters(
                f"construction {name!r} takes no parameters, got {sorted(given)}"
            )
        return named_quiver(name)
    if name not in _FAMILIES:
        raise UnknownName(f"unknown construction {name!r}")
    required, optional = _FAMILIES[name]
    if not (required <= given <= required | optional):
        raise BadParameters(
            f"construction {name!r} takes parameters {sorted(required)}"
            + (f" (optional: {sorted(optional)})" if optional else "")
            + f", got {sorted(given) or 'none'}"
        )
    if name == "grid":
        return named_quiver("grid", k=k, ell=ell)
    if name == "kronecker":
        return named_quiver("kronecker", m=m)
    if name == "universal":
        assert n is not None
        if n < 2:
            raise BadParameters("universal gluing needs n >= 2")
        return glue_universal(GluingSpec(core_by_name(core or "somos"), n))
    if name == "d_universal":
        assert d is not None
        return d_universal_matrix(d)
    if name == "planar_universal":
        assert n is not None
        return planar_universal(n)
    assert name == "universal_plabic" and n is not None
    return universal_plabic(n)


def object_to_obj(obj: Any) -> dict:
    """JSON form of any object :func:`build_object` can return."""
    if isinstance(obj, PlabicGraph):
        return plabic_to_obj(obj)
    if isinstance(obj, PlanarQuiver):
        return planar_to_obj(obj)
    if isinstance(obj, ExchangeMatrix):
        return matrix_to_obj(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --- analysis report shims ------------------------------------------------------

def class_report_obj(r: ClassReport) -> dict:
    return {
        "size": r.size,
        "exhausted": r.exhausted,
        "max_multiplicity": r.max_multiplicity,
        "depth_reached": r.depth_reached,
        "nodes_used": r.nodes_used,
        "edges_used": r.edges_used,
        "max_nodes": r.max_nodes,
        "max_depth": r.max_depth,
    }


def probe_report_obj(seq: Optional[MutationSequence]) -> dict:
    if seq is None:
        return {"found": False, "seq": None}
    return {"found": True, "seq": [k + 1 for k in seq.steps]}


def coherence_report_obj(r: SignCoherenceReport) -> dict:
    return {
        "trials": r.trials,
        "max_len": r.max_len,
        "seed": r.rng_seed,
        "states_checked": r.states_checked,
        "violations": [
            {
                "seq": [k + 1 for k in v.seq],
                "kind": v.kind,
                "detail": v.detail,
            }
            for v in r.violations
        ],
    }


def contains_report_obj(witness: Optional[tuple[int, ...]]) -> dict:
    if witness is None:
        return {"found": False, "indices": None}
    return {"found": True, "indices": [i + 1 for i in witness]}


def verification_obj(res: VerificationResult) -> dict:
    return {"ok": res.ok, "diff": list(res.diff)}


# --- sessions --------------------------------------------------------------------

@dataclass
class SessionState:
    """One evolving object plus the operation log that produced it.

    ``seed`` is the canonical JSON of the initial object; replaying
    ``ops`` against it must reproduce ``current`` exactly.
    """

    sid: str
    kind: str  # "matrix" | "plabic"
    seed: dict
    current: Any
    ops: list[dict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def view(self) -> dict:
        return {
            "session": self.sid,
            "kind": self.kind,
            "object": object_to_obj(self.current),
            "undo_depth": len(self.ops),
            "metadata": self.metadata,
        }


def _parse_session_object(obj: Any) -> tuple[str, Any]:
    kind = detect_kind(obj)
    if kind == "matrix":
        return kind, matrix_from_obj(obj)
    if kind == "plabic":
        return kind, plabic_from_obj(obj)
    raise SchemaError(
        "a session holds an exchange matrix or a bicolored graph, "
        f"not a {kind}"
    )


def _apply_op(kind: str, obj: Any, op: dict) -> Any:
    """Apply one logged operation; all indices in ``op`` are external
    (vertices and faces 1-based, half-edges as stored in JSON)."""
    name = op.get("op")
    if name == "mutate":
        if kind != "matrix":
            raise NotApplicable("mutation applies to matrix sessions only")
        vertex = op["vertex"]
        if not isinstance(vertex, int) or isinstance(vertex, bool):
            raise SchemaError("mutation vertex must be an integer")
        return obj.mutate(vertex - 1)
    if name == "move":
        if kind != "plabic":
            raise NotApplicable("moves apply to bicolored-graph sessions only")
        move, location = op.get("move"), op.get("location")
        if not isinstance(location, int) or isinstance(location, bool):
            raise SchemaError("move location must be an integer")
        if move == "square":
            return square_move(obj, location - 1)
        if move == "flip":
            return flip_move(obj, location)
        raise SchemaError(f"unknown move {move!r}; use 'square' or 'flip'")
    raise SchemaError(f"unknown operation {name!r}")


class SessionStore:
    """Thread-safe in-memory map of independent, single-writer sessions."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._sessions: dict[str, SessionState] = {}

    # -- lifecycle --------------------------------------------------------------

    def create(
        self,
        obj: Optional[dict] = None,
        construction: Optional[str] = None,
        params: Optional[dict] = None,
    ) -> SessionState:
        if (obj is None) == (construction is None):
            raise SchemaError(
                "provide exactly one of 'object' and 'construction'"
            )
        if obj is not None:
            kind, current = _parse_session_object(obj)
            metadata = {"source": "json"}
        else:
            allowed = {"n", "k", "ell", "m", "d", "core"}
            params = dict(params or {})
            unknown = set(params) - allowed
            if unknown:
                raise SchemaError(f"unknown construction parameters {sorted(unknown)}")
            built = build_object(construction, **params)
            if isinstance(built, PlanarQuiver):
                raise NotApplicable(
                    "a session holds an exchange matrix or a bicolored graph; "
                    f"{construction!r} builds a planar drawing -- create the "
                    "session from its matrix instead"
                )
            kind = "plabic" if isinstance(built, PlabicGraph) else "matrix"
            current = built
            metadata = {"source": f"construction:{construction}", "params": params}
        state = SessionState(
            sid=uuid.uuid4().hex[:12],
            kind=kind,
            seed=object_to_obj(current),
            current=current,
        )
        state.metadata = metadata
        with self._lock:
            self._sessions[state.sid] = state
        return state

    def get(self, sid: str) -> SessionState:
        with self._lock:
            state = self._sessions.get(sid)
        if state is None:
            raise UnknownSession(sid)
        return state

    def delete(self, sid: str) -> None:
        with self._lock:
            if self._sessions.pop(sid, None) is None:
                raise UnknownSession(sid)

    # -- operations -------------------------------------------------------------

    def apply(self, sid: str, op: dict) -> SessionState:
        state = self.get(sid)
        with state.lock:
            state.current = _apply_op(state.kind, state.current, op)
            state.ops.append(op)
        return state

    def undo(self, sid: str) -> SessionState:
        state = self.get(sid)
        with state.lock:
            if not state.ops:
                raise NotApplicable("nothing to undo")
            state.ops.pop()
            state.current = self._replay(state)
        return state

    def _replay(self, state: SessionState) -> Any:
        _, current = _parse_session_object(state.seed)
        for op in state.ops:
            current = _apply_op(state.kind, current, op)
        return current

    def check_replay(self, sid: str) -> bool:
        """Replay invariant: the op log applied to the seed reproduces the
        current object byte for byte."""
        state = self.get(sid)
        with state.lock:
            replayed = self._replay(state)
            return dumps_canonical(object_to_obj(replayed)) == dumps_canonical(
                object_to_obj(state.current)
            )

    def export(self, sid: str, fmt: str) -> str:
        state = self.get(sid)
        with state.lock:
            if fmt == "json":
                return dumps_canonical(object_to_obj(state.current))
            if fmt == "dot":
                if state.kind == "plabic":
                    return plabic_to_dot(state.current)
                return matrix_to_dot(state.current)
        raise SchemaError(f"unknown export format {fmt!r}; use 'json' or 'dot'")
