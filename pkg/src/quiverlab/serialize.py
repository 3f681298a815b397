"""JSON and DOT serialization for exchange matrices, embedded quivers,
bicolored graphs, and embedding certificates.

All user-facing JSON carries ``"schema": "quiverlab/1"`` and 1-based
vertex indices; half-edge ids (rotation systems) stay 0-based because
they index plain arrays.  ``dumps_canonical`` fixes key order and
spacing so identical objects always serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .drawing import PlanarQuiver
from .errors import SchemaError
from .matrix import ExchangeMatrix, MutationSequence, new_matrix
from .plabic import PlabicGraph
from .solver import EmbeddingCertificate

__all__ = [
    "SCHEMA",
    "dumps_canonical",
    "matrix_to_obj",
    "matrix_from_obj",
    "planar_to_obj",
    "planar_from_obj",
    "plabic_to_obj",
    "plabic_from_obj",
    "certificate_to_obj",
    "certificate_from_obj",
    "matrix_to_dot",
    "plabic_to_dot",
    "loads",
    "detect_kind",
]

SCHEMA = "quiverlab/1"


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def _int_list(value: Any, what: str) -> list[int]:
    _require(isinstance(value, list), f"{what} must be a list")
    out = []
    for x in value:
        _require(isinstance(x, int) and not isinstance(x, bool),
                 f"{what} must contain integers")
        out.append(x)
    return out


def _check_schema(obj: Any) -> dict:
    _require(isinstance(obj, dict), "top-level JSON value must be an object")
    _require(obj.get("schema") == SCHEMA,
             f'missing or unsupported "schema" (expected "{SCHEMA}")')
    return obj


# --- exchange matrices -----------------------------------------------------------


def matrix_to_obj(m: ExchangeMatrix) -> dict:
    obj: dict[str, Any] = {
        "schema": SCHEMA,
        "n": m.n,
        "b": [list(row) for row in m.b],
        "frozen": sorted(i + 1 for i in m.frozen),
    }
    if m.labels is not None:
        obj["labels"] = list(m.labels)
    return obj


def matrix_from_obj(obj: Any) -> ExchangeMatrix:
    obj = _check_schema(obj)
    n = obj.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1,
             '"n" must be a positive integer')
    b = obj.get("b")
    _require(isinstance(b, list) and len(b) == n, '"b" must be an n-row list')
    rows = [_int_list(row, '"b" rows') for row in b]
    for row in rows:
        _require(len(row) == n, '"b" must be an n-by-n table')
    frozen_raw = _int_list(obj.get("frozen", []), '"frozen"')
    for k in frozen_raw:
        _require(1 <= k <= n, f'"frozen" index {k} out of range 1..{n}')
    labels: Optional[list[str]] = None
    if "labels" in obj:
        raw = obj["labels"]
        _require(isinstance(raw, list) and len(raw) == n
                 and all(isinstance(s, str) for s in raw),
                 '"labels" must be a list of n strings')
        labels = list(raw)
    return new_matrix(
        n, rows, frozen=[k - 1 for k in frozen_raw], labels=labels
    )


# --- embedded planar quivers -----------------------------------------------------


def planar_to_obj(pq: PlanarQuiver) -> dict:
    obj = matrix_to_obj(pq.matrix)
    obj["embedding"] = {
        "arrows": [[s + 1, t + 1] for s, t in pq.arrow_list],
        "rotation": [list(r) for r in pq.rotation],
        "outer": pq.outer,
    }
    return obj


def planar_from_obj(obj: Any) -> PlanarQuiver:
    m = matrix_from_obj(obj)
    emb = obj.get("embedding")
    _require(isinstance(emb, dict), 'planar quiver needs an "embedding" object')
    arrows_raw = emb.get("arrows")
    _require(isinstance(arrows_raw, list), '"embedding.arrows" must be a list')
    arrows = []
    for pair in arrows_raw:
        pair = _int_list(pair, '"embedding.arrows" entries')
        _require(len(pair) == 2, '"embedding.arrows" entries must be pairs')
        s, t = pair
        _require(1 <= s <= m.n and 1 <= t <= m.n,
                 f"arrow ({s},{t}) out of range 1..{m.n}")
        arrows.append((s - 1, t - 1))
    rot_raw = emb.get("rotation")
    _require(isinstance(rot_raw, list) and len(rot_raw) == m.n,
             '"embedding.rotation" must list one orbit per vertex')
    rotation = tuple(
        tuple(_int_list(r, '"embedding.rotation" rows')) for r in rot_raw
    )
    seen = [h for r in rotation for h in r]
    _require(sorted(seen) == list(range(2 * len(arrows))),
             '"embedding.rotation" must partition the half-edges')
    outer = emb.get("outer")
    _require(isinstance(outer, int) and not isinstance(outer, bool)
             and 0 <= outer < 2 * len(arrows),
             '"embedding.outer" must be a half-edge id')
    pq = PlanarQuiver(m, tuple(arrows), rotation, outer)
    _require(pq.is_valid_embedding(),
             "embedding is not a connected planar rotation system")
    return pq


# --- bicolored graphs ------------------------------------------------------------


def plabic_to_obj(p: PlabicGraph) -> dict:
    colors = {
        str(v + 1): c for v, c in enumerate(p.colors) if c is not None
    }
    obj: dict[str, Any] = {
        "schema": SCHEMA,
        "half_edges": p.half_edge_count,
        "pairing": list(p.pairing),
        "rotation": [list(r) for r in p.rotation],
        "colors": colors,
        "boundary": [v + 1 for v in p.boundary],
    }
    if p.outer is not None:
        obj["outer"] = p.outer
    return obj


def plabic_from_obj(obj: Any) -> PlabicGraph:
    obj = _check_schema(obj)
    n_h = obj.get("half_edges")
    _require(isinstance(n_h, int) and not isinstance(n_h, bool) and n_h >= 0,
             '"half_edges" must be a non-negative integer')
    pairing = _int_list(obj.get("pairing"), '"pairing"')
    _require(len(pairing) == n_h, '"pairing" must list every half-edge')
    rot_raw = obj.get("rotation")
    _require(isinstance(rot_raw, list), '"rotation" must be a list')
    rotation = tuple(tuple(_int_list(r, '"rotation" rows')) for r in rot_raw)
    n_v = len(rotation)
    colors_raw = obj.get("colors")
    _require(isinstance(colors_raw, dict), '"colors" must be an object')
    colors: list[Optional[str]] = [None] * n_v
    for key, c in colors_raw.items():
        try:
            v = int(key)
        except ValueError:
            raise SchemaError(f'"colors" key {key!r} is not a vertex index')
        _require(1 <= v <= n_v, f'"colors" vertex {v} out of range 1..{n_v}')
        _require(c in ("b", "w"), '"colors" values must be "b" or "w"')
        colors[v - 1] = c
    boundary_raw = _int_list(obj.get("boundary", []), '"boundary"')
    for v in boundary_raw:
        _require(1 <= v <= n_v, f'"boundary" vertex {v} out of range 1..{n_v}')
    outer = obj.get("outer")
    if outer is not None:
        _require(isinstance(outer, int) and not isinstance(outer, bool)
                 and 0 <= outer < n_h, '"outer" must be a half-edge id')
    p = PlabicGraph(
        pairing=tuple(pairing),
        rotation=rotation,
        colors=tuple(colors),
        boundary=tuple(v - 1 for v in boundary_raw),
        outer=outer,
    )
    try:
        p.validate()
    except Exception as exc:
        raise SchemaError(f"invalid bicolored graph: {exc}")
    return p


# --- embedding certificates ------------------------------------------------------


def certificate_to_obj(cert: EmbeddingCertificate) -> dict:
    return {
        "schema": SCHEMA,
        "universal": matrix_to_obj(cert.universal),
        "seq": [k + 1 for k in cert.seq.steps],
        "base": [i + 1 for i in cert.base_indices],
        "target": matrix_to_obj(cert.target),
    }


def certificate_from_obj(obj: Any) -> EmbeddingCertificate:
    obj = _check_schema(obj)
    _require("universal" in obj and "target" in obj,
             'certificate needs "universal" and "target" matrices')
    universal = matrix_from_obj(obj["universal"])
    target = matrix_from_obj(obj["target"])
    seq_raw = _int_list(obj.get("seq", []), '"seq"')
    for k in seq_raw:
        _require(1 <= k <= universal.n,
                 f'"seq" step {k} out of range 1..{universal.n}')
    base_raw = _int_list(obj.get("base", []), '"base"')
    for i in base_raw:
        _require(1 <= i <= universal.n,
                 f'"base" index {i} out of range 1..{universal.n}')
    return EmbeddingCertificate(
        universal=universal,
        seq=MutationSequence(tuple(k - 1 for k in seq_raw)),
        base_indices=tuple(i - 1 for i in base_raw),
        target=target,
    )


# --- DOT renderings --------------------------------------------------------------


def matrix_to_dot(m: ExchangeMatrix) -> str:
    lines = ["digraph quiver {"]
    for i in range(m.n):
        attrs = [f'label="{m.label(i)}"']
        if i in m.frozen:
            attrs.append("shape=box")
        lines.append(f'  v{i + 1} [{", ".join(attrs)}];')
    for i in range(m.n):
        for j in range(m.n):
            mult = m.b[i][j]
            if mult <= 0:
                continue
            if mult <= 4:
                for _ in range(mult):
                    lines.append(f"  v{i + 1} -> v{j + 1};")
            else:
                lines.append(f'  v{i + 1} -> v{j + 1} [label="{mult}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def plabic_to_dot(p: PlabicGraph) -> str:
    base = p.base_of()
    lines = ["graph plabic {", "  node [style=filled];"]
    for v in range(p.vertex_count):
        c = p.colors[v]
        if c == "b":
            attrs = 'fillcolor=black, fontcolor=white, label="{}"'.format(v + 1)
        elif c == "w":
            attrs = 'fillcolor=white, label="{}"'.format(v + 1)
        else:
            attrs = 'shape=point, label=""'
        lines.append(f"  v{v + 1} [{attrs}];")
    for h in range(p.half_edge_count):
        if h < p.pairing[h]:
            lines.append(f"  v{base[h] + 1} -- v{base[p.pairing[h]] + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- format detection ------------------------------------------------------------


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}")


def detect_kind(obj: Any) -> str:
    """Classify a parsed JSON object: matrix / planar / plabic / certificate."""
    _check_schema(obj)
    if "pairing" in obj:
        return "plabic"
    if "universal" in obj and "target" in obj:
        return "certificate"
    if "embedding" in obj:
        return "planar"
    if "b" in obj and "n" in obj:
        return "matrix"
    raise SchemaError("object is none of: matrix, planar, plabic, certificate")
