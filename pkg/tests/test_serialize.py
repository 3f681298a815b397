"""JSON and DOT serialization: round trips, validation, format detection."""

import json
import random

import pytest

from helpers import five_face_graph, random_skew, three_blocks_quiver
from quiverlab.constructions import named_quiver
from quiverlab.errors import SchemaError, SignIncoherentPair
from quiverlab.matrix import new_matrix
from quiverlab.plabic import universal_plabic
from quiverlab.serialize import (
    SCHEMA,
    certificate_from_obj,
    certificate_to_obj,
    detect_kind,
    dumps_canonical,
    loads,
    matrix_from_obj,
    matrix_to_dot,
    matrix_to_obj,
    plabic_from_obj,
    plabic_to_dot,
    plabic_to_obj,
    planar_from_obj,
    planar_to_obj,
)
from quiverlab.solver import embed_quiver, verify_certificate


# --- canonical text ---------------------------------------------------------------


def test_dumps_canonical_is_sorted_and_compact():
    assert dumps_canonical({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_loads_rejects_bad_json():
    with pytest.raises(SchemaError):
        loads("{not json")


# --- matrices ----------------------------------------------------------------------


def test_matrix_round_trip_with_frozen_and_labels():
    rng = random.Random(1)
    for _ in range(50):
        m = random_skew(rng, rng.randint(2, 6), 4, frozen_prob=0.3)
        back = matrix_from_obj(json.loads(dumps_canonical(matrix_to_obj(m))))
        assert back == m
        assert back.labels == m.labels
    labeled = new_matrix(2, [[0, 1], [-1, 0]], frozen=[1], labels=("x", "y"))
    obj = matrix_to_obj(labeled)
    assert obj["frozen"] == [2]  # one-based in the format
    assert matrix_from_obj(obj).labels == ("x", "y")


def test_matrix_schema_errors():
    with pytest.raises(SchemaError):
        matrix_from_obj({"n": 2, "b": [[0, 1], [-1, 0]]})  # no schema tag
    with pytest.raises(SchemaError):
        matrix_from_obj({"schema": "quiverlab/0", "n": 2, "b": [[0, 1], [-1, 0]]})
    with pytest.raises(SchemaError):
        matrix_from_obj({"schema": SCHEMA, "n": 2, "b": [[0, 1]]})
    with pytest.raises(SchemaError):
        matrix_from_obj({"schema": SCHEMA, "n": 2, "b": [[0, True], [-1, 0]]})
    with pytest.raises(SchemaError):
        matrix_from_obj(
            {"schema": SCHEMA, "n": 2, "b": [[0, 1], [-1, 0]], "frozen": [3]}
        )


def test_well_typed_but_invalid_matrix_raises_domain_error():
    with pytest.raises(SignIncoherentPair):
        matrix_from_obj({"schema": SCHEMA, "n": 2, "b": [[0, 1], [1, 0]]})


# --- planar quivers -----------------------------------------------------------------


def test_planar_round_trip():
    pq, _ = three_blocks_quiver()
    obj = json.loads(dumps_canonical(planar_to_obj(pq)))
    back = planar_from_obj(obj)
    assert back.matrix == pq.matrix
    assert back.arrow_list == pq.arrow_list
    assert back.rotation == pq.rotation
    assert back.outer == pq.outer


def test_planar_schema_requires_coherent_embedding():
    pq, _ = three_blocks_quiver()
    obj = planar_to_obj(pq)
    broken = json.loads(dumps_canonical(obj))
    v = next(i for i, r in enumerate(broken["embedding"]["rotation"])
             if len(r) >= 4)
    broken["embedding"]["rotation"][v] = broken["embedding"]["rotation"][v][::-1]
    # reversing the rotation at a degree-4 vertex breaks the disk embedding
    with pytest.raises(SchemaError):
        planar_from_obj(broken)
    del obj["embedding"]
    with pytest.raises(SchemaError):
        planar_from_obj(obj)


# --- bicolored graphs -----------------------------------------------------------------


def test_plabic_round_trip_with_boundary():
    g, idx, edges, rank = five_face_graph()
    back = plabic_from_obj(json.loads(dumps_canonical(plabic_to_obj(g))))
    assert back == g


def test_plabic_round_trip_legless():
    u = universal_plabic(2)
    back = plabic_from_obj(json.loads(dumps_canonical(plabic_to_obj(u))))
    assert back == u


def test_plabic_schema_errors():
    g, idx, edges, rank = five_face_graph()
    obj = plabic_to_obj(g)
    bad = json.loads(dumps_canonical(obj))
    bad["colors"] = {"1": "purple"}
    with pytest.raises(SchemaError):
        plabic_from_obj(bad)
    bad2 = json.loads(dumps_canonical(obj))
    bad2["pairing"][0] = 0
    with pytest.raises(SchemaError):
        plabic_from_obj(bad2)


# --- certificates -----------------------------------------------------------------------


def test_certificate_round_trip_still_verifies():
    target = new_matrix(3, [[0, 2, -1], [-2, 0, 3], [1, -3, 0]])
    cert = embed_quiver(target)
    obj = json.loads(dumps_canonical(certificate_to_obj(cert)))
    assert all(k >= 1 for k in obj["seq"])
    back = certificate_from_obj(obj)
    assert back.target == cert.target
    assert back.universal == cert.universal
    assert tuple(back.seq) == tuple(cert.seq)
    assert verify_certificate(back).ok


def test_certificate_schema_errors():
    with pytest.raises(SchemaError):
        certificate_from_obj({"schema": SCHEMA, "seq": [1]})
    target = new_matrix(2, [[0, 1], [-1, 0]])
    obj = certificate_to_obj(embed_quiver(target))
    bad = json.loads(dumps_canonical(obj))
    bad["seq"] = [0]
    with pytest.raises(SchemaError):
        certificate_from_obj(bad)


# --- DOT -------------------------------------------------------------------------------


def test_matrix_dot_duplicates_small_multiplicities():
    m = new_matrix(2, [[0, 3], [-3, 0]])
    dot = matrix_to_dot(m)
    assert dot.count("v1 -> v2;") == 3
    assert "label=" in dot  # vertex labels


def test_matrix_dot_labels_large_multiplicities():
    m = new_matrix(2, [[0, 5], [-5, 0]])
    dot = matrix_to_dot(m)
    assert dot.count("v1 -> v2") == 1
    assert 'v1 -> v2 [label="5"];' in dot


def test_matrix_dot_marks_frozen_vertices():
    m = new_matrix(2, [[0, 1], [-1, 0]], frozen=[1])
    assert "shape=box" in matrix_to_dot(m)


def test_plabic_dot_is_undirected_with_filled_nodes():
    g, idx, edges, rank = five_face_graph()
    dot = plabic_to_dot(g)
    assert dot.startswith("graph plabic {")
    assert "--" in dot and "->" not in dot
    assert "fillcolor=black" in dot and "fillcolor=white" in dot
    assert "shape=point" in dot  # boundary legs


# --- format detection ---------------------------------------------------------------------


def test_detect_kind():
    m = named_quiver("markov")
    assert detect_kind(matrix_to_obj(m)) == "matrix"
    pq, _ = three_blocks_quiver()
    assert detect_kind(planar_to_obj(pq)) == "planar"
    g, idx, edges, rank = five_face_graph()
    assert detect_kind(plabic_to_obj(g)) == "plabic"
    cert = embed_quiver(new_matrix(2, [[0, 1], [-1, 0]]))
    assert detect_kind(certificate_to_obj(cert)) == "certificate"
    with pytest.raises(SchemaError):
        detect_kind({"schema": SCHEMA, "x": 1})
    with pytest.raises(SchemaError):
        detect_kind([1, 2])
