"""Bicolored graphs in a disk: face quivers, moves, surgery, round trips."""

import random
from dataclasses import replace

import pytest

from helpers import (
    arrows_of,
    doubled_edge_graph,
    five_face_graph,
    five_face_graph_flipped,
    leaf_triangle_quiver,
    mixed_face_quiver,
    oriented_triangle,
    pinched_face_quiver,
    random_conforming_quiver,
    single_arrow_quiver,
    three_blocks_quiver,
)
from quiverlab.canonical import is_isomorphic
from quiverlab.constructions import EXTENDED_SOMOS4, GluingSpec, glue_universal
from quiverlab.drawing import planar_universal
from quiverlab.errors import ConditionsViolated, InvalidSpec, NotApplicable
from quiverlab.matrix import mutate, restrict
from quiverlab.plabic import (
    augment_to_conditions,
    conditions_report,
    flip_move,
    is_plabic_isomorphic,
    plabic_canonical_key,
    plabic_from_quiver,
    quiver_of,
    square_move,
    universal_plabic,
)


# --- face quivers of hand-built graphs ------------------------------------------


def test_five_face_graph_quiver_is_exact():
    g, idx, edges, rank = five_face_graph()
    assert g.vertex_count == 16 and g.edge_count == 20
    q = quiver_of(g)
    assert q.n == 5
    assert arrows_of(q) == {
        (rank["a"], rank["c"]): 1, (rank["b"], rank["a"]): 1,
        (rank["c"], rank["d"]): 1, (rank["d"], rank["b"]): 1,
        (rank["b"], rank["e"]): 1, (rank["e"], rank["d"]): 1,
    }


def test_doubled_edge_graph_quiver_has_double_arrows():
    g, idx, rank = doubled_edge_graph()
    assert g.vertex_count == 10 and g.edge_count == 13
    q = quiver_of(g)
    assert q.n == 4
    assert arrows_of(q) == {
        (rank["two_sided"], rank["quad"]): 1,
        (rank["ring"], rank["two_sided"]): 1,
        (rank["quad"], rank["ring"]): 2,
        (rank["left"], rank["quad"]): 1,
        (rank["ring"], rank["left"]): 2,
    }


def test_all_black_graph_gives_an_empty_quiver():
    from helpers import build_plabic
    pts = {"x": (0, 0), "y": (1, 0), "l1": (-1, 0), "l2": (2, 0)}
    edges = [("x", "y", (1, 1), (-1, 1)), ("x", "y", (1, -1), (-1, -1)),
             ("l1", "x"), ("l2", "y")]
    g, _ = build_plabic(pts, {"x": "b", "y": "b"}, edges, ["l1", "l2"])
    q = quiver_of(g)
    assert q.n == 1 and q.b == ((0,),)


# --- square move -----------------------------------------------------------------


def test_square_move_equals_mutation_exactly():
    g, idx, edges, rank = five_face_graph()
    q = quiver_of(g)
    moved = square_move(g, rank["d"])
    q_moved = quiver_of(moved)
    q_mutated = mutate(q, rank["d"])
    want = {
        (rank["d"], rank["c"]): 1, (rank["b"], rank["a"]): 1,
        (rank["a"], rank["c"]): 1, (rank["b"], rank["d"]): 1,
        (rank["d"], rank["e"]): 1, (rank["c"], rank["b"]): 1,
    }
    assert arrows_of(q_moved) == want
    assert q_moved.b == q_mutated.b


def test_square_move_is_an_involution():
    g, idx, edges, rank = five_face_graph()
    moved = square_move(g, rank["d"])
    assert square_move(moved, rank["d"]) == g


def test_square_move_refusals():
    g, idx, edges, rank = five_face_graph()
    with pytest.raises(NotApplicable):
        square_move(g, rank["b"])  # pentagonal face
    with pytest.raises(NotApplicable):
        square_move(g, 99)  # no such face


def test_square_move_needs_alternating_interior_colors():
    g, idx, rank = doubled_edge_graph()
    for f in range(4):
        with pytest.raises(NotApplicable):
            square_move(g, f)


# --- flip move ----------------------------------------------------------------------


def test_flip_preserves_the_quiver_up_to_isomorphism():
    g, idx, edges, rank = five_face_graph()
    moved = square_move(g, rank["d"])
    k = edges.index(((70, 0), (70, 20)))
    flipped = flip_move(moved, 2 * k)
    assert is_isomorphic(quiver_of(flipped), quiver_of(moved)) is not None


def test_flip_twice_returns_an_isomorphic_graph():
    g, idx, edges, rank = five_face_graph()
    moved = square_move(g, rank["d"])
    k = edges.index(((70, 0), (70, 20)))
    flipped = flip_move(moved, 2 * k)
    again = flip_move(flipped, 2 * k)
    assert is_plabic_isomorphic(again, moved)
    assert quiver_of(again).b == quiver_of(moved).b


def test_flip_matches_an_explicit_transcription():
    g, idx, edges, rank = five_face_graph()
    moved = square_move(g, rank["d"])
    k = edges.index(((70, 0), (70, 20)))
    flipped = flip_move(moved, 2 * k)
    assert is_plabic_isomorphic(flipped, five_face_graph_flipped())


def test_flip_refuses_bicolored_and_boundary_edges():
    g, idx, edges, rank = five_face_graph()
    with pytest.raises(NotApplicable):
        flip_move(g, 2 * edges.index(((10, 0), (30, 0))))  # black-white
    with pytest.raises(NotApplicable):
        flip_move(g, 2 * edges.index(((0, 0), (10, 0))))  # leg edge
    with pytest.raises(NotApplicable):
        flip_move(g, 999)


# --- isomorphism -----------------------------------------------------------------------


def test_color_swap_is_an_isomorphism():
    u = universal_plabic(2)
    swapped = replace(
        u, colors=tuple({"b": "w", "w": "b"}.get(c) for c in u.colors)
    )
    assert is_plabic_isomorphic(u, swapped)
    assert plabic_canonical_key(u) == plabic_canonical_key(swapped)


def test_recolor_one_vertex_is_not_an_isomorphism():
    g, idx, edges, rank = five_face_graph()
    moved = square_move(g, rank["d"])
    assert not is_plabic_isomorphic(g, moved)


def test_validate_rejects_malformed_graphs():
    g, idx, edges, rank = five_face_graph()
    bad_pairing = list(g.pairing)
    bad_pairing[0], bad_pairing[1] = bad_pairing[1], bad_pairing[0]
    bad_pairing[0] = 0
    with pytest.raises(InvalidSpec):
        replace(g, pairing=tuple(bad_pairing)).validate()
    with pytest.raises(InvalidSpec):
        replace(g, colors=g.colors[:-1]).validate()
    no_color = list(g.colors)
    no_color[g.interior_vertices()[0]] = None
    with pytest.raises(InvalidSpec):
        replace(g, colors=tuple(no_color)).validate()


# --- face conditions and augmentation ------------------------------------------------


def test_conditions_already_met_need_no_surgery():
    tri, _ = oriented_triangle()
    assert conditions_report(tri) == []
    aug = augment_to_conditions(tri)
    assert aug.matrix.n == 3 and aug.arrow_list == tri.arrow_list


def test_univalent_vertex_repair():
    single, _ = single_arrow_quiver()
    assert conditions_report(single) == ["b"]
    aug = augment_to_conditions(single)
    assert aug.matrix.n == 3 and len(aug.arrow_list) == 3
    assert conditions_report(aug) == []


def test_leaf_repair_preserves_the_original_entries():
    leafy, _ = leaf_triangle_quiver()
    assert conditions_report(leafy) == ["b"]
    aug = augment_to_conditions(leafy)
    assert aug.matrix.n == 5 and len(aug.arrow_list) == 6
    for i in range(4):
        for j in range(4):
            assert aug.matrix.b[i][j] == leafy.matrix.b[i][j]


def test_pinched_face_repair():
    pinch, _ = pinched_face_quiver()
    assert "c" in conditions_report(pinch)
    aug = augment_to_conditions(pinch)
    assert conditions_report(aug) == []
    p = plabic_from_quiver(aug)
    assert is_isomorphic(aug.matrix, quiver_of(p)) is not None


def test_mixed_face_hub_insertion_shapes():
    pq, idx = mixed_face_quiver()
    assert conditions_report(pq) == ["d"]
    aug = augment_to_conditions(pq)
    assert aug.matrix.n == 9
    assert len(aug.arrow_list) == 16
    new_arrows = sorted(aug.arrow_list[8:])
    hubs = sorted(
        {s for s, t in new_arrows if s >= 6} | {t for s, t in new_arrows if t >= 6}
    )
    assert hubs == [6, 7, 8]
    by_hub = {h: set() for h in hubs}
    for s, t in new_arrows:
        by_hub[s if s >= 6 else t].add((s, t))
    a, b, c, d, e, f = (idx[x] for x in "ABCDEF")
    shapes = sorted(
        (frozenset(("in", s) if t == h else ("out", t) for s, t in arrows)
         for h, arrows in by_hub.items()),
        key=lambda z: (len(z), sorted(z)),
    )
    want = sorted(
        [frozenset({("in", d), ("out", a)}),
         frozenset({("in", d), ("in", b), ("out", a), ("out", e)}),
         frozenset({("in", f), ("out", e)})],
        key=lambda z: (len(z), sorted(z)),
    )
    assert shapes == want
    assert conditions_report(aug) == []


# --- quiver -> graph -------------------------------------------------------------------


def test_triangle_round_trip():
    tri, _ = oriented_triangle()
    p = plabic_from_quiver(tri)
    assert p.vertex_count == 4 and p.edge_count == 6
    assert sorted(c for c in p.colors) == ["b", "b", "b", "w"]
    q = quiver_of(p)
    assert is_isomorphic(tri.matrix, q) is not None


def test_three_blocks_round_trip_with_known_size():
    pq, _ = three_blocks_quiver()
    assert conditions_report(pq) == []
    p = plabic_from_quiver(pq)
    assert p.vertex_count == 18 and p.edge_count == 27
    assert p.boundary == ()
    cols = list(p.colors)
    assert cols.count("b") == 8 and cols.count("w") == 10
    assert is_isomorphic(pq.matrix, quiver_of(p)) is not None


def test_plabic_from_quiver_rejects_nonconforming_input():
    single, _ = single_arrow_quiver()
    with pytest.raises(ConditionsViolated):
        plabic_from_quiver(single)


def test_random_conforming_quivers_round_trip():
    rng = random.Random(314)
    for _ in range(25):
        pq = random_conforming_quiver(rng)
        p = plabic_from_quiver(pq)
        assert is_isomorphic(pq.matrix, quiver_of(p)) is not None


def test_augmented_mixed_quiver_round_trips():
    pq, _ = mixed_face_quiver()
    aug = augment_to_conditions(pq)
    p = plabic_from_quiver(aug)
    assert is_isomorphic(aug.matrix, quiver_of(p)) is not None


# --- universal graphs -------------------------------------------------------------------


@pytest.mark.parametrize("n,verts,edges,quiver_n", [(2, 22, 33, 12), (3, 64, 96, 33)])
def test_universal_plabic_counts(n, verts, edges, quiver_n):
    u = universal_plabic(n)
    assert u.vertex_count == verts
    assert u.edge_count == edges
    assert quiver_of(u).n == quiver_n


@pytest.mark.parametrize("n", [2, 3])
def test_universal_plabic_quiver_contains_the_planar_universal(n):
    pu = planar_universal(n)
    aug = augment_to_conditions(pu)
    u = universal_plabic(n)
    q = quiver_of(u)
    wit = is_isomorphic(aug.matrix, q)
    assert wit is not None
    keep = sorted(wit[i] for i in range(pu.matrix.n))
    sub = restrict(q, keep)
    assert is_isomorphic(sub, pu.matrix) is not None
    if n == 2:
        glued = glue_universal(GluingSpec(EXTENDED_SOMOS4, 2))
        assert is_isomorphic(sub, glued) is not None


def test_universal_plabic_has_flips_but_no_squares():
    u = universal_plabic(2)
    q = quiver_of(u)
    applicable_flips = []
    for h in range(u.half_edge_count):
        try:
            f = flip_move(u, h)
        except NotApplicable:
            continue
        applicable_flips.append(h)
        assert is_isomorphic(quiver_of(f), q) is not None
        assert is_plabic_isomorphic(flip_move(f, h), u)
    assert len(applicable_flips) == 14
    for face in range(q.n):
        with pytest.raises(NotApplicable):
            square_move(u, face)
