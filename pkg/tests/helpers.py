"""Shared test utilities: random generators and hand-built graph fixtures.

The geometry builders turn coordinate sketches into rotation systems, so
fixtures can be entered as drawings (points, edges, optional per-end
direction overrides for curved edges) and checked against known face
structures.  All fixtures return landmark dictionaries mapping names to
the indices the code assigns, so tests never hard-code index choices.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from fractions import Fraction

from quiverlab import maps
from quiverlab.drawing import Drawing, DrawnArrow, PlanarQuiver
from quiverlab.matrix import ExchangeMatrix, new_matrix
from quiverlab.plabic import PlabicGraph, augment_to_conditions, conditions_report


def ang(d) -> float:
    a = math.atan2(d[1], d[0])
    return a if a >= 0 else a + 2 * math.pi


def build_plabic(points, colors, edges, legs):
    """Build a bicolored graph from a drawing.

    ``points``: name -> (x, y); ``colors``: name -> 'b'/'w' (legs omitted);
    ``edges``: (u, v[, du, dv]) with optional per-end direction overrides
    for curved edges; ``legs``: boundary vertex names in any order (their
    cyclic order is recovered from the unbounded face).
    """
    names = list(points)
    idx = {nm: i for i, nm in enumerate(names)}
    ends = {nm: [] for nm in names}
    for k, e in enumerate(edges):
        u, v = e[0], e[1]
        du = e[2] if len(e) > 2 and e[2] is not None else (
            points[v][0] - points[u][0], points[v][1] - points[u][1])
        dv = e[3] if len(e) > 3 and e[3] is not None else (
            points[u][0] - points[v][0], points[u][1] - points[v][1])
        ends[u].append((ang(du), 2 * k))
        ends[v].append((ang(dv), 2 * k + 1))
    rotation = tuple(tuple(h for _, h in sorted(ends[nm])) for nm in names)
    pairing = tuple(h ^ 1 for h in range(2 * len(edges)))
    cols = tuple(colors.get(nm) for nm in names)
    legset = {idx[nm] for nm in legs}
    boundary = ()
    if legs:
        base = maps.base_map(rotation)
        faces = maps.face_orbits(list(rotation), list(pairing))
        outer = [f for f in faces if any(base[h] in legset for h in f)]
        assert len(outer) == 1, f"legs lie on {len(outer)} faces"
        boundary = tuple(base[h] for h in outer[0] if base[h] in legset)
    g = PlabicGraph(pairing, rotation, cols, boundary, None)
    g.validate()
    return g, idx


def build_planar_quiver(points, arrows, outer_arrow, outer_side="tail"):
    """Build an embedded quiver from a drawing; ``arrows``: (s, t[, ds, dt]).

    The unbounded face is named by one side of one arrow: the face to the
    right when leaving the tail (``outer_side="tail"``) or the head.
    """
    names = list(points)
    idx = {nm: i for i, nm in enumerate(names)}
    ends = {nm: [] for nm in names}
    for k, e in enumerate(arrows):
        s, t = e[0], e[1]
        ds = e[2] if len(e) > 2 and e[2] is not None else (
            points[t][0] - points[s][0], points[t][1] - points[s][1])
        dt = e[3] if len(e) > 3 and e[3] is not None else (
            points[s][0] - points[t][0], points[s][1] - points[t][1])
        ends[s].append((ang(ds), 2 * k))
        ends[t].append((ang(dt), 2 * k + 1))
    rotation = tuple(tuple(h for _, h in sorted(ends[nm])) for nm in names)
    n = len(names)
    b = [[0] * n for _ in range(n)]
    arrow_list = []
    for e in arrows:
        s, t = idx[e[0]], idx[e[1]]
        arrow_list.append((s, t))
        b[s][t] += 1
        b[t][s] -= 1
    m = new_matrix(n, b, labels=tuple(names))
    h = 2 * outer_arrow + (0 if outer_side == "tail" else 1)
    pq = PlanarQuiver(m, tuple(arrow_list), rotation, h)
    assert pq.is_valid_embedding(), "fixture embedding invalid"
    return pq, idx


def face_sets(g: PlabicGraph):
    """Vertex sets of the bounded faces, in the face order used by the
    face quiver."""
    base = g.base_of()
    return [
        frozenset(base[h] for h in f) | frozenset(base[g.pairing[h]] for h in f)
        for f in g.bounded_faces()
    ]


def arrows_of(m: ExchangeMatrix):
    """Positive entries as a dict (i, j) -> multiplicity."""
    out = {}
    for i in range(m.n):
        for j in range(m.n):
            if m.b[i][j] > 0:
                out[(i, j)] = m.b[i][j]
    return out


# --- random matrix generators ---------------------------------------------------


def random_skew(rng: random.Random, n: int, bound: int,
                frozen_prob: float = 0.0) -> ExchangeMatrix:
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(-bound, bound)
            b[i][j] = x
            b[j][i] = -x
    frozen = [i for i in range(n) if rng.random() < frozen_prob]
    if len(frozen) == n:
        frozen = frozen[:-1]
    return new_matrix(n, b, frozen=frozen)


def random_symmetrizable(rng: random.Random, n: int, dmax: int, kmax: int):
    """A matrix together with the diagonal used to build it."""
    d = [rng.randint(1, dmax) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            g = math.gcd(d[i], d[j])
            k = rng.randint(-kmax, kmax)
            b[i][j] = k * (d[j] // g)
            b[j][i] = -k * (d[i] // g)
    return new_matrix(n, b), d


def random_no_source_sink(rng: random.Random, n: int, bound: int) -> ExchangeMatrix:
    """Random skew-symmetric matrix where every vertex has at least one
    incoming and one outgoing arrow (a directed cycle backbone plus random
    extra entries)."""
    perm = list(range(n))
    rng.shuffle(perm)
    b = [[0] * n for _ in range(n)]
    for t in range(n):
        s, u = perm[t], perm[(t + 1) % n]
        b[s][u] += 1
        b[u][s] -= 1
    for i in range(n):
        for j in range(i + 1, n):
            if b[i][j]:
                continue
            if rng.random() < 0.5:
                x = rng.randint(-bound, bound)
                b[i][j] = x
                b[j][i] = -x
    return new_matrix(n, b)


def random_drawing(rng: random.Random) -> Drawing:
    """Straight-line arrows between random lattice points; retried by the
    caller until generic."""
    n = rng.randint(4, 7)
    pts = rng.sample(
        [(x, y) for x in range(0, 40) for y in range(0, 40)], n
    )
    points = tuple((Fraction(x), Fraction(y)) for x, y in pts)
    seen = set()
    arrows = []
    for _ in range(rng.randint(3, 8)):
        s, t = rng.sample(range(n), 2)
        if (s, t) in seen or (t, s) in seen:
            continue
        seen.add((s, t))
        arrows.append(DrawnArrow(s, t))
    if not arrows:
        arrows.append(DrawnArrow(0, 1))
    return Drawing(points, tuple(arrows))


# --- bicolored graph fixtures ------------------------------------------------------


def five_face_graph():
    """A 16-vertex, 20-edge graph with 4 legs whose face quiver is known
    by hand: faces a..e with arrows a->c, b->a, c->d, d->b, b->e, e->d."""
    pts = {}
    col = {}
    for (x, y, c) in [(10, 0, "b"), (30, 0, "w"), (70, 0, "b"), (90, 0, "w"),
                      (10, 20, "w"), (30, 20, "b"), (50, 20, "b"), (70, 20, "w"),
                      (10, 40, "b"), (50, 40, "w"), (70, 40, "b"), (90, 40, "w")]:
        pts[(x, y)] = (x, y)
        col[(x, y)] = c
    for leg in [(0, 0), (100, 0), (0, 40), (100, 40)]:
        pts[leg] = leg
    edges = [((0, 0), (10, 0)), ((100, 0), (90, 0)),
             ((0, 40), (10, 40)), ((100, 40), (90, 40)),
             ((10, 0), (30, 0)), ((30, 0), (70, 0)), ((70, 0), (90, 0)),
             ((10, 20), (30, 20)), ((30, 20), (50, 20)), ((50, 20), (70, 20)),
             ((10, 40), (50, 40)), ((50, 40), (70, 40)), ((70, 40), (90, 40)),
             ((10, 0), (10, 20)), ((10, 20), (10, 40)), ((30, 0), (30, 20)),
             ((50, 20), (50, 40)), ((70, 0), (70, 20)), ((70, 20), (70, 40)),
             ((90, 0), (90, 40))]
    g, idx = build_plabic(pts, col, edges, [(0, 0), (100, 0), (0, 40), (100, 40)])
    corners = {
        "a": [(10, 0), (30, 0), (30, 20), (10, 20)],
        "b": [(30, 0), (70, 0), (70, 20), (50, 20), (30, 20)],
        "c": [(10, 20), (30, 20), (50, 20), (50, 40), (10, 40)],
        "d": [(50, 20), (70, 20), (70, 40), (50, 40)],
        "e": [(70, 0), (90, 0), (90, 40), (70, 40), (70, 20)],
    }
    fs = face_sets(g)
    rank = {}
    for nm, pts_list in corners.items():
        s = frozenset(idx[p] for p in pts_list)
        matches = [i for i, t in enumerate(fs) if t == s]
        assert len(matches) == 1, (nm, matches)
        rank[nm] = matches[0]
    return g, idx, edges, rank


def five_face_graph_flipped():
    """The five-face graph after recoloring face d's corners and sliding the
    black-black edge that separates faces b and e, transcribed directly
    from its own drawing."""
    g, idx, edges, rank = five_face_graph()
    pts = {p: p for p in idx}
    col = {p: c for (p, c) in [
        ((10, 0), "b"), ((30, 0), "w"), ((70, 0), "b"), ((90, 0), "w"),
        ((10, 20), "w"), ((30, 20), "b"), ((50, 20), "b"), ((70, 20), "w"),
        ((10, 40), "b"), ((50, 40), "w"), ((70, 40), "b"), ((90, 40), "w")]}
    del pts[(70, 20)], col[(70, 20)]
    pts[(50, 0)] = (50, 0)
    col[(50, 20)] = "w"
    col[(50, 0)] = "b"
    col[(50, 40)] = "b"
    col[(70, 40)] = "w"
    e3 = [((0, 0), (10, 0)), ((100, 0), (90, 0)),
          ((0, 40), (10, 40)), ((100, 40), (90, 40)),
          ((10, 0), (30, 0)), ((30, 0), (50, 0)), ((50, 0), (70, 0)),
          ((70, 0), (90, 0)),
          ((10, 20), (30, 20)), ((30, 20), (50, 20)),
          ((10, 40), (50, 40)), ((50, 40), (70, 40)), ((70, 40), (90, 40)),
          ((10, 0), (10, 20)), ((10, 20), (10, 40)), ((30, 0), (30, 20)),
          ((50, 0), (50, 20)), ((50, 20), (50, 40)), ((70, 0), (70, 40)),
          ((90, 0), (90, 40))]
    g3, _ = build_plabic(pts, col, e3, [(0, 0), (100, 0), (0, 40), (100, 40)])
    return g3


def doubled_edge_graph():
    """A 10-vertex graph with a doubled edge, so its face structure has a
    two-sided face; the face quiver has known double arrows."""
    pts = {"w0": (10, 0), "b20": (10, 20), "w40": (10, 40), "b60": (10, 60),
           "wb": (30, 20), "bb": (30, 40), "bL": (-20, 30), "bR": (70, 30),
           "L1": (-40, 30), "L2": (90, 30)}
    col = {"w0": "w", "b20": "b", "w40": "w", "b60": "b",
           "wb": "w", "bb": "b", "bL": "b", "bR": "b"}
    edges = [("L1", "bL"), ("L2", "bR"),
             ("w0", "b20"), ("b20", "w40"), ("w40", "b60"),
             ("b20", "wb"), ("w40", "bb"),
             ("wb", "bb"),
             ("wb", "bb", (2, 1), (2, -1)),
             ("w0", "bL", (-2, -1), (1, -2)),
             ("w0", "bR", (2, -1), (-1, -2)),
             ("b60", "bL", (-2, 1), (1, 2)),
             ("b60", "bR", (2, 1), (-1, 2))]
    g, idx = build_plabic(pts, col, edges, ["L1", "L2"])
    fs = face_sets(g)
    rank = {}
    for nm, vs in [("quad", ["b20", "wb", "bb", "w40"]),
                   ("two_sided", ["wb", "bb"]),
                   ("left", ["w0", "b20", "w40", "b60", "bL"])]:
        s = frozenset(idx[p] for p in vs)
        matches = [i for i, t in enumerate(fs) if t == s]
        assert len(matches) == 1, (nm, matches)
        rank[nm] = matches[0]
    rank["ring"] = ({0, 1, 2, 3} - set(rank.values())).pop()
    return g, idx, rank


# --- planar quiver fixtures ----------------------------------------------------------


def oriented_triangle():
    return build_planar_quiver(
        {"A": (0, 0), "B": (2, 0), "C": (1, 1)},
        [("A", "B"), ("B", "C"), ("C", "A")],
        outer_arrow=0, outer_side="tail")


def mixed_face_quiver():
    """Six vertices, eight arrows; every bounded face has both a source
    and a sink on its boundary, so augmentation must add hub vertices."""
    pts = {"A": (0, 0), "B": (20, 0), "C": (40, 0),
           "D": (0, 20), "E": (20, 20), "F": (40, 20)}
    arrows = [("A", "B"), ("B", "C"), ("E", "F"), ("E", "D"),
              ("A", "D"), ("A", "D", (-2, 1), (-2, -1)),
              ("E", "B"), ("C", "F")]
    return build_planar_quiver(pts, arrows, outer_arrow=0, outer_side="tail")


def three_blocks_quiver():
    """Ten vertices in three four-cycles joined by bridges; already
    conforming, with a known bicolored realization size."""
    pts = {"a1": (10, 30), "a2": (30, 30), "a3": (50, 30), "a4": (70, 30),
           "b1": (10, 50), "b2": (30, 50), "b3": (50, 50), "b4": (70, 50),
           "c3": (50, 10), "c4": (70, 10)}
    arrows = [("a1", "b1"), ("b1", "b2"), ("b2", "a2"), ("a2", "a1"),
              ("a3", "b3"), ("b3", "b4"), ("b4", "a4"), ("a4", "a3"),
              ("a3", "c3"), ("c3", "c4"), ("c4", "a4"), ("a2", "a3")]
    return build_planar_quiver(pts, arrows, outer_arrow=3, outer_side="head")


def single_arrow_quiver():
    return build_planar_quiver({"A": (0, 0), "B": (1, 0)}, [("A", "B")],
                               outer_arrow=0)


def leaf_triangle_quiver():
    return build_planar_quiver(
        {"A": (0, 0), "B": (2, 0), "C": (1, 1), "D": (1, 2.5)},
        [("A", "B"), ("B", "C"), ("C", "A"), ("C", "D")],
        outer_arrow=0)


def pinched_face_quiver():
    """Two oriented triangles sharing one vertex, enclosed by an oriented
    square: the enclosing bounded face walk visits the shared vertex twice."""
    pts = {"S1": (0, -4), "S2": (4, 0), "S3": (0, 4), "S4": (-4, 0),
           "P": (0, -1), "A": (1.5, 0.0), "B": (0.75, 1.2),
           "C": (-0.75, 1.2), "D": (-1.5, 0.0)}
    arrows = [("S1", "S2"), ("S2", "S3"), ("S3", "S4"), ("S4", "S1"),
              ("S1", "P"),
              ("P", "A"), ("A", "B"), ("B", "P"),
              ("P", "C"), ("C", "D"), ("D", "P")]
    return build_planar_quiver(pts, arrows, outer_arrow=0)


# --- matrix fixture: three-vertex mutation pair ---------------------------------------


def three_vertex_mutation_pair():
    """A quiver u -> v -> w with a double arrow w => u, and the exact
    result of mutating it at v: both transcribed independently, each
    obtained from the other by that one mutation."""
    left = new_matrix(3, [[0, 1, -2], [-1, 0, 1], [2, -1, 0]],
                      labels=("u", "v", "w"))
    right = new_matrix(3, [[0, -1, -1], [1, 0, -1], [1, 1, 0]],
                       labels=("u", "v", "w"))
    return left, right


# --- random conforming planar quivers --------------------------------------------------


def _fan_triangulation(rng: random.Random, sides: int):
    """Convex polygon triangulated by chords, every edge oriented at
    random; optionally one pendant arrow hanging off a hull vertex."""
    pts = {}
    for t in range(sides):
        a = 2 * math.pi * t / sides
        pts[t] = (100 * math.cos(a), 100 * math.sin(a))
    edges = [(t, (t + 1) % sides) for t in range(sides)]
    apex = 0
    edges += [(apex, t) for t in range(2, sides - 1)]
    arrows = []
    for (s, t) in edges:
        arrows.append((s, t) if rng.random() < 0.5 else (t, s))
    if rng.random() < 0.4:
        v = rng.randrange(sides)
        a = 2 * math.pi * v / sides
        pts[sides] = (150 * math.cos(a), 150 * math.sin(a))
        arrows.append((v, sides) if rng.random() < 0.5 else (sides, v))
    return pts, arrows


def alternating_grid_quiver(k: int, ell: int):
    """A (k+1) x (ell+1) lattice whose unit squares are alternately
    oriented cycles; conforming as drawn."""
    pts = {(x, y): (10 * x, 10 * y) for x in range(k + 1) for y in range(ell + 1)}
    arrows = []
    for y in range(ell + 1):
        for x in range(k):
            a, b = (x, y), (x + 1, y)
            arrows.append((a, b) if (x + y) % 2 == 0 else (b, a))
    for x in range(k + 1):
        for y in range(ell):
            a, b = (x, y), (x, y + 1)
            arrows.append((a, b) if (x + y) % 2 == 1 else (b, a))
    return build_planar_quiver(pts, arrows, outer_arrow=0, outer_side="tail")


def random_conforming_quiver(rng: random.Random) -> PlanarQuiver:
    """A random embedded quiver satisfying all face conditions, produced
    either directly (alternating grids) or by repairing a random
    triangulated polygon."""
    kind = rng.random()
    if kind < 0.25:
        pq, _ = alternating_grid_quiver(rng.randint(1, 3), rng.randint(1, 3))
        out = pq
    else:
        pts, arrows = _fan_triangulation(rng, rng.randint(4, 9))
        pq, _ = build_planar_quiver(pts, arrows, outer_arrow=0)
        out = augment_to_conditions(pq)
    assert conditions_report(out) == []
    return out
