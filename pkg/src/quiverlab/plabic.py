"""Bicolored trivalent disk graphs, their local moves, and the
quiver-to-graph pipeline.

A :class:`PlabicGraph` is stored as an oriented combinatorial map:
``pairing`` matches half-edges into edges, ``rotation[v]`` lists the
half-edges based at vertex ``v`` in counterclockwise order.  Interior
vertices are trivalent and colored black or white; boundary vertices are
univalent, uncolored legs.  Faces are the orbits of
``h -> rotation-successor(pairing(h))``; with counterclockwise rotations
each face lies on the *right* of its traversed half-edges.  The unbounded
face is the one containing all boundary legs, or the designated ``outer``
half-edge for graphs without legs.

``quiver_of`` places one quiver vertex per bounded face and one arrow per
edge with endpoints of different colors (both side faces bounded and
distinct), oriented so the black endpoint of the crossed edge lies to the
right of the arrow; opposite arrows cancel.  ``square_move`` and
``flip_move`` are the local moves; the square move mutates the associated
quiver at the face vertex, the flip preserves it up to isomorphism.

``augment_to_conditions`` embeds any planar quiver into one whose bounded
faces are simple oriented cycles (adding two-arrow paths and per-face hub
vertices), after which ``plabic_from_quiver`` produces a graph whose
associated quiver is isomorphic to the input.  ``universal_plabic``
composes this pipeline with the planar universal quiver.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from . import maps
from .drawing import PlanarQuiver, planar_universal
from .errors import ConditionsViolated, InvalidSpec, NotApplicable
from .matrix import ExchangeMatrix, new_matrix

__all__ = [
    "PlabicGraph",
    "quiver_of",
    "square_move",
    "flip_move",
    "plabic_canonical_key",
    "is_plabic_isomorphic",
    "conditions_report",
    "augment_to_conditions",
    "plabic_from_quiver",
    "universal_plabic",
]

BLACK = "b"
WHITE = "w"


@dataclass(frozen=True)
class PlabicGraph:
    """Trivalent bicolored graph embedded in a disk, as a rotation system.

    ``colors[v]`` is ``"b"``/``"w"`` for interior vertices and ``None``
    for boundary legs; ``boundary`` lists the leg vertices in the cyclic
    order induced by the unbounded face.  ``outer`` (a half-edge on the
    unbounded face) disambiguates the outer face when there are no legs.
    """

    pairing: tuple[int, ...]
    rotation: tuple[tuple[int, ...], ...]
    colors: tuple[Optional[str], ...]
    boundary: tuple[int, ...] = ()
    outer: Optional[int] = None

    @property
    def half_edge_count(self) -> int:
        return len(self.pairing)

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def edge_count(self) -> int:
        return len(self.pairing) // 2

    def base_of(self) -> list[int]:
        return maps.base_map(self.rotation)

    def interior_vertices(self) -> list[int]:
        bset = set(self.boundary)
        return [v for v in range(self.vertex_count) if v not in bset]

    def faces(self) -> list[tuple[int, ...]]:
        return maps.face_orbits(self.rotation, list(self.pairing))

    def outer_face(self) -> tuple[int, ...]:
        faces = self.faces()
        if self.boundary:
            legs = {self.rotation[v][0] for v in self.boundary}
            hits = [f for f in faces if legs & set(f)]
            if len(hits) != 1 or not legs <= set(hits[0]):
                raise InvalidSpec(
                    "boundary legs do not lie on a single face"
                )
            return hits[0]
        if self.outer is not None:
            for f in faces:
                if self.outer in f:
                    return f
        raise InvalidSpec("unbounded face is not determined")

    def bounded_faces(self) -> list[tuple[int, ...]]:
        """Bounded faces sorted by smallest half-edge; this ordering is the
        vertex order of :func:`quiver_of`."""
        outer = self.outer_face()
        return sorted(
            (f for f in self.faces() if f != outer), key=lambda f: f[0]
        )

    def validate(self) -> None:
        n_h = len(self.pairing)
        if sorted(self.pairing) != list(range(n_h)):
            raise InvalidSpec("pairing is not a permutation of half-edges")
        for h, m in enumerate(self.pairing):
            if m == h or self.pairing[m] != h:
                raise InvalidSpec("pairing is not a fixed-point-free involution")
        seen: set[int] = set()
        for rot in self.rotation:
            for h in rot:
                if h in seen or not 0 <= h < n_h:
                    raise InvalidSpec("rotation does not partition half-edges")
                seen.add(h)
        if len(seen) != n_h:
            raise InvalidSpec("rotation does not partition half-edges")
        if len(self.colors) != len(self.rotation):
            raise InvalidSpec("one color entry per vertex required")
        bset = set(self.boundary)
        if len(bset) != len(self.boundary):
            raise InvalidSpec("duplicate boundary vertex")
        for v, rot in enumerate(self.rotation):
            if v in bset:
                if len(rot) != 1:
                    raise InvalidSpec(f"boundary vertex {v + 1} is not univalent")
                if self.colors[v] is not None:
                    raise InvalidSpec(f"boundary vertex {v + 1} must be uncolored")
            else:
                if len(rot) != 3:
                    raise InvalidSpec(f"interior vertex {v + 1} is not trivalent")
                if self.colors[v] not in (BLACK, WHITE):
                    raise InvalidSpec(f"interior vertex {v + 1} lacks a color")
        if not maps.euler_check(self.rotation, list(self.pairing)):
            raise InvalidSpec("rotation system is not a planar (disk) embedding")
        outer = self.outer_face()
        if self.boundary:
            # legs must appear on the unbounded face in the stored cyclic order
            base = self.base_of()
            order = [base[h] for h in outer if base[h] in bset]
            want = list(self.boundary)
            if sorted(order) != sorted(want):
                raise InvalidSpec("boundary list does not match the legs")
            if len(order) > 1:
                k = order.index(want[0])
                if order[k:] + order[:k] != want:
                    raise InvalidSpec(
                        "boundary cyclic order disagrees with the embedding"
                    )


def _face_of_map(faces: Sequence[Sequence[int]]) -> dict[int, int]:
    owner: dict[int, int] = {}
    for i, f in enumerate(faces):
        for h in f:
            owner[h] = i
    return owner


def quiver_of(p: PlabicGraph) -> ExchangeMatrix:
    """One vertex per bounded face; arrows across bicolored edges whose two
    side faces are bounded and distinct, black endpoint to the right."""
    p.validate()
    faces = p.faces()
    outer = p.outer_face()
    bounded = p.bounded_faces()
    rank = {f[0]: i for i, f in enumerate(bounded)}
    owner = _face_of_map(faces)
    face_key = {i: f[0] for i, f in enumerate(faces)}
    base = p.base_of()
    n = len(bounded)
    b = [[0] * n for _ in range(n)]
    outer_key = outer[0]
    for h in range(p.half_edge_count):
        m = p.pairing[h]
        if h > m:
            continue
        cb, cw = p.colors[base[h]], p.colors[base[m]]
        if cb is None or cw is None or cb == cw:
            continue
        h_black = h if cb == BLACK else m
        side_black = face_key[owner[h_black]]
        side_white = face_key[owner[p.pairing[h_black]]]
        if side_black == outer_key or side_white == outer_key:
            continue
        if side_black == side_white:
            continue
        b[rank[side_white]][rank[side_black]] += 1
        b[rank[side_black]][rank[side_white]] -= 1
    labels = tuple(f"F{i + 1}" for i in range(n))
    return new_matrix(n, b, labels=labels)


def _neighbor_faces(p: PlabicGraph, face: Sequence[int]) -> list[int]:
    faces = p.faces()
    owner = _face_of_map(faces)
    return [owner[p.pairing[h]] for h in face]


def square_move(p: PlabicGraph, face_index: int) -> PlabicGraph:
    """Recolor the four alternating vertices around bounded face number
    ``face_index`` (0-based rank in :meth:`PlabicGraph.bounded_faces`)."""
    p.validate()
    bounded = p.bounded_faces()
    if not 0 <= face_index < len(bounded):
        raise NotApplicable(
            f"no bounded face numbered {face_index + 1} "
            f"(graph has {len(bounded)})"
        )
    face = bounded[face_index]
    if len(face) != 4:
        raise NotApplicable(
            f"face {face_index + 1} is not a quadrilateral"
        )
    base = p.base_of()
    corner_vertices = [base[p.pairing[h]] for h in face]
    if len(set(corner_vertices)) != 4:
        raise NotApplicable("square corners are not four distinct vertices")
    cols = [p.colors[v] for v in corner_vertices]
    if None in cols:
        raise NotApplicable("square touches the boundary")
    if cols[0] != cols[2] or cols[1] != cols[3] or cols[0] == cols[1]:
        raise NotApplicable("square colors do not alternate")
    faces = p.faces()
    owner = _face_of_map(faces)
    around = [owner[p.pairing[h]] for h in face]
    if len(set(around)) != 4 or owner[face[0]] in around:
        raise NotApplicable(
            "the four faces around the square are not pairwise distinct"
        )
    flip = {BLACK: WHITE, WHITE: BLACK}
    colors = list(p.colors)
    for v in corner_vertices:
        colors[v] = flip[colors[v]]
    moved = replace(p, colors=tuple(colors))
    moved.validate()
    return moved


def flip_move(p: PlabicGraph, half_edge: int) -> PlabicGraph:
    """Slide the edge carrying ``half_edge``: its two same-color trivalent
    endpoints exchange one neighbor each."""
    p.validate()
    if not 0 <= half_edge < p.half_edge_count:
        raise NotApplicable(f"no half-edge {half_edge}")
    e = half_edge
    e2 = p.pairing[e]
    base = p.base_of()
    x, y = base[e], base[e2]
    if x == y:
        raise NotApplicable("edge is a loop")
    bset = set(p.boundary)
    if x in bset or y in bset:
        raise NotApplicable("edge touches the boundary")
    if p.colors[x] != p.colors[y]:
        raise NotApplicable("endpoints have different colors")
    rot_x = list(p.rotation[x])
    rot_y = list(p.rotation[y])
    ix, iy = rot_x.index(e), rot_y.index(e2)
    # counterclockwise after the shared edge: (e, p1, q1) and (e2, r1, s1)
    p1, q1 = rot_x[(ix + 1) % 3], rot_x[(ix + 2) % 3]
    r1, s1 = rot_y[(iy + 1) % 3], rot_y[(iy + 2) % 3]
    rotation = list(p.rotation)
    rotation[x] = (e, s1, p1)
    rotation[y] = (e2, q1, r1)
    outer = p.outer
    if outer is not None:
        witnesses = [h for h in sorted(p.outer_face()) if base[h] not in (x, y)]
        if witnesses:
            outer = witnesses[0]
        # else: a tiny graph whose outer face touches only x and y; keep
        # the old id, which still names some face of the moved map.
    moved_graph = replace(p, rotation=tuple(rotation), outer=outer)
    moved_graph.validate()
    return moved_graph


# --- isomorphism ---------------------------------------------------------------


def _map_signature(
    p: PlabicGraph, root: int, swap: bool, outer_set: frozenset
) -> tuple:
    base = p.base_of()
    label: dict[int, int] = {root: 0}
    order = [root]
    succ: dict[int, int] = {}
    for rot in p.rotation:
        for i, h in enumerate(rot):
            succ[h] = rot[(i + 1) % len(rot)]
    i = 0
    while i < len(order):
        h = order[i]
        for nxt in (succ[h], p.pairing[h]):
            if nxt not in label:
                label[nxt] = len(order)
                order.append(nxt)
        i += 1
    if len(order) != p.half_edge_count:
        raise InvalidSpec("graph is not connected")
    sig = []
    for h in order:
        v = base[h]
        color = p.colors[v]
        if color is not None and swap:
            color = BLACK if color == WHITE else WHITE
        sig.append(
            (
                label[succ[h]],
                label[p.pairing[h]],
                color or "-",
                h in outer_set,
            )
        )
    return tuple(sig)


def plabic_canonical_key(p: PlabicGraph) -> tuple:
    """Canonical form under half-edge relabeling and global color swap."""
    p.validate()
    outer_set = frozenset(p.outer_face())
    best = None
    for swap in (False, True):
        for root in range(p.half_edge_count):
            sig = _map_signature(p, root, swap, outer_set)
            if best is None or sig < best:
                best = sig
    return best


def is_plabic_isomorphic(a: PlabicGraph, b: PlabicGraph) -> bool:
    if a.half_edge_count != b.half_edge_count:
        return False
    return plabic_canonical_key(a) == plabic_canonical_key(b)


# --- planar-quiver surgery -----------------------------------------------------


class _MapBuilder:
    """Mutable rotation-system editor for planar-quiver augmentation."""

    def __init__(self, pq: PlanarQuiver):
        if not pq.is_valid_embedding():
            raise ValueError("input embedding is not a valid disk map")
        if pq.matrix.frozen:
            raise ValueError("augmentation expects a fully mutable quiver")
        self.arrows: list[tuple[int, int]] = list(pq.arrow_list)
        self.rotation: list[list[int]] = [list(r) for r in pq.rotation]
        self.labels: list[str] = [pq.matrix.label(i) for i in range(pq.matrix.n)]
        self.outer: int = pq.outer
        self._base: dict[int, int] = {}
        for v, rot in enumerate(self.rotation):
            for h in rot:
                self._base[h] = v

    def mate(self, h: int) -> int:
        return h ^ 1

    def base(self, h: int) -> int:
        return self._base[h]

    def add_vertex(self, label: str) -> int:
        self.rotation.append([])
        self.labels.append(label)
        return len(self.rotation) - 1

    def _insert(self, v: int, end: int, anchor: Optional[tuple[str, int]]):
        rot = self.rotation[v]
        if anchor is None:
            rot.append(end)
        else:
            kind, ref = anchor
            pos = rot.index(ref)
            if kind == "after":
                rot.insert(pos + 1, end)
            elif kind == "before":
                rot.insert(pos, end)
            else:  # pragma: no cover - internal misuse
                raise ValueError(kind)
        self._base[end] = v

    def add_arrow(
        self,
        s: int,
        t: int,
        at_s: Optional[tuple[str, int]],
        at_t: Optional[tuple[str, int]],
    ) -> int:
        k = len(self.arrows)
        self.arrows.append((s, t))
        self._insert(s, 2 * k, at_s)
        self._insert(t, 2 * k + 1, at_t)
        return k

    def faces(self) -> list[tuple[int, ...]]:
        mate = [h ^ 1 for h in range(2 * len(self.arrows))]
        return maps.face_orbits(self.rotation, mate)

    def bounded_faces(self) -> list[tuple[int, ...]]:
        out = []
        for f in self.faces():
            if self.outer in f:
                continue
            out.append(f)
        return out

    def walk_vertices(self, face: Sequence[int]) -> list[int]:
        return [self.base(self.mate(h)) for h in face]

    def assert_planar(self) -> None:
        mate = [h ^ 1 for h in range(2 * len(self.arrows))]
        if not maps.euler_check(self.rotation, mate):
            raise AssertionError("surgery broke planarity")

    def to_planar(self) -> PlanarQuiver:
        n = len(self.rotation)
        b = [[0] * n for _ in range(n)]
        for s, t in self.arrows:
            b[s][t] += 1
            b[t][s] -= 1
        m = new_matrix(n, b, labels=tuple(self.labels))
        return PlanarQuiver(
            m,
            tuple(self.arrows),
            tuple(tuple(r) for r in self.rotation),
            self.outer,
        )


def conditions_report(pq: PlanarQuiver) -> list[str]:
    """Letters of the face conditions that fail: (a) connected disk map,
    (b) no univalent vertices, (c) bounded face walks visit no vertex
    twice, (d) bounded face boundaries are oriented cycles."""
    failed = []
    if not pq.is_valid_embedding():
        return ["a"]
    if any(len(r) == 1 for r in pq.rotation):
        failed.append("b")
    mate = [h ^ 1 for h in range(2 * len(pq.arrow_list))]
    base = maps.base_map(pq.rotation)
    simple = True
    oriented = True
    for face in maps.face_orbits(pq.rotation, mate):
        if pq.outer in face:
            continue
        visits = [base[h ^ 1] for h in face]
        if len(set(visits)) != len(visits):
            simple = False
        parity = {h % 2 for h in face}
        if len(parity) != 1:
            oriented = False
    if not simple:
        failed.append("c")
    if not oriented:
        failed.append("d")
    return failed


def _repair_univalent(mb: _MapBuilder) -> None:
    counter = 0
    while True:
        leaves = [v for v, r in enumerate(mb.rotation) if len(r) == 1]
        if not leaves:
            return
        u = leaves[0]
        h_u = mb.rotation[u][0]
        h_w = mb.mate(h_u)
        w = mb.base(h_w)
        counter += 1
        m = mb.add_vertex(f"mid{counter}")
        if h_u % 2 == 1:
            # arrow w -> u; close the triangle with u -> m -> w
            mb.add_arrow(u, m, ("after", h_u), None)
            mb.add_arrow(m, w, None, ("before", h_w))
        else:
            # arrow u -> w; close the triangle with w -> m -> u
            mb.add_arrow(w, m, ("after", h_w), None)
            mb.add_arrow(m, u, None, ("before", h_u))
        mb.assert_planar()


def _repair_pinches(mb: _MapBuilder) -> None:
    counter = 0
    guard = 0
    while True:
        guard += 1
        if guard > 4 * (len(mb.arrows) + len(mb.rotation)) + 16:
            raise RuntimeError("face-splitting did not converge")
        target = None
        for face in sorted(mb.bounded_faces(), key=lambda f: f[0]):
            visits = mb.walk_vertices(face)
            first = {}
            for t, v in enumerate(visits):
                if v in first:
                    target = (face, first[v], t, visits)
                    break
                first[v] = t
            if target:
                break
        if target is None:
            return
        face, i, j, visits = target
        length = len(face)
        counts: dict[int, int] = {}
        for v in visits:
            counts[v] = counts.get(v, 0) + 1

        def pick(lo: int, hi: int) -> int:
            # position strictly between the two pinch visits, preferring a
            # once-visited vertex; (lo+1..hi-1) is nonempty since loops are
            # impossible
            best = (lo + 1) % length
            t = best
            while t != hi:
                if counts[visits[t]] == 1:
                    return t
                t = (t + 1) % length
            return best

        tx = pick(i, j)
        ty = pick(j, i)
        x, y = visits[tx], visits[ty]
        counter += 1
        m = mb.add_vertex(f"cut{counter}")
        mb.add_arrow(x, m, ("after", mb.mate(face[tx])), None)
        mb.add_arrow(m, y, None, ("after", mb.mate(face[ty])))
        mb.assert_planar()


def _add_hubs(mb: _MapBuilder) -> None:
    counter = 0
    for face in sorted(mb.bounded_faces(), key=lambda f: f[0]):
        if len({h % 2 for h in face}) == 1:
            continue  # already an oriented cycle
        length = len(face)
        spokes = []
        for t, h in enumerate(face):
            w = mb.base(mb.mate(h))
            arrived_inward = mb.mate(h) % 2 == 1  # previous edge points into w
            leaves_inward = face[(t + 1) % length] % 2 == 1  # next edge too
            if arrived_inward and leaves_inward:
                spokes.append((t, w, "sink"))
            elif not arrived_inward and not leaves_inward:
                spokes.append((t, w, "source"))
        counter += 1
        hub = mb.add_vertex(f"hub{counter}")
        for t, w, kind in reversed(spokes):
            anchor = ("after", mb.mate(face[t]))
            if kind == "sink":
                mb.add_arrow(w, hub, anchor, None)
            else:
                mb.add_arrow(hub, w, None, anchor)
        mb.assert_planar()


def augment_to_conditions(pq: PlanarQuiver) -> PlanarQuiver:
    """Extend the quiver (as a full subquiver, original vertices first)
    until every bounded face is a simple oriented cycle."""
    mb = _MapBuilder(pq)
    _repair_univalent(mb)
    _repair_pinches(mb)
    _add_hubs(mb)
    result = mb.to_planar()
    leftover = conditions_report(result)
    if leftover:
        raise AssertionError(f"augmentation left conditions {leftover} unmet")
    return result


# --- quiver -> plabic ----------------------------------------------------------


def plabic_from_quiver(pq: PlanarQuiver) -> PlabicGraph:
    """Graph whose associated quiver is isomorphic to ``pq``'s.

    One colored vertex per bounded face (black for clockwise cycles, white
    for counterclockwise), one vertex beside each unbounded-boundary arrow
    (black when the unbounded side is to the arrow's right), edges across
    arrows plus a closed walk through the outside vertices, then every
    vertex of degree four or more is split into a trivalent tree.
    """
    failed = conditions_report(pq)
    if failed:
        raise ConditionsViolated(
            "planar quiver violates face conditions: " + ", ".join(failed)
        )
    mate = [h ^ 1 for h in range(2 * len(pq.arrow_list))]
    faces = maps.face_orbits(pq.rotation, mate)
    outer = next(f for f in faces if pq.outer in f)
    bounded = sorted((f for f in faces if f != outer), key=lambda f: f[0])
    if len(outer) < 2:
        raise ConditionsViolated("unbounded boundary is too short to encircle")

    rotations: list[list[Optional[int]]] = []
    colors: list[str] = []
    side_slot: dict[int, tuple[int, int]] = {}  # quiver end -> (vertex, slot)
    for f in bounded:
        v = len(rotations)
        rotations.append([None] * len(f))
        colors.append(BLACK if f[0] % 2 == 0 else WHITE)
        for slot, h in enumerate(reversed(f)):
            side_slot[h] = (v, slot)
    near_of: list[int] = []
    for t, h in enumerate(outer):
        v = len(rotations)
        near_of.append(v)
        rotations.append([None, None, None])  # (to-next, across, to-prev)
        colors.append(BLACK if h % 2 == 0 else WHITE)
        side_slot[h] = (v, 1)

    pairing_of: dict[tuple[int, int], int] = {}
    next_id = 0

    def wire(a: tuple[int, int], b: tuple[int, int]) -> None:
        nonlocal next_id
        ha, hb = next_id, next_id + 1
        next_id += 2
        for (v, slot), h in ((a, ha), (b, hb)):
            assert rotations[v][slot] is None
            rotations[v][slot] = h
        pairing_of[a] = ha
        pairing_of[b] = hb

    for k in range(len(pq.arrow_list)):
        wire(side_slot[2 * k], side_slot[2 * k + 1])
    m_len = len(outer)
    for t in range(m_len):
        wire((near_of[t], 0), (near_of[(t + 1) % m_len], 2))

    pairing = [0] * next_id
    for t in range(0, next_id, 2):
        pairing[t] = t + 1
        pairing[t + 1] = t
    rotation = [tuple(r) for r in rotations]  # type: ignore[arg-type]
    outer_half_edge = rotation[near_of[0]][0]

    rot_l = [list(r) for r in rotation]
    cols = list(colors)
    queue = [v for v in range(len(rot_l)) if len(rot_l[v]) >= 4]
    while queue:
        v = queue.pop(0)
        rot = rot_l[v]
        if len(rot) <= 3:
            continue
        v2 = len(rot_l)
        ha, hb = len(pairing), len(pairing) + 1
        pairing.extend([hb, ha])
        rot_l.append([hb] + rot[2:])
        cols.append(cols[v])
        rot_l[v] = [rot[0], rot[1], ha]
        if len(rot_l[v2]) >= 4:
            queue.append(v2)

    graph = PlabicGraph(
        pairing=tuple(pairing),
        rotation=tuple(tuple(r) for r in rot_l),
        colors=tuple(cols),
        boundary=(),
        outer=outer_half_edge,
    )
    graph.validate()
    return graph


def universal_plabic(n: int) -> PlabicGraph:
    """Plabic graph whose associated quiver contains the planar universal
    quiver as a full subquiver (on the faces matching its vertices)."""
    return plabic_from_quiver(augment_to_conditions(planar_universal(n)))
