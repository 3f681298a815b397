"""Exact plane drawings of quivers and crossing resolution.

A :class:`Drawing` places vertices at rational coordinates and draws each
arrow as a polyline.  All incidence decisions (crossings, touches,
degeneracies) are made in exact rational arithmetic, so a drawing that
passes :func:`detect_crossings` is certified generic: arrows meet only at
shared endpoint vertices and at finitely many transversal interior
crossing points, no three arrows concurrent.

``resolve_crossings`` replaces every crossing by a five-vertex planar
fragment (the two arrows are subdivided around the crossing point, which
becomes a shared vertex, plus two bridging arrows) and emits a
:class:`~quiverlab.constructions.RecoveryPlan` whose replay (mutate at the
fragment vertices, deleting as it goes) restores the original quiver
exactly.

``planar_universal`` draws the glued universal quiver with all base
vertices in convex position and one core copy hugging each chord, shrinking
the copies until the only crossings are the four unavoidable ones per
interleaved chord pair, then resolves them.  The result carries a rotation
system validated by the Euler formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Optional, Sequence

from .constructions import (
    GluingSpec,
    EXTENDED_SOMOS4,
    RecoveryPlan,
    RecoveryStep,
    _PlanBuilder,
    glue_universal,
)
from .errors import NonGenericDrawing
from .matrix import ExchangeMatrix, new_matrix
from . import maps

__all__ = [
    "Point",
    "DrawnArrow",
    "Drawing",
    "Crossing",
    "PlanarQuiver",
    "detect_crossings",
    "matrix_of_drawing",
    "resolve_crossings",
    "resolve_crossings_drawing",
    "universal_drawing",
    "planar_universal",
]

Point = tuple[Fraction, Fraction]


def _pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


@dataclass(frozen=True)
class DrawnArrow:
    source: int
    target: int
    waypoints: tuple[Point, ...] = ()


@dataclass(frozen=True)
class Drawing:
    """Vertex coordinates plus one polyline per arrow instance."""

    points: tuple[Point, ...]
    arrows: tuple[DrawnArrow, ...]
    labels: Optional[tuple[str, ...]] = None

    def polyline(self, aid: int) -> list[Point]:
        a = self.arrows[aid]
        return [self.points[a.source], *a.waypoints, self.points[a.target]]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v + 1)


@dataclass(frozen=True)
class Crossing:
    """Transversal interior intersection of two arrows.

    ``a_pos``/``b_pos`` locate the point along each arrow as
    ``(segment index, parameter in (0,1))``; tuple comparison orders
    crossings along an arrow.
    """

    a_arrow: int
    a_pos: tuple[int, Fraction]
    b_arrow: int
    b_pos: tuple[int, Fraction]
    point: Point


def _cross3(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _between(p: Point, a: Point, b: Point) -> bool:
    """Whether collinear ``p`` lies strictly inside segment ``ab``."""
    if a[0] != b[0]:
        lo, hi = min(a[0], b[0]), max(a[0], b[0])
        return lo < p[0] < hi
    lo, hi = min(a[1], b[1]), max(a[1], b[1])
    return lo < p[1] < hi


@dataclass(frozen=True)
class _Seg:
    aid: int
    sidx: int
    p: Point
    q: Point
    is_first: bool
    is_last: bool

    @property
    def xmin(self):
        return min(self.p[0], self.q[0])

    @property
    def xmax(self):
        return max(self.p[0], self.q[0])

    @property
    def ymin(self):
        return min(self.p[1], self.q[1])

    @property
    def ymax(self):
        return max(self.p[1], self.q[1])


def _segments(d: Drawing) -> list[_Seg]:
    segs = []
    for aid in range(len(d.arrows)):
        poly = d.polyline(aid)
        last = len(poly) - 2
        for s in range(len(poly) - 1):
            if poly[s] == poly[s + 1]:
                raise NonGenericDrawing(
                    f"arrow {aid + 1} has a zero-length segment"
                )
            segs.append(_Seg(aid, s, poly[s], poly[s + 1], s == 0, s == last))
    return segs


def _endpoint_is_terminal(seg: _Seg, p: Point) -> bool:
    """Whether ``p``, an endpoint of ``seg``, is the arrow's source or
    target vertex point (rather than an interior waypoint)."""
    return (seg.is_first and p == seg.p) or (seg.is_last and p == seg.q)


def detect_crossings(d: Drawing) -> tuple[Crossing, ...]:
    """All interior crossings, or raise :class:`NonGenericDrawing` when the
    drawing has coincidences that make crossing counts ill-defined."""
    coords = d.points
    if len(set(coords)) != len(coords):
        raise NonGenericDrawing("two vertices share coordinates")
    vertex_set = set(coords)
    for aid, arrow in enumerate(d.arrows):
        if arrow.source == arrow.target:
            raise NonGenericDrawing(f"arrow {aid + 1} is a loop")
        for w in arrow.waypoints:
            if w in vertex_set:
                raise NonGenericDrawing(
                    f"waypoint of arrow {aid + 1} sits on a vertex"
                )
    segs = _segments(d)

    # Vertices may not lie in the interior of any segment.
    for seg in segs:
        for v, p in enumerate(coords):
            if (
                seg.xmin <= p[0] <= seg.xmax
                and seg.ymin <= p[1] <= seg.ymax
                and _cross3(seg.p, seg.q, p) == 0
                and _between(p, seg.p, seg.q)
            ):
                raise NonGenericDrawing(
                    f"vertex {d.label(v)} lies on the interior of arrow "
                    f"{seg.aid + 1}"
                )

    order = sorted(range(len(segs)), key=lambda i: segs[i].xmin)
    crossings: list[Crossing] = []
    for oi, i in enumerate(order):
        s1 = segs[i]
        for j in order[oi + 1:]:
            s2 = segs[j]
            if s2.xmin > s1.xmax:
                break
            if s2.ymin > s1.ymax or s2.ymax < s1.ymin:
                continue
            if s1.aid == s2.aid and abs(s1.sidx - s2.sidx) == 1:
                continue  # consecutive pieces legitimately share a waypoint
            c = _intersect(s1, s2)
            if c is not None:
                crossings.append(c)

    by_point: dict[Point, set[int]] = {}
    for c in crossings:
        s = by_point.setdefault(c.point, set())
        s.add(c.a_arrow)
        s.add(c.b_arrow)
        if len(s) > 2:
            raise NonGenericDrawing(
                f"three arrows concurrent at {c.point}"
            )
    crossings.sort(key=lambda c: (c.a_arrow, c.a_pos, c.b_arrow, c.b_pos))
    return tuple(crossings)


def _intersect(s1: _Seg, s2: _Seg) -> Optional[Crossing]:
    a, b, c, d = s1.p, s1.q, s2.p, s2.q
    o1 = _cross3(a, b, c)
    o2 = _cross3(a, b, d)
    o3 = _cross3(c, d, a)
    o4 = _cross3(c, d, b)
    if (o1 > 0) != (o2 > 0) and o1 != 0 and o2 != 0 \
            and (o3 > 0) != (o4 > 0) and o3 != 0 and o4 != 0:
        if s1.aid == s2.aid:
            raise NonGenericDrawing(f"arrow {s1.aid + 1} crosses itself")
        t = o3 / (o3 - o4)
        u = o1 / (o1 - o2)
        point = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        first, second = (s1, t), (s2, u)
        if s2.aid < s1.aid:
            first, second = second, first
        return Crossing(
            first[0].aid,
            (first[0].sidx, first[1]),
            second[0].aid,
            (second[0].sidx, second[1]),
            point,
        )
    if o1 == 0 and o2 == 0:
        # Collinear; with zero-length segments excluded, o3 == o4 == 0 too.
        shared = {a, b} & {c, d}
        overlap = (
            _between(c, a, b)
            or _between(d, a, b)
            or _between(a, c, d)
            or _between(b, c, d)
            or len(shared) == 2
        )
        if overlap:
            raise NonGenericDrawing(
                f"arrows {s1.aid + 1} and {s2.aid + 1} overlap along a line"
            )
        if shared:
            _require_allowed_touch(s1, s2, shared.pop())
        return None
    touches = []
    if o1 == 0 and not _outside(c, a, b):
        touches.append(c)
    if o2 == 0 and not _outside(d, a, b):
        touches.append(d)
    if o3 == 0 and not _outside(a, c, d):
        touches.append(a)
    if o4 == 0 and not _outside(b, c, d):
        touches.append(b)
    for p in touches:
        if (p in (a, b)) and (p in (c, d)):
            _require_allowed_touch(s1, s2, p)
        else:
            raise NonGenericDrawing(
                f"arrow {s1.aid + 1} touches the interior of arrow "
                f"{s2.aid + 1} at {p}"
            )
    return None


def _outside(p: Point, a: Point, b: Point) -> bool:
    """Collinear ``p`` strictly outside segment ``ab``."""
    if a[0] != b[0]:
        return not (min(a[0], b[0]) <= p[0] <= max(a[0], b[0]))
    return not (min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _require_allowed_touch(s1: _Seg, s2: _Seg, p: Point) -> None:
    if s1.aid == s2.aid:
        raise NonGenericDrawing(f"arrow {s1.aid + 1} revisits a point")
    if not (_endpoint_is_terminal(s1, p) and _endpoint_is_terminal(s2, p)):
        raise NonGenericDrawing(
            f"arrows {s1.aid + 1} and {s2.aid + 1} meet at {p}, which is "
            "not a shared endpoint vertex of both"
        )


def matrix_of_drawing(d: Drawing) -> ExchangeMatrix:
    n = len(d.points)
    b = [[0] * n for _ in range(n)]
    for a in d.arrows:
        b[a.source][a.target] += 1
        b[a.target][a.source] -= 1
    return new_matrix(n, b, labels=d.labels)


def _point_at(poly: list[Point], sidx: int, t: Fraction) -> Point:
    p, q = poly[sidx], poly[sidx + 1]
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


# Offsets of the five fragment vertices within a crossing's id block:
# a/c sit on the first arrow before/after the point, d/b on the second.
_FRAG_A, _FRAG_B, _FRAG_C, _FRAG_D, _FRAG_E = range(5)
_FRAG_NAMES = ("a", "b", "c", "d", "e")


def _insert_gadgets(
    d: Drawing, crossings: Sequence[Crossing], lam: Fraction
) -> tuple[Drawing, int]:
    """Subdivide the crossing arrows and add the bridging arrows; ``lam``
    controls how tightly the new vertices hug each crossing point."""
    nv = len(d.points)
    points = list(d.points)
    labels = [d.label(v) for v in range(nv)]
    for cid, c in enumerate(crossings):
        for name in _FRAG_NAMES:
            labels.append(f"x{cid + 1}.{name}")
        points.extend([None] * 5)  # type: ignore[list-item]
        points[nv + 5 * cid + _FRAG_E] = c.point

    # Events per arrow: (position, vertex ids to insert in order).
    events: dict[int, list[tuple[tuple[int, Fraction], int, int, int]]] = {}
    for cid, c in enumerate(crossings):
        base = nv + 5 * cid
        events.setdefault(c.a_arrow, []).append(
            (c.a_pos, base + _FRAG_A, base + _FRAG_E, base + _FRAG_C)
        )
        events.setdefault(c.b_arrow, []).append(
            (c.b_pos, base + _FRAG_D, base + _FRAG_E, base + _FRAG_B)
        )

    new_arrows: list[DrawnArrow] = []
    for aid, arrow in enumerate(d.arrows):
        evs = sorted(events.get(aid, ()))
        if not evs:
            new_arrows.append(arrow)
            continue
        poly = d.polyline(aid)
        # Place the before/after vertices within each event's own segment,
        # a fraction ``lam`` of the gap toward the neighboring event (or
        # the segment boundary).
        cuts: list[tuple[tuple[int, Fraction], int]] = []
        for k, (pos, pred_id, e_id, succ_id) in enumerate(evs):
            sidx, t = pos
            prev_t = (
                evs[k - 1][0][1]
                if k > 0 and evs[k - 1][0][0] == sidx
                else Fraction(0)
            )
            next_t = (
                evs[k + 1][0][1]
                if k + 1 < len(evs) and evs[k + 1][0][0] == sidx
                else Fraction(1)
            )
            t_pred = t - (t - prev_t) * lam
            t_succ = t + (next_t - t) * lam
            points[pred_id] = _point_at(poly, sidx, t_pred)
            points[succ_id] = _point_at(poly, sidx, t_succ)
            cuts.append(((sidx, t_pred), pred_id))
            cuts.append((pos, e_id))
            cuts.append(((sidx, t_succ), succ_id))
        # Rebuild the arrow as pieces between consecutive cuts, keeping the
        # original waypoints that fall inside each piece.
        prev_vertex = arrow.source
        prev_pos = (0, Fraction(0))
        for pos, vid in cuts:
            wps = tuple(
                poly[j]
                for j in range(prev_pos[0] + 1, pos[0] + 1)
            )
            new_arrows.append(DrawnArrow(prev_vertex, vid, wps))
            prev_vertex, prev_pos = vid, pos
        wps = tuple(
            poly[j] for j in range(prev_pos[0] + 1, len(poly) - 1)
        )
        new_arrows.append(DrawnArrow(prev_vertex, arrow.target, wps))

    for cid in range(len(crossings)):
        base = nv + 5 * cid
        new_arrows.append(DrawnArrow(base + _FRAG_B, base + _FRAG_A))
        new_arrows.append(DrawnArrow(base + _FRAG_C, base + _FRAG_D))

    assert all(p is not None for p in points)
    return (
        Drawing(tuple(points), tuple(new_arrows), tuple(labels)),
        nv,
    )


def _gadget_plan(n_total: int, n_orig: int, count: int) -> RecoveryPlan:
    builder = _PlanBuilder(n_total)
    for cid in range(count):
        base = n_orig + 5 * cid
        a, b, c, d, e = (base + o for o in range(5))
        builder.step(e, [e])
        builder.step(a)
        builder.step(b, [a, b])
        builder.step(c)
        builder.step(d, [c, d])
    return builder.plan()


def resolve_crossings_drawing(
    d: Drawing,
) -> tuple[Drawing, ExchangeMatrix, RecoveryPlan]:
    """Planarize ``d``; also return the crossing-free drawing itself."""
    crossings = detect_crossings(d)
    if not crossings:
        return d, matrix_of_drawing(d), RecoveryPlan(())
    lam = Fraction(1, 3)
    for _ in range(12):
        nd, n_orig = _insert_gadgets(d, crossings, lam)
        try:
            leftover = detect_crossings(nd)
        except NonGenericDrawing:
            leftover = None
        if leftover == ():
            plan = _gadget_plan(len(nd.points), n_orig, len(crossings))
            return nd, matrix_of_drawing(nd), plan
        lam /= 4
    raise NonGenericDrawing(
        "crossing fragments could not be placed without new incidences"
    )


def resolve_crossings(d: Drawing) -> tuple[ExchangeMatrix, RecoveryPlan]:
    """Planarized quiver of ``d`` plus the plan that recovers its quiver."""
    _, m, plan = resolve_crossings_drawing(d)
    return m, plan


# --- embedded planar quivers --------------------------------------------------


def _direction_cmp(d1: Point, d2: Point) -> int:
    """Counterclockwise angular order starting just above the +x axis."""
    h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
    h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = d1[0] * d2[1] - d1[1] * d2[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


@dataclass(frozen=True)
class PlanarQuiver:
    """A quiver together with a planar embedding of its drawing.

    Arrow instance ``k`` owns half-edge ``2k`` (at its source) and
    ``2k + 1`` (at its target); ``rotation[v]`` lists the half-edges based
    at ``v`` counterclockwise, and ``outer`` is a half-edge whose face (in
    the :mod:`quiverlab.maps` convention) is the unbounded one.
    ``recovery``, when set, replays to the crossing-free quiver this one
    was derived from.
    """

    matrix: ExchangeMatrix
    arrow_list: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    outer: int
    coords: Optional[tuple[Point, ...]] = None
    recovery: Optional[RecoveryPlan] = None

    @property
    def mate(self) -> list[int]:
        return [h ^ 1 for h in range(2 * len(self.arrow_list))]

    def faces(self) -> list[tuple[int, ...]]:
        return maps.face_orbits(self.rotation, self.mate)

    def is_valid_embedding(self) -> bool:
        try:
            return maps.euler_check(self.rotation, self.mate)
        except ValueError:
            return False


def embedded_quiver_of_drawing(
    d: Drawing, recovery: Optional[RecoveryPlan] = None
) -> PlanarQuiver:
    """Rotation system of a certified crossing-free drawing, with the
    unbounded face identified by exact signed area."""
    m = matrix_of_drawing(d)
    arrow_list = tuple((a.source, a.target) for a in d.arrows)
    incident: list[list[tuple[Point, int]]] = [[] for _ in d.points]
    for k, arrow in enumerate(d.arrows):
        poly = d.polyline(k)
        tail_dir = (poly[1][0] - poly[0][0], poly[1][1] - poly[0][1])
        head_dir = (poly[-2][0] - poly[-1][0], poly[-2][1] - poly[-1][1])
        incident[arrow.source].append((tail_dir, 2 * k))
        incident[arrow.target].append((head_dir, 2 * k + 1))
    rotation = []
    for v, ends in enumerate(incident):
        ends.sort(key=cmp_to_key(lambda x, y: _direction_cmp(x[0], y[0])))
        for (d1, _), (d2, _) in zip(ends, ends[1:]):
            if _direction_cmp(d1, d2) == 0:
                raise NonGenericDrawing(
                    f"two arrows leave vertex {d.label(v)} in the same "
                    "direction"
                )
        rotation.append(tuple(h for _, h in ends))
    pq = PlanarQuiver(
        m, arrow_list, tuple(rotation), _outer_half_edge(d, rotation),
        coords=d.points, recovery=recovery,
    )
    if not pq.is_valid_embedding():
        raise NonGenericDrawing("drawing does not close into a disk/sphere map")
    return pq


def _outer_half_edge(d: Drawing, rotation: Sequence[Sequence[int]]) -> int:
    # With counterclockwise rotations and the h -> succ(mate(h)) face walk,
    # each face lies on the right of its directed boundary, so bounded faces
    # are traversed clockwise (negative shoelace) and only the unbounded
    # face accumulates positive signed area.
    mate = [h ^ 1 for h in range(2 * len(d.arrows))]
    positives = []
    for orbit in maps.face_orbits(rotation, mate):
        area2 = Fraction(0)
        for h in orbit:
            poly = d.polyline(h // 2)
            if h % 2:
                poly = poly[::-1]
            for p, q in zip(poly, poly[1:]):
                area2 += p[0] * q[1] - q[0] * p[1]
        if area2 > 0:
            positives.append(orbit)
    if len(positives) != 1:
        raise NonGenericDrawing(
            f"expected exactly one counterclockwise face, found "
            f"{len(positives)}"
        )
    return min(positives[0])


# --- the convex-position universal drawing ------------------------------------

# Template for one core copy, in chord coordinates: u sits at the origin
# (the smaller-index base vertex), v at the far chord end; the other four
# vertices huddle near u so that only the two v-arrows travel the chord.
_TEMPLATE = {
    "u": _pt(0, 0),
    "1": _pt(8, 0),
    "2": _pt(5, -1),
    "3": _pt(5, 1),
    "4": _pt(6, 0),
}
_SHORT_ARROWS = (
    ("u", "3", 1),
    ("2", "u", 1),
    ("2", "1", 1),
    ("4", "3", 1),
    ("4", "1", 1),
    ("1", "3", 2),
    ("2", "4", 2),
    ("3", "2", 3),
)
_LONG_ARROWS = (("3", "v"), ("v", "2"))


def _bend_local(src: Point, dst: Point, offset: Fraction) -> Point:
    """Waypoint bowing a parallel copy sideways, in template coordinates."""
    mx = (src[0] + dst[0]) / 2
    my = (src[1] + dst[1]) / 2
    px = -(dst[1] - src[1])
    py = dst[0] - src[0]
    return (mx + offset * px, my + offset * py)


def universal_drawing(
    n: int, eps: Fraction = Fraction(1, 64), width: Fraction = Fraction(1, 8)
) -> tuple[Drawing, dict[int, tuple[int, int]]]:
    """Drawing of the glued universal quiver with base vertices in convex
    position; returns it with a map from long-arrow instance ids to their
    base pair."""
    if n < 2:
        raise ValueError("need at least two base vertices")
    base_pts = [_pt(i, i * i) for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    points: list[Point] = list(base_pts)
    labels = [str(i + 1) for i in range(n)]
    arrows: list[DrawnArrow] = []
    long_owner: dict[int, tuple[int, int]] = {}
    for rank, (i, j) in enumerate(pairs):
        cx = base_pts[j][0] - base_pts[i][0]
        cy = base_pts[j][1] - base_pts[i][1]

        def to_global(p: Point) -> Point:
            # cluster frame: chord direction scaled by eps, perpendicular
            # additionally squeezed by ``width``
            tx, ty = p
            return (
                base_pts[i][0] + eps * (tx * cx - ty * width * cy),
                base_pts[i][1] + eps * (tx * cy + ty * width * cx),
            )

        def place(name: str) -> int:
            if name == "u":
                return i
            if name == "v":
                return j
            return n + 4 * rank + (int(name) - 1)

        for t in range(1, 5):
            points.append(to_global(_TEMPLATE[str(t)]))
            labels.append(f"({i + 1},{j + 1},{t})")
        for s, t, mult in _SHORT_ARROWS:
            sv, tv = place(s), place(t)
            for r in range(mult):
                off = (
                    Fraction(0)
                    if mult == 1
                    else (Fraction(2 * r - (mult - 1), 2)) * Fraction(1, 8)
                )
                wps = () if off == 0 else (
                    to_global(_bend_local(_TEMPLATE[s], _TEMPLATE[t], off)),
                )
                arrows.append(DrawnArrow(sv, tv, wps))
        for s, t in _LONG_ARROWS:
            long_owner[len(arrows)] = (i, j)
            arrows.append(DrawnArrow(place(s), place(t)))
    return Drawing(tuple(points), tuple(arrows), tuple(labels)), long_owner


def _interleaved(p: tuple[int, int], q: tuple[int, int]) -> bool:
    (a, b), (c, d) = p, q
    return (a < c < b < d) or (c < a < d < b)


def planar_universal(n: int) -> PlanarQuiver:
    """Planar universal quiver on ``2n^2 - n + 20*C(n,4)`` vertices.

    The embedded quiver's ``recovery`` plan replays to the crossing-free
    glued universal quiver (equal entrywise, same vertex order).
    """
    if n < 2:
        raise ValueError("need at least two base vertices")
    expected_pairs = {
        frozenset((p, q))
        for p, q in combinations(combinations(range(n), 2), 2)
        if _interleaved(tuple(p), tuple(q))
    }
    eps = Fraction(1, 64)
    width = Fraction(1, 8)
    last_error: Optional[str] = None
    for _ in range(10):
        dw, long_owner = universal_drawing(n, eps, width)
        eps /= 4
        width /= 2
        try:
            crossings = detect_crossings(dw)
        except NonGenericDrawing as e:
            last_error = str(e)
            continue
        tally: dict[frozenset, int] = {}
        ok = True
        for c in crossings:
            pa = long_owner.get(c.a_arrow)
            pb = long_owner.get(c.b_arrow)
            if pa is None or pb is None or not _interleaved(pa, pb):
                ok = False
                break
            tally[frozenset((pa, pb))] = tally.get(frozenset((pa, pb)), 0) + 1
        if not ok or set(tally) != expected_pairs or any(
            v != 4 for v in tally.values()
        ):
            last_error = "unexpected crossing pattern"
            continue
        try:
            nd, matrix, plan = resolve_crossings_drawing(dw)
            pq = embedded_quiver_of_drawing(nd, recovery=plan)
        except NonGenericDrawing as e:
            last_error = str(e)
            continue
        # The recovery plan must replay to the amalgamated quiver itself.
        from .constructions import apply_recovery

        glued = glue_universal(GluingSpec(EXTENDED_SOMOS4, n))
        recovered = apply_recovery(matrix, plan)
        if recovered.b != glued.b:
            raise AssertionError("crossing recovery altered the quiver")
        return pq
    raise NonGenericDrawing(
        f"no generic placement found for n={n}: {last_error}"
    )
