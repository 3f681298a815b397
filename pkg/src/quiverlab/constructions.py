"""Named quivers, amalgamated universal objects, and degree reduction.

The two six-vertex cores are transcribed as explicit arrow lists and
cross-checked at import time: the first against a hard-coded entry table,
the second against a checksum of its arrow list.  ``glue_universal`` joins
one core copy per vertex pair of a base set, which is how the universal
quivers here are produced; ``d_universal_matrix`` is the skew-symmetrizable
variant obtained by rescaling each copy's columns at its two attachment
vertices.  ``degree3_reduce`` rebuilds a quiver so that every vertex meets
at most three arrows, emitting a replayable plan that recovers the input.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional

from .errors import (
    BadParameters,
    HasSourceOrSink,
    InvalidSpec,
    UnknownName,
)
from .matrix import (
    ExchangeMatrix,
    Symmetrizer,
    h_factor,
    new_matrix,
)

__all__ = [
    "EXTENDED_SOMOS4",
    "DOUBLE_FOUR_CYCLE",
    "CORE_MARKED",
    "GluingSpec",
    "RecoveryStep",
    "RecoveryPlan",
    "named_quiver",
    "core_by_name",
    "glue_universal",
    "d_universal_matrix",
    "d_universal_symmetrizer",
    "degree3_reduce",
    "apply_recovery",
    "pair_copy_indices",
]

_CORE_LABELS = ("1", "2", "3", "4", "u", "v")

#: Index positions of the two attachment vertices (u, v) in both cores.
CORE_MARKED = (4, 5)

# Arrow lists as (source, target, multiplicity) over indices (1,2,3,4,u,v).
_SOMOS_ARROWS = (
    (0, 2, 2),
    (1, 0, 1),
    (1, 3, 2),
    (1, 4, 1),
    (2, 1, 3),
    (2, 5, 1),
    (3, 0, 1),
    (3, 2, 1),
    (4, 2, 1),
    (5, 1, 1),
)

# Independent transcription of the same core as a full entry table, used to
# cross-check the arrow list above.
_SOMOS_TABLE = (
    (0, -1, 2, -1, 0, 0),
    (1, 0, -3, 2, 1, -1),
    (-2, 3, 0, -1, -1, 1),
    (1, -2, 1, 0, 0, 0),
    (0, -1, 1, 0, 0, 0),
    (0, 1, -1, 0, 0, 0),
)

_DOUBLE4_ARROWS = (
    (0, 1, 2), (0, 5, 1),
    (1, 2, 2), (1, 4, 1),
    (2, 3, 2), (2, 5, 1),
    (3, 0, 2), (3, 4, 1),
    (4, 0, 1), (4, 2, 1),
    (5, 1, 1), (5, 3, 1),
)

_DOUBLE4_SHA256 = "b387c949b18f77b84a02b74db2dc86f33be5769fa85747480c5af31ff586d1fd"


def _matrix_from_arrows(n: int, arrows, labels=None) -> ExchangeMatrix:
    b = [[0] * n for _ in range(n)]
    for s, t, mult in arrows:
        b[s][t] += mult
        b[t][s] -= mult
    return new_matrix(n, b, labels=labels)


def _build_cores() -> tuple[ExchangeMatrix, ExchangeMatrix]:
    somos = _matrix_from_arrows(6, _SOMOS_ARROWS, labels=_CORE_LABELS)
    if somos.b != _SOMOS_TABLE:
        raise RuntimeError("six-vertex core transcription mismatch (somos)")
    digest = hashlib.sha256(repr(_DOUBLE4_ARROWS).encode()).hexdigest()
    if digest != _DOUBLE4_SHA256:
        raise RuntimeError("six-vertex core transcription mismatch (double cycle)")
    double4 = _matrix_from_arrows(6, _DOUBLE4_ARROWS, labels=_CORE_LABELS)
    return somos, double4


EXTENDED_SOMOS4, DOUBLE_FOUR_CYCLE = _build_cores()

_MARKOV = new_matrix(3, [[0, 2, -2], [-2, 0, 2], [2, -2, 0]])
_TWO_UNIVERSAL_3 = new_matrix(3, [[0, 1, 0], [-1, 0, 2], [0, -2, 0]])


def _grid(k: int, ell: int) -> ExchangeMatrix:
    n = k * ell
    b = [[0] * n for _ in range(n)]
    labels = []
    for r in range(k):
        for c in range(ell):
            labels.append(f"({r + 1},{c + 1})")
    for r in range(k):
        for c in range(ell):
            a = r * ell + c
            if c + 1 < ell:
                right = a + 1
                # Horizontal edges point away from the even-parity endpoint.
                if (r + c) % 2 == 0:
                    b[a][right] += 1
                    b[right][a] -= 1
                else:
                    b[right][a] += 1
                    b[a][right] -= 1
            if r + 1 < k:
                below = a + ell
                # Vertical edges point away from the odd-parity endpoint.
                if (r + c) % 2 == 1:
                    b[a][below] += 1
                    b[below][a] -= 1
                else:
                    b[below][a] += 1
                    b[a][below] -= 1
    return new_matrix(n, b, labels=labels)


def named_quiver(
    name: str,
    *,
    k: Optional[int] = None,
    ell: Optional[int] = None,
    m: Optional[int] = None,
) -> ExchangeMatrix:
    """Look up a fixed construction by name.

    ``grid`` takes ``k`` and ``ell`` (both >= 1); ``kronecker`` takes the
    arrow multiplicity ``m`` (>= 1); no other name accepts parameters.
    """
    params = {"k": k, "ell": ell, "m": m}
    given = {key for key, val in params.items() if val is not None}

    def require(*names: str):
        needed = set(names)
        if given != needed:
            raise BadParameters(
                f"construction {name!r} takes parameters "
                f"{sorted(needed) or 'none'}, got {sorted(given) or 'none'}"
            )

    if name == "extended_somos4":
        require()
        return EXTENDED_SOMOS4
    if name == "double_four_cycle":
        require()
        return DOUBLE_FOUR_CYCLE
    if name == "markov":
        require()
        return _MARKOV
    if name == "two_universal_3":
        require()
        return _TWO_UNIVERSAL_3
    if name == "grid":
        require("k", "ell")
        assert k is not None and ell is not None
        if k < 1 or ell < 1:
            raise BadParameters("grid dimensions must be >= 1")
        return _grid(k, ell)
    if name == "kronecker":
        require("m")
        assert m is not None
        if m < 1:
            raise BadParameters("kronecker multiplicity must be >= 1")
        return new_matrix(2, [[0, m], [-m, 0]])
    raise UnknownName(f"unknown construction {name!r}")


def core_by_name(core: str) -> ExchangeMatrix:
    """Resolve the short core names used by the solver and the CLI."""
    if core == "somos":
        return EXTENDED_SOMOS4
    if core == "double4":
        return DOUBLE_FOUR_CYCLE
    raise UnknownName(f"unknown core {core!r} (expected 'somos' or 'double4')")


@dataclass(frozen=True)
class GluingSpec:
    """How to amalgamate one core copy per pair of ``n`` base vertices.

    ``marked`` names the core's two attachment vertices ``(u, v)``.  By
    default ``u`` attaches to the smaller base index of each pair; pairs in
    ``flipped_pairs`` attach the other way around.
    """

    core: ExchangeMatrix
    n: int
    marked: tuple[int, int] = CORE_MARKED
    flipped_pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        core = self.core
        if not isinstance(core, ExchangeMatrix):
            raise InvalidSpec("core must be an ExchangeMatrix")
        u, v = self.marked
        if not (0 <= u < core.n and 0 <= v < core.n):
            raise InvalidSpec(
                f"marked vertices {u + 1}, {v + 1} out of range for a "
                f"{core.n}-vertex core"
            )
        if u == v:
            raise InvalidSpec("the two marked vertices must be distinct")
        if core.frozen:
            raise InvalidSpec("core must not have frozen vertices")
        if self.n < 2:
            raise InvalidSpec("need at least two base vertices")
        object.__setattr__(
            self, "flipped_pairs", frozenset(tuple(p) for p in self.flipped_pairs)
        )
        for pair in self.flipped_pairs:
            if (
                len(pair) != 2
                or not 0 <= pair[0] < pair[1] < self.n
            ):
                raise InvalidSpec(
                    f"orientation override {pair!r} is not a base pair (i, j) "
                    "with i < j"
                )


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def pair_copy_indices(spec: GluingSpec, i: int, j: int) -> list[int]:
    """Global indices of the copy vertices for base pair ``(i, j)``, i < j,
    in core order (so position ``t-1`` is the copy vertex labeled ``t``)."""
    if not 0 <= i < j < spec.n:
        raise InvalidSpec(f"({i + 1}, {j + 1}) is not a base pair with i < j")
    per = spec.core.n - 2
    rank = _pairs(spec.n).index((i, j))
    return [spec.n + per * rank + s for s in range(per)]


def glue_universal(spec: GluingSpec) -> ExchangeMatrix:
    """Amalgamate one copy of the core per base pair.

    Base vertices keep indices ``0..n-1`` (labels ``"1".."n"``); the copy
    for pair ``(i, j)`` contributes its unmarked vertices, labeled
    ``"(i,j,t)"`` with 1-based ``i``, ``j`` and ``t`` numbering the unmarked
    core vertices in core order.  Entries between unmarked vertices of
    distinct copies are zero by construction.
    """
    core, n = spec.core, spec.n
    u_mk, v_mk = spec.marked
    per = core.n - 2
    unmarked = [x for x in range(core.n) if x not in (u_mk, v_mk)]
    pairs = _pairs(n)
    total = n + per * len(pairs)
    b = [[0] * total for _ in range(total)]
    labels = [str(i + 1) for i in range(n)]
    for rank, (i, j) in enumerate(pairs):
        labels.extend(f"({i + 1},{j + 1},{t + 1})" for t in range(per))
        flipped = (i, j) in spec.flipped_pairs
        glob = {u_mk: j if flipped else i, v_mk: i if flipped else j}
        for s, x in enumerate(unmarked):
            glob[x] = n + per * rank + s
        for x in range(core.n):
            row = core.b[x]
            gx = glob[x]
            for y in range(core.n):
                if row[y]:
                    b[gx][glob[y]] += row[y]
    return new_matrix(total, b, labels=labels)


def d_universal_matrix(d: Symmetrizer | Iterable[int]) -> ExchangeMatrix:
    """Skew-symmetrizable analogue of the glued universal quiver.

    Starting from the glued extended-Somos-4 quiver on ``n = len(d)`` base
    vertices, the two base-vertex columns of each pair copy are rescaled:
    entries from copy ``(i, j)`` into base ``i`` by ``h_factor(d, j, i)``
    and into base ``j`` by ``h_factor(d, i, j)``.  The result admits the
    symmetrizer returned by :func:`d_universal_symmetrizer`.
    """
    d = tuple(int(x) for x in d)
    n = len(d)
    if n < 2:
        raise ValueError("need at least two diagonal entries")
    if any(x <= 0 for x in d):
        raise ValueError("diagonal entries must be positive")
    spec = GluingSpec(EXTENDED_SOMOS4, n)
    glued = glue_universal(spec)
    b = [list(row) for row in glued.b]
    for i, j in _pairs(n):
        scale_i = h_factor(d, j, i)
        scale_j = h_factor(d, i, j)
        for x in pair_copy_indices(spec, i, j):
            b[x][i] *= scale_i
            b[x][j] *= scale_j
    return new_matrix(glued.n, b, labels=glued.labels)


def d_universal_symmetrizer(d: Symmetrizer | Iterable[int]) -> Symmetrizer:
    """The valid (not necessarily minimal) symmetrizer that pairs with
    :func:`d_universal_matrix`: ``d_i`` on base vertex ``i`` and
    ``gcd(d_i, d_j)`` on every copy vertex of pair ``(i, j)``."""
    d = tuple(int(x) for x in d)
    out = list(d)
    for i, j in _pairs(len(d)):
        out.extend([gcd(d[i], d[j])] * 4)
    return Symmetrizer(tuple(out))


@dataclass(frozen=True)
class RecoveryStep:
    """Mutate at ``mutate_at``, then drop the vertices in ``delete_after``.

    Both fields are indices into the matrix as it exists when the step
    runs, i.e. after all earlier steps' deletions.
    """

    mutate_at: int
    delete_after: tuple[int, ...] = ()


@dataclass(frozen=True)
class RecoveryPlan:
    """Ordered steps that undo a construction when replayed with
    :func:`apply_recovery`."""

    steps: tuple[RecoveryStep, ...]

    def __len__(self) -> int:
        return len(self.steps)


def apply_recovery(m: ExchangeMatrix, plan: RecoveryPlan) -> ExchangeMatrix:
    """Replay ``plan`` on ``m``: mutate, then restrict away deleted indices."""
    for step in plan.steps:
        m = m.mutate(step.mutate_at)
        if step.delete_after:
            drop = set(step.delete_after)
            m = m.restrict(i for i in range(m.n) if i not in drop)
    return m


class _PlanBuilder:
    """Accumulates (mutate at vertex-id, delete vertex-ids) steps expressed
    in stable ids, and converts them to current-matrix indices by simulating
    the deletions."""

    def __init__(self, total: int):
        self._alive = list(range(total))
        self._steps: list[RecoveryStep] = []

    def step(self, mutate_id: int, delete_ids: Iterable[int] = ()):
        cur = self._alive.index(mutate_id)
        deletes = tuple(sorted(self._alive.index(x) for x in delete_ids))
        self._steps.append(RecoveryStep(cur, deletes))
        for x in delete_ids:
            self._alive.remove(x)

    def plan(self) -> RecoveryPlan:
        return RecoveryPlan(tuple(self._steps))


def degree3_reduce(m: ExchangeMatrix) -> tuple[ExchangeMatrix, RecoveryPlan]:
    """Rebuild ``m`` so every vertex meets at most three arrows.

    Each vertex with ``p`` incoming and ``q`` outgoing arrows becomes a
    directed path of ``p + q - 1`` vertices; the original arrows attach one
    per path vertex (the two chain ends each absorb one extra).  The total
    is ``2r - n`` vertices for ``r`` arrows.  Replaying the returned plan
    (mutate at a chain vertex, then delete it, working inward) restores a
    matrix equal to ``m``.
    """
    if m.frozen:
        raise ValueError("input must not have frozen vertices")
    if not m.is_skew_symmetric():
        raise ValueError("input must be skew-symmetric")
    n = m.n
    indeg = [0] * n
    outdeg = [0] * n
    for i in range(n):
        for j in range(n):
            if m.b[i][j] > 0:
                outdeg[i] += m.b[i][j]
                indeg[j] += m.b[i][j]
    for v in range(n):
        if indeg[v] == 0 or outdeg[v] == 0:
            kind = "source" if indeg[v] == 0 else "sink"
            if indeg[v] == 0 and outdeg[v] == 0:
                kind = "isolated vertex"
            raise HasSourceOrSink(f"vertex {m.label(v)} is a {kind}")

    # Spine vertices per original vertex, in arrow direction: the incoming
    # chain, the center, then the outgoing chain.
    total = 0
    spine: list[list[int]] = []
    center: list[int] = []
    labels: list[str] = []
    for v in range(n):
        count = indeg[v] + outdeg[v] - 1
        ids = list(range(total, total + count))
        total += count
        spine.append(ids)
        center.append(ids[indeg[v] - 1])
        labels.extend(f"{m.label(v)}.{s + 1}" for s in range(count))

    b = [[0] * total for _ in range(total)]

    def add(src: int, dst: int):
        b[src][dst] += 1
        b[dst][src] -= 1

    for v in range(n):
        for a, c in zip(spine[v], spine[v][1:]):
            add(a, c)

    # Slot lists: position k holds the k-th incoming/outgoing arrow of v in
    # (source, target, copy) index order.
    in_slots: list[list[int]] = []
    out_slots: list[list[int]] = []
    for v in range(n):
        ids = spine[v]
        chain_in = ids[: indeg[v] - 1]
        chain_out = ids[indeg[v]:]
        in_slots.append((chain_in or [center[v]]) + chain_in[:1])
        out_slots.append(list(reversed(chain_out)) or [center[v]])
        out_slots[v] += [ids[-1]] if chain_out else []

    # Wire original arrows into slots, consuming each vertex's slots in
    # index order of the opposite endpoint.
    next_in = [0] * n
    next_out = [0] * n
    for x in range(n):
        for y in range(n):
            mult = m.b[x][y]
            if mult > 0:
                for _ in range(mult):
                    add(out_slots[x][next_out[x]], in_slots[y][next_in[y]])
                    next_out[x] += 1
                    next_in[y] += 1

    reduced = new_matrix(total, b, labels=labels)

    builder = _PlanBuilder(total)
    for v in range(n):
        ids = spine[v]
        chain_in = ids[: indeg[v] - 1]
        chain_out = ids[indeg[v]:]
        for x in reversed(chain_in):
            builder.step(x, [x])
        for x in chain_out:
            builder.step(x, [x])
    return reduced, builder.plan()
