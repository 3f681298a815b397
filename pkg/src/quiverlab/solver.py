"""Schedules on the six-vertex cores and certificate-producing embeddings.

Cycling mutations over a core copy's four unmarked vertices walks the
number of arrows between the two attachment vertices through every value;
``build_schedule`` records, by direct simulation, the shortest cyclic
prefix reaching each count.  ``embed_quiver`` / ``embed_matrix`` run one
schedule per vertex pair of a glued universal object so that restricting
to the base vertices reproduces a requested target exactly; the result is
packaged as a replayable :class:`EmbeddingCertificate` and re-verified
before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .constructions import (
    CORE_MARKED,
    GluingSpec,
    core_by_name,
    d_universal_matrix,
    glue_universal,
    pair_copy_indices,
)
from .errors import (
    QuiverLabError,
    SymmetrizerMismatch,
    TargetUnreachable,
)
from .matrix import (
    ExchangeMatrix,
    MutationSequence,
    Symmetrizer,
    h_factor,
    mutate_seq,
)

__all__ = [
    "CORE_PERIODS",
    "CYCLIC_ORDERS",
    "ScheduleTable",
    "EmbeddingCertificate",
    "VerificationResult",
    "build_schedule",
    "embed_quiver",
    "embed_matrix",
    "verify_certificate",
]

#: Cyclic mutation orders over the four unmarked core vertices, given as
#: positions 0..3 (position t-1 is the copy vertex labeled t).
CYCLIC_ORDERS = {
    ("somos", "v_to_u"): (0, 1, 2, 3),
    ("somos", "u_to_v"): (3, 2, 1, 0),
    ("double4", "u_to_v"): (0, 2, 1, 3),
    ("double4", "v_to_u"): (3, 1, 2, 0),
}

#: (period, gain): cycling a full period returns the core to its original
#: entries plus ``gain`` extra arrows in the schedule's direction.
CORE_PERIODS = {"somos": (60, 8), "double4": (4, 4)}


@dataclass(frozen=True)
class ScheduleTable:
    """First-hit table: ``stops[m]`` is the length of the shortest cyclic
    prefix after which exactly ``m`` arrows run in ``direction`` between
    the two attachment vertices."""

    core: str
    direction: str
    stops: tuple[int, ...]

    def prefix(self, m: int) -> tuple[int, ...]:
        """Unmarked-vertex positions (0..3) to mutate, in order, to reach
        exactly ``m`` arrows."""
        order = CYCLIC_ORDERS[(self.core, self.direction)]
        return tuple(order[s % 4] for s in range(self.stops[m]))


def _marked_entry(m: ExchangeMatrix, direction: str) -> int:
    """Signed arrow count between the core's marked vertices u and v,
    positive in the direction named."""
    u, v = CORE_MARKED
    return m.b[v][u] if direction == "v_to_u" else m.b[u][v]


def build_schedule(core: str, direction: str, max_m: int) -> ScheduleTable:
    """Simulate the cyclic mutation order on a fresh core and record the
    first step at which each arrow count ``0..max_m`` is hit."""
    if max_m < 0:
        raise ValueError("max_m must be >= 0")
    if (core, direction) not in CYCLIC_ORDERS:
        raise ValueError(f"unknown schedule {core!r}/{direction!r}")
    base = core_by_name(core)
    order = CYCLIC_ORDERS[(core, direction)]
    period, gain = CORE_PERIODS[core]
    bound = period * (max_m // gain + 2)
    stops: dict[int, int] = {}
    state = base
    step = 0
    while len(stops) <= max_m and step <= bound:
        count = _marked_entry(state, direction)
        if 0 <= count <= max_m and count not in stops:
            stops[count] = step
        # Unmarked core vertices occupy indices 0..3, so positions are
        # core indices directly.
        state = state.mutate(order[step % 4])
        step += 1
    for m in range(max_m + 1):
        if m not in stops:
            raise TargetUnreachable(
                m, f"not reached within {bound} steps of the {core} cycle"
            )
    return ScheduleTable(core, direction, tuple(stops[m] for m in range(max_m + 1)))


@dataclass(frozen=True)
class EmbeddingCertificate:
    """A replayable witness: mutating ``universal`` along ``seq`` and
    restricting to ``base_indices`` must reproduce ``target`` entrywise."""

    universal: ExchangeMatrix
    seq: MutationSequence
    base_indices: tuple[int, ...]
    target: ExchangeMatrix


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of :func:`verify_certificate`; truthy iff the replay matched."""

    ok: bool
    diff: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _schedule_tables(core: str, max_m: int) -> dict[str, ScheduleTable]:
    return {
        d: build_schedule(core, d, max_m) for d in ("u_to_v", "v_to_u")
    }


def _pair_sequence(
    spec: GluingSpec,
    tables: dict[str, ScheduleTable],
    i: int,
    j: int,
    needed: int,
) -> list[int]:
    """Mutation indices realizing ``needed`` arrows from base ``i`` to
    base ``j`` (negative: the other way), using only pair (i, j)'s copy."""
    flipped = (i, j) in spec.flipped_pairs
    # With u attached to i, arrows i -> j count in the u -> v direction.
    direction = "u_to_v" if (needed > 0) != flipped else "v_to_u"
    copy = pair_copy_indices(spec, i, j)
    return [copy[t] for t in tables[direction].prefix(abs(needed))]


def _assert_block_independence(
    spec: GluingSpec, final: ExchangeMatrix
) -> None:
    """Mutations inside one pair's copy must never create entries that
    connect it to another copy or to a base vertex outside its own pair."""
    n = spec.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    copies = {p: pair_copy_indices(spec, *p) for p in pairs}
    for p in pairs:
        others = set(range(n)) - set(p)
        for q in pairs:
            if q <= p:
                continue
            for x in copies[p]:
                for y in copies[q]:
                    if final.b[x][y] or final.b[y][x]:
                        raise AssertionError(
                            f"blocks {p} and {q} interact at ({x}, {y})"
                        )
        for x in copies[p]:
            for y in others:
                if final.b[x][y] or final.b[y][x]:
                    raise AssertionError(
                        f"block {p} leaks to base vertex {y + 1}"
                    )


def _check_target(target: ExchangeMatrix) -> None:
    if target.frozen:
        raise ValueError("target must not have frozen vertices")
    if target.n < 2:
        raise ValueError("target needs at least two vertices")


def _finish_certificate(
    spec: GluingSpec,
    universal: ExchangeMatrix,
    steps: list[int],
    target: ExchangeMatrix,
    provenance: str,
) -> EmbeddingCertificate:
    seq = MutationSequence(tuple(steps), provenance)
    base = tuple(range(target.n))
    final = mutate_seq(universal, seq)
    _assert_block_independence(spec, final)
    got = final.restrict(base)
    if got != target:
        raise AssertionError("schedule replay failed to reproduce the target")
    return EmbeddingCertificate(universal, seq, base, target)


def embed_quiver(
    target: ExchangeMatrix,
    core: str = "somos",
    flipped_pairs: Iterable[tuple[int, int]] = (),
) -> EmbeddingCertificate:
    """Certificate embedding a skew-symmetric ``target`` as the base
    principal submatrix of the glued universal quiver over ``core``."""
    _check_target(target)
    if not target.is_skew_symmetric():
        raise ValueError("target must be skew-symmetric")
    n = target.n
    spec = GluingSpec(core_by_name(core), n, flipped_pairs=frozenset(flipped_pairs))
    universal = glue_universal(spec)
    max_m = max(
        (abs(target.b[i][j]) for i in range(n) for j in range(i + 1, n)),
        default=0,
    )
    tables = _schedule_tables(core, max_m)
    steps: list[int] = []
    for i in range(n):
        for j in range(i + 1, n):
            steps.extend(_pair_sequence(spec, tables, i, j, target.b[i][j]))
    return _finish_certificate(
        spec, universal, steps, target, f"embed_quiver[{core}]"
    )


def embed_matrix(
    target: ExchangeMatrix, d: Symmetrizer | Iterable[int]
) -> EmbeddingCertificate:
    """Certificate embedding a skew-symmetrizable ``target`` with
    symmetrizer ``d`` into the matching rescaled universal matrix.

    The per-pair arrow requirement is ``b_ij / h_factor(d, i, j)``, an
    integer whenever ``d`` really symmetrizes the target; the quiver-case
    schedule indices are then replayed unchanged on the rescaled copy.
    """
    _check_target(target)
    d = Symmetrizer(tuple(int(x) for x in d))
    n = target.n
    if len(d.d) != n:
        raise SymmetrizerMismatch(
            f"diagonal has {len(d.d)} entries for a {n}-vertex target"
        )
    if not d.is_valid_for(target):
        raise SymmetrizerMismatch(
            "diagonal does not symmetrize the target: need "
            "d[i]*b[i][j] == -d[j]*b[j][i] for all pairs"
        )
    spec = GluingSpec(core_by_name("somos"), n)
    universal = d_universal_matrix(d)
    needs: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(i + 1, n):
            k, rem = divmod(target.b[i][j], h_factor(d, i, j))
            if rem:
                raise AssertionError(
                    "entry not divisible by its scale factor despite a "
                    "valid symmetrizer"
                )
            needs[(i, j)] = k
    max_m = max((abs(k) for k in needs.values()), default=0)
    tables = _schedule_tables("somos", max_m)
    steps: list[int] = []
    for i in range(n):
        for j in range(i + 1, n):
            steps.extend(_pair_sequence(spec, tables, i, j, needs[(i, j)]))
    return _finish_certificate(
        spec, universal, steps, target, "embed_matrix[somos]"
    )


def verify_certificate(c: EmbeddingCertificate) -> VerificationResult:
    """Replay ``c`` and compare with its target; never raises."""
    diff: list[str] = []
    try:
        final = mutate_seq(c.universal, c.seq)
        got = final.restrict(c.base_indices)
    except QuiverLabError as e:
        return VerificationResult(False, (f"replay failed: {e}",))
    t = c.target
    if got.n != t.n:
        return VerificationResult(
            False,
            (f"restriction has {got.n} vertices, target has {t.n}",),
        )
    for i in range(t.n):
        for j in range(t.n):
            if got.b[i][j] != t.b[i][j]:
                diff.append(
                    f"b[{i + 1}][{j + 1}]: replay gives {got.b[i][j]}, "
                    f"target has {t.b[i][j]}"
                )
    if got.frozen != t.frozen:
        diff.append(
            f"frozen sets differ: replay {sorted(v + 1 for v in got.frozen)}, "
            f"target {sorted(v + 1 for v in t.frozen)}"
        )
    if len(diff) > 20:
        diff = diff[:20] + [f"... and {len(diff) - 20} more differences"]
    return VerificationResult(not diff, tuple(diff))
