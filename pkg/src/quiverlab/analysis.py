"""Mutation-class exploration, multiplicity probing, and sign-coherence runs.

Exploration is breadth-first over canonical forms: states are deduplicated
by :func:`quiverlab.canonical.canonical_key` (full keys are stored, so hash
collisions are verified by byte comparison), neighbors are generated by
mutating at every movable vertex in ascending order, and budgets make every
run deterministic and honestly reported — a failed bounded probe is
reported as budget exhaustion, never as nonexistence.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .canonical import canonical_key, is_isomorphic
from .matrix import ExchangeMatrix, MutationSequence, framed

__all__ = [
    "ClassReport",
    "SignCoherenceViolation",
    "SignCoherenceReport",
    "mutation_class_bfs",
    "probe_two_universal",
    "check_sign_coherence",
    "find_full_subquiver",
    "c_vector_matrix",
]


@dataclass(frozen=True)
class ClassReport:
    """Result of a bounded breadth-first mutation-class exploration.

    ``exhausted`` is True only when the frontier emptied with every state
    expanded within budget; in that case ``size`` is the exact number of
    isomorphism classes in the mutation class.
    """

    seed: ExchangeMatrix
    size: int
    exhausted: bool
    max_multiplicity: int
    depth_reached: int
    nodes_used: int
    edges_used: int
    max_nodes: int
    max_depth: int


def _movable(m: ExchangeMatrix) -> list[int]:
    return [v for v in range(m.n) if v not in m.frozen]


def _max_mult(m: ExchangeMatrix) -> int:
    return max((abs(x) for row in m.b for x in row), default=0)


def mutation_class_bfs(
    m: ExchangeMatrix, budget: tuple[int, int]
) -> ClassReport:
    """Explore the mutation class of ``m`` breadth-first up to
    ``budget = (max_nodes, max_depth)``."""
    max_nodes, max_depth = budget
    if max_nodes < 1 or max_depth < 0:
        raise ValueError("budget must allow at least one node and depth >= 0")
    start = canonical_key(m)
    visited = {start}
    queue: deque[tuple[ExchangeMatrix, int]] = deque([(m, 0)])
    moves = _movable(m)
    max_mult = _max_mult(m)
    depth_reached = 0
    edges = 0
    exhausted = True
    while queue:
        state, depth = queue.popleft()
        if depth >= max_depth:
            # Unexpanded frontier at the depth limit: only exhausted if
            # nothing new could lie beyond, which we cannot know.
            exhausted = False
            continue
        for k in moves:
            child = state.mutate(k)
            edges += 1
            key = canonical_key(child)
            if key in visited:
                continue
            if len(visited) >= max_nodes:
                exhausted = False
                continue
            visited.add(key)
            max_mult = max(max_mult, _max_mult(child))
            depth_reached = max(depth_reached, depth + 1)
            queue.append((child, depth + 1))
    return ClassReport(
        seed=m,
        size=len(visited),
        exhausted=exhausted,
        max_multiplicity=max_mult,
        depth_reached=depth_reached,
        nodes_used=len(visited),
        edges_used=edges,
        max_nodes=max_nodes,
        max_depth=max_depth,
    )


def probe_two_universal(
    m: ExchangeMatrix,
    max_depth: int,
    target_mult: int,
    max_nodes: Optional[int] = None,
) -> Optional[MutationSequence]:
    """Shortest mutation sequence (within ``max_depth``) reaching a state
    with some ``|b_ij| >= target_mult``, or ``None`` when the bounded
    search saw no such state.  ``None`` never means nonexistence: the
    caller must treat it as budget exhaustion."""
    if _max_mult(m) >= target_mult:
        return MutationSequence((), "probe_two_universal")
    start = canonical_key(m)
    visited = {start}
    queue: deque[tuple[ExchangeMatrix, list[int], int]] = deque([(m, [], 0)])
    moves = _movable(m)
    while queue:
        state, path, depth = queue.popleft()
        if depth >= max_depth:
            continue
        for k in moves:
            child = state.mutate(k)
            if _max_mult(child) >= target_mult:
                return MutationSequence(tuple(path + [k]), "probe_two_universal")
            key = canonical_key(child)
            if key in visited:
                continue
            if max_nodes is not None and len(visited) >= max_nodes:
                continue
            visited.add(key)
            queue.append((child, path + [k], depth + 1))
    return None


def c_vector_matrix(framed_m: ExchangeMatrix) -> tuple[tuple[int, ...], ...]:
    """Block of entries from frozen rows into movable columns; column ``j``
    is the c-vector of the ``j``-th movable vertex."""
    rows = sorted(framed_m.frozen)
    cols = _movable(framed_m)
    return tuple(
        tuple(framed_m.b[r][c] for c in cols) for r in rows
    )


@dataclass(frozen=True)
class SignCoherenceViolation:
    sequence: tuple[int, ...]
    kind: str
    detail: str


@dataclass(frozen=True)
class SignCoherenceReport:
    trials: int
    max_len: int
    rng_seed: int
    states_checked: int
    violations: tuple[SignCoherenceViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def _coherence_violation(
    state: ExchangeMatrix, seq: list[int]
) -> Optional[SignCoherenceViolation]:
    frozen = sorted(state.frozen)
    for a in frozen:
        for b in frozen:
            if state.b[a][b] > 0:
                return SignCoherenceViolation(
                    tuple(seq),
                    "frozen-frozen-arrow",
                    f"b[{a + 1}][{b + 1}] = {state.b[a][b]}",
                )
    cvm = c_vector_matrix(state)
    cols = _movable(state)
    for idx, j in enumerate(cols):
        col = [row[idx] for row in cvm]
        if any(x > 0 for x in col) and any(x < 0 for x in col):
            return SignCoherenceViolation(
                tuple(seq),
                "mixed-sign-column",
                f"c-vector of vertex {j + 1} mixes signs: {col}",
            )
    return None


def check_sign_coherence(
    m: ExchangeMatrix, trials: int, max_len: int, rng_seed: int
) -> SignCoherenceReport:
    """Frame ``m`` and hammer it with random movable-vertex mutation
    sequences, checking after every step that no arrow joins two frozen
    vertices and that every c-vector column is of one sign.

    Violations are collected, not raised — none are expected.
    """
    base = framed(m)
    rng = random.Random(rng_seed)
    moves = _movable(base)
    violations: list[SignCoherenceViolation] = []
    checked = 1
    v0 = _coherence_violation(base, [])
    if v0 is not None:
        violations.append(v0)
    for _ in range(trials):
        state = base
        seq: list[int] = []
        length = rng.randint(0, max_len)
        for _ in range(length):
            k = rng.choice(moves)
            seq.append(k)
            state = state.mutate(k)
            checked += 1
            v = _coherence_violation(state, seq)
            if v is not None:
                violations.append(v)
                break
    return SignCoherenceReport(
        trials=trials,
        max_len=max_len,
        rng_seed=rng_seed,
        states_checked=checked,
        violations=tuple(violations),
    )


def find_full_subquiver(
    haystack: ExchangeMatrix, needle: ExchangeMatrix
) -> Optional[tuple[int, ...]]:
    """Indices ``I`` (ascending) with ``restrict(haystack, I)`` isomorphic
    to ``needle``, or ``None``.  Exact backtracking search; frozen vertices
    must map to frozen vertices."""
    if needle.n > haystack.n:
        return None
    hn, nn = haystack.n, needle.n
    hb, nb = haystack.b, needle.b

    # Assign needle vertices in descending-connectivity order for pruning.
    nbr_count = [
        sum(1 for j in range(nn) if nb[v][j] or nb[j][v]) for v in range(nn)
    ]
    order = sorted(range(nn), key=lambda v: (-nbr_count[v], v))
    assigned: dict[int, int] = {}
    used = [False] * hn

    def fits(v: int, w: int) -> bool:
        if (v in needle.frozen) != (w in haystack.frozen):
            return False
        for v2, w2 in assigned.items():
            if nb[v][v2] != hb[w][w2] or nb[v2][v] != hb[w2][w]:
                return False
        return True

    def backtrack(pos: int) -> bool:
        if pos == nn:
            return True
        v = order[pos]
        for w in range(hn):
            if used[w] or not fits(v, w):
                continue
            assigned[v] = w
            used[w] = True
            if backtrack(pos + 1):
                return True
            del assigned[v]
            used[w] = False
        return False

    if not backtrack(0):
        return None
    found = tuple(sorted(assigned.values()))
    # The map found is entrywise; double-check the restriction is
    # isomorphic as promised.
    assert is_isomorphic(haystack.restrict(found), needle) is not None
    return found
