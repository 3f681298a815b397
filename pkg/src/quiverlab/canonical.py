"""Canonical forms and isomorphism testing for exchange matrices.

Two matrices are isomorphic when some bijection of vertices carries one
entry table onto the other and preserves the frozen set.  We compute a
canonical relabeling by iterated partition refinement followed by
backtracking individualization, and take the lexicographically smallest
``(frozen flags, flattened entries)`` over all discrete partitions the
search produces.  ``canonical_key`` is a stable byte string usable as a
dictionary key for mutation-class exploration, and ``is_isomorphic``
produces an explicit witnessing permutation.
"""

from __future__ import annotations

from typing import Optional

from .errors import SizeMismatch
from .matrix import ExchangeMatrix

__all__ = ["canonical_form", "canonical_key", "is_isomorphic"]


def _refine(b, n: int, cells: list[list[int]]) -> list[list[int]]:
    """Split cells by the multiset of (cell of w, b_vw, b_wv) over neighbors w."""
    while True:
        cell_of = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sigs: dict[tuple, list[int]] = {}
            for v in cell:
                row = b[v]
                sig = tuple(
                    sorted(
                        (cell_of[w], row[w], b[w][v])
                        for w in range(n)
                        if row[w] != 0
                    )
                )
                sigs.setdefault(sig, []).append(v)
            if len(sigs) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(sigs):
                    new_cells.append(sigs[sig])
        if not changed:
            return new_cells
        cells = new_cells


def _form_for_order(m: ExchangeMatrix, order: list[int]) -> tuple:
    frozen_vec = tuple(1 if v in m.frozen else 0 for v in order)
    flat = tuple(m.b[order[i]][order[j]] for i in range(m.n) for j in range(m.n))
    return (frozen_vec, flat)


def _canonical(m: ExchangeMatrix) -> tuple[tuple, list[int]]:
    """Return ``(form, order)`` where ``order`` is the relabeling achieving
    the lex-smallest form: ``form`` lists the entries of ``m`` with vertex
    ``order[i]`` placed at position ``i``."""
    n = m.n
    b = m.b
    unfrozen = [v for v in range(n) if v not in m.frozen]
    start = [c for c in (unfrozen, sorted(m.frozen)) if c]
    best: Optional[tuple] = None
    best_order: list[int] = []

    def descend(cells: list[list[int]]):
        nonlocal best, best_order
        cells = _refine(b, n, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            form = _form_for_order(m, order)
            if best is None or form < best:
                best = form
                best_order = order
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            descend(cells[:target] + [[v], rest] + cells[target + 1:])

    descend(start)
    assert best is not None
    return best, best_order


def canonical_form(m: ExchangeMatrix) -> tuple:
    """Lex-smallest ``(frozen flags, flat entries)`` over the search tree."""
    return _canonical(m)[0]


def canonical_key(m: ExchangeMatrix) -> bytes:
    """Stable hashable fingerprint: equal iff the matrices are isomorphic."""
    frozen_vec, flat = canonical_form(m)
    return repr((m.n, frozen_vec, flat)).encode()


def is_isomorphic(a: ExchangeMatrix, b: ExchangeMatrix) -> Optional[list[int]]:
    """Witnessing permutation carrying ``a`` onto ``b``, or ``None``.

    When a permutation ``p`` is returned, relabeling vertex ``i`` of ``a``
    as ``p[i]`` reproduces ``b`` exactly (entries and frozen set), i.e.
    ``permuted(a, p) == b``.  Raises :class:`SizeMismatch` when the two
    matrices have different sizes.
    """
    if a.n != b.n:
        raise SizeMismatch(f"cannot compare matrices of sizes {a.n} and {b.n}")
    if len(a.frozen) != len(b.frozen):
        return None
    form_a, order_a = _canonical(a)
    form_b, order_b = _canonical(b)
    if form_a != form_b:
        return None
    perm = [0] * a.n
    for t in range(a.n):
        perm[order_a[t]] = order_b[t]
    return perm
