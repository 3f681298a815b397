"""Exact mutation arithmetic for quivers and skew-symmetrizable integer matrices.

The central type is :class:`ExchangeMatrix`: an immutable square integer
matrix ``b`` together with a set of frozen indices.  ``b[i][j] > 0`` means
``b[i][j]`` arrows from ``i`` to ``j``; for skew-symmetrizable (non
skew-symmetric) matrices the two opposite entries may differ in absolute
value but always have opposite signs.  Entries are plain Python integers,
so arbitrarily deep mutation sequences stay exact.

All indices in this module are 0-based.  User-facing formats (JSON, CLI)
are 1-based and converted at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import (
    AlreadyFramed,
    EmptyIndexSet,
    FrozenVertex,
    IndexOutOfRange,
    NonZeroDiagonal,
    NotSymmetrizable,
    SignIncoherentPair,
)

__all__ = [
    "ExchangeMatrix",
    "MutationSequence",
    "Symmetrizer",
    "new_matrix",
    "mutate",
    "mutate_seq",
    "restrict",
    "framed",
    "find_symmetrizer",
    "h_factor",
    "arrow_count",
    "permuted",
]

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Symmetrizer:
    """Positive integer diagonal ``d`` with ``diag(d) @ b`` skew-symmetric.

    The stored vector is the componentwise-minimal positive one on each
    connected component of the underlying graph (isolated vertices get 1).
    """

    d: tuple[int, ...]

    def __post_init__(self):
        if not self.d or any(x < 1 for x in self.d):
            raise NotSymmetrizable("symmetrizer entries must be positive integers")

    def __iter__(self):
        return iter(self.d)

    def __len__(self) -> int:
        return len(self.d)

    def __getitem__(self, i: int) -> int:
        return self.d[i]

    def is_valid_for(self, m: "ExchangeMatrix") -> bool:
        if len(self.d) != m.n:
            return False
        b = m.b
        return all(
            self.d[i] * b[i][j] == -self.d[j] * b[j][i]
            for i in range(m.n)
            for j in range(i + 1, m.n)
        )


@dataclass(frozen=True)
class MutationSequence:
    """Ordered vertex indices to mutate at, tagged with where they came from.

    Iterating yields the indices, so a ``MutationSequence`` can be passed
    anywhere a plain iterable of indices is accepted.
    """

    steps: tuple[int, ...]
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(k) for k in self.steps))

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __add__(self, other: "MutationSequence") -> "MutationSequence":
        note = self.provenance or other.provenance
        return MutationSequence(self.steps + tuple(other.steps), note)


def h_factor(d: Symmetrizer | Sequence[int], i: int, j: int) -> int:
    """The forced divisor ``h_ij = d_j / gcd(d_i, d_j)`` of entry ``b_ij``.

    Satisfies ``gcd(h_factor(d,i,j), h_factor(d,j,i)) == 1``.
    """
    di, dj = d[i], d[j]
    return dj // gcd(di, dj)


def _minimal_symmetrizer(b: Rows) -> tuple[int, ...]:
    """Componentwise-minimal positive integer symmetrizer for ``b``.

    Ratios propagate over a spanning tree of each connected component
    (``d_w = d_v * |b_vw| / |b_wv|``); every non-tree edge is then checked
    for cycle consistency.  Raises :class:`NotSymmetrizable` when the ratio
    system has no solution.
    """
    n = len(b)
    ratio: list[Optional[Fraction]] = [None] * n
    out: list[int] = [0] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        members = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            rv = ratio[v]
            row = b[v]
            for w in range(n):
                if row[w] == 0:
                    continue
                rw = rv * abs(row[w]) / abs(b[w][v])
                if ratio[w] is None:
                    ratio[w] = rw
                    members.append(w)
                    stack.append(w)
                elif ratio[w] != rw:
                    raise NotSymmetrizable(
                        f"inconsistent ratio around vertices {v + 1} and {w + 1}"
                    )
        scale = 1
        for v in members:
            scale = scale * ratio[v].denominator // gcd(scale, ratio[v].denominator)
        numers = [int(ratio[v] * scale) for v in members]
        shrink = 0
        for x in numers:
            shrink = gcd(shrink, x)
        for v, x in zip(members, numers):
            out[v] = x // shrink
    return tuple(out)


class ExchangeMatrix:
    """Validated immutable exchange matrix.

    Invariants, enforced on construction:

    * zero diagonal;
    * opposite entries are zero together or strictly opposite in sign
      (no loops, no oriented 2-cycles);
    * a positive integer symmetrizer exists (cached, minimal per component).

    Equality compares ``(n, b, frozen)``; ``labels`` are display metadata.
    """

    __slots__ = ("n", "b", "frozen", "labels", "_symmetrizer", "_hash")

    n: int
    b: Rows
    frozen: frozenset[int]
    labels: Optional[tuple[str, ...]]

    def __init__(
        self,
        entries: Sequence[Sequence[int]],
        frozen: Iterable[int] = (),
        labels: Optional[Sequence[str]] = None,
    ):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("entries must form a nonempty square matrix")
        fset = frozenset(int(i) for i in frozen)
        if fset and not all(0 <= i < n for i in fset):
            bad = next(i for i in fset if not 0 <= i < n)
            raise IndexOutOfRange(bad, n)
        for i in range(n):
            if rows[i][i] != 0:
                raise NonZeroDiagonal(i, rows[i][i])
            for j in range(i + 1, n):
                bij, bji = rows[i][j], rows[j][i]
                if (bij == 0) != (bji == 0) or bij * bji > 0:
                    raise SignIncoherentPair(i, j, bij, bji)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError("labels length must equal n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "b", rows)
        object.__setattr__(self, "frozen", fset)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_symmetrizer", _minimal_symmetrizer(rows))
        object.__setattr__(self, "_hash", hash((n, rows, fset)))

    @classmethod
    def _trusted(
        cls,
        n: int,
        rows: Rows,
        frozen: frozenset[int],
        labels: Optional[tuple[str, ...]],
        symmetrizer: tuple[int, ...],
    ) -> "ExchangeMatrix":
        """Fast path for results of operations that provably preserve validity."""
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "b", rows)
        object.__setattr__(self, "frozen", frozen)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_symmetrizer", symmetrizer)
        object.__setattr__(self, "_hash", hash((n, rows, frozen)))
        return self

    def __setattr__(self, name, value):
        raise AttributeError("ExchangeMatrix is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExchangeMatrix)
            and self.n == other.n
            and self.b == other.b
            and self.frozen == other.frozen
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = [f"n={self.n}", f"b={[list(r) for r in self.b]}"]
        if self.frozen:
            parts.append(f"frozen={sorted(i + 1 for i in self.frozen)}")
        return f"ExchangeMatrix({', '.join(parts)})"

    # -- structural helpers ----------------------------------------------

    @property
    def mutable(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in self.frozen)

    def is_skew_symmetric(self) -> bool:
        return all(
            self.b[i][j] == -self.b[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i + 1)

    def with_labels(self, labels: Optional[Sequence[str]]) -> "ExchangeMatrix":
        lbl = tuple(str(s) for s in labels) if labels is not None else None
        if lbl is not None and len(lbl) != self.n:
            raise ValueError("labels length must equal n")
        return ExchangeMatrix._trusted(self.n, self.b, self.frozen, lbl, self._symmetrizer)

    # -- core operations ---------------------------------------------------

    def mutate(self, k: int) -> "ExchangeMatrix":
        if not 0 <= k < self.n:
            raise IndexOutOfRange(k, self.n)
        if k in self.frozen:
            raise FrozenVertex(k)
        b = self.b
        row_k = b[k]
        pos = [(j, v) for j, v in enumerate(row_k) if v > 0]
        neg = [(j, v) for j, v in enumerate(row_k) if v < 0]
        new_rows = []
        for i in range(self.n):
            if i == k:
                new_rows.append(tuple(-x for x in b[i]))
                continue
            row = list(b[i])
            bik = row[k]
            row[k] = -bik
            if bik > 0:
                for j, v in pos:
                    row[j] += bik * v
            elif bik < 0:
                for j, v in neg:
                    row[j] -= bik * v
            new_rows.append(tuple(row))
        return ExchangeMatrix._trusted(
            self.n, tuple(new_rows), self.frozen, self.labels, self._symmetrizer
        )

    def mutate_seq(self, ks: Iterable[int]) -> "ExchangeMatrix":
        m = self
        for k in ks:
            m = m.mutate(k)
        return m

    def restrict(self, indices: Iterable[int]) -> "ExchangeMatrix":
        idx = sorted(set(int(i) for i in indices))
        if not idx:
            raise EmptyIndexSet("restriction needs a nonempty index set")
        for i in idx:
            if not 0 <= i < self.n:
                raise IndexOutOfRange(i, self.n)
        rows = tuple(tuple(self.b[i][j] for j in idx) for i in idx)
        rank = {v: r for r, v in enumerate(idx)}
        frozen = frozenset(rank[i] for i in self.frozen if i in rank)
        labels = tuple(self.label(i) for i in idx) if self.labels is not None else None
        # minimality of the cached symmetrizer is not preserved by taking
        # submatrices, so recompute it
        return ExchangeMatrix._trusted(
            len(idx), rows, frozen, labels, _minimal_symmetrizer(rows)
        )

    def framed(self) -> "ExchangeMatrix":
        if self.frozen:
            raise AlreadyFramed("matrix already has frozen vertices")
        n = self.n
        rows = []
        for i in range(n):
            rows.append(self.b[i] + tuple(1 if j == i else 0 for j in range(n)))
        for i in range(n):
            rows.append(tuple(-1 if j == i else 0 for j in range(n)) + (0,) * n)
        labels = None
        if self.labels is not None:
            labels = self.labels + tuple(f"{s}_bar" for s in self.labels)
        rows = tuple(rows)
        return ExchangeMatrix._trusted(
            2 * n,
            rows,
            frozenset(range(n, 2 * n)),
            labels,
            _minimal_symmetrizer(rows),
        )

    def symmetrizer(self) -> Symmetrizer:
        return Symmetrizer(self._symmetrizer)


# --- module-level operation aliases ------------------------------------------

def new_matrix(
    n: int,
    entries: Sequence[Sequence[int]],
    frozen: Iterable[int] = (),
    labels: Optional[Sequence[str]] = None,
) -> ExchangeMatrix:
    """Validate and build an :class:`ExchangeMatrix` (0-based frozen indices)."""
    if len(entries) != n:
        raise ValueError(f"expected {n} rows, got {len(entries)}")
    return ExchangeMatrix(entries, frozen, labels)


def mutate(m: ExchangeMatrix, k: int) -> ExchangeMatrix:
    return m.mutate(k)


def mutate_seq(m: ExchangeMatrix, ks: Iterable[int]) -> ExchangeMatrix:
    return m.mutate_seq(ks)


def restrict(m: ExchangeMatrix, indices: Iterable[int]) -> ExchangeMatrix:
    return m.restrict(indices)


def framed(m: ExchangeMatrix) -> ExchangeMatrix:
    return m.framed()


def find_symmetrizer(m: ExchangeMatrix) -> Symmetrizer:
    return m.symmetrizer()


def arrow_count(m: ExchangeMatrix) -> int:
    """Number of arrows counted with multiplicity (skew-symmetric matrices)."""
    return sum(x for row in m.b for x in row if x > 0)


def permuted(m: ExchangeMatrix, perm: Sequence[int]) -> ExchangeMatrix:
    """Relabel vertices: position ``perm[i]`` of the result carries vertex ``i``."""
    n = m.n
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    rows = tuple(tuple(m.b[inv[i]][inv[j]] for j in range(n)) for i in range(n))
    frozen = frozenset(perm[i] for i in m.frozen)
    labels = tuple(m.labels[inv[i]] for i in range(n)) if m.labels is not None else None
    return ExchangeMatrix._trusted(n, rows, frozen, labels, _minimal_symmetrizer(rows))
