"""Rotation-system (half-edge) utilities shared by planar structures.

A combinatorial map is given by a rotation system -- one counterclockwise
cycle of half-edge ids per vertex -- plus an involution ``mate`` pairing
the two halves of each edge.  Faces are the orbits of ``h -> sigma(mate(h))``
where ``sigma`` is the next-counterclockwise half-edge at a vertex; the
orbit of ``h`` walks the boundary of the face on the left of ``h`` (taking
``h`` as pointing away from its base vertex).  Bounded faces of a plane
drawing come out counterclockwise and the unbounded face clockwise.
"""

from __future__ import annotations

from typing import Sequence

__all__ = [
    "base_map",
    "successor_map",
    "face_orbits",
    "component_count",
    "is_single_component",
    "euler_check",
]


def base_map(rotation: Sequence[Sequence[int]]) -> dict[int, int]:
    """Half-edge id -> vertex it is based at."""
    base: dict[int, int] = {}
    for v, cycle in enumerate(rotation):
        for h in cycle:
            if h in base:
                raise ValueError(f"half-edge {h} appears at two vertices")
            base[h] = v
    return base


def successor_map(rotation: Sequence[Sequence[int]]) -> dict[int, int]:
    """Half-edge id -> next half-edge counterclockwise at the same vertex."""
    succ: dict[int, int] = {}
    for cycle in rotation:
        for i, h in enumerate(cycle):
            succ[h] = cycle[(i + 1) % len(cycle)]
    return succ


def face_orbits(
    rotation: Sequence[Sequence[int]], mate: Sequence[int]
) -> list[tuple[int, ...]]:
    """Orbits of ``h -> sigma(mate(h))``, each starting at its smallest
    half-edge id, listed in order of that smallest id."""
    succ = successor_map(rotation)
    seen: set[int] = set()
    faces: list[tuple[int, ...]] = []
    for start in sorted(succ):
        if start in seen:
            continue
        orbit = []
        h = start
        while True:
            orbit.append(h)
            seen.add(h)
            h = succ[mate[h]]
            if h == start:
                break
            if h in seen:
                raise ValueError("rotation/mate data does not close into faces")
        faces.append(tuple(orbit))
    return faces


def component_count(
    rotation: Sequence[Sequence[int]], mate: Sequence[int]
) -> int:
    base = base_map(rotation)
    n = len(rotation)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h, g in enumerate(mate):
        a, b = find(base[h]), find(base[g])
        if a != b:
            parent[a] = b
    return len({find(v) for v in range(n)})


def is_single_component(
    rotation: Sequence[Sequence[int]], mate: Sequence[int]
) -> bool:
    return component_count(rotation, mate) == 1


def euler_check(
    rotation: Sequence[Sequence[int]], mate: Sequence[int]
) -> bool:
    """Whether the map is a connected embedding in the sphere/plane:
    ``V - E + F == 2`` with one component."""
    if len(mate) % 2:
        return False
    v = len(rotation)
    e = len(mate) // 2
    f = len(face_orbits(rotation, mate))
    return is_single_component(rotation, mate) and v - e + f == 2
