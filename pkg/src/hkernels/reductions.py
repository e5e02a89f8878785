"""Simulating an extra pattern arc u->v with a looped midpoint colour z.

Given an instance coloured over ``H + (u, v)``, every vertex y entered by a
u-coloured arc and left by a v-coloured arc receives a twin y' joined to it
by the two arcs (y, y') and (y', y), both coloured z. Where a walk used the
transition u -> v at y, the result can take the detour y -> y' -> y through
the colours u, z, z, v, which stays inside H.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .digraph import ColouredInstance, Pattern, bits, format_instance


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class P2Transform:
    original: ColouredInstance
    transformed: ColouredInstance
    u: int
    v: int
    z: int
    twins: tuple[tuple[int, int], ...]  # (y, twin of y), ascending y

    @property
    def twin_set(self) -> frozenset[int]:
        return frozenset(t for _, t in self.twins)

    def header(self) -> list[str]:
        lines = [f"p2 transform u={self.u} v={self.v} z={self.z} added={len(self.twins)}"]
        lines.extend(f"twin {y} -> {t}" for y, t in self.twins)
        return lines

    def to_text(self) -> str:
        return format_instance(self.transformed, self.header())


def midpoints(h: Pattern, u: int, v: int) -> list[int]:
    """Vertices z with (u, z) and (z, v) in h."""
    return list(bits(h.rows[u] & h.in_rows[v]))


def check_preconditions(inst: ColouredInstance, h: Pattern, u: int, v: int, z: int) -> None:
    for name, x in (("u", u), ("v", v), ("z", z)):
        if not 0 <= x < h.n:
            raise PreconditionError(f"{name}={x} is not a vertex of the pattern")
    unlooped = h.unlooped_vertices()
    if unlooped:
        raise PreconditionError(f"pattern vertex {unlooped[0]} has no loop")
    if h.has_arc(u, v):
        raise PreconditionError(f"arc ({u}, {v}) is already in the pattern")
    if not h.has_arc(u, z):
        raise PreconditionError(f"arc ({u}, {z}) missing: z is not a midpoint")
    if not h.has_arc(z, v):
        raise PreconditionError(f"arc ({z}, {v}) missing: z is not a midpoint")
    if inst.k != h.n:
        raise PreconditionError(f"instance has {inst.k} colours, pattern has {h.n} vertices")


def p2_transform(inst: ColouredInstance, h: Pattern, u: int, v: int, z: int | None = None) -> P2Transform:
    """Build the twin-augmented instance; ``z`` defaults to the least midpoint."""
    if z is None:
        if not (0 <= u < h.n and 0 <= v < h.n):
            raise PreconditionError("u and v must be vertices of the pattern")
        mids = midpoints(h, u, v)
        if not mids:
            raise PreconditionError(f"no midpoint z with ({u}, z) and (z, {v}) in the pattern")
        z = mids[0]
    check_preconditions(inst, h, u, v, z)
    n = inst.n
    enters = [False] * n
    leaves = [False] * n
    for a, b, c in inst.coloured_arcs():
        if c == u:
            enters[b] = True
        if c == v:
            leaves[a] = True
    ys = [y for y in range(n) if enters[y] and leaves[y]]
    twins = tuple((y, n + i) for i, y in enumerate(ys))
    arcs = inst.coloured_arcs()
    for y, t in twins:
        arcs += [(y, t, z), (t, y, z)]
    transformed = ColouredInstance.from_coloured_arcs(n + len(ys), inst.k, arcs)
    return P2Transform(inst, transformed, u, v, z, twins)


def pullback_kernel(t: P2Transform, kernel: Iterable[int]) -> list[int]:
    """Original vertices of the kernel, plus every y whose twin is in it."""
    kset = set(kernel)
    for x in kset:
        if not 0 <= x < t.transformed.n:
            raise ValueError(f"vertex {x} out of range 0..{t.transformed.n - 1}")
    twin_of = {tw: y for y, tw in t.twins}
    out = {x for x in kset if x not in twin_of}
    out |= {twin_of[x] for x in kset if x in twin_of}
    return sorted(out)
