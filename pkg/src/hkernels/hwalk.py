"""H-walks through the product of an instance with its pattern.

A state ``(v, c)`` records the current vertex of D and the colour of the arc
just used. From it, an arc ``(v, w)`` of colour ``c'`` may be taken iff
``(c, c')`` is an arc of H, which is exactly the condition for the colour
sequence to stay a walk in H. States are numbered ``v * k + c``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .digraph import ColouredInstance, Digraph, Pattern, bits


class ColourCountMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ProductState:
    v: int
    c: int


@dataclass(frozen=True)
class ReachRelation:
    """``R(u, v)``: an H-walk of length >= 1 runs from u to v.

    ``rows[u]`` is the bit mask of all such v; the diagonal may be set.
    """

    n: int
    rows: tuple[int, ...]

    def __call__(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def matrix(self) -> list[list[int]]:
        return [[self.rows[u] >> v & 1 for v in range(self.n)] for u in range(self.n)]


def _check(inst: ColouredInstance, h: Pattern):
    if inst.k != h.n:
        raise ColourCountMismatch(f"instance has {inst.k} colours but the pattern has {h.n} vertices")


def build_product(inst: ColouredInstance, h: Pattern) -> Digraph:
    """Product digraph on ``n * k`` states; state ``(v, c)`` is index ``v*k + c``."""
    _check(inst, h)
    k = inst.k
    arcs = []
    for v, w, c2 in inst.coloured_arcs():
        for c in range(k):
            if h.rows[c] >> c2 & 1:
                arcs.append((v * k + c, w * k + c2))
    return Digraph.from_arcs(inst.n * k, arcs)


def reach_rows(n: int, k: int, coloured_arcs: Sequence[tuple[int, int, int]], h_rows: Sequence[int]) -> tuple[int, ...]:
    """Bare reach computation shared by the library API and the search loop."""
    out = [[] for _ in range(n)]
    for v, w, c2 in coloured_arcs:
        out[v].append((w, c2))
    # successors of every state, and the start set of every vertex
    succ = [0] * (n * k)
    start = [0] * n
    for v in range(n):
        for w, c2 in out[v]:
            bit = 1 << (w * k + c2)
            start[v] |= bit
            for c in range(k):
                if h_rows[c] >> c2 & 1:
                    succ[v * k + c] |= bit
    block = (1 << k) - 1
    rows = []
    for u in range(n):
        seen = frontier = start[u]
        while frontier:
            nxt = 0
            for s in bits(frontier):
                nxt |= succ[s]
            frontier = nxt & ~seen
            seen |= frontier
        row = 0
        for v in range(n):
            if seen >> (v * k) & block:
                row |= 1 << v
        rows.append(row)
    return tuple(rows)


def h_reach(inst: ColouredInstance, h: Pattern) -> ReachRelation:
    _check(inst, h)
    return ReachRelation(inst.n, reach_rows(inst.n, inst.k, inst.coloured_arcs(), h.rows))


def walk_is_h_walk(inst: ColouredInstance, h: Pattern, walk: Sequence[int]) -> bool:
    """Re-check a vertex sequence arc by arc: a walk in D whose colours walk in H."""
    if len(walk) < 2:
        return False
    colours = []
    for a, b in zip(walk, walk[1:]):
        c = inst.colour.get((a, b))
        if c is None:
            return False
        colours.append(c)
    return all(h.has_arc(a, b) for a, b in zip(colours, colours[1:]))


def witness_walk(inst: ColouredInstance, h: Pattern, u: int, v: int) -> tuple[list[int], list[int]] | None:
    """Shortest H-walk from u to v as ``(vertices, colours)``, or None.

    Breadth-first over product states, expanding states in increasing
    ``(vertex, colour)`` order so ties always resolve the same way.
    """
    _check(inst, h)
    n = inst.n
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"vertex out of range 0..{n - 1}")
    out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in inst.coloured_arcs():
        out[a].append((b, c))
    for lst in out:
        lst.sort()
    parent: dict[tuple[int, int], tuple[int, int] | None] = {}
    queue: deque[tuple[int, int]] = deque()
    for w, c in out[u]:
        parent[(w, c)] = None
        queue.append((w, c))
    found = None
    while queue:
        state = queue.popleft()
        if state[0] == v:
            found = state
            break
        w, c = state
        for x, c2 in out[w]:
            if h.rows[c] >> c2 & 1 and (x, c2) not in parent:
                parent[(x, c2)] = state
                queue.append((x, c2))
    if found is None:
        return None
    path = []
    state = found
    while state is not None:
        path.append(state)
        state = parent[state]
    path.reverse()
    vertices = [u] + [s[0] for s in path]
    colours = [s[1] for s in path]
    if not walk_is_h_walk(inst, h, vertices):
        raise AssertionError(f"witness {vertices} failed re-verification")
    return vertices, colours
