"""Deciding panchromatic patterns.

A pattern is panchromatic exactly when it is bicomplete or contracts to two
looped, non-adjacent vertices (2K1). Both tests read off the loopless
complement G: H is bicomplete iff it is looped and no vertex of G has both an
in-arc and an out-arc; H contracts to 2K1 iff its rows take exactly two
values, each the indicator of its own block. Everything here is a handful of
big-integer operations per vertex, so the decision is quadratic in n at worst.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .digraph import Pattern, bits, complement


@dataclass(frozen=True)
class BicompleteSplit:
    x: tuple[int, ...]
    y: tuple[int, ...]
    kind = "bicomplete-split"


@dataclass(frozen=True)
class TwoK1Split:
    x: tuple[int, ...]
    y: tuple[int, ...]
    kind = "two-k1-split"


Certificate = Union[BicompleteSplit, TwoK1Split]


@dataclass(frozen=True)
class UnloopedVertex:
    v: int

    def __str__(self):
        return f"unlooped-vertex {self.v}"


@dataclass(frozen=True)
class OddComplementCycle:
    cycle: tuple[int, ...]

    def __str__(self):
        return "odd-complement-cycle " + " ".join(map(str, self.cycle))


@dataclass(frozen=True)
class CaminosCertificate:
    """A walk x0..xk in H where each xj (j < k) misses colour cj, and (xk, x0) is absent."""

    walk: tuple[int, ...]
    missing: tuple[int, ...]

    def __str__(self):
        return ("missing-colour-walk " + " ".join(map(str, self.walk))
                + " missing " + " ".join(map(str, self.missing)))


@dataclass(frozen=True)
class StructuralFailure:
    """A complement vertex with both in- and out-arcs, and no 2K1 split exists."""

    v: int
    in_from: int
    out_to: int

    def __str__(self):
        return f"structural-failure {self.v} in-from {self.in_from} out-to {self.out_to}"


Refutation = Union[UnloopedVertex, OddComplementCycle, CaminosCertificate, StructuralFailure]


@dataclass(frozen=True)
class Verdict:
    panchromatic: bool
    certificate: Certificate | None = None
    hints: tuple[Refutation, ...] = field(default_factory=tuple)

    def __str__(self):
        if self.panchromatic:
            c = self.certificate
            return f"PANCHROMATIC {c.kind} X={_fmt(c.x)} Y={_fmt(c.y)}"
        head = "NOT-PANCHROMATIC"
        if self.hints:
            head += f" {self.hints[0]}"
        return "\n".join([head] + [f"  {r}" for r in self.hints[1:]])


def _fmt(vs) -> str:
    return "{" + ",".join(map(str, vs)) + "}"


# --- certificates -----------------------------------------------------------

def bicomplete_split(h: Pattern) -> BicompleteSplit | None:
    if not h.is_looped():
        return None
    g = complement(h).rows
    has_in = 0
    for row in g:
        has_in |= row
    has_out = 0
    for u, row in enumerate(g):
        if row:
            has_out |= 1 << u
    if has_in & has_out:
        return None
    x = h.full & ~has_in  # sources of G plus isolated vertices
    return BicompleteSplit(tuple(bits(x)), tuple(bits(has_in)))


def two_k1_split(h: Pattern) -> TwoK1Split | None:
    # A 2K1 expansion has rows equal to the indicator of the own block.
    first = h.rows[0]
    other = h.full & ~first
    if not first & 1 or not other:
        return None
    for u, row in enumerate(h.rows):
        if row != (first if first >> u & 1 else other):
            return None
    return TwoK1Split(tuple(bits(first)), tuple(bits(other)))


def is_bicomplete_split(h: Pattern, x, y) -> bool:
    """Independent re-validation of a bicomplete split by arc-by-arc lookup."""
    if sorted(list(x) + list(y)) != list(range(h.n)):
        return False
    arcs = h.arcs
    inside = all((a, b) in arcs for side in (x, y) for a in side for b in side)
    back = all((b, a) in arcs for a in x for b in y)
    return inside and back


def is_two_k1_split(h: Pattern, x, y) -> bool:
    if not x or not y or sorted(list(x) + list(y)) != list(range(h.n)):
        return False
    arcs = h.arcs
    inside = all((a, b) in arcs for side in (x, y) for a in side for b in side)
    across = any((a, b) in arcs or (b, a) in arcs for a in x for b in y)
    return inside and not across


# --- refutations ------------------------------------------------------------

def odd_complement_cycle(h: Pattern) -> tuple[int, ...] | None:
    """A shortest odd directed cycle of the complement, or None.

    For each start s, a breadth-first search on the bipartite double cover
    looks for (s, odd); searches stop once they cannot beat the best so far.
    """
    return _odd_cycle(complement(h).rows)


def _odd_cycle(g) -> tuple[int, ...] | None:
    best: tuple[int, ...] | None = None
    for s in range(len(g)):
        if best is not None and len(best) == 3:
            break  # G has no loops, so 3 is optimal
        cyc = _odd_cycle_through(g, s, len(best) if best is not None else None)
        if cyc is not None and (best is None or len(cyc) < len(best)):
            best = cyc
    return best


def _odd_cycle_through(g, s: int, limit: int | None) -> tuple[int, ...] | None:
    # layers[d] holds the vertices first reached at parity d % 2 after d steps
    layers = [1 << s]
    seen = [1 << s, 0]
    depth = 0
    while limit is None or depth + 1 < limit:
        depth += 1
        nxt = 0
        for u in bits(layers[-1]):
            nxt |= g[u]
        if depth % 2 and nxt >> s & 1:
            break
        new = nxt & ~seen[depth % 2]
        if not new:
            return None
        layers.append(new)
        seen[depth % 2] |= new
    else:
        return None
    back = []
    cur = s
    for d in range(depth - 1, 0, -1):
        cur = next(u for u in bits(layers[d]) if g[u] >> cur & 1)
        back.append(cur)
    return _odd_subcycle([s] + back[::-1])


def _odd_subcycle(walk: list[int]) -> tuple[int, ...]:
    # An odd closed walk that revisits a vertex splits into two closed walks,
    # one of them odd; recurse until the walk is a simple cycle.
    seen: dict[int, int] = {}
    for i, v in enumerate(walk):
        if v in seen:
            j = seen[v]
            inner = walk[j:i]
            outer = walk[:j] + walk[i:]
            part = inner if len(inner) % 2 else outer
            return _odd_subcycle(part)
        seen[v] = i
    return tuple(walk)


def caminos_certificate(h: Pattern, max_len: int | None = None) -> CaminosCertificate | None:
    """First missing-colour walk found, scanning start vertices in order.

    Looks for a walk x0..xk (k >= 1) in H with every xj, j < k, lacking some
    out-arc (colour cj with (xj, cj) not in H) and with (xk, x0) not in H.
    Within one start vertex the walk found is a shortest one.
    """
    n = h.n
    if max_len is None:
        max_len = n * n
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    full = h.full
    rows = h.rows
    deficient = 0
    for u, row in enumerate(rows):
        if row != full:
            deficient |= 1 << u
    in_rows = h.in_rows
    for x0 in bits(deficient):
        targets = full & ~in_rows[x0]  # xk with (xk, x0) absent
        # layered search: layer[d] = interior vertices first met at depth d
        layers = [1 << x0]
        seen = 1 << x0
        hit = None
        for depth in range(1, max_len + 1):
            reach = 0
            for u in bits(layers[-1]):
                reach |= rows[u]
            if reach & targets:
                hit = next(bits(reach & targets))
                break
            nxt = reach & deficient & ~seen
            if not nxt:
                break
            seen |= nxt
            layers.append(nxt)
        if hit is None:
            continue
        walk = [hit]
        w = hit
        for layer in reversed(layers):
            w = next(u for u in bits(layer) if rows[u] >> w & 1)
            walk.append(w)
        walk.reverse()
        missing = tuple(next(bits(full & ~rows[x])) for x in walk[:-1])
        return CaminosCertificate(tuple(walk), missing)
    return None


def check_caminos(h: Pattern, cert: CaminosCertificate) -> bool:
    w, cs = cert.walk, cert.missing
    if len(w) < 2 or len(cs) != len(w) - 1:
        return False
    arcs = h.arcs
    return (all((a, b) in arcs for a, b in zip(w, w[1:]))
            and all((x, c) not in arcs for x, c in zip(w, cs))
            and (w[-1], w[0]) not in arcs)


def _structural_failure(g) -> StructuralFailure | None:
    has_in = 0
    for row in g:
        has_in |= row
    for v in bits(has_in):
        if g[v]:
            src = next(u for u, row in enumerate(g) if row >> v & 1)
            return StructuralFailure(v, src, next(bits(g[v])))
    return None


def recognize(h: Pattern, hints: bool = True) -> Verdict:
    cert = bicomplete_split(h)
    if cert is None and h.is_looped():
        cert = two_k1_split(h)
    if cert is not None:
        return Verdict(True, cert)
    if not hints:
        return Verdict(False)
    found: list[Refutation] = [UnloopedVertex(v) for v in h.unlooped_vertices()]
    g = complement(h).rows
    cyc = _odd_cycle(g)
    if cyc is not None:
        found.append(OddComplementCycle(cyc))
    cam = caminos_certificate(h)
    if cam is not None:
        found.append(cam)
    sf = _structural_failure(g)
    if sf is not None:
        found.append(sf)
    return Verdict(False, None, tuple(found))
