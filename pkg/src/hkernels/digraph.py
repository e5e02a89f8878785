"""Digraphs, patterns, coloured instances and their text formats.

Vertices are dense indices ``0..n-1``. Adjacency is kept as one integer bit
row per vertex: bit ``v`` of ``rows[u]`` is set iff ``(u, v)`` is an arc.
This doubles as a boolean adjacency matrix and keeps every structural test
down to a handful of integer operations.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

CANONICAL_LIMIT = 8


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class PartitionInvalid(ValueError):
    """A vertex partition does not define a contraction.

    ``condition`` is 1, 2 or 3 after the three contraction conditions
    (disjoint cover, complete parts, all-or-nothing cross arcs); ``witness``
    is the offending ordered pair, or a vertex for cover failures.
    """

    def __init__(self, condition: int, witness, message: str = ""):
        super().__init__(message or f"condition {condition} fails at {witness}")
        self.condition = condition
        self.witness = witness


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    if mask.bit_length() > 256:
        # clearing bits of a wide int costs O(width) each time; scan a string
        s = bin(mask)[:1:-1]
        i = s.find("1")
        while i >= 0:
            yield i
            i = s.find("1", i + 1)
        return
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transpose_rows(rows: Sequence[int], n: int) -> tuple[int, ...]:
    """Column masks of an n x n bit matrix given as row masks."""
    if n <= 64:
        cols = [0] * n
        for u, row in enumerate(rows):
            for v in bits(row):
                cols[v] |= 1 << u
        return tuple(cols)
    width = (n + 7) // 8
    buf = b"".join(r.to_bytes(width, "little") for r in rows)
    m = np.unpackbits(np.frombuffer(buf, dtype=np.uint8).reshape(n, width), axis=1, bitorder="little")
    t = np.packbits(m[:, :n].T, axis=1, bitorder="little")
    return tuple(int.from_bytes(t[i].tobytes(), "little") for i in range(n))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Digraph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a digraph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {u} references a vertex outside 0..{self.n - 1}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int, loops: bool = True) -> "Digraph":
        full = (1 << n) - 1
        return cls(n, tuple(full if loops else full & ~(1 << u) for u in range(n)))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arc_list())

    def arc_list(self) -> list[tuple[int, int]]:
        """Arcs in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u])]

    @cached_property
    def in_rows(self) -> tuple[int, ...]:
        return transpose_rows(self.rows, self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def num_arcs(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def is_looped(self) -> bool:
        return all(self.rows[u] >> u & 1 for u in range(self.n))

    def unlooped_vertices(self) -> list[int]:
        return [u for u in range(self.n) if not self.rows[u] >> u & 1]

    def with_arc(self, u: int, v: int) -> "Digraph":
        rows = list(self.rows)
        rows[u] |= 1 << v
        return Digraph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        """Induced subdigraph, relabelled ``vertices[i] -> i``."""
        index = {v: i for i, v in enumerate(vertices)}
        return Digraph.from_arcs(
            len(vertices),
            ((index[u], index[v]) for u in vertices for v in bits(self.rows[u]) if v in index),
        )

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Apply the vertex map ``u -> perm[u]``."""
        return Digraph.from_arcs(self.n, ((perm[u], perm[v]) for u, v in self.arc_list()))

    def underlying_components(self) -> list[int]:
        """Weakly connected components as bit masks, ordered by least vertex."""
        sym = [self.rows[u] | self.in_rows[u] for u in range(self.n)]
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= sym[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_weakly_connected(self) -> bool:
        return len(self.underlying_components()) == 1


# The vertices of a pattern are the colours.
Pattern = Digraph


@dataclass(frozen=True)
class ColouredInstance:
    """A digraph ``d`` with every arc coloured by a vertex of a k-vertex pattern."""

    d: Digraph
    k: int
    colours: tuple[int, ...] = field(repr=False)  # aligned with d.arc_list()

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("colour count must be positive")
        if len(self.colours) != self.d.num_arcs():
            raise ValueError("every arc needs exactly one colour")
        for c in self.colours:
            if not 0 <= c < self.k:
                raise ValueError(f"colour {c} outside 0..{self.k - 1}")

    @classmethod
    def from_coloured_arcs(cls, n: int, k: int, arcs: Iterable[tuple[int, int, int]]) -> "ColouredInstance":
        table: dict[tuple[int, int], int] = {}
        for u, v, c in arcs:
            if (u, v) in table:
                raise ValueError(f"arc ({u}, {v}) coloured twice")
            table[(u, v)] = c
        d = Digraph.from_arcs(n, table)
        return cls(d, k, tuple(table[a] for a in d.arc_list()))

    @property
    def n(self) -> int:
        return self.d.n

    @cached_property
    def colour(self) -> Mapping[tuple[int, int], int]:
        return dict(zip(self.d.arc_list(), self.colours))

    def coloured_arcs(self) -> list[tuple[int, int, int]]:
        return [(u, v, c) for (u, v), c in zip(self.d.arc_list(), self.colours)]


# --- partitions, complement, contraction -----------------------------------

def normalise_partition(parts: Iterable[Iterable[int]], n: int) -> tuple[frozenset[int], ...]:
    """Validate a vertex partition; raises PartitionInvalid(condition=1, ...)."""
    out = []
    seen: set[int] = set()
    for part in parts:
        p = frozenset(part)
        if not p:
            raise PartitionInvalid(1, None, "empty part")
        for v in p:
            if not 0 <= v < n:
                raise PartitionInvalid(1, v, f"vertex {v} out of range")
            if v in seen:
                raise PartitionInvalid(1, v, f"vertex {v} in two parts")
        seen |= p
        out.append(p)
    missing = set(range(n)) - seen
    if missing:
        v = min(missing)
        raise PartitionInvalid(1, v, f"vertex {v} in no part")
    return tuple(out)


def complement(h: Digraph) -> Digraph:
    """Loopless complement: arcs (u, v), u != v, absent from h."""
    full = h.full
    return Digraph(h.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(h.rows)))


def contract(h: Pattern, parts: Iterable[Iterable[int]]) -> Pattern:
    """Quotient of ``h`` by a partition into complete reflexive blocks.

    Every part must induce a complete reflexive digraph and every pair of parts
    must be joined by all or none of its cross arcs; otherwise
    PartitionInvalid names the failing condition and an ordered witness pair.
    """
    ps = normalise_partition(parts, h.n)
    masks = [mask_of(p) for p in ps]
    for i, p in enumerate(ps):
        for x in sorted(p):
            missing = masks[i] & ~h.rows[x]
            if missing:
                y = next(bits(missing))
                # a missing loop is the i == j case of condition 3
                raise PartitionInvalid(3 if x == y else 2, (x, y))
    arcs = []
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            if i == j:
                continue
            if not any(h.rows[x] & masks[j] for x in p):
                continue
            for x in sorted(p):
                absent = masks[j] & ~h.rows[x]
                if absent:
                    raise PartitionInvalid(3, (x, next(bits(absent))))
            arcs.append((i, j))
    return Digraph.from_arcs(len(ps), arcs + [(i, i) for i in range(len(ps))])


def expand(h: Pattern, sizes: Sequence[int]) -> Pattern:
    """Blow vertex i up into a complete reflexive block of ``sizes[i]`` vertices."""
    if len(sizes) != h.n:
        raise ValueError(f"need {h.n} sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("block sizes must be positive")
    offsets = list(itertools.accumulate(sizes, initial=0))
    block = [((1 << s) - 1) << off for s, off in zip(sizes, offsets)]
    rows = []
    for i in range(h.n):
        row = block[i]
        for j in bits(h.rows[i]):
            if j != i:
                row |= block[j]
        rows.extend([row] * sizes[i])
    return Digraph(offsets[-1], tuple(rows))


def block_partition(sizes: Sequence[int]) -> list[list[int]]:
    offsets = list(itertools.accumulate(sizes, initial=0))
    return [list(range(a, b)) for a, b in zip(offsets, offsets[1:])]


# --- canonical forms --------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """Relabelling of a digraph minimising its adjacency code.

    The code of an arc set is ``sum(1 << (u*n + v))``; the canonical
    representative is the relabelling with the least code, and ``perm`` maps
    original vertex ``u`` to ``perm[u]``.
    """

    n: int
    code: int
    perm: tuple[int, ...]

    @property
    def digraph(self) -> Digraph:
        mask = (1 << self.n) - 1
        return Digraph(self.n, tuple((self.code >> (u * self.n)) & mask for u in range(self.n)))

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.digraph.arc_list())

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.n == other.n and self.code == other.code

    def __hash__(self):
        return hash((self.n, self.code))


@lru_cache(maxsize=None)
def _perm_tables(n: int):
    """For each permutation: (perm, inverse, row relabel table over 2**n masks)."""
    tables = []
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for u, p in enumerate(perm):
            inv[p] = u
        table = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            table[m] = table[m ^ low] | (1 << perm[low.bit_length() - 1])
        tables.append((perm, tuple(inv), table))
    return tables


def canonicalize(d: Digraph, limit: int = CANONICAL_LIMIT) -> CanonicalForm:
    if d.n > limit:
        raise ValueError(f"canonicalize is exhaustive over n! relabellings; n={d.n} exceeds limit {limit}")
    n = d.n
    rows = d.rows
    best = None
    best_perm = None
    for perm, inv, table in _perm_tables(n):
        code = 0
        for a in range(n):
            code |= table[rows[inv[a]]] << (a * n)
        if best is None or code < best:
            best, best_perm = code, perm
    return CanonicalForm(n, best, best_perm)


def automorphisms(d: Digraph) -> list[tuple[int, ...]]:
    """All vertex permutations fixing the arc set (exhaustive)."""
    if d.n > CANONICAL_LIMIT:
        raise ValueError("automorphism search limited to n <= 8")
    out = []
    for perm, inv, table in _perm_tables(d.n):
        if all(table[d.rows[inv[a]]] == d.rows[a] for a in range(d.n)):
            out.append(perm)
    return out


# --- file formats -----------------------------------------------------------

_COMMENT = re.compile(r"#.*")


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = _COMMENT.sub("", line).split()
        if fields:
            yield lineno, fields


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {tok!r}") from None


def parse_pattern(text: str) -> Pattern:
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ParseError(0, "empty document, expected 'pattern <n>'")
    lineno, fields = header
    if len(fields) != 2 or fields[0] != "pattern":
        raise ParseError(lineno, "expected header 'pattern <n>'")
    n = _int(fields[1], lineno)
    if n < 1:
        raise ParseError(lineno, "a pattern needs at least one vertex")
    arcs: set[tuple[int, int]] = set()
    for lineno, fields in lines:
        if len(fields) != 2:
            raise ParseError(lineno, "expected an arc line '<u> <v>'")
        u, v = (_int(t, lineno) for t in fields)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex index out of range 0..{n - 1}")
        if (u, v) in arcs:
            raise ParseError(lineno, f"duplicate arc {u} {v}")
        arcs.add((u, v))
    return Digraph.from_arcs(n, arcs)


def parse_instance(text: str) -> ColouredInstance:
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ParseError(0, "empty document, expected 'coloured-digraph <n> over <k>'")
    lineno, fields = header
    if len(fields) != 4 or fields[0] != "coloured-digraph" or fields[2] != "over":
        raise ParseError(lineno, "expected header 'coloured-digraph <n> over <k>'")
    n, k = _int(fields[1], lineno), _int(fields[3], lineno)
    if n < 1 or k < 1:
        raise ParseError(lineno, "vertex and colour counts must be positive")
    table: dict[tuple[int, int], int] = {}
    for lineno, fields in lines:
        if len(fields) != 3:
            raise ParseError(lineno, "expected an arc line '<u> <v> <c>'")
        u, v, c = (_int(t, lineno) for t in fields)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex index out of range 0..{n - 1}")
        if not 0 <= c < k:
            raise ParseError(lineno, f"colour out of range 0..{k - 1}")
        if (u, v) in table:
            raise ParseError(lineno, f"duplicate arc {u} {v}")
        table[(u, v)] = c
    return ColouredInstance.from_coloured_arcs(n, k, ((u, v, c) for (u, v), c in table.items()))


def format_pattern(h: Pattern, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"pattern {h.n}")
    out.extend(f"{u} {v}" for u, v in h.arc_list())
    return "\n".join(out) + "\n"


def format_instance(inst: ColouredInstance, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"coloured-digraph {inst.n} over {inst.k}")
    out.extend(f"{u} {v} {c}" for u, v, c in inst.coloured_arcs())
    return "\n".join(out) + "\n"
