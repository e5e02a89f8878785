"""Exact H-kernel decision and enumeration over a precomputed reach relation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .digraph import ColouredInstance, Pattern, bits, mask_of
from .hwalk import ReachRelation, h_reach

ENUMERATE_LIMIT = 20


@dataclass(frozen=True)
class KernelViolation:
    kind: str  # "independence" or "absorbency"
    pair: tuple[int, int] | None = None
    vertex: int | None = None

    def __str__(self):
        if self.kind == "independence":
            return f"independence {self.pair[0]} {self.pair[1]}"
        return f"absorbency {self.vertex}"


def _off_diagonal(rows: Sequence[int]) -> list[int]:
    return [r & ~(1 << u) for u, r in enumerate(rows)]


def _reach(inst, h, reach):
    return reach if reach is not None else h_reach(inst, h)


def violation_in(n: int, rows: Sequence[int], kmask: int) -> KernelViolation | None:
    off = _off_diagonal(rows)
    for u in bits(kmask):
        hit = off[u] & kmask
        if hit:
            v = next(bits(hit))
            return KernelViolation("independence", pair=(u, v))
    for w in range(n):
        if not kmask >> w & 1 and not off[w] & kmask:
            return KernelViolation("absorbency", vertex=w)
    return None


def check_kernel(inst: ColouredInstance, h: Pattern, kernel: Iterable[int],
                 reach: ReachRelation | None = None) -> KernelViolation | None:
    """None if ``kernel`` is an H-kernel, else the first violation found.

    Independence is checked first, pairs in increasing order of the source.
    Closed walks ``u -> u`` are ignored.
    """
    k = set(kernel)
    for v in k:
        if not 0 <= v < inst.n:
            raise ValueError(f"vertex {v} out of range 0..{inst.n - 1}")
    r = _reach(inst, h, reach)
    return violation_in(r.n, r.rows, mask_of(k))


def find_kernel_mask(n: int, rows: Sequence[int]) -> int | None:
    """Lexicographically least kernel (as a bit mask) of a reach relation.

    Backtracks over vertices in index order, trying inclusion first. Because
    no kernel strictly contains another, the first kernel reached is the least
    one under comparison of sorted vertex lists.
    """
    off = _off_diagonal(rows)
    inn = [0] * n
    for u in range(n):
        for v in bits(off[u]):
            inn[v] |= 1 << u
    clash = [off[u] | inn[u] for u in range(n)]
    full = (1 << n) - 1

    def dfs(i: int, chosen: int, excluded: int, blocked: int) -> int | None:
        # every excluded vertex must still be absorbable by some chosen or
        # still-admissible undecided vertex
        open_ = full & ~((1 << i) - 1) & ~blocked
        for w in bits(excluded):
            if not off[w] & (chosen | open_):
                return None
        if i == n:
            return chosen
        bit = 1 << i
        if not blocked & bit:
            found = dfs(i + 1, chosen | bit, excluded, blocked | clash[i])
            if found is not None:
                return found
        if off[i] & ~blocked & ~((1 << (i + 1)) - 1) or off[i] & chosen:
            return dfs(i + 1, chosen, excluded | bit, blocked)
        return None

    return dfs(0, 0, 0, 0)


def find_h_kernel(inst: ColouredInstance, h: Pattern, reach: ReachRelation | None = None) -> list[int] | None:
    r = _reach(inst, h, reach)
    m = find_kernel_mask(r.n, r.rows)
    return None if m is None else list(bits(m))


def enumerate_kernel_masks(n: int, rows: Sequence[int]) -> list[int]:
    """Every kernel, by plain subset enumeration."""
    if n > ENUMERATE_LIMIT:
        raise ValueError(f"subset enumeration limited to n <= {ENUMERATE_LIMIT}, got {n}")
    off = _off_diagonal(rows)
    found = []
    for k in range(1, 1 << n):
        if any(off[u] & k for u in bits(k)):
            continue
        if all(off[w] & k for w in bits(~k & ((1 << n) - 1))):
            found.append(k)
    return found


def enumerate_h_kernels(inst: ColouredInstance, h: Pattern, reach: ReachRelation | None = None) -> list[list[int]]:
    """All H-kernels as sorted vertex lists, in lexicographic order."""
    r = _reach(inst, h, reach)
    return sorted(list(bits(m)) for m in enumerate_kernel_masks(r.n, r.rows))
