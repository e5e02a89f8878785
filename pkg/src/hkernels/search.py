"""Exhaustive falsification of patterns and the order-n classification sweep.

Instances are enumerated one isomorphism class of D at a time, ordered by
vertex count, then arc count, then canonical code; colourings of each D run in
lexicographic order, optionally reduced to one representative per orbit of the
pattern's automorphism group. The first instance without an H-kernel is the
counterexample, so results do not depend on timing or worker count.

Only weakly connected D are searched by default. Walks never leave a weak
component, so a disconnected D has a kernel iff every component has one, and
the connected components of a counterexample already contain a smaller one.
"""
from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .digraph import (
    CANONICAL_LIMIT,
    ColouredInstance,
    Digraph,
    Pattern,
    automorphisms,
    canonicalize,
)
from .hwalk import reach_rows
from .kernel import enumerate_kernel_masks, find_kernel_mask
from .recognizer import Verdict, recognize

log = logging.getLogger(__name__)

ESCALATION = (3, 4, 5)


@dataclass(frozen=True)
class SearchBounds:
    max_vertices: int = 3
    min_vertices: int = 1
    allow_loops_in_d: bool = False
    max_arcs: int | None = None
    colouring_cap: int | None = None
    time_budget: float | None = None  # seconds
    prune_colours: bool = True
    connected_only: bool = True
    compiled: bool = True  # numba scan; False runs the reference Python loop
    jobs: int = 1

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if self.max_vertices > CANONICAL_LIMIT:
            raise ValueError(f"max_vertices is limited to {CANONICAL_LIMIT}")
        if self.min_vertices < 1:
            raise ValueError("min_vertices must be at least 1")

    def describe(self) -> str:
        parts = [f"n={self.min_vertices}..{self.max_vertices}"]
        if self.allow_loops_in_d:
            parts.append("loops")
        if self.max_arcs is not None:
            parts.append(f"m<={self.max_arcs}")
        if self.colouring_cap is not None:
            parts.append(f"cap={self.colouring_cap}")
        return ",".join(parts)


@dataclass(frozen=True)
class Counterexample:
    instance: ColouredInstance
    pattern: Pattern
    digraphs_checked: int = 0
    colourings_checked: int = 0


@dataclass(frozen=True)
class Exhausted:
    bounds: SearchBounds
    digraphs_checked: int = 0
    colourings_checked: int = 0
    skipped_digraphs: int = 0
    timed_out: bool = False

    @property
    def complete(self) -> bool:
        return not self.timed_out and not self.skipped_digraphs


# --- enumeration ------------------------------------------------------------

@lru_cache(maxsize=None)
def _classes(n: int, allow_loops: bool) -> tuple[Digraph, ...]:
    """One canonical digraph per isomorphism class, by canonical augmentation.

    Every class with m+1 arcs arises from some class with m arcs by adding one
    arc, so growing level by level and deduplicating canonical forms is
    complete.
    """
    slots = [(u, v) for u in range(n) for v in range(n) if allow_loops or u != v]
    level = {canonicalize(Digraph(n, (0,) * n)).code: Digraph(n, (0,) * n)}
    out = []
    while level:
        out.extend(level[c] for c in sorted(level))
        nxt: dict[int, Digraph] = {}
        for d in level.values():
            for u, v in slots:
                if not d.rows[u] >> v & 1:
                    cf = canonicalize(d.with_arc(u, v))
                    if cf.code not in nxt:
                        nxt[cf.code] = cf.digraph
        level = nxt
    return tuple(out)


def enumerate_digraphs(n: int, bounds: SearchBounds | None = None) -> Iterator[Digraph]:
    """Each isomorphism class on n vertices once, by (arc count, canonical code)."""
    bounds = bounds or SearchBounds(max_vertices=max(n, 1))
    if n > CANONICAL_LIMIT:
        raise ValueError(f"digraph enumeration limited to n <= {CANONICAL_LIMIT}")
    for d in _classes(n, bounds.allow_loops_in_d):
        if bounds.max_arcs is not None and d.num_arcs() > bounds.max_arcs:
            break
        yield d


def colour_orbit_filter(perms: Sequence[Sequence[int]]):
    """Predicate accepting a colouring iff it is least in its orbit under ``perms``."""
    nontrivial = [p for p in perms if any(i != x for i, x in enumerate(p))]

    def keep(cols: tuple[int, ...]) -> bool:
        for p in nontrivial:
            if tuple(p[c] for c in cols) < cols:
                return False
        return True

    return keep


def enumerate_colourings(d: Digraph, k: int, symmetry: Sequence[Sequence[int]] = (),
                         cap: int | None = None) -> Iterator[ColouredInstance]:
    """All k**m colourings of d's arcs in lexicographic order.

    ``symmetry`` is a group of colour permutations (normally the pattern's
    automorphisms); when given, only the lexicographically least colouring of
    each orbit is produced.
    """
    m = d.num_arcs()
    if cap is not None and k ** m > cap:
        raise OverflowError(f"{k}**{m} colourings exceed the cap of {cap}")
    keep = colour_orbit_filter(symmetry) if symmetry else None
    for cols in itertools.product(range(k), repeat=m):
        if keep is None or keep(cols):
            yield ColouredInstance(d, k, cols)


# --- falsification ----------------------------------------------------------

def _candidates(bounds: SearchBounds) -> list[Digraph]:
    out = []
    for n in range(bounds.min_vertices, bounds.max_vertices + 1):
        for d in enumerate_digraphs(n, bounds):
            if not bounds.connected_only or d.is_weakly_connected():
                out.append(d)
    return out


def _first_kernelless(d: Digraph, h_rows: tuple[int, ...], k: int, perms, cap, deadline,
                      compiled: bool = True):
    """Scan the colourings of d; returns (colours or None, count, status)."""
    arcs = d.arc_list()
    m = len(arcs)
    if cap is not None and k ** m > cap:
        return None, 0, "skipped"
    if compiled and d.n * k <= 63:
        return _first_kernelless_compiled(d.n, arcs, h_rows, k, perms, deadline)
    keep = colour_orbit_filter(perms) if perms else None
    n = d.n
    count = 0
    for cols in itertools.product(range(k), repeat=m):
        if keep is not None and not keep(cols):
            continue
        count += 1
        if deadline is not None and count % 4096 == 0 and time.monotonic() > deadline:
            return None, count, "timeout"
        rows = reach_rows(n, k, [(a, b, c) for (a, b), c in zip(arcs, cols)], h_rows)
        if find_kernel_mask(n, rows) is None:
            return cols, count, "found"
    return None, count, "done"


def _first_kernelless_compiled(n, arcs, h_rows, k, perms, deadline, budget=1 << 20):
    from . import _scan

    src, dst, pred, parr = _scan.prepare(arcs, h_rows, k, perms)
    cols = np.zeros(len(arcs), dtype=np.int64)
    count = 0
    while True:
        status, tested = _scan.scan(n, k, src, dst, pred, parr, cols, budget, _scan.memo_for(n))
        count += tested
        if status == _scan.FOUND:
            return tuple(int(c) for c in cols), count, "found"
        if status == _scan.DONE:
            return None, count, "done"
        if deadline is not None and time.monotonic() > deadline:
            return None, count, "timeout"


def _scan_chunk(args):
    ds, h_rows, k, perms, cap, deadline, compiled = args
    checked = colourings = skipped = 0
    for d in ds:
        if deadline is not None and time.monotonic() > deadline:
            return None, None, checked, colourings, skipped, True
        cols, count, status = _first_kernelless(d, h_rows, k, perms, cap, deadline, compiled)
        colourings += count
        if status == "skipped":
            skipped += 1
            continue
        checked += 1
        if status == "found":
            return d, cols, checked, colourings, skipped, False
        if status == "timeout":
            return None, None, checked, colourings, skipped, True
    return None, None, checked, colourings, skipped, False


def falsify(h: Pattern, bounds: SearchBounds = SearchBounds()) -> Counterexample | Exhausted:
    """First kernel-free H-coloured instance within ``bounds``, or Exhausted."""
    deadline = None if bounds.time_budget is None else time.monotonic() + bounds.time_budget
    perms = automorphisms(h) if bounds.prune_colours and h.n <= CANONICAL_LIMIT else []
    ds = _candidates(bounds)
    k = h.n
    if bounds.jobs > 1 and len(ds) > 1:
        chunk = max(1, len(ds) // (bounds.jobs * 8))
        jobs = [(ds[i:i + chunk], h.rows, k, perms, bounds.colouring_cap, deadline, bounds.compiled)
                for i in range(0, len(ds), chunk)]
        with ProcessPoolExecutor(bounds.jobs) as pool:
            results = pool.map(_scan_chunk, jobs)
            outcome = _merge(results)
    else:
        outcome = _scan_chunk((ds, h.rows, k, perms, bounds.colouring_cap, deadline, bounds.compiled))
    d, cols, checked, colourings, skipped, timed_out = outcome
    if skipped:
        log.warning("skipped %d digraphs over the colouring cap", skipped)
    if d is not None:
        inst = ColouredInstance(d, k, cols)
        assert not enumerate_kernel_masks(inst.n, reach_rows(inst.n, k, inst.coloured_arcs(), h.rows))
        return Counterexample(inst, h, checked, colourings)
    return Exhausted(bounds, checked, colourings, skipped, timed_out)


def _merge(results):
    # chunks arrive in submission order; the first hit is canonically first
    checked = colourings = skipped = 0
    for d, cols, c, col, s, timed_out in results:
        checked += c
        colourings += col
        skipped += s
        if d is not None or timed_out:
            return d, cols, checked, colourings, skipped, timed_out
    return None, None, checked, colourings, skipped, False


# --- classification ---------------------------------------------------------

@dataclass(frozen=True)
class ClassificationRow:
    pattern: Pattern
    verdict: Verdict
    witness: Counterexample | Exhausted | None
    level: int | None  # max_vertices at which the counterexample appeared
    fatal: bool = False

    @property
    def status(self) -> str:
        if self.fatal:
            return "FATAL"
        if self.verdict.panchromatic:
            return "PANCHROMATIC"
        if isinstance(self.witness, Counterexample):
            return "NOT-PANCHROMATIC"
        return "NOT-PANCHROMATIC-UNWITNESSED"


def looped_patterns(n: int) -> list[Pattern]:
    """One fully looped pattern per isomorphism class, in canonical order."""
    loops = tuple(1 << u for u in range(n))
    return [Digraph(n, tuple(r | l for r, l in zip(d.rows, loops))) for d in _classes(n, False)]


def classify_order(n: int, bounds: SearchBounds = SearchBounds(),
                   escalation: Sequence[int] = ESCALATION,
                   positive_max_vertices: int | None = 4) -> list[ClassificationRow]:
    """Recognise every looped pattern of order n and try to witness each verdict.

    Negatives escalate through ``escalation`` (each level searches only the
    new vertex count). Positives are searched exhaustively up to
    ``positive_max_vertices`` (None skips them); any counterexample there is a
    FATAL row. Errors in one row never stop the sweep.
    """
    rows = []
    for h in looped_patterns(n):
        verdict = recognize(h)
        witness: Counterexample | Exhausted | None = None
        level = None
        fatal = False
        try:
            if verdict.panchromatic:
                if positive_max_vertices is not None:
                    witness = falsify(h, replace(bounds, min_vertices=1, max_vertices=positive_max_vertices))
                    if isinstance(witness, Counterexample):
                        fatal = True
                        log.error("theorem violation: pattern %s", h.arc_list())
            else:
                lo = 1
                for top in escalation:
                    witness = falsify(h, replace(bounds, min_vertices=lo, max_vertices=top))
                    if isinstance(witness, Counterexample):
                        level = top
                        break
                    lo = top + 1
        except (ValueError, OverflowError) as exc:
            log.error("row %s failed: %s", h.arc_list(), exc)
        rows.append(ClassificationRow(h, verdict, witness, level, fatal))
    return rows
