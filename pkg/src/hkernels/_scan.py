"""Compiled colouring scan for the falsifier.

Same semantics as the pure-Python loop in ``search``: colourings in
lexicographic order (last arc fastest), orbit-least filter under the given
colour permutations, H-reach via product-state bit masks, kernel existence by
subset enumeration. States must fit in 63 bits (n * k <= 63).
"""
from __future__ import annotations

import numpy as np
from numba import njit

FOUND, DONE, PAUSED = 1, 0, 2


@njit(cache=True)
def _orbit_least(cols, perms):
    m = cols.shape[0]
    for p in range(perms.shape[0]):
        for i in range(m):
            a = perms[p, cols[i]]
            b = cols[i]
            if a < b:
                return False
            if a > b:
                break
    return True


@njit(cache=True)
def _kernel_exists(n, off):
    full = (np.int64(1) << n) - 1
    # vertices reaching nothing must belong to every kernel
    forced = np.int64(0)
    for u in range(n):
        if off[u] == 0:
            forced |= np.int64(1) << u
    for kmask in range(1, full + 1):
        if kmask & forced != forced:
            continue
        ok = True
        for u in range(n):
            if (kmask >> u) & 1:
                if off[u] & kmask:
                    ok = False
                    break
            elif off[u] & kmask == 0:
                ok = False
                break
        if ok:
            return True
    return False


@njit(cache=True)
def _has_kernel(n, k, src, dst, cols, pred, memo):
    # pred[c2]: mask of colours c with (c, c2) in H
    ns = n * k
    # reach[s]: product states reachable from s in one or more steps
    reach = np.zeros(ns, dtype=np.int64)
    start = np.zeros(n, dtype=np.int64)
    for i in range(src.shape[0]):
        c2 = cols[i]
        bit = np.int64(1) << (dst[i] * k + c2)
        start[src[i]] |= bit
        pm = pred[c2]
        base = src[i] * k
        for c in range(k):
            if (pm >> c) & 1:
                reach[base + c] |= bit
    for m in range(ns):  # Warshall closure over bit rows
        bm = np.int64(1) << m
        rm = reach[m]
        for s in range(ns):
            if reach[s] & bm:
                reach[s] |= rm
    block = (np.int64(1) << k) - 1
    off = np.zeros(n, dtype=np.int64)
    for u in range(n):
        seen = start[u]
        for s in range(ns):
            if (start[u] >> s) & 1:
                seen |= reach[s]
        row = np.int64(0)
        for v in range(n):
            if v != u and (seen >> (v * k)) & block:
                row |= np.int64(1) << v
        off[u] = row
    if memo.shape[0] == 0:
        return _kernel_exists(n, off)
    # memo is indexed by the off-diagonal relation, n - 1 bits per row
    code = np.int64(0)
    for u in range(n):
        r = off[u]
        packed = ((r >> (u + 1)) << u) | (r & ((np.int64(1) << u) - 1))
        code |= packed << (u * (n - 1))
    hit = memo[code]
    if hit < 0:
        hit = 1 if _kernel_exists(n, off) else 0
        memo[code] = hit
    return hit == 1


@njit(cache=True)
def scan(n, k, src, dst, pred, perms, cols, budget, memo):
    """Advance through colourings starting at ``cols`` (modified in place).

    Returns (status, tested): FOUND leaves ``cols`` at the kernel-free
    colouring, DONE means the space is exhausted, PAUSED means ``budget``
    colourings were tested and ``cols`` holds the next one to try.
    """
    m = cols.shape[0]
    tested = 0
    while True:
        if _orbit_least(cols, perms):
            if tested == budget:
                return PAUSED, tested
            tested += 1
            if not _has_kernel(n, k, src, dst, cols, pred, memo):
                return FOUND, tested
        i = m - 1
        while i >= 0:
            cols[i] += 1
            if cols[i] < k:
                break
            cols[i] = 0
            i -= 1
        if i < 0:
            return DONE, tested


MEMO_MAX_N = 5
_memos: dict[int, np.ndarray] = {}


def memo_for(n: int) -> np.ndarray:
    """Shared kernel-existence table for n-vertex relations (empty if too big)."""
    if n > MEMO_MAX_N:
        return np.zeros(0, dtype=np.int8)
    if n not in _memos:
        _memos[n] = np.full(1 << (n * (n - 1)), -1, dtype=np.int8)
    return _memos[n]


def prepare(arcs, h_rows, k, perms):
    src = np.array([a for a, _ in arcs], dtype=np.int64)
    dst = np.array([b for _, b in arcs], dtype=np.int64)
    pred = np.zeros(k, dtype=np.int64)
    for c in range(k):
        for c2 in range(k):
            if h_rows[c] >> c2 & 1:
                pred[c2] |= 1 << c
    nontrivial = [p for p in perms if any(i != x for i, x in enumerate(p))]
    parr = np.array(nontrivial, dtype=np.int64).reshape(len(nontrivial), k)
    return src, dst, pred, parr
