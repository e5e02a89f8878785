"""Seeded random search for kernel-free instances of the order-3 negatives.

Supplementary evidence only: a miss proves nothing, but every hit is
re-checked with the exact solver (subset enumeration over the full reach
relation) before it is written out. Useful for patterns whose smallest
counterexample lies beyond the exhaustive bound.

    python3 scripts/random_witnesses.py --vertices 7 --seconds 600 -o witnesses/
"""
from __future__ import annotations

import argparse
import pathlib
import time

import numpy as np
from numba import njit

from hkernels import _scan
from hkernels.digraph import ColouredInstance, complement, format_instance
from hkernels.hwalk import h_reach
from hkernels.kernel import enumerate_kernel_masks
from hkernels.recognizer import recognize
from hkernels.search import Counterexample, SearchBounds, falsify, looped_patterns


@njit(cache=True)
def _sample(n, k, pred, slot_src, slot_dst, densities, iters, memo):
    for it in range(iters):
        p = densities[it % densities.shape[0]]
        sel = np.random.random(slot_src.shape[0]) < p
        src = slot_src[sel]
        dst = slot_dst[sel]
        if src.shape[0] == 0:
            continue
        cols = np.random.randint(0, k, src.shape[0])
        if not _scan._has_kernel(n, k, src, dst, cols, pred, memo):
            return it + 1, src, dst, cols
    return iters, slot_src[:0], slot_dst[:0], slot_src[:0]


@njit(cache=True)
def _seed(s):
    np.random.seed(s)


def hunt(h, n, seconds, seed, batch=100_000):
    """(instance or None, samples drawn)."""
    k = h.n
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    src = np.array([a for a, _ in slots], dtype=np.int64)
    dst = np.array([b for _, b in slots], dtype=np.int64)
    _, _, pred, _ = _scan.prepare([(0, 1)], h.rows, k, [])
    densities = np.array([0.3, 0.4, 0.5, 0.6, 0.7, 0.8])
    memo = _scan.memo_for(n)
    _seed(seed)
    drawn = 0
    t0 = time.monotonic()
    while time.monotonic() - t0 < seconds:
        used, s, d, c = _sample(n, k, pred, src, dst, densities, batch, memo)
        drawn += used
        if s.shape[0]:
            inst = ColouredInstance.from_coloured_arcs(n, k, zip(s.tolist(), d.tolist(), c.tolist()))
            rows = h_reach(inst, h).rows
            assert not enumerate_kernel_masks(n, rows)
            return inst, drawn
    return None, drawn


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--vertices", type=int, nargs="+", default=[6, 7])
    ap.add_argument("--seconds", type=float, default=300, help="per pattern and vertex count")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-below", type=int, default=4,
                    help="skip patterns with an exhaustive witness at or below this size")
    ap.add_argument("-o", "--out", type=pathlib.Path)
    args = ap.parse_args()

    for i, h in enumerate(looped_patterns(3)):
        if recognize(h, hints=False).panchromatic:
            continue
        tag = complement(h).arc_list()
        if isinstance(falsify(h, SearchBounds(max_vertices=args.skip_below)), Counterexample):
            continue
        for n in args.vertices:
            inst, drawn = hunt(h, n, args.seconds, args.seed)
            if inst is None:
                print(f"row {i} G={tag} n={n}: none in {drawn} samples", flush=True)
                continue
            print(f"row {i} G={tag} n={n}: witness with {inst.d.num_arcs()} arcs after {drawn} samples",
                  flush=True)
            if args.out:
                args.out.mkdir(parents=True, exist_ok=True)
                (args.out / f"order3_row{i:02d}_n{n}.txt").write_text(format_instance(
                    inst, [f"random witness for pattern complement {tag}", f"seed {args.seed}"]))
            break


if __name__ == "__main__":
    main()
