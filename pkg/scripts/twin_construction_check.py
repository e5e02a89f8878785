"""Random audit of the twin construction that simulates a missing pattern
arc (u, v) through a midpoint z.

For each fixture it compares kernel existence in D over H + (u, v) with
kernel existence in D' over H, and checks every kernel of D' pulled back to
D. Prints the counts and the smallest fixture breaking each property.

    python3 scripts/twin_construction_check.py --fixtures 20000 --max-pattern 4
"""
from __future__ import annotations

import argparse
import random

from hkernels.digraph import ColouredInstance, Digraph
from hkernels.hwalk import h_reach
from hkernels.kernel import check_kernel, enumerate_h_kernels
from hkernels.reductions import midpoints, p2_transform, pullback_kernel


def random_fixture(rng, max_pattern, max_d):
    while True:
        k = rng.randint(2, max_pattern)
        p = rng.random()
        h = Digraph.from_arcs(k, [(a, b) for a in range(k) for b in range(k) if a == b or rng.random() < p])
        pairs = [(u, v) for u in range(k) for v in range(k)
                 if u != v and not h.has_arc(u, v) and midpoints(h, u, v)]
        if not pairs:
            continue
        u, v = rng.choice(pairs)
        z = rng.choice(midpoints(h, u, v))
        n = rng.randint(1, max_d)
        q = rng.random()
        arcs = [(a, b, rng.randrange(k)) for a in range(n) for b in range(n) if a != b and rng.random() < q]
        return h, u, v, z, ColouredInstance.from_coloured_arcs(n, k, arcs)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--fixtures", type=int, default=20000)
    ap.add_argument("--max-pattern", type=int, default=4)
    ap.add_argument("--max-d", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    disagree = bad = pulled = 0
    first_disagree = first_bad = None
    for _ in range(args.fixtures):
        h, u, v, z, inst = random_fixture(rng, args.max_pattern, args.max_d)
        big = h.with_arc(u, v)
        t = p2_transform(inst, h, u, v, z)
        size = (inst.n, inst.d.num_arcs(), h.n)
        ks = enumerate_h_kernels(t.transformed, h)
        if bool(ks) != bool(enumerate_h_kernels(inst, big)):
            disagree += 1
            if first_disagree is None or size < first_disagree[0]:
                first_disagree = (size, h.arc_list(), (u, v, z), inst.coloured_arcs(), bool(ks))
        reach = h_reach(inst, big)
        for kp in ks:
            pulled += 1
            k = pullback_kernel(t, kp)
            violation = check_kernel(inst, big, k, reach)
            if violation is not None:
                bad += 1
                if first_bad is None or size < first_bad[0]:
                    first_bad = (size, h.arc_list(), (u, v, z), inst.coloured_arcs(), kp, k, violation.kind)
    print(f"fixtures {args.fixtures}: existence disagreements {disagree}; "
          f"pullbacks failing {bad}/{pulled}")
    if first_disagree:
        print("smallest existence disagreement:", first_disagree[1:])
    if first_bad:
        print("smallest failing pullback:", first_bad[1:])


if __name__ == "__main__":
    main()
