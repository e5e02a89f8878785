import itertools
import random

import numpy as np
import pytest

from hkernels import _scan
from hkernels.digraph import Digraph, automorphisms, canonicalize, complement
from hkernels.hwalk import reach_rows
from hkernels.kernel import enumerate_h_kernels, find_h_kernel, find_kernel_mask
from hkernels.search import (
    Counterexample,
    Exhausted,
    SearchBounds,
    _first_kernelless,
    classify_order,
    enumerate_colourings,
    enumerate_digraphs,
    falsify,
    looped_patterns,
)
from oracles import iso_classes, random_instance, random_looped_pattern

TWO_K1 = Digraph.from_arcs(2, [(0, 0), (1, 1)])
UNLOOPED1 = Digraph.from_arcs(1, [])
LOOPED_PATH = Digraph.from_arcs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])


class TestEnumeration:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_class_counts_match_oracle(self, n):
        ds = list(enumerate_digraphs(n))
        assert len(ds) == iso_classes(n)
        assert len({canonicalize(d).code for d in ds}) == len(ds)

    def test_order_is_arc_count_then_code(self):
        ds = list(enumerate_digraphs(3))
        keys = [(d.num_arcs(), canonicalize(d).code) for d in ds]
        assert keys == sorted(keys)

    def test_loops_allowed_single_vertex(self):
        assert len(list(enumerate_digraphs(1, SearchBounds(allow_loops_in_d=True)))) == 2

    def test_max_arcs(self):
        assert len(list(enumerate_digraphs(3, SearchBounds(max_arcs=1)))) == 2

    def test_looped_patterns(self):
        assert [len(looped_patterns(n)) for n in (1, 2, 3)] == [1, 3, 16]
        assert all(h.is_looped() for h in looped_patterns(3))


class TestColourings:
    def test_single_arc(self):
        assert len(list(enumerate_colourings(Digraph.from_arcs(2, [(0, 1)]), 3))) == 3

    def test_two_arcs_two_colours(self):
        out = [c.colours for c in enumerate_colourings(Digraph.from_arcs(3, [(0, 1), (1, 2)]), 2)]
        assert out == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_triangle_orbits(self):
        tri = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        perms = automorphisms(Digraph.complete(3))
        kept = [c.colours for c in enumerate_colourings(tri, 3, perms)]
        # orbits computed by applying every colour permutation directly
        orbits = {min(tuple(p[c] for c in cols) for p in itertools.permutations(range(3)))
                  for cols in itertools.product(range(3), repeat=3)}
        assert len(kept) == len(orbits) == 5
        assert set(kept) == orbits

    def test_cap(self):
        with pytest.raises(OverflowError):
            list(enumerate_colourings(Digraph.from_arcs(3, [(0, 1), (1, 2)]), 3, cap=8))


class TestFalsify:
    def test_two_k1_exhausted(self):
        r = falsify(TWO_K1, SearchBounds(max_vertices=3))
        assert isinstance(r, Exhausted) and r.complete

    def test_unlooped_colour_gives_triangle(self):
        r = falsify(UNLOOPED1, SearchBounds(max_vertices=3))
        assert isinstance(r, Counterexample)
        assert r.instance.d.arcs == {(0, 1), (1, 2), (2, 0)} or canonicalize(r.instance.d) == canonicalize(
            Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]))
        assert r.instance.n == 3 and r.instance.d.num_arcs() == 3

    def test_looped_path_counterexample(self):
        r = falsify(LOOPED_PATH, SearchBounds(max_vertices=3))
        assert isinstance(r, Counterexample)
        assert find_h_kernel(r.instance, LOOPED_PATH) is None
        assert enumerate_h_kernels(r.instance, LOOPED_PATH) == []

    def test_counterexamples_revalidate(self):
        for h in looped_patterns(3):
            r = falsify(h, SearchBounds(max_vertices=3))
            if isinstance(r, Counterexample):
                assert enumerate_h_kernels(r.instance, h) == []

    def test_compiled_matches_python(self):
        for h in looped_patterns(3)[::3] + [UNLOOPED1]:
            perms = automorphisms(h)
            for d in enumerate_digraphs(3):
                a = _first_kernelless(d, h.rows, h.n, perms, None, None, compiled=True)
                b = _first_kernelless(d, h.rows, h.n, perms, None, None, compiled=False)
                assert a == b

    def test_compiled_kernel_check_matches_reference(self):
        rng = random.Random(7)
        for _ in range(400):
            k = rng.randint(1, 3)
            h = random_looped_pattern(rng, k, rng.random()) if rng.random() < 0.8 else UNLOOPED1
            k = h.n
            inst = random_instance(rng, rng.randint(2, 6), k, rng.random())
            arcs = inst.coloured_arcs()
            if not arcs:
                continue
            src, dst, pred, _ = _scan.prepare([(a, b) for a, b, _ in arcs], h.rows, k, [])
            cols = np.array([c for _, _, c in arcs], dtype=np.int64)
            fast = _scan._has_kernel(inst.n, k, src, dst, cols, pred, _scan.memo_for(inst.n))
            slow = find_kernel_mask(inst.n, reach_rows(inst.n, k, arcs, h.rows)) is not None
            assert fast == slow

    def test_pruning_does_not_change_verdict(self):
        for h in looped_patterns(3):
            a = falsify(h, SearchBounds(max_vertices=3))
            b = falsify(h, SearchBounds(max_vertices=3, prune_colours=False))
            assert type(a) is type(b)

    def test_connected_pruning_does_not_change_verdict(self):
        for h in looped_patterns(3) + [UNLOOPED1]:
            a = falsify(h, SearchBounds(max_vertices=3))
            b = falsify(h, SearchBounds(max_vertices=3, connected_only=False))
            assert type(a) is type(b)

    def test_cap_skips(self):
        r = falsify(TWO_K1, SearchBounds(max_vertices=3, colouring_cap=4))
        assert isinstance(r, Exhausted) and r.skipped_digraphs and not r.complete

    def test_time_budget(self):
        r = falsify(TWO_K1, SearchBounds(max_vertices=4, time_budget=0.0))
        assert isinstance(r, Exhausted) and r.timed_out

    def test_deterministic(self):
        a = falsify(LOOPED_PATH, SearchBounds(max_vertices=4))
        b = falsify(LOOPED_PATH, SearchBounds(max_vertices=4))
        assert a.instance == b.instance

    def test_jobs_same_answer(self):
        a = falsify(LOOPED_PATH, SearchBounds(max_vertices=4))
        b = falsify(LOOPED_PATH, SearchBounds(max_vertices=4, jobs=2))
        assert a.instance == b.instance

    def test_bounds_validation(self):
        with pytest.raises(ValueError):
            SearchBounds(max_vertices=0)


class TestClassify:
    def test_order_one(self):
        rows = classify_order(1, escalation=(3,))
        assert [r.status for r in rows] == ["PANCHROMATIC"]

    def test_order_two(self):
        rows = classify_order(2, escalation=(3,), positive_max_vertices=3)
        assert len(rows) == 3 and all(r.status == "PANCHROMATIC" for r in rows)

    def test_order_three_verdicts(self):
        rows = classify_order(3, escalation=(3,), positive_max_vertices=3)
        assert len(rows) == 16
        pos = [r for r in rows if r.verdict.panchromatic]
        assert len(pos) == 5
        assert not any(r.fatal for r in rows)
        complements = sorted(sorted(complement(r.pattern).arc_list()) for r in pos)
        # complete, one arc, out-fan, in-fan, and expand(2K1, [2, 1])
        assert len(complements[0]) == 0
        assert sorted(len(c) for c in complements) == [0, 1, 2, 2, 4]

    def test_witnessed_rows_have_levels(self):
        rows = classify_order(3, escalation=(3,), positive_max_vertices=None)
        for r in rows:
            if isinstance(r.witness, Counterexample):
                assert r.level == 3 and r.status == "NOT-PANCHROMATIC"
                assert find_h_kernel(r.witness.instance, r.pattern) is None
