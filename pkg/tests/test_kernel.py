import random

import pytest
from hypothesis import given, settings

from conftest import instance_and_pattern
from hkernels.digraph import ColouredInstance, Digraph
from hkernels.hwalk import h_reach
from hkernels.kernel import (
    check_kernel,
    enumerate_h_kernels,
    enumerate_kernel_masks,
    find_h_kernel,
)
from oracles import all_kernels, random_digraph, walk_reach

LOOP1 = Digraph.from_arcs(1, [(0, 0)])
UNLOOPED1 = Digraph.from_arcs(1, [])


def mono(n, arcs):
    return ColouredInstance.from_coloured_arcs(n, 1, [(a, b, 0) for a, b in arcs])


TRIANGLE = [(0, 1), (1, 2), (2, 0)]


class TestCheck:
    def test_single_vertex(self):
        assert check_kernel(mono(1, []), LOOP1, [0]) is None

    def test_arc_breaks_independence(self):
        v = check_kernel(mono(2, [(0, 1)]), UNLOOPED1, [0, 1])
        assert v.kind == "independence" and v.pair == (0, 1)

    def test_absorbed_by_arc(self):
        assert check_kernel(mono(2, [(0, 1)]), UNLOOPED1, [1]) is None

    def test_absorbency_violation(self):
        v = check_kernel(mono(2, [(0, 1)]), UNLOOPED1, [0])
        assert v.kind == "absorbency" and v.vertex == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            check_kernel(mono(2, []), UNLOOPED1, [3])


class TestFind:
    def test_triangle_unlooped(self):
        # oracle: R is the arc relation; all 7 non-empty subsets fail
        inst = mono(3, TRIANGLE)
        r = walk_reach(inst, UNLOOPED1)
        assert all_kernels(r) == []
        assert find_h_kernel(inst, UNLOOPED1) is None

    def test_triangle_looped(self):
        inst = mono(3, TRIANGLE)
        assert all_kernels(walk_reach(inst, LOOP1)) == [[0], [1], [2]]
        assert find_h_kernel(inst, LOOP1) == [0]

    def test_isolated_pair(self):
        assert find_h_kernel(mono(2, []), LOOP1) == [0, 1]

    def test_two_cycle(self):
        assert enumerate_h_kernels(mono(2, [(0, 1), (1, 0)]), UNLOOPED1) == [[0], [1]]

    def test_enumerate_triangle(self):
        assert enumerate_h_kernels(mono(3, TRIANGLE), UNLOOPED1) == []

    def test_enumerate_single(self):
        assert enumerate_h_kernels(mono(1, []), UNLOOPED1) == [[0]]

    def test_enumerate_guard(self):
        with pytest.raises(ValueError):
            enumerate_kernel_masks(21, [0] * 21)

    def test_lexicographic_least_not_first_by_size(self):
        # kernels {0,2} and {1}: the sorted-list order puts [0, 2] first
        inst = mono(3, [(1, 0), (1, 2), (0, 1), (2, 1)])
        assert enumerate_h_kernels(inst, UNLOOPED1) == [[0, 2], [1]]
        assert find_h_kernel(inst, UNLOOPED1) == [0, 2]

    @settings(max_examples=300)
    @given(instance_and_pattern(max_n=6))
    def test_solver_agrees_with_subset_oracle(self, pair):
        inst, h = pair
        r = h_reach(inst, h)
        kernels = all_kernels(r.matrix())
        assert enumerate_h_kernels(inst, h, r) == kernels
        found = find_h_kernel(inst, h, r)
        assert found == (kernels[0] if kernels else None)
        if found is not None:
            assert check_kernel(inst, h, found, r) is None

    @given(instance_and_pattern(max_n=6))
    def test_kernels_are_antichains(self, pair):
        inst, h = pair
        r = h_reach(inst, h)
        for k in enumerate_h_kernels(inst, h, r):
            assert not any(r(a, b) for a in k for b in k if a != b)


def test_complete_pattern_always_has_kernel():
    rng = random.Random(0)
    for _ in range(300):
        d = random_digraph(rng, rng.randint(1, 6), rng.random())
        k = rng.randint(1, 3)
        inst = ColouredInstance(d, k, tuple(rng.randrange(k) for _ in range(d.num_arcs())))
        assert find_h_kernel(inst, Digraph.complete(k)) is not None
