import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import digraphs
from hkernels.digraph import Digraph, PartitionInvalid, block_partition, complement, contract, expand
from hkernels.recognizer import (
    BicompleteSplit,
    OddComplementCycle,
    StructuralFailure,
    TwoK1Split,
    UnloopedVertex,
    bicomplete_split,
    caminos_certificate,
    check_caminos,
    is_bicomplete_split,
    is_two_k1_split,
    odd_complement_cycle,
    recognize,
    two_k1_split,
)
from oracles import random_looped_pattern

TWO_K1 = Digraph.from_arcs(2, [(0, 0), (1, 1)])
LOOPED_PATH = Digraph.from_arcs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])


def all_looped(n):
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    loops = [(u, u) for u in range(n)]
    for mask in range(1 << len(slots)):
        yield Digraph.from_arcs(n, loops + [s for i, s in enumerate(slots) if mask >> i & 1])


def brute_panchromatic(h: Digraph) -> bool:
    """Theorem condition by trying every split and every 2-partition."""
    if not h.is_looped():
        return False
    vs = range(h.n)
    for mask in range(1 << h.n):
        x = [v for v in vs if mask >> v & 1]
        y = [v for v in vs if not mask >> v & 1]
        if is_bicomplete_split(h, x, y):
            return True
        if x and y:
            try:
                if contract(h, [x, y]) == TWO_K1:
                    return True
            except PartitionInvalid:
                pass
    return False


def brute_odd_cycle_length(h: Digraph):
    g = complement(h)
    best = None
    for size in range(3, h.n + 1, 2):
        for vs in itertools.permutations(range(h.n), size):
            if vs[0] == min(vs) and all(g.has_arc(a, b) for a, b in zip(vs, vs[1:] + vs[:1])):
                return size
    return best


class TestSplits:
    def test_complete(self):
        assert bicomplete_split(Digraph.complete(3)) == BicompleteSplit((0, 1, 2), ())

    def test_fan_in_complement(self):
        arcs = {(u, v) for u in range(3) for v in range(3)} - {(0, 2), (1, 2)}
        h = Digraph.from_arcs(3, arcs)
        assert bicomplete_split(h) == BicompleteSplit((0, 1), (2,))
        # all 9 ordered pairs against the definition
        assert is_bicomplete_split(h, (0, 1), (2,))

    def test_looped_path_not_bicomplete(self):
        assert bicomplete_split(LOOPED_PATH) is None

    def test_unlooped_never_bicomplete(self):
        assert bicomplete_split(Digraph.from_arcs(1, [])) is None

    def test_two_k1(self):
        assert two_k1_split(TWO_K1) == TwoK1Split((0,), (1,))

    def test_two_k1_expansion(self):
        assert two_k1_split(expand(TWO_K1, [2, 1])) == TwoK1Split((0, 1), (2,))

    def test_complete_pair_no_two_k1(self):
        assert two_k1_split(Digraph.complete(2)) is None

    def test_three_components_no_two_k1(self):
        assert two_k1_split(Digraph.from_arcs(3, [(0, 0), (1, 1), (2, 2)])) is None


class TestRecognize:
    def test_two_k1(self):
        v = recognize(TWO_K1)
        assert v.panchromatic and isinstance(v.certificate, TwoK1Split)
        assert str(v) == "PANCHROMATIC two-k1-split X={0} Y={1}"

    def test_single_looped_vertex(self):
        v = recognize(Digraph.from_arcs(1, [(0, 0)]))
        assert v.certificate == BicompleteSplit((0,), ())

    def test_looped_path(self):
        v = recognize(LOOPED_PATH)
        assert not v.panchromatic
        assert OddComplementCycle((0, 2, 1)) in v.hints
        assert any(isinstance(r, StructuralFailure) for r in v.hints)

    def test_unlooped(self):
        v = recognize(Digraph.from_arcs(1, []))
        assert not v.panchromatic and v.hints[0] == UnloopedVertex(0)
        assert str(v).splitlines()[0] == "NOT-PANCHROMATIC unlooped-vertex 0"

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_brute_force_exhaustive(self, n):
        for h in all_looped(n):
            assert recognize(h).panchromatic == brute_panchromatic(h)

    @settings(max_examples=200)
    @given(digraphs(max_n=6, loops=True))
    def test_matches_brute_force_random(self, h):
        assert recognize(h).panchromatic == brute_panchromatic(h)

    @settings(max_examples=200)
    @given(digraphs(max_n=6, loops=True))
    def test_certificates_revalidate(self, h):
        v = recognize(h)
        if isinstance(v.certificate, BicompleteSplit):
            assert is_bicomplete_split(h, v.certificate.x, v.certificate.y)
        elif isinstance(v.certificate, TwoK1Split):
            assert is_two_k1_split(h, v.certificate.x, v.certificate.y)
        else:
            assert any(isinstance(r, StructuralFailure) for r in v.hints) or not h.is_looped()


class TestRefutations:
    def test_odd_cycle_looped_path(self):
        assert odd_complement_cycle(LOOPED_PATH) == (0, 2, 1)

    def test_odd_cycle_none(self):
        assert odd_complement_cycle(TWO_K1) is None
        assert odd_complement_cycle(Digraph.complete(4)) is None

    @settings(max_examples=200)
    @given(digraphs(max_n=6, loops=True))
    def test_odd_cycle_is_shortest(self, h):
        cyc = odd_complement_cycle(h)
        g = complement(h)
        if cyc is None:
            assert brute_odd_cycle_length(h) is None
        else:
            assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
            assert all(g.has_arc(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
            assert len(cyc) == brute_odd_cycle_length(h)

    def test_caminos_looped_path(self):
        cert = caminos_certificate(LOOPED_PATH)
        assert cert.walk == (0, 1) and cert.missing == (2,)
        assert check_caminos(LOOPED_PATH, cert)

    def test_caminos_none(self):
        assert caminos_certificate(Digraph.complete(3)) is None
        assert caminos_certificate(TWO_K1) is None

    def test_caminos_bad_bound(self):
        with pytest.raises(ValueError):
            caminos_certificate(TWO_K1, max_len=0)

    @given(digraphs(max_n=5, loops=True))
    def test_caminos_sound(self, h):
        cert = caminos_certificate(h)
        if cert is not None:
            assert check_caminos(h, cert)


class TestTheoremConsistency:
    def test_refutations_sound_on_all_order_three(self):
        for h in all_looped(3):
            if recognize(h).panchromatic:
                assert odd_complement_cycle(h) is None
                assert caminos_certificate(h) is None

    def test_refutations_sound_random(self):
        rng = random.Random(0)
        for _ in range(500):
            h = random_looped_pattern(rng, rng.randint(1, 6), rng.random())
            if recognize(h).panchromatic:
                assert odd_complement_cycle(h) is None
                assert caminos_certificate(h) is None

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_induced_closure(self, n):
        for h in all_looped(n):
            if not recognize(h).panchromatic:
                continue
            for size in range(1, n):
                for vs in itertools.combinations(range(n), size):
                    assert recognize(h.induced(vs)).panchromatic

    @settings(max_examples=100)
    @given(digraphs(max_n=4, looped=True), st.data())
    def test_contraction_invariance(self, h, data):
        sizes = [data.draw(st.integers(1, 3)) for _ in range(h.n)]
        big = expand(h, sizes)
        assert contract(big, block_partition(sizes)) == h
        assert recognize(big).panchromatic == recognize(h).panchromatic

    def test_distance_two_arc_keeps_panchromatic(self):
        rng = random.Random(1)
        cases = list(all_looped(3)) + [random_looped_pattern(rng, rng.randint(3, 5), rng.random())
                                       for _ in range(300)]
        for h in cases:
            if not recognize(h).panchromatic:
                continue
            for u in range(h.n):
                for v in range(h.n):
                    if u != v and not h.has_arc(u, v) and h.rows[u] & h.in_rows[v]:
                        assert recognize(h.with_arc(u, v)).panchromatic
