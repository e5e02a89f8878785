import sys
from pathlib import Path

from hypothesis import strategies as st

from hkernels.digraph import ColouredInstance, Digraph

sys.path.insert(0, str(Path(__file__).parent))


@st.composite
def digraphs(draw, min_n=1, max_n=4, loops=False, looped=False):
    n = draw(st.integers(min_n, max_n))
    slots = [(u, v) for u in range(n) for v in range(n) if u != v or loops]
    chosen = draw(st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)))
    arcs = [s for s, c in zip(slots, chosen) if c]
    if looped:
        arcs += [(u, u) for u in range(n)]
    return Digraph.from_arcs(n, arcs)


@st.composite
def instances(draw, max_n=4, max_k=3, k=None):
    d = draw(digraphs(max_n=max_n))
    k = k if k is not None else draw(st.integers(1, max_k))
    cols = draw(st.lists(st.integers(0, k - 1), min_size=d.num_arcs(), max_size=d.num_arcs()))
    return ColouredInstance(d, k, tuple(cols))


@st.composite
def instance_and_pattern(draw, max_n=4, max_k=3):
    h = draw(digraphs(max_n=max_k, loops=True))
    inst = draw(instances(max_n=max_n, k=h.n))
    return inst, h


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
