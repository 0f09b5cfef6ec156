import random
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from minoruniv.graph import Graph  # noqa: E402
from oracles import random_connected_planar  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def small_graphs(draw, min_n=1, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    es = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph(range(n), es)
    if connected:
        # chain the components together so the graph is connected
        comps = g.components()
        g = g.add_edges((comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1))
    return g


@st.composite
def planar_graphs(draw, lo=3, hi=9):
    seed = draw(st.integers(0, 10**6))
    return random_connected_planar(random.Random(seed), lo, hi)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
