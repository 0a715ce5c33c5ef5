import os

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from critideal.graphs import Graph

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

EXTENDED = os.environ.get("CRITIDEAL_EXTENDED", "0") not in ("", "0")

extended = pytest.mark.skipif(not EXTENDED, reason="extended tier; set CRITIDEAL_EXTENDED=1")


@st.composite
def graphs(draw, min_n=0, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    edges = {p for k, p in enumerate(pairs) if (mask >> k) & 1}
    if connected:
        # a random spanning tree: each vertex hooks onto an earlier one
        for v in range(1, n):
            edges.add((draw(st.integers(0, v - 1)), v))
    return Graph.from_edges(n, sorted(edges))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
