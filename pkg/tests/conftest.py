import pytest
from hypothesis import strategies as st

from domset.graph import Graph

_acceptance_lines: list[str] = []


@pytest.fixture
def report():
    """Record one pass/fail line for the end-of-session acceptance summary."""

    def _report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _acceptance_lines.append(line)
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)


@pytest.fixture
def p6():
    return Graph.path(6)


@pytest.fixture
def c5():
    return Graph.cycle(5)


@pytest.fixture
def k4():
    return Graph.complete(4)


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    edges = set()
    for v in range(2, n + 1):
        parent = draw(st.integers(min_value=1, max_value=v - 1))
        edges.add((parent, v))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in edges]
    extra = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges |= {e for e, keep in zip(pairs, extra) if keep}
    return Graph(n, edges)


@st.composite
def graph_and_subset(draw, min_n=1, max_n=8, nonempty=True):
    g = draw(graphs(min_n=min_n, max_n=max_n))
    members = draw(st.lists(st.sampled_from(list(g.vertices)), unique=True, min_size=1 if nonempty else 0))
    return g, frozenset(members)
