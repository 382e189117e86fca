from __future__ import annotations

import networkx as nx
import pytest

from kpplanar.graph import Graph


def atlas_graphs(max_n: int, connected: bool = False):
    """Graphs of the networkx atlas as library graphs (one per isomorphism class)."""
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > max_n:
            break
        if connected and not nx.is_connected(h):
            continue
        yield Graph.from_pairs(h.edges(), vertices=h.nodes())


@pytest.fixture
def k7() -> Graph:
    return Graph.complete(7)


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record a criterion's outcome for the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}"
        _CRITERIA[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
