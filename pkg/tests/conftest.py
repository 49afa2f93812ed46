from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dkrigid.core import Framework, Graph

CRITERIA: dict[int, tuple[str, str, float]] = {}


def record_criterion(number: int, title: str, ok: bool, seconds: float) -> None:
    CRITERIA[number] = (title, "PASS" if ok else "FAIL", seconds)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, status, seconds = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status} ({seconds:.2f}s) {title}")


def random_graph(rng: random.Random, n: int, p: float = 0.5, connected: bool = False) -> Graph:
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if not connected or g.is_connected():
            return g


@pytest.fixture
def k4_minus_e() -> Graph:
    # K4 without the edge 1-3 (v2v4 when counting from 1)
    return Graph.complete(4).remove_edges([(1, 3)])


@pytest.fixture
def example_51(k4_minus_e) -> Framework:
    return Framework.from_positions(
        k4_minus_e, [(0, Fraction(7, 5)), (1, 2), (6, 8), (16, 12)]
    )


@pytest.fixture
def square() -> Framework:
    return Framework.from_positions(Graph.cycle(4), [(1, 1), (2, 1), (2, 2), (1, 2)])
