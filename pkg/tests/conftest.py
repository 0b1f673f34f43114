import random

import pytest

from grundykit.graph import Graph, complete_graph, cycle_graph, path_graph, random_graph

CORPUS_SEED = 20240601
ACCEPTANCE_LINES: list[str] = []
CORPUS_SIZE = 200


def random_corpus(size: int = CORPUS_SIZE, max_n: int = 8, seed: int = CORPUS_SEED) -> list[Graph]:
    """Seeded G(n, p) graphs with 1 <= n <= max_n and mixed densities."""
    rng = random.Random(seed)
    out = []
    for i in range(size):
        n = rng.randint(1, max_n)
        p = rng.choice([0.15, 0.3, 0.45, 0.6, 0.8])
        out.append(random_graph(n, p, seed * 1000 + i))
    return out


SMALL_FACTORS = {
    "P2": path_graph(2),
    "P3": path_graph(3),
    "P4": path_graph(4),
    "C3": cycle_graph(3),
    "C4": cycle_graph(4),
    "C5": cycle_graph(5),
    "K2": complete_graph(2),
    "K3": complete_graph(3),
}


@pytest.fixture(scope="session")
def corpus() -> list[Graph]:
    return random_corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
