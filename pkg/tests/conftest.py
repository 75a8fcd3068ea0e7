import functools

import pytest
from hypothesis import HealthCheck, settings

from hyperspec.hypergraph import build_hypergraph, complete_hypergraph, cycle_graph
from hyperspec.sampler import sample_hypergraph

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def cached_sample(n, d, k, seed, method="rejection"):
    return sample_hypergraph(n, d, k, seed=seed, method=method)


@pytest.fixture
def triangle():
    return cycle_graph(3)


@pytest.fixture
def k4_3():
    """All four 3-subsets of a 4-set: (3,3)-regular, A = 2(J - I)."""
    return complete_hypergraph(4, 3)


@pytest.fixture
def two_triangles():
    return build_hypergraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], 2, 2)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
