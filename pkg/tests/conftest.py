import random

import pytest
from hypothesis import HealthCheck, settings

from unitflow.graph import MultiGraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_graph(rng: random.Random, n: int, m: int, C: int = 10) -> MultiGraph:
    arcs = [(rng.randrange(n), rng.randrange(n), rng.randint(-C, C)) for _ in range(m)] if n else []
    return MultiGraph.from_arcs(n, arcs)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def triangle():
    return MultiGraph.from_arcs(3, [(0, 1, -1), (1, 2, -1), (2, 0, -1)])


# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    def record(k: int, ok: bool, detail: str) -> bool:
        line = f"CRITERION {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[k] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
