import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_graph
from unitflow.graph import MultiGraph
from unitflow.oracles import cycle_canceling_oracle, exhaustive_oracle
from unitflow.scaling import (
    InfeasibleError,
    SolverConfig,
    certify,
    certify_report,
    certify_st_flow,
    min_cost_circulation,
    min_cost_st_flow,
)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 7))
    m = draw(st.integers(0, 12))
    arcs = [(draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)), draw(st.integers(-10, 10)))
            for _ in range(m)]
    return MultiGraph.from_arcs(n, arcs)


@given(small_graphs(), st.sampled_from(["dial", "heap"]))
def test_matches_exhaustive(g, engine):
    sol = min_cost_circulation(g, SolverConfig(engine=engine))
    assert sol.cost == exhaustive_oracle(g)
    assert certify(g, sol.flow, sol.prices, sol.eps, sol.unit)


def test_negative_triangle(triangle):
    sol = min_cost_circulation(triangle)
    assert sol.cost == -3 and sol.flow == [1, 1, 1]


def test_zero_cost_graph():
    g = MultiGraph.from_arcs(3, [(0, 1, 0), (1, 0, 0)])
    sol = min_cost_circulation(g)
    assert sol.cost == 0 and sol.scales == []


def test_scale_count_and_certificates_each_scale():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, 30, 90, 50)
        sol = min_cost_circulation(g, SolverConfig(certify_each_scale=True))
        assert sol.eps * (g.n + 1) <= sol.unit
        assert sol.cost == cycle_canceling_oracle(g)


def test_phase_hook_sees_every_phase():
    rng = random.Random(6)
    g = random_graph(rng, 20, 60)
    seen = []
    sol = min_cost_circulation(g, SolverConfig(on_phase=lambda k, ph: seen.append((k, ph.phase))))
    assert len(seen) == sol.phases
    assert {k for k, _ in seen} <= set(range(len(sol.scales)))


def test_certify_rejects_bad_solutions(triangle):
    sol = min_cost_circulation(triangle)
    assert certify_report(triangle, [1, 1, 0], sol.prices, sol.eps, sol.unit)
    assert certify_report(triangle, [2, 0, 0], sol.prices, sol.eps, sol.unit)
    # the empty flow has a negative residual cycle whatever the prices
    assert not certify(triangle, [0, 0, 0], [0, 0, 0], sol.eps, sol.unit)


def st_oracle(g, s, t, k):
    """Cheapest value-k flow via a t->s bundle of very negative arcs."""
    big = 1 + sum(abs(c) for *_, c in g.arcs())
    arcs = list(g.arcs()) + [(t, s, -big)] * k
    h = MultiGraph.from_arcs(g.n, arcs)
    return cycle_canceling_oracle(h) + k * big


def test_st_flow_matches_oracle():
    rng = random.Random(8)
    checked = 0
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 10), rng.randint(1, 25))
        s, t = rng.sample(range(g.n), 2)
        k = rng.randint(1, 3)
        try:
            sol = min_cost_st_flow(g, s, t, k)
        except InfeasibleError:
            with pytest.raises(InfeasibleError):
                min_cost_st_flow(g, s, t, k, SolverConfig(engine="heap"))
            continue
        checked += 1
        assert sol.cost == st_oracle(g, s, t, k)
        assert not certify_st_flow(g, s, t, k, sol)
    assert checked > 10


def test_st_flow_infeasible():
    g = MultiGraph.from_arcs(3, [(0, 1, 1), (1, 2, 1)])
    with pytest.raises(InfeasibleError):
        min_cost_st_flow(g, 0, 2, 2)
    with pytest.raises(InfeasibleError):
        min_cost_st_flow(g, 2, 0, 1)
    assert min_cost_st_flow(g, 0, 2, 1).cost == 2
    assert min_cost_st_flow(g, 0, 2, 0).cost == 0


def test_st_flow_argument_checks():
    g = MultiGraph.from_arcs(2, [(0, 1, 1)])
    with pytest.raises(ValueError):
        min_cost_st_flow(g, 0, 5, 1)
    with pytest.raises(ValueError):
        min_cost_st_flow(g, 0, 1, -1)


def test_unknown_engine(triangle):
    with pytest.raises(ValueError):
        min_cost_circulation(triangle, SolverConfig(engine="nope"))
