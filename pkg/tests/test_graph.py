import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitflow.graph import (
    CapacityError,
    CostScale,
    ExtendedView,
    FlowState,
    InvariantError,
    MultiGraph,
    approx_cost,
    is_eps_optimal,
    rev,
    round_to,
    send_flow,
)


def test_edge_pairing():
    g = MultiGraph.from_arcs(2, [(0, 1, 3), (0, 1, -2)])
    assert g.m == 2 and g.num_edges == 4
    for e in range(4):
        assert rev(rev(e)) == e
        assert g.tail[e] == g.head[rev(e)]
        assert g.cost[e] == -g.cost[rev(e)]
    assert [g.capacity(e) for e in range(4)] == [1, 0, 1, 0]
    assert list(g.arcs()) == [(0, 1, 3), (0, 1, -2)]
    g.check()


def test_vertex_out_of_range():
    with pytest.raises(ValueError):
        MultiGraph.from_arcs(2, [(0, 2, 1)])


def test_push_updates_excess():
    g = MultiGraph.from_arcs(3, [(0, 1, 1), (1, 2, 1)])
    f = FlowState.zero(g)
    f.push(0, g)
    assert f.exc == [-1, 1, 0] and f.X == {1} and f.D == {0} and f.psi == 1
    f.push(2, g)
    assert f.exc == [-1, 0, 1] and f.X == {2}
    f.check(g)
    with pytest.raises(CapacityError):
        f.push(0, g)
    f.push(1, g)  # undo through the reverse
    assert f.f[0] == 0 and f.exc == [0, -1, 1]


def test_send_flow_rejects_repeats():
    g = MultiGraph.from_arcs(2, [(0, 1, 1)])
    with pytest.raises(CapacityError):
        send_flow(g, FlowState.zero(g), [0, 0])


def test_from_original_and_cost(triangle):
    f = FlowState.from_original(triangle, [1, 1, 1])
    assert f.is_circulation() and f.cost(triangle) == -3
    assert f.original() == [1, 1, 1]
    with pytest.raises(CapacityError):
        FlowState.from_original(triangle, [2, 0, 0])


def test_round_to():
    assert round_to(0, 4) == 4
    assert round_to(3, 4) == 4
    assert round_to(4, 4) == 8
    assert round_to(-1, 4) == 0
    assert round_to(-4, 4) == 0
    with pytest.raises(ValueError):
        round_to(1, 0)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 20))
def test_rounded_cost_window(c, k):
    eps = 2 ** k
    cp, cr = approx_cost(c, eps), approx_cost(-c, eps)
    assert c < cp <= c + eps
    assert cp % (eps // 2) == 0
    assert cp + cr > eps


def test_cost_scale_schedule():
    g = MultiGraph.from_arcs(5, [(0, 1, 7), (1, 2, -3)])
    sc = CostScale.for_graph(g)
    assert sc.unit == 2 ** (5).bit_length() * 4
    assert sc.eps <= 7 * sc.unit < 2 * sc.eps
    count = 1
    while not sc.final():
        sc = sc.halved()
        count += 1
    assert count == CostScale.for_graph(g).expected_scales()
    assert sc.eps == 4


def test_zero_costs_have_no_scales():
    sc = CostScale.for_graph(MultiGraph.from_arcs(2, [(0, 1, 0)]))
    assert sc.eps == 0 and sc.expected_scales() == 0


def test_extended_view_edges(triangle):
    f = FlowState.zero(triangle)
    f.push(0, triangle)
    view = ExtendedView(triangle, f, 4)
    assert view.M == sum(abs(c) for c in view.cprime) + 4
    edges = list(view.edges())
    aux = [(u, v, c) for u, v, c, tag in edges if tag is None]
    assert (view.s, 1, 0) in aux
    assert (0, view.t, 0) in aux
    assert (2, view.t, view.M) in aux
    real = [tag for *_, tag in edges if tag is not None]
    assert 0 not in real and 1 in real
    with pytest.raises(ValueError):
        ExtendedView(triangle, f, 3)


def test_eps_optimality_check():
    g = MultiGraph.from_arcs(2, [(0, 1, -5)])
    f = FlowState.zero(g)
    assert not is_eps_optimal(g, f, [0, 0], 4)
    assert is_eps_optimal(g, f, [0, 0], 5)
    assert is_eps_optimal(g, f, [0, 5], 0)
    assert not is_eps_optimal(g, f, [5, 0], 0)



def test_check_catches_stale_excess():
    g = MultiGraph.from_arcs(2, [(0, 1, 1)])
    f = FlowState.zero(g)
    f.push(0, g)
    f.exc[0] = 0
    with pytest.raises(InvariantError):
        f.check(g)
