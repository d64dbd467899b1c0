import random
from collections import deque

import pytest

from conftest import random_graph
from unitflow.graph import CostScale, ExtendedView, FlowState, InvariantError, MultiGraph, is_eps_optimal
from unitflow.oracles import bellman_ford
from unitflow.refine import dial_distances_to, distances_to, maximal_zero_paths, refine


def first_view(g, seed=0):
    """A scaled instance after the negative-edge saturation that opens a refine."""
    sc = CostScale.for_graph(g)
    gs = g.scaled(sc.unit)
    f = FlowState.zero(gs)
    for e in range(gs.num_edges):
        if f.residual(e) and gs.cost[e] < 0:
            f.push(e, gs)
    return ExtendedView(gs, f, sc.eps)


def reference_distances(view):
    """Distances to t by Bellman-Ford on the reversed extended view."""
    nn = view.n + 2
    arcs = [(v, u, c) for u, v, c, _ in view.edges()]
    return bellman_ford(nn, arcs, view.t)


def instances(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        g = random_graph(rng, rng.randint(2, 12), rng.randint(1, 30))
        if g.max_abs_cost:
            yield g


def test_heap_distances_match_bellman_ford():
    for g in instances(60, 1):
        view = first_view(g)
        d = distances_to(view, [0] * (g.n + 2))
        ref = reference_distances(view)
        assert [x if x != float("inf") else None for x in ref] == [
            x if x < 10 ** 30 else None for x in d]


def test_dial_step_matches_and_stays_feasible():
    for g in instances(60, 2):
        view = first_view(g)
        if not view.flow.X:
            continue
        p = [0] * (g.n + 2)
        delta, buckets = dial_distances_to(view, p)
        ref = reference_distances(view)
        assert delta == ref[view.s]
        assert buckets >= 1
        assert p[view.s] == 0 and p[view.t] == -delta
        for u, v, c, _ in view.edges():
            assert c - p[u] + p[v] >= 0


def test_dial_requires_normalised_prices(triangle):
    view = first_view(MultiGraph.from_arcs(2, [(0, 1, -3)]))
    with pytest.raises(InvariantError):
        dial_distances_to(view, [0, 0, 1, 0])


def zero_reachable(view, p):
    """Vertices reachable from s along zero-reduced-cost residual edges."""
    adj = {}
    for u, v, c, _ in view.edges():
        if c - p[u] + p[v] == 0:
            adj.setdefault(u, []).append(v)
    seen = {view.s}
    dq = deque([view.s])
    while dq:
        u = dq.popleft()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                dq.append(v)
    return seen


def test_zero_paths_are_maximal():
    for g in instances(80, 3):
        view = first_view(g)
        if not view.flow.X:
            continue
        p = distances_to(view, [0] * (g.n + 2))
        paths = maximal_zero_paths(view, p)
        assert paths
        used = [e for P in paths for e in P]
        assert len(used) == len(set(used))
        for P in paths:
            for e in P:
                assert view.cprime[e] - p[view.g.tail[e]] + p[view.g.head[e]] == 0
        for e in used:
            view.flow.push(e, view.g)
        assert view.t not in zero_reachable(view, p)


@pytest.mark.parametrize("engine", ["dial", "heap"])
def test_refine_contract(engine):
    for g in instances(40, 4):
        sc = CostScale.for_graph(g)
        gs = g.scaled(sc.unit)
        f, p, stats = refine(gs, FlowState.zero(gs), [0] * g.n, sc.eps, engine=engine)
        assert f.is_circulation()
        assert is_eps_optimal(gs, f, p, sc.eps)
        assert not stats.bound_violations()
        for ph in stats.phases:
            assert ph.psi_after < ph.psi_before


def test_refine_rejects_unknown_engine(triangle):
    with pytest.raises(ValueError):
        refine(triangle, FlowState.zero(triangle), [0] * 3, 4, engine="magic")


def test_refine_needs_a_circulation():
    g = MultiGraph.from_arcs(2, [(0, 1, 1)])
    f = FlowState.zero(g)
    f.push(0, g)
    with pytest.raises(InvariantError):
        refine(g, f, [0, 0], 4)
