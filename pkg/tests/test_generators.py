import pytest

from unitflow.generators import InstanceSpec, generate
from unitflow.planar.embedding import build_embedding, to_nx_embedding


def test_grid_shape():
    inst = generate(InstanceSpec("grid", rows=4, cols=4, seed=1))
    assert inst.graph.n == 16 and inst.graph.m == 24
    to_nx_embedding(16, inst.rotation).check_structure()


def test_seed_replay_is_identical():
    for spec in (InstanceSpec("grid", rows=3, cols=5, multiplicity=2, seed=9),
                 InstanceSpec("triangulation", n=30, seed=9),
                 InstanceSpec("random", n=10, m=40, seed=9)):
        a, b = generate(spec), generate(spec)
        assert list(a.graph.arcs()) == list(b.graph.arcs())
        assert a.rotation == b.rotation


def test_seeds_differ():
    a = generate(InstanceSpec("random", n=10, m=40, seed=1))
    b = generate(InstanceSpec("random", n=10, m=40, seed=2))
    assert list(a.graph.arcs()) != list(b.graph.arcs())


@pytest.mark.parametrize("n", [3, 4, 10, 50])
def test_triangulation_edge_count(n):
    inst = generate(InstanceSpec("triangulation", n=n, seed=3))
    assert inst.graph.m == 3 * n - 6 if n > 3 else inst.graph.m == 3
    emb = build_embedding(inst.graph, inst.rotation)
    emb.check()


def test_multiplicity_and_costs():
    inst = generate(InstanceSpec("grid", rows=2, cols=3, multiplicity=3, cost=5, seed=0))
    g = inst.graph
    assert g.m == 7 * 3
    assert all(-5 <= c <= 5 for *_, c in g.arcs())


@pytest.mark.parametrize("spec", [
    InstanceSpec("grid", rows=0, cols=3),
    InstanceSpec("grid", rows=2, cols=2, n=5),
    InstanceSpec("grid", rows=2, cols=2, m=4),
    InstanceSpec("triangulation", n=2),
    InstanceSpec("triangulation", n=10, rows=2),
    InstanceSpec("random", n=0, m=3),
    InstanceSpec("random", n=3, m=3, multiplicity=0),
    InstanceSpec("hexagon", n=3),
    InstanceSpec("random", n=3, m=1, cost=-1),
])
def test_contradictions_rejected(spec):
    with pytest.raises(ValueError):
        generate(spec)


def test_label():
    assert InstanceSpec("grid", rows=2, cols=3, seed=4).label() == "grid-2x3-C10-k1-s4"
