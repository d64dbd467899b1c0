import networkx as nx
import pytest

from unitflow.generators import InstanceSpec, generate
from unitflow.graph import MultiGraph
from unitflow.planar.embedding import NonPlanarError, build_embedding, support_edges, trace_faces


def test_support_drops_loops_and_parallels():
    g = MultiGraph.from_arcs(3, [(0, 1, 1), (1, 0, 2), (2, 2, 1), (1, 2, 0)])
    assert support_edges(g) == {(0, 1), (1, 2)}


@pytest.mark.parametrize("spec", [InstanceSpec("grid", rows=5, cols=7, multiplicity=2, seed=1),
                                  InstanceSpec("triangulation", n=40, seed=2)])
def test_given_rotation_is_triangulated(spec):
    inst = generate(spec)
    emb = build_embedding(inst.graph, inst.rotation)
    emb.check()
    assert emb.real == support_edges(inst.graph)
    assert all((min(u, v), max(u, v)) in emb.real for u, v, _ in inst.graph.arcs())


def test_computed_embedding():
    inst = generate(InstanceSpec("grid", rows=4, cols=4, seed=0))
    emb = build_embedding(inst.graph)
    emb.check()
    assert emb.num_support_edges == 3 * 16 - 6
    dummies = sum(emb.is_dummy(v, w) for v in range(16) for w in emb.rot[v]) // 2
    assert dummies == 3 * 16 - 6 - 24


def test_k5_rejected_with_witness():
    g = MultiGraph.from_arcs(5, [(u, v, 1) for u in range(5) for v in range(u + 1, 5)])
    with pytest.raises(NonPlanarError) as info:
        build_embedding(g)
    H = nx.Graph(info.value.witness)
    assert not nx.check_planarity(H)[0]


def test_rotation_mismatch_rejected():
    inst = generate(InstanceSpec("grid", rows=3, cols=3, seed=0))
    rot = [list(r) for r in inst.rotation]
    rot[0] = rot[0][:1]
    with pytest.raises(ValueError):
        build_embedding(inst.graph, rot)


def test_faces_of_a_square():
    rot = [[1, 3], [2, 0], [3, 1], [0, 2]]
    faces = trace_faces(rot)
    assert sorted(len(f) for f in faces) == [4, 4]


def test_tiny_graphs():
    for n in (0, 1, 2):
        g = MultiGraph.from_arcs(n, [(0, n - 1, 1)] if n else [])
        emb = build_embedding(g)
        emb.check()
