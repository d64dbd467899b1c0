import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitflow.dimacs import ParseError, parse_instance, parse_solution, serialize_instance, serialize_solution
from unitflow.generators import InstanceSpec, generate
from unitflow.graph import MultiGraph


def test_two_vertex_instance():
    inst = parse_instance("p mcf 2 2\na 1 2 2\na 2 1 -5\n")
    assert list(inst.graph.arcs()) == [(0, 1, 2), (1, 0, -5)]
    assert inst.rotation is None


def test_empty_arc_section():
    inst = parse_instance("c nothing here\np mcf 4 0\n")
    assert inst.graph.n == 4 and inst.graph.m == 0
    assert inst.comments == ["nothing here"]


@pytest.mark.parametrize("text,line", [
    ("p mcf 2 1\na 1 3 4\n", 2),
    ("p mcf 2 1\na 1 2\n", 2),
    ("p mcf 2 1\na 1 x 2\n", 2),
    ("a 1 2 3\np mcf 2 1\n", 1),
    ("p mcf 2 1\np mcf 2 1\n", 2),
    ("p min 2 1\n", 1),
    ("p mcf 2 1\nz\n", 2),
    ("p mcf 2 1\na 1 2 0\ne 1 5\n", 3),
    ("p mcf 2 2\na 1 2 0\n", 0),
    ("c only a comment\n", 0),
])
def test_parse_errors_report_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.line == line


@given(st.integers(1, 6), st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(-9, 9)), max_size=15))
def test_round_trip(n, raw):
    arcs = [(u % n, v % n, c) for u, v, c in raw]
    g = MultiGraph.from_arcs(n, arcs)
    back = parse_instance(serialize_instance(g)).graph
    assert back.n == g.n and list(back.arcs()) == list(g.arcs())


def test_round_trip_with_rotation():
    inst = generate(InstanceSpec("grid", rows=3, cols=4, multiplicity=2, seed=1))
    back = parse_instance(serialize_instance(inst.graph, inst.rotation, ["x"]))
    assert back.rotation == inst.rotation
    assert list(back.graph.arcs()) == list(inst.graph.arcs())


def test_solution_round_trip():
    text = serialize_solution(-3, [1, 0, 1], [5, 6, 7], 16, 4)
    sol = parse_solution(text, 3, 3)
    assert (sol.cost, sol.flow, sol.prices, sol.unit, sol.eps) == (-3, [1, 0, 1], [5, 6, 7], 16, 4)


def test_solution_errors():
    with pytest.raises(ParseError):
        parse_solution("s 0\nf 1 1\n", 2, 2)
    with pytest.raises(ParseError):
        parse_solution("s 0\nf 3 1\n", 2, 2)
    with pytest.raises(ParseError):
        parse_solution("s 0\nf 1 1\nq 1 0\n", 1, 2)
