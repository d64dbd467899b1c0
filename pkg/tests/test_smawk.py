import random

from hypothesis import given
from hypothesis import strategies as st

from planar_cases import random_monge
from unitflow.planar.smawk import brute_row_minima, column_minima, is_monge, rightmost_minima, smawk


def lookup_of(M):
    return lambda i, j: M[i][j]


@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 10 ** 6))
def test_smawk_equals_brute_force(h, w, seed):
    M = random_monge(random.Random(seed), h, w)
    rows, cols, f = list(range(h)), list(range(w)), lookup_of(M)
    assert is_monge(rows, cols, f)
    assert smawk(rows, cols, f) == brute_row_minima(rows, cols, f)
    assert rightmost_minima(rows, cols, f) == brute_row_minima(rows, cols, f, rightmost=True)
    cm = column_minima(rows, cols, f)
    for j in cols:
        assert M[cm[j]][j] == min(M[i][j] for i in rows)


def test_ties_take_leftmost():
    M = [[0, 0, 0], [1, 0, 0], [2, 1, 0]]
    f = lookup_of(M)
    assert smawk([0, 1, 2], [0, 1, 2], f) == {0: 0, 1: 1, 2: 2}
    assert rightmost_minima([0, 1, 2], [0, 1, 2], f) == {0: 2, 1: 2, 2: 2}


def test_non_monge_detected():
    M = [[5, 0], [0, 5]]
    assert not is_monge([0, 1], [0, 1], lookup_of(M))
    assert is_monge([0, 1], [1, 0], lookup_of(M))


def test_empty():
    assert smawk([], [0, 1], lambda i, j: 0) == {}
    assert smawk([0], [], lambda i, j: 0) == {}
