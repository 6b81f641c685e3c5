from fractions import Fraction as F

import sympy as sp
from hypothesis import given, settings, strategies as st

from liext.linalg import nullspace, rank, rref, solve


def test_rref_of_a_known_matrix():
    rows = [[2, 4, 6], [1, 3, 5]]
    assert rref(rows, 3)[0] == [[1, 0, -1], [0, 1, 2]]


def test_nullspace_free_variable_is_one():
    assert nullspace([[1, 1, 1]], 3) == [[-1, 1, 0], [-1, 0, 1]]


def test_inconsistent_system_returns_none():
    assert solve([[1, 1], [1, 1]], [1, 2], 2) is None
    assert solve([[1, 1], [1, -1]], [2, 0], 2) == [1, 1]


small = st.integers(-6, 6)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_and_nullspace_match_sympy(nrows, ncols, data):
    rows = [[data.draw(small) for _ in range(ncols)] for _ in range(nrows)]
    M = sp.Matrix(rows)
    assert rank(rows, ncols) == M.rank()
    basis = nullspace(rows, ncols)
    assert len(basis) == ncols - M.rank()
    for v in basis:
        assert all(sum(F(a) * b for a, b in zip(r, v)) == 0 for r in rows)
