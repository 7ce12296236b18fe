from fractions import Fraction
from itertools import permutations

from hypothesis import given, strategies as st

from satake.linalg import (Echelon, SparseOp, determinant, inverse, nullspace, rank,
                           to_dense, vadd)

small_mats = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=4))


def columns_of(mat):
    return [{i: Fraction(row[j]) for i, row in enumerate(mat) if row[j]} for j in range(len(mat[0]))]


def leibniz(mat):
    n = len(mat)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= mat[i][p[i]]
        total += term
    return total


def test_rank_examples():
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}]) == 1
    assert rank([{0: 1}, {1: 1}, {0: 1, 1: 1}]) == 2
    assert rank([]) == 0


def test_echelon_express():
    e = Echelon()
    assert e.add({0: Fraction(1), 1: Fraction(1)})
    assert e.add({1: Fraction(1)})
    assert not e.add({0: Fraction(2), 1: Fraction(5)})
    coeffs = e.express({0: Fraction(2), 1: Fraction(5)})
    assert coeffs == {0: 2, 1: 3}
    assert e.express({2: Fraction(1)}) is None


def test_sparse_op_algebra():
    e = SparseOp({1: {0: Fraction(1)}}, 2, 2)
    f = SparseOp({0: {1: Fraction(1)}}, 2, 2)
    h = e.bracket(f)
    assert h.dense() == [[1, 0], [0, -1]]
    assert (h @ e - e @ h) == e.scale(2)
    assert SparseOp.identity(2) @ e == e


@given(small_mats)
def test_rank_nullity(mat):
    cols = columns_of(mat)
    ker = nullspace(cols)
    assert rank(cols) + len(ker) == len(cols)
    for v in ker:
        acc = {}
        for j, c in v.items():
            acc = vadd(acc, cols[j], c)
        assert not acc


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_against_leibniz(mat):
    d = determinant(mat)
    assert d == leibniz(mat)
    if d:
        inv = inverse(mat)
        n = len(mat)
        prod = [[sum(Fraction(mat[i][k]) * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert prod == [[int(i == j) for j in range(n)] for i in range(n)]


def test_to_dense():
    assert to_dense([{0: 1}, {1: 2}], 2) == [[1, 0], [0, 2]]
