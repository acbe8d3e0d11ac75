from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from quasihopf.errors import NotInvertible
from quasihopf.linalg import SparseMatrix, nullspace, rank, rref, solve
from quasihopf.scalar import Scalar, make_field

Q = make_field(1)
F3 = make_field(3)

small_int = st.integers(-3, 3)


def dense_strategy(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)))


def as_rows(dense, F=Q):
    return [{j: F(v) for j, v in enumerate(row) if v} for row in dense]


def cyclo_matrix(draw_lists):
    return [[Scalar(F3, pair) for pair in row] for row in draw_lists]


@given(dense_strategy())
def test_rank_matches_sympy(dense):
    assert rank(as_rows(dense), len(dense[0])) == sympy.Matrix(dense).rank()


@given(dense_strategy())
def test_nullspace_matches_sympy(dense):
    ncols = len(dense[0])
    basis = nullspace(as_rows(dense), ncols, Q)
    expected = sympy.Matrix(dense).nullspace()
    assert len(basis) == len(expected)
    M = sympy.Matrix(dense)
    for vec in basis:
        v = sympy.Matrix([sympy.Rational(x.as_fraction().numerator, x.as_fraction().denominator) for x in vec])
        assert M * v == sympy.zeros(len(dense), 1)
    # the basis is independent: rank-nullity
    assert len(basis) + rank(as_rows(dense), ncols) == ncols


cyclo_rows = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.tuples(small_int, small_int), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(cyclo_rows)
def test_nullspace_over_cyclotomic_field(raw):
    dense = cyclo_matrix(raw)
    ncols = len(dense[0])
    rows = [{j: v for j, v in enumerate(r) if v} for r in dense]
    basis = nullspace(rows, ncols, F3)
    for vec in basis:
        for r in dense:
            assert sum((a * b for a, b in zip(r, vec)), F3.zero) == 0
    assert len(basis) + rank(rows, ncols) == ncols


def test_rref_does_not_modify_input():
    rows = as_rows([[2, 4], [1, 2]])
    snapshot = [dict(r) for r in rows]
    reduced, pivots = rref(rows, 2)
    assert rows == snapshot
    assert pivots == [0] and reduced[0] == {0: Q(1), 1: Q(2)}


def test_solve_and_inconsistent_system():
    rows = as_rows([[1, 1], [1, -1]])
    x = solve(rows, [Q(3), Q(1)], 2, Q)
    assert x == [Q(2), Q(1)]
    with pytest.raises(NotInvertible):
        solve(as_rows([[1, 1], [2, 2]]), [Q(1), Q(3)], 2, Q)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_matches_sympy(dense):
    A = SparseMatrix.from_dense(Q, [[Q(v) for v in r] for r in dense])
    M = sympy.Matrix(dense)
    if M.det() == 0:
        with pytest.raises(NotInvertible):
            A.inverse()
        return
    inv = A.inverse()
    expected = M.inv()
    for i in range(len(dense)):
        for j in range(len(dense)):
            e = expected[i, j]
            assert inv[i, j] == Fraction(int(e.p), int(e.q))
    assert A @ inv == SparseMatrix.identity(Q, len(dense))


@given(dense_strategy(3, 3), dense_strategy(3, 3))
def test_kron_and_transpose_match_sympy(a, b):
    A = SparseMatrix.from_dense(Q, [[Q(v) for v in r] for r in a])
    B = SparseMatrix.from_dense(Q, [[Q(v) for v in r] for r in b])
    from sympy.physics.quantum import TensorProduct

    K = TensorProduct(sympy.Matrix(a), sympy.Matrix(b))
    assert A.kron(B).to_dense() == [[Q(int(K[i, j])) for j in range(K.cols)] for i in range(K.rows)]
    assert A.transpose().transpose() == A
    assert A.transpose().shape == (len(a[0]), len(a))


def test_trace_and_permutation():
    P = SparseMatrix.permutation(Q, [1, 2, 0])
    assert P.trace() == 0
    assert (P @ P @ P) == SparseMatrix.identity(Q, 3)
    assert SparseMatrix.identity(F3, 4).trace() == 4


def test_first_difference():
    A = SparseMatrix.identity(Q, 2)
    B = SparseMatrix.from_dense(Q, [[Q(1), Q(0)], [Q(5), Q(1)]])
    assert A.first_difference(A) is None
    assert A.first_difference(B) is not None
