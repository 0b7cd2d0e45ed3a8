import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfcoh.field import FieldSpec
from hopfcoh.sparse import SparseMatrix, hstack, kron, kron_ids, vstack

F5 = FieldSpec(5)


def dense(draw_shape, p=5):
    r, c = draw_shape
    return st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
        lambda v: np.asarray(v, dtype=np.int64).reshape(r, c))


shapes = st.tuples(st.integers(1, 5), st.integers(1, 5))


@given(shapes.flatmap(dense))
def test_dense_round_trip(a):
    m = SparseMatrix.from_dense(F5, a)
    assert np.array_equal(m.to_dense(), a)
    assert m.nnz == int(np.count_nonzero(a))


@given(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.tuples(dense((s[0], s[1])), dense((s[1], s[2])))))
def test_matmul_matches_dense(pair):
    a, b = pair
    got = (SparseMatrix.from_dense(F5, a) @ SparseMatrix.from_dense(F5, b)).to_dense()
    assert np.array_equal(got, (a @ b) % 5)


@given(shapes.flatmap(dense), shapes.flatmap(dense))
def test_kron_matches_numpy(a, b):
    got = kron(SparseMatrix.from_dense(F5, a), SparseMatrix.from_dense(F5, b)).to_dense()
    assert np.array_equal(got, np.kron(a, b) % 5)


def test_kron_ids_inserts_identities():
    m = SparseMatrix.from_dense(F5, np.array([[1, 2], [3, 4]]))
    got = kron_ids(F5, [2, m, 3]).to_dense()
    assert np.array_equal(got, np.kron(np.kron(np.eye(2, dtype=np.int64), m.to_dense()), np.eye(3, dtype=np.int64)))


def test_add_sub_scale_and_equality():
    a = SparseMatrix.from_dense(F5, np.array([[1, 0], [4, 2]]))
    b = SparseMatrix.from_dense(F5, np.array([[4, 1], [1, 0]]))
    assert np.array_equal((a + b).to_dense(), np.array([[0, 1], [0, 2]]))
    assert (a - a).is_zero()
    assert a.scale(-1) == -a
    assert a.T.T == a
    assert a != b


def test_stacking():
    a = SparseMatrix.identity(F5, 2)
    assert hstack([a, a]).shape == (2, 4)
    assert np.array_equal(vstack([a, a.scale(2)]).to_dense(), np.array([[1, 0], [0, 1], [2, 0], [0, 2]]))


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        SparseMatrix.identity(F5, 2) @ SparseMatrix.identity(F5, 3)


def test_rational_entries():
    Q = FieldSpec(0)
    from fractions import Fraction
    m = SparseMatrix.from_dense(Q, np.array([[Fraction(1, 2), 0], [0, Fraction(2, 3)]], dtype=object))
    assert (m @ m).to_dense()[1, 1] == Fraction(4, 9)
