import itertools

import numpy as np
from hypothesis import given, strategies as st

from hopfcoh.field import FieldSpec
from hopfcoh.linalg import in_span, inverse, kernel, rank, solve
from hopfcoh.sparse import SparseMatrix


def brute_rank(a, p):
    """Rank over F_p by counting the size of the row space."""
    r, c = a.shape
    vecs = {tuple((np.asarray(coef) @ a) % p) for coef in itertools.product(range(p), repeat=r)}
    return int(round(np.log(len(vecs)) / np.log(p)))


def matrices(p, max_r=4, max_c=5):
    return st.tuples(st.integers(1, max_r), st.integers(1, max_c)).flatmap(
        lambda s: st.lists(st.integers(0, p - 1), min_size=s[0] * s[1], max_size=s[0] * s[1]).map(
            lambda v: np.asarray(v, dtype=np.int64).reshape(s)))


@given(matrices(3))
def test_rank_against_brute_force(a):
    F = FieldSpec(3)
    assert rank(SparseMatrix.from_dense(F, a)) == brute_rank(a, 3)


@given(st.sampled_from([2, 5, 7]).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 6, 7))))
def test_rank_nullity_and_kernel(pa):
    p, a = pa
    F = FieldSpec(p)
    m = SparseMatrix.from_dense(F, a)
    K = kernel(m)
    assert K.dim + rank(m) == a.shape[1]
    assert (m @ K.basis).is_zero()
    assert np.array_equal(K.basis.to_dense()[K.free], np.eye(K.dim, dtype=np.int64))


@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 5, 5),
                                                             st.lists(st.integers(0, p - 1), min_size=5, max_size=5))))
def test_solve_consistent_systems(args):
    p, a, x = args
    F = FieldSpec(p)
    x = np.asarray(x[: a.shape[1]], dtype=np.int64)
    b = (a @ x) % p
    m = SparseMatrix.from_dense(F, a)
    y = solve(m, b)
    assert y is not None
    assert np.array_equal((a @ y) % p, b)


def test_solve_inconsistent_returns_none():
    F = FieldSpec(5)
    m = SparseMatrix.from_dense(F, np.array([[1, 1], [2, 2]]))
    assert solve(m, np.array([1, 0])) is None


def test_inverse_and_singular():
    F = FieldSpec(7)
    a = SparseMatrix.from_dense(F, np.array([[2, 1], [1, 1]]))
    assert inverse(a) @ a == SparseMatrix.identity(F, 2)
    s = SparseMatrix.from_dense(F, np.array([[1, 2], [2, 4]]))
    try:
        inverse(s)
    except ValueError:
        pass
    else:
        raise AssertionError("singular matrix inverted")


def test_in_span():
    F = FieldSpec(3)
    B = SparseMatrix.from_dense(F, np.array([[1], [2], [0]]))
    assert in_span(B, SparseMatrix.from_dense(F, np.array([[2], [1], [0]])))
    assert not in_span(B, SparseMatrix.from_dense(F, np.array([[0], [0], [1]])))


def test_rational_kernel():
    from fractions import Fraction
    Q = FieldSpec(0)
    a = np.array([[Fraction(1, 2), Fraction(1, 3), 1], [1, Fraction(2, 3), 2]], dtype=object)
    m = SparseMatrix.from_dense(Q, a)
    K = kernel(m)
    assert K.dim == 2 and rank(m) == 1
    assert (m @ K.basis).is_zero()


def test_empty_matrices():
    F = FieldSpec(2)
    assert rank(SparseMatrix.zeros(F, (3, 4))) == 0
    assert kernel(SparseMatrix.zeros(F, (0, 4))).dim == 4
