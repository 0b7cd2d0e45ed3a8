import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfcoh.bimodule import load_bimodule, regular_bimodule
from hopfcoh.complexes import (
    MODULE_CONSTRAINTS,
    CochainComplex,
    constrained_hom_basis,
    constraint_matrices,
    cohomology_dims,
    sandwich,
    unvec,
    vec,
)
from hopfcoh.field import FieldSpec
from hopfcoh.hopf import cached_algebra
from hopfcoh.linalg import in_span, kernel, rank
from hopfcoh.sparse import SparseMatrix, kron, vstack

F3 = FieldSpec(3)


def rand_dense(rng, r, c, p=3):
    return rng.integers(0, p, size=(r, c)).astype(np.int64)


@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3), st.integers(1, 2), st.integers(1, 2),
       st.booleans(), st.booleans())
def test_sandwich_matches_direct_evaluation(seed, dW, dV, L, R, useX, useY):
    rng = np.random.default_rng(seed)
    X = rand_dense(rng, 2, L * dW * R) if useX else None
    Y = rand_dense(rng, L * dV * R, 3) if useY else None
    alpha = rand_dense(rng, dW, dV)
    S = sandwich(F3, None if X is None else SparseMatrix.from_dense(F3, X),
                 None if Y is None else SparseMatrix.from_dense(F3, Y), dW, dV, L=L, R=R)
    mid = np.kron(np.kron(np.eye(L, dtype=np.int64), alpha), np.eye(R, dtype=np.int64))
    out = mid if X is None else X @ mid
    out = out if Y is None else out @ Y
    got = S.apply(vec(SparseMatrix.from_dense(F3, alpha)))
    assert np.array_equal(got, out.reshape(-1) % 3)


def test_vec_unvec_round_trip():
    m = SparseMatrix.from_dense(F3, np.array([[1, 2, 0], [0, 0, 1]]))
    assert vec(m).tolist() == [1, 2, 0, 0, 0, 1]
    assert unvec(F3, vec(m), 2, 3) == m


def test_hom_examples(A2):
    assert constrained_hom_basis(A2, A2, ()).dim == 4
    assert constrained_hom_basis(A2, A2).dim == 1
    assert constrained_hom_basis(A2, A2, ("left-module",)).dim == 2


@pytest.mark.parametrize("name,p,src,tgt", [("kZ2", 2, "bar:0", "cobar:0"), ("kZ2", 3, "rtensor:1", "ltensor:1"),
                                            ("sweedler", 5, "regular", "rtensor:1"), ("sweedler", 5, "ltensor:1", "regular")])
def test_staged_kernel_matches_stacked(name, p, src, tgt):
    h = cached_algebra(name, p)
    V, W = load_bimodule(src, h), load_bimodule(tgt, h)
    cell = constrained_hom_basis(V, W)
    mats = constraint_matrices(V, W, MODULE_CONSTRAINTS)
    stacked = kernel(vstack(mats))
    assert cell.dim == stacked.dim == rank(cell.basis)
    for m in mats:
        assert (m @ cell.basis).is_zero()
    assert in_span(stacked.basis, cell.basis)
    assert np.array_equal(cell.basis.to_dense()[cell.free], np.eye(cell.dim, dtype=np.int64))


def test_basis_maps_are_morphisms(h4):
    from hopfcoh.bimodule import is_morphism
    V, W = load_bimodule("rtensor:1", h4), load_bimodule("ltensor:1", h4)
    cell = constrained_hom_basis(V, W)
    for j in range(cell.dim):
        assert is_morphism(unvec(h4.field, cell.basis.column(j), W.dim, V.dim), V, W)


def test_cohomology_dims_small_complexes():
    F = FieldSpec(5)
    C = CochainComplex(F, [1, 0], [SparseMatrix.zeros(F, (0, 1))])
    assert cohomology_dims(C, 0) == [1]
    C = CochainComplex(F, [1, 1, 0], [SparseMatrix.identity(F, 1), SparseMatrix.zeros(F, (0, 1))])
    assert cohomology_dims(C, 1) == [0, 0]
    with pytest.raises(ValueError):
        cohomology_dims(C, 3)


def test_cochain_complex_shape_check():
    F = FieldSpec(2)
    with pytest.raises(ValueError):
        CochainComplex(F, [1, 2], [SparseMatrix.zeros(F, (1, 1))])
