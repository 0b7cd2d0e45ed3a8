import pytest

from hopfcoh.bimodule import is_morphism, regular_bimodule
from hopfcoh.guard import ResourceGuardError, limit
from hopfcoh.hopf import cached_algebra
from hopfcoh.resolutions import bar_complex, cobar_complex
from hopfcoh.sparse import SparseMatrix

COMODULE = ("left-comodule", "right-comodule")
MODULE = ("left-module", "right-module")


@pytest.fixture(scope="module", params=[("kZ2", 2), ("kZ2", 3), ("sweedler", 5)])
def complexes(request):
    name, p = request.param
    A = regular_bimodule(cached_algebra(name, p))
    top = 2 if name == "kZ2" else 1
    return A, bar_complex(A, top + 1), cobar_complex(A, top + 1), top


def test_bar_identities(complexes):
    A, B, _, top = complexes
    f = A.field
    assert B.d[0] @ B.homotopy(-1) == SparseMatrix.identity(f, A.dim)
    for q in range(top + 1):
        assert (B.d[q] @ B.d[q + 1]).is_zero()
        ident = SparseMatrix.identity(f, B.term(q).dim)
        assert B.d[q + 1] @ B.homotopy(q) + B.homotopy(q - 1) @ B.d[q] == ident


def test_cobar_identities(complexes):
    A, _, C, top = complexes
    f = A.field
    assert C.h[0] @ C.coaugmentation == SparseMatrix.identity(f, A.dim)
    assert (C.d[0] @ C.coaugmentation).is_zero()
    for p in range(top + 1):
        back = C.d[p - 1] @ C.h[p] if p >= 1 else C.coaugmentation @ C.h[0]
        assert C.h[p + 1] @ C.d[p] + back == SparseMatrix.identity(f, C.terms[p].dim)
        if p + 1 < len(C.d):
            assert (C.d[p + 1] @ C.d[p]).is_zero()


def test_differentials_are_hopf_bimodule_maps(complexes):
    A, B, C, top = complexes
    for q in range(top + 1):
        assert is_morphism(B.d[q], B.term(q), B.term(q - 1))
    for p in range(top):
        assert is_morphism(C.d[p], C.terms[p], C.terms[p + 1])
    assert is_morphism(C.coaugmentation, A, C.terms[0])


def test_homotopies_split_only_one_structure(A2):
    B = bar_complex(A2, 1)
    C = cobar_complex(A2, 1)
    assert is_morphism(B.homotopy(0), B.term(0), B.term(1), COMODULE)
    assert not is_morphism(B.homotopy(0), B.term(0), B.term(1), MODULE)
    assert is_morphism(C.h[1], C.terms[1], C.terms[0], MODULE)
    assert not is_morphism(C.h[1], C.terms[1], C.terms[0], COMODULE)


def test_guard_stops_large_terms(A2):
    with limit(100):
        with pytest.raises(ResourceGuardError, match="B_2"):
            bar_complex(A2, 2)
