import json

import pytest

from hopfcoh.bimodule import direct_sum, load_bimodule, regular_bimodule
from hopfcoh.complexes import MODULE_CONSTRAINTS, constraint_matrices
from hopfcoh.guard import ResourceGuardError, limit
from hopfcoh.hopf import cached_algebra
from hopfcoh.oracles import cyclic_group_cohomology
from hopfcoh.resolutions import cofree_bimodule_term, free_bimodule_term
from hopfcoh.sparse import SparseMatrix
from hopfcoh.theories import (
    ENGINES,
    EngineError,
    ambient_dh,
    ambient_dv,
    compute,
    double_complex,
    ext_x_dims,
    gs_phi,
    gs_psi,
    gs_reduced_dh,
    gs_reduced_dv,
    gs_reduced_dv_printed,
    hom_a4_dim,
    projective_vanishing_check,
    report,
)

PAIRS = [("kZ2", 3, "regular", "regular"), ("kZ2", 2, "rtensor:1", "regular"), ("sweedler", 5, "regular", "regular")]


def pair(name, p, sm, sn):
    h = cached_algebra(name, p)
    return load_bimodule(sm, h), load_bimodule(sn, h)


@pytest.mark.parametrize("name,p,sm,sn", PAIRS)
@pytest.mark.parametrize("pq", [(0, 0), (1, 0), (0, 1)])
def test_printed_vertical_formula_equals_transport(name, p, sm, sn, pq):
    M, N = pair(name, p, sm, sn)
    assert gs_reduced_dv_printed(M, N, *pq) == gs_reduced_dv(M, N, *pq)


@pytest.mark.parametrize("name,p,sm,sn", PAIRS[:2])
@pytest.mark.parametrize("pq", [(0, 0), (1, 0), (0, 1)])
def test_transport_isomorphism(name, p, sm, sn, pq):
    M, N = pair(name, p, sm, sn)
    P, Q = pq
    phi, psi = gs_phi(M, N, P, Q), gs_psi(M, N, P, Q)
    assert phi @ psi == SparseMatrix.identity(M.field, psi.shape[1])
    # psi lands in the A4-equivariant maps
    for m in constraint_matrices(free_bimodule_term(M, Q), cofree_bimodule_term(N, P), MODULE_CONSTRAINTS):
        assert (m @ psi).is_zero()
    # both reduced differentials are the unreduced ones seen through psi
    assert ambient_dh("gs", M, N, P, Q) @ psi == gs_psi(M, N, P, Q + 1) @ gs_reduced_dh(M, N, P, Q)
    assert ambient_dv("gs", M, N, P, Q) @ psi == gs_psi(M, N, P + 1, Q) @ gs_reduced_dv(M, N, P, Q)


@pytest.mark.parametrize("p,expected", [(2, [1, 1, 1, 1]), (3, [1, 0, 0, 0])])
@pytest.mark.parametrize("engine", ["gs_reduced", "a4", "a4_unreduced", "hb"])
def test_kz2_values_to_degree_three(A2, A3, p, expected, engine):
    A = A2 if p == 2 else A3
    assert compute(engine, A, A, 3).dims == expected


@pytest.mark.parametrize("p,expected", [(2, [1, 1, 1]), (3, [1, 0, 0])])
@pytest.mark.parametrize("engine", ["gs", "ext_x"])
def test_kz2_values_large_engines(A2, A3, p, expected, engine):
    A = A2 if p == 2 else A3
    assert compute(engine, A, A, 2).dims == expected


@pytest.mark.parametrize("p", [2, 3])
def test_group_oracle(A2, A3, p):
    A = A2 if p == 2 else A3
    assert compute("a4", A, A, 4).dims == cyclic_group_cohomology(2, p, 4)


def test_cyclic_oracle_values():
    assert cyclic_group_cohomology(2, 2, 4) == [1, 1, 1, 1, 1]
    assert cyclic_group_cohomology(2, 3, 3) == [1, 0, 0, 0]
    assert cyclic_group_cohomology(3, 3, 3) == [1, 1, 1, 1]
    assert cyclic_group_cohomology(3, 2, 2) == [1, 0, 0]


def test_truncated_hb_vanishes(A2):
    assert compute("hb_truncated", A2, A2, 3).dims == [0, 0, 0, 0]


def test_h4_bi_engine(h4):
    A = regular_bimodule(h4)
    r1, r2 = compute("gs_reduced", A, A, 2), compute("a4", A, A, 2)
    assert r1.dims == r2.dims == [1, 0, 3]
    assert r1.total.check_d_squared() and r2.total.check_d_squared()
    assert r1.double.check_relations() and r2.double.check_relations()


@pytest.mark.parametrize("engine", [e for e in ENGINES if not e.startswith("hb")])
@pytest.mark.parametrize("sm,sn", [("regular", "rtensor:1"), ("ltensor:1", "regular"), ("regular2", "regular")])
def test_degree_zero_is_hom(kz2_f2, engine, sm, sn):
    M, N = load_bimodule(sm, kz2_f2), load_bimodule(sn, kz2_f2)
    assert compute(engine, M, N, 0).dims[0] == hom_a4_dim(M, N)


@pytest.mark.parametrize("engine", ["gs_reduced", "a4", "ext_x"])
def test_additivity(A2, engine):
    M = load_bimodule("ltensor:1", A2.algebra)
    single = compute(engine, M, A2, 2).dims
    assert compute(engine, M, direct_sum(A2, A2), 2).dims == [2 * d for d in single]


def test_ext_x_dims_function(A3):
    assert ext_x_dims(A3, A3, 2) == [1, 0, 0]


def test_projective_vanishing(A2):
    rep = projective_vanishing_check(A2.algebra, A2, 2)
    assert rep["vanishes"]
    assert all(d[1:] == [0, 0] for d in rep["dims"].values())


def test_bound_and_pair_errors(A2, kz2_f3):
    with pytest.raises(EngineError):
        compute("a4", A2, A2, 7)
    with pytest.raises(EngineError):
        compute("a4", A2, A2, -1)
    with pytest.raises(EngineError):
        compute("hb", load_bimodule("rtensor:1", A2.algebra), A2, 1)
    with pytest.raises(EngineError):
        compute("a4", A2, regular_bimodule(kz2_f3), 1)
    with pytest.raises(EngineError):
        compute("nope", A2, A2, 1)


def test_guard_names_the_cell(h4):
    A = regular_bimodule(h4)
    with limit(10_000):
        with pytest.raises(ResourceGuardError, match=r"cell \(\d,\d\)"):
            compute("gs", A, A, 1)


def test_parallel_matches_serial(A2):
    r1, r2 = compute("a4", A2, A2, 3, jobs=1), compute("a4", A2, A2, 3, jobs=2)
    assert r1.dims == r2.dims and r1.cell_dims == r2.cell_dims


def test_report_is_deterministic(A2):
    r = compute("gs_reduced", A2, A2, 2)
    rep = report(r, "kZ2", "regular", "regular")
    assert set(rep) == {"engine", "algebra", "M", "N", "field", "bound", "dims", "cell_dims", "version"}
    again = report(compute("gs_reduced", A2, A2, 2), "kZ2", "regular", "regular")
    assert json.dumps(rep, sort_keys=True) == json.dumps(again, sort_keys=True)
    assert "timings" in report(r, "kZ2", "regular", "regular", timings=True)


def test_double_complex_cells(A2):
    dc, secs = double_complex("a4", A2, A2, 2)
    assert set(dc.cells) == {(p, t - p) for t in range(3) for p in range(t + 1)}
    assert set(secs) == set(dc.cells)
