import json

import numpy as np
import pytest

from hopfcoh.hopf import (
    HopfFormatError,
    builtin_algebra,
    cached_algebra,
    dual,
    from_tensors,
    group_algebra,
    hopf_from_json,
    hopf_to_json,
    iterated_comul,
    load_algebra,
    opposite,
    product,
    sweedler_h4,
    taft,
    verify_hopf,
)
from hopfcoh.sparse import SparseMatrix, kron

CORPUS = [("kZ2", 2), ("kZ2", 3), ("kZ3", 2), ("S3", 7), ("dual:kZ2", 2), ("dual:kZ2", 3),
          ("sweedler", 5), ("taft:3:2", 7), ("dual:sweedler", 5), ("kZn:4", 3)]


@pytest.mark.parametrize("name,p", CORPUS)
def test_builtins_satisfy_axioms(name, p):
    assert verify_hopf(cached_algebra(name, p)) == []


def test_group_algebra_z2(kz2_f2):
    assert kz2_f2.dim == 2
    assert kz2_f2.antipode == SparseMatrix.identity(kz2_f2.field, 2)


def test_trivial_group():
    h = group_algebra([[0]], 5)
    assert h.dim == 1 and verify_hopf(h) == []
    assert h.mul.to_dense().tolist() == [[1]]


def test_non_group_table_rejected():
    with pytest.raises(ValueError, match="not a group"):
        group_algebra([[0, 1], [0, 1]], 2)


def test_broken_antipode_detected(h4):
    bad = from_tensors(h4.field, h4.mul_tensor(), h4.unit.to_dense().reshape(-1), h4.comul_tensor(),
                       h4.counit.to_dense().reshape(-1), np.eye(4, dtype=np.int64))
    assert any("antipode" in v for v in verify_hopf(bad))


def test_sweedler_relations(h4):
    # basis 1, g, x, gx
    e = [h4.basis_vector(i) for i in range(4)]
    assert np.array_equal(product(h4, e[1], e[1]), e[0])
    assert not product(h4, e[2], e[2]).any()
    assert np.array_equal(product(h4, e[2], e[1]), (-e[3]) % 5)
    S = h4.antipode.to_dense()
    assert np.array_equal((S @ S) % 5 @ e[2], (-e[2]) % 5)  # S^2(x) = -x
    assert h4.counit.to_dense()[0, 3] == 0


def test_sweedler_needs_odd_characteristic():
    with pytest.raises(ValueError):
        sweedler_h4(2)


def test_taft_matches_sweedler(h4):
    assert taft(2, 5, 4) == h4
    assert verify_hopf(taft(3, 7, 2)) == []
    with pytest.raises(ValueError):
        taft(3, 5, 2)


def test_dual_and_opposite_involutive(h4, kz2_f3):
    assert dual(dual(h4)) == h4
    assert opposite(opposite(h4)) == h4
    assert opposite(kz2_f3).mul == kz2_f3.mul
    d = dual(kz2_f3)
    assert d.mul == kz2_f3.comul.T and d.comul == kz2_f3.mul.T


def test_opposite_detects_noncommutativity(h4):
    # (gx)x and x(gx) both vanish since x^2 = 0; g and x do not commute
    op = opposite(h4)
    g, x = h4.basis_vector(1), h4.basis_vector(2)
    assert not np.array_equal(product(op, g, x), product(op, x, g))
    assert np.array_equal(product(op, g, x), product(h4, x, g))


def test_iterated_comul_cases(h4):
    assert iterated_comul(h4, -1) == h4.counit
    assert iterated_comul(h4, 0) == SparseMatrix.identity(h4.field, 4)
    assert iterated_comul(h4, 1) == h4.comul
    with pytest.raises(ValueError):
        iterated_comul(h4, -2)


@pytest.mark.parametrize("u,v", [(0, 0), (0, 1), (1, 1), (2, 0), (1, 2), (2, 2)])
def test_iterated_comul_composition(h4, u, v):
    assert iterated_comul(h4, u + v + 1) == kron(iterated_comul(h4, u), iterated_comul(h4, v)) @ h4.comul


def test_grouplike_triple(kz2_f2):
    g = SparseMatrix.column_vector(kz2_f2.field, kz2_f2.basis_vector(1))
    assert iterated_comul(kz2_f2, 2) @ g == kron(g, g, g)


@pytest.mark.parametrize("name,p", [("kZ2", 3), ("sweedler", 5), ("S3", 7)])
def test_json_round_trip(name, p, tmp_path):
    h = cached_algebra(name, p)
    obj = hopf_to_json(h)
    assert hopf_from_json(json.loads(json.dumps(obj))) == h
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(obj))
    assert load_algebra(str(path)) == h


def test_json_without_antipode_inverse(h4):
    obj = hopf_to_json(h4)
    del obj["antipode_inv"]
    assert hopf_from_json(obj) == h4


@pytest.mark.parametrize("mutate,needle", [
    (lambda o: o.pop("dim"), "dim"),
    (lambda o: o["mul"].append([0, 0, 9, "1"]), "mul"),
    (lambda o: o.__setitem__("unit", ["1"]), "unit"),
    (lambda o: o["antipode"].append([0, 0, "1/0"]), "antipode"),
    (lambda o: o.__setitem__("field", 4), "field"),
])
def test_json_errors_are_located(h4, mutate, needle):
    obj = hopf_to_json(h4)
    mutate(obj)
    with pytest.raises(HopfFormatError, match=needle):
        hopf_from_json(obj)


def test_bad_json_file_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 2,\n  "mul": ]}')
    with pytest.raises(HopfFormatError, match=r"bad.json:2:\d+"):
        load_algebra(str(path))


def test_unknown_names():
    with pytest.raises(HopfFormatError):
        builtin_algebra("nope", 2)
    with pytest.raises(HopfFormatError):
        load_algebra("kZ2")
