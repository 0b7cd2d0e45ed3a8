import numpy as np
import pytest

from hopfcoh.bimodule import regular_bimodule
from hopfcoh.cup import (
    A4Cochain, CochainMismatch, CochainSpace, D, HbCochain, cup, cup_is_derivation_check, hb_cup, hb_D,
    identity_cochain, iota, iota_inverse, morphism_cochain, partial_assoc_check, zero_cochain,
)
from hopfcoh.hopf import cached_algebra
from hopfcoh.sparse import SparseMatrix

CASES = [("kZ2", 2), ("kZ2", 3), ("kZ3", 2), ("sweedler", 5)]


@pytest.fixture(scope="module", params=CASES, ids=[f"{a}-F{p}" for a, p in CASES])
def spaces(request):
    h = cached_algebra(*request.param)
    A = regular_bimodule(h)
    return A, CochainSpace(A, A, 3), CochainSpace(A, A, 3, "hb")


def _pairs(seed, count, top=2):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        p, q = (int(v) for v in rng.integers(0, top + 1, size=2))
        yield rng, p, q


def test_derivation_on_random_pairs(spaces):
    A, S, _ = spaces
    for rng, p, q in _pairs(1, 15, top=1):
        assert cup_is_derivation_check(S.random(p, rng), S.random(q, rng))


def test_derivation_sign_matters():
    # over F5 dropping (-1)^p breaks the Leibniz rule for some odd-degree f
    h = cached_algebra("sweedler", 5)
    A = regular_bimodule(h)
    S = CochainSpace(A, A, 3)
    rng = np.random.default_rng(7)
    broken = 0
    for _ in range(10):
        f, g = S.random(1, rng), S.random(1, rng)
        broken += D(cup(f, g)) != cup(D(f), g) + cup(f, D(g))
    assert broken > 0


def test_D_squares_to_zero(spaces):
    A, S, _ = spaces
    rng = np.random.default_rng(2)
    for k in range(2):
        assert D(D(S.random(k, rng))).is_zero()


def test_cocycle_products_are_cocycles(spaces):
    A, S, _ = spaces
    Z = {k: S.cocycle_basis(k) for k in range(2)}
    for k in range(2):
        for l in range(2):
            for f in Z[k]:
                for g in Z[l]:
                    if k + l <= 2:
                        assert D(cup(f, g)).is_zero()


def test_coboundary_times_cocycle_is_coboundary(spaces):
    A, S, _ = spaces
    rng = np.random.default_rng(3)
    for g in S.cocycle_basis(1):
        u = S.random(0, rng)
        prod = cup(D(u), g)
        assert prod == D(cup(u, g))
        assert S.is_coboundary(prod)


def test_identity_is_a_unit(spaces):
    A, S, _ = spaces
    I = identity_cochain(A)
    assert D(I).is_zero()
    for rng, p, _ in _pairs(4, 6):
        f = S.random(p, rng)
        assert cup(f, I) == f
        assert cup(I, f) == f


def test_zero_annihilates(spaces):
    A, S, _ = spaces
    for rng, p, q in _pairs(5, 6):
        f = S.random(p, rng)
        assert cup(zero_cochain(A, A, q), f).is_zero()
        assert cup(f, zero_cochain(A, A, q)).is_zero()


def test_cup_is_bilinear(spaces):
    A, S, _ = spaces
    rng = np.random.default_rng(6)
    f1, f2, g = S.random(1, rng), S.random(1, rng), S.random(1, rng)
    assert cup(f1 + f2.scale(2), g) == cup(f1, g) + cup(f2, g).scale(2)
    assert cup(g, f1 + f2) == cup(g, f1) + cup(g, f2)


def test_partial_associativity(spaces):
    A, S, _ = spaces
    rng = np.random.default_rng(8)
    Z0 = S.cocycle_basis(0)
    for h0 in Z0 + [identity_cochain(A), zero_cochain(A, A, 0)]:
        for p in range(2):
            for q in range(2):
                assert partial_assoc_check(S.random(p, rng), S.random(q, rng), h0)


def test_partial_assoc_needs_degree_zero(A2):
    S = CochainSpace(A2, A2, 2)
    f = S.random(1, np.random.default_rng(0))
    with pytest.raises(CochainMismatch):
        partial_assoc_check(f, f, f)


def test_cross_sign(spaces):
    A, S, _ = spaces
    rng = np.random.default_rng(9)
    f, g = S.random(1, rng), S.random(1, rng)
    assert cup(f, g, cross=True) == cup(f, g).scale(-1)
    f0 = S.random(0, rng)
    assert cup(f0, g, cross=True) == cup(f0, g)


def test_hb_cup_matches_cup(spaces):
    A, _, H = spaces
    for rng, p, q in _pairs(10, 12):
        fb, gb = H.random(p, rng), H.random(q, rng)
        assert iota(hb_cup(fb, gb)) == cup(iota(fb), iota(gb))


def test_iota_round_trip_and_chain_map(spaces):
    A, S, H = spaces
    for rng, p, _ in _pairs(11, 6):
        u = H.random(p, rng)
        assert iota_inverse(iota(u)) == u
        assert iota(hb_D(u)) == D(iota(u))
        assert iota(u).violations() == []
    for rng, p, _ in _pairs(12, 6):
        v = S.random(p, rng)
        assert iota(iota_inverse(v)) == v


def test_h1_square_nonzero_over_f2(A2):
    H = CochainSpace(A2, A2, 3, "hb")
    gens = H.cohomology_representatives(1)
    assert len(gens) == 1
    sq = hb_cup(gens[0], gens[0])
    assert hb_D(sq).is_zero()
    assert not H.is_coboundary(sq)


def test_h1_vanishes_over_f3(A3):
    H = CochainSpace(A3, A3, 2, "hb")
    assert H.cohomology_representatives(1) == []


def test_sweedler_h2_has_three_classes(h4):
    A = regular_bimodule(h4)
    H = CochainSpace(A, A, 3, "hb")
    assert len(H.cohomology_representatives(2)) == 3


def test_random_cochains_satisfy_equivariance(spaces):
    A, S, _ = spaces
    rng = np.random.default_rng(13)
    for k in range(3):
        assert S.random(k, rng).violations() == []


def test_non_equivariant_component_reported(A3):
    f = A3.field
    bad = SparseMatrix(f, (2, 2), [0], [1], [1])
    u = morphism_cochain(bad, A3, A3)
    assert u.violations()
    assert identity_cochain(A3).violations() == []


def test_coords_round_trip(spaces):
    A, S, _ = spaces
    rng = np.random.default_rng(14)
    for k in range(3):
        x = S.field.random_array(rng, S.dim(k))
        assert np.array_equal(S.to_coords(S.from_coords(k, x)), x)


def test_shape_checks(A2, kz2_f2):
    f = A2.field
    with pytest.raises(CochainMismatch):
        A4Cochain(1, [SparseMatrix.zeros(f, (2, 4))], A2, A2)
    with pytest.raises(CochainMismatch):
        A4Cochain(0, [SparseMatrix.zeros(f, (3, 2))], A2, A2)
    with pytest.raises(CochainMismatch):
        HbCochain(kz2_f2, 0, [SparseMatrix.zeros(f, (2, 2))])
    with pytest.raises(CochainMismatch):
        zero_cochain(A2, A2, 1) + zero_cochain(A2, A2, 2)


def test_cup_needs_composable_pair(A2, kz2_f2):
    from hopfcoh.bimodule import direct_sum
    B = direct_sum(A2, A2)
    f = zero_cochain(A2, B, 0)
    with pytest.raises(CochainMismatch):
        cup(f, f)


def test_to_json_lists_entries(A3):
    j = identity_cochain(A3).scale(2).to_json()
    assert j["degree"] == 0
    assert j["components"][0]["shape"] == [2, 2]
    assert sorted(j["components"][0]["entries"]) == [[0, 0, "2"], [1, 1, "2"]]
