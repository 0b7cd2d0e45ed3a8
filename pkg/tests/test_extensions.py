import numpy as np
import pytest

from hopfcoh.bimodule import is_isomorphism, is_morphism, regular_bimodule
from hopfcoh.cup import CochainSpace, D, cup, identity_cochain, morphism_cochain, zero_cochain
from hopfcoh.extensions import (
    ExtensionError, equivalence_witness, extension_from_1cocycle, extensions_equivalent, pushout,
    split_extension, yoneda_degree10_check,
)
from hopfcoh.hopf import cached_algebra


@pytest.fixture(scope="module")
def S2(A2):
    return CochainSpace(A2, A2, 2)


@pytest.fixture(scope="module")
def S3(A3):
    return CochainSpace(A3, A3, 2)


@pytest.fixture(scope="module")
def S5():
    A = regular_bimodule(cached_algebra("sweedler", 5))
    return CochainSpace(A, A, 2)


@pytest.mark.parametrize("name", ["S2", "S3", "S5"])
def test_cocycles_give_valid_extensions(name, request):
    S = request.getfixturevalue(name)
    for z in S.cocycle_basis(1):
        e = extension_from_1cocycle(z)
        assert e.violations() == []
        assert is_morphism(e.inclusion, e.left, e.middle)
        assert is_morphism(e.projection, e.middle, e.right)


@pytest.mark.parametrize("name", ["S2", "S3", "S5"])
def test_non_cocycles_are_rejected(name, request):
    S = request.getfixturevalue(name)
    rng = np.random.default_rng(1)
    seen = 0
    for _ in range(50):
        u = S.random(1, rng)
        if D(u).is_zero():
            continue
        seen += 1
        assert extension_from_1cocycle(u, check=False).violations()
        with pytest.raises(ExtensionError) as info:
            extension_from_1cocycle(u)
        assert info.value.failures
    assert seen > 0


def test_zero_cocycle_is_split(A2):
    e = extension_from_1cocycle(zero_cochain(A2, A2, 1))
    assert extensions_equivalent(e, split_extension(A2, A2)) is True


@pytest.mark.parametrize("name", ["S2", "S3", "S5"])
def test_cohomologous_cocycles_equivalent(name, request):
    S = request.getfixturevalue(name)
    rng = np.random.default_rng(2)
    for z in S.cocycle_basis(1):
        v = S.random(0, rng)
        e1, e2 = extension_from_1cocycle(z), extension_from_1cocycle(z + D(v))
        verdict, phi = equivalence_witness(e1, e2)
        assert verdict is True
        assert is_isomorphism(phi)
        assert is_morphism(phi, e1.middle, e2.middle)
        assert phi @ e1.inclusion == e2.inclusion
        assert e2.projection @ phi == e1.projection


def test_coboundaries_split(S3, A3):
    rng = np.random.default_rng(3)
    for _ in range(5):
        e = extension_from_1cocycle(D(S3.random(0, rng)))
        assert extensions_equivalent(e, split_extension(A3, A3)) is True


def test_nonsplit_witness_over_f2(S2, A2):
    reps = S2.cohomology_representatives(1)
    assert len(reps) == 1
    e = extension_from_1cocycle(reps[0])
    assert extensions_equivalent(e, split_extension(A2, A2)) is False
    assert extensions_equivalent(e, e) is True


def test_different_ends_rejected(A2, A3):
    with pytest.raises(ValueError):
        extensions_equivalent(split_extension(A2, A2), split_extension(A3, A3))


def test_pushout_by_identity_and_zero(S2, A2):
    for z in S2.cocycle_basis(1):
        e = extension_from_1cocycle(z)
        pid = pushout(identity_cochain(A2), e)
        assert pid.violations() == []
        assert extensions_equivalent(pid, e) is True
        p0 = pushout(zero_cochain(A2, A2, 0), e)
        assert p0.violations() == []
        assert extensions_equivalent(p0, split_extension(A2, A2)) is True


def test_pushout_by_scalar_over_f3(S3, A3):
    two = morphism_cochain(identity_cochain(A3).components[0].scale(2), A3, A3)
    for z in S3.cocycle_basis(1):
        left = pushout(two, extension_from_1cocycle(z))
        right = extension_from_1cocycle(z.scale(2))
        assert left.violations() == []
        assert extensions_equivalent(left, right) is True


def test_pushout_argument_checks(S2, A2):
    e = extension_from_1cocycle(S2.cocycle_basis(1)[0])
    with pytest.raises(ValueError):
        pushout(S2.cocycle_basis(1)[0], e)
    with pytest.raises(ValueError):
        pushout(identity_cochain(A2).components[0], e)


@pytest.mark.parametrize("name", ["S2", "S3", "S5"])
def test_yoneda_degree_one_zero(name, request):
    S = request.getfixturevalue(name)
    for f in S.cocycle_basis(1):
        for g in S.cocycle_basis(0):
            assert yoneda_degree10_check(f, g) is True
            assert yoneda_degree10_check(f, g, cross=True) is True


def test_yoneda_degree_check(S2):
    f = S2.cocycle_basis(1)[0]
    with pytest.raises(ValueError):
        yoneda_degree10_check(f, f)


def test_cup_with_morphism_is_cocycle(S5):
    for f in S5.cocycle_basis(1):
        for g in S5.cocycle_basis(0):
            assert D(cup(f, g)).is_zero()
