from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfcoh.field import FieldSpec, as_field


def test_prime_field_scalars():
    F5 = FieldSpec(5)
    assert F5.scalar("-1") == 4
    assert F5.scalar(7) == 2
    assert F5.scalar("1/2") == 3
    assert F5.inv(2) == 3
    assert repr(F5) == "F5"


def test_rationals():
    Q = FieldSpec(0)
    assert Q.is_rational
    assert Q.scalar("3/6") == Fraction(1, 2)
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert repr(Q) == "Q"


@pytest.mark.parametrize("bad", [1, 4, 9, -3, 2**31 + 11, True, "5"])
def test_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        FieldSpec(bad)


def test_inverse_of_zero_fails():
    with pytest.raises((ZeroDivisionError, ValueError)):
        FieldSpec(7).inv(0)


def test_as_field_passthrough():
    F = FieldSpec(3)
    assert as_field(F) is F
    assert as_field(3) == F


@given(st.sampled_from([2, 3, 5, 7, 101]), st.integers(-10**6, 10**6))
def test_inverse_property(p, x):
    F = FieldSpec(p)
    a = F.scalar(x)
    if a == 0:
        return
    assert a * F.inv(a) % p == 1


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(-50, 50), min_size=1, max_size=20))
def test_normalize_range(p, xs):
    F = FieldSpec(p)
    arr = F.normalize(np.asarray(xs, dtype=np.int64))
    assert arr.min() >= 0 and arr.max() < p
    assert all((a - x) % p == 0 for a, x in zip(arr.tolist(), xs))
