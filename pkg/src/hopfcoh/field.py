"""Exact scalar fields: prime fields F_p (p < 2**31) and the rationals (p = 0).

Elements of F_p are stored as int64 in [0, p).  Rationals are stored as
``fractions.Fraction`` inside numpy object arrays.

>>> F5 = FieldSpec(5)
>>> F5.scalar("-1")
4
>>> F5.inv(2)
3
>>> FieldSpec(0).scalar("3/6")
Fraction(1, 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_CHARACTERISTIC = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p for prime p < 2**31, or Q when ``characteristic == 0``."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
            raise ValueError(f"field characteristic must be an integer, got {p!r}")
        if p != 0 and (p >= MAX_CHARACTERISTIC or not _is_prime(int(p))):
            raise ValueError(f"field characteristic must be 0 or a prime below 2^31, got {p}")
        object.__setattr__(self, "characteristic", int(p))

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def dtype(self):
        return object if self.characteristic == 0 else np.int64

    def __repr__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    # -- scalars -----------------------------------------------------------

    def scalar(self, x):
        """Normalize an int, Fraction or decimal/fraction string to a field element."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif isinstance(x, (bool, float)):
            raise ValueError(f"refusing inexact scalar {x!r}")
        elif isinstance(x, np.integer):
            x = int(x)
        if self.characteristic == 0:
            return Fraction(x)
        p = self.characteristic
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ValueError(f"{x} is not defined in F{p}")
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def inv(self, x):
        if self.characteristic == 0:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(x)
        x = int(x) % self.characteristic
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.characteristic)

    def to_str(self, x) -> str:
        return str(x)

    # -- arrays ------------------------------------------------------------

    def array(self, values) -> np.ndarray:
        """Build a normalized array from arbitrary integer/Fraction/string data."""
        if self.characteristic == 0:
            src = np.asarray(values, dtype=object)
            out = np.empty(src.shape, dtype=object)
            flat_src = src.reshape(-1)
            flat = out.reshape(-1)
            for i, v in enumerate(flat_src):
                flat[i] = self.scalar(v)
            return out
        arr = np.asarray(values)
        if arr.dtype == object or arr.dtype.kind in "US":
            return np.vectorize(self.scalar, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
        if arr.dtype.kind not in "iu":
            raise ValueError(f"cannot interpret dtype {arr.dtype} as exact scalars")
        return np.mod(arr.astype(np.int64), self.characteristic)

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        """Reduce an array already of the right dtype (int64 sums/products, Fractions)."""
        if self.characteristic == 0:
            return arr
        return np.mod(arr, self.characteristic)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of normalized arrays (exact, reduced)."""
        if self.characteristic == 0:
            return a * b
        return (a * b) % self.characteristic

    def zeros(self, shape) -> np.ndarray:
        if self.characteristic == 0:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=np.int64)

    def nonzero_mask(self, arr: np.ndarray) -> np.ndarray:
        if self.characteristic == 0:
            return np.array([v != 0 for v in arr.reshape(-1)], dtype=bool).reshape(arr.shape)
        return arr != 0

    def random_array(self, rng: np.random.Generator, shape, low: int = -3, high: int = 3) -> np.ndarray:
        """Uniform elements of F_p, or small integers for Q."""
        if self.characteristic == 0:
            return self.array(rng.integers(low, high + 1, size=shape))
        return rng.integers(0, self.characteristic, size=shape, dtype=np.int64)


def as_field(f) -> FieldSpec:
    return f if isinstance(f, FieldSpec) else FieldSpec(int(f))
