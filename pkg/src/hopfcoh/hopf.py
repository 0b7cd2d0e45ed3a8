"""Finite-dimensional Hopf algebras stored as sparse structure maps.

For A with basis e_0..e_{n-1}:

* ``mul``      n x n^2,  mul[k, i*n + j]   = coefficient of e_k in e_i e_j
* ``unit``     n x 1
* ``comul``    n^2 x n,  comul[j*n + k, i] = coefficient of e_j (x) e_k in Delta(e_i)
* ``counit``   1 x n
* ``antipode`` n x n,    antipode[j, i]    = coefficient of e_j in S(e_i)

>>> h = sweedler_h4(FieldSpec(5))
>>> verify_hopf(h)
[]
>>> dual(dual(h)) == h
True
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import FieldSpec, as_field
from .linalg import inverse
from .sparse import SparseMatrix, identity, kron, kron_ids


class HopfFormatError(ValueError):
    """Malformed Hopf algebra or bimodule description."""


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    field: FieldSpec
    dim: int
    mul: SparseMatrix
    unit: SparseMatrix
    comul: SparseMatrix
    counit: SparseMatrix
    antipode: SparseMatrix
    antipode_inv: SparseMatrix
    name: str = ""

    def __post_init__(self):
        n = self.dim
        expected = {
            "mul": (n, n * n),
            "unit": (n, 1),
            "comul": (n * n, n),
            "counit": (1, n),
            "antipode": (n, n),
            "antipode_inv": (n, n),
        }
        for key, shape in expected.items():
            m = getattr(self, key)
            if m.shape != shape:
                raise ValueError(f"{key} has shape {m.shape}, expected {shape} for dim {n}")
            if m.field != self.field:
                raise ValueError(f"{key} is over {m.field}, algebra is over {self.field}")

    def __eq__(self, other):
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return self.field == other.field and self.dim == other.dim and all(
            getattr(self, k) == getattr(other, k)
            for k in ("mul", "unit", "comul", "counit", "antipode", "antipode_inv")
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"HopfAlgebra({self.name or '?'}, dim={self.dim}, field={self.field!r})"

    # dense views ------------------------------------------------------------

    def mul_tensor(self) -> np.ndarray:
        """Array T[i, j, k] = coefficient of e_k in e_i e_j."""
        n = self.dim
        return self.mul.to_dense().T.reshape(n, n, n)

    def comul_tensor(self) -> np.ndarray:
        """Array T[i, j, k] = coefficient of e_j (x) e_k in Delta(e_i)."""
        n = self.dim
        return self.comul.to_dense().T.reshape(n, n, n)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def I(self, k: int = 1) -> SparseMatrix:
        return identity(self.field, self.dim**k)


def from_tensors(field, mul, unit, comul, counit, antipode, antipode_inv=None, name: str = "") -> HopfAlgebra:
    """Build a Hopf algebra from structure-constant arrays (index conventions as above)."""
    field = as_field(field)
    mul = field.array(mul)
    n = mul.shape[0]
    if mul.shape != (n, n, n):
        raise ValueError(f"mul tensor must be n x n x n, got {mul.shape}")
    comul = field.array(comul)
    if comul.shape != (n, n, n):
        raise ValueError(f"comul tensor must be {n} x {n} x {n}, got {comul.shape}")
    unit = field.array(unit).reshape(-1)
    counit = field.array(counit).reshape(-1)
    if unit.size != n or counit.size != n:
        raise ValueError("unit/counit length must equal the dimension")
    S = field.array(antipode)
    if S.shape != (n, n):
        raise ValueError(f"antipode must be {n} x {n}")
    mul_m = SparseMatrix.from_dense(field, mul.reshape(n * n, n).T)
    comul_m = SparseMatrix.from_dense(field, comul.reshape(n, n * n).T)
    S_m = SparseMatrix.from_dense(field, S.T)
    if antipode_inv is None:
        try:
            Sinv = inverse(S_m)
        except ValueError as exc:
            raise ValueError("antipode is not invertible") from exc
    else:
        Sinv = SparseMatrix.from_dense(field, field.array(antipode_inv).T)
    return HopfAlgebra(
        field,
        n,
        mul_m,
        SparseMatrix.column_vector(field, unit),
        comul_m,
        SparseMatrix.row_vector(field, counit),
        S_m,
        Sinv,
        name,
    )


# -- iterated structure maps ----------------------------------------------------


def mul_k(h: HopfAlgebra, k: int) -> SparseMatrix:
    """Iterated product A^{(x)k} -> A (the unit for k = 0)."""
    if k < 0:
        raise ValueError("mul_k needs k >= 0")
    if k == 0:
        return h.unit
    out = h.I()
    for j in range(2, k + 1):
        out = h.mul @ kron(out, h.I())
    return out


def iterated_comul(h: HopfAlgebra, u: int) -> SparseMatrix:
    """Delta^(u): A -> A^{(x)(u+1)}; u = -1 is the counit and u = 0 the identity."""
    if u < -1:
        raise ValueError("iterated_comul needs u >= -1")
    if u == -1:
        return h.counit
    out = h.I()
    for j in range(u):
        out = kron_ids(h.field, [h.comul, h.dim**j]) @ out
    return out


def left_mult_by(h: HopfAlgebra, vec) -> SparseMatrix:
    """Matrix of x -> a x for the element a given by its coordinates."""
    a = SparseMatrix.column_vector(h.field, vec)
    return h.mul @ kron(a, h.I())


def product(h: HopfAlgebra, u, v) -> np.ndarray:
    """Product of two elements given as dense coordinate vectors."""
    f = h.field
    x = SparseMatrix.column_vector(f, u).kron(SparseMatrix.column_vector(f, v))
    return (h.mul @ x).to_dense().reshape(-1)


# -- axioms ----------------------------------------------------------------------


def verify_hopf(h: HopfAlgebra) -> list[str]:
    """Names of the violated Hopf axioms; empty when h is a Hopf algebra."""
    f = h.field
    I = h.I()
    m, e, d, c, S, Sinv = h.mul, h.unit, h.comul, h.counit, h.antipode, h.antipode_inv
    n = h.dim
    failures = []
    if m @ kron(m, I) != m @ kron(I, m):
        failures.append("associativity")
    if m @ kron(e, I) != I or m @ kron(I, e) != I:
        failures.append("unitality")
    if kron(d, I) @ d != kron(I, d) @ d:
        failures.append("coassociativity")
    if kron(c, I) @ d != I or kron(I, c) @ d != I:
        failures.append("counitality")
    dd = kron(d, d).permute_row_factors([n, n, n, n], [0, 2, 1, 3])
    if d @ m != kron(m, m) @ dd:
        failures.append("comultiplication-multiplicative")
    if d @ e != kron(e, e):
        failures.append("comultiplication-unital")
    if c @ m != kron(c, c):
        failures.append("counit-multiplicative")
    if c @ e != SparseMatrix.identity(f, 1):
        failures.append("counit-unital")
    eps = e @ c
    if m @ kron(S, I) @ d != eps or m @ kron(I, S) @ d != eps:
        failures.append("antipode")
    if S @ Sinv != I or Sinv @ S != I:
        failures.append("antipode-inverse")
    return failures


# -- constructions -----------------------------------------------------------------


def dual(h: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra A* in the dual basis."""
    return HopfAlgebra(
        h.field,
        h.dim,
        h.comul.T,
        h.counit.T,
        h.mul.T,
        h.unit.T,
        h.antipode.T,
        h.antipode_inv.T,
        h.name[5:-1] if h.name.startswith("dual(") else f"dual({h.name})",
    )


def opposite(h: HopfAlgebra) -> HopfAlgebra:
    """Same data with the multiplication reversed (a . b = b a)."""
    n = h.dim
    return HopfAlgebra(
        h.field,
        n,
        h.mul.permute_col_factors([n, n], [1, 0]),
        h.unit,
        h.comul,
        h.counit,
        h.antipode,
        h.antipode_inv,
        f"op({h.name})",
    )


def group_algebra(table, field, name: str = "") -> HopfAlgebra:
    """k[G] for a group given by its Cayley table ``table[i][j] = index of g_i g_j``."""
    field = as_field(field)
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ValueError("Cayley table must be a non-empty square array")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise ValueError("Cayley table entries out of range")
    for row in t:
        if len(set(row.tolist())) != n:
            raise ValueError("Cayley table row is not a permutation (not a group)")
    for col in t.T:
        if len(set(col.tolist())) != n:
            raise ValueError("Cayley table column is not a permutation (not a group)")
    if not np.array_equal(t[t[:, :, None], np.arange(n)[None, None, :]], t[np.arange(n)[:, None, None], t[None, :, :]]):
        raise ValueError("Cayley table is not associative")
    ids = [i for i in range(n) if np.array_equal(t[i], np.arange(n)) and np.array_equal(t[:, i], np.arange(n))]
    if not ids:
        raise ValueError("Cayley table has no identity element")
    e = ids[0]
    inv = [int(np.flatnonzero(t[i] == e)[0]) for i in range(n)]
    mul = np.zeros((n, n, n), dtype=np.int64)
    comul = np.zeros((n, n, n), dtype=np.int64)
    S = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        comul[i, i, i] = 1
        S[i, inv[i]] = 1
        for j in range(n):
            mul[i, j, t[i, j]] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[e] = 1
    return from_tensors(field, mul, unit, comul, np.ones(n, dtype=np.int64), S, S.T, name=name)


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(k: int) -> list[list[int]]:
    """Cayley table of S_k; element 0 is the identity, (g h)(x) = g(h(x))."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(g[h[x]] for x in range(k))] for h in perms] for g in perms]


def sweedler_h4(field) -> HopfAlgebra:
    """Sweedler's 4-dimensional algebra on the basis (1, g, x, gx)."""
    field = as_field(field)
    if field.p == 2:
        raise ValueError("Sweedler's algebra needs characteristic different from 2")
    one, g, x, gx = range(4)
    mul = np.zeros((4, 4, 4), dtype=np.int64)
    for b in range(4):
        mul[one, b, b] = 1
        mul[b, one, b] = 1
    mul[g, g, one] = 1
    mul[g, x, gx] = 1
    mul[g, gx, x] = 1
    mul[x, g, gx] = -1
    mul[gx, g, x] = -1
    comul = np.zeros((4, 4, 4), dtype=np.int64)
    comul[one, one, one] = 1
    comul[g, g, g] = 1
    comul[x, x, one] = 1
    comul[x, g, x] = 1
    comul[gx, gx, g] = 1
    comul[gx, one, gx] = 1
    S = np.zeros((4, 4), dtype=np.int64)
    S[one, one] = 1
    S[g, g] = 1
    S[x, gx] = -1
    S[gx, x] = 1
    return from_tensors(field, mul, [1, 0, 0, 0], comul, [1, 1, 0, 0], S, name="sweedler")


def _is_primitive_root(field: FieldSpec, q: int, n: int) -> bool:
    if field.is_rational:
        return (n == 1 and q == 1) or (n == 2 and q == -1)
    q = field.scalar(q)
    return pow(q, n, field.p) == 1 and all(pow(q, k, field.p) != 1 for k in range(1, n))


def taft(n: int, field, q) -> HopfAlgebra:
    """Taft algebra T_n(q) of dimension n^2 on the basis g^i x^j (index j*n + i).

    g^n = 1, x^n = 0, x g = q g x, Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x.
    """
    field = as_field(field)
    if n < 2:
        raise ValueError("taft needs n >= 2")
    if not _is_primitive_root(field, q, n):
        raise ValueError(f"{q} is not a primitive root of unity of order {n} in {field!r}")
    q = field.scalar(q)
    N = n * n

    def idx(i, j):
        return j * n + i

    mul = field.zeros((N, N, N))
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j + l < n:
            mul[idx(i, j), idx(k, l), idx((i + k) % n, j + l)] = field.scalar(q ** (j * k) if field.is_rational else pow(q, j * k, field.p))
    h0 = from_tensors(field, mul, _unit_vec(field, N, 0), np.zeros((N, N, N), dtype=np.int64),
                      np.zeros(N, dtype=np.int64), np.eye(N, dtype=np.int64), np.eye(N, dtype=np.int64))

    def prod(u, v):
        return product(h0, u, v)

    mul2 = kron(h0.mul, h0.mul).permute_col_factors([N] * 4, [0, 2, 1, 3])

    def prod2(u, v):
        # product in A (x) A
        x = SparseMatrix.column_vector(field, u).kron(SparseMatrix.column_vector(field, v))
        return (mul2 @ x).to_dense().reshape(-1)

    gv, xv, onev = _unit_vec(field, N, idx(1, 0)), _unit_vec(field, N, idx(0, 1)), _unit_vec(field, N, 0)
    g2 = np.outer(gv, gv).reshape(-1)
    x2 = field.normalize(np.outer(xv, onev).reshape(-1) + np.outer(gv, xv).reshape(-1))
    ginv = _unit_vec(field, N, idx(n - 1, 0))
    Sx = field.normalize(-prod(ginv, xv))
    comul = field.zeros((N, N, N))
    S = field.zeros((N, N))
    counit = field.zeros(N)
    for i in range(n):
        for j in range(n):
            d = np.outer(onev, onev).reshape(-1)
            s = onev.copy()
            for _ in range(i):
                d = prod2(d, g2)
            for _ in range(j):
                d = prod2(d, x2)
            for _ in range(j):
                s = prod(s, Sx)
            for _ in range(i):
                s = prod(s, ginv)
            comul[idx(i, j)] = d.reshape(N, N)
            S[idx(i, j)] = s
            counit[idx(i, j)] = 1 if j == 0 else 0
    return from_tensors(field, mul, _unit_vec(field, N, 0), comul, counit, S, name=f"taft{n}")


def _unit_vec(field: FieldSpec, n: int, i: int) -> np.ndarray:
    v = field.zeros(n)
    v[i] = 1
    return v


# -- named algebras and JSON format ------------------------------------------------


def builtin_algebra(name: str, field) -> HopfAlgebra:
    """Resolve names like ``kZ2``, ``kZ3``, ``kZn:5``, ``S3``, ``sweedler``, ``taft:3:2``, ``dual:kZ2``."""
    field = as_field(field)
    if name.startswith("dual:"):
        return dual(builtin_algebra(name[5:], field))
    if name in ("kZ2", "Z2"):
        return group_algebra(cyclic_group_table(2), field, "kZ2")
    if name in ("kZ3", "Z3"):
        return group_algebra(cyclic_group_table(3), field, "kZ3")
    if name.startswith("kZn:"):
        k = int(name[4:])
        return group_algebra(cyclic_group_table(k), field, f"kZ{k}")
    if name in ("S3", "kS3"):
        return group_algebra(symmetric_group_table(3), field, "kS3")
    if name in ("sweedler", "H4", "h4"):
        return sweedler_h4(field)
    if name.startswith("taft:"):
        parts = name.split(":")
        if len(parts) != 3:
            raise HopfFormatError(f"taft selector must look like taft:n:q, got {name!r}")
        return taft(int(parts[1]), field, int(parts[2]))
    raise HopfFormatError(f"unknown algebra {name!r}")


def _entries(obj, key, width, n_bounds, where):
    rows = obj.get(key)
    if not isinstance(rows, list):
        raise HopfFormatError(f"{where}{key}: expected a list of entries")
    out = []
    for pos, e in enumerate(rows):
        if not isinstance(e, list) or len(e) != width + 1:
            raise HopfFormatError(f"{where}{key}[{pos}]: expected {width} indices and a scalar")
        idx = e[:width]
        for t, (v, b) in enumerate(zip(idx, n_bounds)):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < b:
                raise HopfFormatError(f"{where}{key}[{pos}][{t}]: index {v!r} out of range [0, {b})")
        out.append((idx, e[width]))
    return out


def _scalar(field, v, where):
    try:
        return field.scalar(v)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise HopfFormatError(f"{where}: bad scalar {v!r} ({exc})") from None


def hopf_from_json(obj, field=None) -> HopfAlgebra:
    """Parse the JSON structure-constant format.

    ``{"field": p, "dim": n, "mul": [[i, j, k, c], ...], "unit": [...],
    "comul": [[i, j, k, c], ...], "counit": [...], "antipode": [[i, j, c], ...],
    "antipode_inv": [...] (optional)}`` where ``mul`` lists e_i e_j = ... + c e_k,
    ``comul`` lists Delta(e_i) = ... + c e_j (x) e_k and ``antipode`` lists
    S(e_i) = ... + c e_j.  Scalars may be integers or strings like "-1", "1/2".
    """
    if not isinstance(obj, dict):
        raise HopfFormatError("algebra description must be a JSON object")
    if "field" in obj:
        field = obj["field"]
    if field is None:
        raise HopfFormatError("field: missing characteristic")
    try:
        field = as_field(field)
    except ValueError as exc:
        raise HopfFormatError(f"field: {exc}") from None
    n = obj.get("dim")
    if not isinstance(n, int) or n <= 0:
        raise HopfFormatError("dim: expected a positive integer")
    mul = field.zeros((n, n, n))
    for (i, j, k), c in _entries(obj, "mul", 3, (n, n, n), ""):
        mul[i, j, k] = _scalar(field, c, f"mul[{i},{j},{k}]")
    comul = field.zeros((n, n, n))
    for (i, j, k), c in _entries(obj, "comul", 3, (n, n, n), ""):
        comul[i, j, k] = _scalar(field, c, f"comul[{i},{j},{k}]")
    S = field.zeros((n, n))
    for (i, j), c in _entries(obj, "antipode", 2, (n, n), ""):
        S[i, j] = _scalar(field, c, f"antipode[{i},{j}]")
    Sinv = None
    if "antipode_inv" in obj:
        Sinv = field.zeros((n, n))
        for (i, j), c in _entries(obj, "antipode_inv", 2, (n, n), ""):
            Sinv[i, j] = _scalar(field, c, f"antipode_inv[{i},{j}]")
    vecs = {}
    for key in ("unit", "counit"):
        v = obj.get(key)
        if not isinstance(v, list) or len(v) != n:
            raise HopfFormatError(f"{key}: expected a list of {n} scalars")
        vecs[key] = [_scalar(field, c, f"{key}[{t}]") for t, c in enumerate(v)]
    try:
        return from_tensors(field, mul, vecs["unit"], comul, vecs["counit"], S, Sinv, name=obj.get("name", ""))
    except ValueError as exc:
        raise HopfFormatError(str(exc)) from None


def hopf_to_json(h: HopfAlgebra) -> dict:
    n = h.dim
    s = str
    return {
        "field": h.field.p,
        "dim": n,
        "name": h.name,
        "mul": [[c // n, c % n, r, s(v)] for r, c, v in h.mul.entries()],
        "unit": [s(v) for v in h.unit.to_dense().reshape(-1)],
        "comul": [[c, r // n, r % n, s(v)] for r, c, v in h.comul.entries()],
        "counit": [s(v) for v in h.counit.to_dense().reshape(-1)],
        "antipode": [[c, r, s(v)] for r, c, v in h.antipode.entries()],
        "antipode_inv": [[c, r, s(v)] for r, c, v in h.antipode_inv.entries()],
    }


def load_algebra(spec: str, field=None) -> HopfAlgebra:
    """A built-in name or a path to a JSON file."""
    if spec.endswith(".json"):
        try:
            with open(spec) as fh:
                obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise HopfFormatError(f"{spec}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        except OSError as exc:
            raise HopfFormatError(f"{spec}: {exc.strerror}") from None
        return hopf_from_json(obj, field)
    if field is None:
        raise HopfFormatError(f"algebra {spec!r} needs a field")
    return builtin_algebra(spec, field)


@lru_cache(maxsize=None)
def cached_algebra(name: str, p: int) -> HopfAlgebra:
    return builtin_algebra(name, FieldSpec(p))
