"""Cochains of the reduced Hopf bimodule complex and their cup product.

A degree-n cochain from M to N has components u_t in
Hom_{A-}^{-A}(M (x) A^{n-t}, A^t (x) N) for t = 0..n (cell (t, n-t) of the
reduced A4 double complex).  For f of degree p (components f_s) and g of
degree q (components g_r), the component of f u g at t = s + r is the sum of

    (-1)^{s(q-r)} (1^s (x) g_r) [ f_s(m a_1..a_{p-s}) . (Delta^{(s-1)}(a'_{p-s+1} .. a'_{n-t}) (x) 1)
                                   (x) a''_{p-s+1} .. a''_{n-t} ]

where a' (x) a'' is the coproduct of each remaining input.  The total
differential D is a right derivation: D(f u g) = Df u g + (-1)^p f u Dg.

H_b cochains (M = N = A) have components in Hom_k(A^{n-t}, A^t); ``iota``
identifies them with A4 cochains, and ``hb_cup`` is the same product written
directly on them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bimodule import (
    HopfBimodule,
    codiagonal_left_coaction,
    codiagonal_right_coaction,
    diagonal_left_action,
    diagonal_right_action,
    left_tensor_power,
    regular_bimodule,
    right_tensor_power,
)
from .complexes import constraint_matrices, total_complex, total_offsets, unvec, vec
from .hopf import HopfAlgebra, iterated_comul, mul_k
from .linalg import kernel, rank, solve
from .sparse import SparseMatrix, hstack, kron, kron_ids
from .theories import REDUCED_A4_CONSTRAINTS, ambient_dh, ambient_dv, double_complex


class CochainMismatch(ValueError):
    """Cochains over different bimodules or of incompatible shape."""


@dataclass
class A4Cochain:
    """Degree-n cochain M -> N with components[t]: M (x) A^{n-t} -> A^t (x) N."""

    degree: int
    components: list
    source: HopfBimodule
    target: HopfBimodule

    def __post_init__(self):
        n = self.source.n
        if len(self.components) != self.degree + 1:
            raise CochainMismatch(f"degree {self.degree} cochain needs {self.degree + 1} components")
        for t, c in enumerate(self.components):
            exp = (n**t * self.target.dim, self.source.dim * n ** (self.degree - t))
            if c.shape != exp:
                raise CochainMismatch(f"component {t} has shape {c.shape}, expected {exp}")

    @property
    def field(self):
        return self.source.field

    def __eq__(self, other):
        return (isinstance(other, A4Cochain) and self.degree == other.degree
                and all(a == b for a, b in zip(self.components, other.components)))

    def __add__(self, other: "A4Cochain") -> "A4Cochain":
        _same_shape(self, other)
        return A4Cochain(self.degree, [a + b for a, b in zip(self.components, other.components)],
                         self.source, self.target)

    def __sub__(self, other: "A4Cochain") -> "A4Cochain":
        return self + other.scale(-1)

    def scale(self, c) -> "A4Cochain":
        return A4Cochain(self.degree, [m.scale(c) for m in self.components], self.source, self.target)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def violations(self) -> list[str]:
        """Components failing the left-module / right-comodule equations."""
        out = []
        f = self.field
        for t, c in enumerate(self.components):
            src, tgt = _a4_cell_modules(self.source, self.target, t, self.degree - t)
            v = vec(c)
            for name, m in zip(REDUCED_A4_CONSTRAINTS, constraint_matrices(src, tgt, REDUCED_A4_CONSTRAINTS)):
                if f.nonzero_mask(m.apply(v)).any():
                    out.append(f"component {t}: {name}")
        return out

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "components": [{"shape": list(c.shape),
                                "entries": [[int(i), int(j), self.field.to_str(v)] for i, j, v in c.entries()]}
                               for c in self.components]}


def _same_shape(a, b):
    if a.degree != b.degree or len(a.components) != len(b.components):
        raise CochainMismatch("cochains of different degrees")


def _a4_cell_modules(M: HopfBimodule, N: HopfBimodule, p: int, q: int):
    return right_tensor_power(M, q), left_tensor_power(N, p)


def zero_cochain(M: HopfBimodule, N: HopfBimodule, degree: int) -> A4Cochain:
    n = M.n
    comps = [SparseMatrix.zeros(M.field, (n**t * N.dim, M.dim * n ** (degree - t))) for t in range(degree + 1)]
    return A4Cochain(degree, comps, M, N)


def morphism_cochain(g: SparseMatrix, M: HopfBimodule, N: HopfBimodule) -> A4Cochain:
    """A linear map M -> N as a degree-0 cochain (a cocycle iff g is a Hopf bimodule map)."""
    return A4Cochain(0, [g], M, N)


def identity_cochain(M: HopfBimodule) -> A4Cochain:
    return morphism_cochain(SparseMatrix.identity(M.field, M.dim), M, M)


# -- differential ---------------------------------------------------------------------------

_OP_CACHE: dict = {}


def _ambient_op(kind: str, engine: str, M, N, p: int, q: int) -> SparseMatrix:
    key = (kind, engine, id(M), id(N), p, q)
    hit = _OP_CACHE.get(key)
    if hit is not None and hit[0] is M and hit[1] is N:
        return hit[2]
    op = ambient_dh(engine, M, N, p, q) if kind == "h" else ambient_dv(engine, M, N, p, q)
    if len(_OP_CACHE) > 512:
        _OP_CACHE.clear()
    _OP_CACHE[key] = (M, N, op)
    return op


def _total_d(engine: str, M, N, comps: list, degree: int, dims_out) -> list:
    f = M.field
    out = []
    for t in range(degree + 2):
        dW, dV = dims_out(t)
        acc = f.zeros(dW * dV)
        if t <= degree:
            acc = acc + _ambient_op("h", engine, M, N, t, degree - t).apply(vec(comps[t]))
        if t >= 1:
            acc = acc + _ambient_op("v", engine, M, N, t - 1, degree - t + 1).apply(vec(comps[t - 1]))
        out.append(unvec(f, f.normalize(acc) if not f.is_rational else acc, dW, dV))
    return out


def D(u: A4Cochain) -> A4Cochain:
    """Total differential d_h + d_v of the reduced A4 complex."""
    M, N = u.source, u.target
    n = M.n
    comps = _total_d("a4", M, N, u.components, u.degree,
                     lambda t: (n**t * N.dim, M.dim * n ** (u.degree + 1 - t)))
    return A4Cochain(u.degree + 1, comps, M, N)


# -- cup product -----------------------------------------------------------------------------


def _cup_block(h: HopfAlgebra, fs: SparseMatrix, gr: SparseMatrix, s: int, k: int, dL: int) -> SparseMatrix:
    """(1^s (x) g_r) K (f_s (x) 1^k) with K(x (x) l (x) a) = x . Delta^{(s-1)}(a'_1..a'_k) (x) l (x) a''."""
    f, n = h.field, h.dim
    coL = codiagonal_left_coaction(h, [h.comul] * k, [n] * k)  # A^k -> A (x) A^k
    split = kron_ids(f, [n**s * dL, coL]).permute_row_factors([n**s, dL, n, n**k], [0, 2, 1, 3])
    K = kron_ids(f, [diagonal_right_action(h, [h.mul] * s, [n] * s), dL * n**k]) @ split
    return kron_ids(f, [n**s, gr]) @ K @ kron_ids(f, [fs, n**k])


def cup(f: A4Cochain, g: A4Cochain, cross: bool = False) -> A4Cochain:
    """f u g for f: M -> L of degree p and g: L -> N of degree q.

    With ``cross`` the result is multiplied by (-1)^{pq} (the convention under
    which the product matches Yoneda composition on the nose).
    """
    if f.target != g.source:
        raise CochainMismatch("cup: target of f must be the source of g")
    M, L, N = f.source, f.target, g.target
    h = M.algebra
    p, q = f.degree, g.degree
    n = p + q
    comps = []
    for t in range(n + 1):
        acc = SparseMatrix.zeros(M.field, (h.dim**t * N.dim, M.dim * h.dim ** (n - t)))
        for s in range(max(0, t - q), min(p, t) + 1):
            r = t - s
            block = _cup_block(h, f.components[s], g.components[r], s, q - r, L.dim)
            acc = acc + block.scale((-1) ** (s * (q - r)))
        comps.append(acc)
    out = A4Cochain(n, comps, M, N)
    return out.scale((-1) ** (p * q)) if cross else out


def cup_is_derivation_check(f: A4Cochain, g: A4Cochain) -> bool:
    """D(f u g) == Df u g + (-1)^p f u Dg, evaluated exactly."""
    lhs = D(cup(f, g))
    rhs = cup(D(f), g) + cup(f, D(g)).scale((-1) ** f.degree)
    return lhs == rhs


def partial_assoc_check(f: A4Cochain, g: A4Cochain, h0: A4Cochain) -> bool:
    """(f u g) u h0 == f u (g u h0) for a degree-0 third factor."""
    if h0.degree != 0:
        raise CochainMismatch("partial associativity needs a degree-0 third factor")
    return cup(cup(f, g), h0) == cup(f, cup(g, h0))


# -- H_b cochains ------------------------------------------------------------------------------


@dataclass
class HbCochain:
    """Degree-n H_b cochain with components[t]: A^{n-t} -> A^t."""

    algebra: HopfAlgebra
    degree: int
    components: list

    def __post_init__(self):
        n = self.algebra.dim
        if len(self.components) != self.degree + 1:
            raise CochainMismatch(f"degree {self.degree} cochain needs {self.degree + 1} components")
        for t, c in enumerate(self.components):
            if c.shape != (n**t, n ** (self.degree - t)):
                raise CochainMismatch(f"component {t} has shape {c.shape}")

    def __eq__(self, other):
        return (isinstance(other, HbCochain) and self.degree == other.degree
                and all(a == b for a, b in zip(self.components, other.components)))

    def __add__(self, other: "HbCochain") -> "HbCochain":
        _same_shape(self, other)
        return HbCochain(self.algebra, self.degree, [a + b for a, b in zip(self.components, other.components)])

    def scale(self, c) -> "HbCochain":
        return HbCochain(self.algebra, self.degree, [m.scale(c) for m in self.components])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def hb_D(u: HbCochain) -> HbCochain:
    h = u.algebra
    A = _regular_cached(h)
    n = h.dim
    comps = _total_d("hb", A, A, u.components, u.degree, lambda t: (n**t, n ** (u.degree + 1 - t)))
    return HbCochain(h, u.degree + 1, comps)


_REGULAR: dict = {}


def _regular_cached(h: HopfAlgebra) -> HopfBimodule:
    hit = _REGULAR.get(id(h))
    if hit is None or hit[0] is not h:
        hit = (h, regular_bimodule(h))
        _REGULAR[id(h)] = hit
    return hit[1]


def _componentwise_product(h: HopfAlgebra, s: int) -> SparseMatrix:
    """A^s (x) A^s -> A^s, (x_i) (x) (y_i) -> (x_i y_i)."""
    n = h.dim
    if s == 0:
        return SparseMatrix.identity(h.field, 1)
    order = []
    for i in range(s):
        order += [i, s + i]
    inter = SparseMatrix.identity(h.field, n ** (2 * s)).permute_row_factors([n] * (2 * s), order)
    return kron(*([h.mul] * s)) @ inter


def _split_legs(h: HopfAlgebra, k: int) -> SparseMatrix:
    """A^k -> A^k (x) A^k, a_1..a_k -> a'_1..a'_k (x) a''_1..a''_k."""
    n = h.dim
    if k == 0:
        return SparseMatrix.identity(h.field, 1)
    order = [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)]
    return kron(*([h.comul] * k)).permute_row_factors([n] * (2 * k), order)


def _hb_block(h: HopfAlgebra, fs: SparseMatrix, gr: SparseMatrix, s: int, r: int, k1: int, k2: int) -> SparseMatrix:
    P = iterated_comul(h, s - 1) @ mul_k(h, k2)  # A^{k2} -> A^s
    Q = iterated_comul(h, r - 1) @ mul_k(h, k1)  # A^{k1} -> A^r
    first = _componentwise_product(h, s) @ kron(fs, P)
    second = _componentwise_product(h, r) @ kron(Q, gr)
    return kron(first, second) @ _split_legs(h, k1 + k2)


def hb_cup(f: HbCochain, g: HbCochain) -> HbCochain:
    """Cup product written directly on H_b cochains:
    sum (-1)^{s(q-r)} f_s(a'_{1..p-s}) Delta^{(s-1)}(a'_{p-s+1} .. a'_{n-t})
                      (x) Delta^{(r-1)}(a''_1 .. a''_{p-s}) g_r(a''_{p-s+1} ..)."""
    h = f.algebra
    p, q = f.degree, g.degree
    n = p + q
    comps = []
    for t in range(n + 1):
        acc = SparseMatrix.zeros(h.field, (h.dim**t, h.dim ** (n - t)))
        for s in range(max(0, t - q), min(p, t) + 1):
            r = t - s
            block = _hb_block(h, f.components[s], g.components[r], s, r, p - s, q - r)
            acc = acc + block.scale((-1) ** (s * (q - r)))
        comps.append(acc)
    return HbCochain(h, n, comps)


def iota(u: HbCochain) -> A4Cochain:
    """H_b cochain -> A4 cochain for M = N = A: beta -> (m (x) a -> m . [beta(a') (x) a'' product])."""
    h = u.algebra
    f, n = h.field, h.dim
    A = _regular_cached(h)
    comps = []
    for t, beta in enumerate(u.components):
        k = u.degree - t
        coR = codiagonal_right_coaction(h, [h.comul] * k, [n] * k)  # A^k -> A^k (x) A
        Ld = diagonal_left_action(h, [h.mul] * (t + 1), [n] * (t + 1))
        comps.append(Ld @ kron(h.I(), kron(beta, h.I()) @ coR))
    return A4Cochain(u.degree, comps, A, A)


def iota_inverse(u: A4Cochain) -> HbCochain:
    h = u.source.algebra
    n = h.dim
    comps = []
    for t, alpha in enumerate(u.components):
        k = u.degree - t
        comps.append(kron_ids(h.field, [n**t, h.counit]) @ alpha @ kron_ids(h.field, [h.unit, n**k]))
    return HbCochain(h, u.degree, comps)


# -- cochains from the double complex -------------------------------------------------------------


class CochainSpace:
    """Cells of the reduced A4 (or H_b) complex up to total degree ``top`` with
    conversions between cochains and total-complex coordinates."""

    def __init__(self, M: HopfBimodule, N: HopfBimodule, top: int, engine: str = "a4"):
        if engine not in ("a4", "hb"):
            raise ValueError("cochain spaces exist for the a4 and hb engines")
        self.M, self.N, self.engine, self.top = M, N, engine, top
        self.double, _ = double_complex(engine, M, N, top)
        self.total = total_complex(self.double, top - 1)

    @property
    def field(self):
        return self.M.field

    def dim(self, degree: int) -> int:
        return self.total.dims[degree]

    def _wrap(self, degree: int, comps: list):
        if self.engine == "hb":
            return HbCochain(self.M.algebra, degree, comps)
        return A4Cochain(degree, comps, self.M, self.N)

    def from_coords(self, degree: int, coords):
        coords = np.asarray(coords)
        offs = total_offsets(self.double, degree)
        comps = []
        for t in range(degree + 1):
            cell = self.double.cells[(t, degree - t)]
            o = offs[(t, degree - t)]
            part = coords[o:o + cell.dim]
            comps.append(unvec(self.field, cell.element(part), cell.dW, cell.dV))
        return self._wrap(degree, comps)

    def to_coords(self, u) -> np.ndarray:
        parts = []
        for t, c in enumerate(u.components):
            cell = self.double.cells[(t, u.degree - t)]
            parts.append(cell.coordinates(vec(c)))
        return np.concatenate(parts) if parts else self.field.zeros(0)

    def random(self, degree: int, rng: np.random.Generator):
        return self.from_coords(degree, self.field.random_array(rng, self.dim(degree)))

    def cocycle_basis(self, degree: int) -> list:
        K = kernel(self.total.d[degree])
        return [self.from_coords(degree, K.basis.column(j)) for j in range(K.dim)]

    def coboundary_preimage(self, u):
        """Some v with D v = u, or None; degree-0 cochains are never coboundaries."""
        if u.degree == 0:
            return None
        x = solve(self.total.d[u.degree - 1], self.to_coords(u))
        return None if x is None else self.from_coords(u.degree - 1, x)

    def is_coboundary(self, u) -> bool:
        if u.degree == 0:
            return u.is_zero()
        return solve(self.total.d[u.degree - 1], self.to_coords(u)) is not None

    def cohomology_representatives(self, degree: int) -> list:
        """Cocycles whose classes form a basis of H^degree."""
        reps = []
        Z = self.cocycle_basis(degree)
        f = self.field
        span = self.total.d[degree - 1] if degree >= 1 else SparseMatrix.zeros(f, (self.dim(degree), 0))
        for z in Z:
            col = SparseMatrix.column_vector(f, self.to_coords(z))
            cand = hstack([span, col])
            if rank(cand) > rank(span):
                reps.append(z)
                span = cand
        return reps
