"""The algebra X = (A*op (x) A*) (x) (A (x) Aop) whose modules are the Hopf bimodules over A.

Basis element (l, k, a, b) stands for e_l* (x) e_k* (x) e_a (x) e_b and has flat
index ((l n + k) n + a) n + b.  The unit is eps (x) eps (x) 1 (x) 1.  With
Sweedler legs l_(1) (x) l_(2) (x) l_(3) of the iterated coproduct in A*,

    (l (x) k (x) a (x) b)(l' (x) k' (x) a' (x) b')
        = sum c . (l'_(2) l) (x) (k k'_(2)) (x) (a^(2) a') (x) (b' b^(2)),
    c = l'_(1)(S a^(1)) k'_(1)(S^-1 a^(3)) l'_(3)(S^-1 b^(1)) k'_(3)(S b^(3)).

A Hopf bimodule M becomes an X-module through

    (l (x) k (x) a (x) b) . m = sum l(a^(1) m_(-1) b^(1)) k(a^(3) m_(1) b^(3)) a^(2) m_(0) b^(2).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .bimodule import HopfBimodule
from .field import FieldSpec
from .guard import check_dim, get_limit
from .hopf import HopfAlgebra, iterated_comul, mul_k
from .resolutions import double_coaction, middle_action
from .sparse import SparseMatrix, kron, kron_apply, kron_ids


def _contract(field: FieldSpec, spec: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.einsum(spec, a, b)
    return field.normalize(out)


@dataclass(eq=False)
class XAlgebra:
    base: HopfAlgebra
    straighten: np.ndarray  # T[a, b, l', k', p, q, y, v]
    _mult: SparseMatrix | None = None
    _cache: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def dim(self) -> int:
        return self.base.dim ** 4

    def index(self, l: int, k: int, a: int, b: int) -> int:
        n = self.n
        return ((l * n + k) * n + a) * n + b

    def unravel(self, i: int) -> tuple:
        n = self.n
        return (i // n**3, (i // n**2) % n, (i // n) % n, i % n)

    def unit_vector(self) -> np.ndarray:
        h = self.base
        e = h.counit.to_dense().reshape(-1)
        one = h.unit.to_dense().reshape(-1)
        return _outer(self.field, [e, e, one, one])

    def _tables(self):
        if "tables" not in self._cache:
            h = self.base
            n = h.dim
            Cm = h.comul.to_dense().reshape(n, n, n)  # (e_i* e_j*)(e_c) at [i, j, c]
            Mm = h.mul_tensor()  # e_i e_j at [i, j, c]
            self._cache["tables"] = (Cm, Mm)
        return self._cache["tables"]

    def mul_basis(self, i: int, j: int) -> np.ndarray:
        """Product of basis elements i and j as a dense vector (memoized)."""
        key = (i, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        f = self.field
        l, k, a, b = self.unravel(i)
        l2, k2, a2, b2 = self.unravel(j)
        Cm, Mm = self._tables()
        t = self.straighten[a, b, l2, k2]  # [p, q, y, v]
        w = _contract(f, "pqyv,yA->pqvA", t, Mm[:, a2, :])
        w = _contract(f, "pqvA,vB->pqAB", w, Mm[b2, :, :])
        w = _contract(f, "pqAB,qK->pKAB", w, Cm[k, :, :])
        w = _contract(f, "pKAB,pL->LKAB", w, Cm[:, l, :])
        out = w.reshape(-1)
        self._cache[key] = out
        return out

    def mul(self, u, v) -> np.ndarray:
        f = self.field
        u = np.asarray(u)
        v = np.asarray(v)
        if self._mult is not None:
            x = SparseMatrix.column_vector(f, u).kron(SparseMatrix.column_vector(f, v))
            return (self._mult @ x).to_dense().reshape(-1)
        out = f.zeros(self.dim)
        iu = np.flatnonzero(f.nonzero_mask(u))
        iv = np.flatnonzero(f.nonzero_mask(v))
        for i in iu.tolist():
            for j in iv.tolist():
                out = out + f.mul(self.mul_basis(i, j), f.mul(u[i], v[j]))
        return f.normalize(out)

    def mult_matrix(self) -> SparseMatrix:
        """Multiplication X (x) X -> X as an N x N^2 sparse matrix."""
        if self._mult is None:
            N = self.dim
            check_dim(N * N, "multiplication table of X")
            self._mult = _materialize(self)
        return self._mult


def _outer(field: FieldSpec, vecs) -> np.ndarray:
    out = vecs[0]
    for v in vecs[1:]:
        out = field.normalize(np.multiply.outer(out, v).reshape(-1))
    return out


def _straightening(h: HopfAlgebra) -> np.ndarray:
    f = h.field
    n = h.dim
    D2 = iterated_comul(h, 2).to_dense().reshape(n, n, n, n)  # [x1, x2, x3, a]
    S = h.antipode.to_dense()  # S[j, i]: e_j in S(e_i)
    Si = h.antipode_inv.to_dense()
    # Pa[a, x, y, z]: legs (S a^(1), a^(2), S^-1 a^(3))
    Pa = _contract(f, "rysa,xr->axys", D2, S)
    Pa = _contract(f, "axys,zs->axyz", Pa, Si)
    # Pb[b, u, v, w]: legs (S^-1 b^(1), b^(2), S b^(3))
    Pb = _contract(f, "rvsb,ur->buvs", D2, Si)
    Pb = _contract(f, "buvs,ws->buvw", Pb, S)
    M3 = mul_k(h, 3).to_dense().reshape(n, n, n, n)  # [l, l1, l2, l3] = e_l*(e_l1 e_l2 e_l3)
    U = _contract(f, "axyz,lxpu->ayzlpu", Pa, M3)
    V = _contract(f, "ayzlpu,buvw->ayzlpbvw", U, Pb)
    T = _contract(f, "ayzlpbvw,kzqw->ablkpqyv", V, M3)
    return T


def _materialize(x: XAlgebra) -> SparseMatrix:
    f = x.field
    n = x.n
    N = x.dim
    if f.is_rational or n > 4:
        # entry-by-entry through the memoized basis products
        cols = []
        rows = []
        vals = []
        for i in range(N):
            for j in range(N):
                w = x.mul_basis(i, j)
                nz = np.flatnonzero(f.nonzero_mask(w))
                rows.append(nz)
                cols.append(np.full(nz.size, i * N + j, dtype=np.int64))
                vals.append(w[nz])
        return SparseMatrix(f, (N, N * N), np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))
    Cm, Mm = x._tables()
    T = x.straighten
    W = _contract(f, "ablkpqyv,yeA->ablkpqevA", T, Mm)
    W = _contract(f, "ablkpqevA,gvB->ablkpqeAgB", W, Mm)
    W = _contract(f, "ablkpqeAgB,cqK->ablkpeAgBcK", W, Cm)
    W = _contract(f, "ablkpeAgBcK,pdL->ablkeAgBcKdL", W, Cm)
    # axes: a b l' k' a' A b' B k K l L  ->  (l k a b) (l' k' a' b') (L K A B)
    W = W.transpose(10, 8, 0, 1, 2, 3, 4, 6, 11, 9, 5, 7).reshape(N * N, N)
    return SparseMatrix.from_dense(f, W.T)


def build_x(h: HopfAlgebra) -> XAlgebra:
    check_dim(h.dim**4, "X algebra")
    x = XAlgebra(h, _straightening(h))
    if (h.dim**4) ** 2 <= min(get_limit(), 1 << 17) and not h.field.is_rational:
        x._mult = _materialize(x)
    return x


@lru_cache(maxsize=8)
def _cached_x(h: HopfAlgebra) -> XAlgebra:
    return build_x(h)


def x_of(h: HopfAlgebra) -> XAlgebra:
    return _cached_x(h)


def verify_x(x: XAlgebra, samples: int = 1000, seed: int = 0) -> list[str]:
    """Unit and associativity of X; exhaustive when the product table is materialized,
    otherwise on ``samples`` seeded basis triples."""
    f = x.field
    N = x.dim
    out = []
    if x._mult is not None:
        mu = x._mult
        I = SparseMatrix.identity(f, N)
        if mu @ mu.kron(I) != mu @ I.kron(mu):
            out.append("associativity")
        u = SparseMatrix.column_vector(f, x.unit_vector())
        if mu @ u.kron(I) != I or mu @ I.kron(u) != I:
            out.append("unit")
        return out

    def basis(i: int) -> np.ndarray:
        e = f.zeros(N)
        e[i] = 1
        return e

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        i, j, k = (int(t) for t in rng.integers(0, N, size=3))
        if not np.array_equal(x.mul(x.mul_basis(i, j), basis(k)), x.mul(basis(i), x.mul_basis(j, k))):
            out.append(f"associativity at basis triple ({i}, {j}, {k})")
            break
    one = x.unit_vector()
    for i in range(N):
        e = basis(i)
        if not (np.array_equal(x.mul(one, e), e) and np.array_equal(x.mul(e, one), e)):
            out.append(f"unit at basis element {i}")
            break
    return out


# -- X-modules ---------------------------------------------------------------------


@dataclass(eq=False)
class XModule:
    x: XAlgebra
    dim: int
    action: SparseMatrix  # dim x (N dim), column x * dim + v

    def __eq__(self, other):
        return isinstance(other, XModule) and self.dim == other.dim and self.action == other.action

    __hash__ = object.__hash__

    def act(self, xvec, v) -> np.ndarray:
        f = self.x.field
        col = SparseMatrix.column_vector(f, xvec).kron(SparseMatrix.column_vector(f, v))
        return (self.action @ col).to_dense().reshape(-1)


def verify_xmodule(V: XModule, samples: int = 200, seed: int = 0) -> list[str]:
    """Unit and associativity of the action; exhaustive when X's product table is materialized."""
    x = V.x
    f = x.field
    m = V.dim
    N = x.dim
    out = []
    unit = SparseMatrix.column_vector(f, x.unit_vector())
    if V.action @ kron_ids(f, [unit, m]) != SparseMatrix.identity(f, m):
        out.append("unit")
    if x._mult is not None:
        lhs = V.action @ kron_ids(f, [N, V.action])
        rhs = V.action @ kron_ids(f, [x._mult, m])
        if lhs != rhs:
            out.append("associativity")
        return out
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        i, j = (int(t) for t in rng.integers(0, N, size=2))
        v = int(rng.integers(0, m))
        ev = np.zeros(m, dtype=np.int64)
        ev[v] = 1
        ev = f.array(ev)
        ei = f.array(np.eye(N, dtype=np.int64)[i])
        ej = f.array(np.eye(N, dtype=np.int64)[j])
        if not np.array_equal(V.act(ei, V.act(ej, ev)), V.act(x.mul_basis(i, j), ev)):
            out.append("associativity")
            break
    return out


def three_leg_map(M: HopfBimodule) -> SparseMatrix:
    """A (x) M (x) A -> A (x) M (x) A,
    a (x) m (x) b -> a^(1) m_(-1) b^(1) (x) a^(2) m_(0) b^(2) (x) a^(3) m_(1) b^(3)."""
    h = M.algebra
    f = h.field
    n, m = h.dim, M.dim
    D2 = iterated_comul(h, 2)
    legs = kron(D2, double_coaction(M), D2)
    legs = legs.permute_row_factors([n, n, n, n, m, n, n, n, n], [0, 3, 6, 1, 4, 7, 2, 5, 8])
    m3 = mul_k(h, 3)
    return kron_apply(f, [m3, middle_action(M), m3], legs)


def bimodule_to_xmodule(M: HopfBimodule, x: XAlgebra | None = None) -> XModule:
    h = M.algebra
    x = x or x_of(h)
    f = h.field
    n, m = h.dim, M.dim
    G = three_leg_map(M)  # rows (l, m', k), cols (a, mm, b)
    l, mp, k = G.row // (m * n), (G.row // n) % m, G.row % n
    a, mm, b = G.col // (m * n), (G.col // n) % m, G.col % n
    xi = ((l * n + k) * n + a) * n + b
    action = SparseMatrix(f, (m, n**4 * m), mp, xi * m + mm, G.val)
    return XModule(x, m, action)


def xmodule_to_bimodule(V: XModule, name: str = "") -> HopfBimodule:
    x = V.x
    h = x.base
    f = h.field
    n, m = h.dim, V.dim
    eps = h.counit.T  # n x 1 column: coordinates of epsilon in the dual basis
    one = h.unit
    In = SparseMatrix.identity(f, n)
    # (eps (x) eps) (x) (a (x) 1) acting
    Ea = kron(eps, eps, In, one)
    Eb = kron(eps, eps, one, In)
    actL = V.action @ kron_ids(f, [Ea, m])
    actR_swapped = V.action @ kron_ids(f, [Eb, m])  # columns (b, v)
    actR = actR_swapped.permute_col_factors([n, m], [1, 0])
    Yl = kron(In, eps, one, one)
    Yr = kron(eps, In, one, one)
    Gl = V.action @ kron_ids(f, [Yl, m])  # [v', (i, v)]
    Gr = V.action @ kron_ids(f, [Yr, m])
    i, v = Gl.col // m, Gl.col % m
    coactL = SparseMatrix(f, (n * m, m), i * m + Gl.row, v, Gl.val)
    i, v = Gr.col // m, Gr.col % m
    coactR = SparseMatrix(f, (m * n, m), Gr.row * n + i, v, Gr.val)
    return HopfBimodule(h, m, actL, actR, coactL, coactR, name)


def x_as_bimodule(h: HopfAlgebra) -> HopfBimodule:
    """X acting on itself by left multiplication, viewed as a Hopf bimodule (dim n^4)."""
    x = x_of(h)
    V = XModule(x, x.dim, x.mult_matrix())
    return xmodule_to_bimodule(V, "X")
