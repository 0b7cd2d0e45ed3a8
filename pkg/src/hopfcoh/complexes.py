"""Hom spaces cut out by linear constraints, cochain complexes and double complexes.

A linear map alpha: V -> W is stored as the row-major vector vec(alpha) with
alpha[w, v] at position w * dim(V) + v.  Every operation used to build
differentials or constraints has the shape

    alpha  ->  X (1_L (x) alpha (x) 1_R) Y

and ``sandwich`` returns its matrix on vec(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .bimodule import HopfBimodule
from .field import FieldSpec
from .guard import check_dim
from .linalg import Kernel, kernel, rank
from .sparse import SparseMatrix, block, _canonical

MODULE_CONSTRAINTS = ("left-module", "right-module", "left-comodule", "right-comodule")


def _entries_or_identity(field, m: SparseMatrix | None, n: int):
    if m is None:
        idx = np.arange(n, dtype=np.int64)
        one = SparseMatrix.identity(field, n).val
        return idx, idx, one
    return m.row, m.col, m.val


def sandwich(field: FieldSpec, X: SparseMatrix | None, Y: SparseMatrix | None, dW: int, dV: int,
             L: int = 1, R: int = 1) -> SparseMatrix:
    """Matrix of alpha -> X (1_L (x) alpha (x) 1_R) Y on vec(alpha), alpha: V -> W.

    ``X`` is r x (L dW R) and ``Y`` is (L dV R) x s; None stands for an identity.
    The result is (r s) x (dW dV).
    """
    r = L * dW * R if X is None else X.shape[0]
    s = L * dV * R if Y is None else Y.shape[1]
    if X is not None and X.shape[1] != L * dW * R:
        raise ValueError(f"sandwich: X has {X.shape[1]} columns, expected {L}*{dW}*{R}")
    if Y is not None and Y.shape[0] != L * dV * R:
        raise ValueError(f"sandwich: Y has {Y.shape[0]} rows, expected {L}*{dV}*{R}")
    shape = (r * s, dW * dV)
    xr, xc, xv = _entries_or_identity(field, X, L * dW * R)
    # identity Y is handled with its transpose layout (rows = inputs)
    yr, yc, yv = _entries_or_identity(field, Y, L * dV * R)
    xl, xw, xk = xc // (dW * R), (xc // R) % dW, xc % R
    yl, yvv, yk = yr // (dV * R), (yr // R) % dV, yr % R
    xkey = xl * R + xk
    ykey = yl * R + yk
    order = np.argsort(ykey, kind="stable")
    ykey_s = ykey[order]
    lo = np.searchsorted(ykey_s, xkey, "left")
    cnt = np.searchsorted(ykey_s, xkey, "right") - lo
    total = int(cnt.sum())
    if total == 0:
        return SparseMatrix.zeros(field, shape)
    ia = np.repeat(np.arange(xkey.size), cnt)
    offs = order[np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(cnt) - cnt, cnt) + np.repeat(lo, cnt)]
    rows = xr[ia] * s + yc[offs]
    cols = xw[ia] * dV + yvv[offs]
    vals = field.mul(xv[ia], yv[offs])
    return SparseMatrix(field, shape, *_canonical(field, shape, rows, cols, vals), canonical=True)


def unvec(field: FieldSpec, vec, dW: int, dV: int) -> SparseMatrix:
    """The dW x dV matrix with row-major vectorization ``vec``."""
    vec = np.asarray(vec)
    nz = np.flatnonzero(field.nonzero_mask(vec))
    return SparseMatrix(field, (dW, dV), nz // dV, nz % dV, vec[nz], canonical=True)


def vec(m: SparseMatrix) -> np.ndarray:
    out = m.field.zeros(m.shape[0] * m.shape[1])
    out[m.row * m.shape[1] + m.col] = m.val
    return out


def constraint_matrices(src: HopfBimodule, tgt: HopfBimodule, constraints: Sequence[str]) -> list[SparseMatrix]:
    """Linear conditions on vec(alpha), alpha: src -> tgt, for the requested structures."""
    f = src.field
    n = src.n
    dV, dW = src.dim, tgt.dim
    out = []
    for c in constraints:
        if c == "left-module":
            m = sandwich(f, None, src.actL, dW, dV) - sandwich(f, tgt.actL, None, dW, dV, L=n)
        elif c == "right-module":
            m = sandwich(f, None, src.actR, dW, dV) - sandwich(f, tgt.actR, None, dW, dV, R=n)
        elif c == "left-comodule":
            m = sandwich(f, tgt.coactL, None, dW, dV) - sandwich(f, None, src.coactL, dW, dV, L=n)
        elif c == "right-comodule":
            m = sandwich(f, tgt.coactR, None, dW, dV) - sandwich(f, None, src.coactR, dW, dV, R=n)
        else:
            raise ValueError(f"unknown constraint {c!r}")
        out.append(m)
    return out


@dataclass
class ConstrainedHomSpace:
    """Subspace of Hom_k(V, W) with basis columns ``basis`` (ambient dV dW x dim).

    Coordinates of an element are read off at the rows ``free`` (basis[free] = I).
    """

    dV: int
    dW: int
    constraints: tuple
    kernel: Kernel
    label: str = ""

    @property
    def dim(self) -> int:
        return self.kernel.dim

    @property
    def ambient(self) -> int:
        return self.dV * self.dW

    @property
    def basis(self) -> SparseMatrix:
        return self.kernel.basis

    @property
    def free(self) -> np.ndarray:
        return self.kernel.free

    def coordinates(self, vec) -> np.ndarray:
        return np.asarray(vec)[self.free]

    def element(self, coords) -> np.ndarray:
        return self.basis.apply(coords)

    def as_map(self, coords) -> SparseMatrix:
        return unvec(self.basis.field, self.element(coords), self.dW, self.dV)


def full_hom_space(field: FieldSpec, dV: int, dW: int, label: str = "") -> ConstrainedHomSpace:
    n = dV * dW
    check_dim(n, label or "Hom space")
    return ConstrainedHomSpace(dV, dW, (), Kernel(SparseMatrix.identity(field, n), np.arange(n, dtype=np.int64)), label)


def zero_hom_space(field: FieldSpec, dV: int, dW: int, label: str = "") -> ConstrainedHomSpace:
    return ConstrainedHomSpace(dV, dW, ("zero",), Kernel(SparseMatrix.zeros(field, (dV * dW, 0)), np.zeros(0, dtype=np.int64)), label)


def constrained_hom_basis(src: HopfBimodule, tgt: HopfBimodule, constraints: Sequence[str] = MODULE_CONSTRAINTS,
                          label: str = "") -> ConstrainedHomSpace:
    """Basis of the maps src -> tgt compatible with the listed structures."""
    dV, dW = src.dim, tgt.dim
    check_dim(dV * dW, label or f"Hom({src.name}, {tgt.name})")
    constraints = tuple(constraints)
    if not constraints:
        return full_hom_space(src.field, dV, dW, label)
    order = constraints
    if tgt.dim > src.dim:
        # comodule conditions are the cheaper first cut when the target is the bigger side
        order = tuple(sorted(constraints, key=lambda c: "comodule" not in c))
    # impose one structure at a time; each later system lives on the previous kernel,
    # which keeps elimination fill-in below that of the stacked system
    K = None
    for m in constraint_matrices(src, tgt, order):
        if K is None:
            K = kernel(m)
            continue
        step = kernel(m @ K.basis)
        basis = K.basis @ step.basis
        K = Kernel(basis, K.free[step.free])
    return ConstrainedHomSpace(dV, dW, constraints, K, label)


def restrict_operator(op: SparseMatrix, src: ConstrainedHomSpace, tgt: ConstrainedHomSpace,
                      check: bool = False) -> SparseMatrix:
    """Matrix in cell coordinates of an ambient operator mapping src into tgt."""
    image = op @ src.basis
    coords = image.select_rows(tgt.free)
    if check and tgt.constraints:
        if tgt.basis @ coords != image:
            raise ArithmeticError(f"operator does not land in {tgt.label or 'target space'}")
    return coords


# -- cochain complexes ----------------------------------------------------------------


@dataclass
class CochainComplex:
    """C^0 -> C^1 -> ... with ``d[n]``: C^n -> C^{n+1} (dims[n+1] x dims[n])."""

    field: FieldSpec
    dims: list
    d: list

    def __post_init__(self):
        for k, m in enumerate(self.d):
            exp = (self.dims[k + 1], self.dims[k])
            if m.shape != exp:
                raise ValueError(f"d[{k}] has shape {m.shape}, expected {exp}")

    def check_d_squared(self) -> bool:
        return all((self.d[k + 1] @ self.d[k]).is_zero() for k in range(len(self.d) - 1))

    def ranks(self) -> list[int]:
        return [rank(m) for m in self.d]


def cohomology_dims(C: CochainComplex, n_max: int | None = None, ranks: Sequence[int] | None = None) -> list[int]:
    """dim H^n = dim C^n - rank d^n - rank d^{n-1} for n = 0..n_max (needs d^0..d^{n_max})."""
    if n_max is None:
        n_max = len(C.d) - 1
    if n_max > len(C.d) - 1:
        raise ValueError(f"need d^0..d^{n_max}, complex only has {len(C.d)} differentials")
    rk = list(ranks) if ranks is not None else [rank(C.d[k]) for k in range(n_max + 1)]
    return [C.dims[k] - rk[k] - (rk[k - 1] if k else 0) for k in range(n_max + 1)]


@dataclass
class DoubleComplex:
    """Cells C^{pq} with horizontal d_h: (p, q) -> (p, q+1) and vertical d_v: (p, q) -> (p+1, q).

    Differentials are stored in cell coordinates and must satisfy d_h^2 = 0,
    d_v^2 = 0 and d_h d_v + d_v d_h = 0.  Cells are defined for p + q <= top.
    """

    field: FieldSpec
    top: int
    cells: dict
    dh: dict = dc_field(default_factory=dict)
    dv: dict = dc_field(default_factory=dict)

    def dim(self, p: int, q: int) -> int:
        return self.cells[(p, q)].dim if (p, q) in self.cells else 0

    def cell_dims(self) -> dict:
        return {k: v.dim for k, v in self.cells.items()}

    def check_relations(self) -> bool:
        f = self.field
        for (p, q) in self.cells:
            if p + q + 2 > self.top:
                continue
            hh = self.dh[(p, q + 1)] @ self.dh[(p, q)]
            vv = self.dv[(p + 1, q)] @ self.dv[(p, q)]
            hv = self.dh[(p + 1, q)] @ self.dv[(p, q)] + self.dv[(p, q + 1)] @ self.dh[(p, q)]
            if not (hh.is_zero() and vv.is_zero() and hv.is_zero()):
                return False
        return True


def total_complex(dc: DoubleComplex, n_max: int | None = None) -> CochainComplex:
    """Tot^n = sum_{p+q=n} C^{pq} (ordered by p), D = d_h + d_v; builds d^0..d^{n_max}."""
    if n_max is None:
        n_max = dc.top - 1
    if n_max + 1 > dc.top:
        raise ValueError(f"double complex only reaches total degree {dc.top}")
    f = dc.field
    dims = []
    for n in range(n_max + 2):
        dims.append(sum(dc.dim(p, n - p) for p in range(n + 1)))
    ds = []
    for n in range(n_max + 1):
        src = [dc.dim(p, n - p) for p in range(n + 1)]
        tgt = [dc.dim(p, n + 1 - p) for p in range(n + 2)]
        blocks = {}
        for p in range(n + 1):
            q = n - p
            if (p, q) in dc.dh and dc.dim(p, q) and dc.dim(p, q + 1):
                blocks[(p, p)] = dc.dh[(p, q)]
            if (p, q) in dc.dv and dc.dim(p, q) and dc.dim(p + 1, q):
                blocks[(p + 1, p)] = dc.dv[(p, q)]
        ds.append(block(f, tgt, src, blocks))
    return CochainComplex(f, dims, ds)


def total_offsets(dc: DoubleComplex, n: int) -> dict:
    """Position of each cell (p, n-p) inside Tot^n."""
    out, off = {}, 0
    for p in range(n + 1):
        out[(p, n - p)] = off
        off += dc.dim(p, n - p)
    return out


def build_double_complex(field: FieldSpec, top: int, make_cell: Callable, make_dh: Callable, make_dv: Callable,
                         jobs: int = 1) -> DoubleComplex:
    """Assemble cells for p + q <= top and differentials out of cells with p + q < top."""
    keys = [(p, t - p) for t in range(top + 1) for p in range(t + 1)]
    cells = {k: make_cell(*k) for k in keys}
    dc = DoubleComplex(field, top, cells)
    for (p, q) in keys:
        if p + q < top:
            dc.dh[(p, q)] = make_dh(p, q, cells[(p, q)], cells[(p, q + 1)])
            dc.dv[(p, q)] = make_dv(p, q, cells[(p, q)], cells[(p + 1, q)])
    return dc
