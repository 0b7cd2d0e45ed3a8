"""Exact sparse elimination: rank, kernels, linear solves.

Rows are held as ``{column: value}`` dicts.  Rows are inserted sparsest first
and each is reduced against the current echelon pivots in increasing column
order; the first surviving column becomes its pivot.  A back-substitution pass
turns the echelon form into reduced echelon form when kernels or solutions are
needed.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FieldSpec
from .sparse import SparseMatrix, vstack


def _row_dicts(m: SparseMatrix, transpose: bool = False) -> list[dict]:
    if transpose:
        keys, others = m.col, m.row
        n = m.shape[1]
        order = np.argsort(keys, kind="stable")
        keys, others, vals = keys[order], others[order], m.val[order]
    else:
        keys, others, vals = m.row, m.col, m.val
        n = m.shape[0]
    bounds = np.searchsorted(keys, np.arange(n + 1))
    others = others.tolist()
    vals = vals.tolist()
    out = []
    b = bounds.tolist()
    for i in range(n):
        lo, hi = b[i], b[i + 1]
        if lo == hi:
            continue
        out.append(dict(zip(others[lo:hi], vals[lo:hi])))
    return out


def _insert_modp(rows, p: int, pivots: dict) -> None:
    push, pop = heapq.heappush, heapq.heappop
    for r in rows:
        heap = list(r)
        heapq.heapify(heap)
        while heap:
            c = pop(heap)
            a = r.get(c)
            if a is None:
                continue
            prow = pivots.get(c)
            if prow is None:
                if a != 1:
                    inv = pow(a, -1, p)
                    r = {k: v * inv % p for k, v in r.items()}
                pivots[c] = r
                break
            for k, v in prow.items():
                x = r.get(k)
                if x is None:
                    r[k] = (-a * v) % p
                    push(heap, k)
                else:
                    x = (x - a * v) % p
                    if x:
                        r[k] = x
                    else:
                        del r[k]


def _insert_rational(rows, pivots: dict) -> None:
    push, pop = heapq.heappush, heapq.heappop
    for r in rows:
        heap = list(r)
        heapq.heapify(heap)
        while heap:
            c = pop(heap)
            a = r.get(c)
            if a is None:
                continue
            prow = pivots.get(c)
            if prow is None:
                if a != 1:
                    r = {k: v / a for k, v in r.items()}
                pivots[c] = r
                break
            for k, v in prow.items():
                x = r.get(k)
                if x is None:
                    r[k] = -a * v
                    push(heap, k)
                else:
                    x = x - a * v
                    if x:
                        r[k] = x
                    else:
                        del r[k]


def _echelon(field: FieldSpec, rows: list[dict]) -> dict:
    rows = sorted(rows, key=len)
    pivots: dict = {}
    if field.is_rational:
        _insert_rational(rows, pivots)
    else:
        _insert_modp(rows, field.p, pivots)
    return pivots


def _back_substitute(field: FieldSpec, pivots: dict) -> None:
    p = field.p
    for c in sorted(pivots, reverse=True):
        r = pivots[c]
        hits = [k for k in r if k != c and k in pivots]
        for k in hits:
            a = r[k]
            for kk, v in pivots[k].items():
                x = r.get(kk)
                if field.is_rational:
                    x = -a * v if x is None else x - a * v
                else:
                    x = (-a * v) % p if x is None else (x - a * v) % p
                if x:
                    r[kk] = x
                else:
                    r.pop(kk, None)


def rank(m: SparseMatrix) -> int:
    if m.nnz == 0:
        return 0
    transpose = m.shape[0] > m.shape[1]
    return len(_echelon(m.field, _row_dicts(m, transpose=transpose)))


@dataclass(frozen=True)
class Kernel:
    """Kernel basis as matrix columns; ``free`` lists the coordinate rows (K[free] = I)."""

    basis: SparseMatrix
    free: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coordinates(self, vec) -> np.ndarray:
        return np.asarray(vec)[self.free]


def kernel(m: SparseMatrix) -> Kernel:
    f = m.field
    n = m.shape[1]
    pivots = _echelon(f, _row_dicts(m))
    _back_substitute(f, pivots)
    is_pivot = np.zeros(n, dtype=bool)
    if pivots:
        is_pivot[np.fromiter(pivots.keys(), dtype=np.int64, count=len(pivots))] = True
    free = np.flatnonzero(~is_pivot).astype(np.int64)
    pos = np.full(n, -1, dtype=np.int64)
    pos[free] = np.arange(free.size)
    rows, cols, vals = [free], [np.arange(free.size, dtype=np.int64)], [np.ones(free.size, dtype=np.int64)]
    pr, pcol, pv = [], [], []
    for c, r in pivots.items():
        for k, v in r.items():
            if k != c:
                pr.append(c)
                pcol.append(k)
                pv.append(-v)
    if pr:
        rows.append(np.asarray(pr, dtype=np.int64))
        cols.append(pos[np.asarray(pcol, dtype=np.int64)])
        vals.append(np.asarray(pv, dtype=object) if f.is_rational else np.asarray(pv, dtype=np.int64))
    if f.is_rational:
        vals = [np.asarray(v, dtype=object) for v in vals]
    K = SparseMatrix(f, (n, free.size), np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))
    return Kernel(K, free)


def kernel_basis(m: SparseMatrix) -> SparseMatrix:
    """Columns of the returned matrix form a basis of ker(m)."""
    return kernel(m).basis


def stacked_kernel(field: FieldSpec, ncols: int, mats: Sequence[SparseMatrix]) -> Kernel:
    """Common kernel of several matrices; no matrices means the whole space."""
    if not mats:
        return kernel(SparseMatrix.zeros(field, (0, ncols)))
    for m in mats:
        if m.shape[1] != ncols:
            raise ValueError("stacked_kernel: column mismatch")
    return kernel(vstack(list(mats)))


def solve(m: SparseMatrix, b) -> np.ndarray | None:
    """One solution x of m x = b (free variables zero), or None if inconsistent."""
    f = m.field
    n = m.shape[1]
    b = np.asarray(b, dtype=f.dtype).reshape(-1)
    if b.size != m.shape[0]:
        raise ValueError("solve: right-hand side length mismatch")
    rows = [dict() for _ in range(m.shape[0])]
    for r, c, v in m.entries():
        rows[r][c] = v
    for i, v in enumerate(b.tolist()):
        if v != 0:
            rows[i][n] = v
    pivots = _echelon(f, [r for r in rows if r])
    if n in pivots:
        return None
    _back_substitute(f, pivots)
    x = f.zeros(n)
    for c, r in pivots.items():
        x[c] = r.get(n, 0)
    return f.normalize(x) if not f.is_rational else x


def in_span(basis: SparseMatrix, vecs: SparseMatrix) -> bool:
    """True when every column of ``vecs`` lies in the column span of ``basis``."""
    from .sparse import hstack

    return rank(hstack([basis, vecs])) == rank(basis)


def inverse(m: SparseMatrix) -> SparseMatrix:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    f = m.field
    from .sparse import hstack

    aug = hstack([m, SparseMatrix.identity(f, n)])
    pivots = _echelon(f, _row_dicts(aug))
    if any(c >= n for c in pivots) or len(pivots) < n:
        raise ValueError("matrix is singular")
    _back_substitute(f, pivots)
    r, c, v = [], [], []
    for pc, row in pivots.items():
        for k, val in row.items():
            if k >= n:
                r.append(pc)
                c.append(k - n)
                v.append(val)
    return SparseMatrix(f, (n, n), r, c, np.asarray(v, dtype=f.dtype))
