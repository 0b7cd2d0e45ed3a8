"""Canonical COO sparse matrices over an exact field.

A ``SparseMatrix`` keeps its nonzeros sorted row-major with no duplicates and
no explicit zeros, so equality is array equality.  Indices are int64; values
are int64 residues for F_p and ``Fraction`` objects for Q.

Tensor conventions: the basis vector e_{i1} (x) ... (x) e_{ik} of
V1 (x) ... (x) Vk has flat index sum_j i_j * prod_{l>j} dim(Vl), the rightmost
factor varying fastest (the ``numpy.kron`` order).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec

_CHUNK = 1 << 22


def _as_index(a) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64).reshape(-1))


class SparseMatrix:
    __slots__ = ("field", "shape", "row", "col", "val")
    __hash__ = None

    def __init__(self, field: FieldSpec, shape, row=(), col=(), val=(), *, canonical: bool = False):
        self.field = field
        self.shape = (int(shape[0]), int(shape[1]))
        row = _as_index(row)
        col = _as_index(col)
        if canonical:
            self.row, self.col, self.val = row, col, np.asarray(val, dtype=field.dtype)
            return
        if field.is_rational:
            val = field.array(list(val) if not isinstance(val, np.ndarray) else val).reshape(-1)
        else:
            val = np.asarray(val)
            if val.dtype != np.int64 or val.size and (val.min() < 0 or val.max() >= field.p):
                val = field.array(val).reshape(-1)
            val = val.reshape(-1)
        if not (row.size == col.size == val.size):
            raise ValueError("row/col/val length mismatch")
        if row.size:
            if row.min() < 0 or row.max() >= self.shape[0] or col.min() < 0 or col.max() >= self.shape[1]:
                raise IndexError(f"entry index out of range for shape {self.shape}")
        self.row, self.col, self.val = _canonical(field, self.shape, row, col, val)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, field: FieldSpec, shape) -> "SparseMatrix":
        return cls(field, shape, _as_index(()), _as_index(()), np.zeros(0, dtype=field.dtype), canonical=True)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "SparseMatrix":
        idx = np.arange(n, dtype=np.int64)
        return cls(field, (n, n), idx, idx.copy(), _ones(field, n), canonical=True)

    @classmethod
    def from_dense(cls, field: FieldSpec, arr) -> "SparseMatrix":
        arr = field.array(arr)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        r, c = np.nonzero(field.nonzero_mask(arr))
        return cls(field, arr.shape, r, c, arr[r, c], canonical=True)

    @classmethod
    def from_columns(cls, field: FieldSpec, nrows: int, columns: Sequence[np.ndarray]) -> "SparseMatrix":
        """Matrix whose j-th column is the dense vector ``columns[j]``."""
        if not columns:
            return cls.zeros(field, (nrows, 0))
        arr = np.stack([np.asarray(c, dtype=field.dtype) for c in columns], axis=1)
        return cls.from_dense(field, arr)

    @classmethod
    def column_vector(cls, field: FieldSpec, vec) -> "SparseMatrix":
        return cls.from_dense(field, np.asarray(vec).reshape(-1, 1))

    @classmethod
    def row_vector(cls, field: FieldSpec, vec) -> "SparseMatrix":
        return cls.from_dense(field, np.asarray(vec).reshape(1, -1))

    # -- basic protocol ------------------------------------------------------

    @property
    def nnz(self) -> int:
        return int(self.row.size)

    def __repr__(self):
        return f"SparseMatrix({self.field!r}, shape={self.shape}, nnz={self.nnz})"

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and np.array_equal(self.row, other.row)
            and np.array_equal(self.col, other.col)
            and bool(np.all(self.val == other.val))
        )

    def is_zero(self) -> bool:
        return self.nnz == 0

    def to_dense(self) -> np.ndarray:
        out = self.field.zeros(self.shape)
        out[self.row, self.col] = self.val
        return out

    def copy(self) -> "SparseMatrix":
        return self

    # -- arithmetic ------------------------------------------------------------

    def _check_same(self, other):
        if self.shape != other.shape or self.field != other.field:
            raise ValueError(f"shape/field mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same(other)
        if other.nnz == 0:
            return self
        if self.nnz == 0:
            return other
        return SparseMatrix(
            self.field,
            self.shape,
            np.concatenate([self.row, other.row]),
            np.concatenate([self.col, other.col]),
            np.concatenate([self.val, other.val]),
            canonical=False,
        )

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        c = self.field.scalar(c)
        if c == 0:
            return SparseMatrix.zeros(self.field, self.shape)
        if c == 1:
            return self
        return SparseMatrix(self.field, self.shape, self.row, self.col, self.field.mul(self.val, c), canonical=True)

    def __mul__(self, c) -> "SparseMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"matmul shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        shape = (self.shape[0], other.shape[1])
        if self.nnz == 0 or other.nnz == 0:
            return SparseMatrix.zeros(f, shape)
        lo = np.searchsorted(other.row, self.col, "left")
        hi = np.searchsorted(other.row, self.col, "right")
        cnt = hi - lo
        total = int(cnt.sum())
        if total == 0:
            return SparseMatrix.zeros(f, shape)
        pieces = []
        csum = np.cumsum(cnt)
        start = 0
        while start < self.nnz:
            base = int(csum[start - 1]) if start else 0
            stop = int(np.searchsorted(csum, base + _CHUNK, "right"))
            stop = max(stop, start + 1)
            c = cnt[start:stop]
            n = int(c.sum())
            ia = np.repeat(np.arange(start, stop), c)
            offs = np.arange(n, dtype=np.int64) - np.repeat(np.cumsum(c) - c, c) + np.repeat(lo[start:stop], c)
            r = self.row[ia]
            cc = other.col[offs]
            v = f.mul(self.val[ia], other.val[offs])
            pieces.append(_canonical(f, shape, r, cc, v))
            start = stop
        if len(pieces) == 1:
            r, c, v = pieces[0]
            return SparseMatrix(f, shape, r, c, v, canonical=True)
        return SparseMatrix(
            f,
            shape,
            np.concatenate([p[0] for p in pieces]),
            np.concatenate([p[1] for p in pieces]),
            np.concatenate([p[2] for p in pieces]),
        )

    def apply(self, vec) -> np.ndarray:
        """Dense matrix-vector product."""
        vec = np.asarray(vec, dtype=self.field.dtype).reshape(-1)
        if vec.size != self.shape[1]:
            raise ValueError("vector length mismatch")
        out = self.field.zeros(self.shape[0])
        if self.nnz:
            np.add.at(out, self.row, self.field.mul(self.val, vec[self.col]))
        return self.field.normalize(out)

    @property
    def T(self) -> "SparseMatrix":
        return SparseMatrix(self.field, (self.shape[1], self.shape[0]), self.col, self.row, self.val, canonical=False)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        f = self.field
        shape = (self.shape[0] * other.shape[0], self.shape[1] * other.shape[1])
        if self.nnz == 0 or other.nnz == 0:
            return SparseMatrix.zeros(f, shape)
        r = (self.row[:, None] * other.shape[0] + other.row[None, :]).reshape(-1)
        c = (self.col[:, None] * other.shape[1] + other.col[None, :]).reshape(-1)
        v = f.mul(self.val[:, None], other.val[None, :]).reshape(-1)
        return SparseMatrix(f, shape, *_sort_unique(shape, r, c, v), canonical=True)

    # -- index manipulation ----------------------------------------------------

    def reindex(self, shape, row_map=None, col_map=None) -> "SparseMatrix":
        """Move entry (i, j) to (row_map[i], col_map[j]); a negative target drops the entry."""
        r = self.row if row_map is None else np.asarray(row_map, dtype=np.int64)[self.row]
        c = self.col if col_map is None else np.asarray(col_map, dtype=np.int64)[self.col]
        keep = (r >= 0) & (c >= 0)
        return SparseMatrix(self.field, shape, r[keep], c[keep], self.val[keep])

    def select_rows(self, rows) -> "SparseMatrix":
        rows = _as_index(rows)
        m = np.full(self.shape[0], -1, dtype=np.int64)
        m[rows] = np.arange(rows.size)
        return self.reindex((rows.size, self.shape[1]), row_map=m)

    def select_cols(self, cols) -> "SparseMatrix":
        cols = _as_index(cols)
        m = np.full(self.shape[1], -1, dtype=np.int64)
        m[cols] = np.arange(cols.size)
        return self.reindex((self.shape[0], cols.size), col_map=m)

    def permute_row_factors(self, dims: Sequence[int], perm: Sequence[int]) -> "SparseMatrix":
        """Reorder the tensor factors of the row space: new factor j is old factor perm[j]."""
        return SparseMatrix(self.field, self.shape, permute_index(self.row, dims, perm), self.col, self.val)

    def permute_col_factors(self, dims: Sequence[int], perm: Sequence[int]) -> "SparseMatrix":
        """Reorder the tensor factors of the column space: new factor j is old factor perm[j].

        The result M' satisfies M' = M o P^{-1}, i.e. M'(x permuted) = M(x).
        """
        return SparseMatrix(self.field, self.shape, self.row, permute_index(self.col, dims, perm), self.val)

    def embed(self, shape, row_offset: int = 0, col_offset: int = 0) -> "SparseMatrix":
        return SparseMatrix(self.field, shape, self.row + row_offset, self.col + col_offset, self.val, canonical=True)

    def column(self, j: int) -> np.ndarray:
        out = self.field.zeros(self.shape[0])
        m = self.col == j
        out[self.row[m]] = self.val[m]
        return out

    def entries(self) -> Iterable[tuple[int, int, object]]:
        for r, c, v in zip(self.row.tolist(), self.col.tolist(), self.val.tolist()):
            yield r, c, v


def _ones(field: FieldSpec, n: int) -> np.ndarray:
    return field.array(np.ones(n, dtype=np.int64)) if field.is_rational else np.ones(n, dtype=np.int64)


def _sort_unique(shape, r, c, v):
    if shape[0] * shape[1] < 2**62:
        order = np.argsort(r * shape[1] + c, kind="stable")
    else:
        order = np.lexsort((c, r))
    return r[order], c[order], v[order]


def _canonical(field: FieldSpec, shape, r, c, v):
    if r.size == 0:
        return r, c, np.asarray(v, dtype=field.dtype)
    r, c, v = _sort_unique(shape, r, c, v)
    new = np.empty(r.size, dtype=bool)
    new[0] = True
    np.not_equal(r[1:], r[:-1], out=new[1:])
    new[1:] |= c[1:] != c[:-1]
    if not new.all():
        starts = np.flatnonzero(new)
        v = np.add.reduceat(v, starts)
        r, c = r[starts], c[starts]
        v = field.normalize(v)
    keep = np.asarray(v != 0, dtype=bool)
    if not keep.all():
        r, c, v = r[keep], c[keep], v[keep]
    return r, c, v


def permute_index(idx: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    dims = [int(d) for d in dims]
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"not a permutation: {perm}")
    digits = []
    rest = idx.copy()
    for d in reversed(dims):
        digits.append(rest % d)
        rest //= d
    digits.reverse()
    out = np.zeros_like(idx)
    for j in perm:
        out = out * dims[j] + digits[j]
    return out


# -- helpers used everywhere ---------------------------------------------------


def identity(field: FieldSpec, n: int) -> SparseMatrix:
    return SparseMatrix.identity(field, n)


def kron(*mats: SparseMatrix) -> SparseMatrix:
    if not mats:
        raise ValueError("kron of nothing")
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def kron_ids(field: FieldSpec, pieces: Sequence) -> SparseMatrix:
    """Kronecker product where integer entries stand for identity matrices of that size.

    Runs of identities are merged so large identities never multiply nnz needlessly.
    """
    merged: list = []
    for p in pieces:
        if isinstance(p, (int, np.integer)):
            if merged and isinstance(merged[-1], int):
                merged[-1] *= int(p)
            else:
                merged.append(int(p))
        else:
            merged.append(p)
    mats = [SparseMatrix.identity(field, p) if isinstance(p, int) else p for p in merged]
    return kron(*mats)


def _local_apply(m: SparseMatrix, x: SparseMatrix, pre: int, post: int) -> SparseMatrix:
    """(I_pre (x) m (x) I_post) @ x without building the Kronecker product."""
    f = x.field
    mi, mo = m.shape[1], m.shape[0]
    if x.shape[0] != pre * mi * post:
        raise ValueError(f"local apply: {x.shape[0]} rows, expected {pre}*{mi}*{post}")
    shape = (pre * mo * post, x.shape[1])
    if x.nnz == 0 or m.nnz == 0:
        return SparseMatrix.zeros(f, shape)
    mt = m.T  # sorted by the input index of m
    left = x.row // (mi * post)
    mid = (x.row // post) % mi
    right = x.row % post
    lo = np.searchsorted(mt.row, mid, "left")
    cnt = np.searchsorted(mt.row, mid, "right") - lo
    pieces = []
    csum = np.cumsum(cnt)
    start = 0
    while start < x.nnz:
        base = int(csum[start - 1]) if start else 0
        stop = max(int(np.searchsorted(csum, base + _CHUNK, "right")), start + 1)
        c = cnt[start:stop]
        n = int(c.sum())
        if n:
            ia = np.repeat(np.arange(start, stop), c)
            offs = np.arange(n, dtype=np.int64) - np.repeat(np.cumsum(c) - c, c) + np.repeat(lo[start:stop], c)
            r = (left[ia] * mo + mt.col[offs]) * post + right[ia]
            pieces.append(_canonical(f, shape, r, x.col[ia], f.mul(x.val[ia], mt.val[offs])))
        start = stop
    if not pieces:
        return SparseMatrix.zeros(f, shape)
    if len(pieces) == 1:
        return SparseMatrix(f, shape, *pieces[0], canonical=True)
    return SparseMatrix(f, shape, *(np.concatenate([p[i] for p in pieces]) for i in range(3)))


def kron_apply(field: FieldSpec, pieces: Sequence, x: SparseMatrix) -> SparseMatrix:
    """kron_ids(field, pieces) @ x, applying one tensor factor at a time."""
    dims_in = [p if isinstance(p, (int, np.integer)) else p.shape[1] for p in pieces]
    dims_out = [p if isinstance(p, (int, np.integer)) else p.shape[0] for p in pieces]
    for j in reversed(range(len(pieces))):
        p = pieces[j]
        if isinstance(p, (int, np.integer)):
            continue
        pre = int(np.prod(dims_in[:j], dtype=np.int64))
        post = int(np.prod(dims_out[j + 1:], dtype=np.int64))
        x = _local_apply(p, x, pre, post)
    return x


def kron_rapply(field: FieldSpec, x: SparseMatrix, pieces: Sequence) -> SparseMatrix:
    """x @ kron_ids(field, pieces)."""
    tp = [p if isinstance(p, (int, np.integer)) else p.T for p in pieces]
    return kron_apply(field, tp, x.T).T


def hstack(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    f = mats[0].field
    nr = mats[0].shape[0]
    off = 0
    r, c, v = [], [], []
    for m in mats:
        if m.shape[0] != nr:
            raise ValueError("hstack row mismatch")
        r.append(m.row)
        c.append(m.col + off)
        v.append(m.val)
        off += m.shape[1]
    return SparseMatrix(f, (nr, off), np.concatenate(r), np.concatenate(c), np.concatenate(v), canonical=False)


def vstack(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    f = mats[0].field
    nc = mats[0].shape[1]
    off = 0
    r, c, v = [], [], []
    for m in mats:
        if m.shape[1] != nc:
            raise ValueError("vstack column mismatch")
        r.append(m.row + off)
        c.append(m.col)
        v.append(m.val)
        off += m.shape[0]
    return SparseMatrix(f, (off, nc), np.concatenate(r), np.concatenate(c), np.concatenate(v), canonical=True)


def block(field: FieldSpec, row_dims: Sequence[int], col_dims: Sequence[int], blocks: dict) -> SparseMatrix:
    """Assemble a block matrix from ``{(i, j): SparseMatrix}``; missing blocks are zero."""
    ro = np.concatenate([[0], np.cumsum(row_dims)]).astype(np.int64)
    co = np.concatenate([[0], np.cumsum(col_dims)]).astype(np.int64)
    r, c, v = [np.zeros(0, np.int64)], [np.zeros(0, np.int64)], [np.zeros(0, dtype=field.dtype)]
    for (i, j), m in blocks.items():
        if m.shape != (row_dims[i], col_dims[j]):
            raise ValueError(f"block {(i, j)} has shape {m.shape}, expected {(row_dims[i], col_dims[j])}")
        r.append(m.row + ro[i])
        c.append(m.col + co[j])
        v.append(m.val)
    return SparseMatrix(field, (int(ro[-1]), int(co[-1])), np.concatenate(r), np.concatenate(c), np.concatenate(v))
