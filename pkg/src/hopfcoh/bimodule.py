"""Hopf bimodules and the tensor constructions built from them.

A Hopf bimodule M over A (dim m) is stored as four sparse maps

* ``actL``   m x n m   (a (x) v  ->  a . v)
* ``actR``   m x m n   (v (x) a  ->  v . a)
* ``coactL`` n m x m   (v -> v_(-1) (x) v_(0))
* ``coactR`` m n x m   (v -> v_(0) (x) v_(1))

Tensor products of A's and bimodules carry either *standard* structure
(acting/coacting on one end factor) or *diagonal/codiagonal* structure (through
iterated comultiplication/multiplication over all factors).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import as_field
from .hopf import HopfAlgebra, HopfFormatError, iterated_comul, load_algebra, mul_k
from .linalg import Kernel, kernel, rank
from .sparse import SparseMatrix, identity, kron, kron_apply, kron_ids, kron_rapply


@dataclass(frozen=True, eq=False)
class HopfBimodule:
    algebra: HopfAlgebra
    dim: int
    actL: SparseMatrix
    actR: SparseMatrix
    coactL: SparseMatrix
    coactR: SparseMatrix
    name: str = ""

    def __post_init__(self):
        n, m = self.algebra.dim, self.dim
        shapes = {"actL": (m, n * m), "actR": (m, m * n), "coactL": (n * m, m), "coactR": (m * n, m)}
        for key, shape in shapes.items():
            got = getattr(self, key).shape
            if got != shape:
                raise ValueError(f"{key} has shape {got}, expected {shape}")

    def __eq__(self, other):
        if not isinstance(other, HopfBimodule):
            return NotImplemented
        return self.dim == other.dim and all(
            getattr(self, k) == getattr(other, k) for k in ("actL", "actR", "coactL", "coactR")
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"HopfBimodule({self.name or '?'}, dim={self.dim}, over={self.algebra.name})"

    @property
    def field(self):
        return self.algebra.field

    @property
    def n(self) -> int:
        return self.algebra.dim


def verify_hopf_bimodule(M: HopfBimodule) -> list[str]:
    """Names of the violated axioms; empty for a Hopf bimodule."""
    h = M.algebra
    n, m = h.dim, M.dim
    f = h.field
    I, Im = identity(f, n), identity(f, m)
    L, R, cL, cR = M.actL, M.actR, M.coactL, M.coactR
    ka, kr = (lambda p, x: kron_apply(f, p, x)), (lambda x, p: kron_rapply(f, x, p))
    out = []
    if kr(L, [h.mul, m]) != kr(L, [n, L]):
        out.append("left-module")
    if kr(L, [h.unit, m]) != Im:
        out.append("left-module unit")
    if kr(R, [R, n]) != kr(R, [m, h.mul]):
        out.append("right-module")
    if kr(R, [m, h.unit]) != Im:
        out.append("right-module unit")
    if kr(R, [L, n]) != kr(L, [n, R]):
        out.append("bimodule")
    if ka([h.comul, m], cL) != ka([n, cL], cL):
        out.append("left-comodule")
    if ka([h.counit, m], cL) != Im:
        out.append("left-comodule counit")
    if ka([cR, n], cR) != ka([m, h.comul], cR):
        out.append("right-comodule")
    if ka([m, h.counit], cR) != Im:
        out.append("right-comodule counit")
    if ka([cL, n], cR) != ka([n, cR], cL):
        out.append("bicomodule")
    # delta_L(a v) = Delta(a) delta_L(v), and the three analogous identities
    lhs_rhs = [
        ("left-coaction-of-left-action", cL @ L, ka([h.mul, L], kron(h.comul, cL).permute_row_factors([n, n, n, m], [0, 2, 1, 3]))),
        ("left-coaction-of-right-action", cL @ R, ka([h.mul, R], kron(cL, h.comul).permute_row_factors([n, m, n, n], [0, 2, 1, 3]))),
        ("right-coaction-of-left-action", cR @ L, ka([L, h.mul], kron(h.comul, cR).permute_row_factors([n, n, m, n], [0, 2, 1, 3]))),
        ("right-coaction-of-right-action", cR @ R, ka([R, h.mul], kron(cR, h.comul).permute_row_factors([m, n, n, n], [0, 2, 1, 3]))),
    ]
    for name, lhs, rhs in lhs_rhs:
        if lhs != rhs:
            out.append(name)
    return out


def is_morphism(f: SparseMatrix, src: HopfBimodule, tgt: HopfBimodule, kinds=("left-module", "right-module", "left-comodule", "right-comodule")) -> bool:
    """Check that f: src -> tgt intertwines the requested structures."""
    F, n = src.field, src.n
    checks = {
        "left-module": lambda: f @ src.actL == kron_rapply(F, tgt.actL, [n, f]),
        "right-module": lambda: f @ src.actR == kron_rapply(F, tgt.actR, [f, n]),
        "left-comodule": lambda: tgt.coactL @ f == kron_apply(F, [n, f], src.coactL),
        "right-comodule": lambda: tgt.coactR @ f == kron_apply(F, [f, n], src.coactR),
    }
    return all(checks[k]() for k in kinds)


# -- basic examples -----------------------------------------------------------------


def regular_bimodule(h: HopfAlgebra) -> HopfBimodule:
    """A itself: multiplication on both sides, comultiplication on both sides."""
    return HopfBimodule(h, h.dim, h.mul, h.mul, h.comul, h.comul, "regular")


def direct_sum(M: HopfBimodule, N: HopfBimodule, actR_offdiag: SparseMatrix | None = None,
               coactL_offdiag: SparseMatrix | None = None) -> HopfBimodule:
    """M (+) N, basis of M first.

    The optional maps perturb the structure by an off-diagonal block:
    ``actR_offdiag``: N (x) A -> M and ``coactL_offdiag``: N -> A (x) M.
    """
    h = M.algebra
    f = h.field
    dm, dn = M.dim, N.dim
    d = dm + dn
    iM = SparseMatrix.identity(f, dm).embed((d, dm))
    iN = SparseMatrix.identity(f, dn).embed((d, dn), row_offset=dm)
    pM, pN = iM.T, iN.T
    I = identity(f, h.dim)
    actL = iM @ M.actL @ kron(I, pM) + iN @ N.actL @ kron(I, pN)
    actR = iM @ M.actR @ kron(pM, I) + iN @ N.actR @ kron(pN, I)
    coactL = kron(I, iM) @ M.coactL @ pM + kron(I, iN) @ N.coactL @ pN
    coactR = kron(iM, I) @ M.coactR @ pM + kron(iN, I) @ N.coactR @ pN
    if actR_offdiag is not None:
        actR = actR + iM @ actR_offdiag @ kron(pN, I)
    if coactL_offdiag is not None:
        coactL = coactL + kron(I, iM) @ coactL_offdiag @ pN
    return HopfBimodule(h, d, actL, actR, coactL, coactR, f"({M.name}+{N.name})")


# -- maps on tensor products ----------------------------------------------------------


def _interleave(k: int) -> list[int]:
    # (x_1..x_k, y_1..y_k) -> (x_1, y_1, ..., x_k, y_k)
    out = []
    for i in range(k):
        out += [i, k + i]
    return out


def diagonal_left_action(h: HopfAlgebra, acts: Sequence[SparseMatrix], dims: Sequence[int]) -> SparseMatrix:
    """a (x) (v_1 (x) .. (x) v_k) -> a_(1) v_1 (x) .. (x) a_(k) v_k; epsilon when k = 0."""
    k = len(dims)
    if k == 0:
        return h.counit
    n = h.dim
    D = kron_ids(h.field, [iterated_comul(h, k - 1), int(np.prod(dims))])
    D = D.permute_row_factors([n] * k + list(dims), _interleave(k))
    return kron_apply(h.field, list(acts), D)


def diagonal_right_action(h: HopfAlgebra, acts: Sequence[SparseMatrix], dims: Sequence[int]) -> SparseMatrix:
    """(v_1 (x) .. (x) v_k) (x) a -> v_1 a_(1) (x) .. (x) v_k a_(k)."""
    k = len(dims)
    if k == 0:
        return h.counit
    n = h.dim
    D = kron_ids(h.field, [int(np.prod(dims)), iterated_comul(h, k - 1)])
    D = D.permute_row_factors(list(dims) + [n] * k, _interleave(k))
    return kron_apply(h.field, list(acts), D)


def codiagonal_left_coaction(h: HopfAlgebra, coacts: Sequence[SparseMatrix], dims: Sequence[int]) -> SparseMatrix:
    """v_1 (x) .. (x) v_k -> v_1(-1) .. v_k(-1) (x) v_1(0) (x) .. (x) v_k(0); unit when k = 0."""
    k = len(dims)
    if k == 0:
        return h.unit
    n = h.dim
    C = kron(*coacts)
    order = [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)]
    C = C.permute_row_factors([x for d in dims for x in (n, d)], order)
    return kron_apply(h.field, [mul_k(h, k), int(np.prod(dims))], C)


def codiagonal_right_coaction(h: HopfAlgebra, coacts: Sequence[SparseMatrix], dims: Sequence[int]) -> SparseMatrix:
    """v_1 (x) .. (x) v_k -> v_1(0) (x) .. (x) v_k(0) (x) v_1(1) .. v_k(1)."""
    k = len(dims)
    if k == 0:
        return h.unit
    n = h.dim
    C = kron(*coacts)
    order = [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)]
    C = C.permute_row_factors([x for d in dims for x in (d, n)], order)
    return kron_apply(h.field, [int(np.prod(dims)), mul_k(h, k)], C)


def tensor_bimodule(h: HopfAlgebra, factors: Sequence[HopfBimodule], actions: str, coactions: str,
                    name: str = "") -> HopfBimodule:
    """Tensor product of bimodules with chosen structure.

    ``actions``: "standard" (left on the first factor, right on the last) or "diagonal".
    ``coactions``: "standard" (left on the first, right on the last) or "codiagonal".
    """
    f = h.field
    dims = [F.dim for F in factors]
    total = int(np.prod(dims))
    if actions == "standard":
        actL = kron_ids(f, [factors[0].actL, total // dims[0]])
        actR = kron_ids(f, [total // dims[-1], factors[-1].actR])
    elif actions == "diagonal":
        actL = diagonal_left_action(h, [F.actL for F in factors], dims)
        actR = diagonal_right_action(h, [F.actR for F in factors], dims)
    else:
        raise ValueError(f"unknown action style {actions!r}")
    if coactions == "standard":
        coactL = kron_ids(f, [factors[0].coactL, total // dims[0]])
        coactR = kron_ids(f, [total // dims[-1], factors[-1].coactR])
    elif coactions == "codiagonal":
        coactL = codiagonal_left_coaction(h, [F.coactL for F in factors], dims)
        coactR = codiagonal_right_coaction(h, [F.coactR for F in factors], dims)
    else:
        raise ValueError(f"unknown coaction style {coactions!r}")
    return HopfBimodule(h, total, actL, actR, coactL, coactR, name)


def right_tensor_power(M: HopfBimodule, k: int) -> HopfBimodule:
    """M (x) A^{(x)k}: standard actions, codiagonal coactions."""
    A = regular_bimodule(M.algebra)
    return tensor_bimodule(M.algebra, [M] + [A] * k, "standard", "codiagonal", f"{M.name}(x)A^{k}")


def left_tensor_power(N: HopfBimodule, k: int) -> HopfBimodule:
    """A^{(x)k} (x) N: diagonal actions, standard coactions."""
    A = regular_bimodule(N.algebra)
    return tensor_bimodule(N.algebra, [A] * k + [N], "diagonal", "standard", f"A^{k}(x){N.name}")


def free_bimodule_term(M: HopfBimodule, q: int) -> HopfBimodule:
    """A^{(x)(q+1)} (x) M (x) A^{(x)(q+1)} with standard actions and codiagonal coactions."""
    A = regular_bimodule(M.algebra)
    return tensor_bimodule(M.algebra, [A] * (q + 1) + [M] + [A] * (q + 1), "standard", "codiagonal", f"B{q}({M.name})")


def cofree_bimodule_term(N: HopfBimodule, p: int) -> HopfBimodule:
    """A^{(x)(p+1)} (x) N (x) A^{(x)(p+1)} with diagonal actions and standard coactions."""
    A = regular_bimodule(N.algebra)
    return tensor_bimodule(N.algebra, [A] * (p + 1) + [N] + [A] * (p + 1), "diagonal", "standard", f"C{p}({N.name})")


# -- coinvariants -------------------------------------------------------------------------


def coinvariants(M: HopfBimodule) -> Kernel:
    """Right coinvariants {v : delta_R(v) = v (x) 1}; ``basis`` columns span them."""
    f = M.field
    emb = kron(identity(f, M.dim), M.algebra.unit)
    return kernel(M.coactR - emb)


def freeness_iso(M: HopfBimodule) -> SparseMatrix:
    """The map A (x) M^coR -> M, a (x) v -> a . v (an isomorphism for Hopf bimodules)."""
    K = coinvariants(M).basis
    return M.actL @ kron(identity(M.field, M.algebra.dim), K)


def is_isomorphism(m: SparseMatrix) -> bool:
    return m.shape[0] == m.shape[1] and rank(m) == m.shape[0]


# -- JSON format ------------------------------------------------------------------------------


def bimodule_from_json(obj, algebra: HopfAlgebra | None = None) -> HopfBimodule:
    """Parse ``{"algebra": name-or-object, "field": p, "dim": m, "actL": [[a, i, j, c]], "actR": [[i, a, j, c]],
    "coactL": [[i, a, j, c]], "coactR": [[i, j, a, c]]}``.

    ``actL`` lists a . e_i = ... + c e_j, ``actR`` lists e_i . a = ... + c e_j,
    ``coactL`` lists delta_L(e_i) = ... + c e_a (x) e_j and ``coactR`` lists
    delta_R(e_i) = ... + c e_j (x) e_a.
    """
    from .hopf import _entries, _scalar, builtin_algebra, hopf_from_json

    if not isinstance(obj, dict):
        raise HopfFormatError("bimodule description must be a JSON object")
    if algebra is None:
        spec = obj.get("algebra")
        if isinstance(spec, dict):
            algebra = hopf_from_json(spec, obj.get("field"))
        elif isinstance(spec, str):
            if "field" not in obj:
                raise HopfFormatError("field: required with a named algebra")
            try:
                algebra = builtin_algebra(spec, as_field(obj["field"]))
            except ValueError as exc:
                raise HopfFormatError(f"algebra: {exc}") from None
        else:
            raise HopfFormatError("algebra: expected a name or an inline algebra object")
    h = algebra
    f = h.field
    n = h.dim
    m = obj.get("dim")
    if not isinstance(m, int) or m <= 0:
        raise HopfFormatError("dim: expected a positive integer")

    def build(key, shape, bounds, locate):
        r, c, v = [], [], []
        for idx, val in _entries(obj, key, 3, bounds, ""):
            row, col = locate(*idx)
            r.append(row)
            c.append(col)
            v.append(_scalar(f, val, f"{key}{idx}"))
        return SparseMatrix(f, shape, r, c, np.asarray(v, dtype=f.dtype) if v else f.zeros(0))

    actL = build("actL", (m, n * m), (n, m, m), lambda a, i, j: (j, a * m + i))
    actR = build("actR", (m, m * n), (m, n, m), lambda i, a, j: (j, i * n + a))
    coactL = build("coactL", (n * m, m), (m, n, m), lambda i, a, j: (a * m + j, i))
    coactR = build("coactR", (m * n, m), (m, m, n), lambda i, j, a: (j * n + a, i))
    return HopfBimodule(h, m, actL, actR, coactL, coactR, obj.get("name", ""))


def bimodule_to_json(M: HopfBimodule) -> dict:
    n, m = M.algebra.dim, M.dim
    s = str
    return {
        "field": M.field.p,
        "algebra": M.algebra.name,
        "dim": m,
        "name": M.name,
        "actL": [[c // m, c % m, r, s(v)] for r, c, v in M.actL.entries()],
        "actR": [[c // n, c % n, r, s(v)] for r, c, v in M.actR.entries()],
        "coactL": [[c, r // m, r % m, s(v)] for r, c, v in M.coactL.entries()],
        "coactR": [[c, r // n, r % n, s(v)] for r, c, v in M.coactR.entries()],
    }


def load_bimodule(spec: str, algebra: HopfAlgebra) -> HopfBimodule:
    """Resolve ``regular``, ``regular2`` (A (+) A), ``x`` (X acting on itself), ``rtensor:k``,
    ``ltensor:k``, ``bar:q``, ``cobar:p`` or a JSON file path."""
    if spec.endswith(".json"):
        try:
            with open(spec) as fh:
                obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise HopfFormatError(f"{spec}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        except OSError as exc:
            raise HopfFormatError(f"{spec}: {exc.strerror}") from None
        return bimodule_from_json(obj, algebra)
    A = regular_bimodule(algebra)
    head, _, arg = spec.partition(":")
    try:
        if spec == "regular":
            return A
        if spec == "regular2":
            return direct_sum(A, A)
        if spec == "x":
            from .xalgebra import x_as_bimodule

            return x_as_bimodule(algebra)
        if head == "rtensor":
            return right_tensor_power(A, int(arg))
        if head == "ltensor":
            return left_tensor_power(A, int(arg))
        if head == "bar":
            return free_bimodule_term(A, int(arg))
        if head == "cobar":
            return cofree_bimodule_term(A, int(arg))
    except ValueError as exc:
        raise HopfFormatError(f"bimodule {spec!r}: {exc}") from None
    raise HopfFormatError(f"unknown bimodule {spec!r}")


__all__ = [
    "HopfBimodule",
    "verify_hopf_bimodule",
    "is_morphism",
    "regular_bimodule",
    "direct_sum",
    "tensor_bimodule",
    "right_tensor_power",
    "left_tensor_power",
    "free_bimodule_term",
    "cofree_bimodule_term",
    "coinvariants",
    "freeness_iso",
    "is_isomorphism",
    "load_bimodule",
    "bimodule_from_json",
    "bimodule_to_json",
]
