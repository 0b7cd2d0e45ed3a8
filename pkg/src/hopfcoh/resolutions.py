"""Relatively free (bar) and relatively cofree (cobar) resolutions of Hopf bimodules.

Bar terms B_q(M) = A^{(x)(q+1)} (x) M (x) A^{(x)(q+1)}, factors ordered
a_0 .. a_q, m, b_q .. b_0, with

    d_q = sum_{i<q} (-1)^i (a_i a_{i+1} and b_{i+1} b_i merged) + (-1)^q (a_q m b_q merged)

and contracting homotopy h_q(x) = 1 (x) x (x) 1.  B_{-1} = M and d_0 is a m b.

Cobar terms C^p(N) = A^{(x)(p+1)} (x) N (x) A^{(x)(p+1)} with

    d^p = sum_{i<=p} (-1)^i (Delta on a_i and on b_i) + (-1)^{p+1} (n -> n_(-1) (x) n_(0) (x) n_(1) in the middle)

and homotopy h^p = epsilon (x) 1 (x) epsilon on the outer factors.  The
coaugmentation N -> C^0 is n -> n_(-1) (x) n_(0) (x) n_(1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bimodule import HopfBimodule, cofree_bimodule_term, free_bimodule_term
from .guard import check_dim
from .sparse import SparseMatrix, kron_apply, kron_ids


def middle_action(M: HopfBimodule) -> SparseMatrix:
    """A (x) M (x) A -> M, a (x) m (x) b -> a m b."""
    return M.actR @ kron_ids(M.field, [M.actL, M.n])


def double_coaction(N: HopfBimodule) -> SparseMatrix:
    """N -> A (x) N (x) A, n -> n_(-1) (x) n_(0) (x) n_(1)."""
    return kron_apply(N.field, [N.n, N.coactR], N.coactL)


def bar_differential(M: HopfBimodule, q: int) -> SparseMatrix:
    """d_q: B_q(M) -> B_{q-1}(M) (with B_{-1} = M)."""
    h = M.algebra
    f, n, m = h.field, h.dim, M.dim
    if q < 0:
        raise ValueError("bar differential needs q >= 0")
    dim = n ** (2 * q + 2) * m
    out = kron_apply(f, [n**q, middle_action(M), n**q], SparseMatrix.identity(f, dim)).scale((-1) ** q)
    for i in range(q):
        pieces = [n**i, h.mul, n ** (q - 1 - i) * m * n ** (q - 1 - i), h.mul, n**i]
        out = out + kron_ids(f, pieces).scale((-1) ** i)
    return out


def bar_homotopy(M: HopfBimodule, q: int) -> SparseMatrix:
    """h_q: B_q(M) -> B_{q+1}(M), x -> 1 (x) x (x) 1 (q >= -1)."""
    h = M.algebra
    return kron_ids(h.field, [h.unit, h.dim ** (2 * q + 2) * M.dim, h.unit])


def cobar_differential(N: HopfBimodule, p: int) -> SparseMatrix:
    """d^p: C^p(N) -> C^{p+1}(N)."""
    h = N.algebra
    f, n, d = h.field, h.dim, N.dim
    out = kron_ids(f, [n ** (p + 1), double_coaction(N), n ** (p + 1)]).scale((-1) ** (p + 1))
    for i in range(p + 1):
        pieces = [n**i, h.comul, n ** (p - i) * d * n ** (p - i), h.comul, n**i]
        out = out + kron_ids(f, pieces).scale((-1) ** i)
    return out


def cobar_homotopy(N: HopfBimodule, p: int) -> SparseMatrix:
    """h^p: C^p(N) -> C^{p-1}(N) (C^{-1} = N), epsilon on a_0 and b_0."""
    h = N.algebra
    return kron_ids(h.field, [h.counit, h.dim ** (2 * p) * N.dim, h.counit])


@dataclass
class BarComplex:
    """Terms B_{-1} = M, B_0, ..., B_qmax with differentials and homotopies.

    ``terms[q + 1]`` is B_q, ``d[q]`` is d_q: B_q -> B_{q-1} (q = 0..qmax) and
    ``h[q + 1]`` is h_q: B_q -> B_{q+1} (q = -1..qmax-1).
    """

    module: HopfBimodule
    qmax: int
    terms: list
    d: list
    h: list

    def term(self, q: int) -> HopfBimodule:
        return self.terms[q + 1]

    def homotopy(self, q: int) -> SparseMatrix:
        return self.h[q + 1]


@dataclass
class CobarComplex:
    """Terms C^0..C^pmax with differentials d[p]: C^p -> C^{p+1} (p < pmax),
    the coaugmentation N -> C^0 and homotopies h[p]: C^p -> C^{p-1} (C^{-1} = N)."""

    module: HopfBimodule
    pmax: int
    terms: list
    d: list
    coaugmentation: SparseMatrix
    h: list


def bar_complex(M: HopfBimodule, qmax: int) -> BarComplex:
    n = M.n
    for q in range(qmax + 1):
        check_dim(n ** (2 * q + 2) * M.dim, f"bar term B_{q}")
    terms = [M] + [free_bimodule_term(M, q) for q in range(qmax + 1)]
    d = [bar_differential(M, q) for q in range(qmax + 1)]
    h = [bar_homotopy(M, q) for q in range(-1, qmax)]
    return BarComplex(M, qmax, terms, d, h)


def cobar_complex(N: HopfBimodule, pmax: int) -> CobarComplex:
    n = N.n
    for p in range(pmax + 1):
        check_dim(n ** (2 * p + 2) * N.dim, f"cobar term C^{p}")
    terms = [cofree_bimodule_term(N, p) for p in range(pmax + 1)]
    d = [cobar_differential(N, p) for p in range(pmax)]
    h = [cobar_homotopy(N, p) for p in range(pmax + 1)]
    return CobarComplex(N, pmax, terms, d, double_coaction(N), h)
