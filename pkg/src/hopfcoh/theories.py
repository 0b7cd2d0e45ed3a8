"""Cohomology engines for pairs of Hopf bimodules.

Every engine builds a double complex (or, for Ext over X, a single complex)
and reports dim H^n for n = 0..bound.  Cell (p, q) sits in total degree p + q;
d_h raises q and d_v raises p.

Engines
    gs            Hom_{A4}(B_q(M), C^p(N)) with alpha -> alpha d_{q+1} and (-1)^q d^p alpha
    gs_reduced    Hom_k(A^q M A^q, A^p N A^p); d_h from the explicit formula, d_v
                  transported from the unreduced complex through the (co)freeness isomorphism
    a4            Hom_{A-}^{-A}(M A^q, A^p N) with the explicit reduced formulas
    a4_unreduced  Hom_{A4}(M A^{q+1}, A^{p+1} N) with lambda and rho
    hb            Hom_k(A^q, A^p) for M = N = A
    hb_truncated  hb with row p = 0 and column q = 0 replaced by zero
    ext_x         Hom_k(X^k M, N) with the bar differential over X
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .bimodule import (
    HopfBimodule,
    codiagonal_left_coaction,
    codiagonal_right_coaction,
    diagonal_left_action,
    diagonal_right_action,
    left_tensor_power,
    regular_bimodule,
    right_tensor_power,
    tensor_bimodule,
)
from .complexes import (
    CochainComplex,
    ConstrainedHomSpace,
    DoubleComplex,
    cohomology_dims,
    constrained_hom_basis,
    full_hom_space,
    restrict_operator,
    sandwich,
    total_complex,
    zero_hom_space,
)
from .guard import check_dim
from .linalg import rank
from .parallel import parallel_map
from .resolutions import (
    bar_differential,
    cobar_differential,
    double_coaction,
    free_bimodule_term,
    cofree_bimodule_term,
    middle_action,
)
from .sparse import SparseMatrix, kron_ids
from .xalgebra import bimodule_to_xmodule, x_of

ENGINES = ("gs", "gs_reduced", "a4", "a4_unreduced", "hb", "hb_truncated", "ext_x")
MAX_BOUND = 6

REDUCED_A4_CONSTRAINTS = ("left-module", "right-comodule")


class EngineError(ValueError):
    """Bad engine request (unknown engine, mismatched bimodules, bound out of range)."""


# -- small tensor helpers -------------------------------------------------------------------


def _zero(field, rows: int, cols: int) -> SparseMatrix:
    return SparseMatrix.zeros(field, (rows, cols))


def _inner_products(h, q: int, tail: int) -> SparseMatrix:
    """sum_{i=1}^{q-1} (-1)^i (a_i a_{i+1}) on A^q (x) T, T of dimension ``tail``."""
    f, n = h.field, h.dim
    out = _zero(f, n ** (q - 1) * tail, n**q * tail)
    for i in range(1, q):
        out = out + kron_ids(f, [n ** (i - 1), h.mul, n ** (q - 1 - i) * tail]).scale((-1) ** i)
    return out


def _inner_coproducts(h, p: int, tail: int) -> SparseMatrix:
    """sum_{i=1}^{p} (-1)^i Delta_i on A^p (x) T."""
    f, n = h.field, h.dim
    out = _zero(f, n ** (p + 1) * tail, n**p * tail)
    for i in range(1, p + 1):
        out = out + kron_ids(f, [n ** (i - 1), h.comul, n ** (p - i) * tail]).scale((-1) ** i)
    return out


# -- Gerstenhaber-Schack, reduced coordinates ------------------------------------------------


def gs_source(M: HopfBimodule, q: int) -> HopfBimodule:
    """V_q = A^q (x) M (x) A^q with standard actions and codiagonal coactions."""
    A = regular_bimodule(M.algebra)
    return tensor_bimodule(M.algebra, [A] * q + [M] + [A] * q, "standard", "codiagonal", f"V{q}({M.name})")


def gs_target(N: HopfBimodule, p: int) -> HopfBimodule:
    """W_p = A^p (x) N (x) A^p with diagonal actions and standard coactions."""
    A = regular_bimodule(N.algebra)
    return tensor_bimodule(N.algebra, [A] * p + [N] + [A] * p, "diagonal", "standard", f"W{p}({N.name})")


def gs_source_faces(M: HopfBimodule, q: int) -> SparseMatrix:
    """V_{q+1} -> V_q: sum_{i=1}^q (-1)^i (a_{i-1} a_i, b_i b_{i-1}) + (-1)^{q+1} (a_q m b_q)."""
    h = M.algebra
    f, n, m = h.field, h.dim, M.dim
    out = kron_ids(f, [n**q, middle_action(M), n**q]).scale((-1) ** (q + 1))
    for i in range(1, q + 1):
        pieces = [n ** (i - 1), h.mul, n ** (q - i) * m * n ** (q - i), h.mul, n ** (i - 1)]
        out = out + kron_ids(f, pieces).scale((-1) ** i)
    return out


def gs_target_cofaces(N: HopfBimodule, p: int) -> SparseMatrix:
    """W_p -> W_{p+1}: sum_{i=1}^p (-1)^i (Delta on a_i and b_i) + (-1)^{p+1} (n -> n_(-1) n_(0) n_(1))."""
    h = N.algebra
    f, n, d = h.field, h.dim, N.dim
    out = kron_ids(f, [n**p, double_coaction(N), n**p]).scale((-1) ** (p + 1))
    for i in range(1, p + 1):
        pieces = [n ** (i - 1), h.comul, n ** (p - i) * d * n ** (p - i), h.comul, n ** (i - 1)]
        out = out + kron_ids(f, pieces).scale((-1) ** i)
    return out


def gs_reduced_dh(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """Horizontal differential on Hom_k(V_q, W_p) in ambient coordinates:
    a_0 alpha(..) b_0 (diagonal actions on W_p) plus alpha composed with the inner faces."""
    f = M.field
    n = M.n
    dV = M.dim * n ** (2 * q)
    W = gs_target(N, p)
    return sandwich(f, middle_action(W), None, W.dim, dV, L=n, R=n) + sandwich(f, None, gs_source_faces(M, q), W.dim, dV)


def gs_unit_insertion(M: HopfBimodule, q: int) -> SparseMatrix:
    """V_q -> B_q, v -> 1 (x) v (x) 1."""
    h = M.algebra
    return kron_ids(h.field, [h.unit, M.dim * h.dim ** (2 * q), h.unit])


def gs_counit_projection(N: HopfBimodule, p: int) -> SparseMatrix:
    """C^p -> W_p, epsilon on the outer factors."""
    h = N.algebra
    return kron_ids(h.field, [h.counit, N.dim * h.dim ** (2 * p), h.counit])


def gs_reduced_dv(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """Vertical differential on Hom_k(V_q, W_p), transported from alpha -> (-1)^q d^p alpha:
    beta -> (-1)^q (eps 1 eps) d^p (1 beta 1) (v_(-1) v_(0) v_(1))."""
    f = M.field
    n = M.n
    dV = M.dim * n ** (2 * q)
    dW = N.dim * n ** (2 * p)
    X = gs_counit_projection(N, p + 1) @ cobar_differential(N, p)
    Theta = double_coaction(gs_source(M, q))
    return sandwich(f, X, Theta, dW, dV, L=n, R=n).scale((-1) ** q)


def gs_reduced_dv_printed(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """The explicit vertical formula: (-1)^q [(1 beta 1) Theta_{V_q} + inner coproducts + (1 Theta_N 1) beta]."""
    f = M.field
    n = M.n
    dV = M.dim * n ** (2 * q)
    dW = N.dim * n ** (2 * p)
    Theta = double_coaction(gs_source(M, q))
    out = sandwich(f, None, Theta, dW, dV, L=n, R=n) + sandwich(f, gs_target_cofaces(N, p), None, dW, dV)
    return out.scale((-1) ** q)


def gs_phi(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """Hom_{A4}(B_q, C^p) -> Hom_k(V_q, W_p), alpha -> (eps 1 eps) alpha (1 . 1) (ambient coordinates)."""
    n = M.n
    dB = M.dim * n ** (2 * q + 2)
    dC = N.dim * n ** (2 * p + 2)
    return sandwich(M.field, gs_counit_projection(N, p), gs_unit_insertion(M, q), dC, dB)


def gs_psi(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """Hom_k(V_q, W_p) -> Hom_{A4}(B_q, C^p), beta -> (a v b -> a [(1 beta 1) Theta(v)] b)."""
    f = M.field
    n = M.n
    dV = M.dim * n ** (2 * q)
    dW = N.dim * n ** (2 * p)
    C = cofree_bimodule_term(N, p)
    lam = middle_action(C)  # A (x) C^p (x) A -> C^p
    Theta = double_coaction(gs_source(M, q))
    # beta -> (1 beta 1) Theta : V_q -> C^p, then a (x) . (x) b acting from outside
    inner = sandwich(f, None, Theta, dW, dV, L=n, R=n)
    outer = sandwich(f, lam, None, C.dim, dV, L=n, R=n)
    return outer @ inner


# -- A4, reduced and unreduced ---------------------------------------------------------------


def a4_source_faces(M: HopfBimodule, q: int) -> SparseMatrix:
    """M (x) A^{q+1} -> M (x) A^q: m a_1 (x) .. + sum_{i=1}^q (-1)^i (a_i a_{i+1})."""
    h = M.algebra
    f, n, m = h.field, h.dim, M.dim
    out = kron_ids(f, [M.actR, n**q])
    for i in range(1, q + 1):
        out = out + kron_ids(f, [m * n ** (i - 1), h.mul, n ** (q - i)]).scale((-1) ** i)
    return out


def a4_target_cofaces(N: HopfBimodule, p: int) -> SparseMatrix:
    """A^p (x) N -> A^{p+1} (x) N: sum_{i=1}^p (-1)^i Delta_i + (-1)^{p+1} (1^p (x) delta_L^N)."""
    h = N.algebra
    f, n = h.field, h.dim
    return _inner_coproducts(h, p, N.dim) + kron_ids(f, [n**p, N.coactL]).scale((-1) ** (p + 1))


def a4_reduced_dh(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """alpha -> alpha(faces) + (-1)^{q+1} alpha(m a_1 .. a_q) . a_{q+1} (diagonal right action)."""
    f, n = M.field, M.n
    dV = M.dim * n**q
    W = left_tensor_power(N, p)
    out = sandwich(f, None, a4_source_faces(M, q), W.dim, dV)
    return out + sandwich(f, W.actR, None, W.dim, dV, R=n).scale((-1) ** (q + 1))


def a4_reduced_dv(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """alpha -> (-1)^q [(1 alpha) delta_L + sum (-1)^i Delta_i alpha + (-1)^{p+1} (1 delta_L^N) alpha]."""
    f, n = M.field, M.n
    U = right_tensor_power(M, q)
    dW = N.dim * n**p
    out = sandwich(f, None, U.coactL, dW, U.dim, L=n) + sandwich(f, a4_target_cofaces(N, p), None, dW, U.dim)
    return out.scale((-1) ** q)


def a4_lambda(M: HopfBimodule, q: int) -> SparseMatrix:
    """M (x) A^{q+2} -> M (x) A^{q+1}: m a_0 (x) .. + sum_{i=0}^q (-1)^{i+1} (a_i a_{i+1})."""
    h = M.algebra
    f, n, m = h.field, h.dim, M.dim
    out = kron_ids(f, [M.actR, n ** (q + 1)])
    for i in range(q + 1):
        out = out + kron_ids(f, [m * n**i, h.mul, n ** (q - i)]).scale((-1) ** (i + 1))
    return out


def a4_rho(N: HopfBimodule, p: int) -> SparseMatrix:
    """A^{p+1} (x) N -> A^{p+2} (x) N: sum_{i=0}^p (-1)^i Delta_i + (-1)^{p+1} (1^{p+1} (x) delta_L^N)."""
    h = N.algebra
    f, n, d = h.field, h.dim, N.dim
    out = kron_ids(f, [n ** (p + 1), N.coactL]).scale((-1) ** (p + 1))
    for i in range(p + 1):
        out = out + kron_ids(f, [n**i, h.comul, n ** (p - i) * d]).scale((-1) ** i)
    return out


def a4_unreduced_dh(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    n = M.n
    return sandwich(M.field, None, a4_lambda(M, q), N.dim * n ** (p + 1), M.dim * n ** (q + 1))


def a4_unreduced_dv(M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    n = M.n
    return sandwich(M.field, a4_rho(N, p), None, N.dim * n ** (p + 1), M.dim * n ** (q + 1)).scale((-1) ** q)


# -- H_b ------------------------------------------------------------------------------------


def hb_dh(h, p: int, q: int) -> SparseMatrix:
    """Hom_k(A^q, A^p) -> Hom_k(A^{q+1}, A^p):
    a_1 beta(a_2..) + sum (-1)^i beta(.. a_i a_{i+1} ..) + (-1)^{q+1} beta(a_1..a_q) a_{q+1}."""
    f, n = h.field, h.dim
    dV, dW = n**q, n**p
    Lp = diagonal_left_action(h, [h.mul] * p, [n] * p)
    Rp = diagonal_right_action(h, [h.mul] * p, [n] * p)
    out = sandwich(f, Lp, None, dW, dV, L=n) + sandwich(f, Rp, None, dW, dV, R=n).scale((-1) ** (q + 1))
    if q >= 1:
        out = out + sandwich(f, None, _inner_products(h, q + 1, 1), dW, dV)
    return out


def hb_dv(h, p: int, q: int) -> SparseMatrix:
    """Hom_k(A^q, A^p) -> Hom_k(A^q, A^{p+1}):
    (-1)^q [(1 beta) delta_L + sum (-1)^i Delta_i beta + (-1)^{p+1} (beta 1) delta_R] (codiagonal coactions)."""
    f, n = h.field, h.dim
    dV, dW = n**q, n**p
    cL = codiagonal_left_coaction(h, [h.comul] * q, [n] * q)
    cR = codiagonal_right_coaction(h, [h.comul] * q, [n] * q)
    out = sandwich(f, None, cL, dW, dV, L=n) + sandwich(f, None, cR, dW, dV, R=n).scale((-1) ** (p + 1))
    if p >= 1:
        out = out + sandwich(f, _inner_coproducts(h, p, 1), None, dW, dV)
    return out.scale((-1) ** q)


# -- cells and differentials per engine --------------------------------------------------------


def _is_regular_pair(M: HopfBimodule, N: HopfBimodule) -> bool:
    A = regular_bimodule(M.algebra)
    return M == A and N == A


def _cell_ambient(engine: str, M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> int:
    """Dimension of the Hom_k space a cell sits in."""
    n = M.n
    if engine == "gs":
        return M.dim * n ** (2 * q + 2) * N.dim * n ** (2 * p + 2)
    if engine == "gs_reduced":
        return M.dim * n ** (2 * q) * N.dim * n ** (2 * p)
    if engine == "a4":
        return M.dim * n**q * N.dim * n**p
    if engine == "a4_unreduced":
        return M.dim * N.dim * n ** (p + q + 2)
    return n ** (p + q)


def _cell(engine: str, M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> tuple:
    t0 = time.perf_counter()
    f, n = M.field, M.n
    label = f"{engine} cell ({p},{q})"
    if engine == "gs":
        check_dim(_cell_ambient(engine, M, N, p, q), label)
        cell = constrained_hom_basis(free_bimodule_term(M, q), cofree_bimodule_term(N, p), label=label)
    elif engine == "gs_reduced":
        cell = full_hom_space(f, M.dim * n ** (2 * q), N.dim * n ** (2 * p), label)
    elif engine == "a4":
        check_dim(_cell_ambient(engine, M, N, p, q), label)
        cell = constrained_hom_basis(right_tensor_power(M, q), left_tensor_power(N, p), REDUCED_A4_CONSTRAINTS, label)
    elif engine == "a4_unreduced":
        check_dim(_cell_ambient(engine, M, N, p, q), label)
        cell = constrained_hom_basis(right_tensor_power(M, q + 1), left_tensor_power(N, p + 1), label=label)
    elif engine == "hb":
        cell = full_hom_space(f, n**q, n**p, label)
    elif engine == "hb_truncated":
        if p == 0 or q == 0:
            cell = zero_hom_space(f, n**q, n**p, label)
        else:
            cell = full_hom_space(f, n**q, n**p, label)
    else:
        raise EngineError(f"no double complex for engine {engine!r}")
    return cell, time.perf_counter() - t0


def ambient_dh(engine: str, M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """Horizontal differential (p, q) -> (p, q+1) on ambient Hom_k coordinates."""
    if engine == "gs":
        n = M.n
        return sandwich(M.field, None, bar_differential(M, q + 1), N.dim * n ** (2 * p + 2), M.dim * n ** (2 * q + 2))
    if engine == "gs_reduced":
        return gs_reduced_dh(M, N, p, q)
    if engine == "a4":
        return a4_reduced_dh(M, N, p, q)
    if engine == "a4_unreduced":
        return a4_unreduced_dh(M, N, p, q)
    if engine in ("hb", "hb_truncated"):
        return hb_dh(M.algebra, p, q)
    raise EngineError(f"no double complex for engine {engine!r}")


def ambient_dv(engine: str, M: HopfBimodule, N: HopfBimodule, p: int, q: int) -> SparseMatrix:
    """Vertical differential (p, q) -> (p+1, q) on ambient Hom_k coordinates."""
    if engine == "gs":
        n = M.n
        return sandwich(M.field, cobar_differential(N, p), None, N.dim * n ** (2 * p + 2),
                        M.dim * n ** (2 * q + 2)).scale((-1) ** q)
    if engine == "gs_reduced":
        return gs_reduced_dv(M, N, p, q)
    if engine == "a4":
        return a4_reduced_dv(M, N, p, q)
    if engine == "a4_unreduced":
        return a4_unreduced_dv(M, N, p, q)
    if engine in ("hb", "hb_truncated"):
        return hb_dv(M.algebra, p, q)
    raise EngineError(f"no double complex for engine {engine!r}")


def _differential(kind: str, engine: str, M, N, p: int, q: int, src: ConstrainedHomSpace,
                  tgt: ConstrainedHomSpace) -> tuple:
    t0 = time.perf_counter()
    if src.dim == 0 or tgt.dim == 0:
        out = SparseMatrix.zeros(M.field, (tgt.dim, src.dim))
    else:
        op = ambient_dh(engine, M, N, p, q) if kind == "h" else ambient_dv(engine, M, N, p, q)
        out = restrict_operator(op, src, tgt)
    return out, time.perf_counter() - t0


def double_complex(engine: str, M: HopfBimodule, N: HopfBimodule, top: int, jobs: int = 1) -> tuple:
    """Double complex with cells for p + q <= top; returns (DoubleComplex, per-cell seconds)."""
    _check_pair(engine, M, N)
    keys = [(p, t - p) for t in range(top + 1) for p in range(t + 1)]
    for p, q in keys:
        check_dim(_cell_ambient(engine, M, N, p, q), f"{engine} cell ({p},{q})")
    built = parallel_map(_cell, [(engine, M, N, p, q) for p, q in keys], jobs)
    cells = {k: c for k, (c, _) in zip(keys, built)}
    seconds = {k: s for k, (_, s) in zip(keys, built)}
    dc = DoubleComplex(M.field, top, cells)
    inner = [k for k in keys if sum(k) < top]
    tasks = []
    for p, q in inner:
        tasks.append(("h", engine, M, N, p, q, cells[(p, q)], cells[(p, q + 1)]))
        tasks.append(("v", engine, M, N, p, q, cells[(p, q)], cells[(p + 1, q)]))
    results = parallel_map(_differential, tasks, jobs)
    for i, (p, q) in enumerate(inner):
        dc.dh[(p, q)], sh = results[2 * i]
        dc.dv[(p, q)], sv = results[2 * i + 1]
        seconds[(p, q)] += sh + sv
    return dc, seconds


def gs_double_complex(M: HopfBimodule, N: HopfBimodule, bound: int, reduced: bool = True, jobs: int = 1):
    return double_complex("gs_reduced" if reduced else "gs", M, N, bound + 1, jobs)[0]


def a4_double_complex(M: HopfBimodule, N: HopfBimodule, bound: int, unreduced: bool = False, jobs: int = 1):
    return double_complex("a4_unreduced" if unreduced else "a4", M, N, bound + 1, jobs)[0]


def hb_double_complex(h, bound: int, truncated: bool = False, jobs: int = 1):
    A = regular_bimodule(h)
    return double_complex("hb_truncated" if truncated else "hb", A, A, bound + 1, jobs)[0]


# -- Ext over X ---------------------------------------------------------------------------------


def ext_x_complex(M: HopfBimodule, N: HopfBimodule, n_max: int) -> CochainComplex:
    """C^k = Hom_k(X^k (x) M, N), k = 0..n_max+1, with
    d f(x_1..x_{k+1}, m) = x_1 f(x_2..) + sum (-1)^i f(.. x_i x_{i+1} ..) + (-1)^{k+1} f(x_1..x_k, x_{k+1} m)."""
    _check_pair("ext_x", M, N)
    f = M.field
    X = x_of(M.algebra)
    D = X.dim
    for k in range(n_max + 2):
        check_dim(D**k * M.dim * N.dim, f"Hom(X^{k} (x) M, N); try a lower bound")
    muX = X.mult_matrix()
    VM = bimodule_to_xmodule(M, X)
    VN = bimodule_to_xmodule(N, X)
    dims = [D**k * M.dim * N.dim for k in range(n_max + 2)]
    ds = []
    for k in range(n_max + 1):
        dV = D**k * M.dim
        faces = kron_ids(f, [D**k, VM.action]).scale((-1) ** (k + 1))
        for i in range(1, k + 1):
            faces = faces + kron_ids(f, [D ** (i - 1), muX, D ** (k - i) * M.dim]).scale((-1) ** i)
        ds.append(sandwich(f, VN.action, None, N.dim, dV, L=D) + sandwich(f, None, faces, N.dim, dV))
    return CochainComplex(f, dims, ds)


def ext_x_dims(M: HopfBimodule, N: HopfBimodule, n_max: int) -> list[int]:
    return cohomology_dims(ext_x_complex(M, N, n_max), n_max)


# -- driver ---------------------------------------------------------------------------------------


def _check_pair(engine: str, M: HopfBimodule, N: HopfBimodule) -> None:
    if engine not in ENGINES:
        raise EngineError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
    if M.algebra != N.algebra:
        raise EngineError("M and N must be bimodules over the same Hopf algebra")
    if engine in ("hb", "hb_truncated") and not _is_regular_pair(M, N):
        raise EngineError(f"engine {engine} needs M = N = A")


@dataclass
class EngineResult:
    engine: str
    bound: int
    dims: list
    cell_dims: list  # [[p, q, dim], ...] for p + q <= bound + 1
    total: CochainComplex
    double: DoubleComplex | None = None
    timings: dict = dc_field(default_factory=dict)


def compute(engine: str, M: HopfBimodule, N: HopfBimodule, bound: int, jobs: int = 1) -> EngineResult:
    """dim H^n(M, N) for n = 0..bound with the chosen engine."""
    if not 0 <= bound <= MAX_BOUND:
        raise EngineError(f"degree bound must be in 0..{MAX_BOUND}, got {bound}")
    _check_pair(engine, M, N)
    t0 = time.perf_counter()
    if engine == "ext_x":
        C = ext_x_complex(M, N, bound)
        t1 = time.perf_counter()
        dims = cohomology_dims(C, bound)
        cell_dims = [[k, 0, C.dims[k]] for k in range(bound + 2)]
        timings = {"build": t1 - t0, "rank": time.perf_counter() - t1, "cells": {}}
        return EngineResult(engine, bound, dims, cell_dims, C, None, timings)
    dc, seconds = double_complex(engine, M, N, bound + 1, jobs)
    t1 = time.perf_counter()
    C = total_complex(dc, bound)
    ranks = parallel_map(rank, [(m,) for m in C.d], jobs)
    dims = cohomology_dims(C, bound, ranks)
    cell_dims = [[p, q, c.dim] for (p, q), c in dc.cells.items()]
    timings = {"build": t1 - t0, "rank": time.perf_counter() - t1,
               "cells": {f"{p},{q}": s for (p, q), s in seconds.items()}}
    return EngineResult(engine, bound, dims, cell_dims, C, dc, timings)


def hom_a4_dim(M: HopfBimodule, N: HopfBimodule) -> int:
    return constrained_hom_basis(M, N).dim


def projective_vanishing_check(h, N: HopfBimodule, n_max: int = 2, engines=("gs_reduced", "a4"),
                               jobs: int = 1) -> dict:
    """Cohomology of X (as a Hopf bimodule) into N; higher degrees must vanish."""
    from .xalgebra import x_as_bimodule

    P = x_as_bimodule(h)
    out = {"dims": {}, "vanishes": True}
    for e in engines:
        dims = compute(e, P, N, n_max, jobs).dims
        out["dims"][e] = dims
        out["vanishes"] = out["vanishes"] and all(d == 0 for d in dims[1:])
    return out


def report(result: EngineResult, algebra: str, M: str, N: str, jobspec: dict | None = None,
           timings: bool = False) -> dict:
    """JSON-ready report; timings are included only on request so reports stay reproducible."""
    from . import __version__

    out = {
        "engine": result.engine,
        "algebra": algebra,
        "M": M,
        "N": N,
        "field": result.total.field.p,
        "bound": result.bound,
        "dims": list(result.dims),
        "cell_dims": [list(c) for c in result.cell_dims],
        "version": __version__,
    }
    if jobspec is not None:
        out["jobspec"] = jobspec
    if timings:
        out["timings"] = result.timings
    return out
