"""One-extensions of Hopf bimodules: construction from 1-cocycles, pushout and equivalence.

A degree-1 cochain f = (f_0, f_1) from M to N, f_0: M (x) A -> N and
f_1: M -> A (x) N, defines the middle term N (+) M whose right action and
left coaction carry f_0 and f_1 as off-diagonal blocks.  The middle term is a
Hopf bimodule exactly when f is a cocycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bimodule import HopfBimodule, direct_sum, is_isomorphism, is_morphism, verify_hopf_bimodule
from .complexes import MODULE_CONSTRAINTS, constraint_matrices, sandwich, unvec, vec
from .cup import A4Cochain, cup
from .linalg import inverse, kernel, rank, solve
from .sparse import SparseMatrix, kron, vstack

ENUMERATION_MAX_DIM = 12
ENUMERATION_CAP = 10**6
DEFAULT_SAMPLES = 2000


class ExtensionError(ValueError):
    """The proposed middle term or maps violate the Hopf bimodule axioms."""

    def __init__(self, failures: list[str]):
        self.failures = list(failures)
        super().__init__("invalid extension: " + ", ".join(self.failures))


@dataclass
class ExtensionOfBimodules:
    """0 -> left --inclusion--> middle --projection--> right -> 0."""

    left: HopfBimodule
    right: HopfBimodule
    middle: HopfBimodule
    inclusion: SparseMatrix
    projection: SparseMatrix

    def violations(self) -> list[str]:
        out = [f"middle: {x}" for x in verify_hopf_bimodule(self.middle)]
        d = self.middle.dim
        if self.inclusion.shape != (d, self.left.dim) or self.projection.shape != (self.right.dim, d):
            return out + ["shapes"]
        if not (self.projection @ self.inclusion).is_zero():
            out.append("projection after inclusion is not zero")
        ri, rp = rank(self.inclusion), rank(self.projection)
        if ri != self.left.dim:
            out.append("inclusion not injective")
        if rp != self.right.dim:
            out.append("projection not surjective")
        if ri + rp != d:
            out.append("not exact in the middle")
        if not out:
            if not is_morphism(self.inclusion, self.left, self.middle):
                out.append("inclusion is not a Hopf bimodule map")
            if not is_morphism(self.projection, self.middle, self.right):
                out.append("projection is not a Hopf bimodule map")
        return out


def _standard_maps(N: HopfBimodule, M: HopfBimodule):
    f = N.field
    d = N.dim + M.dim
    inc = SparseMatrix.identity(f, N.dim).embed((d, N.dim))
    proj = SparseMatrix.identity(f, M.dim).embed((M.dim, d), col_offset=N.dim)
    return inc, proj


def extension_from_1cocycle(f: A4Cochain, check: bool = True) -> ExtensionOfBimodules:
    """0 -> N -> N (+) M -> M -> 0 with right action [[mu_R^N, f_0], [0, mu_R^M]] and
    left coaction [[delta_L^N, f_1], [0, delta_L^M]]; other structures block diagonal."""
    if f.degree != 1:
        raise ValueError("extensions come from degree-1 cochains")
    M, N = f.source, f.target
    middle = direct_sum(N, M, actR_offdiag=f.components[0], coactL_offdiag=f.components[1])
    inc, proj = _standard_maps(N, M)
    e = ExtensionOfBimodules(N, M, middle, inc, proj)
    if check:
        bad = e.violations()
        if bad:
            raise ExtensionError(bad)
    return e


def split_extension(N: HopfBimodule, M: HopfBimodule) -> ExtensionOfBimodules:
    inc, proj = _standard_maps(N, M)
    return ExtensionOfBimodules(N, M, direct_sum(N, M), inc, proj)


def _quotient(S: SparseMatrix):
    """Quotient map Q and section s for the column span of S (full column rank): Q S = 0, Q s = 1."""
    f = S.field
    D = S.shape[0]
    K = kernel(S.T)  # free columns of S^T give the complement coordinates
    keep = K.free
    piv = np.setdiff1d(np.arange(D, dtype=np.int64), keep)
    if piv.size != S.shape[1]:
        raise ValueError("quotient: subspace generators are not independent")
    I = SparseMatrix.identity(f, D)
    E_keep, E_piv = I.select_rows(keep), I.select_rows(piv)
    Q = E_keep - S.select_rows(keep) @ inverse(S.select_rows(piv)) @ E_piv
    return Q, E_keep.T


def pushout(g, e: ExtensionOfBimodules, target: HopfBimodule | None = None) -> ExtensionOfBimodules:
    """g . e for a Hopf bimodule map g: left(e) -> N, as (N (+) E) / {(g(l), -i(l))}."""
    if isinstance(g, A4Cochain):
        if g.degree != 0:
            raise ValueError("pushout needs a degree-0 cochain")
        target = g.target
        g = g.components[0]
    if target is None:
        raise ValueError("pushout needs the target bimodule of g")
    L, E = e.left, e.middle
    if g.shape != (target.dim, L.dim):
        raise ValueError("pushout: g has the wrong shape")
    h = E.algebra
    f = h.field
    I = SparseMatrix.identity(f, h.dim)
    S = direct_sum(target, E)
    gen = vstack([g, e.inclusion.scale(-1)])
    Q, sec = _quotient(gen)
    middle = HopfBimodule(
        h, Q.shape[0],
        Q @ S.actL @ kron(I, sec),
        Q @ S.actR @ kron(sec, I),
        kron(I, Q) @ S.coactL @ sec,
        kron(Q, I) @ S.coactR @ sec,
        f"pushout({E.name})",
    )
    d = S.dim
    inc = Q @ SparseMatrix.identity(f, target.dim).embed((d, target.dim))
    proj = e.projection.embed((e.right.dim, d), col_offset=target.dim) @ sec
    return ExtensionOfBimodules(target, e.right, middle, inc, proj)


def _equivalence_system(e1: ExtensionOfBimodules, e2: ExtensionOfBimodules):
    """Linear system on vec(phi), phi: middle1 -> middle2, for Hopf bimodule maps
    with phi i1 = i2 and p2 phi = p1."""
    f = e1.middle.field
    d1, d2 = e1.middle.dim, e2.middle.dim
    hom = constraint_matrices(e1.middle, e2.middle, MODULE_CONSTRAINTS)
    A_inc = sandwich(f, None, e1.inclusion, d2, d1)
    A_proj = sandwich(f, e2.projection, None, d2, d1)
    A = vstack(hom + [A_inc, A_proj])
    zeros = sum(m.shape[0] for m in hom)
    b = np.concatenate([f.zeros(zeros), vec(e2.inclusion), vec(e1.projection)])
    return A, b


def equivalence_witness(e1: ExtensionOfBimodules, e2: ExtensionOfBimodules, seed: int = 0,
                        samples: int = DEFAULT_SAMPLES):
    """(verdict, phi): verdict True with an isomorphism phi, False, or None when undecided."""
    if e1.left != e2.left or e1.right != e2.right:
        raise ValueError("extensions must have the same ends")
    f = e1.middle.field
    d1, d2 = e1.middle.dim, e2.middle.dim
    if d1 != d2:
        return False, None
    A, b = _equivalence_system(e1, e2)
    x0 = solve(A, b)
    if x0 is None:
        return False, None
    phi = unvec(f, x0, d2, d1)
    if is_isomorphism(phi):
        return True, phi
    K = kernel(A)
    k = K.dim
    if k == 0:
        return False, None
    if not f.is_rational and k <= ENUMERATION_MAX_DIM and f.p**k <= ENUMERATION_CAP:
        for coeffs in itertools.product(range(f.p), repeat=k):
            x = f.normalize(x0 + K.basis.apply(np.asarray(coeffs, dtype=np.int64)))
            phi = unvec(f, x, d2, d1)
            if is_isomorphism(phi):
                return True, phi
        return False, None
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = x0 + K.basis.apply(f.random_array(rng, k))
        phi = unvec(f, f.normalize(x) if not f.is_rational else x, d2, d1)
        if is_isomorphism(phi):
            return True, phi
    return None, None


def extensions_equivalent(e1: ExtensionOfBimodules, e2: ExtensionOfBimodules, seed: int = 0,
                          samples: int = DEFAULT_SAMPLES):
    """True or False, or None when the solution family was too large to search exhaustively
    and sampling found no isomorphism."""
    return equivalence_witness(e1, e2, seed, samples)[0]


def yoneda_degree10_check(f: A4Cochain, g: A4Cochain, cross: bool = False):
    """g . E(f) against E(f u g) for a 1-cocycle f: M -> L and a Hopf bimodule map g: L -> N."""
    if f.degree != 1 or g.degree != 0:
        raise ValueError("the comparison is in degrees (1, 0)")
    left = pushout(g, extension_from_1cocycle(f))
    right = extension_from_1cocycle(cup(f, g, cross=cross))
    return extensions_equivalent(left, right)
