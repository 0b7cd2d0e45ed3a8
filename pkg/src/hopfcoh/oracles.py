"""Independent reference computations used to cross-check the engines."""

from __future__ import annotations

from .complexes import CochainComplex, cohomology_dims
from .field import as_field
from .hopf import cyclic_group_table
from .linalg import kernel, solve
from .sparse import SparseMatrix, vstack


def cyclic_group_cohomology(m: int, field, n_max: int) -> list[int]:
    """dim H^n(Z/m, k) for n = 0..n_max from the periodic resolution
    ... -> kG --N--> kG --(g-1)--> kG -> k with trivial coefficients."""
    f = as_field(field)
    table = cyclic_group_table(m)

    def right_mult(g: int) -> SparseMatrix:
        return SparseMatrix(f, (m, m), [table[h][g] for h in range(m)], list(range(m)), [1] * m)

    eye = SparseMatrix.identity(f, m)
    T = right_mult(1) - eye
    norm = SparseMatrix.zeros(f, (m, m))
    for g in range(m):
        norm = norm + right_mult(g)
    # Hom_G(kG, k): row vectors phi with phi (left mult by g) = phi for all g
    left = [SparseMatrix(f, (m, m), [table[g][h] for h in range(m)], list(range(m)), [1] * m) for g in range(m)]
    inv = kernel(vstack([(L - eye).T for L in left]))  # columns are phi^T
    B = inv.basis
    ds = []
    for n in range(n_max + 1):
        boundary = T if n % 2 == 0 else norm  # P_{n+1} -> P_n
        cols = []
        for j in range(B.shape[1]):
            image = (boundary.T @ B.select_cols([j])).to_dense().reshape(-1)  # (phi o boundary)^T
            x = solve(B, image)
            cols.append(x)
        ds.append(SparseMatrix.from_columns(f, B.shape[1], cols))
    C = CochainComplex(f, [B.shape[1]] * (n_max + 2), ds)
    return cohomology_dims(C, n_max)
