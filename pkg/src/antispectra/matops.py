"""Anticommutators, their higher-order cousins, and trace-power moments."""

from itertools import permutations

import numpy as np
import scipy.linalg


def anticommutator(A, B):
    """{A, B} = AB + BA, symmetrized exactly by averaging with its transpose.

    The product of two symmetric matrices picks up O(eps) asymmetry in
    floating point; the averaging kills it so eigensolvers downstream see
    an exactly symmetric input.
    """
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    C = A @ B + B @ A
    return (C + C.T) / 2.0


def ell_anticommutator(matrices):
    """Sum of products over all orderings of the given matrices.

    With two inputs this is {A, B}; with one it is just the input.  The
    result is symmetric because the transpose of each product is the
    reversed ordering, which the sum also contains.
    """
    mats = list(matrices)
    if not mats:
        raise ValueError("need at least one matrix")
    shape = mats[0].shape
    for m in mats[1:]:
        if m.shape != shape:
            raise ValueError(f"dimension mismatch: {m.shape} vs {shape}")
    total = np.zeros(shape)
    for order in permutations(range(len(mats))):
        prod = mats[order[0]]
        for idx in order[1:]:
            prod = prod @ mats[idx]
        total += prod
    return (total + total.T) / 2.0


def eigenvalues(M):
    """All eigenvalues of a symmetric matrix, ascending.

    Delegates to LAPACK's dense symmetric solver (tridiagonalize, then
    implicitly shifted iteration).
    """
    if not np.all(np.isfinite(M)):
        raise ArithmeticError("matrix has non-finite entries")
    return scipy.linalg.eigvalsh(M)


def trace_power_moment(M, m, method="auto"):
    """Tr(M^m) / N^(m+1), the normalization under which moments converge.

    method 'power' multiplies matrices directly (kept for m <= 12),
    'eigen' sums eigenvalue powers, 'auto' picks power for small m.
    """
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    N = M.shape[0]
    if method == "auto":
        method = "power" if m <= 12 else "eigen"
    if method == "power":
        P = M
        for _ in range(m - 1):
            P = P @ M
        tr = np.trace(P)
    elif method == "eigen":
        tr = float(np.sum(eigenvalues(M) ** m))
    else:
        raise ValueError(f"unknown method {method!r}")
    return tr / N ** (m + 1)
