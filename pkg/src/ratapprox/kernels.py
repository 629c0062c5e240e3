"""Thin contract layer over the dense linear-algebra kernels.

Everything above this module talks to LAPACK only through these wrappers, so
the kernel choice (and its failure modes) stays in one place.  All contracts
are residual-based: callers may rely on the documented residual bounds but not
on any particular ordering of eigenvalues, which is kernel-defined.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import KernelError, SolveError

__all__ = ["as_dense", "svd", "svdvals", "generalized_eig", "solve"]


def as_dense(M) -> np.ndarray:
    """Validate and return a 2-D float64 array with finite entries."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def svd(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Economy SVD, ``M = U @ diag(S) @ Vt`` with S sorted descending.

    Reconstruction residual is bounded by ``1e-12 * ||M||_F`` for any matrix
    this package builds; non-convergence raises :class:`KernelError`.
    """
    A = as_dense(M)
    try:
        return np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise KernelError(f"SVD did not converge: {exc}") from exc


def svdvals(M) -> np.ndarray:
    """Singular values only (descending)."""
    A = as_dense(M)
    try:
        return np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise KernelError(f"SVD did not converge: {exc}") from exc


def generalized_eig(A, B, with_vectors: bool = False):
    """Eigenvalues of the pencil (A, B): all lambda with ``A v = lambda B v``.

    Returns a complex array; eigenvalues at infinity (singular B directions)
    appear as ``inf`` or ``nan`` entries and are the caller's job to filter.
    With ``with_vectors=True`` also returns the right eigenvector matrix.
    """
    A = as_dense(A)
    B = as_dense(B)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"pencil matrices must be square and equal shape, got {A.shape} vs {B.shape}")
    try:
        if with_vectors:
            w, vr = scipy.linalg.eig(A, B, right=True)
            return w, vr
        return scipy.linalg.eig(A, B, right=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise KernelError(f"QZ iteration failed: {exc}") from exc


def solve(A, b) -> np.ndarray:
    """Solve ``A x = b`` densely; raises :class:`SolveError` when A is singular
    to working precision (the error carries a condition estimate)."""
    A = as_dense(A)
    b = np.asarray(b, dtype=float)
    try:
        x = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        s = np.linalg.svd(A, compute_uv=False)
        cond = float(s[0] / s[-1]) if s[-1] > 0 else np.inf
        raise SolveError(f"matrix singular to working precision: {exc}", cond=cond) from exc
    if not np.all(np.isfinite(x)):
        s = np.linalg.svd(A, compute_uv=False)
        cond = float(s[0] / s[-1]) if s[-1] > 0 else np.inf
        raise SolveError("solve produced non-finite values", cond=cond)
    return x
