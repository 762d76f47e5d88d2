"""Deterministic truncated singular value decomposition.

top_k_svd wraps two backends behind one contract: matrices whose smaller
dimension is at most 512 go through a full dense SVD that is then
truncated, larger ones through a Lanczos solver on the sparse matrix.
Output order and signs are canonicalized so the same input always yields
bit-identical factors: singular values are non-increasing, and in every
column of the left factor the entry of largest magnitude is positive,
with the right factor flipped jointly to preserve the product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sparse
import scipy.sparse.linalg as splinalg

from .errors import ConvergenceError, ParameterError, ShapeError

_DENSE_MAX = 512        # full SVD up to this smaller dimension, Lanczos beyond
_LANCZOS_TOL = 1e-10
_LANCZOS_MAXITER = 1000
_ZERO_ROW_TOL = 1e-12


@dataclass(frozen=True)
class SpectralTriple:
    """Leading singular triplets of a matrix.

    Attributes
    ----------
    u_r : ndarray of shape (n_r, k)
        Left singular vectors, orthonormal columns.
    lam : ndarray of shape (k,)
        Singular values, non-increasing and nonnegative.
    u_c : ndarray of shape (n_c, k)
        Right singular vectors, orthonormal columns.
    """

    u_r: np.ndarray
    lam: np.ndarray
    u_c: np.ndarray

    @property
    def k(self) -> int:
        return self.lam.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Rank-k matrix u_r @ diag(lam) @ u_c'."""
        return (self.u_r * self.lam[None, :]) @ self.u_c.T


def _coerce_matrix(m):
    # Accept ndarray, scipy sparse, or any object exposing .to_sparse()
    # (BiAdjacency) or .omega (PopulationMatrix).
    if hasattr(m, "to_sparse"):
        return m.to_sparse()
    if hasattr(m, "omega"):
        return np.asarray(m.omega, dtype=float)
    if sparse.issparse(m):
        return m.tocsr()
    out = np.asarray(m, dtype=float)
    if out.ndim != 2:
        raise ShapeError(f"need a 2-d matrix, got shape {out.shape}")
    return out


def _canonicalize(u_r: np.ndarray, lam: np.ndarray, u_c: np.ndarray):
    order = np.argsort(-lam, kind="stable")
    u_r, lam, u_c = u_r[:, order], lam[order], u_c[:, order]
    # Sign convention: largest-magnitude entry of each left column is
    # positive; flip the right column jointly to keep the product.
    for j in range(lam.shape[0]):
        i = int(np.argmax(np.abs(u_r[:, j])))
        if u_r[i, j] < 0:
            u_r[:, j] = -u_r[:, j]
            u_c[:, j] = -u_c[:, j]
    return np.ascontiguousarray(u_r), np.ascontiguousarray(lam), np.ascontiguousarray(u_c)


def top_k_svd(m, k: int) -> SpectralTriple:
    """Leading k singular triplets of a real matrix.

    Parameters
    ----------
    m : ndarray, scipy sparse matrix, BiAdjacency or PopulationMatrix
        Matrix of shape (n_r, n_c).
    k : int
        Number of triplets, 1 <= k <= min(n_r, n_c).

    Returns
    -------
    SpectralTriple
        Factors with non-increasing singular values and the sign
        convention described in the module docstring.  The result is
        bit-deterministic for identical input.

    Raises
    ------
    ParameterError
        If k is out of range.
    ConvergenceError
        If the Lanczos solver fails to converge on a large matrix.
    """
    mat = _coerce_matrix(m)
    n_r, n_c = mat.shape
    if not 1 <= k <= min(n_r, n_c):
        raise ParameterError(f"k must lie in [1, {min(n_r, n_c)}], got {k}")

    if min(n_r, n_c) <= _DENSE_MAX:
        dense = mat.toarray() if sparse.issparse(mat) else mat
        u, s, vt = np.linalg.svd(dense, full_matrices=False)
        u_r, lam, u_c = u[:, :k], s[:k], vt[:k, :].T
    else:
        # Fixed start vector keeps the Lanczos iteration reproducible.
        v0 = np.random.default_rng(0x5D1E9F3A).standard_normal(min(n_r, n_c))
        try:
            u, s, vt = splinalg.svds(
                mat, k=k, tol=_LANCZOS_TOL, maxiter=_LANCZOS_MAXITER, v0=v0)
        except splinalg.ArpackNoConvergence as exc:
            raise ConvergenceError(
                f"Lanczos SVD converged only {len(exc.eigenvalues)} of {k} triplets",
                _LANCZOS_MAXITER) from exc
        u_r, lam, u_c = u, s, vt.T

    return SpectralTriple(*_canonicalize(u_r.copy(), lam.copy(), u_c.copy()))


def row_normalize(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scale each row to unit Euclidean norm, leaving zero rows alone.

    Parameters
    ----------
    u : ndarray of shape (n, k)

    Returns
    -------
    (ndarray, ndarray)
        The normalized copy, and the indices of rows whose norm fell
        below 1e-12 and were left unchanged.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim != 2:
        raise ShapeError(f"need a 2-d matrix, got shape {u.shape}")
    norms = np.sqrt(np.einsum("ij,ij->i", u, u))
    zero = norms < _ZERO_ROW_TOL
    out = u.copy()
    nz = ~zero
    out[nz] = out[nz] / norms[nz, None]
    return out, np.flatnonzero(zero)
