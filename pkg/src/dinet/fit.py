"""Spectral estimation of row memberships and column labels.

Both fitters share one row branch: take the leading k_r singular
triplets of the (adjacency or population) matrix, locate k_r corner rows
of the left factor by successive projection, express every row in the
corner basis, clip negatives and renormalize rows to the simplex.  They
differ only in the column branch:

* fit_ona    clusters the rows of the right factor directly,
* fit_odcna  scales each right-factor row to unit norm first, which
             removes per-column degree variation, then clusters.

Run on the population matrix itself (the noiseless limit), both recover
the true parameters up to community relabeling; that exactness is
exercised by the test suite.  All steps are deterministic given the
seed, and the row branch does not consume randomness at all, so both
fitters return bit-identical membership estimates for the same input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCornersError, ParameterError
from .kmeans import kmeans_rows
from .linalg import SpectralTriple, row_normalize, top_k_svd
from .model import ColumnLabels, RowMembership
from .seeds import PURPOSE_KMEANS, derive_seed
from .sp import CornerSet, successive_projection

_COND_LIMIT = 1e12


@dataclass(frozen=True)
class DiagnosticBundle:
    """Numerical side information from one fit.

    Attributes
    ----------
    sigma : ndarray of shape (k_r,)
        Retained singular values, non-increasing.
    delta_c_hat : float
        Smallest pairwise distance between estimated cluster centers
        (inf when there is a single cluster).
    clipped_count : int
        Number of negative membership coordinates zeroed before row
        renormalization.
    zero_rows : ndarray
        Row-node indices whose recovered membership vanished and was
        replaced by the one-hot of the nearest corner.
    zero_columns : ndarray
        Column-node indices whose right-factor row was numerically zero
        (isolated columns); empty for fit_ona.
    kmeans_cost : float
        Final clustering cost of the winning restart.
    kmeans_restarts : int
        Restarts executed by the clustering step.
    """

    sigma: np.ndarray
    delta_c_hat: float
    clipped_count: int
    zero_rows: np.ndarray
    zero_columns: np.ndarray
    kmeans_cost: float
    kmeans_restarts: int


@dataclass(frozen=True)
class FitResult:
    """Estimates and intermediates from one fit.

    Attributes
    ----------
    pi_r_hat : RowMembership
        Estimated row memberships.
    labels_hat : ColumnLabels
        Estimated column labels (1-based, defined up to relabeling).
    corners : CornerSet
        Corner rows selected in the left singular factor.
    spectral : SpectralTriple
        The truncated SVD the estimate is built from.
    diagnostics : DiagnosticBundle
    """

    pi_r_hat: RowMembership
    labels_hat: ColumnLabels
    corners: CornerSet
    spectral: SpectralTriple
    diagnostics: DiagnosticBundle


def recover_memberships(u_r: np.ndarray, corners: CornerSet):
    """Express rows of u_r in the corner basis and project to the simplex.

    Solves Y = u_r B' (B B')^{-1} for the corner matrix B, zeroes
    negative coordinates, and renormalizes each row to sum 1.  A row
    that is entirely zero after clipping gets the one-hot vector of its
    nearest corner (ties to the lowest corner index).

    Parameters
    ----------
    u_r : ndarray of shape (n_r, k)
    corners : CornerSet
        k corners selected from the rows of u_r.

    Returns
    -------
    (RowMembership, int, ndarray)
        Memberships, the number of clipped coordinates, and the indices
        of rows that needed the nearest-corner fallback.

    Raises
    ------
    DegenerateCornersError
        If the corner Gram matrix has condition number above 1e12.
    """
    u_r = np.asarray(u_r, dtype=float)
    b = corners.corner_matrix
    gram = b @ b.T
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise DegenerateCornersError(cond=float(cond))
    y = np.linalg.solve(gram, b @ u_r.T).T
    clipped = int(np.count_nonzero(y < 0))
    y = np.maximum(y, 0.0)
    sums = y.sum(axis=1)
    dead = np.flatnonzero(sums == 0.0)
    if dead.size:
        diff = u_r[dead, None, :] - b[None, :, :]
        nearest = np.argmin(np.einsum("ikd,ikd->ik", diff, diff), axis=1)
        y[dead] = 0.0
        y[dead, nearest] = 1.0
        sums[dead] = 1.0
    y = y / sums[:, None]
    return RowMembership(matrix=y), clipped, dead


def _min_center_gap(centers: np.ndarray) -> float:
    k = centers.shape[0]
    if k < 2:
        return float("inf")
    diff = centers[:, None, :] - centers[None, :, :]
    d = np.sqrt(np.einsum("ijd,ijd->ij", diff, diff))
    return float(d[np.triu_indices(k, 1)].min())


def _check_sizes(shape: tuple[int, int], k_r: int, k_c: int) -> None:
    n_r, n_c = shape
    if k_r < 1 or k_r > min(n_r, n_c):
        raise ParameterError(f"k_r must lie in [1, {min(n_r, n_c)}], got {k_r}")
    if k_r > k_c:
        raise ParameterError(
            f"the model requires k_r <= k_c, got k_r={k_r} > k_c={k_c}")
    if k_c > n_c:
        raise ParameterError(f"k_c must be at most n_c={n_c}, got {k_c}")


def _row_branch(a, k_r: int):
    spectral = top_k_svd(a, k_r)
    corners = successive_projection(spectral.u_r, k_r)
    pi_hat, clipped, dead = recover_memberships(spectral.u_r, corners)
    return spectral, corners, pi_hat, clipped, dead


def fit_ona(a, k_r: int, k_c: int, seed: int,
            restarts: int = 20, max_iters: int = 300) -> FitResult:
    """Fit the flat model: corner-based rows, direct clustering of columns.

    Parameters
    ----------
    a : BiAdjacency, PopulationMatrix, ndarray or scipy sparse matrix
        Observed adjacency, or the population matrix for the noiseless
        ideal fit; both go through the identical code path.
    k_r : int
        Number of row communities.
    k_c : int
        Number of column communities, k_r <= k_c <= n_c.
    seed : int
        Master seed; only the clustering step consumes randomness,
        through a stream derived from it.
    restarts, max_iters : int, optional
        Clustering budget, passed through to kmeans_rows.

    Returns
    -------
    FitResult

    Raises
    ------
    ParameterError
        On size constraint violations, including k_r > k_c.
    DegenerateCornersError
        If the selected corners are numerically collinear.
    """
    shape = tuple(a.shape)
    _check_sizes(shape, k_r, k_c)
    spectral, corners, pi_hat, clipped, dead = _row_branch(a, k_r)
    km = kmeans_rows(spectral.u_c, k_c, seed=derive_seed(seed, PURPOSE_KMEANS),
                     restarts=restarts, max_iters=max_iters)
    diag = DiagnosticBundle(
        sigma=spectral.lam, delta_c_hat=_min_center_gap(km.centers),
        clipped_count=clipped, zero_rows=dead,
        zero_columns=np.empty(0, dtype=np.int64),
        kmeans_cost=km.cost, kmeans_restarts=km.restarts_used)
    return FitResult(pi_r_hat=pi_hat, labels_hat=km.labels,
                     corners=corners, spectral=spectral, diagnostics=diag)


def fit_odcna(a, k_r: int, k_c: int, seed: int,
              restarts: int = 20, max_iters: int = 300) -> FitResult:
    """Fit the column-degree model: like fit_ona with normalized columns.

    The rows of the right singular factor are scaled to unit norm before
    clustering, which cancels per-column degree weights.  Numerically
    zero rows (isolated column nodes) are excluded from clustering and
    afterwards assigned the label of the nearest center in the
    unnormalized space, ties to the lowest label.

    Parameters and errors are as in fit_ona.
    """
    shape = tuple(a.shape)
    _check_sizes(shape, k_r, k_c)
    spectral, corners, pi_hat, clipped, dead = _row_branch(a, k_r)

    u_c_star, zero_cols = row_normalize(spectral.u_c)
    n_c = u_c_star.shape[0]
    if zero_cols.size:
        keep = np.setdiff1d(np.arange(n_c), zero_cols)
        if keep.size < k_c:
            raise ParameterError(
                f"only {keep.size} column nodes have signal but k_c={k_c}")
        km = kmeans_rows(u_c_star[keep], k_c, seed=derive_seed(seed, PURPOSE_KMEANS),
                         restarts=restarts, max_iters=max_iters)
        labels = np.empty(n_c, dtype=np.int64)
        labels[keep] = km.labels.labels
        diff = spectral.u_c[zero_cols, None, :] - km.centers[None, :, :]
        nearest = np.argmin(np.einsum("ikd,ikd->ik", diff, diff), axis=1)
        labels[zero_cols] = nearest + 1
        wrapped = ColumnLabels(labels=labels, k_c=k_c)
    else:
        km = kmeans_rows(u_c_star, k_c, seed=derive_seed(seed, PURPOSE_KMEANS),
                         restarts=restarts, max_iters=max_iters)
        wrapped = km.labels

    diag = DiagnosticBundle(
        sigma=spectral.lam, delta_c_hat=_min_center_gap(km.centers),
        clipped_count=clipped, zero_rows=dead, zero_columns=zero_cols,
        kmeans_cost=km.cost, kmeans_restarts=km.restarts_used)
    return FitResult(pi_r_hat=pi_hat, labels_hat=wrapped,
                     corners=corners, spectral=spectral, diagnostics=diag)
