"""Greedy corner search by successive projection.

Given rows that live (near) a simplex spanned by r of them, the search
repeatedly takes the row of largest residual norm as the next corner and
projects every row onto the orthogonal complement of that corner's
residual direction.  Because the Euclidean norm is convex, the maximum
over points of a simplex is attained at a vertex, so on exact simplex
data the procedure returns the vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, RankDeficiencyError, ShapeError

_VANISH_TOL = 1e-12
_REORTH_EVERY = 8


@dataclass(frozen=True)
class CornerSet:
    """Rows selected as simplex corners.

    Attributes
    ----------
    indices : ndarray of shape (r,)
        0-based row indices in selection order (residual-norm
        descending, ties broken by lowest index).
    corner_matrix : ndarray of shape (r, n)
        The selected rows, copied verbatim from the input.
    """

    indices: np.ndarray
    corner_matrix: np.ndarray

    @property
    def r(self) -> int:
        return self.indices.shape[0]


def successive_projection(y: np.ndarray, r: int) -> CornerSet:
    """Select r corner rows of y by successive projection.

    Parameters
    ----------
    y : ndarray of shape (m, n)
        Data rows.
    r : int
        Number of corners, 1 <= r <= min(m, n).

    Returns
    -------
    CornerSet

    Raises
    ------
    ParameterError
        If r is out of range.
    RankDeficiencyError
        If every residual row norm drops below 1e-12 before r corners
        are found; the error records how many were found.
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 2:
        raise ShapeError(f"need a 2-d matrix, got shape {y.shape}")
    m, n = y.shape
    if not 1 <= r <= min(m, n):
        raise ParameterError(f"r must lie in [1, {min(m, n)}], got {r}")

    resid = y.copy()
    directions: list[np.ndarray] = []
    indices = np.empty(r, dtype=np.int64)
    for step in range(r):
        norms = np.sqrt(np.einsum("ij,ij->i", resid, resid))
        if norms.max() < _VANISH_TOL:
            raise RankDeficiencyError(requested=r, found=step)
        # np.argmax takes the first maximum, i.e. the lowest row index.
        best = int(np.argmax(norms))
        indices[step] = best
        u = resid[best].copy()
        coef = resid @ u / (u @ u)
        resid -= np.outer(coef, u)
        directions.append(u / np.linalg.norm(u))
        # Periodic re-projection against all chosen directions keeps the
        # residual numerically orthogonal over long runs.
        if (step + 1) % _REORTH_EVERY == 0:
            for d in directions:
                resid -= np.outer(resid @ d, d)

    return CornerSet(indices=indices, corner_matrix=y[indices].copy())
