"""Deterministic k-means on matrix rows.

Lloyd iterations with squared-distance-weighted (k-means++) seeding and
a fixed number of restarts.  Everything that could introduce run-to-run
variation is pinned: per-restart RNG streams are derived from the caller
seed, assignment ties go to the lowest cluster label, the best restart
is the lowest-cost one with ties broken by lowest restart index, and an
empty cluster is repaired by reseeding its center at the data point
farthest from the stale center.  Two calls with equal arguments return
bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError
from .model import ColumnLabels
from .seeds import PURPOSE_RESTART, derive_seed

_REL_COST_TOL = 1e-12


@dataclass(frozen=True)
class KMeansResult:
    """Outcome of a k-means run.

    Attributes
    ----------
    labels : ColumnLabels
        Cluster assignment per row, 1-based.
    centers : ndarray of shape (k, d)
        Final cluster centers of the winning restart.
    cost : float
        Sum over rows of the squared distance to the assigned center.
    restarts_used : int
        Restarts actually executed (fewer than requested only when an
        earlier restart already reached cost 0, which no later restart
        can beat).
    best_restart : int
        Index of the winning restart.
    """

    labels: ColumnLabels
    centers: np.ndarray
    cost: float
    restarts_used: int
    best_restart: int


def _plus_plus_seed(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[int(rng.integers(n))]
    d2 = np.einsum("ij,ij->i", x - centers[0], x - centers[0])
    for j in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            # Every point coincides with a chosen center; any choice works.
            idx = int(rng.integers(n))
        centers[j] = x[idx]
        step = np.einsum("ij,ij->i", x - centers[j], x - centers[j])
        d2 = np.minimum(d2, step)
    return centers


def _assign(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - centers[None, :, :]
    d2 = np.einsum("nkd,nkd->nk", diff, diff)
    # argmin takes the first minimum: ties go to the lowest label.
    return np.argmin(d2, axis=1)


def _cost(x: np.ndarray, centers: np.ndarray, labels: np.ndarray) -> float:
    diff = x - centers[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def _lloyd(x: np.ndarray, centers: np.ndarray, max_iters: int):
    labels = None
    cost = np.inf
    for _ in range(max_iters):
        new_labels = _assign(x, centers)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        taken: list[int] = []
        for j in range(centers.shape[0]):
            members = labels == j
            if members.any():
                centers[j] = x[members].mean(axis=0)
            else:
                # Reseed an empty cluster at the point farthest from its
                # stale center; points already used for repair in this
                # pass are excluded so two empty clusters never collide.
                diff = x - centers[j]
                dist = np.einsum("ij,ij->i", diff, diff)
                if taken:
                    dist = dist.copy()
                    dist[taken] = -1.0
                far = int(np.argmax(dist))
                centers[j] = x[far]
                taken.append(far)
        new_cost = _cost(x, centers, labels)
        if np.isfinite(cost) and cost - new_cost <= _REL_COST_TOL * max(cost, 1e-300):
            cost = new_cost
            break
        cost = new_cost
    if labels is None:
        labels = _assign(x, centers)
        cost = _cost(x, centers, labels)
    return labels, centers, cost


def kmeans_rows(x: np.ndarray, k_clusters: int, seed: int,
                restarts: int = 20, max_iters: int = 300) -> KMeansResult:
    """Cluster the rows of x into k_clusters groups.

    Parameters
    ----------
    x : ndarray of shape (n, d)
        Data rows.
    k_clusters : int
        Number of clusters, 1 <= k_clusters <= n.
    seed : int
        Master seed; restart i draws from its own derived stream, so
        the outcome does not depend on execution order.
    restarts : int, optional
        Independent seedings to try (default 20).  The lowest-cost run
        wins; ties go to the lowest restart index.
    max_iters : int, optional
        Lloyd iteration cap per restart (default 300).  A restart also
        stops when the assignment repeats or the relative cost
        improvement drops below 1e-12.

    Returns
    -------
    KMeansResult

    Raises
    ------
    ParameterError
        If k_clusters, restarts or max_iters are out of range.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ShapeError(f"need a nonempty 2-d matrix, got shape {x.shape}")
    n = x.shape[0]
    if not 1 <= k_clusters <= n:
        raise ParameterError(f"k_clusters must lie in [1, {n}], got {k_clusters}")
    if restarts < 1:
        raise ParameterError(f"restarts must be >= 1, got {restarts}")
    if max_iters < 1:
        raise ParameterError(f"max_iters must be >= 1, got {max_iters}")

    best: tuple[np.ndarray, np.ndarray, float] | None = None
    best_idx = -1
    executed = 0
    for i in range(restarts):
        rng = np.random.default_rng(derive_seed(seed, PURPOSE_RESTART, i))
        centers0 = _plus_plus_seed(x, k_clusters, rng)
        labels, centers, cost = _lloyd(x, centers0, max_iters)
        executed += 1
        if best is None or cost < best[2]:
            best = (labels, centers, cost)
            best_idx = i
        if best[2] == 0.0:
            # No later restart can improve on an exact zero.
            break

    labels, centers, cost = best
    wrapped = ColumnLabels(labels=labels + 1, k_c=k_clusters)
    return KMeansResult(labels=wrapped, centers=centers, cost=cost,
                        restarts_used=executed, best_restart=best_idx)
