"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the library's own code paths:
singular values come from a symmetric eigendecomposition of the Gram
matrix, clustering optima from exhaustive partition enumeration, and
permutation alignments from exhaustive permutation enumeration.  Library
results are checked against these throughout.
"""

from __future__ import annotations

import itertools

import numpy as np

from dinet import ColumnLabels, ConnectivityMatrix, RowMembership


def random_onm_params(rng: np.random.Generator, n_r: int, n_c: int,
                      k_r: int, k_c: int):
    """Draw a random valid parameter set: full-rank P, pure nodes, all
    column communities occupied.  Diagonally dominant connectivity keeps
    the geometry well separated, as in the planted designs."""
    for _ in range(100):
        p_tilde = rng.uniform(0.05, 0.35, size=(k_r, k_c))
        p_tilde[np.arange(k_r), np.arange(k_r)] = rng.uniform(0.7, 1.0, size=k_r)
        p_tilde = p_tilde / p_tilde.max()
        if np.linalg.matrix_rank(p_tilde) == k_r:
            break
    rho = float(rng.uniform(0.3, 1.0))
    p = ConnectivityMatrix(p_tilde=p_tilde, rho=rho)

    # At least two pure nodes per community, remaining rows random mixes.
    mat = np.zeros((n_r, k_r))
    pure_each = 2
    for k in range(k_r):
        mat[k * pure_each:(k + 1) * pure_each, k] = 1.0
    n_mixed = n_r - pure_each * k_r
    mixed = rng.dirichlet(np.ones(k_r), size=n_mixed)
    mat[pure_each * k_r:] = mixed
    pi_r = RowMembership(matrix=mat)

    while True:
        lab = rng.integers(1, k_c + 1, size=n_c)
        if np.bincount(lab, minlength=k_c + 1)[1:].min() > 0:
            break
    labels = ColumnLabels(labels=lab, k_c=k_c)
    return pi_r, labels, p


def gram_singular_values(m: np.ndarray, k: int) -> np.ndarray:
    """Top-k singular values via eigendecomposition of the Gram matrix."""
    m = np.asarray(m, dtype=float)
    if m.shape[0] <= m.shape[1]:
        gram = m @ m.T
    else:
        gram = m.T @ m
    evals = np.linalg.eigh(gram)[0]
    evals = np.clip(evals, 0.0, None)
    return np.sqrt(evals[::-1][:k])


def brute_force_align(cost: np.ndarray):
    """Exhaustive minimum-cost alignment over all permutations.

    Totals accumulate left to right in true-community order, and only a
    strictly smaller total replaces the incumbent, so the first-found
    (lexicographically smallest) optimal permutation wins ties.
    """
    k = cost.shape[0]
    best_total, best_perm = None, None
    for perm in itertools.permutations(range(k)):
        total = 0.0
        for kk in range(k):
            total += cost[kk, perm[kk]]
        if best_total is None or total < best_total:
            best_total, best_perm = total, perm
    return best_total, best_perm


def pair_cost_matrix(est: np.ndarray, true: np.ndarray) -> np.ndarray:
    """cost[k, j] = L1 distance between estimated column j and true column k."""
    k = true.shape[1]
    cost = np.empty((k, k))
    for kk in range(k):
        for jj in range(k):
            cost[kk, jj] = np.abs(est[:, jj] - true[:, kk]).sum()
    return cost


def _restricted_growth_strings(n: int, max_blocks: int):
    """All set partitions of n items into at most max_blocks blocks,
    encoded as canonical label vectors (first item 0, each new label one
    above the running maximum)."""
    out = []

    def extend(prefix, top):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for lab in range(min(top + 1, max_blocks - 1) + 1):
            prefix.append(lab)
            extend(prefix, max(top, lab))
            prefix.pop()

    extend([0], 0)
    return out


def exhaustive_kmeans_cost(x: np.ndarray, k: int) -> float:
    """Global k-means optimum by enumerating all partitions into at most
    k blocks; unused centers cost nothing."""
    n = x.shape[0]
    best = np.inf
    for assign in _restricted_growth_strings(n, k):
        labels = np.asarray(assign)
        cost = 0.0
        for b in range(labels.max() + 1):
            block = x[labels == b]
            center = block.mean(axis=0)
            cost += float(((block - center) ** 2).sum())
        if cost < best:
            best = cost
    return best
