"""Permutation-invariant recovery error measures.

Community estimates are only defined up to a relabeling, so every
measure here minimizes over permutations aligning estimated communities
with true ones.  The membership and label measures find the exact
optimum by solving a linear assignment problem on a K x K cost matrix;
when several permutations tie, the lexicographically smallest one (as
the tuple of estimated indices aligned to true communities 1, 2, ...)
is reported so results are reproducible.

Conventions: a returned permutation perm satisfies "estimated community
perm[k] corresponds to true community k" with 0-based indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ParameterError, ShapeError
from .model import ColumnLabels

_FC_MAX_K = 10


@dataclass(frozen=True)
class ErrorReport:
    """All recovery errors for one (estimate, truth) pair.

    Attributes
    ----------
    mhamm : float
        Mixed-membership Hamming error of the row estimate, in [0, 2].
    hamm : float
        Hamming error of the column labels, in [0, 2]; equals twice the
        misclassified fraction under the best alignment.
    f_c : float
        Worst-community relative error of the column partition.
    best_row_perm, best_col_perm : tuple of int
        Minimizing alignments for mhamm and hamm (0-based, estimated
        community best_row_perm[k] matches true community k).
    """

    mhamm: float
    hamm: float
    f_c: float
    best_row_perm: tuple[int, ...]
    best_col_perm: tuple[int, ...]


def _as_membership(x) -> np.ndarray:
    if isinstance(x, ColumnLabels):
        return x.one_hot
    m = np.asarray(getattr(x, "matrix", x), dtype=float)
    if m.ndim != 2:
        raise ShapeError(f"membership must be 2-d, got shape {m.shape}")
    return m


def _label_vector(x) -> np.ndarray:
    lab = np.asarray(getattr(x, "labels", x))
    if lab.ndim != 1:
        raise ShapeError(f"labels must be a vector, got shape {lab.shape}")
    return lab.astype(np.int64)


def _pair_costs(est: np.ndarray, true: np.ndarray) -> np.ndarray:
    # cost[k, j] = entrywise L1 distance between estimated column j and
    # true column k.  Each entry is a plain 1-d sum so an independent
    # reimplementation of the same formula reproduces it bit for bit.
    k = true.shape[1]
    cost = np.empty((k, k))
    for kk in range(k):
        for jj in range(k):
            cost[kk, jj] = np.abs(est[:, jj] - true[:, kk]).sum()
    return cost


def _chain_total(cost: np.ndarray, perm: list[int], upto: int | None = None) -> float:
    # Left-to-right accumulation in true-community order; this fixed
    # order makes totals of identical permutations bit-identical.
    total = 0.0
    stop = len(perm) if upto is None else upto
    for k in range(stop):
        total += cost[k, perm[k]]
    return total


def _lex_min_assignment(cost: np.ndarray) -> tuple[tuple[int, ...], float]:
    """Exact minimum-cost alignment, lexicographically smallest on ties.

    cost[k, j] is the price of matching estimated community j to true
    community k.  The optimum is found by linear assignment; a greedy
    pass then rebuilds the permutation one true community at a time,
    keeping at each step the smallest estimated index that still allows
    an optimal completion.
    """
    k_tot = cost.shape[0]
    perm: list[int] = []
    remaining = list(range(k_tot))
    for k in range(k_tot):
        best_total = None
        best_j = None
        for j in remaining:
            trial = perm + [j]
            left = [c for c in remaining if c != j]
            sub = cost[np.ix_(range(k + 1, k_tot), left)]
            if sub.size:
                _, cols = linear_sum_assignment(sub)
                trial = trial + [left[c] for c in cols]
            total = _chain_total(cost, trial)
            if best_total is None or total < best_total:
                best_total, best_j = total, j
        perm.append(best_j)
        remaining.remove(best_j)
    return tuple(perm), _chain_total(cost, perm)


def mhamm(pi_hat, pi_true) -> tuple[float, tuple[int, ...]]:
    """Mixed-membership Hamming error between two membership matrices.

    The entrywise L1 distance between the estimate (columns permuted)
    and the truth, minimized exactly over permutations and divided by
    the number of rows.  Lies in [0, 2].

    Parameters
    ----------
    pi_hat, pi_true : RowMembership or ndarray of shape (n, k)

    Returns
    -------
    (float, tuple of int)
        The error and the minimizing permutation (estimated community
        perm[k] aligned with true community k, 0-based).
    """
    est = _as_membership(pi_hat)
    true = _as_membership(pi_true)
    if est.shape != true.shape:
        raise ShapeError(f"shape mismatch: estimate {est.shape} vs truth {true.shape}")
    cost = _pair_costs(est, true)
    perm, total = _lex_min_assignment(cost)
    return total / est.shape[0], perm


def hamm(labels_hat, labels_true, k_c: int = 0) -> tuple[float, tuple[int, ...]]:
    """Hamming error between two hard label vectors.

    The label vectors are compared as one-hot membership matrices with
    the same permutation-minimized L1 distance as mhamm, divided by the
    number of nodes.  Equals twice the misclassified fraction under the
    best alignment; symmetric in its arguments.

    Parameters
    ----------
    labels_hat, labels_true : ColumnLabels or integer ndarray of shape (n,)
    k_c : int, optional
        Number of communities; defaults to the largest label seen.

    Returns
    -------
    (float, tuple of int)
        The error and the minimizing permutation.
    """
    lh = _label_vector(labels_hat)
    lt = _label_vector(labels_true)
    if lh.shape != lt.shape:
        raise ShapeError(f"length mismatch: estimate {lh.shape} vs truth {lt.shape}")
    k = int(k_c) if k_c else int(max(lh.max(), lt.max()))
    est = ColumnLabels(labels=lh, k_c=k).one_hot
    true = ColumnLabels(labels=lt, k_c=k).one_hot
    cost = _pair_costs(est, true)
    perm, total = _lex_min_assignment(cost)
    return total / lh.shape[0], perm


def f_c_error(labels_hat, labels_true, k_c: int = 0) -> float:
    """Worst-community relative set difference between two partitions.

    For an alignment of estimated to true communities, each true
    community k is charged its misses plus intruders, relative to its
    size; the measure is the best over alignments of the worst community
    charge.  The alignment search is exhaustive, so the number of
    communities is capped at 10.

    Parameters
    ----------
    labels_hat, labels_true : ColumnLabels or integer ndarray of shape (n,)
    k_c : int, optional
        Number of communities; defaults to the largest label seen.

    Returns
    -------
    float

    Raises
    ------
    ParameterError
        If a true community is empty or there are more than 10
        communities.
    """
    lh = _label_vector(labels_hat)
    lt = _label_vector(labels_true)
    if lh.shape != lt.shape:
        raise ShapeError(f"length mismatch: estimate {lh.shape} vs truth {lt.shape}")
    k = int(k_c) if k_c else int(max(lh.max(), lt.max()))
    if k > _FC_MAX_K:
        raise ParameterError(
            f"worst-community error uses exhaustive alignment search, "
            f"capped at {_FC_MAX_K} communities; got {k}")
    n_true = np.bincount(lt, minlength=k + 1)[1:]
    if n_true.min() == 0:
        raise ParameterError("every true community must be nonempty")
    n_est = np.bincount(lh, minlength=k + 1)[1:]
    conf = np.zeros((k, k), dtype=np.int64)
    np.add.at(conf, (lt - 1, lh - 1), 1)

    best = np.inf
    for pi in itertools.permutations(range(k)):
        worst = 0.0
        for kk in range(k):
            jj = pi[kk]
            # misses + intruders for true community kk matched to jj
            charge = (n_true[kk] + n_est[jj] - 2 * conf[kk, jj]) / n_true[kk]
            if charge > worst:
                worst = charge
        if worst < best:
            best = worst
    return float(best)


def error_report(pi_r_hat, pi_r_true, labels_hat, labels_true,
                 k_c: int = 0) -> ErrorReport:
    """Bundle all three error measures for one estimate."""
    m, row_perm = mhamm(pi_r_hat, pi_r_true)
    h, col_perm = hamm(labels_hat, labels_true, k_c=k_c)
    f = f_c_error(labels_hat, labels_true, k_c=k_c)
    return ErrorReport(mhamm=m, hamm=h, f_c=f,
                       best_row_perm=row_perm, best_col_perm=col_perm)
