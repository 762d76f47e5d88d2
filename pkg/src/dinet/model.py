"""Bipartite mixed-membership network models.

This module defines the parameter types and generators for three related
models of a directed (bipartite) random network in which every edge
A(i, j) is an independent Bernoulli draw with success probability
Omega(i, j):

* ONM:    Omega = Pi_r P Pi_c'            (overlapping rows, disjoint columns)
* ODCNM:  Omega = Pi_r P Pi_c' Theta_c    (column degree heterogeneity)
* DCONM:  Omega = Theta_r Pi_r P Pi_c'    (row degree heterogeneity)

Row nodes carry soft community memberships (rows of Pi_r on the
probability simplex); column nodes carry hard labels.  The number of row
communities can be at most the number of column communities.

Provided here:
    types        RowMembership, ColumnLabels, ConnectivityMatrix,
                 DegreeVector, PopulationMatrix, BiAdjacency,
                 ValidationReport
    validation   validate_onm_params, validate_dconm_params
    generation   build_omega, sample_adjacency, sample_column_labels,
                 sample_degrees, sample_column_degrees,
                 mixed_membership_matrix, pure_row_indices

Conventions: community labels are 1-based integers; matrices are float64
numpy arrays; every sampler takes an explicit integer seed and is
bit-deterministic given it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sparse

from .errors import IdentifiabilityError, ParameterError, ShapeError

# Tolerances used throughout model validation.
_SUM_TOL = 1e-12        # row sums of memberships, unit diagonal checks
_RANK_RTOL = 1e-10      # numerical rank: singular values above rtol * s_max
_BOUND_TOL = 1e-9       # probability bounds allow float roundoff this large


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def _numerical_rank(m: np.ndarray, rtol: float = _RANK_RTOL) -> int:
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


@dataclass(frozen=True)
class RowMembership:
    """Soft community memberships for the row nodes.

    Parameters
    ----------
    matrix : ndarray of shape (n_r, k_r)
        Nonnegative matrix whose rows each sum to 1.  Row i gives the
        membership weights of row node i across the k_r row communities.

    Raises
    ------
    ShapeError
        If the matrix is not 2-dimensional or is empty.
    ParameterError
        If entries are negative or a row sum deviates from 1 by more
        than 1e-12.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
            raise ShapeError(f"membership matrix must be 2-d and nonempty, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ParameterError("membership matrix contains non-finite entries")
        if np.any(m < 0):
            raise ParameterError("membership weights must be nonnegative")
        sums = m.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > _SUM_TOL)
        if bad.size:
            raise ParameterError(
                f"membership rows must sum to 1 within {_SUM_TOL:g}; "
                f"row {bad[0]} sums to {sums[bad[0]]!r}"
            )
        object.__setattr__(self, "matrix", _readonly(m))

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_communities(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class ColumnLabels:
    """Hard community labels for the column nodes.

    Parameters
    ----------
    labels : ndarray of shape (n_c,)
        Integer labels in [1, k_c].
    k_c : int, optional
        Number of column communities.  Defaults to max(labels); pass it
        explicitly when trailing communities may be empty.
    """

    labels: np.ndarray
    k_c: int = 0

    def __post_init__(self):
        lab = np.asarray(self.labels)
        if lab.ndim != 1 or lab.size < 1:
            raise ShapeError(f"labels must be a nonempty vector, got shape {lab.shape}")
        if not np.issubdtype(lab.dtype, np.integer):
            if not np.all(lab == np.floor(lab)):
                raise ParameterError("labels must be integers")
            lab = lab.astype(np.int64)
        lab = lab.astype(np.int64, copy=True)
        k = int(self.k_c) if self.k_c else int(lab.max())
        if lab.min() < 1 or lab.max() > k:
            raise ParameterError(f"labels must lie in [1, {k}], got range [{lab.min()}, {lab.max()}]")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "k_c", k)

    @property
    def n_nodes(self) -> int:
        return self.labels.shape[0]

    @property
    def one_hot(self) -> np.ndarray:
        """Membership matrix Pi_c of shape (n_c, k_c) with one-hot rows."""
        return (self.labels[:, None] == np.arange(1, self.k_c + 1)[None, :]).astype(float)

    @property
    def community_sizes(self) -> np.ndarray:
        """Size of each community, shape (k_c,)."""
        return np.bincount(self.labels, minlength=self.k_c + 1)[1:]


@dataclass(frozen=True)
class ConnectivityMatrix:
    """Community-to-community connectivity P = rho * p_tilde.

    Parameters
    ----------
    p_tilde : ndarray of shape (k_r, k_c)
        Base connectivity with entries in [0, 1] and maximum entry
        exactly 1 (the scale lives in rho).  Requires k_r <= k_c.
    rho : float
        Sparsity scale in (0, 1].

    Raises
    ------
    ShapeError
        If k_r > k_c or the matrix is not 2-dimensional.
    ParameterError
        If entries leave [0, 1], the maximum is not 1 within 1e-12, or
        rho is outside (0, 1].
    """

    p_tilde: np.ndarray
    rho: float = 1.0

    def __post_init__(self):
        pt = np.asarray(self.p_tilde, dtype=float)
        if pt.ndim != 2 or pt.shape[0] < 1 or pt.shape[1] < 1:
            raise ShapeError(f"connectivity must be 2-d and nonempty, got shape {pt.shape}")
        if pt.shape[0] > pt.shape[1]:
            raise ShapeError(
                f"need k_r <= k_c, got k_r={pt.shape[0]} > k_c={pt.shape[1]}"
            )
        if not np.all(np.isfinite(pt)):
            raise ParameterError("connectivity contains non-finite entries")
        if pt.min() < 0 or pt.max() > 1 + _SUM_TOL:
            raise ParameterError("base connectivity entries must lie in [0, 1]")
        if abs(pt.max() - 1.0) > _SUM_TOL:
            raise ParameterError(
                f"base connectivity must have maximum entry 1, got {pt.max()!r}; "
                "put the overall scale in rho"
            )
        r = float(self.rho)
        if not np.isfinite(r) or r <= 0 or r > 1:
            raise ParameterError(f"rho must lie in (0, 1], got {r!r}")
        object.__setattr__(self, "p_tilde", _readonly(pt))
        object.__setattr__(self, "rho", r)

    @property
    def p(self) -> np.ndarray:
        """Scaled connectivity rho * p_tilde."""
        return self.rho * self.p_tilde

    @property
    def k_r(self) -> int:
        return self.p_tilde.shape[0]

    @property
    def k_c(self) -> int:
        return self.p_tilde.shape[1]


@dataclass(frozen=True)
class DegreeVector:
    """Per-node degree propensities for one side of the network.

    Parameters
    ----------
    theta : ndarray of shape (n,)
        Strictly positive weights.
    role : str
        Which side the weights belong to, "row" or "column".
    """

    theta: np.ndarray
    role: str = "column"

    def __post_init__(self):
        t = np.asarray(self.theta, dtype=float)
        if t.ndim != 1 or t.size < 1:
            raise ShapeError(f"theta must be a nonempty vector, got shape {t.shape}")
        if not np.all(np.isfinite(t)) or np.any(t <= 0):
            raise ParameterError("degree weights must be strictly positive and finite")
        if self.role not in ("row", "column"):
            raise ParameterError(f"role must be 'row' or 'column', got {self.role!r}")
        object.__setattr__(self, "theta", _readonly(t))

    @property
    def n_nodes(self) -> int:
        return self.theta.shape[0]


@dataclass(frozen=True)
class PopulationMatrix:
    """Edge-probability matrix Omega together with its model tag.

    Parameters
    ----------
    omega : ndarray of shape (n_r, n_c)
        Entries in [0, 1] (tolerance 1e-9 for float roundoff).
    model : str
        One of "ONM", "ODCNM", "DCONM".
    """

    omega: np.ndarray
    model: str = "ONM"

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=float)
        if om.ndim != 2 or om.shape[0] < 1 or om.shape[1] < 1:
            raise ShapeError(f"omega must be 2-d and nonempty, got shape {om.shape}")
        if not np.all(np.isfinite(om)):
            raise ParameterError("omega contains non-finite entries")
        if om.min() < -_BOUND_TOL or om.max() > 1 + _BOUND_TOL:
            raise ParameterError(
                f"omega entries must lie in [0, 1], got range [{om.min()!r}, {om.max()!r}]"
            )
        if self.model not in ("ONM", "ODCNM", "DCONM"):
            raise ParameterError(f"unknown model tag {self.model!r}")
        object.__setattr__(self, "omega", _readonly(om))

    @property
    def shape(self) -> tuple[int, int]:
        return self.omega.shape


@dataclass(frozen=True)
class BiAdjacency:
    """Binary bipartite adjacency matrix stored as a coordinate list.

    Entries are the positions of the 1s, kept sorted in row-major order
    with no duplicates so that two equal matrices have identical storage.

    Parameters
    ----------
    rows, cols : ndarray of shape (nnz,)
        0-based coordinates of the nonzero entries.
    shape : tuple of (n_r, n_c)
        Full matrix dimensions.
    """

    rows: np.ndarray
    cols: np.ndarray
    shape: tuple[int, int]

    def __post_init__(self):
        r = np.asarray(self.rows, dtype=np.int64).ravel()
        c = np.asarray(self.cols, dtype=np.int64).ravel()
        n_r, n_c = int(self.shape[0]), int(self.shape[1])
        if n_r < 1 or n_c < 1:
            raise ShapeError(f"shape must be positive, got {(n_r, n_c)}")
        if r.shape != c.shape:
            raise ShapeError("rows and cols must have equal length")
        if r.size:
            if r.min() < 0 or r.max() >= n_r or c.min() < 0 or c.max() >= n_c:
                raise ShapeError("coordinate outside matrix bounds")
            order = np.lexsort((c, r))
            r, c = r[order], c[order]
            keys = r * n_c + c
            if np.any(np.diff(keys) == 0):
                raise ShapeError("duplicate coordinates in adjacency")
        r.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "rows", r)
        object.__setattr__(self, "cols", c)
        object.__setattr__(self, "shape", (n_r, n_c))

    @classmethod
    def from_dense(cls, a: np.ndarray) -> "BiAdjacency":
        """Build from a dense 0/1 matrix."""
        a = np.asarray(a)
        if a.ndim != 2:
            raise ShapeError(f"adjacency must be 2-d, got shape {a.shape}")
        vals = np.unique(a)
        if not np.all(np.isin(vals, (0, 1))):
            raise ParameterError("adjacency entries must be 0 or 1")
        r, c = np.nonzero(a)
        return cls(rows=r, cols=c, shape=a.shape)

    @property
    def nnz(self) -> int:
        return int(self.rows.shape[0])

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=float)
        out[self.rows, self.cols] = 1.0
        return out

    def to_sparse(self) -> sparse.csr_matrix:
        data = np.ones(self.nnz, dtype=float)
        return sparse.csr_matrix((data, (self.rows, self.cols)), shape=self.shape)


@dataclass(frozen=True)
class ValidationEntry:
    condition: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking model conditions on a parameter set.

    Attributes
    ----------
    entries : tuple of ValidationEntry
        One entry per checked condition, in a fixed order.
    """

    entries: tuple[ValidationEntry, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> tuple[ValidationEntry, ...]:
        return tuple(e for e in self.entries if not e.passed)

    def raise_if_failed(self) -> None:
        """Raise IdentifiabilityError for the first failed condition."""
        for e in self.entries:
            if not e.passed:
                raise IdentifiabilityError(e.condition, e.detail)

    def __str__(self) -> str:
        lines = []
        for e in self.entries:
            mark = "pass" if e.passed else "FAIL"
            lines.append(f"[{mark}] {e.condition}: {e.detail}")
        return "\n".join(lines)


def _as_matrix(pi_r) -> np.ndarray:
    return np.asarray(getattr(pi_r, "matrix", pi_r), dtype=float)


def _as_labels(labels, k_c: int = 0) -> ColumnLabels:
    if isinstance(labels, ColumnLabels):
        return labels
    return ColumnLabels(labels=np.asarray(labels), k_c=k_c)


def _check_dims(pi_r: np.ndarray, labels: ColumnLabels, p: ConnectivityMatrix) -> None:
    if pi_r.shape[1] != p.k_r:
        raise ShapeError(
            f"membership has {pi_r.shape[1]} communities but connectivity has {p.k_r} rows"
        )
    if labels.k_c != p.k_c:
        raise ShapeError(
            f"labels declare {labels.k_c} communities but connectivity has {p.k_c} columns"
        )


def _rank_entries(pi_r: np.ndarray, labels: ColumnLabels, p: ConnectivityMatrix,
                  condition: str) -> list[ValidationEntry]:
    k_r, k_c = p.k_r, p.k_c
    out = []
    r = _numerical_rank(p.p)
    out.append(ValidationEntry(condition, r == k_r, f"rank(P) = {r}, need {k_r}"))
    r = _numerical_rank(pi_r)
    out.append(ValidationEntry(condition, r == k_r, f"rank(Pi_r) = {r}, need {k_r}"))
    sizes = labels.community_sizes
    empty = np.flatnonzero(sizes == 0) + 1
    out.append(ValidationEntry(
        condition, empty.size == 0,
        "rank(Pi_c) = k_c (all column communities occupied)" if empty.size == 0
        else f"column communities {empty.tolist()} are empty, rank(Pi_c) < {k_c}"))
    return out


def _purity_entry(pi_r: np.ndarray, condition: str) -> ValidationEntry:
    peaks = pi_r.max(axis=0)
    missing = np.flatnonzero(peaks < 1.0 - _SUM_TOL) + 1
    if missing.size == 0:
        return ValidationEntry(condition, True, "every row community has a pure node")
    return ValidationEntry(
        condition, False,
        f"row communities {missing.tolist()} have no pure node "
        f"(largest weight {peaks.min():.6g})")


def validate_onm_params(pi_r, labels, p: ConnectivityMatrix) -> ValidationReport:
    """Check the identifiability conditions of the flat (ONM) model.

    The checks are (I1): P has full row rank k_r, Pi_r has rank k_r and
    Pi_c has rank k_c (every column community occupied); and (I2): each
    row community contains at least one pure node, i.e. a row of Pi_r
    equal to a standard basis vector.

    Parameters
    ----------
    pi_r : RowMembership or ndarray of shape (n_r, k_r)
        Row memberships.
    labels : ColumnLabels or integer ndarray of shape (n_c,)
        Column labels in [1, k_c].
    p : ConnectivityMatrix
        Community connectivity.

    Returns
    -------
    ValidationReport
        One entry per condition; inspect .ok or call .raise_if_failed().

    Raises
    ------
    ShapeError
        If dimensions are mutually inconsistent.  Shape problems are
        structural and never reported as condition failures.
    """
    mat = _as_matrix(pi_r)
    lab = _as_labels(labels, k_c=p.k_c)
    if mat.ndim != 2:
        raise ShapeError(f"membership must be 2-d, got shape {mat.shape}")
    _check_dims(mat, lab, p)
    entries = _rank_entries(mat, lab, p, "(I1)")
    entries.append(_purity_entry(mat, "(I2)"))
    return ValidationReport(entries=tuple(entries))


def validate_dconm_params(pi_r, labels, p: ConnectivityMatrix,
                          theta_r: DegreeVector) -> ValidationReport:
    """Check the identifiability conditions of the row degree model.

    The checks are (II1): the rank conditions of (I1) plus a unit
    diagonal P(k, k) = 1 for every row community k; and (II2): each row
    community contains at least one pure node.

    Parameters mirror validate_onm_params, plus theta_r, the positive
    row degree weights (length n_r).

    Returns
    -------
    ValidationReport
    """
    mat = _as_matrix(pi_r)
    lab = _as_labels(labels, k_c=p.k_c)
    if mat.ndim != 2:
        raise ShapeError(f"membership must be 2-d, got shape {mat.shape}")
    _check_dims(mat, lab, p)
    if theta_r.role != "row":
        raise ParameterError(f"theta_r must have role 'row', got {theta_r.role!r}")
    if theta_r.n_nodes != mat.shape[0]:
        raise ShapeError(
            f"theta_r has {theta_r.n_nodes} entries but membership has {mat.shape[0]} rows")
    entries = _rank_entries(mat, lab, p, "(II1)")
    diag = np.diag(p.p)
    off = np.max(np.abs(diag - 1.0)) if diag.size else 1.0
    entries.append(ValidationEntry(
        "(II1)", off <= _SUM_TOL,
        "P has unit diagonal" if off <= _SUM_TOL
        else f"P diagonal must be all 1, worst deviation {off:.6g}"))
    entries.append(_purity_entry(mat, "(II2)"))
    return ValidationReport(entries=tuple(entries))


def build_omega(pi_r, labels, p: ConnectivityMatrix,
                theta_c: DegreeVector | None = None,
                theta_r: DegreeVector | None = None) -> PopulationMatrix:
    """Assemble the edge-probability matrix for one of the three models.

    With neither degree vector this is the flat model Pi_r P Pi_c'.
    With theta_c the columns are rescaled (Pi_r P Pi_c' Theta_c); with
    theta_r the rows are rescaled (Theta_r Pi_r P Pi_c'), which also
    requires P to have a unit diagonal.  Passing both is an error.

    Parameters
    ----------
    pi_r : RowMembership or ndarray of shape (n_r, k_r)
    labels : ColumnLabels or integer ndarray of shape (n_c,)
    p : ConnectivityMatrix
    theta_c : DegreeVector, optional
        Column degree weights (role "column", length n_c).
    theta_r : DegreeVector, optional
        Row degree weights (role "row", length n_r).

    Returns
    -------
    PopulationMatrix
        Omega with the model tag "ONM", "ODCNM" or "DCONM".

    Raises
    ------
    ShapeError
        On inconsistent dimensions.
    ParameterError
        If both degree vectors are passed, or an entry of Omega leaves
        [0, 1].
    IdentifiabilityError
        If theta_r is given but P lacks a unit diagonal ("(II1)").
    """
    mat = _as_matrix(pi_r)
    lab = _as_labels(labels, k_c=p.k_c)
    _check_dims(mat, lab, p)
    if theta_c is not None and theta_r is not None:
        raise ParameterError("pass at most one of theta_c and theta_r")

    base = mat @ p.p @ lab.one_hot.T
    if theta_c is not None:
        if theta_c.role != "column":
            raise ParameterError(f"theta_c must have role 'column', got {theta_c.role!r}")
        if theta_c.n_nodes != lab.n_nodes:
            raise ShapeError(
                f"theta_c has {theta_c.n_nodes} entries but there are {lab.n_nodes} column nodes")
        omega = base * theta_c.theta[None, :]
        model = "ODCNM"
    elif theta_r is not None:
        if theta_r.role != "row":
            raise ParameterError(f"theta_r must have role 'row', got {theta_r.role!r}")
        if theta_r.n_nodes != mat.shape[0]:
            raise ShapeError(
                f"theta_r has {theta_r.n_nodes} entries but there are {mat.shape[0]} row nodes")
        diag = np.diag(p.p)
        off = np.max(np.abs(diag - 1.0)) if diag.size else 1.0
        if off > _SUM_TOL:
            raise IdentifiabilityError(
                "(II1)", f"row degree model needs P with unit diagonal, worst deviation {off:.6g}")
        omega = theta_r.theta[:, None] * base
        model = "DCONM"
    else:
        omega = base
        model = "ONM"

    if omega.min() < -_BOUND_TOL or omega.max() > 1 + _BOUND_TOL:
        raise ParameterError(
            f"omega entries must lie in [0, 1], got range [{omega.min()!r}, {omega.max()!r}]; "
            "scale down rho or the degree weights")
    return PopulationMatrix(omega=omega, model=model)


def sample_adjacency(omega, seed: int) -> BiAdjacency:
    """Draw a binary adjacency matrix with independent Bernoulli entries.

    Parameters
    ----------
    omega : PopulationMatrix or ndarray of shape (n_r, n_c)
        Edge probabilities.
    seed : int
        RNG seed; the draw is bit-deterministic given (omega, seed).

    Returns
    -------
    BiAdjacency
    """
    om = np.asarray(getattr(omega, "omega", omega), dtype=float)
    if om.ndim != 2:
        raise ShapeError(f"omega must be 2-d, got shape {om.shape}")
    rng = np.random.default_rng(int(seed))
    a = rng.random(om.shape) < om
    r, c = np.nonzero(a)
    return BiAdjacency(rows=r, cols=c, shape=om.shape)


def sample_column_labels(n_c: int, k_c: int, seed: int,
                         max_resamples: int = 1000) -> tuple[ColumnLabels, int]:
    """Draw uniform random column labels, rejecting empty communities.

    Each node receives a label uniform on {1, ..., k_c}.  If any
    community comes up empty the whole vector is redrawn from the same
    stream; the number of redraws is returned for diagnostics.

    Parameters
    ----------
    n_c : int
        Number of column nodes, must satisfy n_c >= k_c.
    k_c : int
        Number of communities.
    seed : int
        RNG seed.
    max_resamples : int, optional
        Safety cap on redraws.

    Returns
    -------
    (ColumnLabels, int)
        The labels and how many redraws were needed (0 almost always).
    """
    if k_c < 1 or n_c < k_c:
        raise ParameterError(f"need n_c >= k_c >= 1, got n_c={n_c}, k_c={k_c}")
    rng = np.random.default_rng(int(seed))
    resamples = 0
    while True:
        lab = rng.integers(1, k_c + 1, size=n_c)
        if np.bincount(lab, minlength=k_c + 1)[1:].min() > 0:
            return ColumnLabels(labels=lab, k_c=k_c), resamples
        resamples += 1
        if resamples > max_resamples:
            raise ParameterError(
                f"could not fill all {k_c} communities with {n_c} nodes "
                f"after {max_resamples} redraws")


def sample_degrees(n: int, z: float, seed: int, role: str = "column") -> DegreeVector:
    """Draw degree weights whose reciprocals are uniform on [1, z].

    Every weight lands in [1/z, 1]; z = 1 gives all weights exactly 1,
    which recovers the flat model.  Larger z means more heterogeneity.

    Parameters
    ----------
    n : int
        Number of nodes.
    z : float
        Upper end of the reciprocal range, must be >= 1.
    seed : int
        RNG seed.
    role : str, optional
        "column" (default) or "row".

    Returns
    -------
    DegreeVector
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    z = float(z)
    if not np.isfinite(z) or z < 1:
        raise ParameterError(f"heterogeneity bound must be >= 1, got {z!r}")
    rng = np.random.default_rng(int(seed))
    inv = rng.uniform(1.0, z, size=n)
    return DegreeVector(theta=1.0 / inv, role=role)


def sample_column_degrees(n_c: int, z_c: float, seed: int) -> DegreeVector:
    """Column-side wrapper for sample_degrees (role fixed to "column")."""
    return sample_degrees(n_c, z_c, seed, role="column")


def mixed_membership_matrix(n_r: int, k_r: int, pure_per_community: int,
                            mixing: Sequence[float]) -> RowMembership:
    """Build the planted membership design used by the sweep experiments.

    The first pure_per_community * k_r rows are pure nodes, stacked one
    community after another; every remaining row receives the same
    mixing vector.

    Parameters
    ----------
    n_r : int
        Total number of row nodes.
    k_r : int
        Number of row communities.
    pure_per_community : int
        Pure nodes planted per community, at least 1.
    mixing : sequence of float, length k_r
        Membership weights shared by all non-pure rows; must be
        nonnegative and sum to 1 (tolerance 1e-9).

    Returns
    -------
    RowMembership
    """
    if k_r < 1 or pure_per_community < 1:
        raise ParameterError("need k_r >= 1 and pure_per_community >= 1")
    n_pure = pure_per_community * k_r
    if n_r < n_pure:
        raise ParameterError(
            f"n_r={n_r} too small for {pure_per_community} pure nodes "
            f"in each of {k_r} communities")
    mix = np.asarray(mixing, dtype=float)
    if mix.shape != (k_r,):
        raise ShapeError(f"mixing vector must have length {k_r}, got shape {mix.shape}")
    if np.any(mix < 0) or abs(mix.sum() - 1.0) > _BOUND_TOL:
        raise ParameterError("mixing vector must be nonnegative and sum to 1")
    if abs(mix.sum() - 1.0) > _SUM_TOL:
        mix = mix / mix.sum()
    out = np.zeros((n_r, k_r))
    for k in range(k_r):
        out[k * pure_per_community:(k + 1) * pure_per_community, k] = 1.0
    out[n_pure:] = mix
    return RowMembership(matrix=out)


def pure_row_indices(pi_r, tol: float = _SUM_TOL) -> np.ndarray:
    """First pure node of each row community, in community order.

    Parameters
    ----------
    pi_r : RowMembership or ndarray of shape (n_r, k_r)
    tol : float, optional
        A row counts as pure when its largest weight is >= 1 - tol.

    Returns
    -------
    ndarray of shape (k_r,)
        0-based row index of the first pure node per community.

    Raises
    ------
    IdentifiabilityError
        If some community has no pure node ("(I2)").
    """
    mat = _as_matrix(pi_r)
    out = np.empty(mat.shape[1], dtype=np.int64)
    for k in range(mat.shape[1]):
        pure = np.flatnonzero(mat[:, k] >= 1.0 - tol)
        if pure.size == 0:
            raise IdentifiabilityError("(I2)", f"row community {k + 1} has no pure node")
        out[k] = pure[0]
    return out
