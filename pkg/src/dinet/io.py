"""File formats for matrices, memberships and labels.

Adjacency matrices travel as Matrix Market coordinate pattern files
(.mtx, 1-based indices), plain tab-separated edge lists (.tsv, 1-based
"row<TAB>col" lines), or dense CSV (.csv).  Dense real matrices
(memberships, probability matrices) are CSV with %.17g formatting so a
round trip preserves every float bit.  Label vectors are text files with
one integer per line.  Writers emit entries in a fixed order, so equal
inputs produce byte-identical files.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ParameterError, ShapeError
from .model import BiAdjacency

_MM_HEADER = "%%MatrixMarket matrix coordinate pattern general"


def write_matrix_market(adj: BiAdjacency, path: str | os.PathLike) -> None:
    """Write a binary adjacency as a Matrix Market coordinate pattern file.

    The entry list is sorted row-major and indices are 1-based, per the
    format definition.
    """
    n_r, n_c = adj.shape
    lines = [_MM_HEADER, f"{n_r} {n_c} {adj.nnz}"]
    for r, c in zip(adj.rows, adj.cols):
        lines.append(f"{r + 1} {c + 1}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix_market(path: str | os.PathLike) -> BiAdjacency:
    """Read a Matrix Market coordinate pattern file written by this package.

    Accepts any conforming coordinate pattern file: comment lines
    (starting with %) after the header are skipped and entry order is
    irrelevant.
    """
    with open(path) as fh:
        header = fh.readline().strip()
        if header.lower() != _MM_HEADER.lower():
            raise ParameterError(
                f"unsupported Matrix Market header {header!r}; "
                f"need {_MM_HEADER!r}")
        line = fh.readline()
        while line and line.lstrip().startswith("%"):
            line = fh.readline()
        parts = line.split()
        if len(parts) != 3:
            raise ParameterError(f"malformed size line {line!r}")
        n_r, n_c, nnz = (int(p) for p in parts)
        rows = np.empty(nnz, dtype=np.int64)
        cols = np.empty(nnz, dtype=np.int64)
        for i in range(nnz):
            entry = fh.readline().split()
            if len(entry) != 2:
                raise ParameterError(f"malformed entry line {i + 1}")
            rows[i] = int(entry[0]) - 1
            cols[i] = int(entry[1]) - 1
    return BiAdjacency(rows=rows, cols=cols, shape=(n_r, n_c))


def write_edge_list(adj: BiAdjacency, path: str | os.PathLike) -> None:
    """Write a binary adjacency as a 1-based "row<TAB>col" edge list."""
    lines = [f"{r + 1}\t{c + 1}" for r, c in zip(adj.rows, adj.cols)]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))


def read_edge_list(path: str | os.PathLike,
                   shape: tuple[int, int] | None = None) -> BiAdjacency:
    """Read a 1-based tab-separated edge list.

    The format carries no dimensions; pass shape explicitly when
    trailing rows or columns may be isolated, otherwise the maximum
    observed indices are used.
    """
    rows, cols = [], []
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParameterError(f"malformed edge on line {ln}: {line!r}")
            rows.append(int(parts[0]) - 1)
            cols.append(int(parts[1]) - 1)
    r = np.asarray(rows, dtype=np.int64)
    c = np.asarray(cols, dtype=np.int64)
    if shape is None:
        if r.size == 0:
            raise ParameterError(
                "cannot infer dimensions from an empty edge list; pass shape")
        shape = (int(r.max()) + 1, int(c.max()) + 1)
    return BiAdjacency(rows=r, cols=c, shape=shape)


def write_dense_csv(m: np.ndarray, path: str | os.PathLike) -> None:
    """Write a real matrix as CSV, one row per line, %.17g per value."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ShapeError(f"need a 2-d matrix, got shape {m.shape}")
    lines = [",".join(f"{v:.17g}" for v in row) for row in m]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_dense_csv(path: str | os.PathLike) -> np.ndarray:
    """Read a CSV matrix written by write_dense_csv."""
    out = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
    return out


def write_labels(labels, path: str | os.PathLike) -> None:
    """Write integer labels, one per line (1-based community ids)."""
    lab = np.asarray(getattr(labels, "labels", labels))
    lines = [str(int(v)) for v in lab]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_labels(path: str | os.PathLike) -> np.ndarray:
    """Read integer labels written by write_labels."""
    return np.loadtxt(path, ndmin=1, dtype=np.int64)


def write_adjacency(adj: BiAdjacency, path: str | os.PathLike) -> None:
    """Write an adjacency in the format chosen by file extension.

    .mtx writes Matrix Market coordinate pattern, .tsv an edge list and
    .csv a dense 0/1 matrix.
    """
    ext = os.path.splitext(os.fspath(path))[1].lower()
    if ext == ".mtx":
        write_matrix_market(adj, path)
    elif ext == ".tsv":
        write_edge_list(adj, path)
    elif ext == ".csv":
        write_dense_csv(adj.to_dense(), path)
    else:
        raise ParameterError(f"unknown adjacency extension {ext!r}; use .mtx, .tsv or .csv")


def read_adjacency(path: str | os.PathLike,
                   shape: tuple[int, int] | None = None) -> BiAdjacency:
    """Read an adjacency in the format chosen by file extension."""
    ext = os.path.splitext(os.fspath(path))[1].lower()
    if ext == ".mtx":
        return read_matrix_market(path)
    if ext == ".tsv":
        return read_edge_list(path, shape=shape)
    if ext == ".csv":
        return BiAdjacency.from_dense(read_dense_csv(path))
    raise ParameterError(f"unknown adjacency extension {ext!r}; use .mtx, .tsv or .csv")
