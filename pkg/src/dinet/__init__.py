"""Spectral community estimation for directed and bipartite networks.

The package models a bipartite random network whose row nodes carry
soft (overlapping) community memberships and whose column nodes carry
hard labels, with optional per-node degree weights on either side.  It
provides exact generators for the three model variants, two spectral
fitters that provably recover the parameters in the noiseless limit,
permutation-invariant error measures, and a deterministic Monte Carlo
sweep harness.  See the README for the mathematical setup and the CLI.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (ConvergenceError, DegenerateCornersError, DinetError,
                     IdentifiabilityError, NumericalError, ParameterError,
                     RankDeficiencyError, ShapeError)
from .experiments import (DEFAULT_P_TILDE, CellResult, ExperimentConfig,
                          SweepResults, builtin_config, run_experiment)
from .fit import DiagnosticBundle, FitResult, fit_odcna, fit_ona, recover_memberships
from .kmeans import KMeansResult, kmeans_rows
from .linalg import SpectralTriple, row_normalize, top_k_svd
from .metrics import ErrorReport, error_report, f_c_error, hamm, mhamm
from .model import (BiAdjacency, ColumnLabels, ConnectivityMatrix, DegreeVector,
                    PopulationMatrix, RowMembership, ValidationReport,
                    build_omega, mixed_membership_matrix, pure_row_indices,
                    sample_adjacency, sample_column_degrees, sample_column_labels,
                    sample_degrees, validate_dconm_params, validate_onm_params)
from .seeds import derive_seed
from .sp import CornerSet, successive_projection

__all__ = [
    "__version__",
    # errors
    "DinetError", "ShapeError", "ParameterError", "IdentifiabilityError",
    "NumericalError", "ConvergenceError", "RankDeficiencyError",
    "DegenerateCornersError",
    # model
    "RowMembership", "ColumnLabels", "ConnectivityMatrix", "DegreeVector",
    "PopulationMatrix", "BiAdjacency", "ValidationReport",
    "validate_onm_params", "validate_dconm_params", "build_omega",
    "sample_adjacency", "sample_column_labels", "sample_degrees",
    "sample_column_degrees", "mixed_membership_matrix", "pure_row_indices",
    # linear algebra
    "SpectralTriple", "top_k_svd", "row_normalize",
    # corner search
    "CornerSet", "successive_projection",
    # clustering
    "KMeansResult", "kmeans_rows",
    # fitting
    "FitResult", "DiagnosticBundle", "fit_ona", "fit_odcna", "recover_memberships",
    # metrics
    "ErrorReport", "mhamm", "hamm", "f_c_error", "error_report",
    # experiments
    "ExperimentConfig", "CellResult", "SweepResults", "DEFAULT_P_TILDE",
    "builtin_config", "run_experiment",
    # seeds
    "derive_seed",
]
