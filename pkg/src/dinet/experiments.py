"""Monte Carlo error sweeps over network size, sparsity and degree spread.

A sweep varies one generator knob (number of column nodes, edge
probability scale, or column degree heterogeneity) over a grid of cells,
repeats generation and estimation in each cell, and reports mean and
standard deviation of the recovery errors for both fitters.

Determinism: every repetition of every cell derives its own RNG streams
from (master seed, cell index, repetition index), so results are
bit-identical no matter how many worker threads execute the repetitions
or in which order they finish.  Wall-clock timings are the only
non-reproducible output.

The four builtin configurations exercise, in order: ONM error versus
n_c at fixed sparsity, ONM error versus sparsity, ODCNM error versus
degree heterogeneity, and ODCNM error versus sparsity at fixed
heterogeneity.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import DinetError, ParameterError
from .fit import fit_odcna, fit_ona
from .metrics import hamm, mhamm
from .model import (ConnectivityMatrix, build_omega, mixed_membership_matrix,
                    sample_adjacency, sample_column_labels, sample_degrees)
from .seeds import (PURPOSE_ADJACENCY, PURPOSE_DEGREES, PURPOSE_EXPERIMENT,
                    PURPOSE_LABELS, derive_seed, pack_cell_rep)

# Base connectivity shared by all builtin sweeps: strong diagonal for the
# three row communities, a weaker fourth column community coupled to all.
DEFAULT_P_TILDE: tuple[tuple[float, ...], ...] = (
    (1.0, 0.3, 0.2, 0.3),
    (0.2, 0.9, 0.1, 0.2),
    (0.3, 0.2, 0.8, 0.3),
)

_SWEEPS = ("n_c", "rho", "z_c")
_METHODS = ("ona", "odcna")

CSV_HEADER = "sweep_value,method,mean_mhamm,sd_mhamm,mean_hamm,sd_hamm,failures,wall_ms"


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one sweep.

    Attributes
    ----------
    name : str
        Identifier written into result files.
    model : str
        "ONM" or "ODCNM" (generation model; both fitters always run).
    sweep : str
        Which knob varies: "n_c", "rho" or "z_c".
    sweep_values : tuple of float
        Grid of values for the swept knob.
    n_r, n_c, k_r, k_c : int
        Network and community sizes (the swept one is ignored in favor
        of the grid).
    rho : float
        Edge probability scale in (0, 1].
    z_c : float
        Column degree heterogeneity bound, >= 1; only used for ODCNM.
    p_tilde : tuple of tuple of float
        Base connectivity, max entry 1.
    mixing : tuple of float
        Membership vector shared by all non-pure row nodes.
    pure_per_community : int
        Planted pure row nodes per community.
    repetitions : int
        Monte Carlo repetitions per cell.
    master_seed : int
        Seed from which all per-repetition streams are derived.
    """

    name: str
    model: str
    sweep: str
    sweep_values: tuple[float, ...]
    n_r: int = 400
    n_c: int = 300
    k_r: int = 3
    k_c: int = 4
    rho: float = 0.5
    z_c: float = 1.0
    p_tilde: tuple[tuple[float, ...], ...] = DEFAULT_P_TILDE
    mixing: tuple[float, ...] = (0.6, 0.3, 0.1)
    pure_per_community: int = 100
    repetitions: int = 50
    master_seed: int = 42

    def __post_init__(self):
        if self.model not in ("ONM", "ODCNM"):
            raise ParameterError(f"model must be ONM or ODCNM, got {self.model!r}")
        if self.sweep not in _SWEEPS:
            raise ParameterError(f"sweep must be one of {_SWEEPS}, got {self.sweep!r}")
        if self.sweep == "z_c" and self.model != "ODCNM":
            raise ParameterError("a z_c sweep needs the ODCNM model")
        if not self.sweep_values:
            raise ParameterError("sweep_values must be nonempty")
        if self.repetitions < 1:
            raise ParameterError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.k_r > self.k_c:
            raise ParameterError(f"need k_r <= k_c, got {self.k_r} > {self.k_c}")
        # Normalize container fields so configs hash and compare cleanly.
        object.__setattr__(self, "sweep_values",
                           tuple(float(v) for v in self.sweep_values))
        object.__setattr__(self, "p_tilde",
                           tuple(tuple(float(v) for v in row) for row in self.p_tilde))
        object.__setattr__(self, "mixing", tuple(float(v) for v in self.mixing))

    def cell_params(self, value: float) -> dict:
        """Fixed parameters with the swept knob replaced by value."""
        out = {"n_c": self.n_c, "rho": self.rho, "z_c": self.z_c}
        if self.sweep == "n_c":
            out["n_c"] = int(round(value))
        else:
            out[self.sweep] = float(value)
        return out


@dataclass(frozen=True)
class CellResult:
    """Aggregated errors for one (sweep value, method) pair.

    rep_mhamm / rep_hamm keep the raw per-repetition values, with NaN at
    failed repetitions; means and deviations are over the non-failed
    ones.  wall_ms is the summed fitting wall time.
    """

    sweep_value: float
    method: str
    mean_mhamm: float
    sd_mhamm: float
    mean_hamm: float
    sd_hamm: float
    failures: int
    wall_ms: float
    rep_mhamm: np.ndarray
    rep_hamm: np.ndarray


@dataclass(frozen=True)
class SweepResults:
    """All cells of one sweep, ordered by cell then method.

    Attributes
    ----------
    config : ExperimentConfig
    cells : tuple of CellResult
    label_resamples : int
        How often a label draw was redone because a community came up
        empty, summed over all repetitions.
    """

    config: ExperimentConfig
    cells: tuple[CellResult, ...] = field(default_factory=tuple)
    label_resamples: int = 0

    def cell(self, value: float, method: str) -> CellResult:
        for c in self.cells:
            if c.method == method and c.sweep_value == float(value):
                return c
        raise KeyError(f"no cell for value {value!r}, method {method!r}")

    def means(self, method: str) -> np.ndarray:
        """Mean mixed-membership error per sweep value, grid order."""
        return np.array([c.mean_mhamm for c in self.cells if c.method == method])

    def to_csv_text(self) -> str:
        """Render the pinned CSV table (numbers formatted %.6g)."""
        lines = [CSV_HEADER]
        for c in self.cells:
            lines.append(",".join([
                f"{c.sweep_value:.6g}", c.method,
                f"{c.mean_mhamm:.6g}", f"{c.sd_mhamm:.6g}",
                f"{c.mean_hamm:.6g}", f"{c.sd_hamm:.6g}",
                str(c.failures), f"{c.wall_ms:.6g}",
            ]))
        return "\n".join(lines) + "\n"


def builtin_config(name: str) -> ExperimentConfig:
    """Return one of the four builtin sweep configurations by name.

    Valid names are "experiment-1" through "experiment-4"; see the
    module docstring for what each varies.
    """
    if name == "experiment-1":
        return ExperimentConfig(
            name=name, model="ONM", sweep="n_c",
            sweep_values=(50, 100, 150, 200, 250, 300), rho=0.5)
    if name == "experiment-2":
        return ExperimentConfig(
            name=name, model="ONM", sweep="rho",
            sweep_values=tuple(round(0.1 * i, 1) for i in range(1, 11)))
    if name == "experiment-3":
        return ExperimentConfig(
            name=name, model="ODCNM", sweep="z_c",
            sweep_values=tuple(float(z) for z in range(1, 9)), rho=0.5)
    if name == "experiment-4":
        return ExperimentConfig(
            name=name, model="ODCNM", sweep="rho",
            sweep_values=tuple(round(0.1 * i, 1) for i in range(1, 11)), z_c=3.0)
    raise ParameterError(
        f"unknown builtin {name!r}; valid names are experiment-1 .. experiment-4")


def resolve_workers(workers: int | None = None) -> int:
    """Worker thread count: explicit argument, else DINET_THREADS, else auto."""
    if workers is None:
        env = os.environ.get("DINET_THREADS", "").strip()
        workers = int(env) if env else 0
    workers = int(workers)
    if workers < 0:
        raise ParameterError(f"worker count must be >= 0, got {workers}")
    if workers == 0:
        workers = os.cpu_count() or 1
    return workers


def _one_repetition(config: ExperimentConfig, pi_r, cell: int, rep: int) -> dict:
    params = config.cell_params(config.sweep_values[cell])
    base = derive_seed(config.master_seed, PURPOSE_EXPERIMENT, pack_cell_rep(cell, rep))
    p = ConnectivityMatrix(p_tilde=np.asarray(config.p_tilde), rho=params["rho"])
    labels, resamples = sample_column_labels(
        params["n_c"], config.k_c, derive_seed(base, PURPOSE_LABELS))
    theta_c = None
    if config.model == "ODCNM":
        theta_c = sample_degrees(params["n_c"], params["z_c"],
                                 derive_seed(base, PURPOSE_DEGREES), role="column")
    omega = build_omega(pi_r, labels, p, theta_c=theta_c)
    a = sample_adjacency(omega, derive_seed(base, PURPOSE_ADJACENCY))

    out = {"cell": cell, "rep": rep, "resamples": resamples}
    fitters: dict[str, Callable] = {"ona": fit_ona, "odcna": fit_odcna}
    for method, fitter in fitters.items():
        t0 = time.perf_counter()
        try:
            result = fitter(a, config.k_r, config.k_c, seed=base)
        except DinetError as exc:
            out[method] = {"ok": False, "error": str(exc),
                           "wall": time.perf_counter() - t0,
                           "mhamm": float("nan"), "hamm": float("nan")}
            continue
        wall = time.perf_counter() - t0
        m, _ = mhamm(result.pi_r_hat, pi_r)
        h, _ = hamm(result.labels_hat, labels, k_c=config.k_c)
        out[method] = {"ok": True, "error": "", "wall": wall, "mhamm": m, "hamm": h}
    return out


def run_experiment(config: ExperimentConfig, workers: int | None = None) -> SweepResults:
    """Run a full sweep and aggregate per-cell error statistics.

    Parameters
    ----------
    config : ExperimentConfig
    workers : int, optional
        Worker threads for the repetition pool.  None reads the
        DINET_THREADS environment variable; 0 or unset means one worker
        per CPU.  The results are identical for every setting.

    Returns
    -------
    SweepResults
        Cells ordered by sweep position, "ona" before "odcna".  A
        repetition whose fit raises a library error is counted in the
        cell's failures and excluded from its mean and deviation.
    """
    n_workers = resolve_workers(workers)
    pi_r = mixed_membership_matrix(config.n_r, config.k_r,
                                   config.pure_per_community, config.mixing)
    tasks = [(cell, rep)
             for cell in range(len(config.sweep_values))
             for rep in range(config.repetitions)]
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            reports = list(pool.map(
                lambda t: _one_repetition(config, pi_r, t[0], t[1]), tasks))
    else:
        reports = [_one_repetition(config, pi_r, cell, rep) for cell, rep in tasks]

    # Aggregation is keyed by (cell, rep), never by completion order.
    n_cells, n_reps = len(config.sweep_values), config.repetitions
    resamples = 0
    store = {m: {"mhamm": np.full((n_cells, n_reps), np.nan),
                 "hamm": np.full((n_cells, n_reps), np.nan),
                 "ok": np.zeros((n_cells, n_reps), dtype=bool),
                 "wall": np.zeros((n_cells, n_reps))}
             for m in _METHODS}
    for rep_out in reports:
        c, r = rep_out["cell"], rep_out["rep"]
        resamples += rep_out["resamples"]
        for m in _METHODS:
            rec = rep_out[m]
            store[m]["mhamm"][c, r] = rec["mhamm"]
            store[m]["hamm"][c, r] = rec["hamm"]
            store[m]["ok"][c, r] = rec["ok"]
            store[m]["wall"][c, r] = rec["wall"]

    cells = []
    for c in range(n_cells):
        for m in _METHODS:
            ok = store[m]["ok"][c]
            mh = store[m]["mhamm"][c]
            hm = store[m]["hamm"][c]
            good_mh, good_hm = mh[ok], hm[ok]
            cells.append(CellResult(
                sweep_value=float(config.sweep_values[c]), method=m,
                mean_mhamm=float(np.mean(good_mh)) if good_mh.size else float("nan"),
                sd_mhamm=float(np.std(good_mh)) if good_mh.size else float("nan"),
                mean_hamm=float(np.mean(good_hm)) if good_hm.size else float("nan"),
                sd_hamm=float(np.std(good_hm)) if good_hm.size else float("nan"),
                failures=int(np.count_nonzero(~ok)),
                wall_ms=float(store[m]["wall"][c].sum() * 1000.0),
                rep_mhamm=mh.copy(), rep_hamm=hm.copy()))
    return SweepResults(config=config, cells=tuple(cells), label_resamples=resamples)


def with_overrides(config: ExperimentConfig, repetitions: int | None = None,
                   master_seed: int | None = None) -> ExperimentConfig:
    """Copy a config with a different repetition count or master seed."""
    changes = {}
    if repetitions is not None:
        changes["repetitions"] = int(repetitions)
    if master_seed is not None:
        changes["master_seed"] = int(master_seed)
    return replace(config, **changes) if changes else config
