"""Command line interface.

Four subcommands cover the library surface: generate (draw a network
from a model), fit (estimate memberships and labels from an adjacency
file), evaluate (score an estimate against stored truth) and experiment
(run a Monte Carlo sweep).  Every run writes a manifest.json next to its
outputs recording the resolved parameters, seed and file paths, enough
to re-run the command identically.  On failure, files already written
by the failing invocation are removed and the exit status is nonzero.

Parameter files are TOML; matrices are chosen by extension (.mtx Matrix
Market pattern, .tsv edge list, .csv dense).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .errors import DinetError, ParameterError
from .experiments import (DEFAULT_P_TILDE, ExperimentConfig, builtin_config,
                          run_experiment, with_overrides)
from .fit import FitResult, fit_odcna, fit_ona
from .io import (read_adjacency, read_dense_csv, read_labels, write_adjacency,
                 write_dense_csv, write_labels)
from .metrics import error_report
from .model import (ConnectivityMatrix, build_omega, mixed_membership_matrix,
                    sample_adjacency, sample_column_labels, sample_degrees,
                    validate_dconm_params, validate_onm_params)
from .seeds import PURPOSE_ADJACENCY, PURPOSE_DEGREES, PURPOSE_LABELS, derive_seed

_BUILTIN_NAMES = tuple(f"experiment-{i}" for i in range(1, 5))
_DEFAULT_SEED = 42


@dataclass(frozen=True)
class RunManifest:
    """Record of one CLI invocation, serialized next to its outputs."""

    subcommand: str
    seed: int
    params: dict
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    tool: str = "dinet"
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


class _Outputs:
    """Track written files so a failed run leaves nothing behind."""

    def __init__(self):
        self.files: list[str] = []
        self.made_dirs: list[str] = []

    def ensure_dir(self, path: str) -> None:
        if path and not os.path.isdir(path):
            os.makedirs(path)
            self.made_dirs.append(path)

    def register(self, path: str) -> str:
        self.files.append(path)
        return path

    def discard_all(self) -> None:
        for f in self.files:
            try:
                os.unlink(f)
            except OSError:
                pass
        for d in reversed(self.made_dirs):
            try:
                os.rmdir(d)
            except OSError:
                pass


def _write_text(out: _Outputs, path: str, text: str) -> None:
    out.register(path)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _load_toml(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _generator_params(source: str) -> dict:
    """Resolve --params: a builtin sweep name or a TOML file path."""
    if source in _BUILTIN_NAMES:
        cfg = builtin_config(source)
        return {
            "n_r": cfg.n_r, "n_c": cfg.n_c, "k_r": cfg.k_r, "k_c": cfg.k_c,
            "rho": cfg.rho, "p_tilde": [list(r) for r in cfg.p_tilde],
            "pure_per_community": cfg.pure_per_community,
            "mixing": list(cfg.mixing), "z_c": cfg.z_c, "z_r": 1.0,
        }
    raw = _load_toml(source)
    net = raw.get("network", {})
    conn = raw.get("connectivity", {})
    mem = raw.get("membership", {})
    deg = raw.get("degrees", {})
    try:
        return {
            "n_r": int(net["n_r"]), "n_c": int(net["n_c"]),
            "k_r": int(net["k_r"]), "k_c": int(net["k_c"]),
            "rho": float(conn.get("rho", 1.0)),
            "p_tilde": [list(map(float, r)) for r in conn["p_tilde"]],
            "pure_per_community": int(mem.get("pure_per_community", 1)),
            "mixing": list(map(float, mem["mixing"])),
            "z_c": float(deg.get("z_c", 1.0)), "z_r": float(deg.get("z_r", 1.0)),
        }
    except KeyError as exc:
        raise ParameterError(f"params file {source} is missing key {exc}") from exc


def _experiment_config(source: str) -> ExperimentConfig:
    if source in _BUILTIN_NAMES:
        return builtin_config(source)
    raw = _load_toml(source)
    net = raw.get("network", {})
    conn = raw.get("connectivity", {})
    mem = raw.get("membership", {})
    deg = raw.get("degrees", {})
    run = raw.get("run", {})
    try:
        return ExperimentConfig(
            name=str(raw.get("name", os.path.basename(source))),
            model=str(raw["model"]), sweep=str(raw["sweep"]),
            sweep_values=tuple(float(v) for v in raw["sweep_values"]),
            n_r=int(net.get("n_r", 400)), n_c=int(net.get("n_c", 300)),
            k_r=int(net.get("k_r", 3)), k_c=int(net.get("k_c", 4)),
            rho=float(conn.get("rho", 0.5)),
            p_tilde=(tuple(tuple(map(float, r)) for r in conn["p_tilde"])
                     if "p_tilde" in conn else DEFAULT_P_TILDE),
            pure_per_community=int(mem.get("pure_per_community", 100)),
            mixing=tuple(map(float, mem.get("mixing", (0.6, 0.3, 0.1)))),
            z_c=float(deg.get("z_c", 1.0)),
            repetitions=int(run.get("repetitions", 50)),
            master_seed=int(run.get("master_seed", _DEFAULT_SEED)),
        )
    except KeyError as exc:
        raise ParameterError(f"experiment config {source} is missing key {exc}") from exc


def _cmd_generate(args, out: _Outputs) -> None:
    params = _generator_params(args.params)
    model = args.model
    seed = args.seed
    print(f"seed = {seed}")

    pi_r = mixed_membership_matrix(params["n_r"], params["k_r"],
                                   params["pure_per_community"], params["mixing"])
    p = ConnectivityMatrix(p_tilde=np.asarray(params["p_tilde"]), rho=params["rho"])
    labels, _ = sample_column_labels(params["n_c"], params["k_c"],
                                     derive_seed(seed, PURPOSE_LABELS))
    theta_c = theta_r = None
    if model == "odcnm":
        theta_c = sample_degrees(params["n_c"], params["z_c"],
                                 derive_seed(seed, PURPOSE_DEGREES), role="column")
    elif model == "dconm":
        theta_r = sample_degrees(params["n_r"], params["z_r"],
                                 derive_seed(seed, PURPOSE_DEGREES), role="row")

    if model == "dconm":
        report = validate_dconm_params(pi_r, labels, p, theta_r)
    else:
        report = validate_onm_params(pi_r, labels, p)
    print(report)
    report.raise_if_failed()

    omega = build_omega(pi_r, labels, p, theta_c=theta_c, theta_r=theta_r)
    adj = sample_adjacency(omega, derive_seed(seed, PURPOSE_ADJACENCY))

    out.ensure_dir(args.out_truth)
    out.ensure_dir(os.path.dirname(os.path.abspath(args.out_adjacency)))
    out.register(args.out_adjacency)
    write_adjacency(adj, args.out_adjacency)
    truth_files = {"adjacency": args.out_adjacency}
    for name, writer in (
        ("pi_r.csv", lambda pth: write_dense_csv(pi_r.matrix, pth)),
        ("labels.txt", lambda pth: write_labels(labels, pth)),
        ("omega.csv", lambda pth: write_dense_csv(omega.omega, pth)),
    ):
        path = os.path.join(args.out_truth, name)
        out.register(path)
        writer(path)
        truth_files[name.split(".")[0]] = path
    if theta_c is not None:
        path = os.path.join(args.out_truth, "theta_c.csv")
        out.register(path)
        write_dense_csv(theta_c.theta.reshape(-1, 1), path)
        truth_files["theta_c"] = path
    if theta_r is not None:
        path = os.path.join(args.out_truth, "theta_r.csv")
        out.register(path)
        write_dense_csv(theta_r.theta.reshape(-1, 1), path)
        truth_files["theta_r"] = path

    manifest = RunManifest(
        subcommand="generate", seed=seed,
        params={"model": model, **params},
        inputs={"params": args.params}, outputs=truth_files)
    _write_text(out, os.path.join(args.out_truth, "manifest.json"), manifest.to_json())
    print(f"wrote adjacency ({adj.nnz} edges) and truth to {args.out_truth}")


def _cmd_fit(args, out: _Outputs) -> None:
    seed = args.seed
    print(f"seed = {seed}")
    adj = read_adjacency(args.adjacency)
    fitter = fit_ona if args.method == "ona" else fit_odcna
    result: FitResult = fitter(adj, args.k_r, args.k_c, seed=seed)

    out.ensure_dir(args.out_dir)
    paths = {}
    paths["pi_r_hat"] = out.register(os.path.join(args.out_dir, "pi_r_hat.csv"))
    write_dense_csv(result.pi_r_hat.matrix, paths["pi_r_hat"])
    paths["labels_hat"] = out.register(os.path.join(args.out_dir, "labels_hat.txt"))
    write_labels(result.labels_hat, paths["labels_hat"])

    diag = result.diagnostics
    diag_json = {
        "sigma": [float(v) for v in diag.sigma],
        "delta_c_hat": diag.delta_c_hat,
        "clipped_count": diag.clipped_count,
        "zero_rows": [int(v) for v in diag.zero_rows],
        "zero_columns": [int(v) for v in diag.zero_columns],
        "kmeans_cost": diag.kmeans_cost,
        "kmeans_restarts": diag.kmeans_restarts,
    }
    paths["diagnostics"] = os.path.join(args.out_dir, "diagnostics.json")
    _write_text(out, paths["diagnostics"],
                json.dumps(diag_json, sort_keys=True, indent=2) + "\n")

    manifest = RunManifest(
        subcommand="fit", seed=seed,
        params={"method": args.method, "k_r": args.k_r, "k_c": args.k_c},
        inputs={"adjacency": args.adjacency}, outputs=paths)
    _write_text(out, os.path.join(args.out_dir, "manifest.json"), manifest.to_json())
    print(f"fit {args.method} on {adj.shape[0]}x{adj.shape[1]} adjacency "
          f"-> {args.out_dir}")


def _cmd_evaluate(args, out: _Outputs) -> None:
    pi_true = read_dense_csv(os.path.join(args.truth_dir, "pi_r.csv"))
    lab_true = read_labels(os.path.join(args.truth_dir, "labels.txt"))
    pi_hat = read_dense_csv(os.path.join(args.estimate_dir, "pi_r_hat.csv"))
    lab_hat = read_labels(os.path.join(args.estimate_dir, "labels_hat.txt"))
    report = error_report(pi_hat, pi_true, lab_hat, lab_true)
    payload = {
        "mhamm": report.mhamm,
        "hamm": report.hamm,
        "f_c": report.f_c,
        "best_row_perm": [p + 1 for p in report.best_row_perm],
        "best_col_perm": [p + 1 for p in report.best_col_perm],
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.out:
        out.ensure_dir(os.path.dirname(os.path.abspath(args.out)))
        _write_text(out, args.out, text)
        manifest = RunManifest(
            subcommand="evaluate", seed=0, params={},
            inputs={"truth_dir": args.truth_dir, "estimate_dir": args.estimate_dir},
            outputs={"metrics": args.out})
        _write_text(out, args.out + ".manifest.json", manifest.to_json())


def _cmd_experiment(args, out: _Outputs) -> None:
    config = _experiment_config(args.config)
    config = with_overrides(config, repetitions=args.reps, master_seed=args.seed)
    print(f"seed = {config.master_seed}")
    print(f"running {config.name}: model {config.model}, sweep {config.sweep} "
          f"over {list(config.sweep_values)}, {config.repetitions} repetitions")
    results = run_experiment(config)
    out.ensure_dir(os.path.dirname(os.path.abspath(args.out)))
    _write_text(out, args.out, results.to_csv_text())
    manifest = RunManifest(
        subcommand="experiment", seed=config.master_seed,
        params={"name": config.name, "model": config.model,
                "sweep": config.sweep, "sweep_values": list(config.sweep_values),
                "repetitions": config.repetitions},
        inputs={"config": args.config}, outputs={"results": args.out})
    _write_text(out, args.out + ".manifest.json", manifest.to_json())
    total_ms = sum(c.wall_ms for c in results.cells)
    print(f"wrote {args.out}; total fit time {total_ms / 1000.0:.1f} s; "
          f"label redraws {results.label_resamples}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dinet",
        description="Generate, fit and evaluate bipartite community models.")
    parser.add_argument("--version", action="version", version=f"dinet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="draw a network and write truth files")
    g.add_argument("--model", choices=("onm", "odcnm", "dconm"), required=True)
    g.add_argument("--params", required=True,
                   help="TOML parameter file or a builtin name (experiment-1 .. -4)")
    g.add_argument("--seed", type=int, default=_DEFAULT_SEED)
    g.add_argument("--out-adjacency", required=True,
                   help="adjacency path; .mtx, .tsv or .csv")
    g.add_argument("--out-truth", required=True, help="directory for truth files")

    f = sub.add_parser("fit", help="estimate memberships and labels")
    f.add_argument("--method", choices=("ona", "odcna"), required=True)
    f.add_argument("--adjacency", required=True)
    f.add_argument("--k-r", type=int, required=True, dest="k_r")
    f.add_argument("--k-c", type=int, required=True, dest="k_c")
    f.add_argument("--seed", type=int, default=_DEFAULT_SEED)
    f.add_argument("--out-dir", required=True)

    e = sub.add_parser("evaluate", help="score an estimate against truth")
    e.add_argument("--truth-dir", required=True)
    e.add_argument("--estimate-dir", required=True)
    e.add_argument("--out", default="", help="also write the metrics JSON here")

    x = sub.add_parser("experiment", help="run a Monte Carlo sweep")
    x.add_argument("config",
                   help="builtin name (experiment-1 .. -4) or a TOML config file")
    x.add_argument("--reps", type=int, default=None,
                   help="override the repetition count")
    x.add_argument("--seed", type=int, default=None,
                   help="override the master seed (default 42)")
    x.add_argument("--out", required=True, help="results CSV path")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out = _Outputs()
    handlers = {
        "generate": _cmd_generate,
        "fit": _cmd_fit,
        "evaluate": _cmd_evaluate,
        "experiment": _cmd_experiment,
    }
    try:
        handlers[args.command](args, out)
    except (DinetError, OSError, ValueError) as exc:
        out.discard_all()
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
