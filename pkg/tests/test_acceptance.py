"""Acceptance gate: one test per release criterion, pinned tolerances.

Run with `pytest -v tests/test_acceptance.py`; each test prints one
pass line on success and pytest itself reports any failure line.
"""

import itertools
import time

import numpy as np
from conftest import (brute_force_align, exhaustive_kmeans_cost,
                      gram_singular_values, pair_cost_matrix,
                      random_onm_params)

from dinet import (ColumnLabels, ConnectivityMatrix, RowMembership,
                   build_omega, fit_odcna, fit_ona, hamm, kmeans_rows, mhamm,
                   mixed_membership_matrix, row_normalize, sample_adjacency,
                   sample_column_degrees, sample_column_labels,
                   successive_projection, top_k_svd)
from dinet.experiments import (builtin_config, run_experiment, with_overrides)

REDUCED_REPS = 20


def _report(num, text):
    print(f"criterion {num}: PASS - {text}")


def _max_row_l1_after_alignment(pi_hat, pi_true):
    _, perm = mhamm(pi_hat, pi_true)
    est = pi_hat.matrix[:, list(perm)]
    return np.abs(est - pi_true.matrix).sum(axis=1).max()


def _random_sizes(rng):
    k_r = int(rng.integers(3, 7))
    k_c = int(rng.integers(k_r, 7))
    n_r = int(rng.integers(60, 401))
    n_c = int(rng.integers(max(60, 2 * k_c), 401))
    return n_r, n_c, k_r, k_c


def _trend_violations(means, direction):
    """Adjacent-pair violations against a monotone trend."""
    diffs = np.diff(np.asarray(means))
    if direction == "non-increasing":
        bad = diffs[diffs > 0]
    else:
        bad = -diffs[diffs < 0]
    return bad


def _assert_trend(means, direction, what):
    bad = _trend_violations(means, direction)
    assert bad.size <= 1, f"{what}: {bad.size} adjacent violations {bad}"
    if bad.size:
        assert bad.max() < 0.01, f"{what}: violation magnitude {bad.max()}"


def test_criterion_01_ideal_recovery_basic_model():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    for trial in range(20):
        n_r, n_c, k_r, k_c = _random_sizes(rng)
        pi_r, labels, p = random_onm_params(rng, n_r, n_c, k_r, k_c)
        omega = build_omega(pi_r, labels, p)
        res = fit_ona(omega, k_r, k_c, seed=trial)
        worst = _max_row_l1_after_alignment(res.pi_r_hat, pi_r)
        h, _ = hamm(res.labels_hat, labels)
        assert worst < 1e-8, f"trial {trial}: max-row L1 {worst}"
        assert h == 0.0, f"trial {trial}: Hamm {h}"
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"runtime {elapsed:.1f}s"
    _report(1, f"20 ideal fits exact, {elapsed:.1f}s")


def test_criterion_02_ideal_recovery_degree_corrected_columns():
    start = time.perf_counter()
    rng = np.random.default_rng(2025)
    z_grid = (2.0, 4.0, 8.0)
    for trial in range(20):
        n_r, n_c, k_r, k_c = _random_sizes(rng)
        pi_r, labels, p = random_onm_params(rng, n_r, n_c, k_r, k_c)
        theta = sample_column_degrees(n_c, z_grid[trial % 3], seed=trial)
        omega = build_omega(pi_r, labels, p, theta_c=theta)
        res = fit_odcna(omega, k_r, k_c, seed=trial)
        worst = _max_row_l1_after_alignment(res.pi_r_hat, pi_r)
        h, _ = hamm(res.labels_hat, labels)
        assert worst < 1e-8, f"trial {trial}: max-row L1 {worst}"
        assert h == 0.0, f"trial {trial}: Hamm {h}"
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"runtime {elapsed:.1f}s"
    _report(2, f"20 ideal degree-corrected fits exact, {elapsed:.1f}s")


def _square_population(rng, k, sizes_c, with_degrees=None):
    """Population matrix with k row and k column communities and the
    given column community sizes."""
    n_c = int(np.sum(sizes_c))
    labels = np.repeat(np.arange(1, k + 1), sizes_c)
    col = ColumnLabels(labels=labels, k_c=k)
    while True:
        off = rng.uniform(0.05, 0.3, size=(k, k))
        p_tilde = off + np.diag(rng.uniform(0.5, 0.7, size=k))
        p_tilde /= p_tilde.max()
        if np.linalg.matrix_rank(p_tilde) == k:
            break
    p = ConnectivityMatrix(p_tilde=p_tilde, rho=0.9)
    pi_r = mixed_membership_matrix(40 + 10 * k, k, 8,
                                   tuple(np.full(k, 1.0 / k)))
    omega = build_omega(pi_r, col, p, theta_c=with_degrees)
    return omega, col


def test_criterion_03_embedding_distance_law():
    rng = np.random.default_rng(77)
    for k in (2, 3, 4):
        sizes = rng.integers(15, 40, size=k)
        omega, col = _square_population(rng, k, sizes)
        triple = top_k_svd(omega, k)
        reps = np.stack([triple.u_c[col.labels == c + 1][0] for c in range(k)])
        # Rows within one community coincide.
        for c in range(k):
            block = triple.u_c[col.labels == c + 1]
            assert np.abs(block - reps[c]).max() < 1e-10
        for a, b in itertools.combinations(range(k), 2):
            got = np.linalg.norm(reps[a] - reps[b])
            want = np.sqrt(1.0 / sizes[a] + 1.0 / sizes[b])
            assert abs(got - want) < 1e-8, (k, a, b, got, want)
    _report(3, "pairwise embedding distances follow the size law")


def test_criterion_04_normalized_embedding_distance_law():
    rng = np.random.default_rng(78)
    for k in (2, 3, 4):
        sizes = rng.integers(15, 40, size=k)
        n_c = int(sizes.sum())
        theta = sample_column_degrees(n_c, 5.0, seed=int(k))
        omega, col = _square_population(rng, k, sizes, with_degrees=theta)
        triple = top_k_svd(omega, k)
        normed, zeros = row_normalize(triple.u_c)
        assert zeros.size == 0
        reps = np.stack([normed[col.labels == c + 1][0] for c in range(k)])
        for c in range(k):
            block = normed[col.labels == c + 1]
            assert np.abs(block - reps[c]).max() < 1e-10
        for a, b in itertools.combinations(range(k), 2):
            got = np.linalg.norm(reps[a] - reps[b])
            assert abs(got - np.sqrt(2.0)) < 1e-8, (k, a, b, got)
    _report(4, "normalized embedding distances all sqrt(2)")


def test_criterion_05_column_count_sweep_reduced():
    start = time.perf_counter()
    cfg = with_overrides(builtin_config("experiment-1"),
                         repetitions=REDUCED_REPS)
    res = run_experiment(cfg)
    for method in ("ona", "odcna"):
        means_m = res.means(method)
        means_h = np.array([c.mean_hamm for c in res.cells
                            if c.method == method])
        assert not np.isnan(means_m).any()
        _assert_trend(means_m, "non-increasing", f"{method} membership error")
        _assert_trend(means_h, "non-increasing", f"{method} label error")
    for value in cfg.sweep_values:
        a = res.cell(value, "ona")
        b = res.cell(value, "odcna")
        assert np.array_equal(a.rep_mhamm, b.rep_mhamm), (
            f"row-branch results differ at n_c={value}")
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"runtime {elapsed:.1f}s"
    _report(5, f"errors shrink with more columns, row branch shared, "
               f"{elapsed:.1f}s")


def test_criterion_06_remaining_sweeps_reduced():
    sweeps = [
        ("experiment-2", "non-increasing", "sparsity scale"),
        ("experiment-3", "non-decreasing", "degree heterogeneity"),
        ("experiment-4", "non-increasing", "sparsity scale, degree model"),
    ]
    for name, direction, what in sweeps:
        cfg = with_overrides(builtin_config(name), repetitions=REDUCED_REPS)
        res = run_experiment(cfg)
        for method in ("ona", "odcna"):
            means_m = res.means(method)
            means_h = np.array([c.mean_hamm for c in res.cells
                                if c.method == method])
            assert not np.isnan(means_m).any()
            _assert_trend(means_m, direction, f"{name} {method} membership")
            _assert_trend(means_h, direction, f"{name} {method} labels")
    _report(6, "error trends hold across the three remaining sweeps")


def test_criterion_07a_svd_oracle():
    rng = np.random.default_rng(710)
    for trial in range(50):
        n1, n2 = rng.integers(2, 9, size=2)
        k = int(rng.integers(1, min(n1, n2) + 1))
        m = rng.standard_normal((n1, n2))
        got = top_k_svd(m, k).lam
        want = gram_singular_values(m, k)
        assert np.abs(got - want).max() < 1e-10
    _report("7a", "singular values match Gram eigendecomposition")


def test_criterion_07b_kmeans_oracle():
    rng = np.random.default_rng(711)
    for trial in range(50):
        n = int(rng.integers(4, 13))
        k = int(rng.integers(1, 4))
        centers = rng.standard_normal((k, 2)) * 0.5
        centers += np.arange(k)[:, None] * 8.0
        x = centers[rng.integers(0, k, size=n)] \
            + 0.7 * rng.standard_normal((n, 2))
        got = kmeans_rows(x, k, seed=trial, restarts=20).cost
        want = exhaustive_kmeans_cost(x, k)
        assert abs(got - want) <= 1e-9 * max(1.0, want), (trial, got, want)
    _report("7b", "best-of-20 clustering cost equals partition optimum")


def test_criterion_07c_alignment_oracle():
    rng = np.random.default_rng(712)
    for trial in range(100):
        n = int(rng.integers(4, 20))
        k = int(rng.integers(2, 7))
        est = RowMembership(matrix=rng.dirichlet(np.full(k, 0.7), size=n))
        true = RowMembership(matrix=rng.dirichlet(np.full(k, 0.7), size=n))
        value, perm = mhamm(est, true)
        b_total, b_perm = brute_force_align(
            pair_cost_matrix(est.matrix, true.matrix))
        assert value == b_total / n
        assert perm == b_perm
        lab_e = np.concatenate([np.arange(1, k + 1),
                                rng.integers(1, k + 1, size=n)])
        lab_t = np.concatenate([np.arange(1, k + 1),
                                rng.integers(1, k + 1, size=n)])
        le = ColumnLabels(labels=lab_e, k_c=k)
        lt = ColumnLabels(labels=lab_t, k_c=k)
        h_value, h_perm = hamm(le, lt)
        hb_total, hb_perm = brute_force_align(
            pair_cost_matrix(le.one_hot, lt.one_hot))
        assert h_value == hb_total / (n + k)
        assert h_perm == hb_perm
    _report("7c", "assignment search equals brute-force enumeration")


def test_criterion_07d_corner_finding_oracle():
    rng = np.random.default_rng(713)
    for trial in range(50):
        n = int(rng.integers(20, 60))
        r = int(rng.integers(2, 5))
        vertices = rng.standard_normal((r, r)) * 3.0
        weights = rng.dirichlet(np.full(r, 0.5), size=n)
        y = weights @ vertices
        planted = rng.choice(n, size=r, replace=False)
        y[planted] = vertices
        got = successive_projection(y, r)
        assert sorted(got.indices.tolist()) == sorted(planted.tolist())
        for pos, idx in enumerate(got.indices):
            err = np.abs(got.corner_matrix[pos] - y[idx]).max()
            assert err < 1e-8
    _report("7d", "planted simplex vertices recovered exactly")


def test_criterion_08_determinism(tmp_path):
    from dinet.experiments import ExperimentConfig
    from dinet.io import write_dense_csv, write_matrix_market

    rng = np.random.default_rng(81)
    pi_r, labels, p = random_onm_params(rng, 70, 50, 3, 4)
    omega = build_omega(pi_r, labels, p)

    # Seeded sampling, twice, serialized: identical bytes.
    blobs = []
    for run in range(2):
        adj = sample_adjacency(omega, seed=17)
        path = tmp_path / f"adj{run}.mtx"
        write_matrix_market(adj, str(path))
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]

    # Seeded label / degree draws.
    la, ra = sample_column_labels(50, 4, seed=3)
    lb, rb = sample_column_labels(50, 4, seed=3)
    assert np.array_equal(la.labels, lb.labels) and ra == rb
    assert np.array_equal(sample_column_degrees(50, 4.0, seed=5).theta,
                          sample_column_degrees(50, 4.0, seed=5).theta)

    # Seeded fits, serialized: identical bytes.
    adj = sample_adjacency(omega, seed=17)
    fit_blobs = []
    for run in range(2):
        res = fit_ona(adj, 3, 4, seed=23)
        path = tmp_path / f"pi{run}.csv"
        write_dense_csv(res.pi_r_hat.matrix, str(path))
        fit_blobs.append(path.read_bytes())
    assert fit_blobs[0] == fit_blobs[1]

    # Seeded clustering.
    x = rng.standard_normal((40, 3))
    ka = kmeans_rows(x, 3, seed=9)
    kb = kmeans_rows(x, 3, seed=9)
    assert np.array_equal(ka.labels.labels, kb.labels.labels)
    assert ka.cost == kb.cost

    # Experiment sweep across thread settings {1, auto} plus an
    # oversubscribed pool; identical tables apart from measured wall
    # time, which is the one timing column.
    cfg = ExperimentConfig(
        name="det", model="ODCNM", sweep="z_c", sweep_values=(1.0, 3.0),
        n_r=60, n_c=50, k_r=2, k_c=3,
        p_tilde=((1.0, 0.2, 0.3), (0.2, 0.8, 0.25)),
        rho=0.6, pure_per_community=15, mixing=(0.5, 0.5),
        repetitions=3, master_seed=55)
    tables = []
    for workers in (1, None, 3):
        res = run_experiment(cfg, workers=workers)
        rows = [line.split(",") for line in
                res.to_csv_text().strip().split("\n")]
        tables.append([row[:-1] for row in rows])
    assert tables[0] == tables[1] == tables[2]
    _report(8, "byte-identical reruns, schedule-independent sweeps")
