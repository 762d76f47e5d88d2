"""Model types, validation and generators."""

import numpy as np
import pytest

from dinet import (BiAdjacency, ColumnLabels, ConnectivityMatrix, DegreeVector,
                   IdentifiabilityError, ParameterError, ShapeError,
                   build_omega, mixed_membership_matrix, pure_row_indices,
                   sample_adjacency, sample_column_degrees, sample_column_labels,
                   sample_degrees, validate_dconm_params, validate_onm_params)
from dinet.experiments import DEFAULT_P_TILDE


def exp1_params(n_c=300, seed=7):
    pi_r = mixed_membership_matrix(400, 3, 100, (0.6, 0.3, 0.1))
    p = ConnectivityMatrix(p_tilde=np.asarray(DEFAULT_P_TILDE), rho=0.5)
    labels, _ = sample_column_labels(n_c, 4, seed)
    return pi_r, labels, p


class TestRowMembership:
    def test_valid_rows(self):
        from dinet import RowMembership
        m = RowMembership(matrix=np.array([[1.0, 0.0], [0.25, 0.75]]))
        assert m.n_rows == 2 and m.n_communities == 2

    def test_rejects_negative(self):
        from dinet import RowMembership
        with pytest.raises(ParameterError):
            RowMembership(matrix=np.array([[1.2, -0.2]]))

    def test_rejects_bad_row_sum(self):
        from dinet import RowMembership
        with pytest.raises(ParameterError):
            RowMembership(matrix=np.array([[0.5, 0.4]]))

    def test_matrix_is_readonly(self):
        from dinet import RowMembership
        m = RowMembership(matrix=np.array([[1.0, 0.0]]))
        with pytest.raises(ValueError):
            m.matrix[0, 0] = 0.5


class TestColumnLabels:
    def test_one_hot_and_sizes(self):
        lab = ColumnLabels(labels=np.array([1, 3, 1, 2]), k_c=3)
        assert lab.one_hot.shape == (4, 3)
        np.testing.assert_array_equal(lab.one_hot.sum(axis=1), 1.0)
        np.testing.assert_array_equal(lab.community_sizes, [2, 1, 1])

    def test_k_c_inferred(self):
        assert ColumnLabels(labels=np.array([2, 1, 2])).k_c == 2

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            ColumnLabels(labels=np.array([0, 1]), k_c=2)
        with pytest.raises(ParameterError):
            ColumnLabels(labels=np.array([1, 5]), k_c=4)


class TestConnectivityMatrix:
    def test_scaling(self):
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.5]]), rho=0.4)
        np.testing.assert_allclose(p.p, [[0.4, 0.2]])

    def test_rejects_k_r_above_k_c(self):
        with pytest.raises(ShapeError):
            ConnectivityMatrix(p_tilde=np.array([[1.0], [0.5]]), rho=1.0)

    def test_rejects_unscaled(self):
        with pytest.raises(ParameterError):
            ConnectivityMatrix(p_tilde=np.array([[0.9, 0.5]]), rho=1.0)

    def test_rejects_rho_out_of_range(self):
        for rho in (0.0, -0.5, 1.5):
            with pytest.raises(ParameterError):
                ConnectivityMatrix(p_tilde=np.array([[1.0, 0.5]]), rho=rho)


class TestDegreeVector:
    def test_positive_required(self):
        with pytest.raises(ParameterError):
            DegreeVector(theta=np.array([0.5, 0.0]), role="column")

    def test_role_checked(self):
        with pytest.raises(ParameterError):
            DegreeVector(theta=np.array([0.5]), role="middle")


class TestBiAdjacency:
    def test_round_trip_dense(self):
        a = np.array([[0, 1, 0], [1, 0, 1]])
        adj = BiAdjacency.from_dense(a)
        assert adj.nnz == 3
        np.testing.assert_array_equal(adj.to_dense(), a)
        np.testing.assert_array_equal(adj.to_sparse().toarray(), a)

    def test_coordinates_sorted_row_major(self):
        adj = BiAdjacency(rows=np.array([1, 0, 0]), cols=np.array([0, 2, 1]),
                          shape=(2, 3))
        np.testing.assert_array_equal(adj.rows, [0, 0, 1])
        np.testing.assert_array_equal(adj.cols, [1, 2, 0])

    def test_rejects_duplicates_and_bounds(self):
        with pytest.raises(ShapeError):
            BiAdjacency(rows=np.array([0, 0]), cols=np.array([1, 1]), shape=(2, 2))
        with pytest.raises(ShapeError):
            BiAdjacency(rows=np.array([2]), cols=np.array([0]), shape=(2, 2))

    def test_rejects_non_binary(self):
        with pytest.raises(ParameterError):
            BiAdjacency.from_dense(np.array([[0.0, 0.5]]))


class TestBuildOmega:
    def test_hand_computed_product(self):
        # 3 row nodes (two pure, one even mix), identity column design.
        pi = np.array([[1.0, 0.0], [0.0, 1.0], [0.5, 0.5]])
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.125], [0.125, 0.75]]),
                               rho=0.8)
        lab = ColumnLabels(labels=np.array([1, 2]), k_c=2)
        om = build_omega(pi, lab, p)
        expect = np.array([[0.8, 0.1], [0.1, 0.6], [0.45, 0.35]])
        np.testing.assert_allclose(om.omega, expect, atol=1e-15)
        assert om.model == "ONM"

    def test_pure_block_reproduces_connectivity(self):
        rng = np.random.default_rng(5)
        from conftest import random_onm_params
        pi_r, labels, p = random_onm_params(rng, 40, 30, 3, 4)
        om = build_omega(pi_r, labels, p)
        i_r = pure_row_indices(pi_r)
        # First column node of each column community, in community order.
        i_c = np.array([np.flatnonzero(labels.labels == k)[0]
                        for k in range(1, labels.k_c + 1)])
        np.testing.assert_array_equal(om.omega[np.ix_(i_r, i_c)], p.p)

    def test_column_degree_scaling(self):
        pi = np.array([[1.0, 0.0], [0.0, 1.0]])
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.25], [0.25, 1.0]]), rho=0.8)
        lab = ColumnLabels(labels=np.array([1, 2, 2]), k_c=2)
        th = DegreeVector(theta=np.array([0.5, 1.0, 0.25]), role="column")
        om = build_omega(pi, lab, p, theta_c=th)
        expect = np.array([[0.4, 0.2, 0.05], [0.1, 0.8, 0.2]])
        np.testing.assert_allclose(om.omega, expect, atol=1e-15)
        assert om.model == "ODCNM"

    def test_row_degree_model_pure_block(self):
        # Unit-diagonal P, pure rows: the pure block equals theta-scaled P.
        pi = mixed_membership_matrix(6, 2, 2, (0.5, 0.5))
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.3], [0.3, 1.0]]), rho=1.0)
        lab = ColumnLabels(labels=np.array([1, 2, 1]), k_c=2)
        th = DegreeVector(theta=np.array([0.9, 0.8, 0.7, 0.6, 0.5, 0.4]), role="row")
        om = build_omega(pi, lab, p, theta_r=th)
        assert om.model == "DCONM"
        i_r = pure_row_indices(pi)
        i_c = np.array([0, 1])
        expect = th.theta[i_r][:, None] * p.p
        np.testing.assert_allclose(om.omega[np.ix_(i_r, i_c)], expect, atol=1e-15)

    def test_row_degree_needs_unit_diagonal(self):
        pi = np.array([[1.0, 0.0], [0.0, 1.0]])
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.3], [0.3, 1.0]]), rho=0.9)
        lab = ColumnLabels(labels=np.array([1, 2]), k_c=2)
        th = DegreeVector(theta=np.array([0.5, 0.5]), role="row")
        with pytest.raises(IdentifiabilityError) as err:
            build_omega(pi, lab, p, theta_r=th)
        assert err.value.condition == "(II1)"

    def test_rejects_both_degree_vectors(self):
        pi = np.array([[1.0, 0.0], [0.0, 1.0]])
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.3], [0.3, 1.0]]), rho=1.0)
        lab = ColumnLabels(labels=np.array([1, 2]), k_c=2)
        tc = DegreeVector(theta=np.array([1.0, 1.0]), role="column")
        tr = DegreeVector(theta=np.array([1.0, 1.0]), role="row")
        with pytest.raises(ParameterError):
            build_omega(pi, lab, p, theta_c=tc, theta_r=tr)

    def test_rejects_entries_above_one(self):
        pi = np.array([[1.0, 0.0], [0.0, 1.0]])
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.3], [0.3, 1.0]]), rho=1.0)
        lab = ColumnLabels(labels=np.array([1, 2]), k_c=2)
        tc = DegreeVector(theta=np.array([3.0, 1.0]), role="column")
        with pytest.raises(ParameterError):
            build_omega(pi, lab, p, theta_c=tc)

    def test_dimension_mismatch_is_structural(self):
        pi = np.array([[1.0, 0.0], [0.0, 1.0]])
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.3, 0.2]]), rho=1.0)
        lab = ColumnLabels(labels=np.array([1, 2, 3]), k_c=3)
        with pytest.raises(ShapeError):
            build_omega(pi, lab, p)


class TestValidation:
    def test_planted_design_passes(self):
        pi_r, labels, p = exp1_params()
        report = validate_onm_params(pi_r, labels, p)
        assert report.ok, str(report)
        om = build_omega(pi_r, labels, p)
        assert om.omega.max() == pytest.approx(0.5, abs=1e-15)
        assert om.omega.min() >= 0.05 - 1e-15

    def test_rank_deficient_connectivity_fails_i1(self):
        pi_r, labels, _ = exp1_params()
        # Two identical rows: rank 2 < 3.
        bad = np.array([[1.0, 0.3, 0.2, 0.3],
                        [1.0, 0.3, 0.2, 0.3],
                        [0.3, 0.2, 0.8, 0.3]])
        p = ConnectivityMatrix(p_tilde=bad, rho=0.5)
        report = validate_onm_params(pi_r, labels, p)
        failed = [e.condition for e in report.failures]
        assert failed == ["(I1)"]

    def test_no_pure_node_fails_i2(self):
        from dinet import RowMembership
        mat = np.full((20, 2), 0.5)
        mat[:10] = (0.8, 0.2)
        pi = RowMembership(matrix=mat)
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.2], [0.2, 0.9]]), rho=0.5)
        lab = ColumnLabels(labels=np.array([1, 2, 1, 2]), k_c=2)
        report = validate_onm_params(pi, lab, p)
        assert not report.ok
        assert {e.condition for e in report.failures} == {"(I2)"}
        with pytest.raises(IdentifiabilityError):
            report.raise_if_failed()

    def test_empty_column_community_fails(self):
        pi = np.eye(2)
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.2], [0.2, 0.9]]), rho=0.5)
        lab = ColumnLabels(labels=np.array([1, 1, 1]), k_c=2)
        report = validate_onm_params(pi, lab, p)
        assert any("(I1)" == e.condition and not e.passed for e in report.entries)

    def test_dconm_unit_diagonal_checked(self):
        pi = np.eye(2)
        p = ConnectivityMatrix(p_tilde=np.array([[0.9, 1.0], [0.2, 0.9]]), rho=1.0)
        lab = ColumnLabels(labels=np.array([1, 2]), k_c=2)
        th = DegreeVector(theta=np.array([1.0, 1.0]), role="row")
        report = validate_dconm_params(pi, lab, p, th)
        bad = [e for e in report.failures]
        assert len(bad) == 1 and bad[0].condition == "(II1)"
        assert "diagonal" in bad[0].detail

    def test_dconm_valid_design_passes(self):
        pi = mixed_membership_matrix(10, 2, 2, (0.4, 0.6))
        p = ConnectivityMatrix(p_tilde=np.array([[1.0, 0.3], [0.3, 1.0]]), rho=1.0)
        lab = ColumnLabels(labels=np.array([1, 2, 1, 2]), k_c=2)
        th = sample_degrees(10, 2.0, seed=3, role="row")
        assert validate_dconm_params(pi, lab, p, th).ok


class TestSampling:
    def test_adjacency_deterministic(self):
        pi_r, labels, p = exp1_params(n_c=50)
        om = build_omega(pi_r, labels, p)
        a1 = sample_adjacency(om, seed=11)
        a2 = sample_adjacency(om, seed=11)
        np.testing.assert_array_equal(a1.rows, a2.rows)
        np.testing.assert_array_equal(a1.cols, a2.cols)
        a3 = sample_adjacency(om, seed=12)
        assert not (a1.nnz == a3.nnz
                    and np.array_equal(a1.rows, a3.rows)
                    and np.array_equal(a1.cols, a3.cols))

    def test_adjacency_mean_concentrates(self):
        # Mean edge count over repeated draws approaches sum(Omega).
        pi_r, labels, p = exp1_params(n_c=100)
        om = build_omega(pi_r, labels, p)
        total = om.omega.sum()
        counts = [sample_adjacency(om, seed=s).nnz for s in range(30)]
        sd = np.sqrt((om.omega * (1 - om.omega)).sum() / 30)
        assert abs(np.mean(counts) - total) < 5 * sd

    def test_degree_reciprocals_uniform(self):
        d = sample_degrees(5000, 4.0, seed=2)
        inv = 1.0 / d.theta
        assert inv.min() >= 1.0 and inv.max() <= 4.0
        # Uniform on [1, 4] has mean 2.5; bind loosely.
        assert abs(inv.mean() - 2.5) < 0.05

    def test_degree_z_one_is_exactly_flat(self):
        d = sample_column_degrees(100, 1.0, seed=9)
        np.testing.assert_array_equal(d.theta, 1.0)

    def test_degree_z_below_one_rejected(self):
        with pytest.raises(ParameterError):
            sample_degrees(10, 0.5, seed=0)

    def test_labels_cover_all_communities(self):
        lab, resamples = sample_column_labels(10, 4, seed=0)
        assert lab.community_sizes.min() >= 1
        assert resamples >= 0

    def test_labels_need_enough_nodes(self):
        with pytest.raises(ParameterError):
            sample_column_labels(3, 4, seed=0)


class TestMixedMembership:
    def test_planted_layout(self):
        pi = mixed_membership_matrix(10, 3, 2, (0.6, 0.3, 0.1))
        np.testing.assert_array_equal(pi.matrix[0], [1, 0, 0])
        np.testing.assert_array_equal(pi.matrix[2], [0, 1, 0])
        np.testing.assert_array_equal(pi.matrix[4], [0, 0, 1])
        np.testing.assert_allclose(pi.matrix[6:], [[0.6, 0.3, 0.1]] * 4)

    def test_pure_indices(self):
        pi = mixed_membership_matrix(10, 3, 2, (0.6, 0.3, 0.1))
        np.testing.assert_array_equal(pure_row_indices(pi), [0, 2, 4])

    def test_too_small(self):
        with pytest.raises(ParameterError):
            mixed_membership_matrix(5, 3, 2, (0.6, 0.3, 0.1))

    def test_bad_mixing_rejected(self):
        with pytest.raises(ParameterError):
            mixed_membership_matrix(10, 2, 2, (0.8, 0.4))
