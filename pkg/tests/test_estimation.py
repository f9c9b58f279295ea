import math

import numpy as np
import pytest

from blockclust import (
    ClusterAssignment,
    GsbmParams,
    cluster_matrix_from,
    condition_report,
    estimate_parameters,
    generate_gsbm,
)


def expected_adjacency(n, k, p, q):
    """E[A] for equal clusters of size k: p within, q across, 1 on the diagonal."""
    labels = np.repeat(np.arange(1, n // k + 1), k)
    truth = cluster_matrix_from(ClusterAssignment(labels)).matrix
    m = np.where(truth == 1, p, q)
    np.fill_diagonal(m, 1.0)
    return m


class TestOnExpectedAdjacency:
    @pytest.mark.parametrize(
        "n,k,p,q",
        [(40, 10, 0.7, 0.2), (60, 20, 0.9, 0.1), (100, 20, 0.5, 0.3), (90, 30, 0.45, 0.05)],
    )
    def test_exact_recovery(self, n, k, p, q):
        est = estimate_parameters(expected_adjacency(n, k, p, q))
        assert est.r_hat == n // k
        assert est.k_hat == pytest.approx(k)
        assert est.p_hat == pytest.approx(p, abs=1e-9)
        assert est.q_hat == pytest.approx(q, abs=1e-9)
        assert est.t == pytest.approx((p + q) / 2, abs=1e-9)

    def test_eigenvalue_tiers(self):
        # the three tiers of the expected spectrum, computed from the model
        n, k, p, q = 40, 10, 0.7, 0.2
        ev = estimate_parameters(expected_adjacency(n, k, p, q)).eigenvalues
        top = k * (p - q) + n * q + (1 - p)
        mid = k * (p - q) + (1 - p)
        low = 1 - p
        assert ev[0] == pytest.approx(top)
        assert ev[1 : n // k] == pytest.approx(mid)
        assert ev[n // k :] == pytest.approx(low)


class TestOnSampledGraphs:
    def test_dense_regime_estimates(self):
        params = GsbmParams(n1=400, n2=0, cluster_sizes=(100,) * 4, p=0.7, q=0.2)
        a, _, _ = generate_gsbm(params, seed=7)
        est = estimate_parameters(a)
        assert est.r_hat == 4
        assert abs(est.p_hat - 0.7) < 0.05
        assert abs(est.q_hat - 0.2) < 0.05
        assert abs(est.t - 0.45) < 0.05

    def test_t_between_q_and_p(self):
        params = GsbmParams(n1=300, n2=0, cluster_sizes=(100,) * 3, p=0.6, q=0.1)
        for seed in range(5):
            a, _, _ = generate_gsbm(params, seed=seed)
            est = estimate_parameters(a)
            assert 0.1 < est.t < 0.6


class TestDegenerateInputs:
    def test_too_small(self):
        with pytest.raises(ValueError):
            estimate_parameters(np.eye(2))

    def test_flat_spectrum(self):
        with pytest.raises(ValueError, match="degenerate"):
            estimate_parameters(np.eye(10))

    def test_single_cluster_k_le_1(self):
        # spectrum 1 + (n-1), then 0s: gap argmax lands at r = n
        m = np.ones((6, 6))
        with pytest.raises(ValueError):
            estimate_parameters(m)

    def test_asymmetric_rejected(self):
        m = np.eye(4)
        m[0, 1] = 0.5
        with pytest.raises(ValueError):
            estimate_parameters(m)

    def test_clamping_keeps_t_interior(self):
        # a graph of isolated cliques gives q_hat near 0; t stays in (0,1)
        m = expected_adjacency(30, 10, 1.0, 0.0)
        est = estimate_parameters(m)
        assert 0.0 < est.t < 1.0


class TestConditionReport:
    def test_hand_computed(self):
        rep = condition_report(p=0.7, q=0.2, n=100, k=20.0)
        assert rep.lhs == pytest.approx(0.5 / math.sqrt(0.7 * 0.8))
        assert rep.thm1_bound == pytest.approx(
            max(10.0 / 20.0, math.log(100) ** 2 / math.sqrt(20.0))
        )
        assert rep.margin == pytest.approx(rep.lhs / rep.thm1_bound)
        assert rep.thm2_bound == pytest.approx(0.1)

    def test_rejects_inverted_densities(self):
        with pytest.raises(ValueError):
            condition_report(p=0.2, q=0.7, n=100, k=10.0)

    def test_margin_monotone_in_gap(self):
        m1 = condition_report(0.6, 0.2, 400, 100.0).margin
        m2 = condition_report(0.8, 0.2, 400, 100.0).margin
        assert m2 > m1
