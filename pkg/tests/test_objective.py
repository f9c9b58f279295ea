import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockclust import (
    Adjacency,
    GsbmParams,
    generate_gsbm,
    make_weights,
    objective_value,
    weight_matrix,
)


class TestMakeWeights:
    def test_balanced_resolution(self):
        w = make_weights(0.5, 100, rho=1.0)
        assert w.c_a == w.c_ac == 1.0

    def test_known_values(self):
        # t = 0.2: c_a = sqrt(0.8/0.2) = 2, c_ac = 1/2
        w = make_weights(0.2, 16, rho=2.0)
        assert w.c_a == pytest.approx(2.0)
        assert w.c_ac == pytest.approx(0.5)
        assert w.lam == pytest.approx(1.0 / 8.0)
        assert w.nuclear_coeff == pytest.approx(8.0)

    @pytest.mark.parametrize("t", [0.0, 1.0, -0.1, 1.5])
    def test_rejects_out_of_range_t(self, t):
        with pytest.raises(ValueError):
            make_weights(t, 10)

    def test_rejects_bad_rho(self):
        with pytest.raises(ValueError):
            make_weights(0.5, 10, rho=0.0)

    @given(st.floats(min_value=1e-3, max_value=1 - 1e-3))
    def test_product_is_one(self, t):
        w = make_weights(t, 50)
        assert w.c_a * w.c_ac == pytest.approx(1.0)

    @given(st.floats(min_value=1e-3, max_value=1 - 1e-3))
    def test_monotone_in_t(self, t):
        # larger t penalizes absent edges more and rewards edges less
        w1 = make_weights(t, 50)
        w2 = make_weights(min(t + 1e-3, 1 - 5e-4), 50)
        assert w2.c_a <= w1.c_a
        assert w2.c_ac >= w1.c_ac


class TestWeightMatrix:
    def test_entries(self):
        a, _, _ = generate_gsbm(
            GsbmParams(n1=10, n2=0, cluster_sizes=(5, 5), p=0.8, q=0.1), seed=4
        )
        w = make_weights(0.3, 10)
        c = weight_matrix(a, w)
        assert (c[a.matrix == 1] == w.c_a).all()
        assert (c[a.matrix == 0] == w.c_ac).all()
        assert (np.diag(c) == w.c_a).all()  # unit diagonal counts as edges

    def test_size_mismatch(self):
        a = Adjacency(np.eye(3, dtype=int))
        with pytest.raises(ValueError):
            weight_matrix(a, make_weights(0.5, 4))


class TestObjectiveValue:
    def test_zero_matrix(self):
        a = Adjacency(np.eye(4, dtype=int))
        w = make_weights(0.5, 4, rho=1.0)
        assert objective_value(a, np.zeros((4, 4)), w) == 0.0

    def test_identity_candidate(self):
        # Y = I: every diagonal entry is an edge; ||I||_* = n
        a = Adjacency(np.eye(4, dtype=int))
        w = make_weights(0.5, 4, rho=1.0)
        expected = 4 * w.c_a - w.nuclear_coeff * 4
        assert objective_value(a, np.eye(4), w) == pytest.approx(expected)

    def test_hand_computed_block(self):
        m = np.array([[1, 1, 0], [1, 1, 0], [0, 0, 1]], dtype=int)
        a = Adjacency(m)
        y = m.astype(float)
        w = make_weights(0.2, 3, rho=1.0)
        # 5 entries on edges, 0 off; eigenvalues of y are 2, 1, 0
        expected = 5 * w.c_a - math.sqrt(3) * 3.0
        assert objective_value(a, y, w) == pytest.approx(expected)

    def test_rejects_box_violation(self):
        a = Adjacency(np.eye(3, dtype=int))
        w = make_weights(0.5, 3)
        y = np.zeros((3, 3))
        y[0, 1] = y[1, 0] = 1.5
        with pytest.raises(ValueError):
            objective_value(a, y, w)

    def test_rejects_shape_mismatch(self):
        a = Adjacency(np.eye(3, dtype=int))
        with pytest.raises(ValueError):
            objective_value(a, np.zeros((4, 4)), make_weights(0.5, 3))

    @settings(deadline=None, max_examples=25)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_min_max_forms_agree(self, seed):
        # max form = -min form + constant c_a * (#edges); the constant is the
        # value of lambda*||C o (A - Y)||_1 gained by moving Y from 0 to A
        rng = np.random.default_rng(seed)
        n = 8
        m = (rng.random((n, n)) < 0.4).astype(int)
        m = np.triu(m, 1)
        m = m + m.T + np.eye(n, dtype=int)
        a = Adjacency(m)
        w = make_weights(float(rng.uniform(0.1, 0.9)), n, rho=float(rng.uniform(0.5, 3)))
        y = rng.random((n, n))
        y = (y + y.T) / 2
        c = weight_matrix(a, w)
        min_form = w.lam * np.abs(c * (m - y)).sum() + np.linalg.svd(
            y, compute_uv=False
        ).sum()
        max_form = objective_value(a, y, w) / w.nuclear_coeff
        const = w.lam * w.c_a * (m == 1).sum()
        assert max_form == pytest.approx(const - min_form, rel=1e-9, abs=1e-9)
