import math

import numpy as np
import pytest
from scipy.special import eval_legendre

from prolate_calculus import (
    CoeffVector,
    DomainError,
    GridFunction,
    RuleTooLargeError,
    default_truncation,
    eval_legendre_orthonormal,
    gauss_legendre_rule,
    legendre_operator_diag,
    legendre_table,
    position_matrix,
)


def orthonormal_oracle(n, x):
    """Independent normalized-Legendre values via scipy."""
    return math.sqrt((2 * n + 1) / 2.0) * eval_legendre(n, x)


class TestGaussLegendreRule:
    def test_order_one_is_midpoint(self):
        rule = gauss_legendre_rule(1)
        assert rule.nodes.tolist() == [0.0]
        assert rule.weights.tolist() == [2.0]

    def test_order_two_closed_form(self):
        rule = gauss_legendre_rule(2)
        np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
        np.testing.assert_allclose(rule.weights, [1.0, 1.0], atol=1e-15)

    def test_x30_with_16_nodes(self):
        # Exact monomial integral on [-1,1]: 2/(d+1) for even d.
        rule = gauss_legendre_rule(16)
        assert abs(rule.integrate(lambda x: x**30) - 2 / 31) <= 1e-13 * (2 / 31)

    @pytest.mark.parametrize("order", [1, 2, 3, 5, 8, 16, 32, 100])
    def test_invariants(self, order):
        rule = gauss_legendre_rule(order)
        assert abs(rule.weights.sum() - 2.0) <= 1e-13
        assert np.all(np.diff(rule.nodes) > 0)
        np.testing.assert_allclose(rule.nodes, -rule.nodes[::-1], atol=1e-13)
        assert np.all(rule.weights > 0)
        assert np.all(np.abs(rule.nodes) < 1)

    @pytest.mark.parametrize("order", [1, 2, 3, 5, 8, 16])
    def test_monomial_exactness_up_to_2p_minus_1(self, order):
        rule = gauss_legendre_rule(order)
        for degree in range(2 * order):
            exact = 2.0 / (degree + 1) if degree % 2 == 0 else 0.0
            measured = rule.integrate(rule.nodes**degree)
            assert abs(measured - exact) <= 1e-12 * max(1.0, abs(exact))

    def test_matches_numpy_reference(self):
        rule = gauss_legendre_rule(48)
        x_ref, w_ref = np.polynomial.legendre.leggauss(48)
        np.testing.assert_allclose(rule.nodes, x_ref, atol=1e-13)
        np.testing.assert_allclose(rule.weights, w_ref, atol=1e-13)

    def test_rejects_bad_orders(self):
        with pytest.raises(DomainError):
            gauss_legendre_rule(0)
        with pytest.raises(RuleTooLargeError) as err:
            gauss_legendre_rule(1_000_001)
        assert err.value.kind == "rule-too-large"


class TestOrthonormalLegendre:
    def test_low_orders_at_zero(self):
        values = eval_legendre_orthonormal(1, 0.0)
        np.testing.assert_allclose(values, [1 / math.sqrt(2), 0.0], atol=1e-15)

    def test_values_at_one(self):
        values = eval_legendre_orthonormal(3, 1.0)
        expected = [math.sqrt((2 * n + 1) / 2) for n in range(4)]
        np.testing.assert_allclose(values, expected, rtol=1e-14)

    def test_alternating_signs_at_minus_one(self):
        values = eval_legendre_orthonormal(2, -1.0)
        assert values[0] > 0 and values[1] < 0 and values[2] > 0

    def test_domain_error(self):
        with pytest.raises(DomainError):
            eval_legendre_orthonormal(3, 1.5)

    def test_extrapolation_is_opt_in(self):
        with pytest.raises(DomainError):
            legendre_table(4, np.array([1.2]))
        table = legendre_table(4, np.array([1.2]), extrapolate=True)
        assert np.all(np.isfinite(table))

    @pytest.mark.parametrize("n_dim", [8, 24])
    def test_gram_matrix_is_identity(self, n_dim):
        rule = gauss_legendre_rule(n_dim + 2)
        table = legendre_table(n_dim - 1, rule.nodes)
        gram = (table * rule.weights) @ table.T
        np.testing.assert_allclose(gram, np.eye(n_dim), atol=1e-12)


class TestPositionMatrix:
    def quadrature_coupling(self, n):
        # Independent oracle: <x Pbar_n, Pbar_n+1> by quadrature on scipy values.
        x, w = np.polynomial.legendre.leggauss(12)
        return np.sum(w * x * orthonormal_oracle(n, x) * orthonormal_oracle(n + 1, x))

    def test_first_couplings_match_quadrature_oracle(self):
        mat = position_matrix(3)
        assert abs(mat.bands[1, 0] - self.quadrature_coupling(0)) <= 1e-14
        assert abs(mat.bands[1, 1] - self.quadrature_coupling(1)) <= 1e-14
        assert abs(mat.bands[1, 0] - 1 / math.sqrt(3)) <= 1e-15
        assert abs(mat.bands[1, 1] - 2 / math.sqrt(15)) <= 1e-15

    def test_symmetry_is_structural(self):
        dense = position_matrix(6).to_dense()
        assert np.array_equal(dense, dense.T)
        assert np.all(np.diag(dense) == 0.0)

    def test_square_is_pentadiagonal_with_e0_form_one_third(self):
        dense = position_matrix(8).to_dense()
        squared = dense @ dense
        for k in range(3, 8):
            assert np.max(np.abs(np.diag(squared, k))) == 0.0
        e0 = np.zeros(8)
        e0[0] = 1.0
        assert abs(e0 @ squared @ e0 - 1.0 / 3.0) <= 1e-12

    def test_rejects_small_dims(self):
        with pytest.raises(DomainError):
            position_matrix(1)


class TestLegendreOperator:
    def test_small_diagonals(self):
        np.testing.assert_array_equal(legendre_operator_diag(3), [0.0, -2.0, -6.0])
        np.testing.assert_array_equal(legendre_operator_diag(1), [0.0])
        assert legendre_operator_diag(11)[10] == -110.0


class TestCoeffAndGrid:
    def test_parseval_norm(self, rng):
        coeffs = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        vec = CoeffVector(coeffs=coeffs)
        rule = gauss_legendre_rule(14)
        values = vec.evaluate(rule.nodes)
        l2 = math.sqrt(abs(rule.integrate(np.abs(values) ** 2)))
        assert abs(l2 - vec.norm()) <= 1e-12 * vec.norm()

    def test_grid_roundtrip_on_polynomials(self, rng):
        rule = gauss_legendre_rule(24)
        coeffs = np.zeros(10, dtype=complex)
        coeffs[:10] = rng.standard_normal(10)
        grid = CoeffVector(coeffs=coeffs).to_grid(rule)
        back = grid.to_coeffs(10).to_grid(rule)
        assert np.max(np.abs(back.values - grid.values)) <= 1e-10

    def test_default_truncation_rule(self):
        assert default_truncation(1.0) == 64
        assert default_truncation(30.0) == 100
