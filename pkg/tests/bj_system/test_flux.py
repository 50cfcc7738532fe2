"""Test cases for the flux and its eigenstructure"""

import numpy as np
import pytest

from src.bj_system.flux import (
    SystemParams,
    eigen,
    eigenvalue,
    eigenvector,
    flux,
    genuine_nonlinearity,
    gn_finite_difference,
    jacobian,
)
from src.core.errors import InputError
from src.core.types import Family, State


def random_states(rng, n, radius=0.9):
    """n states drawn uniformly in the ball |U| < radius"""
    directions = rng.standard_normal((n, 3))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    return directions * radius * rng.uniform(0.0, 1.0, n)[:, None] ** (1.0 / 3.0)


class TestSystemParams:
    """Test cases for SystemParams"""

    @pytest.mark.parametrize("eta", [0.0, -0.1, 0.25, 1.0])
    def test_eta_range(self, eta):
        """Test that eta outside (0, 1/4) is rejected"""
        with pytest.raises(InputError, match="eta must lie"):
            SystemParams(eta)


class TestFlux:
    """Test cases for flux and jacobian"""

    def test_flux_at_origin(self, system):
        """Test F(0) = 0"""
        assert np.allclose(flux(State(0.0, 0.0, 0.0), system), 0.0)

    def test_second_component(self, system):
        """Test F2 = v²"""
        assert flux(State(0.3, -0.4, 0.1), system)[1] == pytest.approx(0.16)

    def test_jacobian_matches_finite_differences(self, system):
        """Test the hand-differentiated Jacobian on random states"""
        rng = np.random.default_rng(11)
        h = 1e-6
        for U in random_states(rng, 20):
            numeric = np.column_stack(
                [
                    (flux(U + h * e, system) - flux(U - h * e, system)) / (2.0 * h)
                    for e in np.eye(3)
                ]
            )
            assert np.allclose(jacobian(U, system), numeric, atol=1e-8)


class TestEigen:
    """Test cases for eigen and the eigenvalue helpers"""

    def test_eigenvalues_at_origin(self, system):
        """Test λ = (−4, 0, 4) at U = 0"""
        data = eigen(State(0.0, 0.0, 0.0), system)
        assert data.lambdas == pytest.approx((-4.0, 0.0, 4.0))

    def test_eigenpairs_on_random_states(self, system):
        """Test JF·r = λ·r and strictly increasing eigenvalues"""
        rng = np.random.default_rng(5)
        for U in random_states(rng, 50):
            data = eigen(U, system)
            J = jacobian(U, system)
            for family in (Family.ONE, Family.TWO, Family.THREE):
                r = data.rvec(family)
                assert np.allclose(J @ r, data.lam(family) * r, atol=1e-10)
            assert data.lambdas[0] < data.lambdas[1] < data.lambdas[2]

    def test_closed_form_eigenvectors(self, system):
        """Test r1 = (1, 0, v), r3 = (1, 0, v − 2) and r2 normalized by v"""
        U = State(0.2, 0.3, -0.1)
        assert np.allclose(eigenvector(Family.ONE, U, system), [1.0, 0.0, 0.3])
        assert np.allclose(eigenvector(Family.THREE, U, system), [1.0, 0.0, -1.7])
        assert eigenvector(Family.TWO, U, system)[1] == 1.0

    def test_nonphysical_has_no_eigenvector(self, system):
        """Test that asking for a non-physical eigenvector is an input error"""
        with pytest.raises(InputError, match="no eigenvector"):
            eigenvector(Family.NONPHYSICAL, State(0.0, 0.0, 0.0), system)

    def test_outside_domain(self, system):
        """Test that |U| >= 1 is rejected"""
        with pytest.raises(InputError, match="outside the domain"):
            eigen(State(1.0, 0.0, 0.0), system)

    def test_genuine_nonlinearity(self, system):
        """Test GN values (4η, 2, −4η) analytically and by finite differences"""
        expected = genuine_nonlinearity(system)
        assert expected == pytest.approx((0.36, 2.0, -0.36))
        U = State(-0.3, 0.2, 0.4)
        for family in (Family.ONE, Family.TWO, Family.THREE):
            assert gn_finite_difference(family, U, system) == pytest.approx(
                expected[family - 1], abs=1e-5
            )

    def test_eigenvalue_helper(self, system):
        """Test eigenvalue() against the closed form λ2 = 2v"""
        assert eigenvalue(Family.TWO, State(0.1, 0.35, 0.0), system) == pytest.approx(0.7)
