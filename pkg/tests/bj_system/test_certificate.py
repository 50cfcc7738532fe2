"""Test cases for the domain certificate"""

import pytest

from src.bj_system.certificate import certify_domain
from src.bj_system.flux import SystemParams
from src.core.errors import InputError


class TestCertifyDomain:
    """Test cases for certify_domain"""

    @pytest.mark.parametrize("eta", [0.01, 0.09, 0.24])
    def test_certificate_passes(self, eta):
        """Test eigenvalue ranges, gaps and GN values on a 16³ grid"""
        report = certify_domain(SystemParams(eta), resolution=16)
        assert report.passed, report.failures
        assert report.witness is None
        assert report.lambda_min[0] >= -6.0 - 1e-12
        assert report.lambda_max[0] <= -2.5 + 1e-12
        assert report.lambda_min[2] >= 3.0 - 1e-12
        assert report.lambda_max[2] <= 5.0 + 1e-12
        assert report.gn_analytic_error <= 1e-12
        assert report.gn_fd_error <= 1e-5

    def test_only_unit_ball_states(self):
        """Test that grid states outside |U| < 1 are skipped"""
        report = certify_domain(SystemParams(0.09), resolution=8)
        assert 0 < report.n_states < 8**3

    def test_report_serializes(self):
        """Test the JSON shape of the report"""
        data = certify_domain(SystemParams(0.09), resolution=8).to_dict()
        assert data["passed"] is True
        assert data["eta"] == 0.09
        assert len(data["gap_min"]) == 2

    def test_resolution_floor(self):
        """Test that coarse grids are rejected"""
        with pytest.raises(InputError, match="resolution must be >= 8"):
            certify_domain(SystemParams(0.09), resolution=4)
