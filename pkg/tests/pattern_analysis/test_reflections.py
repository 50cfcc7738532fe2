"""Test cases for the reflected generations and their decay"""

import math

import pytest

from src.core.errors import InputError
from src.pattern_analysis.big_shocks import BigShocks, identify_big_2shocks
from src.pattern_analysis.reflections import decay_fit, extract_reflections, reflection_parity


class TestExtractReflections:
    """Test cases for extract_reflections"""

    def test_generations(self, pattern_run, scenario):
        """Test R_0 from the datum and S_1 from the reflection off J_r"""
        sol = pattern_run()
        big = identify_big_2shocks(sol, scenario)
        first, second = extract_reflections(sol, big, scenario)

        assert first.j == 0
        assert first.R_front == 2
        assert first.S_front is None
        assert first.strength == pytest.approx(1e-3)
        assert first.reflection_times == [0.0]

        assert second.j == 1
        assert second.S_front == 6
        assert second.strength == pytest.approx(3e-5)
        assert second.reflection_times == [4.0]
        assert second.to_dict()["strength"] == pytest.approx(3e-5)

    def test_stops_at_first_gap(self, pattern_run, scenario):
        """Test that a missing generation ends the list"""
        sol = pattern_run(reflected_generation=2)
        big = identify_big_2shocks(sol, scenario)
        assert [g.j for g in extract_reflections(sol, big, scenario)] == [0]

    def test_without_big_shocks(self, pattern_run, scenario):
        """Test that no generations exist without the big shocks"""
        assert extract_reflections(pattern_run(), BigShocks(None, None, None), scenario) == []


class TestReflectionParity:
    """Test cases for reflection_parity"""

    def test_consistent_cascade(self, pattern_run, scenario):
        """Test a 3-front reflecting off J_r into the next generation"""
        sol = pattern_run()
        assert reflection_parity(sol, identify_big_2shocks(sol, scenario)) == []

    def test_skipped_generation(self, pattern_run, scenario):
        """Test that a reflected front two generations deeper is reported"""
        sol = pattern_run(reflected_generation=2)
        (violation,) = reflection_parity(sol, identify_big_2shocks(sol, scenario))
        assert violation["front_id"] == 6
        assert violation["family"] == "1"
        assert violation["generation"] == 2


class TestDecayFit:
    """Test cases for decay_fit"""

    def test_geometric_strengths(self, scenario):
        """Test s_j = 2·ω^{j+1}"""
        omega = scenario.omega
        fit = decay_fit([2.0 * omega, 2.0 * omega**2, 2.0 * omega**3], scenario)

        assert fit.ratio == pytest.approx(omega)
        assert fit.K_high == pytest.approx(2.0)
        assert fit.K_low == pytest.approx(1.0 / (2.0 * math.sqrt(0.3)))
        assert fit.K == pytest.approx(2.0)
        assert fit.J_used == 3
        assert fit.to_dict()["K"] == pytest.approx(2.0)

    def test_weak_generations_raise_K(self, scenario):
        """Test that strengths far below ω^{j+1} give a large K"""
        omega = scenario.omega
        fit = decay_fit([omega, 1e-3 * omega**2], scenario)
        assert fit.K == pytest.approx(1000.0 / math.sqrt(0.3))

    @pytest.mark.parametrize(
        "strengths,message",
        [
            ([0.01], "at least 2 generations"),
            ([0.01, 0.0], "must be positive"),
        ],
    )
    def test_errors(self, scenario, strengths, message):
        """Test rejected strength lists"""
        with pytest.raises(InputError, match=message):
            decay_fit(strengths, scenario)
