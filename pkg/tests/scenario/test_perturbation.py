"""Test cases for datum specs, perturbations and the adversarial rarefaction"""

import math
from unittest.mock import MagicMock, patch

import numpy as np
import pytest

from src.core.errors import InputError
from src.core.types import Family, State, StepFunction, WaveKind
from src.riemann.solver import solve_riemann
from src.scenario.datum import build_piecewise_datum
from src.scenario.perturbation import (
    DatumSpec,
    adversarial_rarefaction,
    bv_comb,
    build_datum,
    perturb,
    smooth_perturbation,
)


class TestDatumSpec:
    """Test cases for DatumSpec"""

    def test_from_dict_nested_adversarial(self):
        """Test the nested adversarial object and list supports"""
        spec = DatumSpec.from_dict(
            {
                "kind": "perturbed",
                "support": [-10.0, 10.0],
                "adversarial": {"strength": 0.01, "placement": -100.0},
            }
        )
        assert spec.support == (-10.0, 10.0)
        assert spec.adversarial_strength == 0.01
        assert spec.adversarial_placement == -100.0
        assert DatumSpec.from_dict(spec.to_dict()) == spec

    @pytest.mark.parametrize(
        "data,message",
        [
            ({}, "Missing required field: kind"),
            ({"kind": "spiral"}, "Unknown datum kind 'spiral'"),
            ({"kind": "perturbed", "base": "constant"}, "Unknown base kind"),
            ({"kind": "perturbed", "norm": "L2"}, "Unknown norm 'L2'"),
            ({"kind": "constant", "colour": 1}, "Unknown datum fields"),
            ({"kind": "constant", "adversarial": {"speed": 1.0}}, "Unknown adversarial fields"),
            ({"kind": "perturbed", "n_teeth": 0}, "n_teeth and n_modes"),
        ],
    )
    def test_from_dict_errors(self, data, message):
        """Test rejected datum descriptions"""
        with pytest.raises(InputError, match=message):
            DatumSpec.from_dict(data)

    def test_default_support(self, scenario):
        """Test (−a + 1, a − 1) and the interval check"""
        assert DatumSpec("perturbed").support_for(scenario) == (-26.0, 26.0)
        with pytest.raises(InputError, match="support must be an interval"):
            DatumSpec("perturbed", support=(1.0, -1.0)).support_for(scenario)


class TestPerturb:
    """Test cases for perturb and its building blocks"""

    def test_bv_comb_total_variation(self):
        """Test that the comb carries exactly the requested TV"""
        comb = bv_comb(np.random.default_rng(0), (-10.0, 10.0), 1e-6, 5)
        assert len(comb.breakpoints) == 10
        assert comb.left_tail == comb.right_tail == State(0.0, 0.0, 0.0)
        assert comb.total_variation() == pytest.approx(1e-6)

    def test_bv_perturbation(self, scenario):
        """Test the seeded comb on top of Z"""
        datum = build_piecewise_datum(scenario, scenario.system)
        spec = DatumSpec("perturbed", budget=1e-6, seed=5)
        result = perturb(datum, spec)
        assert result.norm_kind == "BV"
        assert result.norm == pytest.approx(1e-6)
        assert len(result.datum.breakpoints) == 2 + 2 * 10
        assert perturb(datum, spec).datum == result.datum
        assert perturb(datum, DatumSpec("perturbed", budget=1e-6, seed=6)).datum != result.datum

    def test_smooth_perturbation_norm(self):
        """Test that the W^{1,∞} norm is scaled to the budget"""
        smooth = smooth_perturbation(np.random.default_rng(2), (-5.0, 5.0), 1e-7)
        assert smooth.w1inf_norm() == pytest.approx(1e-7, rel=1e-9)
        values = smooth.value(np.array([-5.0, 5.0, 7.0]))
        assert np.all(values == 0.0)

    def test_w1inf_perturbation(self, scenario):
        """Test the sampled smooth perturbation on top of Z"""
        datum = build_piecewise_datum(scenario, scenario.system)
        spec = DatumSpec("perturbed", budget=1e-7, norm="W1inf", support=(-5.0, 5.0), mesh=0.5)
        result = perturb(datum, spec)
        assert result.norm_kind == "W1inf"
        assert result.norm == pytest.approx(1e-7, rel=1e-9)
        assert result.datum.left_tail == datum.left_tail
        assert result.datum.right_tail == datum.right_tail

    def test_zero_budget(self, scenario):
        """Test that a zero budget leaves the datum alone"""
        datum = build_piecewise_datum(scenario, scenario.system)
        assert perturb(datum, DatumSpec("perturbed")).datum == datum

    @pytest.mark.parametrize(
        "spec,message",
        [
            (DatumSpec("perturbed", budget=1e-3), "budget must lie"),
            (DatumSpec("perturbed", budget=-1e-9), "budget must lie"),
            (DatumSpec("perturbed", budget=1e-7, support=(-30.0, 0.0)), "must lie inside"),
        ],
    )
    def test_budget_errors(self, scenario, spec, message):
        """Test the budget bound r and the BV support window"""
        datum = build_piecewise_datum(scenario, scenario.system)
        with pytest.raises(InputError, match=message):
            perturb(datum, spec)


class TestAdversarialRarefaction:
    """Test cases for adversarial_rarefaction"""

    def test_default_placement(self, scenario):
        """Test the 3-rarefaction aimed at 0.9·t_apex"""
        datum = build_piecewise_datum(scenario, scenario.system)
        result = adversarial_rarefaction(datum, scenario, scenario.system, 0.5 * scenario.omega)

        assert result.arrival == pytest.approx(0.9 * scenario.t_apex)
        assert result.placement < -scenario.a
        assert result.datum.breakpoints[0] == result.placement
        assert result.datum.breakpoints[1:] == datum.breakpoints

        left, right = result.datum.values[0], result.datum.values[1]
        assert right == datum.left_tail
        (wave,) = solve_riemann(left, right, scenario.system).waves
        assert wave.family is Family.THREE
        assert wave.kind is WaveKind.RAREFACTION
        assert wave.strength == pytest.approx(0.5 * scenario.omega, abs=1e-12)

    @patch("src.scenario.perturbation.get_debug_logger")
    def test_placement_outside_window_warns(self, mock_get_logger, scenario):
        """Test that an early arrival is logged, not refused"""
        mock_logger = MagicMock()
        mock_get_logger.return_value = mock_logger
        datum = build_piecewise_datum(scenario, scenario.system)

        result = adversarial_rarefaction(datum, scenario, scenario.system, 0.01, placement=-30.0)

        assert result.arrival < 0.8 * scenario.t_apex
        mock_logger.warning.assert_called_once()

    @pytest.mark.parametrize(
        "strength,placement,message",
        [
            (0.05, None, "strength must lie"),
            (0.01, -26.0, "placement must lie left of"),
        ],
    )
    def test_errors(self, scenario, strength, placement, message):
        """Test the strength range and the placement bound"""
        datum = build_piecewise_datum(scenario, scenario.system)
        with pytest.raises(InputError, match=message):
            adversarial_rarefaction(datum, scenario, scenario.system, strength, placement)

    def test_zero_strength(self, scenario):
        """Test that no rarefaction is inserted for strength 0"""
        datum = build_piecewise_datum(scenario, scenario.system)
        result = adversarial_rarefaction(datum, scenario, scenario.system, 0.0)
        assert result.datum == datum
        assert math.isnan(result.placement)


class TestBuildDatum:
    """Test cases for build_datum"""

    def test_constant(self, scenario):
        """Test the constant datum U ≡ U_I"""
        built = build_datum(DatumSpec("constant"))
        assert built.datum == StepFunction.constant(scenario.U_I)
        assert built.notes["total_variation"] == 0.0

    def test_perturbed_with_adversarial(self):
        """Test that notes echo every step of the assembly"""
        built = build_datum(
            DatumSpec("perturbed", budget=1e-7, seed=1, adversarial_strength=0.01)
        )
        assert built.notes["perturbation_kind"] == "BV"
        assert built.notes["perturbation_norm"] == pytest.approx(1e-7)
        assert built.notes["adversarial_placement"] == built.datum.breakpoints[0]
        assert built.notes["total_variation"] == pytest.approx(built.datum.total_variation())

    def test_mollified_close_to_compression(self, scenario):
        """Test that Ũ is a genuine smoothing within TV distance r of V"""
        built = build_datum(DatumSpec("mollified_U"))
        compression = build_datum(DatumSpec("compression_V"))
        assert 0.0 < built.notes["tv_difference"] < scenario.r
        assert built.datum != compression.datum
        assert built.notes["radius"] < 10.0 * built.notes["mesh"]
