"""Scenario runs from the initial datum to the pattern verdict"""

import math

import pytest

from src.core.types import Family, StepFunction, WaveKind
from src.front_tracking.tracker import evolve, init_fronts
from src.pattern_analysis.report import verify_pattern
from src.scenario.datum import compression_block, ramp_pieces
from src.scenario.params import default_ft_params
from src.scenario.perturbation import DatumSpec, build_datum


def run_scenario(spec: DatumSpec, **overrides):
    built = build_datum(spec)
    sp = built.params
    return sp, evolve(built.datum, default_ft_params(sp, **overrides), sp.system)


def coarse_compression(sp, mesh: float) -> StepFunction:
    """Both compression blocks with ramps sampled at ``mesh``"""
    breakpoints: list[float] = []
    values = [sp.U_I]
    U = sp.U_I
    for x_focus in (-sp.q, sp.q):
        ramps, U = compression_block(U, x_focus, sp.omega, mesh, sp.system)
        for ramp in ramps:
            points, states = ramp_pieces(ramp)
            breakpoints.extend(points)
            values.extend(states)
    return StepFunction.from_pieces(breakpoints, values)


@pytest.fixture
def z_run():
    """The unperturbed datum Z evolved to 2T̃"""
    return run_scenario(DatumSpec("piecewise_Z"))


class TestDatumZ:
    """Test cases for the piecewise-constant datum Z at eps = 0.3"""

    def test_initial_fronts(self, scenario):
        """Test two triples of 1-, 2- and 3-shocks of strength ω"""
        built = build_datum(DatumSpec("piecewise_Z"))
        fronts = init_fronts(built.datum, default_ft_params(scenario), scenario.system)

        assert [f.family for f in fronts] == [Family.ONE, Family.TWO, Family.THREE] * 2
        assert all(f.kind is WaveKind.SHOCK for f in fronts)
        assert [f.strength for f in fronts] == pytest.approx([scenario.omega] * 6, abs=1e-9)

    def test_pattern_verified(self, z_run):
        """Test the passing verdict with at least three generations and K within the cap"""
        sp, solution = z_run
        report = verify_pattern(solution, sp)

        assert not solution.truncated
        assert report.verdict.status == "pass"
        assert report.verdict.generations_found >= 3
        assert report.decay is not None
        assert report.decay.K <= 100.0
        assert report.big_shocks.t_meet == pytest.approx(sp.t_apex, rel=1e-3)

    def test_glimm_functional_never_increases(self, z_run):
        """Test F across the initial datum and every event"""
        _, solution = z_run
        values = [solution.initial_glimm.value] + [e.glimm.value for e in solution.events]
        assert len(values) > 1
        for before, after in zip(values, values[1:], strict=False):
            assert after <= before + 1e-10


class TestPerturbedRuns:
    """Test cases for seeded perturbations of Z run to the end time"""

    @pytest.mark.parametrize(
        "extra",
        [
            {"norm": "BV", "n_teeth": 2, "seed": 11},
            {"norm": "W1inf", "mesh": 2.0, "seed": 4},
        ],
    )
    def test_runs_to_end_time(self, scenario, extra):
        """Test that sub-rounding waves never stop a perturbed run"""
        spec = DatumSpec("perturbed", budget=0.5 * scenario.r, **extra)
        sp, solution = run_scenario(spec, delta_rar=1e-6)

        assert not solution.truncated
        assert solution.failure is None
        assert solution.horizon == pytest.approx(2.0 * sp.Ttilde)
        report = verify_pattern(solution, sp)
        assert report.big_shocks.found
        assert report.big_shocks.t_meet == pytest.approx(sp.t_apex, rel=1e-3)


class TestAdversarialRun:
    """Test cases for the pattern killer"""

    def test_verdict_fails_on_rarefaction_budget(self):
        """Test that the fan crossing J_ℓ pushes ℛ₁₃ past K_cap·r"""
        spec = DatumSpec("piecewise_Z", adversarial_strength=1e-3)
        sp, solution = run_scenario(spec, delta_rar=2.5e-4)
        report = verify_pattern(solution, sp)

        assert not solution.truncated
        assert report.verdict.status == "fail"
        assert not report.verdict.criteria["rarefaction_budget"]
        assert report.peak_rarefaction > 100.0 * sp.r


class TestCompressionCollapse:
    """Test cases for the ramps focusing into the six shocks of Z"""

    def test_six_shocks_after_collapse(self, scenario):
        """Test one 2-shock of order ω per block and strong 1-/3-shocks beside it"""
        sp = scenario
        datum = coarse_compression(sp, sp.omega / 10.0)
        solution = evolve(datum, default_ft_params(sp, delta_rar=1e-4, t_end=1.5), sp.system)
        assert not solution.truncated

        shocks = [f for f in solution.alive_at(1.5) if f.kind is WaveKind.SHOCK]
        floor_13 = 0.5 * sp.omega * math.sqrt(sp.eps)
        for x_focus, drift in ((-sp.q, 1.0), (sp.q, -1.0)):
            block = [f for f in shocks if (f.position(1.5) < 0.0) == (x_focus < 0.0)]

            big = [f for f in block if f.family is Family.TWO and f.strength >= 0.5 * sp.omega]
            assert len(big) == 1
            assert big[0].strength <= 2.0 * sp.omega
            assert abs(big[0].position(1.5) - x_focus) < 0.5 * sp.q
            assert sp.omega / 3.0 <= drift * big[0].speed <= 3.0 * sp.omega

            for family in (Family.ONE, Family.THREE):
                strongest = max(f.strength for f in block if f.family is family)
                assert floor_13 <= strongest <= 2.0 * sp.omega
