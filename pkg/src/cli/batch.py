"""Seeded simulation runs, one output directory per seed"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from ..core.errors import InputError
from ..front_tracking.models import FTSolution
from ..front_tracking.tracker import evolve
from ..scenario.params import default_ft_params
from ..scenario.perturbation import build_datum
from ..utils.config import get_max_workers
from ..utils.io_helpers import save_json_file
from ..utils.logger import get_debug_logger
from .run_config import Precision, RunConfig
from .run_files import ensure_writable, write_scenario, write_solution

SUMMARY_FILE = "summary.json"
GLIMM_SLACK = 1e-12


@dataclass
class SeedResult:
    seed: int
    directory: str
    truncated: bool
    n_fronts: int
    n_events: int
    horizon: float
    glimm_nonincreasing: bool

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def glimm_nonincreasing(sol: FTSolution) -> bool:
    """F = V + C·Q never grows from one event to the next"""
    if sol.initial_glimm is None:
        return True
    values = [sol.initial_glimm.value, *(event.glimm.value for event in sol.events)]
    scale = max(values[0], 1.0)
    return all(
        later <= earlier + GLIMM_SLACK * scale
        for earlier, later in zip(values, values[1:], strict=False)
    )


def run_seed(config: RunConfig, seed: int) -> SeedResult:
    """Generate the datum of one seed, evolve it and write its directory"""
    logger = get_debug_logger()
    directory = ensure_writable(config.seed_dir(seed))
    built = build_datum(config.spec_for(seed))
    write_scenario(built, directory)
    params = default_ft_params(built.params, config.J_max, **config.ft)
    logger.info(
        f"Seed {seed}: {len(built.datum.breakpoints)} breakpoints, "
        f"t_end={params.t_end:.6g}, delta_rar={params.delta_rar:.3e}"
    )
    sol = evolve(built.datum, params, built.params.system)
    write_solution(sol, directory)
    monotone = glimm_nonincreasing(sol)
    if not monotone:
        logger.warning(f"Seed {seed}: Glimm functional increased at some event")
    if sol.truncated:
        logger.warning(f"Seed {seed}: run truncated at t={sol.horizon:.6g}")
    return SeedResult(
        seed=seed,
        directory=str(directory),
        truncated=sol.truncated,
        n_fronts=len(sol.fronts),
        n_events=len(sol.events),
        horizon=sol.horizon,
        glimm_nonincreasing=monotone,
    )


def run_batch(config: RunConfig) -> list[SeedResult]:
    """Run every seed of the configuration

    Several seeds run concurrently in worker processes; each writes only
    its own directory. The summary lands in output_dir/summary.json.

    Raises:
        InputError: If extended precision is requested or the output
            directory is not writable
    """
    if config.precision is Precision.EXTENDED:
        raise InputError("extended precision not built")
    ensure_writable(config.output_dir)
    if len(config.seeds) == 1:
        results = [run_seed(config, config.seeds[0])]
    else:
        with ProcessPoolExecutor(max_workers=get_max_workers()) as pool:
            futures = [pool.submit(run_seed, config, seed) for seed in config.seeds]
            results = [future.result() for future in futures]
    save_json_file(
        {
            "config": config.to_dict(),
            "runs": [result.to_dict() for result in results],
        },
        Path(config.output_dir) / SUMMARY_FILE,
    )
    return results
