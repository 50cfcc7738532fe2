"""Files of a run directory

A simulate run leaves datum.csv, scenario.json, events.csv, fronts.csv and
run.json (the lossless record read back by analyze), plus event_dump.json
when an interaction could not be resolved.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from ..core.errors import InputError
from ..core.types import StepFunction
from ..front_tracking.models import FTSolution
from ..scenario.params import ScenarioParams, derive_params
from ..scenario.perturbation import BuiltDatum
from ..utils.io_helpers import load_json_file, save_json_file, write_csv

DATUM_FILE = "datum.csv"
SCENARIO_FILE = "scenario.json"
EVENTS_FILE = "events.csv"
FRONTS_FILE = "fronts.csv"
RUN_FILE = "run.json"
EVENT_DUMP_FILE = "event_dump.json"
REPORT_FILE = "report.json"
DIAGRAM_FILE = "diagram.csv"

DATUM_FIELDS = ("x", "u", "v", "w")
EVENT_FIELDS = ("t", "x", "in_ids", "out_ids", "V", "Q", "F")
FRONT_FIELDS = ("id", "family", "birth_t", "death_t", "strength", "lineage")
DIAGRAM_FIELDS = ("front_id", "family", "t", "x", "strength", "label")


def ensure_writable(directory: Path) -> Path:
    """Create the directory if needed

    Raises:
        InputError: If it cannot be created or written
    """
    try:
        directory.mkdir(parents=True, exist_ok=True)
        marker = directory / ".write_check"
        marker.touch()
        marker.unlink()
    except OSError as e:
        raise InputError(f"Output directory {directory} is not writable: {e}") from e
    return directory


def write_datum(datum: StepFunction, directory: Path) -> Path:
    path = directory / DATUM_FILE
    write_csv(datum.to_rows(), path, DATUM_FIELDS)
    return path


def write_scenario(built: BuiltDatum, directory: Path) -> Path:
    """datum.csv plus scenario.json echoing every derived parameter"""
    write_datum(built.datum, directory)
    path = directory / SCENARIO_FILE
    save_json_file(
        {
            "params": built.params.to_dict(),
            "spec": built.spec.to_dict(),
            "notes": built.notes,
        },
        path,
    )
    return path


def write_solution(sol: FTSolution, directory: Path) -> None:
    write_csv((event.row() for event in sol.events), directory / EVENTS_FILE, EVENT_FIELDS)
    write_csv(
        (front.row() for front in sol.fronts.values()), directory / FRONTS_FILE, FRONT_FIELDS
    )
    save_json_file(sol.to_dict(), directory / RUN_FILE)
    if sol.failure is not None:
        save_json_file(sol.failure, directory / EVENT_DUMP_FILE)


@dataclass
class LoadedRun:
    solution: FTSolution
    params: ScenarioParams
    scenario: dict[str, Any]


def load_run(directory: str | Path) -> LoadedRun:
    """Read back run.json and scenario.json of a run directory

    Raises:
        InputError: If the directory or one of the files is missing or malformed
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"Run directory not found: {directory}")
    for name in (RUN_FILE, SCENARIO_FILE):
        if not (directory / name).exists():
            raise InputError(f"Missing run file: {directory / name}")
    scenario = load_json_file(directory / SCENARIO_FILE)
    try:
        solution = FTSolution.from_dict(load_json_file(directory / RUN_FILE))
        eps = float(scenario["params"]["eps"])
    except (KeyError, TypeError) as e:
        raise InputError(f"Malformed run files in {directory}: missing {e}") from e
    return LoadedRun(solution, derive_params(eps), scenario)
