"""Simulation run configuration"""

from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any

from ..core.errors import InputError
from ..front_tracking.models import FTParams
from ..pattern_analysis.report import DEFAULT_K_CAP, DEFAULT_MIN_GENERATIONS
from ..scenario.params import DEFAULT_J_MAX
from ..scenario.perturbation import DatumSpec
from ..utils.io_helpers import load_json_file


class Precision(Enum):
    """Floating-point mode of a run"""

    DOUBLE = "double"
    EXTENDED = "extended"


@dataclass(frozen=True)
class RunConfig:
    """Everything a simulate run needs

    ``scenario`` describes the datum; each seed replaces its seed. ``ft``
    holds FTParams overrides on top of the scenario defaults.
    """

    scenario: DatumSpec
    output_dir: Path
    ft: dict[str, Any] = field(default_factory=dict)
    seeds: tuple[int, ...] = ()
    min_generations: int = DEFAULT_MIN_GENERATIONS
    K_cap: float = DEFAULT_K_CAP
    precision: Precision = Precision.DOUBLE
    J_max: int = DEFAULT_J_MAX

    def __post_init__(self) -> None:
        if not self.seeds:
            object.__setattr__(self, "seeds", (self.scenario.seed,))
        if len(set(self.seeds)) != len(self.seeds):
            raise InputError(f"Seeds must be distinct, got {list(self.seeds)}")
        unknown = set(self.ft) - set(FTParams.__dataclass_fields__)
        if unknown:
            raise InputError(f"Unknown front-tracking parameters: {sorted(unknown)}")
        if self.min_generations < 1:
            raise InputError(f"min_generations must be at least 1, got {self.min_generations}")
        if not self.K_cap >= 1.0:
            raise InputError(f"K_cap must be at least 1, got {self.K_cap}")

    def spec_for(self, seed: int) -> DatumSpec:
        return replace(self.scenario, seed=seed)

    def seed_dir(self, seed: int) -> Path:
        return self.output_dir / f"seed_{seed}"

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path | None = None) -> "RunConfig":
        """Parse a run configuration

        ``scenario`` is either an inline datum description or the path of a
        JSON file holding one, relative to ``base_dir``.

        Raises:
            InputError: On unknown keys, missing fields or invalid values
        """
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise InputError(f"Unknown run configuration keys: {sorted(unknown)}")
        for name in ("scenario", "output_dir"):
            if name not in data:
                raise InputError(f"Missing required field: {name}")

        scenario = data["scenario"]
        if isinstance(scenario, str):
            path = Path(scenario)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            scenario = load_json_file(path)
        if not isinstance(scenario, dict):
            raise InputError("scenario must be an object or a file path")

        try:
            precision = Precision(data.get("precision", Precision.DOUBLE.value))
        except ValueError as e:
            raise InputError(
                f"Unknown precision '{data['precision']}', expected double or extended"
            ) from e
        output_dir = Path(data["output_dir"])
        if base_dir is not None and not output_dir.is_absolute():
            output_dir = base_dir / output_dir
        return cls(
            scenario=DatumSpec.from_dict(scenario),
            output_dir=output_dir,
            ft=dict(data.get("ft", {})),
            seeds=tuple(int(seed) for seed in data.get("seeds", ())),
            min_generations=int(data.get("min_generations", DEFAULT_MIN_GENERATIONS)),
            K_cap=float(data.get("K_cap", DEFAULT_K_CAP)),
            precision=precision,
            J_max=int(data.get("J_max", DEFAULT_J_MAX)),
        )

    @classmethod
    def load(cls, file_path: str | Path) -> "RunConfig":
        """Read a configuration file; relative paths resolve against its folder"""
        path = Path(file_path)
        return cls.from_dict(load_json_file(path), base_dir=path.parent)

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario.to_dict(),
            "output_dir": str(self.output_dir),
            "ft": dict(self.ft),
            "seeds": list(self.seeds),
            "min_generations": self.min_generations,
            "K_cap": self.K_cap,
            "precision": self.precision.value,
            "J_max": self.J_max,
        }
