"""Parameters and result record of a front-tracking run"""

from dataclasses import dataclass, field
from typing import Any

from ..core.errors import InputError
from ..core.types import Front, GlimmSample, InteractionEvent, State, StepFunction

MAX_CHARACTERISTIC_SPEED = 5.0


@dataclass(frozen=True)
class FTParams:
    """Front-tracking controls

    ``thresh_simplified`` defaults to delta_rar³. ``big_2shock_strength`` is
    the strength above which a 2-front counts as one of the big shocks for
    generation bookkeeping; None disables the bookkeeping.
    """

    delta_rar: float
    t_end: float
    thresh_simplified: float | None = None
    np_speed: float = 10.0
    max_fronts: int = 20000
    clip: float | None = None
    glimm_coupling: float = 100.0
    min_strength: float = 1e-13
    big_2shock_strength: float | None = None

    def __post_init__(self) -> None:
        if not self.delta_rar > 0.0:
            raise InputError(f"delta_rar must be positive, got {self.delta_rar}")
        if self.thresh_simplified is not None and not self.thresh_simplified > 0.0:
            raise InputError("thresh_simplified must be positive")
        if not self.np_speed > MAX_CHARACTERISTIC_SPEED:
            raise InputError(
                f"np_speed must exceed {MAX_CHARACTERISTIC_SPEED}, got {self.np_speed}"
            )
        if not self.t_end > 0.0:
            raise InputError(f"t_end must be positive, got {self.t_end}")
        if self.max_fronts < 1:
            raise InputError("max_fronts must be at least 1")
        if self.clip is not None and not self.clip > 0.0:
            raise InputError("clip half-width must be positive")

    @property
    def threshold(self) -> float:
        if self.thresh_simplified is not None:
            return self.thresh_simplified
        return self.delta_rar**3

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FTParams":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise InputError(f"Unknown front-tracking parameters: {sorted(unknown)}")
        for name in ("delta_rar", "t_end"):
            if name not in data:
                raise InputError(f"Missing required field: {name}")
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        return {
            "delta_rar": self.delta_rar,
            "t_end": self.t_end,
            "thresh_simplified": self.thresh_simplified,
            "np_speed": self.np_speed,
            "max_fronts": self.max_fronts,
            "clip": self.clip,
            "glimm_coupling": self.glimm_coupling,
            "min_strength": self.min_strength,
            "big_2shock_strength": self.big_2shock_strength,
        }


@dataclass
class TailChange:
    """A front left the clip window and replaced the outer constant state"""

    t: float
    side: str
    front_id: int
    state: State


@dataclass
class FTSolution:
    """Space-time record of a front-tracking run

    ``fronts`` holds every front ever created, keyed by id, with its death
    time filled in. ``horizon`` is the last time the record covers.
    """

    datum: StepFunction
    params: FTParams
    eta: float
    fronts: dict[int, Front] = field(default_factory=dict)
    events: list[InteractionEvent] = field(default_factory=list)
    initial_glimm: GlimmSample | None = None
    tails: list[TailChange] = field(default_factory=list)
    horizon: float = 0.0
    truncated: bool = False
    failure: dict[str, Any] | None = None
    np_total: float = 0.0
    n_simplified: int = 0

    def alive_at(self, t: float) -> list[Front]:
        """Fronts alive at t ordered left to right just after t"""
        alive = [front for front in self.fronts.values() if front.alive_at(t)]
        return sorted(alive, key=lambda f: (f.position(t), f.speed))

    def tails_at(self, t: float) -> tuple[State, State]:
        left, right = self.datum.left_tail, self.datum.right_tail
        for change in self.tails:
            if change.t > t:
                break
            if change.side == "left":
                left = change.state
            else:
                right = change.state
        return left, right

    @property
    def initial_fronts(self) -> list[Front]:
        return [front for front in self.fronts.values() if front.birth_t == 0.0]

    def summary(self) -> dict[str, Any]:
        return {
            "n_fronts": len(self.fronts),
            "n_events": len(self.events),
            "horizon": self.horizon,
            "truncated": self.truncated,
            "np_total": self.np_total,
            "n_simplified": self.n_simplified,
            "failure": self.failure,
        }

    def to_dict(self) -> dict[str, Any]:
        """Lossless record, the content of run.json"""
        return {
            "datum": self.datum.to_rows(),
            "params": self.params.to_dict(),
            "eta": self.eta,
            "fronts": [front.to_dict() for front in self.fronts.values()],
            "events": [event.to_dict() for event in self.events],
            "initial_glimm": (
                None
                if self.initial_glimm is None
                else {
                    "V": self.initial_glimm.total_strength,
                    "Q": self.initial_glimm.interaction_potential,
                    "coupling": self.initial_glimm.coupling,
                }
            ),
            "tails": [
                {"t": c.t, "side": c.side, "front_id": c.front_id, "state": c.state.to_list()}
                for c in self.tails
            ],
            **self.summary(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FTSolution":
        glimm = data.get("initial_glimm")
        fronts = [Front.from_dict(item) for item in data["fronts"]]
        return cls(
            datum=StepFunction.from_rows(data["datum"]),
            params=FTParams.from_dict(data["params"]),
            eta=float(data["eta"]),
            fronts={front.id: front for front in fronts},
            events=[InteractionEvent.from_dict(item) for item in data["events"]],
            initial_glimm=(
                None
                if glimm is None
                else GlimmSample(glimm["V"], glimm["Q"], glimm["coupling"])
            ),
            tails=[
                TailChange(c["t"], c["side"], c["front_id"], State.from_array(c["state"]))
                for c in data.get("tails", [])
            ],
            horizon=float(data["horizon"]),
            truncated=bool(data["truncated"]),
            failure=data.get("failure"),
            np_total=float(data.get("np_total", 0.0)),
            n_simplified=int(data.get("n_simplified", 0)),
        )
