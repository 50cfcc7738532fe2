"""Core type definitions shared across shocktrack"""

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Any, TypedDict

import numpy as np


class Family(IntEnum):
    """Characteristic family of a wave or front

    Non-physical fronts travel faster than every characteristic speed, so
    they sort after the physical families.
    """

    ONE = 1
    TWO = 2
    THREE = 3
    NONPHYSICAL = 4

    @property
    def label(self) -> str:
        return "NP" if self is Family.NONPHYSICAL else str(self.value)

    @classmethod
    def from_label(cls, label: str | int) -> "Family":
        if str(label).upper() == "NP":
            return cls.NONPHYSICAL
        return cls(int(label))


class WaveKind(Enum):
    """Kind of an elementary wave"""

    SHOCK = "shock"
    RAREFACTION = "rarefaction"
    NONPHYSICAL = "nonphysical"


class InteractionKind(Enum):
    """Classification of an interaction event"""

    CROSSING = "crossing"
    REFLECTION = "reflection"
    MERGE = "merge"
    CANCELLATION = "cancellation"
    NONPHYSICAL = "nonphysical"


@dataclass(frozen=True, slots=True)
class State:
    """A point (u, v, w) of the state space"""

    u: float
    v: float
    w: float

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w], dtype=float)

    @classmethod
    def from_array(cls, values: Any) -> "State":
        u, v, w = (float(x) for x in values)
        return cls(u, v, w)

    def norm(self) -> float:
        return math.sqrt(self.u * self.u + self.v * self.v + self.w * self.w)

    def distance(self, other: "State") -> float:
        return math.sqrt(
            (self.u - other.u) ** 2 + (self.v - other.v) ** 2 + (self.w - other.w) ** 2
        )

    def to_list(self) -> list[float]:
        return [self.u, self.v, self.w]


@dataclass(frozen=True, slots=True)
class Wave:
    """An elementary wave of a Riemann solution

    ``parameter`` is the signed wave-curve parameter: for families 1 and 3 the
    coefficient of the eigenvector, for family 2 the signed v-jump. Its
    modulus is the strength.
    """

    family: Family
    kind: WaveKind
    strength: float
    left_state: State
    right_state: State
    speed_lo: float
    speed_hi: float
    parameter: float = 0.0

    @property
    def speed(self) -> float:
        return 0.5 * (self.speed_lo + self.speed_hi)

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family.label,
            "kind": self.kind.value,
            "strength": self.strength,
            "parameter": self.parameter,
            "left_state": self.left_state.to_list(),
            "right_state": self.right_state.to_list(),
            "speed_lo": self.speed_lo,
            "speed_hi": self.speed_hi,
        }


@dataclass(frozen=True)
class RiemannSolution:
    """Ordered waves solving a Riemann problem, left to right"""

    left_state: State
    right_state: State
    waves: tuple[Wave, ...] = ()

    @property
    def intermediate_states(self) -> list[State]:
        return [wave.right_state for wave in self.waves[:-1]]

    def parameters(self) -> dict[Family, float]:
        """Signed wave-curve parameter per family (0 when absent)"""
        result = {family: 0.0 for family in Family}
        for wave in self.waves:
            result[wave.family] += wave.parameter
        return result

    def to_dict(self) -> dict[str, Any]:
        return {
            "left_state": self.left_state.to_list(),
            "right_state": self.right_state.to_list(),
            "waves": [wave.to_dict() for wave in self.waves],
        }


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant profile

    ``values[k]`` holds on (breakpoints[k-1], breakpoints[k]); the first and
    last values are the constant tails.
    """

    breakpoints: tuple[float, ...]
    values: tuple[State, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValueError(
                f"StepFunction needs {len(self.breakpoints) + 1} values, "
                f"got {len(self.values)}"
            )
        for left, right in zip(self.breakpoints, self.breakpoints[1:], strict=False):
            if not right > left:
                raise ValueError("Breakpoints must be strictly increasing")

    @classmethod
    def constant(cls, state: State) -> "StepFunction":
        return cls((), (state,))

    @classmethod
    def from_pieces(
        cls, breakpoints: list[float], values: list[State]
    ) -> "StepFunction":
        """Build a profile, dropping breakpoints across which nothing jumps"""
        kept_points: list[float] = []
        kept_values: list[State] = [values[0]]
        for point, value in zip(breakpoints, values[1:], strict=True):
            if value == kept_values[-1]:
                continue
            kept_points.append(float(point))
            kept_values.append(value)
        return cls(tuple(kept_points), tuple(kept_values))

    @property
    def left_tail(self) -> State:
        return self.values[0]

    @property
    def right_tail(self) -> State:
        return self.values[-1]

    def jumps(self) -> list[tuple[float, State, State]]:
        """(position, left value, right value) per breakpoint"""
        return [
            (x, self.values[k], self.values[k + 1])
            for k, x in enumerate(self.breakpoints)
        ]

    def total_variation(self) -> float:
        return sum(left.distance(right) for _, left, right in self.jumps())

    def value_at(self, x: float) -> State:
        """Right-continuous evaluation"""
        index = int(np.searchsorted(np.asarray(self.breakpoints), x, side="right"))
        return self.values[index]

    def to_rows(self) -> list[dict[str, float]]:
        """datum.csv rows: each breakpoint with the value on its right,
        led by x = −inf carrying the left tail"""
        points = [-math.inf, *self.breakpoints]
        return [
            {"x": x, "u": value.u, "v": value.v, "w": value.w}
            for x, value in zip(points, self.values, strict=True)
        ]

    @classmethod
    def from_rows(cls, rows: list[dict[str, Any]]) -> "StepFunction":
        if not rows:
            raise ValueError("A datum needs at least one row")
        values = tuple(State(float(r["u"]), float(r["v"]), float(r["w"])) for r in rows)
        return cls(tuple(float(r["x"]) for r in rows[1:]), values)

    def component(self, name: str) -> tuple[np.ndarray, np.ndarray]:
        """Breakpoints and the values of one component as arrays"""
        return (
            np.asarray(self.breakpoints, dtype=float),
            np.array([getattr(value, name) for value in self.values]),
        )


@dataclass(frozen=True, slots=True)
class Front:
    """A discontinuity line in space-time

    The front is born at (birth_t, birth_x) and travels at constant speed
    until ``death_t`` (None while alive).
    """

    id: int
    family: Family
    kind: WaveKind
    birth_t: float
    birth_x: float
    speed: float
    left_state: State
    right_state: State
    strength: float
    parameter: float = 0.0
    generation: int = 0
    parents: tuple[int, ...] = ()
    death_t: float | None = None

    def position(self, t: float) -> float:
        return self.birth_x + self.speed * (t - self.birth_t)

    def alive_at(self, t: float) -> bool:
        """Alive on [birth_t, death_t): events return post-event profiles"""
        if t < self.birth_t:
            return False
        return self.death_t is None or t < self.death_t

    @property
    def is_physical(self) -> bool:
        return self.family is not Family.NONPHYSICAL

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "family": self.family.label,
            "kind": self.kind.value,
            "birth_t": self.birth_t,
            "birth_x": self.birth_x,
            "speed": self.speed,
            "left_state": self.left_state.to_list(),
            "right_state": self.right_state.to_list(),
            "strength": self.strength,
            "parameter": self.parameter,
            "generation": self.generation,
            "parents": list(self.parents),
            "death_t": self.death_t,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Front":
        return cls(
            id=int(data["id"]),
            family=Family.from_label(data["family"]),
            kind=WaveKind(data["kind"]),
            birth_t=float(data["birth_t"]),
            birth_x=float(data["birth_x"]),
            speed=float(data["speed"]),
            left_state=State.from_array(data["left_state"]),
            right_state=State.from_array(data["right_state"]),
            strength=float(data["strength"]),
            parameter=float(data.get("parameter", 0.0)),
            generation=int(data.get("generation", 0)),
            parents=tuple(int(i) for i in data.get("parents", ())),
            death_t=None if data.get("death_t") is None else float(data["death_t"]),
        )

    def row(self) -> "FrontRow":
        """fronts.csv row; lineage reads g<generation><-<parent ids>"""
        return {
            "id": self.id,
            "family": self.family.label,
            "birth_t": self.birth_t,
            "death_t": "" if self.death_t is None else self.death_t,
            "strength": self.strength,
            "lineage": f"g{self.generation}<-" + " ".join(str(i) for i in self.parents),
        }


@dataclass(frozen=True, slots=True)
class GlimmSample:
    """Glimm functional value V + C·Q"""

    total_strength: float
    interaction_potential: float
    coupling: float

    @property
    def value(self) -> float:
        return self.total_strength + self.coupling * self.interaction_potential


@dataclass(frozen=True)
class InteractionEvent:
    """One resolved interaction of two or more fronts"""

    index: int
    t: float
    x: float
    incoming: tuple[int, ...]
    outgoing: tuple[int, ...]
    kind: InteractionKind
    solver: str
    glimm: GlimmSample
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "t": self.t,
            "x": self.x,
            "incoming": list(self.incoming),
            "outgoing": list(self.outgoing),
            "kind": self.kind.value,
            "solver": self.solver,
            "V": self.glimm.total_strength,
            "Q": self.glimm.interaction_potential,
            "F": self.glimm.value,
            "coupling": self.glimm.coupling,
            "details": self.details,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "InteractionEvent":
        return cls(
            index=int(data["index"]),
            t=float(data["t"]),
            x=float(data["x"]),
            incoming=tuple(int(i) for i in data["incoming"]),
            outgoing=tuple(int(i) for i in data["outgoing"]),
            kind=InteractionKind(data["kind"]),
            solver=data["solver"],
            glimm=GlimmSample(float(data["V"]), float(data["Q"]), float(data["coupling"])),
            details=dict(data.get("details", {})),
        )

    def row(self) -> "EventRow":
        return {
            "t": self.t,
            "x": self.x,
            "in_ids": " ".join(str(i) for i in self.incoming),
            "out_ids": " ".join(str(i) for i in self.outgoing),
            "V": self.glimm.total_strength,
            "Q": self.glimm.interaction_potential,
            "F": self.glimm.value,
        }


class EventRow(TypedDict):
    """Row of events.csv"""

    t: float
    x: float
    in_ids: str
    out_ids: str
    V: float
    Q: float
    F: float


class FrontRow(TypedDict):
    """Row of fronts.csv"""

    id: int
    family: str
    birth_t: float
    death_t: float | str
    strength: float
    lineage: str
