"""Identification of the two big 2-shocks J_ℓ and J_r"""

from dataclasses import dataclass, field
from typing import Any

from ..core.types import Family, Front, InteractionEvent
from ..front_tracking.models import FTSolution
from ..scenario.params import ScenarioParams
from ..utils.logger import get_debug_logger

BIRTH_WINDOW = 0.5
DRIFT_FACTOR = 3.0


class Lineage:
    """Birth and death events of every front of a run"""

    def __init__(self, sol: FTSolution):
        self.sol = sol
        self.death_event: dict[int, InteractionEvent] = {}
        self.birth_event: dict[int, InteractionEvent] = {}
        for event in sol.events:
            for front_id in event.incoming:
                self.death_event[front_id] = event
            for front_id in event.outgoing:
                self.birth_event[front_id] = event

    def end_time(self, front: Front) -> float:
        return front.death_t if front.death_t is not None else self.sol.horizon


@dataclass
class Trajectory:
    """A big 2-shock followed across the interactions it survives"""

    label: str
    segments: list[Front]
    end_t: float
    met: bool = False
    drift_flags: list[dict[str, Any]] = field(default_factory=list)

    @property
    def start_t(self) -> float:
        return self.segments[0].birth_t

    @property
    def ids(self) -> set[int]:
        return {front.id for front in self.segments}

    def front_at(self, t: float) -> Front | None:
        """Segment alive at t, the last one extended to end_t"""
        for index, front in enumerate(self.segments):
            last = index == len(self.segments) - 1
            end = self.end_t if last else self.segments[index + 1].birth_t
            if front.birth_t <= t < end or (last and t == end):
                return front
        return None

    def position_at(self, t: float) -> float | None:
        front = self.front_at(t)
        return None if front is None else front.position(t)

    @property
    def drift(self) -> float:
        duration = self.end_t - self.start_t
        if duration <= 0.0:
            return self.segments[0].speed
        last = self.segments[-1]
        return (last.position(self.end_t) - self.segments[0].birth_x) / duration

    def polyline(self) -> list[tuple[float, float, float]]:
        points = [(f.birth_t, f.birth_x, f.strength) for f in self.segments]
        last = self.segments[-1]
        points.append((self.end_t, last.position(self.end_t), last.strength))
        return points

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "front_ids": [f.id for f in self.segments],
            "start_t": self.start_t,
            "end_t": self.end_t,
            "met": self.met,
            "drift": self.drift,
            "polyline": [list(point) for point in self.polyline()],
            "drift_flags": self.drift_flags,
        }


@dataclass
class BigShocks:
    Jl: Trajectory | None
    Jr: Trajectory | None
    t_meet: float | None

    @property
    def found(self) -> bool:
        return self.Jl is not None and self.Jr is not None

    @property
    def t_stop(self) -> float:
        """Meeting time, or the earlier end when the shocks never meet"""
        if self.t_meet is not None:
            return self.t_meet
        ends = [j.end_t for j in (self.Jl, self.Jr) if j is not None]
        return min(ends) if ends else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "found": self.found,
            "t_meet": self.t_meet,
            "Jl": self.Jl.to_dict() if self.Jl else None,
            "Jr": self.Jr.to_dict() if self.Jr else None,
        }


def _is_big(front: Front, sp: ScenarioParams) -> bool:
    return front.family is Family.TWO and front.strength >= 0.5 * sp.omega


def _follow(
    root: Front, label: str, lineage: Lineage, sp: ScenarioParams
) -> Trajectory:
    """Continue through every event that keeps a single big 2-front alive"""
    fronts = lineage.sol.fronts
    segments = [root]
    drift_flags: list[dict[str, Any]] = []
    while True:
        current = segments[-1]
        event = lineage.death_event.get(current.id)
        if event is None:
            return Trajectory(label, segments, lineage.end_time(current), False, drift_flags)
        others = [
            fronts[i] for i in event.incoming if i != current.id and _is_big(fronts[i], sp)
        ]
        if others:
            return Trajectory(label, segments, event.t, True, drift_flags)
        successors = [fronts[i] for i in event.outgoing if _is_big(fronts[i], sp)]
        if not successors:
            return Trajectory(label, segments, event.t, False, drift_flags)
        successor = max(successors, key=lambda f: f.strength)
        change = abs(successor.strength - current.strength)
        if change > sp.omega**2:
            drift_flags.append({"t": event.t, "event": event.index, "change": change})
            get_debug_logger().warning(
                f"{label} strength drifts by {change:.3e} (> ω² = {sp.omega**2:.3e}) "
                f"at event {event.index}, t={event.t:.6g}"
            )
        segments.append(successor)


def _candidates(sol: FTSolution, sp: ScenarioParams, x_center: float) -> list[Front]:
    """Root fronts of strength in [ω/2, 2ω] born within q/2 of x_center"""
    window = BIRTH_WINDOW * sp.q

    def eligible(front: Front) -> bool:
        return (
            front.family is Family.TWO
            and 0.5 * sp.omega <= front.strength <= 2.0 * sp.omega
            and abs(front.birth_x - x_center) <= window
        )

    matches = [f for f in sol.fronts.values() if eligible(f)]
    match_ids = {f.id for f in matches}
    return [f for f in matches if not match_ids.intersection(f.parents)]


def _pick(
    roots: list[Front], label: str, sign: float, lineage: Lineage, sp: ScenarioParams
) -> Trajectory | None:
    best: Trajectory | None = None
    for root in roots:
        trajectory = _follow(root, label, lineage, sp)
        drift = sign * trajectory.drift
        if not sp.omega / DRIFT_FACTOR <= drift <= DRIFT_FACTOR * sp.omega:
            continue
        duration = trajectory.end_t - trajectory.start_t
        if best is None or duration > best.end_t - best.start_t:
            best = trajectory
    return best


def identify_big_2shocks(sol: FTSolution, sp: ScenarioParams) -> BigShocks:
    """J_ℓ near −q drifting at ≈ +ω and J_r near +q drifting at ≈ −ω

    Either trajectory is None when no candidate qualifies (pattern absent).
    """
    lineage = Lineage(sol)
    Jl = _pick(_candidates(sol, sp, -sp.q), "Jl", 1.0, lineage, sp)
    Jr = _pick(_candidates(sol, sp, sp.q), "Jr", -1.0, lineage, sp)
    t_meet = None
    if Jl is not None and Jr is not None and Jl.met and Jr.met and Jl.end_t == Jr.end_t:
        t_meet = Jl.end_t
    return BigShocks(Jl, Jr, t_meet)
