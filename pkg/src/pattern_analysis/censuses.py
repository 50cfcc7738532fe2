"""Regional wave censuses and the 𝒱₁₃ / ℛ₁₃ functionals"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

from ..core.errors import InputError
from ..core.types import Family, Front, WaveKind
from ..front_tracking.collisions import position_tolerance
from ..front_tracking.models import FTSolution
from ..scenario.params import ScenarioParams
from .big_shocks import BigShocks

REGIONS = ("left_of_Jl", "between", "right_of_Jr")
# families that must be absent from each outer region once the pattern settled
FORBIDDEN = {
    "left_of_Jl": (Family.TWO, Family.THREE),
    "right_of_Jr": (Family.ONE, Family.TWO),
}
CONFINEMENT_START = 8.0


def _left_of(front: Front, other: Front, t: float) -> bool:
    x, y = front.position(t), other.position(t)
    if abs(x - y) <= position_tolerance(y):
        return front.speed < other.speed
    return x < y


def region_of(front: Front, t: float, big: BigShocks) -> str:
    """Region of a live front at t, ties at a big shock broken by speed

    Raises:
        InputError: If either big shock is absent at t
    """
    Jl = big.Jl.front_at(t) if big.Jl else None
    Jr = big.Jr.front_at(t) if big.Jr else None
    if Jl is None or Jr is None:
        raise InputError(f"Big 2-shocks are not both present at t={t}")
    if front.id == Jl.id:
        return "Jl"
    if front.id == Jr.id:
        return "Jr"
    if _left_of(front, Jl, t):
        return "left_of_Jl"
    if _left_of(Jr, front, t):
        return "right_of_Jr"
    return "between"


@dataclass
class Census:
    region: str
    t: float
    counts: dict[str, int] = field(default_factory=dict)
    strengths: dict[str, float] = field(default_factory=dict)
    np_count: int = 0
    np_strength: float = 0.0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "region": self.region,
            "t": self.t,
            "counts": self.counts,
            "strengths": self.strengths,
            "total": self.total,
            "np_count": self.np_count,
            "np_strength": self.np_strength,
        }


def wave_census(
    sol: FTSolution,
    t: float,
    region: str,
    families: Iterable[Family],
    big: BigShocks,
) -> Census:
    """Count and total strength of the requested families in a region at t

    Non-physical fronts are tallied separately whatever ``families`` says.

    Raises:
        InputError: If the region is unknown, t lies outside the horizon or
            the big shocks are absent at t
    """
    if region not in REGIONS:
        raise InputError(f"Unknown region '{region}', expected one of {REGIONS}")
    if not 0.0 <= t <= sol.horizon:
        raise InputError(f"t={t} outside the run horizon [0, {sol.horizon}]")
    wanted = [f for f in families if f is not Family.NONPHYSICAL]
    census = Census(
        region,
        t,
        counts={f.label: 0 for f in wanted},
        strengths={f.label: 0.0 for f in wanted},
    )
    for front in sol.alive_at(t):
        if region_of(front, t, big) != region:
            continue
        if not front.is_physical:
            census.np_count += 1
            census.np_strength += front.strength
        elif front.family in wanted:
            census.counts[front.family.label] += 1
            census.strengths[front.family.label] += front.strength
    return census


def functionals_v13_r13(sol: FTSolution, big: BigShocks, t: float) -> tuple[float, float]:
    """Interior 1-/3-shock strength 𝒱₁₃ and 1-/3-rarefaction strength ℛ₁₃

    Raises:
        InputError: If t is outside the interval where both big shocks exist
    """
    if not big.found:
        raise InputError("Big 2-shocks not identified")
    assert big.Jl is not None and big.Jr is not None
    t_lo = max(big.Jl.start_t, big.Jr.start_t)
    if not t_lo <= t < big.t_stop:
        raise InputError(f"t={t} outside [{t_lo}, {big.t_stop}) where both big shocks exist")
    v13 = r13 = 0.0
    for front in sol.alive_at(t):
        if front.family not in (Family.ONE, Family.THREE):
            continue
        if region_of(front, t, big) != "between":
            continue
        if front.kind is WaveKind.SHOCK:
            v13 += front.strength
        else:
            r13 += front.strength
    return v13, r13


def peak_interior_rarefaction(sol: FTSolution, big: BigShocks) -> tuple[float, float]:
    """Largest ℛ₁₃(t) while both big shocks exist, and when it is reached

    Interior fronts keep their region for life, so ℛ₁₃ is a sum of
    lifetime indicators and its maximum follows from one sweep.
    """
    if not big.found:
        return 0.0, 0.0
    assert big.Jl is not None and big.Jr is not None
    t_lo = max(big.Jl.start_t, big.Jr.start_t)
    t_hi = big.t_stop
    changes: list[tuple[float, float]] = []
    for front in sol.fronts.values():
        if front.family not in (Family.ONE, Family.THREE):
            continue
        if front.kind is not WaveKind.RAREFACTION:
            continue
        start = max(front.birth_t, t_lo)
        end = min(front.death_t if front.death_t is not None else sol.horizon, t_hi)
        if start >= end or region_of(front, start, big) != "between":
            continue
        changes.append((start, front.strength))
        changes.append((end, -front.strength))
    # removals first at equal times: fronts die where their successors are born
    changes.sort(key=lambda change: (change[0], change[1]))
    peak, peak_t, level = 0.0, t_lo, 0.0
    for t, delta in changes:
        level += delta
        if level > peak:
            peak, peak_t = level, t
    return peak, peak_t


def confinement_violations(
    sol: FTSolution, big: BigShocks, sp: ScenarioParams
) -> list[dict[str, Any]]:
    """Fronts of forbidden families outside the big shocks on [8/ω, t_meet)

    A front keeps its region until it dies, since crossing a big shock is an
    interaction, so each front is checked once when it enters the window.
    """
    if not big.found:
        return []
    assert big.Jl is not None and big.Jr is not None
    t_lo = CONFINEMENT_START / sp.omega
    t_hi = big.t_stop
    own = big.Jl.ids | big.Jr.ids
    violations = []
    for front in sol.fronts.values():
        if not front.is_physical or front.id in own:
            continue
        start = max(front.birth_t, t_lo)
        end = min(front.death_t if front.death_t is not None else sol.horizon, t_hi)
        if start >= end:
            continue
        try:
            region = region_of(front, start, big)
        except InputError:
            continue
        if front.family in FORBIDDEN.get(region, ()):
            violations.append(
                {
                    "front_id": front.id,
                    "family": front.family.label,
                    "region": region,
                    "t": start,
                    "strength": front.strength,
                }
            )
    return violations
