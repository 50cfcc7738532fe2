"""Reflected generations R_j, S_j and their strength decay"""

import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from typing import Any

from ..core.errors import InputError
from ..core.types import Family, InteractionKind, WaveKind
from ..front_tracking.models import FTSolution
from ..scenario.params import ScenarioParams
from .big_shocks import BigShocks, Lineage
from .censuses import region_of


@dataclass
class Generation:
    """Strongest 3-front R_j and 1-front S_j carrying reflection counter j"""

    j: int
    R_strength: float = 0.0
    S_strength: float = 0.0
    R_front: int | None = None
    S_front: int | None = None
    reflection_times: list[float] = field(default_factory=list)

    @property
    def strength(self) -> float:
        return max(self.R_strength, self.S_strength)

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "strength": self.strength}


def _inside(front, big: BigShocks, lineage: Lineage) -> bool:
    """Whether the front lies between J_ℓ and J_r at the middle of its life
    before the big shocks meet"""
    end = min(lineage.end_time(front), big.t_stop)
    if end <= front.birth_t:
        return False
    t_mid = 0.5 * (front.birth_t + end)
    try:
        return region_of(front, t_mid, big) == "between"
    except InputError:
        return False


def extract_reflections(
    sol: FTSolution, big: BigShocks, sp: ScenarioParams
) -> list[Generation]:
    """Generations 0, 1, ... of interior 1-/3-shocks, stopping at the first gap"""
    if not big.found:
        return []
    lineage = Lineage(sol)
    found: dict[int, Generation] = {}
    for front in sol.fronts.values():
        if front.family not in (Family.ONE, Family.THREE) or front.kind is not WaveKind.SHOCK:
            continue
        if not _inside(front, big, lineage):
            continue
        generation = found.setdefault(front.generation, Generation(front.generation))
        if front.family is Family.THREE and front.strength > generation.R_strength:
            generation.R_strength, generation.R_front = front.strength, front.id
        if front.family is Family.ONE and front.strength > generation.S_strength:
            generation.S_strength, generation.S_front = front.strength, front.id
        event = lineage.birth_event.get(front.id)
        if event is not None and event.kind is InteractionKind.REFLECTION:
            if front.family not in {sol.fronts[i].family for i in event.incoming}:
                generation.reflection_times.append(event.t)
        elif front.birth_t == 0.0 and front.generation == 0:
            generation.reflection_times.append(0.0)

    generations = []
    for j in range(len(found)):
        if j not in found:
            break
        generation = found[j]
        generation.reflection_times = sorted(set(generation.reflection_times))
        generations.append(generation)
    return generations


def reflection_parity(sol: FTSolution, big: BigShocks) -> list[dict[str, Any]]:
    """Reflections that break the parity of the cascade

    A 1-front bouncing off J_ℓ spawns a 3-front one generation deeper back
    into the region, and a 3-front bouncing off J_r a 1-front. Reflections
    sending waves away from the region are not part of the cascade.
    """
    if not big.found:
        return []
    assert big.Jl is not None and big.Jr is not None
    Jl_ids, Jr_ids = big.Jl.ids, big.Jr.ids
    violations = []
    for event in sol.events:
        if event.kind is not InteractionKind.REFLECTION or event.t >= big.t_stop:
            continue
        incoming = [sol.fronts[i] for i in event.incoming]
        families = {f.family for f in incoming}
        ids = set(event.incoming)
        for front_id in event.outgoing:
            front = sol.fronts[front_id]
            if front.family not in (Family.ONE, Family.THREE) or front.family in families:
                continue
            shock_ids = Jl_ids if front.family is Family.THREE else Jr_ids
            if not ids & shock_ids:
                continue
            source = Family.ONE if front.family is Family.THREE else Family.THREE
            parents = [f for f in incoming if f.family is source]
            if not any(f.generation == front.generation - 1 for f in parents):
                violations.append(
                    {
                        "event": event.index,
                        "t": event.t,
                        "front_id": front_id,
                        "family": front.family.label,
                        "generation": front.generation,
                    }
                )
    return violations


@dataclass(frozen=True)
class DecayFit:
    ratio: float
    K_low: float
    K_high: float
    J_used: int

    @property
    def K(self) -> float:
        return max(1.0, self.K_low, self.K_high)

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "K": self.K}


def decay_fit(strengths: Sequence[float], sp: ScenarioParams) -> DecayFit:
    """Tightest K with ω^{j+1}√ε/K ≤ s_j ≤ K·ω^{j+1} over all generations

    ``ratio`` is the geometric mean of successive strength ratios.

    Raises:
        InputError: With fewer than two generations or a non-positive strength
    """
    if len(strengths) < 2:
        raise InputError(f"decay_fit needs at least 2 generations, got {len(strengths)}")
    if any(not s > 0.0 for s in strengths):
        raise InputError(f"Generation strengths must be positive, got {list(strengths)}")
    scales = [sp.omega ** (j + 1) for j in range(len(strengths))]
    root_eps = math.sqrt(sp.eps)
    ratio = (strengths[-1] / strengths[0]) ** (1.0 / (len(strengths) - 1))
    return DecayFit(
        ratio=ratio,
        K_low=max(scale / (root_eps * s) for s, scale in zip(strengths, scales, strict=True)),
        K_high=max(s / scale for s, scale in zip(strengths, scales, strict=True)),
        J_used=len(strengths),
    )
