"""Pattern verdict and space-time diagram export"""

from dataclasses import dataclass, field
from typing import Any

from ..core.errors import InputError
from ..core.types import InteractionKind
from ..front_tracking.models import FTSolution
from ..scenario.params import ScenarioParams
from ..utils.logger import get_debug_logger
from .big_shocks import BigShocks, identify_big_2shocks
from .censuses import (
    CONFINEMENT_START,
    FORBIDDEN,
    confinement_violations,
    peak_interior_rarefaction,
    wave_census,
)
from .reflections import DecayFit, Generation, decay_fit, extract_reflections, reflection_parity

DEFAULT_MIN_GENERATIONS = 3
DEFAULT_K_CAP = 100.0
NOISE_FACTOR = 10.0
MEETING_WINDOW = (0.5, 1.5)
WINDOW_SLACK = 1e-6

CONFINEMENT_NOTE = (
    "Confinement rule: no 2-/3-waves left of J_l and no 1-/2-waves right of J_r"
)


@dataclass
class Verdict:
    status: str
    generations_found: int
    criteria: dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "generations_found": self.generations_found,
            "criteria": self.criteria,
        }


@dataclass
class PatternReport:
    """Everything verify_pattern measured, serializable as report.json"""

    eps: float
    big_shocks: BigShocks
    generations: list[Generation]
    decay: DecayFit | None
    noise_floor: float
    censuses: list[dict[str, Any]]
    confinement_violations: list[dict[str, Any]]
    parity_violations: list[dict[str, Any]]
    cancellations: list[dict[str, Any]]
    verdict: Verdict
    peak_rarefaction: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {
            "eps": self.eps,
            "big_shocks": self.big_shocks.to_dict(),
            "generations": [g.to_dict() for g in self.generations],
            "decay_fit": self.decay.to_dict() if self.decay else None,
            "noise_floor": self.noise_floor,
            "censuses": self.censuses,
            "confinement_violations": self.confinement_violations,
            "parity_violations": self.parity_violations,
            "cancellations": self.cancellations,
            "peak_rarefaction": self.peak_rarefaction,
            "verdict": self.verdict.to_dict(),
            "notes": self.notes,
        }


def _within(value: float, lo: float, hi: float) -> bool:
    return lo * (1.0 - WINDOW_SLACK) <= value <= hi * (1.0 + WINDOW_SLACK)


def _settled_censuses(
    sol: FTSolution, big: BigShocks, sp: ScenarioParams
) -> list[dict[str, Any]]:
    t = CONFINEMENT_START / sp.omega
    if not big.found or not t < min(big.t_stop, sol.horizon):
        return []
    return [
        wave_census(sol, t, region, families, big).to_dict()
        for region, families in FORBIDDEN.items()
    ]


def verify_pattern(
    sol: FTSolution,
    sp: ScenarioParams,
    min_generations: int = DEFAULT_MIN_GENERATIONS,
    K_cap: float = DEFAULT_K_CAP,
) -> PatternReport:
    """Verdict on whether the run reproduces the infinite shock pattern

    Passes iff both big shocks are found and meet in [0.5, 1.5]·T̃, at least
    ``min_generations`` generations exist above the noise floor
    10·(non-physical total + delta_rar), their decay constant K stays within
    K_cap, no forbidden wave sits outside the big shocks after 8/ω, and the
    interior 1-/3-rarefaction strength ℛ₁₃ never exceeds K_cap·r.
    A truncated run gives the status "incomplete".
    """
    if min_generations < 1:
        raise InputError(f"min_generations must be at least 1, got {min_generations}")
    logger = get_debug_logger()
    logger.info(CONFINEMENT_NOTE)
    notes = [CONFINEMENT_NOTE]
    if sol.horizon < sp.Ttilde and not sol.truncated:
        notes.append(f"Run horizon {sol.horizon:.6g} ends before T̃ = {sp.Ttilde:.6g}")

    big = identify_big_2shocks(sol, sp)
    generations = extract_reflections(sol, big, sp)
    noise_floor = NOISE_FACTOR * (sol.np_total + sol.params.delta_rar)
    resolved = []
    for generation in generations:
        if generation.strength <= noise_floor:
            break
        resolved.append(generation.strength)
    decay = decay_fit(resolved, sp) if len(resolved) >= 2 else None

    violations = confinement_violations(sol, big, sp)
    parity = reflection_parity(sol, big)
    peak_rarefaction, peak_t = peak_interior_rarefaction(sol, big)
    cancellations = [
        {"event": e.index, "t": e.t, "x": e.x, **e.details}
        for e in sol.events
        if e.kind is InteractionKind.CANCELLATION
    ]

    meeting = big.t_meet is not None and _within(
        big.t_meet, MEETING_WINDOW[0] * sp.Ttilde, MEETING_WINDOW[1] * sp.Ttilde
    )
    criteria = {
        "big_shocks": big.found,
        "meeting": meeting,
        "generations": len(generations) >= min_generations,
        "decay": decay is not None and decay.K <= K_cap,
        "confinement": big.found and not violations,
        "noise": len(resolved) >= min_generations,
        "parity": not parity,
        "rarefaction_budget": peak_rarefaction <= K_cap * sp.r,
    }
    if not criteria["rarefaction_budget"]:
        logger.warning(
            f"Interior 1-/3-rarefactions reach {peak_rarefaction:.3e} at t={peak_t:.6g}, "
            f"above K_cap·r = {K_cap * sp.r:.3e}"
        )
    if sol.truncated:
        status = "incomplete"
    elif all(criteria.values()):
        status = "pass"
    else:
        status = "fail"
    if not big.found:
        logger.warning("Big 2-shocks not found: pattern absent")
    logger.info(
        f"Pattern verdict {status}: {len(generations)} generations, "
        f"{len(resolved)} above noise floor {noise_floor:.3e}"
        + (f", K={decay.K:.4g}" if decay else "")
    )
    return PatternReport(
        eps=sp.eps,
        big_shocks=big,
        generations=generations,
        decay=decay,
        noise_floor=noise_floor,
        censuses=_settled_censuses(sol, big, sp),
        confinement_violations=violations,
        parity_violations=parity,
        cancellations=cancellations,
        verdict=Verdict(status, len(generations), criteria),
        peak_rarefaction=peak_rarefaction,
        notes=notes,
    )


def diagram_rows(sol: FTSolution, big: BigShocks) -> list[dict[str, Any]]:
    """Two polyline points per front, birth and death, big shocks labelled"""
    labels: dict[int, str] = {}
    for trajectory in (big.Jl, big.Jr):
        if trajectory is not None:
            labels.update(dict.fromkeys(trajectory.ids, trajectory.label))
    rows = []
    for front in sol.fronts.values():
        end = front.death_t if front.death_t is not None else sol.horizon
        for t in (front.birth_t, end):
            rows.append(
                {
                    "front_id": front.id,
                    "family": front.family.label,
                    "t": t,
                    "x": front.position(t),
                    "strength": front.strength,
                    "label": labels.get(front.id, ""),
                }
            )
    return rows
