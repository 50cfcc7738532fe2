"""Event-driven wave-front tracking"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any

from ..bj_system.flux import SystemParams, eigenvalue, r1, r3
from ..core.dispatcher import EventDispatcher
from ..core.errors import InputError, ShocktrackError, SolverFailure
from ..core.types import (
    Family,
    Front,
    InteractionEvent,
    InteractionKind,
    State,
    StepFunction,
    Wave,
    WaveKind,
)
from ..riemann.solver import solve_riemann, solve_riemann_simplified
from ..riemann.wave_curves import integral_curve_2
from ..utils.logger import get_debug_logger, get_error_logger
from .collisions import CollisionQueue, position_tolerance
from .glimm import glimm_functional
from .models import FTParams, FTSolution, TailChange

MAX_DATUM_TV = 0.3
# relative slack so that a fan of strength exactly k·delta_rar gives k fronts
PIECE_SLACK = 1e-6


@dataclass
class Resolution:
    """Outcome of one interaction"""

    outgoing: list[Front]
    solver: str
    kind: InteractionKind
    details: dict[str, Any] = field(default_factory=dict)


def rarefaction_pieces(
    wave: Wave, delta_rar: float, p: SystemParams, max_pieces: int | None = None
) -> list[Wave]:
    """Split a rarefaction into ⌈s/delta_rar⌉ jumps of equal parameter

    Each jump travels at the characteristic speed of its right state.
    Shocks and non-physical waves are returned unchanged.

    Raises:
        InputError: If the split needs more than ``max_pieces`` jumps
    """
    if wave.kind is not WaveKind.RAREFACTION:
        return [wave]
    n = max(1, math.ceil(wave.strength / delta_rar - PIECE_SLACK))
    if max_pieces is not None and n > max_pieces:
        raise InputError(
            f"{wave.family.label}-rarefaction of strength {wave.strength:.3e} needs {n} "
            f"fronts at delta_rar={delta_rar:.3e}, more than max_fronts={max_pieces}"
        )
    step = wave.parameter / n
    um = wave.left_state.as_array()
    pieces = []
    left = um
    for k in range(1, n + 1):
        if k == n:
            right = wave.right_state.as_array()
        elif wave.family is Family.TWO:
            right = integral_curve_2(step, left, p)
        else:
            direction = r1(um) if wave.family is Family.ONE else r3(um)
            right = um + (k * step) * direction
        speed = eigenvalue(wave.family, right, p)
        strength = abs(right[1] - left[1]) if wave.family is Family.TWO else abs(step)
        pieces.append(
            Wave(
                family=wave.family,
                kind=WaveKind.RAREFACTION,
                strength=float(strength),
                left_state=State.from_array(left),
                right_state=State.from_array(right),
                speed_lo=speed,
                speed_hi=speed,
                parameter=step,
            )
        )
        left = right
    return pieces


def chain_waves(
    waves: Sequence[Wave], UL: State, UR: State, min_strength: float
) -> list[Wave]:
    """Drop negligible waves and pin the side states to UL and UR"""
    kept = [wave for wave in waves if wave.strength >= min_strength]
    chained: list[Wave] = []
    for index, wave in enumerate(kept):
        left = chained[-1].right_state if chained else UL
        right = UR if index == len(kept) - 1 else wave.right_state
        chained.append(replace(wave, left_state=left, right_state=right))
    return chained


def _make_fronts(
    waves: Sequence[Wave],
    t: float,
    x: float,
    first_id: int,
    generations: Sequence[int],
    parents: tuple[int, ...],
) -> list[Front]:
    return [
        Front(
            id=first_id + index,
            family=wave.family,
            kind=wave.kind,
            birth_t=t,
            birth_x=x,
            speed=wave.speed,
            left_state=wave.left_state,
            right_state=wave.right_state,
            strength=wave.strength,
            parameter=wave.parameter,
            generation=generation,
            parents=parents,
        )
        for index, (wave, generation) in enumerate(zip(waves, generations, strict=True))
    ]


def init_fronts(datum: StepFunction, params: FTParams, p: SystemParams) -> list[Front]:
    """Resolve every breakpoint of the datum into fronts, left to right

    Raises:
        InputError: If TV(datum) is too large, a Riemann problem fails or a
            rarefaction needs more than max_fronts fronts
    """
    tv = datum.total_variation()
    if tv > MAX_DATUM_TV:
        raise InputError(f"Datum TV {tv:.4g} exceeds {MAX_DATUM_TV}")

    fronts: list[Front] = []
    for index, (x, UL, UR) in enumerate(datum.jumps()):
        try:
            solution = solve_riemann(UL, UR, p)
        except ShocktrackError as e:
            raise InputError(
                f"Riemann problem at breakpoint {index} (x={x}) failed: {e}"
            ) from e
        pieces = [
            piece
            for wave in solution.waves
            for piece in rarefaction_pieces(wave, params.delta_rar, p, params.max_fronts)
        ]
        waves = chain_waves(pieces, UL, UR, params.min_strength)
        fronts.extend(
            _make_fronts(waves, 0.0, x, len(fronts), [0] * len(waves), ())
        )
    return fronts


def _is_big(front: Front, params: FTParams) -> bool:
    return (
        params.big_2shock_strength is not None
        and front.family is Family.TWO
        and front.strength >= params.big_2shock_strength
    )


def outgoing_generation(
    family: Family, incoming: Sequence[Front], params: FTParams
) -> int:
    """Reflection counter of an outgoing front

    A 1- or 3-front leaving a crossing with a big 2-shock counts one
    reflection more than the opposite-family front that produced it; a
    front of an incoming family inherits that family's counter.
    """
    generations = [f.generation for f in incoming if f.family is family]
    if family in (Family.ONE, Family.THREE) and any(_is_big(f, params) for f in incoming):
        other = Family.THREE if family is Family.ONE else Family.ONE
        generations += [f.generation + 1 for f in incoming if f.family is other]
    if not generations:
        generations = [f.generation for f in incoming]
    return max(generations)


def classify_interaction(
    incoming: Sequence[Front], outgoing: Sequence[Front], params: FTParams
) -> tuple[InteractionKind, dict[str, Any]]:
    if any(not f.is_physical for f in incoming):
        return InteractionKind.NONPHYSICAL, {}

    for family in (Family.ONE, Family.TWO, Family.THREE):
        members = [f for f in incoming if f.family is family]
        kinds = {f.kind for f in members}
        if kinds != {WaveKind.SHOCK, WaveKind.RAREFACTION}:
            continue
        shock_in = sum(f.strength for f in members if f.kind is WaveKind.SHOCK)
        shock_out = sum(
            f.strength
            for f in outgoing
            if f.family is family and f.kind is WaveKind.SHOCK
        )
        if shock_out < shock_in:
            return InteractionKind.CANCELLATION, {
                "family": family.label,
                "erased_strength": shock_in - shock_out,
            }

    families = {f.family for f in incoming}
    if any(_is_big(f, params) for f in incoming) and families & {Family.ONE, Family.THREE}:
        reflected = [
            f for f in outgoing
            if f.family in (Family.ONE, Family.THREE) and f.family not in families
        ]
        return InteractionKind.REFLECTION, {
            "reflected_strength": sum(f.strength for f in reflected)
        }
    if len(families) == 1:
        return InteractionKind.MERGE, {}
    return InteractionKind.CROSSING, {}


def _strength_product(incoming: Sequence[Front]) -> float:
    strengths = sorted((f.strength for f in incoming), reverse=True)
    return strengths[0] * strengths[1]


def resolve_collision(
    incoming: Sequence[Front],
    t: float,
    x: float,
    params: FTParams,
    p: SystemParams,
    first_id: int = 0,
) -> Resolution:
    """Replace the fronts meeting at (t, x) by the outgoing fronts

    The accurate solver is used when the product of the two largest incoming
    strengths reaches the threshold, the simplified solver otherwise.

    Raises:
        SolverFailure: If the Riemann solver fails, with the event dump
    """
    UL, UR = incoming[0].left_state, incoming[-1].right_state
    product = _strength_product(incoming)
    accurate = product >= params.threshold
    try:
        if accurate:
            solution = solve_riemann(UL, UR, p)
        else:
            solution = solve_riemann_simplified(
                UL,
                UR,
                p,
                [(f.family, f.parameter) for f in incoming],
                np_speed=params.np_speed,
            )
        pieces = [
            piece
            for wave in solution.waves
            for piece in rarefaction_pieces(wave, params.delta_rar, p, params.max_fronts)
        ]
    except ShocktrackError as e:
        raise SolverFailure(
            f"Interaction at t={t}, x={x} could not be resolved: {e}",
            {
                "t": t,
                "x": x,
                "incoming": [_front_dump(f) for f in incoming],
                "accurate": accurate,
                "error": str(e),
                "diagnostics": getattr(e, "diagnostics", {}),
            },
        ) from e

    waves = chain_waves(pieces, UL, UR, params.min_strength)
    generations = [outgoing_generation(w.family, incoming, params) for w in waves]
    parents = tuple(f.id for f in incoming)
    outgoing = _make_fronts(waves, t, x, first_id, generations, parents)
    kind, details = classify_interaction(incoming, outgoing, params)
    details["strength_product"] = product
    return Resolution(
        outgoing=outgoing,
        solver="accurate" if accurate else "simplified",
        kind=kind,
        details=details,
    )


def _front_dump(front: Front) -> dict[str, Any]:
    return {
        "id": front.id,
        "family": front.family.label,
        "kind": front.kind.value,
        "strength": front.strength,
        "speed": front.speed,
        "left_state": front.left_state.to_list(),
        "right_state": front.right_state.to_list(),
    }


class FrontTracker:
    """Evolves a step function by resolving front collisions in time order

    Alive fronts form a doubly linked list ordered by position; candidate
    collisions of neighbors sit in a lazily invalidated priority queue.
    """

    def __init__(
        self,
        datum: StepFunction,
        params: FTParams,
        p: SystemParams,
        dispatcher: EventDispatcher | None = None,
    ):
        self.params = params
        self.p = p
        self.dispatcher = dispatcher or EventDispatcher()
        self.debug_logger = get_debug_logger()
        self.solution = FTSolution(datum=datum, params=params, eta=p.eta)
        self.queue = CollisionQueue()
        self.left_of: dict[int, int | None] = {}
        self.right_of: dict[int, int | None] = {}
        self.leftmost: int | None = None
        self.rightmost: int | None = None
        self.n_alive = 0
        self.t = 0.0

    @property
    def fronts(self) -> dict[int, Front]:
        return self.solution.fronts

    def alive_ordered(self) -> list[Front]:
        ordered = []
        current = self.leftmost
        while current is not None:
            ordered.append(self.fronts[current])
            current = self.right_of[current]
        return ordered

    def _link(self, chain: Sequence[Front], left: int | None, right: int | None) -> None:
        """Insert ``chain`` between the alive fronts ``left`` and ``right``"""
        ids: list[int | None] = [left, *(f.id for f in chain), right]
        for a, b in zip(ids, ids[1:], strict=False):
            if a is None:
                self.leftmost = b
            else:
                self.right_of[a] = b
            if b is None:
                self.rightmost = a
            else:
                self.left_of[b] = a
        for a, b in zip(ids, ids[1:], strict=False):
            if a is not None and b is not None:
                self.queue.push(self.fronts[a], self.fronts[b], self.t)

    def _kill(self, front_id: int) -> None:
        self.fronts[front_id] = replace(self.fronts[front_id], death_t=self.t)
        del self.left_of[front_id]
        del self.right_of[front_id]
        self.n_alive -= 1

    def _adjacent(self, left_id: int, right_id: int) -> bool:
        return left_id in self.right_of and self.right_of[left_id] == right_id

    def _next_exit(self) -> tuple[float, str] | None:
        clip = self.params.clip
        if clip is None or self.leftmost is None:
            return None
        candidates = []
        first = self.fronts[self.leftmost]
        if first.speed < 0.0:
            gap = max(0.0, first.position(self.t) + clip)
            candidates.append((self.t + gap / -first.speed, "left"))
        assert self.rightmost is not None
        last = self.fronts[self.rightmost]
        if last.speed > 0.0:
            gap = max(0.0, clip - last.position(self.t))
            candidates.append((self.t + gap / last.speed, "right"))
        return min(candidates) if candidates else None

    def _exit(self, t: float, side: str) -> None:
        self.t = t
        front_id = self.leftmost if side == "left" else self.rightmost
        assert front_id is not None
        front = self.fronts[front_id]
        state = front.right_state if side == "left" else front.left_state
        neighbor = self.right_of[front_id] if side == "left" else self.left_of[front_id]
        self._kill(front_id)
        if side == "left":
            self.leftmost = neighbor
            if neighbor is not None:
                self.left_of[neighbor] = None
        else:
            self.rightmost = neighbor
            if neighbor is not None:
                self.right_of[neighbor] = None
        if neighbor is None:
            self.leftmost = self.rightmost = None
        self.solution.tails.append(TailChange(t, side, front_id, state))

    def _participants(self, x: float, left_id: int, right_id: int) -> list[Front]:
        tol = position_tolerance(x)
        first, last = left_id, right_id
        while (
            neighbor := self.left_of[first]
        ) is not None and abs(self.fronts[neighbor].position(self.t) - x) <= tol:
            first = neighbor
        while (
            neighbor := self.right_of[last]
        ) is not None and abs(self.fronts[neighbor].position(self.t) - x) <= tol:
            last = neighbor
        participants = [self.fronts[first]]
        while participants[-1].id != last:
            next_id = self.right_of[participants[-1].id]
            assert next_id is not None
            participants.append(self.fronts[next_id])
        return participants

    def _interact(self, t: float, x: float, left_id: int, right_id: int) -> None:
        self.t = max(t, self.t)
        incoming = self._participants(x, left_id, right_id)
        resolution = resolve_collision(
            incoming, self.t, x, self.params, self.p, first_id=len(self.fronts)
        )
        outer_left = self.left_of[incoming[0].id]
        outer_right = self.right_of[incoming[-1].id]
        for front in incoming:
            self._kill(front.id)
        for front in resolution.outgoing:
            self.fronts[front.id] = front
            self.n_alive += 1
        self._link(resolution.outgoing, outer_left, outer_right)

        if resolution.solver == "simplified":
            self.solution.n_simplified += 1
        self.solution.np_total += sum(
            f.strength for f in resolution.outgoing if not f.is_physical
        )
        event = InteractionEvent(
            index=len(self.solution.events),
            t=self.t,
            x=x,
            incoming=tuple(f.id for f in incoming),
            outgoing=tuple(f.id for f in resolution.outgoing),
            kind=resolution.kind,
            solver=resolution.solver,
            glimm=glimm_functional(self.alive_ordered(), self.params.glimm_coupling),
            details=resolution.details,
        )
        self.solution.events.append(event)
        self.dispatcher.dispatch(event)

    def run(self) -> FTSolution:
        params = self.params
        initial = init_fronts(self.solution.datum, params, self.p)
        if params.clip is not None and any(abs(f.birth_x) > params.clip for f in initial):
            raise InputError(f"Datum breakpoints outside the clip window ±{params.clip}")
        for front in initial:
            self.fronts[front.id] = front
        self.n_alive = len(initial)
        self._link(initial, None, None)
        self.solution.initial_glimm = glimm_functional(initial, params.glimm_coupling)

        if self.n_alive > params.max_fronts:
            self.solution.truncated = True
            self.debug_logger.warning(
                f"Initial datum produces {self.n_alive} fronts (max {params.max_fronts})"
            )
            return self.solution

        while True:
            entry = self.queue.peek(self._adjacent)
            exit_ = self._next_exit()
            t_collision = entry[0] if entry is not None else math.inf
            t_exit = exit_[0] if exit_ is not None else math.inf
            if min(t_collision, t_exit) > params.t_end:
                break
            if exit_ is not None and t_exit < t_collision:
                self._exit(*exit_)
                continue

            t_hit, x_hit, left_id, right_id = self.queue.pop()
            try:
                self._interact(t_hit, x_hit, left_id, right_id)
            except SolverFailure as e:
                get_error_logger().log_error(
                    "SolverFailure", str(e), e.event_dump, e
                )
                self.solution.failure = e.event_dump
                self.solution.truncated = True
                self.solution.horizon = self.t
                return self.solution
            if self.n_alive > params.max_fronts:
                self.solution.truncated = True
                self.solution.horizon = self.t
                self.debug_logger.warning(
                    f"Front count {self.n_alive} exceeds {params.max_fronts} "
                    f"at t={self.t:.6g}; run truncated"
                )
                return self.solution

        self.solution.horizon = params.t_end
        self.debug_logger.info(
            f"Tracked {len(self.solution.events)} interactions of "
            f"{len(self.fronts)} fronts up to t={params.t_end:.6g}"
        )
        return self.solution


def evolve(
    datum: StepFunction,
    params: FTParams,
    p: SystemParams,
    dispatcher: EventDispatcher | None = None,
) -> FTSolution:
    """Front-tracking solution of the datum up to params.t_end

    Raises:
        InputError: If the datum violates the small-TV precondition
    """
    return FrontTracker(datum, params, p, dispatcher).run()

