"""Profiles recovered from a front-tracking record"""

from ..core.errors import InputError
from ..core.types import StepFunction
from .collisions import position_tolerance
from .models import FTSolution


def sample_solution(sol: FTSolution, t: float) -> StepFunction:
    """Piecewise-constant profile at time t

    At an event time the post-event profile is returned. Fronts sitting at
    one position (just born together) collapse into a single breakpoint.

    Raises:
        InputError: If t lies outside [0, horizon]
    """
    if t < 0.0 or t > sol.horizon:
        raise InputError(f"t={t} outside the covered horizon [0, {sol.horizon}]")

    fronts = sol.alive_at(t)
    left_tail, right_tail = sol.tails_at(t)
    if not fronts:
        return StepFunction.constant(left_tail)

    breakpoints: list[float] = []
    values = [fronts[0].left_state]
    for front in fronts:
        x = front.position(t)
        if breakpoints and x - breakpoints[-1] <= position_tolerance(x):
            values[-1] = front.right_state
            continue
        breakpoints.append(x)
        values.append(front.right_state)
    return StepFunction.from_pieces(breakpoints, values)
