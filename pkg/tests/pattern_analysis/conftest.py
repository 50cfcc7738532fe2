"""Synthetic front-tracking records for the pattern analysis tests

The fronts are placed by hand and do not come from a real run: two big
2-shocks start at ±20 and meet at t = 1000, a 3-shock and a 1-rarefaction
live between them, one 1-shock on each outer side, and the interior 3-shock
reflects into a 1-shock at t = 4.
"""

import pytest

from src.core.types import (
    Family,
    Front,
    GlimmSample,
    InteractionEvent,
    InteractionKind,
    State,
    StepFunction,
    WaveKind,
)
from src.front_tracking.models import FTParams, FTSolution

ORIGIN = State(0.0, 0.0, 0.0)
BIG = 0.027
T_MEET = 1000.0


def make_front(
    front_id,
    family,
    kind,
    birth_t,
    birth_x,
    speed,
    strength,
    death_t=None,
    generation=0,
    parents=(),
):
    return Front(
        front_id,
        family,
        kind,
        birth_t,
        birth_x,
        speed,
        ORIGIN,
        ORIGIN,
        strength,
        strength,
        generation,
        parents,
        death_t,
    )


def make_event(index, t, x, incoming, outgoing, kind):
    return InteractionEvent(
        index, t, x, incoming, outgoing, kind, "exact", GlimmSample(0.0, 0.0, 100.0)
    )


def build_run(fronts, events, horizon=1100.0, truncated=False):
    return FTSolution(
        datum=StepFunction.constant(ORIGIN),
        params=FTParams(delta_rar=1e-9, t_end=horizon),
        eta=0.09,
        fronts={front.id: front for front in fronts},
        events=list(events),
        horizon=horizon,
        truncated=truncated,
    )


@pytest.fixture
def pattern_run():
    """Factory for the synthetic two-shock record"""

    def factory(extra=(), reflected_generation=1, rarefaction=1e-4):
        S, R = WaveKind.SHOCK, WaveKind.RAREFACTION
        fronts = [
            make_front(0, Family.TWO, S, 0.0, -20.0, 0.02, BIG, death_t=T_MEET),
            make_front(1, Family.TWO, S, 0.0, 20.0, -0.02, BIG, death_t=T_MEET),
            make_front(2, Family.THREE, S, 0.0, 0.0, 4.0, 1e-3, death_t=4.0),
            make_front(3, Family.ONE, S, 0.0, -30.0, -4.0, 1e-3),
            make_front(4, Family.THREE, S, 0.0, 30.0, 4.0, 1e-3),
            make_front(5, Family.ONE, R, 0.0, 0.5, -4.0, rarefaction, death_t=4.0),
            make_front(
                6,
                Family.ONE,
                S,
                4.0,
                16.0,
                -4.0,
                3e-5,
                death_t=8.0,
                generation=reflected_generation,
                parents=(2, 1),
            ),
            *extra,
        ]
        events = [
            make_event(0, 4.0, 16.0, (2, 1), (6,), InteractionKind.REFLECTION),
            make_event(1, T_MEET, 0.0, (0, 1), (), InteractionKind.MERGE),
        ]
        return build_run(fronts, events)

    return factory
