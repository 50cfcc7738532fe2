"""Collision detection between adjacent fronts"""

import heapq
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from ..core.types import Front

POSITION_TOL = 1e-12


@dataclass(frozen=True)
class Collision:
    """Fronts meeting at (t, x), listed left to right"""

    t: float
    x: float
    ids: tuple[int, ...]


def position_tolerance(x: float) -> float:
    return POSITION_TOL * max(1.0, abs(x))


def collision_time(left: Front, right: Front, t: float) -> float | None:
    """Time at which ``left`` catches ``right``, not before t

    Returns:
        None when the fronts do not approach
    """
    if not left.speed > right.speed:
        return None
    gap = max(0.0, right.position(t) - left.position(t))
    return t + gap / (left.speed - right.speed)


def next_collision(fronts: Sequence[Front], t: float) -> Collision | None:
    """Earliest meeting of adjacent fronts after t

    ``fronts`` must be ordered by position at t. Every front that sits at the
    meeting point at that time joins the collision.
    """
    best: tuple[float, float, int] | None = None
    for index, (left, right) in enumerate(zip(fronts, fronts[1:], strict=False)):
        t_hit = collision_time(left, right, t)
        if t_hit is None:
            continue
        candidate = (t_hit, left.position(t_hit), index)
        if best is None or candidate < best:
            best = candidate
    if best is None:
        return None

    t_hit, x_hit, index = best
    lo, hi = index, index + 1
    tol = position_tolerance(x_hit)
    while lo > 0 and abs(fronts[lo - 1].position(t_hit) - x_hit) <= tol:
        lo -= 1
    while hi < len(fronts) - 1 and abs(fronts[hi + 1].position(t_hit) - x_hit) <= tol:
        hi += 1
    return Collision(t_hit, x_hit, tuple(front.id for front in fronts[lo : hi + 1]))


class CollisionQueue:
    """Priority queue of candidate collisions between neighbors

    Entries are keyed by (time, position) so that simultaneous collisions are
    processed leftmost first. Stale entries are skipped on pop: an entry is
    valid only while both fronts are alive and still adjacent.
    """

    def __init__(self):
        self._heap: list[tuple[float, float, int, int]] = []

    def __len__(self) -> int:
        return len(self._heap)

    def push(self, left: Front, right: Front, t: float) -> None:
        t_hit = collision_time(left, right, t)
        if t_hit is not None:
            heapq.heappush(self._heap, (t_hit, left.position(t_hit), left.id, right.id))

    def peek(
        self, is_valid: Callable[[int, int], bool]
    ) -> tuple[float, float, int, int] | None:
        """Earliest valid entry, discarding stale ones on the way

        Args:
            is_valid: Whether the (left_id, right_id) pair still collides
        """
        while self._heap:
            entry = self._heap[0]
            if is_valid(entry[2], entry[3]):
                return entry
            heapq.heappop(self._heap)
        return None

    def pop(self) -> tuple[float, float, int, int]:
        return heapq.heappop(self._heap)
