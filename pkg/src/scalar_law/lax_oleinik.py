"""Exact entropy solutions through the Lax–Oleĭnik formula"""

from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..core.errors import InputError
from .flux import ConvexFlux
from .profile import ScalarProfile

SCAN_POINTS = 400
REFINE_XATOL = 1e-12
BISECTION_STEPS = 60
MIN_CHECK_RANGE = 1e-3


@dataclass(frozen=True, eq=False)
class ScalarSolutionSample:
    """u(t, ·) on sorted positions with one backward minimizer per position"""

    t: float
    xs: np.ndarray
    values: np.ndarray
    minimizers: np.ndarray
    flux: ConvexFlux
    profile: ScalarProfile

    @property
    def spacing(self) -> float:
        return float(np.diff(self.xs).max()) if self.xs.size > 1 else 0.0

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"t": self.t, "x": float(x), "u": float(u), "y_min": float(y)}
            for x, u, y in zip(self.xs, self.values, self.minimizers, strict=True)
        ]


class LaxOleinikSolver:
    """Minimizes G(y) = P(y) + t·L((x − y)/t) one position at a time

    A grid scan over the domain of dependence picks the basin, bounded
    golden-section search refines it, and a root of y + t·f'(u₀(y)) = x
    polishes the result when the basin contains one.
    """

    def __init__(self, flux: ConvexFlux, u0: ScalarProfile, t: float):
        if not t > 0.0:
            raise InputError(f"t must be positive, got {t}")
        reach = max(u0.bound, MIN_CHECK_RANGE)
        flux.check_convexity(-reach, reach)
        self.flux = flux
        self.u0 = u0
        self.t = t
        self.speed_lo, self.speed_hi = u0.speed_range(flux.fprime)
        self._table = None if flux.quadratic is not None else flux.legendre_table()

    def objective(self, y: float, x: float) -> float:
        xi = (x - y) / self.t
        return float(self.u0.primitive(np.float64(y))) + self.t * self.flux.legendre(xi)

    def _scan(self, x: float, ys: np.ndarray) -> np.ndarray:
        xi = (x - ys) / self.t
        return self.u0.primitive(ys) + self.t * self.flux.legendre_array(xi, self._table)

    def dependence(self, x: float) -> tuple[float, float]:
        """Interval of feet y from which a characteristic reaches x"""
        return x - self.t * self.speed_hi, x - self.t * self.speed_lo

    def minimizer(self, x: float, y_floor: float | None = None) -> float:
        lo, hi = self.dependence(x)
        if y_floor is not None:
            lo = min(max(lo, y_floor), hi)
        if hi - lo <= REFINE_XATOL:
            return lo
        ys = np.linspace(lo, hi, SCAN_POINTS)
        k = int(np.argmin(self._scan(x, ys)))
        a, b = ys[max(k - 1, 0)], ys[min(k + 1, ys.size - 1)]
        result = minimize_scalar(
            self.objective,
            bounds=(a, b),
            args=(x,),
            method="bounded",
            options={"xatol": REFINE_XATOL},
        )
        y = float(result.x)
        best = float(result.fun)
        for edge in (a, b):
            value = self.objective(edge, x)
            if value < best:
                y, best = float(edge), value
        return self._polish(x, a, b, y, best)

    def _polish(self, x: float, a: float, b: float, y: float, best: float) -> float:
        def foot(s: float) -> float:
            return s + self.t * float(self.flux.fprime(self.u0.value(np.float64(s)))) - x

        fa, fb = foot(a), foot(b)
        if fa == 0.0 or fb == 0.0 or (fa < 0.0) == (fb < 0.0):
            return y
        root = float(brentq(foot, a, b, xtol=1e-15))
        if self.objective(root, x) <= best + 1e-14 * max(1.0, abs(best)):
            return root
        return y

    def value(self, x: float, y: float) -> float:
        return self.flux.fprime_inv((x - y) / self.t)

    def solve(self, xs: np.ndarray) -> ScalarSolutionSample:
        xs = np.asarray(xs, dtype=float)
        if xs.ndim != 1 or xs.size == 0:
            raise InputError("Sample positions must be a non-empty 1-d array")
        if (np.diff(xs) <= 0.0).any():
            raise InputError("Sample positions must be strictly increasing")
        minimizers = np.empty_like(xs)
        values = np.empty_like(xs)
        previous: float | None = None
        for index, x in enumerate(xs):
            # backward characteristics do not cross: restrict by the previous foot
            floor = None if previous is None else previous - 2.0 * (x - xs[index - 1])
            y = self.minimizer(float(x), floor)
            if previous is not None and y < previous:
                y = previous if self.objective(previous, x) <= self.objective(y, x) else y
            minimizers[index] = y
            values[index] = self.value(float(x), y)
            previous = y
        return ScalarSolutionSample(self.t, xs, values, minimizers, self.flux, self.u0)


def lax_oleinik_solve(
    flux: ConvexFlux, u0: ScalarProfile, t: float, xs: np.ndarray
) -> ScalarSolutionSample:
    """Entropy solution u(t, xs) with its backward minimizers

    Raises:
        InputError: If t <= 0, xs is not sorted or the flux is not convex
    """
    return LaxOleinikSolver(flux, u0, t).solve(xs)


def characteristic_map(sample: ScalarSolutionSample, y: float) -> float:
    """Forward characteristic map X(t, y) = inf{x : y*(x) >= y}

    Swallowed feet map to the shock that absorbed them, which makes X
    monotone and total on the sampled range.

    Raises:
        InputError: If y lies outside the range of sampled minimizers
    """
    ys = sample.minimizers
    if y < ys[0] or y > ys[-1]:
        raise InputError(
            f"y={y} outside the sampled minimizer range [{ys[0]}, {ys[-1]}]; "
            f"sample positions must extend beyond it"
        )
    index = int(np.searchsorted(ys, y, side="left"))
    if index == 0:
        return float(sample.xs[0])
    solver = LaxOleinikSolver(sample.flux, sample.profile, sample.t)

    # characteristic shortcut when y is the foot of its own straight line
    x_char = y + sample.t * float(sample.flux.fprime(sample.profile.value(np.float64(y))))
    lo, hi = float(sample.xs[index - 1]), float(sample.xs[index])
    if lo <= x_char <= hi and abs(solver.minimizer(x_char) - y) <= 1e-9 * max(1.0, abs(y)):
        return x_char

    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if solver.minimizer(mid) >= y:
            hi = mid
        else:
            lo = mid
    return hi
