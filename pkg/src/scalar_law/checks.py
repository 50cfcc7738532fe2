"""Checkers for the one-sided regularity estimates of convex scalar laws"""

from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from ..core.errors import InputError
from .flux import ConvexFlux
from .lax_oleinik import LaxOleinikSolver, ScalarSolutionSample, characteristic_map

OLEINIK_TOL = 1e-9
ADL_TOL = 1e-9
BISECTION_STEPS = 50
CENSUS_SLOPE_FACTOR = 10.0


@dataclass
class OleinikReport:
    max_ratio: float
    witness: tuple[float, float] | None
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_ratio <= 1.0 + self.tol

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "passed": self.passed}


@dataclass
class ADLReport:
    a: float
    b: float
    lhs: float
    rhs: float
    y_minus: float
    y_plus: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.lhs >= self.rhs - self.tol

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "passed": self.passed}


@dataclass(frozen=True)
class CensusEntry:
    position: float
    jump: float


def check_oleinik(
    sample: ScalarSolutionSample, flux: ConvexFlux, tol: float = OLEINIK_TOL
) -> OleinikReport:
    """Largest (u(b) − u(a))·t·c/(b − a) over sampled pairs a < b

    Chord slopes are averages of adjacent slopes, so adjacent pairs suffice.
    """
    if sample.xs.size < 2:
        return OleinikReport(-np.inf, None, tol)
    ratios = np.diff(sample.values) * sample.t * flux.c_conv / np.diff(sample.xs)
    k = int(np.argmax(ratios))
    return OleinikReport(
        max_ratio=float(ratios[k]),
        witness=(float(sample.xs[k]), float(sample.xs[k + 1])),
        tol=tol,
    )


def _bisect_feet(
    sample: ScalarSolutionSample, predicate, lo: float, hi: float
) -> float:
    """Boundary of {y : predicate(X(t, y))} on [lo, hi], the set lying on
    the left of the boundary"""
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if predicate(characteristic_map(sample, mid)):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_adl_lower(
    sample: ScalarSolutionSample,
    flux: ConvexFlux,
    a: float,
    b: float,
    tol: float = ADL_TOL,
) -> ADLReport:
    """Lower bound u(t,b) − u(t,a) >= −2(y_plus − y_minus)/(t·c)

    y_minus = sup{y : X(t,y) < a} and y_plus = inf{y : X(t,y) > b}, found by
    bisection on the monotone characteristic map.

    Raises:
        InputError: If a >= b or the sample does not bracket the feet
    """
    if not a < b:
        raise InputError(f"check_adl_lower needs a < b, got a={a}, b={b}")
    ys = sample.minimizers
    y_lo, y_hi = float(ys[0]), float(ys[-1])
    if not characteristic_map(sample, y_lo) < a or not characteristic_map(sample, y_hi) > b:
        raise InputError(
            f"Sample does not bracket the feet of [{a}, {b}]: minimizers must "
            f"reach below X⁻¹({a}) and above X⁻¹({b}); sampled range "
            f"[{y_lo}, {y_hi}]"
        )
    y_minus = _bisect_feet(sample, lambda x: x < a, y_lo, y_hi)
    y_plus = _bisect_feet(sample, lambda x: x <= b, y_lo, y_hi)

    solver = LaxOleinikSolver(flux, sample.profile, sample.t)
    u_a = solver.value(a, solver.minimizer(a))
    u_b = solver.value(b, solver.minimizer(b))
    return ADLReport(
        a=a,
        b=b,
        lhs=u_b - u_a,
        rhs=-2.0 * (y_plus - y_minus) / (sample.t * flux.c_conv),
        y_minus=y_minus,
        y_plus=y_plus,
        tol=tol,
    )


def census_threshold(
    sample: ScalarSolutionSample,
    jump_threshold: float = 0.0,
    slope_cap: float | None = None,
) -> float:
    """max(jump_threshold, C·h) with C defaulting to 10/(t·c)

    Increasing parts move by at most h/(t·c) per cell, so C·h separates
    genuine jumps from fan gradients.
    """
    if slope_cap is None:
        slope_cap = CENSUS_SLOPE_FACTOR / (sample.t * sample.flux.c_conv)
    return max(jump_threshold, slope_cap * sample.spacing)


def shock_census(
    sample: ScalarSolutionSample,
    jump_threshold: float = 0.0,
    slope_cap: float | None = None,
) -> list[CensusEntry]:
    """Jumps above the census threshold, adjacent detections merged"""
    if sample.xs.size < 2:
        return []
    threshold = census_threshold(sample, jump_threshold, slope_cap)
    jumps = np.diff(sample.values)
    flagged = np.flatnonzero(np.abs(jumps) > threshold)

    entries: list[CensusEntry] = []
    run: list[int] = []
    for index in flagged:
        if run and index != run[-1] + 1:
            entries.append(_merge(sample, run))
            run = []
        run.append(int(index))
    if run:
        entries.append(_merge(sample, run))
    return entries


def _merge(sample: ScalarSolutionSample, run: list[int]) -> CensusEntry:
    left, right = sample.xs[run[0]], sample.xs[run[-1] + 1]
    jump = sample.values[run[-1] + 1] - sample.values[run[0]]
    return CensusEntry(position=float(0.5 * (left + right)), jump=float(jump))
