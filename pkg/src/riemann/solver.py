"""Accurate and simplified Riemann solvers for the Baiti–Jenssen system"""

from collections.abc import Callable, Sequence
from dataclasses import replace

import numpy as np

from ..bj_system.flux import SystemParams, r1, r2_array, r3
from ..core.errors import ConvergenceError, InputError
from ..core.types import Family, RiemannSolution, State, Wave, WaveKind
from .wave_curves import make_wave, wave_curve

NONPHYSICAL_SPEED = 10.0
RECONSTRUCTION_TOL = 1e-10
NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 100
MAX_HALVINGS = 30
NEGLIGIBLE_PARAMETER = 1e-12
MAX_STATE_NORM = 0.8
MAX_JUMP = 0.3

PHYSICAL_FAMILIES = (Family.ONE, Family.TWO, Family.THREE)


def linear_decomposition(UL: State, UR: State, p: SystemParams) -> np.ndarray:
    """Coefficients of UR − UL in the eigenbasis at UL"""
    ul = UL.as_array()
    basis = np.column_stack([r1(ul), r2_array(ul, p.eta), r3(ul)])
    return np.linalg.solve(basis, UR.as_array() - ul)


def compose(
    um: np.ndarray, parameters: Sequence[tuple[Family, float]], p: SystemParams
) -> list[np.ndarray]:
    """States visited from um along consecutive wave curves

    Returns:
        The list of states, starting with um
    """
    states = [um]
    for family, tau in parameters:
        states.append(wave_curve(family, tau, states[-1], p) if tau else states[-1])
    return states


def _damped_newton(
    residual: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    tol: float = NEWTON_TOL,
    max_iter: int = NEWTON_MAX_ITER,
) -> tuple[np.ndarray, float, int]:
    """Newton iteration with finite-difference Jacobian and step halving

    ``residual`` raises InputError for trial points outside the trust
    region; such points count as failed steps.
    """
    x = np.asarray(x0, dtype=float)
    r = residual(x)
    norm = float(np.linalg.norm(r))
    for iteration in range(1, max_iter + 1):
        if norm <= tol:
            return x, norm, iteration - 1
        jac = np.empty((r.size, x.size))
        for k in range(x.size):
            h = 1e-7 * max(1.0, abs(x[k]))
            shifted = x.copy()
            shifted[k] += h
            jac[:, k] = (residual(shifted) - r) / h
        step = np.linalg.solve(jac, -r)

        damping = 1.0
        for _ in range(MAX_HALVINGS):
            trial = x + damping * step
            try:
                trial_r = residual(trial)
            except InputError:
                damping *= 0.5
                continue
            trial_norm = float(np.linalg.norm(trial_r))
            if trial_norm < norm:
                x, r, norm = trial, trial_r, trial_norm
                break
            damping *= 0.5
        else:
            # no decrease: converged to roundoff or stuck
            return x, norm, iteration
    raise ConvergenceError(
        f"Damped Newton did not converge in {max_iter} iterations",
        {"x": x.tolist(), "residual": norm},
    )


def _check_riemann_input(UL: State, UR: State) -> None:
    if not (UL.norm() < MAX_STATE_NORM and UR.norm() < MAX_STATE_NORM):
        raise InputError(f"Riemann states must satisfy |U| < {MAX_STATE_NORM}")
    if UL.distance(UR) > MAX_JUMP:
        raise InputError(f"Riemann jump {UL.distance(UR):.3g} exceeds {MAX_JUMP}")


def _build_waves(
    um: np.ndarray,
    parameters: Sequence[tuple[Family, float]],
    UR: State,
    p: SystemParams,
) -> tuple[Wave, ...]:
    kept = [(f, t) for f, t in parameters if abs(t) > NEGLIGIBLE_PARAMETER]
    states = compose(um, kept, p)
    waves = []
    for index, (family, tau) in enumerate(kept):
        right = states[index + 1]
        if index == len(kept) - 1:
            right = UR.as_array()
        waves.append(make_wave(family, tau, states[index], right, p))
    # a parameter lost to rounding leaves a wave with equal side states
    return tuple(w for w in waves if w.left_state != w.right_state)


def solve_riemann(UL: State, UR: State, p: SystemParams) -> RiemannSolution:
    """Admissible Riemann solution: 1-wave, 2-wave, 3-wave

    The 2-parameter is pinned by the v-jump; (τ1, τ3) come from damped
    Newton started at the linearized decomposition.

    Raises:
        InputError: If the states violate the small-data preconditions
        ConvergenceError: If Newton fails or the reconstruction misses UR
    """
    _check_riemann_input(UL, UR)
    if UL == UR:
        return RiemannSolution(UL, UR, ())

    ul, ur = UL.as_array(), UR.as_array()
    tau2 = float(ur[1] - ul[1])

    def residual(x: np.ndarray) -> np.ndarray:
        states = compose(
            ul, ((Family.ONE, x[0]), (Family.TWO, tau2), (Family.THREE, x[1])), p
        )
        if any(np.linalg.norm(s) >= 1.0 for s in states):
            raise InputError("Newton iterate leaves |U| < 1")
        return (states[-1] - ur)[[0, 2]]

    guess = linear_decomposition(UL, UR, p)
    x, norm, iterations = _damped_newton(residual, np.array([guess[0], guess[2]]))
    if norm > RECONSTRUCTION_TOL:
        raise ConvergenceError(
            "Riemann reconstruction missed the right state",
            {
                "residual": norm,
                "iterations": iterations,
                "UL": UL.to_list(),
                "UR": UR.to_list(),
            },
        )

    parameters = ((Family.ONE, x[0]), (Family.TWO, tau2), (Family.THREE, x[1]))
    return RiemannSolution(UL, UR, _build_waves(ul, parameters, UR, p))


def nonphysical_wave(
    left: np.ndarray, right: State, speed: float = NONPHYSICAL_SPEED
) -> Wave:
    return Wave(
        family=Family.NONPHYSICAL,
        kind=WaveKind.NONPHYSICAL,
        strength=float(np.linalg.norm(right.as_array() - left)),
        left_state=State.from_array(left),
        right_state=right,
        speed_lo=speed,
        speed_hi=speed,
    )


def solve_riemann_simplified(
    UL: State,
    UR: State,
    p: SystemParams,
    incoming: Sequence[tuple[Family, float]],
    np_speed: float = NONPHYSICAL_SPEED,
) -> RiemannSolution:
    """Outgoing waves only in the incoming physical families

    Parameters of equal families are summed; whatever the outgoing waves
    miss of UR is carried by one non-physical front at np_speed.

    Args:
        UL: Leftmost state of the interaction
        UR: Rightmost state of the interaction
        p: System parameters
        incoming: (family, signed parameter) of the incoming fronts;
            non-physical entries are absorbed into the residual
    """
    _check_riemann_input(UL, UR)
    totals: dict[Family, float] = {}
    for family, tau in incoming:
        if family is not Family.NONPHYSICAL:
            totals[family] = totals.get(family, 0.0) + tau
    parameters = [(f, totals[f]) for f in PHYSICAL_FAMILIES if f in totals]
    kept = [(f, t) for f, t in parameters if abs(t) > NEGLIGIBLE_PARAMETER]

    ul = UL.as_array()
    states = compose(ul, kept, p)
    waves = [
        make_wave(family, tau, states[index], states[index + 1], p)
        for index, (family, tau) in enumerate(kept)
        if not np.array_equal(states[index], states[index + 1])
    ]
    gap = float(np.linalg.norm(states[-1] - UR.as_array()))
    if gap > 0.0:
        waves.append(nonphysical_wave(states[-1], UR, np_speed))
    elif waves:
        waves[-1] = replace(waves[-1], right_state=UR)
    return RiemannSolution(UL, UR, tuple(waves))


def wave_speeds_ordered(solution: RiemannSolution) -> bool:
    """Speeds strictly increase across the wave list"""
    return all(
        left.speed_hi < right.speed_lo
        for left, right in zip(solution.waves, solution.waves[1:], strict=False)
    )


def chain_error(solution: RiemannSolution, p: SystemParams) -> float:
    """Distance between the recomposed right state and UR"""
    physical = [
        (w.family, w.parameter) for w in solution.waves if w.family is not Family.NONPHYSICAL
    ]
    end = compose(solution.left_state.as_array(), physical, p)[-1]
    for wave in solution.waves:
        if wave.family is Family.NONPHYSICAL:
            end = end + (wave.right_state.as_array() - wave.left_state.as_array())
    return float(np.linalg.norm(end - solution.right_state.as_array()))
