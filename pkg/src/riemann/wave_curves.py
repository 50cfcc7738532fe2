"""Wave curves and the shock operators S_i[s, U-]"""

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import root

from ..bj_system.flux import (
    SystemParams,
    eigenvalue,
    eigenvalues_array,
    flux_array,
    jacobian_array,
    r1,
    r2_array,
    r3,
)
from ..core.errors import ConvergenceError, InputError, InternalError
from ..core.types import Family, State, Wave, WaveKind
from ..utils.logger import get_debug_logger

# Sign of the eigenvector coefficient on the shock branch: ∇λ1·r1 = 4η > 0
# forces λ1 to drop along −r1, ∇λ3·r3 = −4η < 0 along +r3.
SHOCK_ORIENTATION = {Family.ONE: -1.0, Family.THREE: 1.0}

HUGONIOT_TOL = 1e-9
HUGONIOT_ROOT_TOL = 1e-12
HUGONIOT_MAX_ITER = 50
LAX_SLACK = 1e-9
MAX_STRENGTH = 0.2
MAX_STATE_NORM = 0.8


def hugoniot_residual(
    Uminus: State | np.ndarray, Uplus: State | np.ndarray, p: SystemParams
) -> tuple[float, float]:
    """Least-squares shock speed and Rankine–Hugoniot residual

    Returns:
        (sigma, residual) with sigma minimizing |ΔF − σ ΔU| and residual the
        attained minimum
    """
    um = Uminus.as_array() if isinstance(Uminus, State) else np.asarray(Uminus)
    up = Uplus.as_array() if isinstance(Uplus, State) else np.asarray(Uplus)
    dU = up - um
    denominator = float(dU @ dU)
    if denominator == 0.0:
        raise InputError("hugoniot_residual needs distinct states")
    dF = flux_array(up, p.eta) - flux_array(um, p.eta)
    sigma = float(dF @ dU) / denominator
    return sigma, float(np.linalg.norm(dF - sigma * dU))


def _straight_direction(family: Family, U: np.ndarray) -> np.ndarray:
    return r1(U) if family is Family.ONE else r3(U)


def _corrected_hugoniot(
    family: Family, tau: float, um: np.ndarray, p: SystemParams
) -> np.ndarray:
    """Point of the Hugoniot locus whose projection on r(U-) equals tau·|r|²"""
    r = _straight_direction(family, um)
    fm = flux_array(um, p.eta)
    target = tau * float(r @ r)

    def equations(z: np.ndarray) -> np.ndarray:
        up, sigma = z[:3], z[3]
        rh = flux_array(up, p.eta) - fm - sigma * (up - um)
        return np.append(rh, (up - um) @ r - target)

    guess_state = um + tau * r
    guess_sigma = 0.5 * (
        eigenvalue(family, um, p) + eigenvalue(family, guess_state, p)
    )
    solution = root(equations, np.append(guess_state, guess_sigma), method="hybr")
    if not solution.success:
        raise ConvergenceError(
            f"Corrected {family.label}-Hugoniot curve did not converge",
            {"message": solution.message, "tau": tau, "state": um.tolist()},
        )
    return solution.x[:3]


def straight_curve(
    family: Family, tau: float, um: np.ndarray, p: SystemParams
) -> np.ndarray:
    """Family-1/3 wave curve through um at signed parameter tau

    Shock and rarefaction branches coincide on the line um + tau·r(um). On
    the shock branch the Rankine–Hugoniot residual is checked and the
    Newton-corrected locus is used if the line fails it.
    """
    up = um + tau * _straight_direction(family, um)
    # tau below rounding at um leaves the state unchanged
    if tau == 0.0 or tau * SHOCK_ORIENTATION[family] < 0.0 or np.array_equal(up, um):
        return up
    _, residual = hugoniot_residual(um, up, p)
    if residual <= HUGONIOT_TOL:
        return up
    corrected = _corrected_hugoniot(family, tau, um, p)
    get_debug_logger().warning(
        f"{family.label}-shock line fails Rankine–Hugoniot "
        f"(residual {residual:.3e}); corrected by "
        f"{float(np.linalg.norm(corrected - up)):.3e}"
    )
    return corrected


def _hugoniot_2_equations(
    z: np.ndarray, um: np.ndarray, v_plus: float, sigma: float, eta: float
) -> tuple[np.ndarray, np.ndarray]:
    u, w = z
    up = np.array([u, v_plus, w])
    dF = flux_array(up, eta) - flux_array(um, eta)
    residual = np.array([dF[0] - sigma * (u - um[0]), dF[2] - sigma * (w - um[2])])
    J = jacobian_array(up, eta)
    jac = np.array([[J[0, 0] - sigma, J[0, 2]], [J[2, 0], J[2, 2] - sigma]])
    return residual, jac


def hugoniot_2(s: float, um: np.ndarray, p: SystemParams) -> np.ndarray:
    """2-shock of strength s: v drops by s, (u, w) from the first and third
    Rankine–Hugoniot components with σ = v- + v+"""
    v_plus = float(um[1]) - s
    sigma = float(um[1]) + v_plus
    solution = root(
        _hugoniot_2_equations,
        np.array([um[0], um[2]]),
        args=(um, v_plus, sigma, p.eta),
        jac=True,
        method="hybr",
        options={"xtol": 1e-15, "maxfev": HUGONIOT_MAX_ITER},
    )
    residual = float(np.linalg.norm(solution.fun))
    if residual > HUGONIOT_ROOT_TOL:
        raise ConvergenceError(
            "2-Hugoniot root finding did not converge",
            {"residual": residual, "strength": s, "state": um.tolist()},
        )
    return np.array([solution.x[0], v_plus, solution.x[1]])


def integral_curve_2(s: float, um: np.ndarray, p: SystemParams) -> np.ndarray:
    """Follow r2 from um over parameter length s (v rises by s)"""
    if s == 0.0:
        return um.copy()
    solution = solve_ivp(
        lambda _, U: r2_array(U, p.eta),
        (0.0, s),
        um,
        method="DOP853",
        rtol=1e-13,
        atol=1e-15,
    )
    if not solution.success:
        raise ConvergenceError(
            "2-rarefaction integration failed", {"message": solution.message}
        )
    if (np.linalg.norm(solution.y, axis=0) >= 1.0).any():
        raise InputError("2-rarefaction curve leaves the domain |U| < 1")
    return solution.y[:, -1]


def wave_curve(
    family: Family, tau: float, um: np.ndarray, p: SystemParams
) -> np.ndarray:
    """Right state reached from um along the family's wave curve

    ``tau`` is the signed parameter: the eigenvector coefficient for
    families 1 and 3, the v-jump for family 2.
    """
    if family is Family.TWO:
        return integral_curve_2(tau, um, p) if tau >= 0.0 else hugoniot_2(-tau, um, p)
    return straight_curve(family, tau, um, p)


def wave_kind(family: Family, tau: float) -> WaveKind:
    if family is Family.TWO:
        return WaveKind.SHOCK if tau < 0.0 else WaveKind.RAREFACTION
    return WaveKind.SHOCK if tau * SHOCK_ORIENTATION[family] > 0.0 else WaveKind.RAREFACTION


def make_wave(
    family: Family, tau: float, um: np.ndarray, up: np.ndarray, p: SystemParams
) -> Wave:
    """Wrap a wave-curve step into a Wave with its speeds"""
    kind = wave_kind(family, tau)
    lam = eigenvalues_array(np.stack([um, up], axis=1), p.eta)[family - 1]
    if kind is WaveKind.SHOCK:
        if family is Family.TWO:
            sigma = float(um[1] + up[1])
        elif np.array_equal(up, um):
            sigma = float(lam[0])
        else:
            sigma, _ = hugoniot_residual(um, up, p)
        speed_lo = speed_hi = sigma
    else:
        speed_lo, speed_hi = float(lam[0]), float(lam[1])
    return Wave(
        family=family,
        kind=kind,
        strength=abs(tau),
        left_state=State.from_array(um),
        right_state=State.from_array(up),
        speed_lo=speed_lo,
        speed_hi=speed_hi,
        parameter=tau,
    )


def check_lax(wave: Wave, p: SystemParams) -> bool:
    """Lax inequalities λ(left) ≥ σ ≥ λ(right) with slack"""
    lam_left = eigenvalue(wave.family, wave.left_state, p)
    lam_right = eigenvalue(wave.family, wave.right_state, p)
    return lam_left >= wave.speed - LAX_SLACK and wave.speed >= lam_right - LAX_SLACK


def _check_public_input(s: float, Uminus: State) -> None:
    if s < 0.0 or s > MAX_STRENGTH:
        raise InputError(f"strength must lie in [0, {MAX_STRENGTH}], got {s}")
    if not Uminus.norm() < MAX_STATE_NORM:
        raise InputError(f"|U-| must be below {MAX_STATE_NORM}, got {Uminus.norm()}")


def shock_state(family: Family, s: float, Uminus: State, p: SystemParams) -> State:
    """Right state of the admissible family-i shock of strength s

    Raises:
        InputError: If s or Uminus violate the preconditions
        ConvergenceError: If the 2-Hugoniot root finding fails
        InternalError: If the resulting pair is not Lax admissible
    """
    _check_public_input(s, Uminus)
    if s == 0.0:
        return Uminus
    um = Uminus.as_array()
    tau = -s if family is Family.TWO else SHOCK_ORIENTATION[family] * s
    up = wave_curve(family, tau, um, p)
    wave = make_wave(family, tau, um, up, p)
    if not check_lax(wave, p):
        raise InternalError(f"{family.label}-shock from {um.tolist()} is not admissible")
    return wave.right_state


def rarefaction_state(
    family: Family, s: float, Uminus: State, p: SystemParams
) -> State:
    """Right state of the family-i rarefaction of strength s

    Raises:
        InputError: If the preconditions fail or the curve leaves |U| < 1
    """
    _check_public_input(s, Uminus)
    if s == 0.0:
        return Uminus
    um = Uminus.as_array()
    tau = s if family is Family.TWO else -SHOCK_ORIENTATION[family] * s
    up = wave_curve(family, tau, um, p)
    if not np.linalg.norm(up) < 1.0:
        raise InputError("Rarefaction curve leaves the domain |U| < 1")
    return State.from_array(up)
