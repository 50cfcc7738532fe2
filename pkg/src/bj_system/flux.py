"""Baiti–Jenssen flux, Jacobian and eigenstructure"""

from dataclasses import dataclass

import numpy as np

from ..core.errors import InputError, InternalError
from ..core.types import Family, State

EIGEN_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class SystemParams:
    """Parameters of the 3x3 system"""

    eta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.eta < 0.25:
            raise InputError(f"eta must lie in (0, 1/4), got {self.eta}")


@dataclass(frozen=True)
class EigenData:
    """Eigenvalues (ascending), right eigenvectors and GN values at a state"""

    lambdas: tuple[float, float, float]
    rvecs: tuple[np.ndarray, np.ndarray, np.ndarray]
    gn_values: tuple[float, float, float]

    def lam(self, family: Family) -> float:
        return self.lambdas[family - 1]

    def rvec(self, family: Family) -> np.ndarray:
        return self.rvecs[family - 1]


def _as_array(U: State | np.ndarray) -> np.ndarray:
    return U.as_array() if isinstance(U, State) else np.asarray(U, dtype=float)


def flux_array(U: np.ndarray, eta: float) -> np.ndarray:
    """Flux on a (3,) array or a (3, n) stack of states"""
    u, v, w = U[0], U[1], U[2]
    f1 = 4.0 * ((v - 1.0) * u - w) + 2.0 * eta * (u * w - u * u * (v - 1.0))
    f2 = v * v
    f3 = 4.0 * (v * (v - 2.0) * u - (v - 1.0) * w) + eta * (
        w * w - u * u * (v - 2.0) * v
    )
    return np.array([f1, f2, f3])


def flux(U: State | np.ndarray, p: SystemParams) -> np.ndarray:
    """F(U) componentwise"""
    return flux_array(_as_array(U), p.eta)


def jacobian_array(U: np.ndarray, eta: float) -> np.ndarray:
    u, v, w = float(U[0]), float(U[1]), float(U[2])
    return np.array(
        [
            [
                4.0 * (v - 1.0) + 2.0 * eta * (w - 2.0 * u * (v - 1.0)),
                4.0 * u - 2.0 * eta * u * u,
                -4.0 + 2.0 * eta * u,
            ],
            [0.0, 2.0 * v, 0.0],
            [
                4.0 * v * (v - 2.0) - 2.0 * eta * u * v * (v - 2.0),
                4.0 * (2.0 * (v - 1.0) * u - w) - 2.0 * eta * u * u * (v - 1.0),
                -4.0 * (v - 1.0) + 2.0 * eta * w,
            ],
        ]
    )


def jacobian(U: State | np.ndarray, p: SystemParams) -> np.ndarray:
    """JF(U), hand-differentiated"""
    return jacobian_array(_as_array(U), p.eta)


def eigenvalues_array(U: np.ndarray, eta: float) -> np.ndarray:
    """Closed-form (λ1, λ2, λ3) on a (3,) array or a (3, n) stack"""
    u, v, w = U[0], U[1], U[2]
    return np.array(
        [
            2.0 * eta * (w - (v - 2.0) * u) - 4.0,
            2.0 * v,
            2.0 * eta * (w - v * u) + 4.0,
        ]
    )


def eigenvalue(family: Family, U: State | np.ndarray, p: SystemParams) -> float:
    return float(eigenvalues_array(_as_array(U), p.eta)[family - 1])


def r1(U: State | np.ndarray) -> np.ndarray:
    return np.array([1.0, 0.0, float(_as_array(U)[1])])


def r3(U: State | np.ndarray) -> np.ndarray:
    return np.array([1.0, 0.0, float(_as_array(U)[1]) - 2.0])


def r2_array(U: np.ndarray, eta: float) -> np.ndarray:
    """Kernel direction of JF − λ2·I with second component 1

    Row 2 of JF − λ2·I vanishes identically, so the first and third rows
    give a 2x2 system for the remaining components.
    """
    J = jacobian_array(U, eta)
    lam2 = 2.0 * float(U[1])
    block = np.array(
        [[J[0, 0] - lam2, J[0, 2]], [J[2, 0], J[2, 2] - lam2]], dtype=float
    )
    a, c = np.linalg.solve(block, -np.array([J[0, 1], J[2, 1]]))
    return np.array([a, 1.0, c])


def r2(U: State | np.ndarray, p: SystemParams) -> np.ndarray:
    return r2_array(_as_array(U), p.eta)


def eigenvector(family: Family, U: State | np.ndarray, p: SystemParams) -> np.ndarray:
    if family is Family.ONE:
        return r1(U)
    if family is Family.TWO:
        return r2(U, p)
    if family is Family.THREE:
        return r3(U)
    raise InputError("Non-physical fronts have no eigenvector")


def genuine_nonlinearity(p: SystemParams) -> tuple[float, float, float]:
    """∇λi·ri, independent of the state"""
    return (4.0 * p.eta, 2.0, -4.0 * p.eta)


def eigen(U: State | np.ndarray, p: SystemParams) -> EigenData:
    """Eigenvalues, eigenvectors and GN values at U

    Raises:
        InputError: If U lies outside the working domain |U| < 1
        InternalError: If an eigenpair fails the residual check
    """
    arr = _as_array(U)
    if not np.linalg.norm(arr) < 1.0:
        raise InputError(f"State {arr.tolist()} outside the domain |U| < 1")

    lambdas = eigenvalues_array(arr, p.eta)
    rvecs = (r1(arr), r2_array(arr, p.eta), r3(arr))
    J = jacobian_array(arr, p.eta)
    for index, (lam, r) in enumerate(zip(lambdas, rvecs, strict=True)):
        residual = float(np.linalg.norm(J @ r - lam * r))
        if residual > EIGEN_RESIDUAL_TOL * float(np.linalg.norm(r)):
            raise InternalError(
                f"Eigenpair {index + 1} residual {residual:.3e} at {arr.tolist()}"
            )

    return EigenData(
        lambdas=(float(lambdas[0]), float(lambdas[1]), float(lambdas[2])),
        rvecs=rvecs,
        gn_values=genuine_nonlinearity(p),
    )


def gn_finite_difference(
    family: Family, U: State | np.ndarray, p: SystemParams, h: float = 1e-6
) -> float:
    """Centered difference of λ_family along r_family"""
    arr = _as_array(U)
    r = eigenvector(family, arr, p)
    forward = eigenvalues_array(arr + h * r, p.eta)[family - 1]
    backward = eigenvalues_array(arr - h * r, p.eta)[family - 1]
    return float((forward - backward) / (2.0 * h))
