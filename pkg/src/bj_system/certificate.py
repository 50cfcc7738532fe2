"""Strict hyperbolicity and genuine nonlinearity certificate"""

from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from ..core.errors import InputError
from ..core.types import Family
from .flux import (
    SystemParams,
    eigenvalues_array,
    genuine_nonlinearity,
    gn_finite_difference,
)

EIGENVALUE_RANGES = ((-6.0, -2.5), (-2.0, 2.0), (3.0, 5.0))
MIN_GAPS = (0.5, 1.0)
ROUNDOFF = 1e-12
GN_FD_TOL = 1e-5


@dataclass
class CertificateReport:
    """Outcome of a certify_domain sweep"""

    eta: float
    resolution: int
    n_states: int
    lambda_min: list[float]
    lambda_max: list[float]
    gap_min: list[float]
    gn_analytic_error: float
    gn_fd_error: float
    failures: list[str] = field(default_factory=list)
    witness: list[float] | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        result = asdict(self)
        result["passed"] = self.passed
        return result


def _unit_ball_grid(resolution: int) -> np.ndarray:
    axis = np.linspace(-1.0, 1.0, resolution)
    u, v, w = np.meshgrid(axis, axis, axis, indexing="ij")
    stack = np.stack([u.ravel(), v.ravel(), w.ravel()])
    return stack[:, np.linalg.norm(stack, axis=0) < 1.0]


def _analytic_gn(states: np.ndarray, eta: float) -> np.ndarray:
    """Closed-form gradients dotted with the closed-form r1, r3"""
    u, v, w = states
    # ∇λ1 = 2η(−(v−2), −u, 1), r1 = (1, 0, v)
    gn1 = 2.0 * eta * (-(v - 2.0) + v)
    # ∇λ3 = 2η(−v, −u, 1), r3 = (1, 0, v−2)
    gn3 = 2.0 * eta * (-v + (v - 2.0))
    gn2 = np.full_like(u, 2.0)
    return np.stack([gn1, gn2, gn3])


def certify_domain(p: SystemParams, resolution: int = 16) -> CertificateReport:
    """Sweep a grid of |U| < 1 and check ranges, gaps and GN values

    Args:
        p: System parameters
        resolution: Grid points per axis (>= 8)

    Returns:
        CertificateReport; ``failures`` lists every violated check and
        ``witness`` holds the first offending state
    """
    if resolution < 8:
        raise InputError(f"resolution must be >= 8, got {resolution}")

    states = _unit_ball_grid(resolution)
    lambdas = eigenvalues_array(states, p.eta)
    failures: list[str] = []
    witness: list[float] | None = None

    def flag(message: str, mask: np.ndarray) -> None:
        nonlocal witness
        failures.append(message)
        if witness is None:
            witness = states[:, int(np.argmax(mask))].tolist()

    for index, (lo, hi) in enumerate(EIGENVALUE_RANGES):
        outside = (lambdas[index] < lo - ROUNDOFF) | (lambdas[index] > hi + ROUNDOFF)
        if outside.any():
            flag(f"lambda{index + 1} leaves [{lo}, {hi}]", outside)

    gaps = np.stack([lambdas[1] - lambdas[0], lambdas[2] - lambdas[1]])
    for index, minimum in enumerate(MIN_GAPS):
        too_small = gaps[index] < minimum - ROUNDOFF
        if too_small.any():
            flag(f"gap lambda{index + 2}-lambda{index + 1} below {minimum}", too_small)

    expected = np.array(genuine_nonlinearity(p))[:, None]
    analytic_error = np.abs(_analytic_gn(states, p.eta) - expected)
    if (analytic_error > ROUNDOFF).any():
        flag("analytic GN values deviate", analytic_error.max(axis=0) > ROUNDOFF)

    # finite differences on a thinned subset; r2 needs a linear solve per state
    fd_error = 0.0
    for column in states[:, :: max(1, states.shape[1] // 64)].T:
        for family in (Family.ONE, Family.TWO, Family.THREE):
            fd = gn_finite_difference(family, column, p)
            fd_error = max(fd_error, abs(fd - expected[family - 1, 0]))
    if fd_error > GN_FD_TOL:
        failures.append(f"finite-difference GN error {fd_error:.3e}")

    return CertificateReport(
        eta=p.eta,
        resolution=resolution,
        n_states=int(states.shape[1]),
        lambda_min=lambdas.min(axis=1).tolist(),
        lambda_max=lambdas.max(axis=1).tolist(),
        gap_min=gaps.min(axis=1).tolist(),
        gn_analytic_error=float(analytic_error.max()),
        gn_fd_error=float(fd_error),
        failures=failures,
        witness=witness,
    )
