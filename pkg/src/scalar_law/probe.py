"""Empirical stability check for the finiteness of shock sets"""

from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .checks import shock_census
from .flux import ConvexFlux
from .lax_oleinik import lax_oleinik_solve
from .profile import ScalarProfile

DEFAULT_MODES = 8
DEFAULT_SAMPLES = 401


@dataclass
class ProbeReport:
    times: list[float]
    amplitude: float
    seed: int
    counts: list[list[int]] = field(default_factory=list)
    half_amplitude_counts: list[list[int]] = field(default_factory=list)
    unstable: list[tuple[int, float]] = field(default_factory=list)

    @property
    def stable(self) -> bool:
        return not self.unstable

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "stable": self.stable}


def fourier_perturbation(
    rng: np.random.Generator,
    x_lo: float,
    x_hi: float,
    amplitude: float,
    n_modes: int = DEFAULT_MODES,
) -> ScalarProfile:
    """amplitude·Σ c_k/k²·sin(κ_k x + φ_k) with κ_k = 2πk/(x_hi − x_lo)

    Coefficients are standard normal, phases uniform; the primitive is
    integrated in closed form.
    """
    k = np.arange(1, n_modes + 1)
    coefficients = amplitude * rng.standard_normal(n_modes) / k**2
    phases = rng.uniform(0.0, 2.0 * np.pi, n_modes)
    kappa = 2.0 * np.pi * k / (x_hi - x_lo)

    def value(x):
        x = np.asarray(x, dtype=float)
        return np.sum(
            coefficients[:, None] * np.sin(np.multiply.outer(kappa, x) + phases[:, None]),
            axis=0,
        ).reshape(x.shape)

    def primitive(x):
        x = np.asarray(x, dtype=float)
        return np.sum(
            -(coefficients / kappa)[:, None]
            * np.cos(np.multiply.outer(kappa, x) + phases[:, None]),
            axis=0,
        ).reshape(x.shape)

    return ScalarProfile(
        value=value,
        primitive=primitive,
        x_lo=x_lo,
        x_hi=x_hi,
        bound=float(np.abs(coefficients).sum()),
        name=f"fourier(A={amplitude})",
    )


def schaeffer_probe(
    u0: ScalarProfile,
    flux: ConvexFlux,
    times: list[float],
    trials: int,
    amplitude: float,
    seed: int = 0,
    xs: np.ndarray | None = None,
    n_modes: int = DEFAULT_MODES,
) -> ProbeReport:
    """Shock counts of randomly perturbed data, re-counted at half amplitude

    A trial is unstable at a time when halving the amplitude of its
    perturbation changes the number of shocks found by the census.
    """
    if xs is None:
        xs = np.linspace(u0.x_lo, u0.x_hi, DEFAULT_SAMPLES)
    rng = np.random.default_rng(seed)
    report = ProbeReport(times=list(times), amplitude=amplitude, seed=seed)
    for trial in range(trials):
        state = rng.bit_generator.state
        full = u0.perturbed(fourier_perturbation(rng, u0.x_lo, u0.x_hi, amplitude, n_modes))
        rng.bit_generator.state = state
        half = u0.perturbed(
            fourier_perturbation(rng, u0.x_lo, u0.x_hi, 0.5 * amplitude, n_modes)
        )
        counts, half_counts = [], []
        for t in times:
            n_full = len(shock_census(lax_oleinik_solve(flux, full, t, xs)))
            n_half = len(shock_census(lax_oleinik_solve(flux, half, t, xs)))
            counts.append(n_full)
            half_counts.append(n_half)
            if n_full != n_half:
                report.unstable.append((trial, t))
        report.counts.append(counts)
        report.half_amplitude_counts.append(half_counts)
    return report
