"""Uniformly convex scalar fluxes and their Legendre transforms"""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..core.errors import InputError

ScalarMap = Callable[[np.ndarray], np.ndarray]

CONVEXITY_SAMPLES = 201
LEGENDRE_XATOL = 1e-13


@dataclass(frozen=True, eq=False)
class ConvexFlux:
    """Flux f with f'' >= c_conv > 0 on [z_lo, z_hi]

    ``quadratic`` holds a when f(z) = a·z², which switches the Legendre
    transform and the inverse of f' to closed forms.
    """

    f: ScalarMap
    fprime: ScalarMap
    c_conv: float
    z_lo: float = -2.0
    z_hi: float = 2.0
    quadratic: float | None = None
    name: str = "custom"

    def __post_init__(self) -> None:
        if not self.c_conv > 0.0:
            raise InputError(f"c_conv must be positive, got {self.c_conv}")

    @classmethod
    def burgers(cls) -> "ConvexFlux":
        return cls.polynomial(0.5, 0.0, name="burgers")

    @classmethod
    def polynomial(cls, a: float, b: float = 0.0, name: str | None = None) -> "ConvexFlux":
        """f(z) = a·z² + b·z⁴ with a > 0, b >= 0 (c_conv = 2a)"""
        if not a > 0.0 or b < 0.0:
            raise InputError(f"polynomial flux needs a > 0, b >= 0; got a={a}, b={b}")
        return cls(
            f=lambda z: a * z * z + b * z**4,
            fprime=lambda z: 2.0 * a * z + 4.0 * b * z**3,
            c_conv=2.0 * a,
            quadratic=a if b == 0.0 else None,
            name=name or f"poly(a={a}, b={b})",
        )

    def check_convexity(self, lo: float | None = None, hi: float | None = None) -> None:
        """Second differences of f on a sample grid must stay above c_conv/2

        Raises:
            InputError: If f is not uniformly convex or f' is not increasing
        """
        lo = self.z_lo if lo is None else lo
        hi = self.z_hi if hi is None else hi
        z = np.linspace(lo, hi, CONVEXITY_SAMPLES)
        h = z[1] - z[0]
        second = (self.f(z[2:]) - 2.0 * self.f(z[1:-1]) + self.f(z[:-2])) / (h * h)
        if (second < 0.5 * self.c_conv).any():
            worst = z[1:-1][int(np.argmin(second))]
            raise InputError(
                f"Flux {self.name} is not uniformly convex near z={worst:.6g} "
                f"(f'' ~ {second.min():.3g} < c_conv/2)"
            )
        if not (np.diff(self.fprime(z)) > 0.0).all():
            raise InputError(f"f' of flux {self.name} is not strictly increasing")

    def fprime_inv(self, xi: float) -> float:
        """The state z with f'(z) = xi"""
        if self.quadratic is not None:
            return xi / (2.0 * self.quadratic)
        g_lo = float(self.fprime(np.float64(self.z_lo))) - xi
        g_hi = float(self.fprime(np.float64(self.z_hi))) - xi
        if g_lo > 0.0 or g_hi < 0.0:
            raise InputError(
                f"Slope {xi} outside f'([{self.z_lo}, {self.z_hi}]) for flux {self.name}"
            )
        return float(
            brentq(lambda z: float(self.fprime(np.float64(z))) - xi, self.z_lo, self.z_hi, xtol=1e-15)
        )

    def legendre(self, xi: float) -> float:
        """L(ξ) = sup_z (ξz − f(z)), by bounded golden-section search"""
        if self.quadratic is not None:
            return xi * xi / (4.0 * self.quadratic)
        result = minimize_scalar(
            lambda z: float(self.f(np.float64(z))) - xi * z,
            bounds=(self.z_lo, self.z_hi),
            method="bounded",
            options={"xatol": LEGENDRE_XATOL},
        )
        return -float(result.fun)

    def legendre_table(self, n: int = 4001) -> tuple[np.ndarray, np.ndarray]:
        """Exact (ξ, L(ξ)) pairs at ξ = f'(z) on a z grid, for interpolation"""
        z = np.linspace(self.z_lo, self.z_hi, n)
        xi = self.fprime(z)
        return xi, xi * z - self.f(z)

    def legendre_array(self, xi: np.ndarray, table: tuple[np.ndarray, np.ndarray] | None = None) -> np.ndarray:
        if self.quadratic is not None:
            return xi * xi / (4.0 * self.quadratic)
        xs, values = table if table is not None else self.legendre_table()
        return np.interp(xi, xs, values)
