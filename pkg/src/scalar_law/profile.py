"""Bounded initial profiles for scalar conservation laws"""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..core.errors import InputError

ScalarMap = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class ScalarProfile:
    """An L∞ datum u₀ with its primitive

    ``value`` and ``primitive`` are defined on the whole line; outside
    [x_lo, x_hi] the datum continues with its constant end values.
    ``primitive`` is normalized to vanish at x_lo.
    """

    value: ScalarMap
    primitive: ScalarMap
    x_lo: float
    x_hi: float
    bound: float
    name: str = "profile"

    def __post_init__(self) -> None:
        if not self.x_hi > self.x_lo:
            raise InputError(f"Empty working interval [{self.x_lo}, {self.x_hi}]")

    @classmethod
    def constant(cls, c: float, x_lo: float = -1.0, x_hi: float = 1.0) -> "ScalarProfile":
        return cls(
            value=lambda x: np.full_like(np.asarray(x, dtype=float), c),
            primitive=lambda x: c * (np.asarray(x, dtype=float) - x_lo),
            x_lo=x_lo,
            x_hi=x_hi,
            bound=abs(c),
            name=f"constant({c})",
        )

    @classmethod
    def riemann(
        cls,
        u_left: float,
        u_right: float,
        x0: float = 0.0,
        x_lo: float = -1.0,
        x_hi: float = 1.0,
    ) -> "ScalarProfile":
        """Step from u_left to u_right at x0"""
        if not x_lo < x0 < x_hi:
            raise InputError(f"Jump position {x0} outside ({x_lo}, {x_hi})")

        def value(x):
            return np.where(np.asarray(x, dtype=float) < x0, u_left, u_right)

        def primitive(x):
            x = np.asarray(x, dtype=float)
            return u_left * (np.minimum(x, x0) - x_lo) + u_right * np.maximum(x - x0, 0.0)

        return cls(
            value=value,
            primitive=primitive,
            x_lo=x_lo,
            x_hi=x_hi,
            bound=max(abs(u_left), abs(u_right)),
            name=f"riemann({u_left}, {u_right})",
        )

    @classmethod
    def from_samples(
        cls, xs: np.ndarray, us: np.ndarray, name: str = "samples"
    ) -> "ScalarProfile":
        """Piecewise-linear interpolant of the nodes with an exact primitive"""
        xs = np.asarray(xs, dtype=float)
        us = np.asarray(us, dtype=float)
        if xs.ndim != 1 or xs.shape != us.shape or xs.size < 2:
            raise InputError("from_samples needs two matching 1-d arrays of size >= 2")
        if not (np.diff(xs) > 0.0).all():
            raise InputError("Sample positions must be strictly increasing")
        nodes = cumulative_trapezoid(us, xs, initial=0.0)
        slopes = np.diff(us) / np.diff(xs)

        def value(x):
            return np.interp(x, xs, us)

        def primitive(x):
            x = np.asarray(x, dtype=float)
            k = np.clip(np.searchsorted(xs, x, side="right") - 1, 0, xs.size - 2)
            d = np.clip(x, xs[0], xs[-1]) - xs[k]
            inside = nodes[k] + us[k] * d + 0.5 * slopes[k] * d * d
            below = us[0] * np.minimum(x - xs[0], 0.0)
            above = us[-1] * np.maximum(x - xs[-1], 0.0)
            return inside + below + above

        return cls(
            value=value,
            primitive=primitive,
            x_lo=float(xs[0]),
            x_hi=float(xs[-1]),
            bound=float(np.abs(us).max()),
            name=name,
        )

    @classmethod
    def smooth(
        cls,
        func: ScalarMap,
        x_lo: float,
        x_hi: float,
        n: int = 4001,
        name: str = "smooth",
    ) -> "ScalarProfile":
        """Fine piecewise-linear sampling of a smooth function"""
        xs = np.linspace(x_lo, x_hi, n)
        return cls.from_samples(xs, func(xs), name=name)

    @classmethod
    def reflected_fan(
        cls, u_left: float = 0.0, u_right: float = 1.0, t_collapse: float = 1.0
    ) -> "ScalarProfile":
        """Burgers compression datum v₀(x) = u(t_collapse, −x)

        u is the rarefaction fan from u_left < u_right; its mirror image
        focuses into a single jump from u_right to u_left at t_collapse.
        """
        if not u_left < u_right:
            raise InputError("reflected_fan needs u_left < u_right")
        if not t_collapse > 0.0:
            raise InputError("t_collapse must be positive")
        xs = np.array([-u_right * t_collapse, -u_left * t_collapse])
        return cls.from_samples(xs, np.array([u_right, u_left]), name="reflected_fan")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ScalarProfile":
        """Build a profile from a datum file

        Kinds: constant {c}, riemann {u_left, u_right, x0}, fan {u_left,
        u_right} (an expanding step), compression {u_left, u_right,
        t_collapse}, sin {amplitude, wavenumber, offset}, arctan {amplitude,
        width, offset} and samples {xs, us}. All but samples accept x_lo and
        x_hi.

        Raises:
            InputError: On an unknown kind, a missing field or invalid values
        """
        kind = data.get("kind")
        if kind is None:
            raise InputError("Missing required field: kind")

        def need(name: str) -> Any:
            if name not in data:
                raise InputError(f"Missing required field: {name}")
            return data[name]

        x_lo = float(data.get("x_lo", -1.0))
        x_hi = float(data.get("x_hi", 1.0))
        if kind == "constant":
            return cls.constant(float(need("c")), x_lo, x_hi)
        if kind == "riemann":
            return cls.riemann(
                float(need("u_left")),
                float(need("u_right")),
                float(data.get("x0", 0.0)),
                x_lo,
                x_hi,
            )
        if kind == "fan":
            u_left = float(data.get("u_left", 0.0))
            u_right = float(data.get("u_right", 1.0))
            if not u_left < u_right:
                raise InputError("fan needs u_left < u_right")
            return cls.riemann(u_left, u_right, float(data.get("x0", 0.0)), x_lo, x_hi)
        if kind == "compression":
            return cls.reflected_fan(
                float(data.get("u_left", 0.0)),
                float(data.get("u_right", 1.0)),
                float(data.get("t_collapse", 1.0)),
            )
        if kind == "sin":
            amplitude = float(need("amplitude"))
            wavenumber = float(data.get("wavenumber", np.pi))
            offset = float(data.get("offset", 0.0))
            return cls.smooth(
                lambda x: offset + amplitude * np.sin(wavenumber * x),
                x_lo,
                x_hi,
                name=f"sin(A={amplitude})",
            )
        if kind == "arctan":
            amplitude = float(need("amplitude"))
            width = float(data.get("width", 0.1))
            offset = float(data.get("offset", 0.0))
            if not width > 0.0:
                raise InputError(f"arctan width must be positive, got {width}")
            return cls.smooth(
                lambda x: offset + amplitude * np.arctan(x / width),
                x_lo,
                x_hi,
                name=f"arctan(A={amplitude})",
            )
        if kind == "samples":
            return cls.from_samples(
                np.asarray(need("xs"), dtype=float), np.asarray(need("us"), dtype=float)
            )
        raise InputError(f"Unknown scalar datum kind '{kind}'")

    def perturbed(self, delta: "ScalarProfile", name: str | None = None) -> "ScalarProfile":
        """Sum of two profiles; the working interval is kept"""
        base = self
        return ScalarProfile(
            value=lambda x: base.value(x) + delta.value(x),
            primitive=lambda x: base.primitive(x) + delta.primitive(x) - delta.primitive(np.float64(base.x_lo)),
            x_lo=base.x_lo,
            x_hi=base.x_hi,
            bound=base.bound + delta.bound,
            name=name or f"{base.name}+{delta.name}",
        )

    def speed_range(self, fprime: ScalarMap) -> tuple[float, float]:
        lo, hi = fprime(np.array([-self.bound, self.bound]))
        return float(lo), float(hi)
