"""Derived constants of the infinite-shock-pattern experiment"""

import math
import sys
from dataclasses import dataclass
from typing import Any

from ..bj_system.flux import SystemParams
from ..core.errors import InputError
from ..core.types import State
from ..front_tracking.models import FTParams

EPS_MAX = 0.3
Q = 20.0
DEFAULT_J_MAX = 4
NOISE_FACTOR = 1e3


@dataclass(frozen=True)
class ScenarioParams:
    """ε and every constant derived from it"""

    eps: float
    q: float
    eta: float
    omega: float
    r: float
    Ttilde: float
    rho: float
    a: float
    t_apex: float
    J_max_feasible: int

    @property
    def U_I(self) -> State:
        return State(self.eps, self.omega, -self.eps)

    @property
    def system(self) -> SystemParams:
        return SystemParams(self.eta)

    def to_dict(self) -> dict[str, Any]:
        return {
            "eps": self.eps,
            "q": self.q,
            "eta": self.eta,
            "omega": self.omega,
            "r": self.r,
            "Ttilde": self.Ttilde,
            "rho": self.rho,
            "a": self.a,
            "t_apex": self.t_apex,
            "J_max_feasible": self.J_max_feasible,
            "U_I": self.U_I.to_list(),
        }


def j_max_feasible(eps: float) -> int:
    """Largest j with ω^{j+1}·√ε above 1e3 times the machine epsilon"""
    omega = eps**3
    floor = NOISE_FACTOR * sys.float_info.epsilon
    j = 0
    while omega ** (j + 2) * math.sqrt(eps) > floor:
        j += 1
    return j


def derive_params(eps: float) -> ScenarioParams:
    """Evaluate the parameter formulas at ε

    Raises:
        InputError: If ε lies outside (0, 0.3]
    """
    if not 0.0 < eps <= EPS_MAX:
        raise InputError(f"eps must lie in (0, {EPS_MAX}], got {eps}")
    omega = eps**3
    Ttilde = 40.0 / omega
    return ScenarioParams(
        eps=eps,
        q=Q,
        eta=eps**2,
        omega=omega,
        r=eps**10 / 4.0,
        Ttilde=Ttilde,
        rho=12.0 * Ttilde + 40.0,
        a=Q + 7.0,
        t_apex=Q / omega,
        J_max_feasible=j_max_feasible(eps),
    )


def default_ft_params(
    sp: ScenarioParams, J_max: int = DEFAULT_J_MAX, **overrides: Any
) -> FTParams:
    """Front-tracking controls for a scenario run up to 2T̃ in [−ρ, ρ]

    delta_rar = ω^{J_max+2} keeps discretization noise below the deepest
    tracked generation.
    """
    if J_max > sp.J_max_feasible:
        raise InputError(
            f"J_max={J_max} exceeds the feasible depth {sp.J_max_feasible} at eps={sp.eps}"
        )
    values: dict[str, Any] = {
        "delta_rar": sp.omega ** (J_max + 2),
        "t_end": 2.0 * sp.Ttilde,
        "clip": sp.rho,
        "big_2shock_strength": 0.5 * sp.omega,
    }
    values.update(overrides)
    return FTParams(**values)
