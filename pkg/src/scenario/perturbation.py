"""Seeded perturbations, the adversarial rarefaction and datum assembly"""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..bj_system.flux import SystemParams, eigenvalue
from ..core.errors import InputError
from ..core.types import Family, State, StepFunction
from ..riemann.wave_curves import SHOCK_ORIENTATION, straight_curve
from ..utils.logger import get_debug_logger
from .datum import (
    build_compression_profile,
    build_piecewise_datum,
    evaluate,
    mollify_search,
)
from .params import ScenarioParams, derive_params

DATUM_KINDS = ("piecewise_Z", "compression_V", "mollified_U", "perturbed", "constant")
BASE_KINDS = ("piecewise_Z", "compression_V", "mollified_U")
NORM_KINDS = ("BV", "W1inf")
DEFAULT_TEETH = 10
DEFAULT_MODES = 8
DEFAULT_SMOOTH_MESH = 0.1
NORM_SAMPLES = 20001
ARRIVAL_WINDOW = (0.8, 1.0)
DEFAULT_ARRIVAL = 0.9
WINDOW_SLACK = 1e-6


@dataclass(frozen=True)
class DatumSpec:
    """Which initial datum to build, and how to perturb it

    ``budget`` is the TV of the added comb (BV) or its W^{1,∞} norm
    (W1inf). ``support`` defaults to (−a + 1, a − 1).
    """

    kind: str
    eps: float = 0.3
    seed: int = 0
    budget: float = 0.0
    norm: str = "BV"
    support: tuple[float, float] | None = None
    mesh: float | None = None
    radius: float | None = None
    n_teeth: int = DEFAULT_TEETH
    n_modes: int = DEFAULT_MODES
    base: str = "piecewise_Z"
    adversarial_strength: float = 0.0
    adversarial_placement: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in DATUM_KINDS:
            raise InputError(f"Unknown datum kind '{self.kind}', expected one of {DATUM_KINDS}")
        if self.base not in BASE_KINDS:
            raise InputError(f"Unknown base kind '{self.base}', expected one of {BASE_KINDS}")
        if self.norm not in NORM_KINDS:
            raise InputError(f"Unknown norm '{self.norm}', expected one of {NORM_KINDS}")
        if self.n_teeth < 1 or self.n_modes < 1:
            raise InputError("n_teeth and n_modes must be at least 1")

    def support_for(self, sp: ScenarioParams) -> tuple[float, float]:
        if self.support is None:
            return (-sp.a + 1.0, sp.a - 1.0)
        lo, hi = self.support
        if not lo < hi:
            raise InputError(f"support must be an interval lo < hi, got {self.support}")
        return float(lo), float(hi)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DatumSpec":
        """Parse a datum description

        An ``adversarial`` object {strength, placement} may stand in for the
        flat ``adversarial_*`` fields.
        """
        values = dict(data)
        adversarial = values.pop("adversarial", None)
        if adversarial is not None:
            extra = set(adversarial) - {"strength", "placement"}
            if extra:
                raise InputError(f"Unknown adversarial fields: {sorted(extra)}")
            values["adversarial_strength"] = adversarial.get("strength", 0.0)
            values["adversarial_placement"] = adversarial.get("placement")
        unknown = set(values) - set(cls.__dataclass_fields__)
        if unknown:
            raise InputError(f"Unknown datum fields: {sorted(unknown)}")
        if "kind" not in values:
            raise InputError("Missing required field: kind")
        if values.get("support") is not None:
            values["support"] = tuple(values["support"])
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        return {
            name: (list(value) if isinstance(value, tuple) else value)
            for name, value in self.__dict__.items()
        }


@dataclass(frozen=True)
class PerturbedDatum:
    datum: StepFunction
    norm: float
    norm_kind: str


def add_profiles(first: StepFunction, second: StepFunction) -> StepFunction:
    """Pointwise sum of two step functions on the merged breakpoints"""
    points = np.union1d(first.breakpoints, second.breakpoints)
    if points.size == 0:
        return StepFunction.constant(
            State.from_array(first.left_tail.as_array() + second.left_tail.as_array())
        )
    samples = np.concatenate(
        ([points[0] - 1.0], 0.5 * (points[1:] + points[:-1]), [points[-1] + 1.0])
    )
    total = evaluate(first, samples) + evaluate(second, samples)
    return StepFunction.from_pieces(
        list(points), [State.from_array(row) for row in total]
    )


def _random_direction(rng: np.random.Generator) -> np.ndarray:
    direction = rng.standard_normal(3)
    return direction / np.linalg.norm(direction)


def bv_comb(
    rng: np.random.Generator, support: tuple[float, float], tv: float, n_teeth: int
) -> StepFunction:
    """n teeth of height tv/(2n) in random directions, evenly spread over support"""
    lo, hi = support
    cell = (hi - lo) / (2 * n_teeth + 1)
    height = tv / (2 * n_teeth)
    breakpoints: list[float] = []
    values = [State(0.0, 0.0, 0.0)]
    zero = State(0.0, 0.0, 0.0)
    for k in range(n_teeth):
        start = lo + (2 * k + 1) * cell
        breakpoints.extend((start, start + cell))
        values.extend((State.from_array(height * _random_direction(rng)), zero))
    return StepFunction(tuple(breakpoints), tuple(values))


@dataclass(frozen=True, eq=False)
class SmoothPerturbation:
    """scale·w(x)·Σ c_k sin(κ_k x + φ_k), w a smooth window vanishing off support"""

    support: tuple[float, float]
    coefficients: np.ndarray
    phases: np.ndarray
    scale: float = 1.0

    @property
    def kappa(self) -> np.ndarray:
        lo, hi = self.support
        k = np.arange(1, self.coefficients.shape[0] + 1)
        return 2.0 * np.pi * k / (hi - lo)

    def _window(self, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.support
        s = (2.0 * xs - lo - hi) / (hi - lo)
        inside = np.abs(s) < 1.0
        w = np.zeros_like(xs)
        dw = np.zeros_like(xs)
        si = s[inside]
        gap = 1.0 - si * si
        w[inside] = np.exp(1.0 - 1.0 / gap)
        dw[inside] = w[inside] * (-2.0 * si / gap**2) * 2.0 / (hi - lo)
        return w, dw

    def _series(self, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        # (position, mode, component), one phase set per component
        angles = np.multiply.outer(xs, self.kappa)[:, :, None] + self.phases[None, :, :]
        g = np.einsum("nkc,kc->nc", np.sin(angles), self.coefficients)
        dg = np.einsum("nkc,kc->nc", np.cos(angles), self.coefficients * self.kappa[:, None])
        return g, dg

    def value(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        w, _ = self._window(xs)
        g, _ = self._series(xs)
        return self.scale * w[:, None] * g

    def derivative(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        w, dw = self._window(xs)
        g, dg = self._series(xs)
        return self.scale * (dw[:, None] * g + w[:, None] * dg)

    def w1inf_norm(self, samples: int = NORM_SAMPLES) -> float:
        """max(sup|p|, sup|p'|) on a uniform grid over the support"""
        xs = np.linspace(*self.support, samples)
        sup = np.linalg.norm(self.value(xs), axis=1).max()
        dsup = np.linalg.norm(self.derivative(xs), axis=1).max()
        return float(max(sup, dsup))

    def sampled(self, mesh: float) -> StepFunction:
        """Cell-midpoint samples on cells of width ``mesh`` covering the support"""
        lo, hi = self.support
        n = max(1, int(np.ceil((hi - lo) / mesh)))
        edges = np.linspace(lo, hi, n + 1)
        mids = 0.5 * (edges[1:] + edges[:-1])
        zero = State(0.0, 0.0, 0.0)
        values = [zero, *(State.from_array(row) for row in self.value(mids)), zero]
        return StepFunction.from_pieces(list(edges), values)


def smooth_perturbation(
    rng: np.random.Generator,
    support: tuple[float, float],
    budget: float,
    n_modes: int = DEFAULT_MODES,
) -> SmoothPerturbation:
    """Windowed Fourier sum with c_k ~ N(0,1)/k², scaled to W^{1,∞} norm = budget"""
    k = np.arange(1, n_modes + 1)
    coefficients = rng.standard_normal((n_modes, 3)) / (k**2)[:, None]
    phases = rng.uniform(0.0, 2.0 * np.pi, (n_modes, 3))
    raw = SmoothPerturbation(support, coefficients, phases)
    norm = raw.w1inf_norm()
    return SmoothPerturbation(support, coefficients, phases, scale=budget / norm)


def perturb(datum: StepFunction, spec: DatumSpec) -> PerturbedDatum:
    """Add a seeded BV comb or W^{1,∞}-small smooth perturbation

    Raises:
        InputError: If the budget is negative or >= r, or a BV support
            leaves (−a, a)
    """
    sp = derive_params(spec.eps)
    if spec.budget < 0.0 or spec.budget >= sp.r:
        raise InputError(f"budget must lie in [0, r = {sp.r:.6e}), got {spec.budget}")
    if spec.budget == 0.0:
        return PerturbedDatum(datum, 0.0, spec.norm)
    support = spec.support_for(sp)
    rng = np.random.default_rng(spec.seed)

    if spec.norm == "BV":
        lo, hi = support
        if not (-sp.a < lo and hi < sp.a):
            raise InputError(f"BV support {support} must lie inside (−a, a) = ({-sp.a}, {sp.a})")
        comb = bv_comb(rng, support, spec.budget, spec.n_teeth)
        return PerturbedDatum(add_profiles(datum, comb), comb.total_variation(), "BV")

    smooth = smooth_perturbation(rng, support, spec.budget, spec.n_modes)
    mesh = spec.mesh if spec.mesh is not None else DEFAULT_SMOOTH_MESH
    return PerturbedDatum(
        add_profiles(datum, smooth.sampled(mesh)), smooth.w1inf_norm(), "W1inf"
    )


@dataclass(frozen=True)
class AdversarialDatum:
    datum: StepFunction
    placement: float
    arrival: float
    speed: float


def adversarial_rarefaction(
    datum: StepFunction,
    sp: ScenarioParams,
    p: SystemParams,
    strength: float,
    placement: float | None = None,
) -> AdversarialDatum:
    """Insert a 3-rarefaction left of −a aimed at J_ℓ

    The left tail is moved backwards along the straight 3-curve so that the
    jump at ``placement`` is a 3-rarefaction ending at the original tail.
    The fan, travelling at its mean speed c, meets J_ℓ ≈ −q + ωt at
    (−q − placement)/(c − ω). Without a placement the fan is aimed at
    0.9·t_apex; explicit placements outside [0.8, 1]·t_apex are logged.

    Raises:
        InputError: If placement >= −a, strength is outside [0, ω] or the
            datum has breakpoints left of the placement
    """
    if not 0.0 <= strength <= sp.omega:
        raise InputError(f"strength must lie in [0, ω = {sp.omega}], got {strength}")
    if strength == 0.0:
        return AdversarialDatum(datum, float("nan"), float("nan"), float("nan"))

    U_right = datum.left_tail
    # rarefaction parameter is −orientation·s; its left end lies at +orientation·s
    tau = SHOCK_ORIENTATION[Family.THREE] * strength
    U_left = State.from_array(straight_curve(Family.THREE, tau, U_right.as_array(), p))
    if not U_left.norm() < 1.0:
        raise InputError("Adversarial rarefaction leaves the domain |U| < 1")
    speed = 0.5 * (
        eigenvalue(Family.THREE, U_left, p) + eigenvalue(Family.THREE, U_right, p)
    )

    if placement is None:
        placement = -sp.q - DEFAULT_ARRIVAL * sp.t_apex * (speed - sp.omega)
    if not placement < -sp.a:
        raise InputError(f"placement must lie left of −a = {-sp.a}, got {placement}")
    if datum.breakpoints and not placement < datum.breakpoints[0]:
        raise InputError(
            f"placement {placement} must lie left of the first breakpoint {datum.breakpoints[0]}"
        )

    arrival = (-sp.q - placement) / (speed - sp.omega)
    lo, hi = (bound * sp.t_apex for bound in ARRIVAL_WINDOW)
    if not lo * (1.0 - WINDOW_SLACK) <= arrival <= hi * (1.0 + WINDOW_SLACK):
        get_debug_logger().warning(
            f"Adversarial rarefaction arrives at t={arrival:.6g}, outside "
            f"[{lo:.6g}, {hi:.6g}] around the apex"
        )
    perturbed = StepFunction(
        (float(placement), *datum.breakpoints), (U_left, *datum.values)
    )
    return AdversarialDatum(perturbed, float(placement), float(arrival), float(speed))


@dataclass
class BuiltDatum:
    """A datum plus everything worth echoing in scenario.json"""

    datum: StepFunction
    params: ScenarioParams
    spec: DatumSpec
    notes: dict[str, Any] = field(default_factory=dict)


def _base_datum(
    kind: str, spec: DatumSpec, sp: ScenarioParams, p: SystemParams, notes: dict[str, Any]
) -> StepFunction:
    if kind == "piecewise_Z":
        return build_piecewise_datum(sp, p)
    if kind == "constant":
        return StepFunction.constant(sp.U_I)
    mesh = spec.mesh if spec.mesh is not None else sp.omega / 100.0
    profile = build_compression_profile(sp, p, mesh)
    notes["mesh"] = mesh
    if kind == "compression_V":
        return profile
    radius = spec.radius if spec.radius is not None else 10.0 * mesh
    mollified = mollify_search(profile, radius, sp, mesh, interpolant=True)
    notes["radius"] = mollified.radius
    notes["tv_difference"] = mollified.tv_difference
    return mollified.datum


def build_datum(spec: DatumSpec) -> BuiltDatum:
    """Assemble the datum a DatumSpec describes

    Raises:
        InputError: On any invalid parameter of the spec
    """
    sp = derive_params(spec.eps)
    p = sp.system
    notes: dict[str, Any] = {}
    kind = spec.base if spec.kind == "perturbed" else spec.kind
    datum = _base_datum(kind, spec, sp, p, notes)
    if spec.kind == "perturbed":
        perturbed = perturb(datum, spec)
        datum = perturbed.datum
        notes["perturbation_norm"] = perturbed.norm
        notes["perturbation_kind"] = perturbed.norm_kind
    if spec.adversarial_strength > 0.0:
        adversarial = adversarial_rarefaction(
            datum, sp, p, spec.adversarial_strength, spec.adversarial_placement
        )
        datum = adversarial.datum
        notes["adversarial_placement"] = adversarial.placement
        notes["adversarial_arrival"] = adversarial.arrival
    notes["total_variation"] = datum.total_variation()
    return BuiltDatum(datum, sp, spec, notes)
