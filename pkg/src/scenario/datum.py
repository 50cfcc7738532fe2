"""Piecewise-constant and compression initial data"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..bj_system.flux import SystemParams, eigenvalue, genuine_nonlinearity
from ..core.errors import InputError
from ..core.types import Family, State, StepFunction
from ..riemann.wave_curves import SHOCK_ORIENTATION, shock_state, straight_curve
from ..utils.logger import get_debug_logger
from .params import ScenarioParams

SHOCK_ORDER = (Family.ONE, Family.TWO, Family.THREE)
# left to right inside a compression block: fastest family first
RAMP_ORDER = (Family.THREE, Family.TWO, Family.ONE)
MAX_RADIUS_HALVINGS = 40
BUMP_SAMPLES = 2001


def _check_system(sp: ScenarioParams, p: SystemParams) -> None:
    if p.eta != sp.eta:
        raise InputError(f"System eta {p.eta} does not match scenario eta {sp.eta}")


def shock_triple(U: State, strength: float, p: SystemParams) -> State:
    """S₃[s, S₂[s, S₁[s, U]]]"""
    for family in SHOCK_ORDER:
        U = shock_state(family, strength, U, p)
    return U


def build_piecewise_datum(sp: ScenarioParams, p: SystemParams) -> StepFunction:
    """Z = U_I for x < −q, U_II on (−q, q), U_III for x > q"""
    _check_system(sp, p)
    U_II = shock_triple(sp.U_I, sp.omega, p)
    U_III = shock_triple(U_II, sp.omega, p)
    return StepFunction((-sp.q, sp.q), (sp.U_I, U_II, U_III))


@dataclass(frozen=True)
class Ramp:
    """A compression ramp of one family focusing at (x_focus, 1)"""

    family: Family
    x_start: float
    width: float
    states: tuple[State, ...]


def _ramp_width(family: Family, strength: float, p: SystemParams) -> float:
    """Eigenvalue drop across the ramp, equal to its width at slope −1"""
    gn = genuine_nonlinearity(p)[family - 1]
    return abs(gn) * strength


def _ramp_states(
    family: Family, strength: float, U: State, n: int, p: SystemParams
) -> list[State]:
    states = [U]
    if family is Family.TWO:
        for _ in range(n):
            states.append(shock_state(Family.TWO, strength / n, states[-1], p))
        return states
    um = U.as_array()
    tau = SHOCK_ORIENTATION[family] * strength
    for k in range(1, n + 1):
        states.append(State.from_array(straight_curve(family, tau * k / n, um, p)))
    return states


def compression_block(
    U: State, x_focus: float, strength: float, mesh: float, p: SystemParams
) -> tuple[list[Ramp], State]:
    """3-, 2-, 1-compression ramps, left to right, all focusing at (x_focus, 1)

    Along a ramp the family's eigenvalue falls linearly with slope −1, so
    a ramp centred at x_c with central speed λ_c focuses at x_c + λ_c.
    """
    ramps = []
    for family in RAMP_ORDER:
        width = _ramp_width(family, strength, p)
        n = max(1, math.ceil(width / mesh))
        states = _ramp_states(family, strength, U, n, p)
        if any(s.norm() >= 1.0 for s in states):
            raise InputError(f"{family.label}-compression ramp leaves |U| < 1")
        lam_center = 0.5 * (
            eigenvalue(family, states[0], p) + eigenvalue(family, states[-1], p)
        )
        x_center = x_focus - lam_center
        ramps.append(Ramp(family, x_center - 0.5 * width, width, tuple(states)))
        U = states[-1]
    return ramps, U


def ramp_pieces(ramp: Ramp) -> tuple[list[float], list[State]]:
    """Breakpoints at the cell edges of a ramp and the state right of each"""
    n = len(ramp.states) - 1
    cell = ramp.width / n
    points = [ramp.x_start + (k - 0.5) * cell for k in range(1, n + 1)]
    return points, list(ramp.states[1:])


def build_compression_profile(
    sp: ScenarioParams, p: SystemParams, mesh: float
) -> StepFunction:
    """Sampled Lipschitz datum V whose ramps collapse into Z's shocks at t = 1

    Raises:
        InputError: If mesh > ω/100 or a ramp leaves |U| < 1
    """
    _check_system(sp, p)
    if not 0.0 < mesh <= sp.omega / 100.0:
        raise InputError(f"mesh must lie in (0, ω/100 = {sp.omega / 100.0}], got {mesh}")
    breakpoints: list[float] = []
    values: list[State] = [sp.U_I]
    U = sp.U_I
    for x_focus in (-sp.q, sp.q):
        ramps, U = compression_block(U, x_focus, sp.omega, mesh, p)
        for ramp in ramps:
            points, states = ramp_pieces(ramp)
            breakpoints.extend(points)
            values.extend(states)
    return StepFunction.from_pieces(breakpoints, values)


def _bump_cdf() -> tuple[np.ndarray, np.ndarray]:
    """CDF of the normalized bump exp(−1/(1 − s²)) on (−1, 1)"""
    s = np.linspace(-1.0, 1.0, BUMP_SAMPLES)
    inner = s[1:-1]
    density = np.zeros_like(s)
    density[1:-1] = np.exp(-1.0 / (1.0 - inner * inner))
    cdf = cumulative_trapezoid(density, s, initial=0.0)
    return s, cdf / cdf[-1]


def evaluate(profile: StepFunction, xs: np.ndarray) -> np.ndarray:
    """Right-continuous values at many positions, one row per position"""
    values = np.array([state.to_list() for state in profile.values])
    index = np.searchsorted(np.asarray(profile.breakpoints, dtype=float), xs, side="right")
    return values[index]


def difference_tv(first: StepFunction, second: StepFunction) -> float:
    """TV of first − second over the merged breakpoints"""
    points = np.union1d(first.breakpoints, second.breakpoints)
    if points.size == 0:
        return 0.0
    samples = np.concatenate(
        ([points[0] - 1.0], 0.5 * (points[1:] + points[:-1]), [points[-1] + 1.0])
    )
    diffs = evaluate(first, samples) - evaluate(second, samples)
    return float(np.linalg.norm(np.diff(diffs, axis=0), axis=1).sum())


def _profile_mesh(profile: StepFunction) -> float:
    gaps = np.diff(profile.breakpoints)
    return float(gaps.min()) if gaps.size else 1.0


def convolve(profile: StepFunction, radius: float, mesh: float) -> StepFunction:
    """Bump convolution sampled at cell midpoints around each breakpoint

    Cells of width ``mesh`` are laid out from every breakpoint across the
    bump support; away from the breakpoints the profile is unchanged.
    """
    s, cdf = _bump_cdf()
    jumps = profile.jumps()
    if not jumps:
        return profile
    reach = math.ceil(radius / mesh) + 1
    edges = set(profile.breakpoints)
    for x, _, _ in jumps:
        edges.update(x + j * mesh for j in range(-reach, reach + 1))
    grid = np.array(sorted(edges))
    mids = 0.5 * (grid[1:] + grid[:-1])

    smoothed = evaluate(profile, mids)
    for x, left, right in jumps:
        # correction relative to the sharp jump, zero outside the bump support
        correction = np.interp((mids - x) / radius, s, cdf) - (mids >= x)
        touched = correction != 0.0
        smoothed[touched] += np.outer(
            correction[touched], right.as_array() - left.as_array()
        )
    values = [profile.left_tail]
    values.extend(State.from_array(row) for row in smoothed)
    values.append(profile.right_tail)
    return StepFunction.from_pieces(list(grid), values)


def interpolant_nodes(profile: StepFunction) -> tuple[np.ndarray, np.ndarray]:
    """Nodes of the piecewise-linear interpolant through the cell centres

    Each tail contributes a node half a neighbouring cell beyond the outer
    breakpoint. Values are returned one row per node.

    Raises:
        InputError: If the profile has fewer than two breakpoints
    """
    points = np.asarray(profile.breakpoints, dtype=float)
    if points.size < 2:
        raise InputError("The interpolant needs a profile with at least two breakpoints")
    first = points[0] - 0.5 * (points[1] - points[0])
    last = points[-1] + 0.5 * (points[-1] - points[-2])
    xs = np.concatenate(([first], 0.5 * (points[1:] + points[:-1]), [last]))
    values = np.array([state.to_list() for state in profile.values])
    return xs, values


def convolve_interpolant(profile: StepFunction, radius: float) -> StepFunction:
    """Bump convolution of the piecewise-linear interpolant at the cell centres

    The breakpoints and tails are kept. Where the interpolant is linear
    across the bump support the cell value is unchanged, so only cells
    within ``radius`` of a kink move.
    """
    xs, values = interpolant_nodes(profile)
    s, cdf = _bump_cdf()
    offsets = 0.5 * (s[1:] + s[:-1])
    weights = np.diff(cdf)
    shifted = xs[1:-1, None] - radius * offsets[None, :]
    smoothed = np.stack(
        [np.interp(shifted, xs, values[:, c]) @ weights for c in range(values.shape[1])],
        axis=1,
    )
    states = [profile.left_tail]
    states.extend(State.from_array(row) for row in smoothed)
    states.append(profile.right_tail)
    return StepFunction.from_pieces(list(profile.breakpoints), states)


@dataclass(frozen=True)
class Mollified:
    datum: StepFunction
    radius: float
    tv_difference: float
    attempts: int


def mollify_search(
    profile: StepFunction,
    radius: float,
    sp: ScenarioParams,
    mesh: float | None = None,
    interpolant: bool = False,
) -> Mollified:
    """Shrink the radius by halves until TV(result − profile) < r

    With ``interpolant`` the profile is read as samples of a Lipschitz
    function and its piecewise-linear interpolant is smoothed; otherwise
    every breakpoint is smoothed as a sharp jump.

    Raises:
        InputError: If radius <= 0 or no radius within 40 halvings works
    """
    if not radius > 0.0:
        raise InputError(f"radius must be positive, got {radius}")
    mesh = _profile_mesh(profile) if mesh is None else mesh
    logger = get_debug_logger()
    current = radius
    for attempt in range(1, MAX_RADIUS_HALVINGS + 1):
        if interpolant:
            result = convolve_interpolant(profile, current)
        else:
            result = convolve(profile, current, mesh)
        tv = difference_tv(result, profile)
        if tv < sp.r:
            logger.debug(
                f"Mollifier radius {current:.3e} accepted after {attempt} attempts "
                f"(TV difference {tv:.3e})"
            )
            if tv == 0.0:
                logger.warning(
                    f"Mollifier radius {current:.3e} leaves the profile unchanged"
                )
            return Mollified(result, current, tv, attempt)
        current *= 0.5
    raise InputError(
        f"TV(mollified − profile) stays >= r = {sp.r:.3e} down to radius {current * 2:.3e}"
    )


def mollify(
    profile: StepFunction,
    radius: float,
    sp: ScenarioParams,
    mesh: float | None = None,
    interpolant: bool = False,
) -> StepFunction:
    """Smoothed profile Ũ with TV(Ũ − profile) < r"""
    return mollify_search(profile, radius, sp, mesh, interpolant).datum
