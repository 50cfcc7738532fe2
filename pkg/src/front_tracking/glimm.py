"""Glimm functional over a front list"""

from collections.abc import Sequence

from ..core.types import Family, Front, GlimmSample, WaveKind


def approaching(left: Front, right: Front) -> bool:
    """Whether two fronts, ``left`` lying to the left, may still interact

    A faster family on the left approaches; within a family only two
    rarefaction fronts diverge. Non-physical fronts outrun every physical
    front, so they approach all physical fronts on their right and none
    of each other.
    """
    if left.family != right.family:
        return left.family > right.family
    if left.family is Family.NONPHYSICAL:
        return False
    return not (left.kind is WaveKind.RAREFACTION and right.kind is WaveKind.RAREFACTION)


def glimm_functional(fronts: Sequence[Front], coupling: float) -> GlimmSample:
    """V = Σ strengths, Q = Σ over approaching pairs of strength products

    Non-physical fronts count in V and in Q, paired with every physical
    front to their right.

    ``fronts`` must be ordered left to right. Runs in one pass with per
    family running sums.
    """
    total_by_family = dict.fromkeys(Family, 0.0)
    shocks_by_family = dict.fromkeys(Family, 0.0)
    V = 0.0
    Q = 0.0
    for front in fronts:
        s = front.strength
        faster_on_left = sum(
            total_by_family[f] for f in Family if f > front.family
        )
        Q += s * faster_on_left
        if front.family is not Family.NONPHYSICAL:
            if front.kind is WaveKind.RAREFACTION:
                Q += s * shocks_by_family[front.family]
            else:
                Q += s * total_by_family[front.family]
        total_by_family[front.family] += s
        if front.kind is not WaveKind.RAREFACTION:
            shocks_by_family[front.family] += s
        V += s
    return GlimmSample(total_strength=V, interaction_potential=Q, coupling=coupling)
