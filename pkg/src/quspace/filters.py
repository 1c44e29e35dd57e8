"""Filters on finite quasi-uniform spaces and their stability notions.

Every filter on a finite set is principal, so a filter is carried by its
generating nonempty point set.  Universal quantification over the entourage
filter reduces to the single check at the min-entourage: each predicate
below is antitone in the entourage, and the generated filter has that
minimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .relcore import (
    GroundSet,
    QUSpace,
    Relation,
    bits,
    closure,
    double_closure,
    t0_classes,
)


@dataclass(frozen=True)
class PFilter:
    """Principal filter: the sets containing gen."""

    ground: GroundSet
    gen: int

    def __post_init__(self) -> None:
        if self.gen == 0:
            raise ValueError("a filter generator must be nonempty")
        if self.gen & ~self.ground.full:
            raise ValueError("generator has bits outside the ground set")

    def contains(self, mask: int) -> bool:
        return mask & self.gen == self.gen

    def is_finer_than(self, other: "PFilter") -> bool:
        """Finer = contains every member of the other filter."""
        return other.gen & self.gen == self.gen


def principal(space_or_ground: QUSpace | GroundSet, mask: int) -> PFilter:
    ground = space_or_ground.ground if isinstance(space_or_ground, QUSpace) else space_or_ground
    return PFilter(ground, mask)


def all_pfilters(ground: GroundSet) -> Iterator[PFilter]:
    for gen in range(1, ground.full + 1):
        yield PFilter(ground, gen)


@dataclass(frozen=True)
class StabilityProfile:
    stable: bool
    conj_stable: bool
    doubly_stable: bool
    s_stable: bool
    s_cauchy: bool

    def __post_init__(self) -> None:
        assert self.doubly_stable == (self.stable and self.conj_stable)
        assert not self.s_cauchy or self.s_stable
        assert not self.s_stable or self.doubly_stable


def u_sub_f(u: Relation, f: PFilter) -> int:
    """The set U^{-1}(F) intersect U(F), taken at the filter's floor F = gen."""
    if u.ground != f.ground:
        raise ValueError("relation and filter live on different ground sets")
    return u.preimage(f.gen) & u.image(f.gen)


def stability_profile(space: QUSpace, f: PFilter) -> StabilityProfile:
    m = space.min_entourage
    stable = f.contains(m.image(f.gen))
    conj_stable = f.contains(m.preimage(f.gen))
    ms = m.symmetrize()
    s_stable = f.contains(ms.image(f.gen))
    s_cauchy = all(ms.rows[x] & f.gen == f.gen for x in bits(f.gen))
    return StabilityProfile(
        stable=stable,
        conj_stable=conj_stable,
        doubly_stable=stable and conj_stable,
        s_stable=s_stable,
        s_cauchy=s_cauchy,
    )


def two_envelope(space: QUSpace, f: PFilter) -> PFilter:
    """Coarsest filter generated by the two-sided fattenings of the members.

    The generating family {U^{-1}(F) & U(F)} bottoms out at F = gen and
    U = min-entourage, so the result is principal on the double closure of
    the generator.
    """
    m = space.min_entourage
    return PFilter(f.ground, m.preimage(f.gen) & m.image(f.gen))


def is_two_round(space: QUSpace, f: PFilter) -> bool:
    return two_envelope(space, f).gen == f.gen


def f_sub_u(space: QUSpace, f: PFilter) -> PFilter:
    """Filter generated by {U_F : U entourage}.

    The min-entourage belongs to the entourage filter, so it participates in
    the intersection; without it the fold over the base alone could stay
    strictly above the floor.
    """
    acc = f.ground.full
    for u in space.base_ext:
        acc &= u_sub_f(u, f)
    return PFilter(f.ground, acc)


def cluster_points(space: QUSpace, f: PFilter, direction: Literal["forward", "conjugate"]) -> int:
    """Adherence of the filter: closure of the generator."""
    return closure(space, f.gen, direction)


def double_cluster_points(space: QUSpace, f: PFilter) -> int:
    return double_closure(space, f.gen)


def limit_points(
    space: QUSpace,
    f: PFilter,
    topology: Literal["forward", "conjugate", "symmetric"] = "forward",
) -> int:
    """All points whose minimal neighborhood belongs to the filter.

    Non-T0 spaces can yield several limits; all are reported.
    """
    m = space.min_entourage
    if topology == "forward":
        nbhd = m.rows
    elif topology == "conjugate":
        nbhd = m.inverse().rows
    elif topology == "symmetric":
        nbhd = m.symmetrize().rows
    else:
        raise ValueError(f"unknown topology {topology!r}")
    out = 0
    for x in range(space.ground.size):
        if f.contains(nbhd[x]):
            out |= 1 << x
    return out


def is_cauchy_pair(space: QUSpace, f: PFilter, g: PFilter) -> bool:
    """Some member box F x G fits inside every entourage."""
    m = space.min_entourage
    return all(m.rows[x] & g.gen == g.gen for x in bits(f.gen))


def is_generalized_cauchy_pair(space: QUSpace, f: PFilter, g: PFilter) -> bool:
    """Pair lies in every stability entourage (decided at the minimum)."""
    from .stability import pair_in_u_d

    return pair_in_u_d(space.min_entourage, f, g)


def s_cauchy_filters(space: QUSpace) -> Iterator[PFilter]:
    """All principal filters whose generator box fits in the symmetrized
    min-entourage, i.e. sits inside one equivalence class."""
    for cls in t0_classes(space):
        sub = cls
        while sub:
            yield PFilter(space.ground, sub)
            sub = (sub - 1) & cls


def is_bicomplete(space: QUSpace, exhaustive: bool = False) -> bool:
    """Every symmetrized-Cauchy filter converges in the symmetrized topology.

    A Cauchy generator sits inside a single class of the symmetrized
    min-entourage, and convergence of the whole class dominates convergence
    of its subsets, so checking one generator per class is complete.  The
    exhaustive path sweeps every Cauchy filter and exists to validate the
    reduction on small spaces.
    """
    if exhaustive:
        return all(
            limit_points(space, f, "symmetric") != 0 for f in s_cauchy_filters(space)
        )
    ms = space.min_entourage.symmetrize()
    for cls in t0_classes(space):
        if not any(ms.rows[x] & cls == cls for x in range(space.ground.size)):
            return False
    return True


def is_half_complete(space: QUSpace, exhaustive: bool = False) -> bool:
    """Every symmetrized-Cauchy filter converges in the forward topology."""
    if exhaustive:
        return all(
            limit_points(space, f, "forward") != 0 for f in s_cauchy_filters(space)
        )
    m = space.min_entourage
    for cls in t0_classes(space):
        if not any(m.rows[x] & cls == cls for x in range(space.ground.size)):
            return False
    return True


def traces_on(f: PFilter, mask: int) -> bool:
    """The filter traces on a set iff every member meets it; principal
    filters reduce this to the generator."""
    return f.gen & mask != 0


def generated_on(space: QUSpace, sub_gen: int, kept: tuple[int, ...]) -> PFilter:
    """Filter on the ambient space generated by a subspace filter base."""
    from .relcore import expand_mask

    return PFilter(space.ground, expand_mask(sub_gen, kept))
