"""Hausdorff lift of a finite quasi-uniform space to its nonempty subsets.

Hyper-point i stands for the subset with mask i + 1; reports list witnesses
in that canonical order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import filters
from .relcore import (
    GroundSet,
    QUSpace,
    Relation,
    bits,
    double_closure,
    image_table,
    is_doubly_closed,
    preimage_table,
    t0_classes,
)

DEFAULT_LIFT_CAP = 10
LABEL_CAP = 6


def hyper_pair_in(u: Relation, a_mask: int, b_mask: int) -> bool:
    """Definitional kernel: (A, B) lifted-related iff B inside the forward
    fattening of A and A inside the backward fattening of B."""
    img = u.image(a_mask)
    if b_mask & ~img:
        return False
    pre = u.preimage(b_mask)
    return a_mask & ~pre == 0


def lift_relation(u: Relation, hyper_ground: GroundSet) -> Relation:
    """Materialize the lifted entourage over all nonempty subsets."""
    img = image_table(u)
    pre = preimage_table(u)
    count = hyper_ground.size
    rows = []
    for i in range(count):
        a = i + 1
        img_a = img[a]
        row = 0
        for j in range(count):
            b = j + 1
            if b & ~img_a == 0 and a & ~pre[b] == 0:
                row |= 1 << j
        rows.append(row)
    return Relation(hyper_ground, tuple(rows))


@dataclass(frozen=True)
class HyperSpace:
    base_space: QUSpace
    space: QUSpace

    def subset_of(self, index: int) -> int:
        return index + 1

    def index_of(self, mask: int) -> int:
        if mask == 0:
            raise ValueError("the empty set is not a hyper-point")
        return mask - 1


@lru_cache(maxsize=None)
def lift(space: QUSpace, cap: int = DEFAULT_LIFT_CAP) -> HyperSpace:
    """Lift every base entourage and the min-entourage.

    The min-entourage is lifted explicitly: it belongs to the entourage
    filter, and its lift is the transitive minimum of the lifted base,
    which the plain base lifts need not intersect down to.
    """
    n = space.ground.size
    if n > cap:
        raise ValueError(f"ground set of size {n} exceeds the lift cap {cap}")
    count = (1 << n) - 1
    labels = None
    if n <= LABEL_CAP:
        labels = tuple(space.ground.set_name(m) for m in range(1, count + 1))
    hyper_ground = GroundSet(count, labels)
    base = tuple(lift_relation(u, hyper_ground) for u in space.base_ext)
    lifted = QUSpace.build(hyper_ground, base)
    return HyperSpace(space, lifted)


def hyper_t0_representatives(h: HyperSpace) -> tuple[int, ...]:
    """One doubly closed subset per equivalence class of the lifted space.

    Asserts that each class holds exactly one doubly closed set and that
    every subset is equivalent to its double closure.
    """
    base = h.base_space
    reps: list[int] = []
    for cls in t0_classes(h.space):
        closed = [i + 1 for i in bits(cls) if is_doubly_closed(base, i + 1)]
        if len(closed) != 1:
            raise AssertionError(
                f"class {base.ground.set_name(cls)} holds {len(closed)} doubly closed sets"
            )
        for i in bits(cls):
            if double_closure(base, i + 1) != closed[0]:
                raise AssertionError("subset not equivalent to its double closure")
        reps.append(closed[0])
    return tuple(sorted(reps))


@dataclass(frozen=True)
class KRReport:
    holds: bool
    witness: tuple[int, int] | None
    reformulated_holds: bool
    forms_agree: bool
    lift_bicomplete: bool | None
    matches_lift: bool | None


def kunzi_ryser_check(space: QUSpace, with_lift: bool = True) -> KRReport:
    """Every doubly stable filter eventually sits inside the two-sided
    fattening of its double cluster set; cross-checked against the lifted
    space being bicomplete."""
    holds = True
    witness: tuple[int, int] | None = None
    reformulated = True
    ents = space.base_ext
    for f in filters.all_pfilters(space.ground):
        profile = filters.stability_profile(space, f)
        if not profile.doubly_stable:
            continue
        c = filters.double_cluster_points(space, f)
        for k, u in enumerate(ents):
            target = u.preimage(c) & u.image(c) if c else 0
            if not (c and f.gen & ~target == 0):
                if holds:
                    holds = False
                    witness = (f.gen, k)
            floor = filters.u_sub_f(space.min_entourage, f)
            if not (c and floor & ~target == 0):
                reformulated = False
    lift_bc: bool | None = None
    matches: bool | None = None
    if with_lift and space.ground.size <= DEFAULT_LIFT_CAP:
        lift_bc = filters.is_bicomplete(lift(space).space)
        matches = lift_bc == holds
    return KRReport(holds, witness, reformulated, reformulated == holds, lift_bc, matches)


def finite_cover(rel: Relation) -> int:
    """Greedy set of centers whose forward fattenings cover the ground set."""
    full = rel.ground.full
    covered = 0
    centers = 0
    for x in range(rel.ground.size):
        if not covered >> x & 1:
            centers |= 1 << x
            covered |= rel.rows[x]
        if covered == full:
            break
    if covered != full:
        raise AssertionError("reflexive fattenings failed to cover the ground set")
    return centers


def is_precompact(space: QUSpace) -> bool:
    """Finite cover by forward fattenings for every entourage; the
    min-entourage is the hardest case."""
    try:
        finite_cover(space.min_entourage)
    except AssertionError:
        return False
    return True


def is_totally_bounded(space: QUSpace) -> bool:
    try:
        finite_cover(space.min_entourage.symmetrize())
    except AssertionError:
        return False
    return True
