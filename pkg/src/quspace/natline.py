"""Exact symbolic engine on the positive integers.

The space carries the entourage base generated by the usual order together
with the puncture relations T_x = ({x} x N) u (N x (N \\ {x})); the sets in
play are finite or cofinite, which the CofSet algebra keeps exact.  Closed
forms for images and preimages are derived below and validated against
boolean-matrix truncations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import filters as flt
from . import hyperspace as hyp
from .relcore import QUSpace, bits


# -- finite-or-cofinite sets ---------------------------------------------------


@dataclass(frozen=True)
class CofSet:
    """Finite or cofinite subset of the positive integers.

    elems is the set itself when finite, the complement when cofinite.
    """

    cofinite: bool
    elems: frozenset[int]

    def __post_init__(self) -> None:
        if any(e < 1 for e in self.elems):
            raise ValueError("elements must be positive integers")

    # -- constructors

    @staticmethod
    def finite(items: Iterable[int]) -> "CofSet":
        return CofSet(False, frozenset(items))

    @staticmethod
    def cofinite_without(items: Iterable[int]) -> "CofSet":
        return CofSet(True, frozenset(items))

    @staticmethod
    def from_lower_bound(m: int) -> "CofSet":
        """The tail {m, m+1, ...}."""
        return CofSet(True, frozenset(range(1, m)))

    @staticmethod
    def initial_segment(m: int) -> "CofSet":
        """{1, ..., m}; empty when m < 1."""
        return CofSet(False, frozenset(range(1, m + 1)))

    # -- queries

    def __contains__(self, x: int) -> bool:
        return (x in self.elems) != self.cofinite

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.elems

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def min_element(self) -> int | None:
        if self.cofinite:
            m = 1
            while m in self.elems:
                m += 1
            return m
        return min(self.elems) if self.elems else None

    def max_element(self) -> int | None:
        """Largest element of a finite set; None when infinite or empty."""
        if self.cofinite:
            return None
        return max(self.elems) if self.elems else None

    def truncate(self, n: int) -> frozenset[int]:
        return frozenset(x for x in range(1, n + 1) if x in self)

    # -- algebra

    def complement(self) -> "CofSet":
        return CofSet(not self.cofinite, self.elems)

    def union(self, other: "CofSet") -> "CofSet":
        if self.cofinite and other.cofinite:
            return CofSet(True, self.elems & other.elems)
        if self.cofinite:
            return CofSet(True, self.elems - other.elems)
        if other.cofinite:
            return CofSet(True, other.elems - self.elems)
        return CofSet(False, self.elems | other.elems)

    def intersection(self, other: "CofSet") -> "CofSet":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "CofSet") -> "CofSet":
        return self.intersection(other.complement())

    def is_subset(self, other: "CofSet") -> bool:
        return self.difference(other).is_empty

    def __or__(self, other: "CofSet") -> "CofSet":
        return self.union(other)

    def __and__(self, other: "CofSet") -> "CofSet":
        return self.intersection(other)

    def __sub__(self, other: "CofSet") -> "CofSet":
        return self.difference(other)


NATS = CofSet.cofinite_without(())
EMPTY = CofSet.finite(())


# -- symbolic entourages -------------------------------------------------------


@dataclass(frozen=True)
class SymEntourage:
    """Intersection of the order relation (optional) with finitely many
    puncture relations; always reflexive, and closed under pairwise
    intersection."""

    with_leq: bool
    punctures: frozenset[int]

    def __post_init__(self) -> None:
        if any(x < 1 for x in self.punctures):
            raise ValueError("punctures must be positive integers")

    def contains_pair(self, x: int, y: int) -> bool:
        if self.with_leq and y < x:
            return False
        return y not in self.punctures or x == y

    def intersection(self, other: "SymEntourage") -> "SymEntourage":
        return SymEntourage(
            self.with_leq or other.with_leq, self.punctures | other.punctures
        )

    def image(self, a: CofSet) -> CofSet:
        """E(a).

        Row at y is base(y) minus the punctures other than y itself, where
        base(y) is the upper tail at y when the order participates.  A
        punctured column z survives only from the row y = z, so the image is
        (tail at min a, minus punctures) plus the punctured points of a.
        """
        if a.is_empty:
            raise ValueError("image of the empty set is not defined here")
        s = CofSet.finite(self.punctures)
        if self.with_leq:
            base = CofSet.from_lower_bound(a.min_element())
        else:
            base = NATS
        return base.difference(s).union(a.intersection(s))

    def preimage(self, a: CofSet) -> CofSet:
        """E^{-1}(a).

        A point z reaches a iff some w in a has w >= z and w unpunctured,
        or z itself lies in a.  With an infinite unpunctured part every z
        qualifies; with none only a itself does.
        """
        if a.is_empty:
            raise ValueError("preimage of the empty set is not defined here")
        s = CofSet.finite(self.punctures)
        reachable = a.difference(s)
        if not self.with_leq:
            return NATS if not reachable.is_empty else a
        if reachable.cofinite:
            return NATS
        top = reachable.max_element()
        if top is None:
            return a
        return CofSet.initial_segment(top).union(a)


LEQ = SymEntourage(True, frozenset())


def base_entourages(bound_s: int, max_size: int | None = None) -> Iterable[SymEntourage]:
    """All base entourages with punctures inside the sweep bound."""
    pool = list(range(1, bound_s + 1))
    for mask in range(1 << len(pool)):
        punct = frozenset(pool[i] for i in bits(mask)) if mask else frozenset()
        if max_size is not None and len(punct) > max_size:
            continue
        yield SymEntourage(True, punct)
        yield SymEntourage(False, punct)


# -- the filter catalogue -------------------------------------------------------


@dataclass(frozen=True)
class SymFilter:
    """Closed catalogue: the distinguished filter anchored at 1, the
    cofinite filter, and principal filters."""

    kind: str  # "gfilter" | "cofinite" | "principal"
    base: CofSet | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("gfilter", "cofinite", "principal"):
            raise ValueError(f"unknown filter kind {self.kind!r}")
        if self.kind == "principal":
            if self.base is None or self.base.is_empty:
                raise ValueError("principal filter needs a nonempty base set")
        elif self.base is not None:
            raise ValueError(f"{self.kind} filter takes no base set")

    def contains(self, a: CofSet) -> bool:
        if self.kind == "gfilter":
            return a.cofinite and 1 in a
        if self.kind == "cofinite":
            return a.cofinite
        return self.base.is_subset(a)

    def members_intersection(self) -> CofSet:
        if self.kind == "gfilter":
            return CofSet.finite((1,))
        if self.kind == "cofinite":
            return EMPTY
        return self.base


GFILTER = SymFilter("gfilter")
COFINITE_FILTER = SymFilter("cofinite")


def sym_u_sub_f(e: SymEntourage, f: SymFilter) -> CofSet:
    """The floor set: intersection over members of preimage(F) & image(F).

    Both maps are monotone in F, so the infimum is taken along a descending
    base.  The distinguished filter's base {1} u G' reaches it once G'
    avoids every puncture: preimages are all of N (each member escapes the
    finite puncture set), and the images shrink to the unpunctured part
    plus the anchor.  For the cofinite filter the ordered images have
    unbounded minima and the intersection dies; without the order it
    stabilizes at the unpunctured part.
    """
    s = CofSet.finite(e.punctures)
    if f.kind == "principal":
        return e.preimage(f.base).intersection(e.image(f.base))
    if f.kind == "gfilter":
        anchor = CofSet.finite((1,))
        return NATS.difference(s).union(anchor.intersection(s))
    if e.with_leq:
        return EMPTY
    return NATS.difference(s)


def sym_cluster_points(f: SymFilter, direction: str) -> CofSet:
    """Adherence with respect to the full entourage family, decided per
    point.

    Forward: the fattening of a point is always cofinite, so it meets every
    infinite member; against finite members only membership survives once a
    puncture isolates the rest.  Conjugate: the puncture at the probe point
    shrinks its backward fattening to the point itself, so only the
    intersection of all members survives.
    """
    if direction == "conjugate":
        return f.members_intersection()
    if direction != "forward":
        raise ValueError(f"unknown direction {direction!r}")
    if f.kind in ("gfilter", "cofinite"):
        return NATS
    base = f.base
    if base.cofinite:
        return NATS
    return base


def sym_double_cluster_points(f: SymFilter) -> CofSet:
    return sym_cluster_points(f, "forward").intersection(
        sym_cluster_points(f, "conjugate")
    )


def sym_stable_floor(e: SymEntourage, f: SymFilter) -> CofSet:
    """One-sided floor: intersection over the members of their images.

    Principal filters bottom out at the base set.  The distinguished
    filter's images shrink to the unpunctured part plus the anchor.  The
    cofinite filter's ordered images have unbounded minima, so their
    intersection dies; without the order it stabilizes at the unpunctured
    part.
    """
    s = CofSet.finite(e.punctures)
    if f.kind == "principal":
        return e.image(f.base)
    if f.kind == "gfilter":
        return NATS.difference(s).union(CofSet.finite((1,)).intersection(s))
    return EMPTY if e.with_leq else NATS.difference(s)


def sym_is_stable(f: SymFilter, bound_s: int) -> tuple[bool, SymEntourage | None]:
    """Stability swept over the bounded base; a failure needs one witness
    entourage and is conclusive."""
    for e in base_entourages(bound_s):
        if not f.contains(sym_stable_floor(e, f)):
            return False, e
    return True, None


# -- truncation oracle ----------------------------------------------------------


class Truncation:
    """Boolean-matrix model of an entourage on {1..n}, rows as bit masks
    with bit k standing for the integer k + 1."""

    def __init__(self, e: SymEntourage, n: int):
        self.n = n
        rows = []
        for x in range(1, n + 1):
            row = 0
            for y in range(1, n + 1):
                if e.contains_pair(x, y):
                    row |= 1 << (y - 1)
            rows.append(row)
        self.rows = rows

    def to_mask(self, items: Iterable[int]) -> int:
        out = 0
        for x in items:
            if 1 <= x <= self.n:
                out |= 1 << (x - 1)
        return out

    def image(self, mask: int) -> int:
        acc = 0
        for i in bits(mask):
            acc |= self.rows[i]
        return acc

    def preimage(self, mask: int) -> int:
        acc = 0
        for i, row in enumerate(self.rows):
            if row & mask:
                acc |= 1 << i
        return acc


def truncation_agrees(
    e: SymEntourage, a: CofSet, n: int, margin: int = 1
) -> bool:
    """Closed forms against the matrix model, compared away from the top
    stripe where the truncated order diverges from the real one."""
    t = Truncation(e, n)
    window = t.to_mask(range(1, n - margin + 1))
    mask_a = t.to_mask(a.truncate(n))
    if mask_a == 0:
        return True
    img_sym = t.to_mask(e.image(a).truncate(n))
    pre_sym = t.to_mask(e.preimage(a).truncate(n))
    return (
        t.image(mask_a) & window == img_sym & window
        and t.preimage(mask_a) & window == pre_sym & window
    )


def floor_truncation_agrees(
    e: SymEntourage, f: SymFilter, n: int, margin: int = 1
) -> bool:
    """Floor-set closed form against the matrix model.

    The infimum over the filter base is emulated with a faithful family of
    truncated members: anchored tails for the distinguished filter, plain
    tails for the cofinite filter, the base set itself for principal ones.
    Tails are cofinal in the base, so the emulated infimum is exact once
    the tail start clears the punctures; the caller keeps n comfortably
    above the puncture bound.
    """
    t = Truncation(e, n)
    window = t.to_mask(range(1, n - margin + 1))
    if f.kind == "principal":
        members = [t.to_mask(f.base.truncate(n))]
        if members[0] == 0:
            return True
    else:
        anchor = t.to_mask((1,)) if f.kind == "gfilter" else 0
        members = [
            anchor | t.to_mask(range(k, n - margin + 1))
            for k in range(2, n - margin + 1)
        ]
    floor = (1 << n) - 1
    for m in members:
        floor &= t.image(m) & t.preimage(m)
    sym = t.to_mask(sym_u_sub_f(e, f).truncate(n))
    return floor & window == sym & window


# -- reports ---------------------------------------------------------------------


@dataclass
class ContraReport:
    ok: bool
    clauses: tuple[tuple[str, bool], ...]
    bounds: dict
    witnesses: tuple[str, ...] = ()


def verify_contra(bound_s: int, bound_n: int, oracle_samples: int = 20, seed: int = 1) -> ContraReport:
    """Certify the behaviour of the distinguished filter on the punctured
    ordered line, sweeping base entourages with punctures inside the bound.

    Clauses: the filter is doubly stable; its double cluster set is the
    anchor alone (the conjugate topology isolates every point); the order
    entourage violates the cluster-set containment required for lifted
    bicompleteness; the residue filter past the anchor is the cofinite
    filter; and every stable filter in the catalogue has a nonempty
    intersection.
    """
    if bound_s < 3:
        raise ValueError("puncture bound too small to exercise the construction")
    if bound_n < 4 * bound_s:
        raise ValueError("truncation bound must be at least four times the puncture bound")

    witnesses: list[str] = []

    doubly_stable = True
    for e in base_entourages(bound_s):
        floor = sym_u_sub_f(e, GFILTER)
        if not GFILTER.contains(floor):
            doubly_stable = False
            witnesses.append(f"floor escapes the filter at punctures {sorted(e.punctures)}")
            break

    inter = GFILTER.members_intersection()
    anchor = CofSet.finite((1,))
    c_set = sym_double_cluster_points(GFILTER)
    cluster_ok = inter == anchor and c_set == anchor
    discrete_ok = all(
        SymEntourage(True, frozenset((x,))).preimage(CofSet.finite((x,)))
        == CofSet.finite((x,))
        for x in range(2, bound_s + 1)
    )

    back = LEQ.preimage(c_set)
    kr_fails = back == anchor and not GFILTER.contains(anchor)
    if not kr_fails:
        witnesses.append("order entourage failed to refute the containment")

    # residue filter: members are exactly the supersets of G \ {1};
    # adding the anchor back recovers membership in the source filter
    residue_matches = True
    probes = [
        CofSet.cofinite_without(()),
        CofSet.cofinite_without((1,)),
        CofSet.cofinite_without((2, 5)),
        CofSet.cofinite_without(range(1, bound_s + 1)),
        CofSet.finite((1, 2, 3)),
        CofSet.finite(range(1, bound_n, 2)),
        EMPTY,
    ]
    for a in probes:
        in_residue = GFILTER.contains(a.union(anchor))
        if in_residue != COFINITE_FILTER.contains(a):
            residue_matches = False
            witnesses.append("residue filter and cofinite filter disagree on a probe")

    catalogue = [
        GFILTER,
        COFINITE_FILTER,
        SymFilter("principal", anchor),
        SymFilter("principal", CofSet.finite((2, 7))),
        SymFilter("principal", CofSet.cofinite_without((1, 4))),
        SymFilter("principal", NATS),
    ]
    stable_nonempty = True
    for f in catalogue:
        stable, _ = sym_is_stable(f, bound_s)
        if stable and f.members_intersection().is_empty:
            stable_nonempty = False
            witnesses.append(f"stable catalogue filter {f.kind} has empty intersection")

    import random

    rng = random.Random(seed)
    oracle_ok = True
    test_sets = [
        anchor,
        CofSet.finite((1, 2, 3)),
        CofSet.finite((5,)),
        CofSet.cofinite_without(()),
        CofSet.cofinite_without((1, 3)),
        CofSet.cofinite_without(range(2, bound_s + 1)),
    ]
    sampled = []
    for _ in range(oracle_samples):
        size = rng.randint(0, bound_s)
        punct = frozenset(rng.sample(range(1, bound_s + 1), size))
        sampled.append(SymEntourage(rng.random() < 0.5, punct))
    for e in sampled:
        for a in test_sets:
            if not truncation_agrees(e, a, bound_n):
                oracle_ok = False
                witnesses.append(f"image oracle mismatch at punctures {sorted(e.punctures)}")
        if not floor_truncation_agrees(e, GFILTER, bound_n):
            oracle_ok = False
            witnesses.append(f"floor oracle mismatch at punctures {sorted(e.punctures)}")

    clauses = (
        ("distinguished filter doubly stable", doubly_stable),
        ("double cluster set is the anchor", cluster_ok and discrete_ok),
        ("cluster-set containment violated at the order", kr_fails),
        ("residue filter equals the cofinite filter", residue_matches),
        ("stable catalogue filters have nonempty intersection", stable_nonempty),
        ("closed forms match the truncation oracle", oracle_ok),
    )
    ok = all(v for _, v in clauses)
    bounds = {
        "bound_s": bound_s,
        "bound_n": bound_n,
        "oracle_samples": oracle_samples,
        "certified": "base entourages with punctures inside bound_s",
    }
    return ContraReport(ok, clauses, bounds, tuple(witnesses))


def gfilter_symmetrized_facts() -> tuple[bool, bool]:
    """At the plain order entourage the symmetrization is equality, so
    symmetrized stability would force the member intersection into the
    filter, and a symmetrized limit would put a singleton there; both fail.

    Returns (is_symmetrized_stable, has_symmetrized_limit).
    """
    inter = GFILTER.members_intersection()
    s_stable = GFILTER.contains(inter)
    has_limit = any(
        GFILTER.contains(CofSet.finite((x,))) for x in range(1, 50)
    )
    return s_stable, has_limit


@dataclass
class BeiReport:
    ok: bool
    entourage_index: int
    clauses: tuple[tuple[str, bool], ...]


def verify_bei(space: QUSpace) -> BeiReport:
    """Certify the isolated-point criterion on a finite space.

    Needs a base entourage whose fattening or backward fattening of every
    point is that point alone; then every filter's floor at it equals the
    double cluster set, which belongs to the filter, and the lifted space is
    bicomplete.
    """
    chosen = None
    bad_point = None
    for k, v in enumerate(space.base_ext):
        ok = True
        inv = v.inverse()
        for x in range(space.ground.size):
            if v.rows[x] != 1 << x and inv.rows[x] != 1 << x:
                ok = False
                bad_point = x
                break
        if ok:
            chosen = k
            break
    if chosen is None:
        name = space.ground.name(bad_point) if bad_point is not None else "?"
        raise ValueError(
            f"no base entourage isolates every point; last candidate fails at point {name}"
        )
    v = space.base_ext[chosen]
    floors_ok = True
    member_ok = True
    for f in flt.all_pfilters(space.ground):
        if not flt.stability_profile(space, f).doubly_stable:
            continue
        floor = flt.u_sub_f(v, f)
        c = flt.double_cluster_points(space, f)
        if floor != c:
            floors_ok = False
        if not f.contains(c):
            member_ok = False
    kr = hyp.kunzi_ryser_check(space)
    bicomplete = kr.lift_bicomplete is True
    clauses = (
        ("floor equals the double cluster set", floors_ok),
        ("double cluster set belongs to every filter", member_ok),
        ("containment condition holds", kr.holds),
        ("lifted space bicomplete", bicomplete),
    )
    return BeiReport(all(v for _, v in clauses), chosen, clauses)
