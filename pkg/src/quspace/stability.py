"""Stability space over the doubly stable filters, with upper and lower
halves, quotients, an explicit bicompletion, and the structural checkers
built on them.

On a finite ground set the doubly stable filters are exactly the principal
filters; the membership predicate is still evaluated per filter so the
enumeration stays honest.  Filter i of a stability space has generator
mask i + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import filters as flt
from . import hyperspace as hyp
from .relcore import (
    GroundSet,
    QUSpace,
    Relation,
    bits,
    image_table,
    is_doubly_closed,
    is_t0,
    popcount,
    preimage_table,
    subspace,
    t0_classes,
)

DEFAULT_STABILITY_CAP = 10
FAMILY_CAP = 1 << 12


# -- pairwise membership predicates -----------------------------------------


def pair_in_u_plus(u: Relation, f: flt.PFilter, g: flt.PFilter) -> bool:
    """The forward fattening of every member of f belongs to g; bottoms out
    at the generator."""
    return g.contains(u.image(f.gen))


def pair_in_u_minus(u: Relation, f: flt.PFilter, g: flt.PFilter) -> bool:
    return f.contains(u.preimage(g.gen))


def pair_in_u_d(u: Relation, f: flt.PFilter, g: flt.PFilter) -> bool:
    return pair_in_u_plus(u, f, g) and pair_in_u_minus(u, f, g)


# -- construction ------------------------------------------------------------


@dataclass(frozen=True)
class StabilitySpace:
    base_space: QUSpace
    space: QUSpace
    points: tuple[flt.PFilter, ...]
    plus: tuple[Relation, ...]
    minus: tuple[Relation, ...]

    def index_of(self, f: flt.PFilter) -> int:
        return f.gen - 1

    def filter_of(self, index: int) -> flt.PFilter:
        return self.points[index]


@lru_cache(maxsize=None)
def build_stability_space(
    space: QUSpace, cap: int = DEFAULT_STABILITY_CAP
) -> StabilitySpace:
    """Lift every base entourage (and the min-entourage) to filter pairs.

    Verifies the composition axiom: base pairs with V o V inside U must lift
    to squares inside the lifted U.
    """
    n = space.ground.size
    if n > cap:
        raise ValueError(f"ground set of size {n} exceeds the stability cap {cap}")
    points = tuple(
        f
        for f in flt.all_pfilters(space.ground)
        if flt.stability_profile(space, f).doubly_stable
    )
    if len(points) != space.ground.full:
        raise AssertionError("some principal filter failed double stability")
    count = len(points)
    labels = None
    if n <= hyp.LABEL_CAP:
        labels = tuple(space.ground.set_name(f.gen) for f in points)
    s_ground = GroundSet(count, labels)
    plus_rels = []
    minus_rels = []
    d_rels = []
    for u in space.base_ext:
        img = image_table(u)
        pre = preimage_table(u)
        plus_rows = []
        minus_rows = []
        for f in points:
            prow = 0
            mrow = 0
            for j, g in enumerate(points):
                if g.gen & ~img[f.gen] == 0:
                    prow |= 1 << j
                if f.gen & ~pre[g.gen] == 0:
                    mrow |= 1 << j
            plus_rows.append(prow)
            minus_rows.append(mrow)
        plus_rels.append(Relation(s_ground, tuple(plus_rows)))
        minus_rels.append(Relation(s_ground, tuple(minus_rows)))
        d_rels.append(plus_rels[-1].intersect(minus_rels[-1]))
    lifted = QUSpace.build(s_ground, tuple(d_rels))
    result = StabilitySpace(space, lifted, points, tuple(plus_rels), tuple(minus_rels))
    _check_square_axiom(space, result)
    return result


def _check_square_axiom(space: QUSpace, s: StabilitySpace) -> None:
    ents = space.base_ext
    families = (("plus", s.plus), ("minus", s.minus), ("d", s.space.base))
    for i, v in enumerate(ents):
        vv = v.compose(v)
        targets = [j for j, u in enumerate(ents) if vv.is_subset(u)]
        if not targets:
            continue
        for fam_name, fam in families:
            sq = fam[i].compose(fam[i])
            for j in targets:
                if not sq.is_subset(fam[j]):
                    raise AssertionError(
                        f"square axiom failed for {fam_name} at base pair ({i}, {j})"
                    )


def oplus_entourages(
    s: StabilitySpace,
) -> tuple[tuple[Relation, ...], tuple[Relation, ...]]:
    """Memberwise variants: forward fattenings of all members land in the
    other filter.  The minus variant is the transposed plus of the inverse."""
    ground = s.space.ground
    oplus = []
    for u in s.base_space.base_ext:
        img = image_table(u)
        rows = []
        for f in s.points:
            row = 0
            for j, g in enumerate(s.points):
                if _all_members_map_in(img, f.gen, g, s.base_space.ground.full):
                    row |= 1 << j
            rows.append(row)
        oplus.append(Relation(ground, tuple(rows)))
    ominus = []
    for u in s.base_space.base_ext:
        inv = u.inverse()
        img = image_table(inv)
        rows = []
        for g in s.points:
            row = 0
            for j, f in enumerate(s.points):
                if _all_members_map_in(img, g.gen, f, s.base_space.ground.full):
                    row |= 1 << j
            rows.append(row)
        ominus.append(Relation(ground, tuple(rows)).inverse())
    return tuple(oplus), tuple(ominus)


def _all_members_map_in(img: Sequence[int], gen: int, g: flt.PFilter, full: int) -> bool:
    rest = full & ~gen
    sub = rest
    while True:
        member = gen | sub
        if not g.contains(img[member]):
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & rest


def oplus_sandwich_ok(s: StabilitySpace) -> bool:
    """plus <= memberwise <= squared-plus, and the same on the minus side."""
    oplus, ominus = oplus_entourages(s)
    for k, u in enumerate(s.base_space.base_ext):
        uu = u.compose(u)
        img2 = image_table(uu)
        pre2 = preimage_table(uu)
        sq_plus_rows = []
        sq_minus_rows = []
        for f in s.points:
            prow = 0
            mrow = 0
            for j, g in enumerate(s.points):
                if g.gen & ~img2[f.gen] == 0:
                    prow |= 1 << j
                if f.gen & ~pre2[g.gen] == 0:
                    mrow |= 1 << j
            sq_plus_rows.append(prow)
            sq_minus_rows.append(mrow)
        sq_plus = Relation(s.space.ground, tuple(sq_plus_rows))
        sq_minus = Relation(s.space.ground, tuple(sq_minus_rows))
        if not (s.plus[k].is_subset(oplus[k]) and oplus[k].is_subset(sq_plus)):
            return False
        if not (s.minus[k].is_subset(ominus[k]) and ominus[k].is_subset(sq_minus)):
            return False
    return True


# -- embeddings and maps ------------------------------------------------------


@dataclass
class EmbedReport:
    ok: bool
    mismatches: tuple[tuple[int, int, int], ...] = ()


def embed_hyper(space: QUSpace) -> EmbedReport:
    """Sets embed as their principal filters: lifted-relation membership on
    sets must match stability membership on the filters, per entourage."""
    s = build_stability_space(space)
    h = hyp.lift(space)
    mismatches = []
    for k, (u_h, u_d) in enumerate(zip(h.space.base, s.space.base)):
        if u_h.rows != u_d.rows:
            for i, (a, b) in enumerate(zip(u_h.rows, u_d.rows)):
                if a != b:
                    mismatches.append((k, i, a ^ b))
    return EmbedReport(not mismatches, tuple(mismatches))


@dataclass
class MapReport:
    continuous: bool
    violation: tuple[int, tuple[int, int]] | None
    filter_map: tuple[int, ...]
    images_doubly_stable: bool
    fd_continuous: bool
    restricts_to_hypermap: bool


def lift_map_fd(fmap: Sequence[int], x_space: QUSpace, y_space: QUSpace) -> MapReport:
    """Push filters forward along a point map and check continuity on both
    levels."""
    if len(fmap) != x_space.ground.size:
        raise ValueError("map must be defined on every point of the source")
    for v in fmap:
        if not 0 <= v < y_space.ground.size:
            raise ValueError("map value outside the target ground set")

    def push(mask: int) -> int:
        out = 0
        for p in bits(mask):
            out |= 1 << fmap[p]
        return out

    continuous = True
    violation = None
    mx = x_space.min_entourage
    for k, v in enumerate(y_space.base_ext):
        for px, py in mx.pairs():
            if not v.contains_pair(fmap[px], fmap[py]):
                continuous = False
                violation = (k, (px, py))
                break
        if not continuous:
            break

    filter_map = tuple(push(gen) for gen in range(1, x_space.ground.full + 1))
    images_ds = all(
        flt.stability_profile(y_space, flt.PFilter(y_space.ground, img)).doubly_stable
        for img in filter_map
    )

    fd_continuous = True
    if continuous:
        sx = build_stability_space(x_space)
        for v in y_space.base_ext:
            img_v = image_table(v)
            pre_v = preimage_table(v)
            for i, f in enumerate(sx.points):
                for j in bits(sx.space.min_entourage.rows[i]):
                    g = sx.points[j]
                    fa, ga = push(f.gen), push(g.gen)
                    if ga & ~img_v[fa] or fa & ~pre_v[ga]:
                        fd_continuous = False
    # the pushed filterbase {f(F)} must stay principal on the pushed
    # generator, which is what lets the map restrict to sets
    restricts = True
    full = x_space.ground.full
    for gen in range(1, full + 1):
        target = push(gen)
        free = full & ~gen
        sub = free
        while restricts:
            if target & ~push(gen | sub):
                restricts = False
                break
            if sub == 0:
                break
            sub = (sub - 1) & free
    return MapReport(continuous, violation, filter_map, images_ds, fd_continuous, restricts)


def ud_equivalent(space: QUSpace, f: flt.PFilter, g: flt.PFilter) -> bool:
    """Mutually related under every stability entourage; equivalent to the
    two filters having the same envelope floor."""
    both = all(
        pair_in_u_d(u, f, g) and pair_in_u_d(u, g, f) for u in space.base_ext
    )
    same_floor = flt.f_sub_u(space, f).gen == flt.f_sub_u(space, g).gen
    assert both == same_floor
    return both


# -- quotients and bicompletion ----------------------------------------------


@dataclass(frozen=True)
class QuotientSpace:
    space: QUSpace
    reps: tuple[int, ...]


def t0_stability_space(space: QUSpace) -> QuotientSpace:
    """Quotient of the stability space: one two-round filter per class,
    realized on the doubly closed generators."""
    s = build_stability_space(space)
    reps = sorted({flt.f_sub_u(space, f).gen for f in s.points})
    labels = None
    if space.ground.size <= hyp.LABEL_CAP:
        labels = tuple(space.ground.set_name(g) for g in reps)
    q_ground = GroundSet(len(reps), labels)
    base = []
    for u in space.base_ext:
        img = image_table(u)
        pre = preimage_table(u)
        rows = []
        for a in reps:
            row = 0
            for j, b in enumerate(reps):
                if b & ~img[a] == 0 and a & ~pre[b] == 0:
                    row |= 1 << j
            rows.append(row)
        base.append(Relation(q_ground, tuple(rows)))
    q_space = QUSpace.build(q_ground, tuple(base))
    if not is_t0(q_space):
        raise AssertionError("stability quotient is not T0")
    for gen in reps:
        if not is_doubly_closed(space, gen):
            raise AssertionError("quotient representative is not doubly closed")
    return QuotientSpace(q_space, tuple(reps))


@dataclass(frozen=True)
class Bicompletion:
    source: QUSpace
    points: tuple[flt.PFilter, ...]
    space: QUSpace
    embedding: tuple[int, ...]


def bicompletion(space: QUSpace) -> Bicompletion:
    """Explicit completion of a T0 space on its minimal Cauchy filters.

    Entourages relate two filters when a member box fits inside the source
    entourage.  On a finite T0 source the minimal Cauchy filters are the
    neighborhood filters of points and the embedding is a bijection.
    """
    if not is_t0(space):
        raise ValueError("bicompletion needs a T0 space")
    ms = space.min_entourage.symmetrize()
    minimal = sorted(
        {ms.image(f.gen) for f in flt.s_cauchy_filters(space)}
    )
    points = tuple(flt.PFilter(space.ground, gen) for gen in minimal)
    index = {gen: i for i, gen in enumerate(minimal)}
    labels = None
    if space.ground.size <= hyp.LABEL_CAP:
        labels = tuple(space.ground.set_name(g) for g in minimal)
    b_ground = GroundSet(len(points), labels)
    base = []
    for u in space.base_ext:
        rows = []
        for f in points:
            row = 0
            for j, g in enumerate(points):
                if all(u.rows[x] & g.gen == g.gen for x in bits(f.gen)):
                    row |= 1 << j
            rows.append(row)
        base.append(Relation(b_ground, tuple(rows)))
    b_space = QUSpace.build(b_ground, tuple(base))
    embedding = tuple(index[ms.rows[x]] for x in range(space.ground.size))
    return Bicompletion(space, points, b_space, embedding)


def bicompletion_is_isomorphic(bic: Bicompletion) -> bool:
    """Finite T0 sources are already bicomplete: the embedding must be a
    bijection carrying each base entourage onto its lift."""
    emb = bic.embedding
    if len(set(emb)) != len(emb) or len(emb) != len(bic.points):
        return False
    for u, v in zip(bic.source.base_ext, bic.space.base):
        for x, y in ((a, b) for a in range(len(emb)) for b in range(len(emb))):
            if u.contains_pair(x, y) != v.contains_pair(emb[x], emb[y]):
                return False
    return True


def bicompletion_matches_stability(bic: Bicompletion) -> bool:
    """Member-box membership on the completion agrees with the two-sided
    stability membership for every base entourage."""
    space = bic.source
    for u, v in zip(space.base_ext, bic.space.base):
        for i, f in enumerate(bic.points):
            for j, g in enumerate(bic.points):
                if v.contains_pair(i, j) != pair_in_u_d(u, f, g):
                    return False
    return True


# -- checkers -----------------------------------------------------------------


@dataclass
class CheckOutcome:
    check: str
    ok: bool
    clauses: tuple[tuple[str, bool], ...]
    witnesses: tuple[str, ...] = ()
    bounds: dict = field(default_factory=dict)

    @classmethod
    def from_clauses(
        cls,
        check: str,
        clauses: Sequence[tuple[str, bool]],
        witnesses: Iterable[str] = (),
        bounds: dict | None = None,
    ) -> "CheckOutcome":
        clauses = tuple(clauses)
        ok = all(v for _, v in clauses)
        wit = tuple(witnesses) or (
            tuple(name for name, v in clauses if not v) if not ok else ()
        )
        return cls(check, ok, clauses, wit, bounds or {})


def check_stability_complete(space: QUSpace) -> CheckOutcome:
    """The stability space is bicomplete, the principal filters are dense in
    it, and the member net of every filter is Cauchy and converges back to
    the filter."""
    s = build_stability_space(space)
    bicomplete = flt.is_bicomplete(s.space)

    # every point is a principal set filter, so the dense subset is the
    # whole carrier; the closure computation still runs for the record
    md_s = s.space.min_entourage.symmetrize()
    cp_mask = s.space.ground.full
    dense = md_s.image(cp_mask) == s.space.ground.full

    nets_ok = True
    witnesses: list[str] = []
    ground = space.ground
    for u in space.base_ext:
        img = image_table(u)
        pre = preimage_table(u)

        def in_d(a: int, b: int) -> bool:
            return b & ~img[a] == 0 and a & ~pre[b] == 0

        for f in s.points:
            anchor = pre[f.gen] & img[f.gen]
            if not f.contains(anchor):
                nets_ok = False
                witnesses.append(f"anchor not a member for gen {ground.set_name(f.gen)}")
                continue
            tail = _tail_members(f.gen, anchor, ground.full)
            for a in tail:
                if not (in_d(a, f.gen) and in_d(f.gen, a)):
                    nets_ok = False
                    witnesses.append(
                        f"tail member {ground.set_name(a)} fails convergence at gen "
                        f"{ground.set_name(f.gen)}"
                    )
                for b in tail:
                    if not (in_d(a, b) and in_d(b, a)):
                        nets_ok = False
                        witnesses.append(
                            f"tail pair ({ground.set_name(a)}, {ground.set_name(b)}) not Cauchy"
                        )
    return CheckOutcome.from_clauses(
        "stability-complete",
        (
            ("stability space bicomplete", bicomplete),
            ("principal filters dense", dense),
            ("member nets Cauchy and convergent", nets_ok),
        ),
        witnesses,
    )


def _tail_members(gen: int, anchor: int, full: int) -> list[int]:
    """Members of the filter that sit inside the anchor member: the tail of
    the member net directed by reverse inclusion."""
    if anchor & gen != gen:
        return []
    free = anchor & ~gen
    out = []
    sub = free
    while True:
        out.append(gen | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return out


def check_quotient_bicompletion(space: QUSpace) -> CheckOutcome:
    """The T0 quotient of the stability space is bicomplete and T0, and
    coincides pointwise with the quotient image of the principal filters.
    For T0 sources the induced map between the quotient and the quotient of
    the completion is the identity."""
    q = t0_stability_space(space)
    bicomplete = flt.is_bicomplete(q.space)
    t0 = is_t0(q.space)
    principal_images = sorted(
        {flt.two_envelope(space, f).gen for f in flt.all_pfilters(space.ground)}
    )
    same_points = tuple(principal_images) == q.reps
    clauses = [
        ("quotient bicomplete", bicomplete),
        ("quotient T0", t0),
        ("quotient equals principal images", same_points),
    ]
    if is_t0(space):
        bic = bicompletion(space)
        q_tilde = t0_stability_space(bic.space)
        emb = bic.embedding
        mapped = sorted(
            _push_mask(gen, emb) for gen in q.reps
        )
        clauses.append(("quotient map to completion is identity", tuple(mapped) == q_tilde.reps))
        bounds = {}
    else:
        bounds = {"completion-identity": "skipped (source not T0)"}
    return CheckOutcome.from_clauses("quotient-bicompletion", clauses, bounds=bounds)


def _push_mask(mask: int, fmap: Sequence[int]) -> int:
    out = 0
    for p in bits(mask):
        out |= 1 << fmap[p]
    return out


def check_principal_classes(space: QUSpace) -> CheckOutcome:
    """Lifted-space bicompleteness is equivalent to every doubly stable
    filter being equivalent to a principal set filter; both sides computed
    independently."""
    left = flt.is_bicomplete(hyp.lift(space).space)
    right = True
    witness = None
    for f in flt.all_pfilters(space.ground):
        if not flt.stability_profile(space, f).doubly_stable:
            continue
        found = None
        for c in range(1, space.ground.full + 1):
            if flt.two_envelope(space, flt.PFilter(space.ground, c)).gen == flt.f_sub_u(space, f).gen:
                found = c
                break
        if found is None:
            right = False
            witness = f.gen
            break
    return CheckOutcome.from_clauses(
        "principal-classes",
        (
            ("lift bicomplete", left),
            ("every filter equivalent to a set filter", right),
            ("sides agree", left == right),
        ),
        (space.ground.set_name(witness),) if witness is not None else (),
    )


def check_cauchy_families(space: QUSpace, family_cap: int = FAMILY_CAP) -> CheckOutcome:
    """Bicompleteness of the lifted completion is equivalent to every doubly
    stable filter being equivalent to an intersection of Cauchy filters."""
    reps_space, kept = _t0_representative_subspace(space)
    bic = bicompletion(reps_space)
    left = flt.is_bicomplete(hyp.lift(bic.space).space)

    cauchy = list(flt.s_cauchy_filters(space))
    witness_based = False
    right = True
    witnesses: list[str] = []
    ms = space.min_entourage.symmetrize()
    for f in flt.all_pfilters(space.ground):
        target = flt.f_sub_u(space, f).gen
        found = False
        if (1 << len(cauchy)) <= family_cap:
            for fam_mask in range(1, 1 << len(cauchy)):
                union = 0
                m = fam_mask
                while m:
                    low = m & -m
                    union |= cauchy[low.bit_length() - 1].gen
                    m ^= low
                if flt.f_sub_u(space, flt.PFilter(space.ground, union)).gen == target:
                    found = True
                    break
        else:
            witness_based = True
            union = 0
            for x in bits(f.gen):
                union |= ms.rows[x]
            found = (
                flt.f_sub_u(space, flt.PFilter(space.ground, union)).gen == target
            )
        if not found:
            right = False
            witnesses.append(space.ground.set_name(f.gen))
    canonical_ok = True
    for f in flt.all_pfilters(space.ground):
        union = 0
        for x in bits(f.gen):
            union |= ms.rows[x]
        if flt.f_sub_u(space, flt.PFilter(space.ground, union)).gen != flt.two_envelope(space, f).gen:
            canonical_ok = False
    return CheckOutcome.from_clauses(
        "cauchy-families",
        (
            ("lifted completion bicomplete", left),
            ("every filter matched by a Cauchy family", right),
            ("sides agree", left == right),
            ("neighborhood family reproduces the envelope", canonical_ok),
        ),
        witnesses,
        bounds={"family_cap": family_cap, "witness_based": witness_based},
    )


def _t0_representative_subspace(space: QUSpace) -> tuple[QUSpace, tuple[int, ...]]:
    mask = 0
    for cls in t0_classes(space):
        mask |= cls & -cls
    return subspace(space, mask)


def check_uniform_refinement(space: QUSpace) -> CheckOutcome:
    """Uniform case: completeness of the lifted completion is equivalent to
    every stable filter being contained in a Cauchy filter."""
    if not space.is_uniform():
        raise ValueError("check needs a uniform space (symmetric base relations)")
    reps_space, _ = _t0_representative_subspace(space)
    bic = bicompletion(reps_space)
    left = flt.is_bicomplete(hyp.lift(bic.space).space)
    right = True
    for f in flt.all_pfilters(space.ground):
        found = False
        sub = f.gen
        while sub:
            p = flt.PFilter(space.ground, sub)
            if flt.stability_profile(space, p).s_cauchy:
                found = True
                break
            sub = (sub - 1) & f.gen
        if not found:
            right = False
    return CheckOutcome.from_clauses(
        "uniform-refinement",
        (
            ("lifted completion complete", left),
            ("every stable filter refined by a Cauchy filter", right),
            ("sides agree", left == right),
        ),
    )


def check_dense_trace(space: QUSpace, mask: int) -> CheckOutcome:
    """Traces of the envelope floors on a symmetrically dense subset form a
    filterbase whose generated filter is doubly stable and equivalent to the
    original."""
    ms = space.min_entourage.symmetrize()
    if ms.image(mask) != space.ground.full:
        raise ValueError("subset is not dense in the symmetrized topology")
    sub_space, kept = subspace(space, mask)
    traces_ok = True
    stable_ok = True
    equiv_ok = True
    witnesses: list[str] = []
    for f in flt.all_pfilters(space.ground):
        floors = [flt.u_sub_f(u, f) & mask for u in space.base_ext]
        if any(t == 0 for t in floors):
            traces_ok = False
            witnesses.append(space.ground.set_name(f.gen))
            continue
        floor = space.ground.full
        for t in floors:
            floor &= t
        sub_gen = _restrict_mask(floor, kept)
        sub_f = flt.PFilter(sub_space.ground, sub_gen)
        if not flt.stability_profile(sub_space, sub_f).doubly_stable:
            stable_ok = False
            witnesses.append(space.ground.set_name(f.gen))
        lifted = flt.PFilter(space.ground, floor)
        if not ud_equivalent(space, lifted, f):
            equiv_ok = False
            witnesses.append(space.ground.set_name(f.gen))
    return CheckOutcome.from_clauses(
        "dense-trace",
        (
            ("trace family is a filterbase", traces_ok),
            ("trace filter doubly stable on the subspace", stable_ok),
            ("trace filter equivalent to the original", equiv_ok),
        ),
        witnesses,
        bounds={"dense_subset": space.ground.set_name(mask)},
    )


def _restrict_mask(mask: int, kept: Sequence[int]) -> int:
    out = 0
    for new, old in enumerate(kept):
        if mask >> old & 1:
            out |= 1 << new
    return out


def check_section_transfer(space: QUSpace) -> CheckOutcome:
    """Precompactness and total boundedness transfer between a space and its
    stability space, with the singleton embedding giving the backward
    direction."""
    s = build_stability_space(space)
    x_pre = hyp.is_precompact(space)
    x_tb = hyp.is_totally_bounded(space)
    s_pre = hyp.is_precompact(s.space)
    s_tb = hyp.is_totally_bounded(s.space)
    singleton_ok = True
    for u, u_d in zip(space.base_ext, s.space.base):
        for x in range(space.ground.size):
            for y in range(space.ground.size):
                if u.contains_pair(x, y) != u_d.contains_pair((1 << x) - 1, (1 << y) - 1):
                    singleton_ok = False
    cover_audit = _cover_audit(space)
    return CheckOutcome.from_clauses(
        "section-transfer",
        (
            ("precompact iff stability precompact", x_pre == s_pre),
            ("totally bounded iff stability totally bounded", x_tb == s_tb),
            ("all four hold at finite scale", x_pre and x_tb and s_pre and s_tb),
            ("singleton embedding preserves entourages", singleton_ok),
            ("greedy cover agrees with exhaustive search", cover_audit),
        ),
    )


def _cover_audit(space: QUSpace) -> bool:
    """Greedy covers must cover; exhaustive search must find some cover of
    at most the greedy size."""
    m = space.min_entourage
    greedy = hyp.finite_cover(m)
    full = space.ground.full
    if m.image(greedy) != full:
        return False
    best = None
    for cand in range(1, full + 1):
        if m.image(cand) == full:
            if best is None or popcount(cand) < best:
                best = popcount(cand)
    return best is not None and best <= popcount(greedy)
