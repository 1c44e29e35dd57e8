"""Check drivers: corpora, the random-space generator, and the suites the
command line dispatches.

Every bounded sweep records its bounds in the report; aggregated checks
hash the whole corpus they ran over.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from . import filters as flt
from . import hyperspace as hyp
from . import natline, qpm, stability
from .intervals import IntervalSet
from .relcore import (
    GroundSet,
    QUSpace,
    Relation,
    bits,
    double_closure,
    identity,
    is_doubly_closed,
    is_t0,
    full_relation,
    relation_from_pairs,
    repair_base,
    t0_classes,
)
from .report import CheckReport
from .spacefile import corpus_hash, space_hash

SUITES = ("all", "finite", "symbolic", "metric")


@dataclass(frozen=True)
class Caps:
    max_points: int = 16
    lift_cap: int = 10
    family_cap: int = 1 << 12
    bound_s: int = 12
    bound_n: int = 200
    axiom_spaces: int = 200
    random_spaces: int = 200
    cover_sequences: int = 500

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "Caps":
        caps = cls()
        for key, value in pairs:
            if not hasattr(caps, key):
                raise ValueError(f"unknown cap {key!r}")
            caps = replace(caps, **{key: int(value)})
        return caps


# -- space generation ------------------------------------------------------------


def gen_space(n: int, k: int, seed: int, cap: int = 16) -> QUSpace:
    """Random space with k reflexive relations, repaired to validate."""
    if not 1 <= n <= cap:
        raise ValueError(f"point count must be in 1..{cap}")
    if k < 1:
        raise ValueError("need at least one base relation")
    rng = random.Random(seed)
    ground = GroundSet(n)
    base = []
    for _ in range(k):
        rows = []
        for i in range(n):
            row = 1 << i
            for j in range(n):
                if j != i and rng.random() < 0.35:
                    row |= 1 << j
            rows.append(row)
        base.append(Relation(ground, tuple(rows)))
    repaired, notes = repair_base(ground, base)
    return QUSpace.build(ground, repaired, notes)


def catalogue_generators(ground: GroundSet) -> list[Relation]:
    """Fixed relation catalogue the small-space corpus draws bases from."""
    n = ground.size
    gens = [identity(ground), full_relation(ground)]
    chain = relation_from_pairs(
        ground, [(i, j) for i in range(n) for j in range(i, n)]
    )
    gens.append(chain)
    if n >= 2:
        gens.append(relation_from_pairs(ground, [(0, 1)]))
        gens.append(relation_from_pairs(ground, [(1, 0)]))
        gens.append(relation_from_pairs(ground, [(0, j) for j in range(1, n)]))
    if n >= 3:
        gens.append(
            relation_from_pairs(ground, [(i, i + 1) for i in range(n - 1)])
        )
    seen = set()
    out = []
    for g in gens:
        if g.rows not in seen:
            seen.add(g.rows)
            out.append(g)
    return out


def catalogue_spaces(max_points: int = 4, max_generators: int = 3) -> list[QUSpace]:
    """All spaces on <= max_points points with bases of at most
    max_generators catalogue relations, repaired where the intersection
    needs it."""
    spaces = []
    seen = set()
    for n in range(1, max_points + 1):
        ground = GroundSet(n)
        gens = catalogue_generators(ground)
        for size in range(1, max_generators + 1):
            for combo in combinations(gens, size):
                repaired, notes = repair_base(ground, list(combo))
                key = (n, tuple(sorted(r.rows for r in repaired)))
                if key in seen:
                    continue
                seen.add(key)
                spaces.append(QUSpace.build(ground, repaired, notes))
    return spaces


def random_corpus(count: int, seed: int, sizes: Sequence[int] = (5,)) -> list[QUSpace]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        k = rng.randint(1, 3)
        out.append(gen_space(n, k, seed=rng.randrange(1 << 30)))
    return out


def glued_corpus(count: int, seed: int, n: int = 4) -> list[QUSpace]:
    """Non-T0 spaces: a random space with one pair of points identified."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 20:
        attempts += 1
        space = gen_space(n, rng.randint(1, 2), seed=rng.randrange(1 << 30))
        i, j = rng.sample(range(n), 2)
        glued = [
            r.union(relation_from_pairs(space.ground, [(i, j), (j, i)]))
            for r in space.base
        ]
        repaired, notes = repair_base(space.ground, glued)
        candidate = QUSpace.build(space.ground, repaired, notes)
        if not is_t0(candidate):
            out.append(candidate)
    return out


def uniform_corpus(count: int, seed: int, n: int = 4) -> list[QUSpace]:
    """Uniform spaces: bases of random partitions (always valid)."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        base = []
        for _ in range(rng.randint(1, 3)):
            ground = GroundSet(n)
            assignment = [rng.randrange(3) for _ in range(n)]
            rows = []
            for i in range(n):
                row = 0
                for j in range(n):
                    if assignment[i] == assignment[j]:
                        row |= 1 << j
                rows.append(row)
            base.append(Relation(ground, tuple(rows)))
        out.append(QUSpace.build(GroundSet(n), tuple(base)))
    return out


def sierpinski() -> QUSpace:
    ground = GroundSet(2)
    return QUSpace.build(ground, [relation_from_pairs(ground, [(0, 1)])])


def bei_catalogue() -> list[tuple[QUSpace, bool]]:
    """Witness spaces for the isolated-point criterion, positive and
    negative."""
    out: list[tuple[QUSpace, bool]] = []
    for n in range(1, 5):
        ground = GroundSet(n)
        out.append((QUSpace.build(ground, [identity(ground)]), True))
    out.append((sierpinski(), True))
    ground4 = GroundSet(4)
    fan = relation_from_pairs(ground4, [(0, 1), (0, 2)])
    out.append((QUSpace.build(ground4, [fan]), True))
    ground3 = GroundSet(3)
    chain3 = relation_from_pairs(ground3, [(0, 1), (1, 2), (0, 2)])
    out.append((QUSpace.build(ground3, [chain3]), False))
    ground2 = GroundSet(2)
    out.append((QUSpace.build(ground2, [full_relation(ground2)]), False))
    return out


# -- aggregated finite checks ------------------------------------------------------


def axioms_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Quasi-uniformity base axioms for the lifted families: reflexivity by
    construction, squares transported along squares."""
    witnesses: list[str] = []
    try:
        h = hyp.lift(space)
    except ValueError as exc:
        return False, [str(exc)]
    ents = space.base_ext
    for i, v in enumerate(ents):
        vv = v.compose(v)
        targets = [j for j, u in enumerate(ents) if vv.is_subset(u)]
        if not targets:
            continue
        sq = h.space.base[i].compose(h.space.base[i])
        for j in targets:
            if not sq.is_subset(h.space.base[j]):
                witnesses.append(f"hyper square escaped at base pair ({i}, {j})")
    try:
        stability.build_stability_space(space)
    except AssertionError as exc:
        witnesses.append(str(exc))
    return not witnesses, witnesses


def envelope_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Envelope laws per filter: idempotence, cluster preservation, floor
    equality, open generator, and the double cluster set as the double
    closure."""
    witnesses: list[str] = []
    ms = space.min_entourage.symmetrize()
    for f in flt.all_pfilters(space.ground):
        env = flt.two_envelope(space, f)
        if flt.two_envelope(space, env).gen != env.gen:
            witnesses.append(f"envelope not idempotent at {space.ground.set_name(f.gen)}")
        for direction in ("forward", "conjugate"):
            if flt.cluster_points(space, env, direction) != flt.cluster_points(
                space, f, direction
            ):
                witnesses.append(
                    f"{direction} clusters moved at {space.ground.set_name(f.gen)}"
                )
        floor = flt.f_sub_u(space, f)
        if floor.gen != env.gen:
            witnesses.append(f"floor differs from envelope at {space.ground.set_name(f.gen)}")
        if any(ms.rows[x] & ~floor.gen for x in bits(floor.gen)):
            witnesses.append(
                f"floor generator not symmetrized-open at {space.ground.set_name(f.gen)}"
            )
        if flt.double_cluster_points(space, f) != double_closure(space, f.gen):
            witnesses.append(
                f"double clusters differ from double closure at {space.ground.set_name(f.gen)}"
            )
        if not flt.stability_profile(space, f).doubly_stable:
            witnesses.append(f"filter not doubly stable at {space.ground.set_name(f.gen)}")
    return not witnesses, witnesses


def subspace_stability_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Stable filters on a subspace generate stable filters on the whole
    space."""
    from .relcore import subspace

    witnesses: list[str] = []
    for a in range(1, space.ground.full + 1):
        sub, kept = subspace(space, a)
        gen_sub = sub.ground.full
        while gen_sub:
            sub_f = flt.PFilter(sub.ground, gen_sub)
            if flt.stability_profile(sub, sub_f).stable:
                ambient = flt.generated_on(space, gen_sub, kept)
                if not flt.stability_profile(space, ambient).stable:
                    witnesses.append(
                        f"extension unstable: A={space.ground.set_name(a)}"
                    )
            gen_sub -= 1
    return not witnesses, witnesses


def equivalence_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Mutual relatedness in every lifted entourage coincides with equal
    envelope floors, both sides computed directly."""
    from .relcore import image_table, preimage_table

    witnesses: list[str] = []
    full = space.ground.full
    floors = [0] * (full + 1)
    for f in flt.all_pfilters(space.ground):
        floors[f.gen] = flt.f_sub_u(space, f).gen
    tables = [(image_table(u), preimage_table(u)) for u in space.base_ext]
    for a in range(1, full + 1):
        for b in range(1, full + 1):
            both = all(
                b & ~img[a] == 0
                and a & ~pre[b] == 0
                and a & ~img[b] == 0
                and b & ~pre[a] == 0
                for img, pre in tables
            )
            if both != (floors[a] == floors[b]):
                witnesses.append(
                    f"equivalence mismatch at ({space.ground.set_name(a)}, "
                    f"{space.ground.set_name(b)})"
                )
    return not witnesses, witnesses


def conjugation_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Transposing a lifted entourage swaps the upper and lower halves of
    the conjugate space."""
    s = stability.build_stability_space(space)
    conj = space.conjugate()
    s_conj = stability.build_stability_space(conj)
    witnesses: list[str] = []
    for k in range(len(space.base_ext)):
        if s.plus[k].inverse().rows != s_conj.minus[k].rows:
            witnesses.append(f"plus transpose mismatch at entourage {k}")
        if s.minus[k].inverse().rows != s_conj.plus[k].rows:
            witnesses.append(f"minus transpose mismatch at entourage {k}")
        if s.space.base[k].inverse().rows != s_conj.space.base[k].rows:
            witnesses.append(f"full transpose mismatch at entourage {k}")
    return not witnesses, witnesses


def cauchy_pair_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Member-box pairs land in both memberwise variants at every base
    entourage."""
    s = stability.build_stability_space(space)
    oplus, ominus = stability.oplus_entourages(s)
    witnesses: list[str] = []
    for f in s.points:
        for g in s.points:
            if not flt.is_cauchy_pair(space, f, g):
                continue
            i, j = s.index_of(f), s.index_of(g)
            for k in range(len(space.base_ext)):
                if not (oplus[k].contains_pair(i, j) and ominus[k].contains_pair(i, j)):
                    witnesses.append(
                        f"member-box pair escaped at ({space.ground.set_name(f.gen)}, "
                        f"{space.ground.set_name(g.gen)})"
                    )
    return not witnesses, witnesses


def hyper_classes_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Class count of the lifted space equals the count of nonempty doubly
    closed subsets."""
    h = hyp.lift(space)
    reps = hyp.hyper_t0_representatives(h)
    closed = [m for m in range(1, space.ground.full + 1) if is_doubly_closed(space, m)]
    if len(reps) != len(closed) or list(reps) != closed:
        return False, [f"{len(reps)} classes vs {len(closed)} doubly closed sets"]
    return True, []


def functorial_ok(seed: int, cases: int = 40) -> tuple[bool, list[str]]:
    """Continuity verdicts of pushed maps against the direct pair test on
    random chain maps, monotone and not."""
    rng = random.Random(seed)
    witnesses: list[str] = []
    for _ in range(cases):
        nx, ny = rng.randint(2, 4), rng.randint(2, 4)
        gx, gy = GroundSet(nx), GroundSet(ny)
        x_space = QUSpace.build(
            gx, [relation_from_pairs(gx, [(i, j) for i in range(nx) for j in range(i, nx)])]
        )
        y_space = QUSpace.build(
            gy, [relation_from_pairs(gy, [(i, j) for i in range(ny) for j in range(i, ny)])]
        )
        fmap = [rng.randrange(ny) for _ in range(nx)]
        if rng.random() < 0.5:
            fmap.sort()
        report = stability.lift_map_fd(fmap, x_space, y_space)
        brute = all(
            y_space.min_entourage.contains_pair(fmap[a], fmap[b])
            for a, b in x_space.min_entourage.pairs()
        )
        if report.continuous != brute:
            witnesses.append(f"continuity verdict mismatch for map {fmap}")
        if report.continuous and not (
            report.fd_continuous and report.restricts_to_hypermap and report.images_doubly_stable
        ):
            witnesses.append(f"pushed map checks failed for map {fmap}")
    return not witnesses, witnesses


def double_closure_union_witness(
    spaces: Iterable[QUSpace],
) -> tuple[QUSpace, int, int] | None:
    """A space and subset pair where the double closure of the union grows
    strictly past the union of the double closures."""
    for space in spaces:
        full = space.ground.full
        for a in range(1, full + 1):
            for b in range(a + 1, full + 1):
                separate = double_closure(space, a) | double_closure(space, b)
                joint = double_closure(space, a | b)
                if separate & ~joint == 0 and joint & ~separate:
                    return space, a, b
    return None


def kr_finite_ok(space: QUSpace) -> tuple[bool, list[str]]:
    report = hyp.kunzi_ryser_check(space)
    witnesses = []
    if not report.holds:
        witnesses.append("containment condition failed on a finite space")
    if not report.forms_agree:
        witnesses.append("direct and floor forms disagree")
    if report.matches_lift is False:
        witnesses.append("verdict does not match lifted bicompleteness")
    return not witnesses, witnesses


def bicompletion_ok(space: QUSpace) -> tuple[bool, list[str]]:
    """Bicompletions of finite T0 spaces reproduce the space; non-T0 spaces
    go through their quotient."""
    witnesses: list[str] = []
    target = space
    if not is_t0(space):
        target, _ = stability._t0_representative_subspace(space)
    bic = stability.bicompletion(target)
    if not stability.bicompletion_is_isomorphic(bic):
        witnesses.append("embedding is not an isomorphism")
    if not stability.bicompletion_matches_stability(bic):
        witnesses.append("member-box and two-sided memberships disagree")
    return not witnesses, witnesses


# -- runner ------------------------------------------------------------------------


CheckFn = Callable[[QUSpace], tuple[bool, list[str]]]


def _corpus_report(
    check: str,
    spaces: Sequence[QUSpace],
    fn: CheckFn,
    bounds: dict,
    max_witnesses: int = 5,
) -> CheckReport:
    start = time.monotonic()
    witnesses: list[str] = []
    for space in spaces:
        ok, found = fn(space)
        if not ok:
            tag = space_hash(space)
            witnesses.extend(f"{tag}: {w}" for w in found[:2])
        if len(witnesses) >= max_witnesses:
            break
    runtime = int((time.monotonic() - start) * 1000)
    return CheckReport(
        check=check,
        space_hash=corpus_hash(spaces),
        verdict="pass" if not witnesses else "fail",
        witnesses=tuple(witnesses[:max_witnesses]),
        bounds=dict(bounds),
        runtime_ms=runtime,
    )


def _simple_report(check: str, tag: str, fn: Callable[[], tuple[bool, list[str]]], bounds: dict) -> CheckReport:
    start = time.monotonic()
    ok, witnesses = fn()
    runtime = int((time.monotonic() - start) * 1000)
    return CheckReport(
        check=check,
        space_hash=tag,
        verdict="pass" if ok else "fail",
        witnesses=tuple(witnesses[:5]) if not ok else (),
        bounds=dict(bounds),
        runtime_ms=runtime,
    )


def _outcome_report(check: str, tag: str, outcome, bounds: dict, runtime: int) -> CheckReport:
    merged = dict(bounds)
    merged.update(getattr(outcome, "bounds", {}) or {})
    witnesses = tuple(getattr(outcome, "witnesses", ()))
    if not outcome.ok and not witnesses:
        witnesses = tuple(name for name, v in outcome.clauses if not v)
    return CheckReport(
        check=check,
        space_hash=tag,
        verdict="pass" if outcome.ok else "fail",
        witnesses=witnesses[:5],
        bounds=merged,
        runtime_ms=runtime,
    )


def finite_suite(seed: int, caps: Caps) -> list[CheckReport]:
    reports: list[CheckReport] = []
    axiom_corpus = random_corpus(caps.axiom_spaces, seed, sizes=(2, 3, 4, 5))
    corpus = catalogue_spaces() + random_corpus(caps.random_spaces, seed + 1, sizes=(5,))
    small = [s for s in corpus if s.ground.size <= 4]

    reports.append(
        _corpus_report(
            "axioms",
            axiom_corpus,
            axioms_ok,
            {"spaces": len(axiom_corpus), "max_points": 5, "seed": seed},
        )
    )
    corpus_bounds = {
        "catalogue_spaces": len(corpus) - caps.random_spaces,
        "random_spaces": caps.random_spaces,
        "seed": seed + 1,
    }
    reports.append(_corpus_report("envelope", corpus, envelope_ok, corpus_bounds))
    reports.append(
        _corpus_report("subspace-stability", corpus, subspace_stability_ok, corpus_bounds)
    )
    reports.append(_corpus_report("equivalence-floors", corpus, equivalence_ok, corpus_bounds))
    reports.append(
        _corpus_report(
            "hyper-embedding",
            corpus,
            lambda s: ((r := stability.embed_hyper(s)).ok, [str(m) for m in r.mismatches[:3]]),
            corpus_bounds,
        )
    )
    reports.append(_corpus_report("conjugation", corpus, conjugation_ok, corpus_bounds))
    reports.append(
        _corpus_report(
            "memberwise-sandwich",
            corpus,
            lambda s: (
                stability.oplus_sandwich_ok(stability.build_stability_space(s)),
                ["sandwich failed"],
            ),
            corpus_bounds,
        )
    )
    reports.append(_corpus_report("cauchy-pairs", small, cauchy_pair_ok, {**corpus_bounds, "max_points": 4}))
    reports.append(
        _corpus_report(
            "stability-complete",
            corpus,
            lambda s: ((o := stability.check_stability_complete(s)).ok, list(o.witnesses)),
            corpus_bounds,
        )
    )
    reports.append(
        _corpus_report(
            "quotient-bicompletion",
            corpus,
            lambda s: ((o := stability.check_quotient_bicompletion(s)).ok, list(o.witnesses)),
            corpus_bounds,
        )
    )
    reports.append(_corpus_report("bicompletion-iso", corpus, bicompletion_ok, corpus_bounds))
    reports.append(_corpus_report("hyper-classes", small, hyper_classes_ok, {**corpus_bounds, "max_points": 4}))
    reports.append(_corpus_report("kunzi-ryser-finite", small, kr_finite_ok, {**corpus_bounds, "max_points": 4}))
    reports.append(
        _corpus_report(
            "principal-classes",
            small,
            lambda s: ((o := stability.check_principal_classes(s)).ok, list(o.witnesses)),
            {**corpus_bounds, "max_points": 4},
        )
    )
    family_corpus = small[:: max(1, len(small) // 40)]
    reports.append(
        _corpus_report(
            "cauchy-families",
            family_corpus,
            lambda s: (
                (o := stability.check_cauchy_families(s, caps.family_cap)).ok,
                list(o.witnesses),
            ),
            {**corpus_bounds, "family_cap": caps.family_cap, "spaces": len(family_corpus)},
        )
    )
    uniform = uniform_corpus(30, seed + 2)
    reports.append(
        _corpus_report(
            "uniform-refinement",
            uniform,
            lambda s: ((o := stability.check_uniform_refinement(s)).ok, list(o.witnesses)),
            {"spaces": len(uniform), "seed": seed + 2},
        )
    )
    glued = glued_corpus(30, seed + 3)
    reports.append(
        _corpus_report(
            "dense-trace",
            glued,
            _dense_trace_check,
            {"spaces": len(glued), "seed": seed + 3},
        )
    )
    reports.append(
        _corpus_report(
            "section-transfer",
            small,
            lambda s: ((o := stability.check_section_transfer(s)).ok, list(o.witnesses)),
            {**corpus_bounds, "max_points": 4},
        )
    )

    def bei_all() -> tuple[bool, list[str]]:
        witnesses = []
        for space, positive in bei_catalogue():
            try:
                outcome = natline.verify_bei(space)
                if positive and not outcome.ok:
                    witnesses.append(f"{space_hash(space)}: certificate failed")
                if not positive:
                    witnesses.append(f"{space_hash(space)}: expected a named violation")
            except ValueError as exc:
                if positive:
                    witnesses.append(f"{space_hash(space)}: {exc}")
        return not witnesses, witnesses

    reports.append(
        _simple_report(
            "isolated-point-criterion",
            corpus_hash([s for s, _ in bei_catalogue()]),
            bei_all,
            {"catalogue": len(bei_catalogue())},
        )
    )
    reports.append(
        _simple_report(
            "functorial",
            f"seed:{seed + 4}",
            lambda: functorial_ok(seed + 4),
            {"cases": 40, "seed": seed + 4},
        )
    )
    reports.append(
        _simple_report(
            "double-closure-union",
            "catalogue:3pt",
            lambda: (
                double_closure_union_witness(catalogue_spaces(max_points=3)) is not None,
                ["no strict witness found"],
            ),
            {"search": "catalogue spaces on <= 3 points"},
        )
    )
    return reports


def _dense_trace_check(space: QUSpace) -> tuple[bool, list[str]]:
    mask = 0
    for cls in t0_classes(space):
        mask |= cls & -cls
    if mask == space.ground.full:
        return True, []
    outcome = stability.check_dense_trace(space, mask)
    return outcome.ok, list(outcome.witnesses)


def symbolic_suite(seed: int, caps: Caps) -> list[CheckReport]:
    reports: list[CheckReport] = []
    start = time.monotonic()
    contra = natline.verify_contra(caps.bound_s, caps.bound_n, seed=seed)
    runtime = int((time.monotonic() - start) * 1000)
    reports.append(
        _outcome_report("counterexample-line", "symbolic", contra, {}, runtime)
    )

    def algebra() -> tuple[bool, list[str]]:
        rng = random.Random(seed)
        n = 500
        witnesses = []
        for _ in range(1000):
            a = _random_cofset(rng)
            b = _random_cofset(rng)
            pairs = [
                (a.union(b), a.truncate(n) | b.truncate(n)),
                (a.intersection(b), a.truncate(n) & b.truncate(n)),
                (a.complement().complement(), a.truncate(n)),
                (
                    a.union(b).complement(),
                    a.complement().intersection(b.complement()).truncate(n),
                ),
            ]
            for sym, expected in pairs:
                if sym.truncate(n) != expected:
                    witnesses.append("set algebra mismatch on a truncation")
        return not witnesses, witnesses

    reports.append(
        _simple_report(
            "cofset-algebra", f"seed:{seed}", algebra, {"cases": 1000, "truncation": 500}
        )
    )

    def s_facts() -> tuple[bool, list[str]]:
        s_stable, has_limit = natline.gfilter_symmetrized_facts()
        witnesses = []
        if s_stable:
            witnesses.append("distinguished filter looks symmetrized-stable")
        if has_limit:
            witnesses.append("distinguished filter found a symmetrized limit")
        return not witnesses, witnesses

    reports.append(_simple_report("symmetrized-facts", "symbolic", s_facts, {}))
    return reports


def _random_cofset(rng: random.Random):
    size = rng.randint(0, 8)
    elems = frozenset(rng.randint(1, 60) for _ in range(size))
    return natline.CofSet(rng.random() < 0.5, elems)


def metric_suite(seed: int, caps: Caps) -> list[CheckReport]:
    reports: list[CheckReport] = []

    def formula() -> tuple[bool, list[str]]:
        rng = random.Random(seed)
        witnesses = []
        cases = 0
        while cases < 50:
            x = Fraction(rng.randint(-12, 12), rng.randint(1, 8))
            y = Fraction(rng.randint(-12, 12), rng.randint(1, 8))
            expected = y - x if y >= x else Fraction(1)
            if qpm.sorgenfrey(x, y) != expected:
                witnesses.append(f"formula mismatch at ({x}, {y})")
            cases += 1
        for x, y, expected in (
            (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(0), Fraction(1)),
            (Fraction(3, 7), Fraction(3, 7), Fraction(0)),
        ):
            if qpm.sorgenfrey(x, y) != expected:
                witnesses.append(f"anchor case mismatch at ({x}, {y})")
        return not witnesses, witnesses

    reports.append(_simple_report("sorgenfrey-formula", f"seed:{seed}", formula, {"cases": 53}))

    def symmetrization() -> tuple[bool, list[str]]:
        rng = random.Random(seed + 1)
        witnesses = []
        for _ in range(1000):
            x = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
            y = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
            if x == y:
                continue
            expected = max(abs(x - y), Fraction(1))
            got = max(qpm.sorgenfrey(x, y), qpm.sorgenfrey(y, x))
            if got != expected:
                witnesses.append(f"symmetrization mismatch at ({x}, {y})")
        return not witnesses, witnesses

    reports.append(
        _simple_report("sorgenfrey-symmetrization", f"seed:{seed + 1}", symmetrization, {"cases": 1000})
    )

    def triangle() -> tuple[bool, list[str]]:
        grid = [Fraction(i, 5) for i in range(6)]
        space = qpm.QPSpace.sorgenfrey_space(grid)
        subsets = []
        for size in range(1, len(grid) + 1):
            subsets.extend(combinations(grid, size))
        table = {}
        for a in subsets:
            for b in subsets:
                table[(a, b)] = qpm.hausdorff_qpm(space, a, b)
        witnesses = []
        for a in subsets:
            if table[(a, a)] != 0:
                witnesses.append(f"nonzero self distance at {a}")
        for a in subsets:
            for b in subsets:
                dab = table[(a, b)]
                for c in subsets:
                    if table[(a, c)] > dab + table[(b, c)]:
                        witnesses.append("triangle violated")
                        return False, witnesses
        return not witnesses, witnesses

    reports.append(
        _simple_report("hausdorff-triangle", "grid:6", triangle, {"grid": 6, "triples": 63**3})
    )

    def membership() -> tuple[bool, list[str]]:
        grid = [Fraction(i, 4) for i in range(5)]
        space = qpm.QPSpace.sorgenfrey_space(grid)
        subsets = []
        for size in range(1, len(grid) + 1):
            subsets.extend(combinations(grid, size))
        witnesses = []
        for eps in (Fraction(1, 8), Fraction(1, 2), Fraction(2)):
            for a in subsets:
                for b in subsets:
                    h = qpm.hausdorff_qpm(space, a, b)
                    if h == eps:
                        continue
                    if (h < eps) != qpm.hausdorff_pair_in(space, a, b, eps):
                        witnesses.append(f"membership mismatch at eps={eps}")
        return not witnesses, witnesses

    reports.append(
        _simple_report("hausdorff-membership", "grid:5", membership, {"grid": 5, "scales": 3})
    )

    def cover() -> tuple[bool, list[str]]:
        rng = random.Random(seed + 2)
        witnesses = []
        for case in range(caps.cover_sequences):
            y = Fraction(rng.randint(-20, 20), rng.randint(1, 10))
            n = rng.randint(1, 5)
            length = n + 6 + rng.randint(0, 4)
            terms = []
            for m in range(length):
                off = Fraction(rng.randint(0, 3), 4) * Fraction(1, 2**m)
                sign = -1 if rng.random() < 0.5 else 1
                terms.append(y + sign * off)
            verdict = qpm.cover_fact_check(y, terms, n)
            if not verdict.covered:
                witnesses.append(f"counterwitness in case {case}")
        return not witnesses, witnesses

    reports.append(
        _simple_report(
            "cover-fact", f"seed:{seed + 2}", cover, {"sequences": caps.cover_sequences}
        )
    )

    def floors() -> tuple[bool, list[str]]:
        bases = _interval_bases()
        witnesses = []
        depth = 8
        for name, base in bases:
            chain = qpm.fn_chain(base, depth)
            for prev, nxt in zip(chain, chain[1:]):
                if not nxt.is_subset(prev):
                    witnesses.append(f"floor chain not decreasing for {name}")
            limit = chain[0]
            for piece in chain[1:]:
                limit = limit.intersection(piece)
            target = qpm.double_cluster_trace(base)
            if not target.is_subset(limit):
                witnesses.append(f"cluster trace escapes the floors for {name}")
            if qpm.fn_sets(base, 30) != qpm.fn_sets(base, 40):
                witnesses.append(f"floors did not stabilize for {name}")
            if qpm.fn_sets(base, 40) != target:
                witnesses.append(f"stable floor differs from cluster trace for {name}")
        return not witnesses, witnesses

    reports.append(_simple_report("floor-sets", "interval-catalogue", floors, {"depth": 8}))

    def transfer() -> tuple[bool, list[str]]:
        grid = [Fraction(i, 7) for i in range(8)]
        space = qpm.QPSpace.sorgenfrey_space(grid)
        witnesses = []
        for eps in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)):
            rep = qpm.hausdorff_net_transfer(space, eps)
            if not (rep.forward_ok and rep.backward_ok):
                witnesses.append(f"transfer failed at eps={eps}")
        return not witnesses, witnesses

    reports.append(
        _simple_report("net-transfer", "grid:8", transfer, {"grid": 8, "scales": "1/8,1/4,1/2"})
    )

    def probes() -> tuple[bool, list[str]]:
        grid = [Fraction(i, 4) for i in range(5)]
        space = qpm.QPSpace.sorgenfrey_space(grid)
        witnesses = []
        const = qpm.cauchy_probe(space, [Fraction(1, 2)] * 6)
        if not (const.is_cauchy and const.limit == Fraction(1, 2)):
            witnesses.append("constant sequence misclassified")
        harmonic = qpm.cauchy_probe(space, [Fraction(1, m) for m in range(1, 12)])
        if harmonic.is_cauchy:
            witnesses.append("harmonic sequence misclassified")
        tail = qpm.cauchy_probe(space, [Fraction(3, 4), Fraction(1, 4), Fraction(1, 4)])
        if not (tail.is_cauchy and tail.limit == Fraction(1, 4)):
            witnesses.append("eventually constant sequence misclassified")
        return not witnesses, witnesses

    reports.append(_simple_report("cauchy-probe", "grid:5", probes, {}))

    def grid_double_closure() -> tuple[bool, list[str]]:
        grid = [Fraction(i, 4) for i in range(9)]
        space = qpm.QPSpace.sorgenfrey_space(grid)
        inner = [x for x in grid if 0 < x < 1] + [x for x in grid if 1 < x < 2]
        witnesses = []
        both = qpm.double_closure_metric(space, inner)
        if Fraction(1) not in both:
            witnesses.append("junction point missing from the double closure")
        left = qpm.double_closure_metric(space, [x for x in grid if 0 < x < 1])
        if Fraction(1) in left:
            witnesses.append("junction point appeared for a single interval")
        everything = qpm.double_closure_metric(space, grid)
        if tuple(everything) != tuple(grid):
            witnesses.append("full grid not closed")
        return not witnesses, witnesses

    reports.append(_simple_report("grid-double-closure", "grid:9", grid_double_closure, {}))
    return reports


def _interval_bases() -> list[tuple[str, list[IntervalSet]]]:
    one = Fraction(1)
    return [
        ("singleton", [IntervalSet.point(0)]),
        ("unit", [IntervalSet.interval(0, 1)]),
        (
            "shrinking",
            [
                IntervalSet.interval(0, 1),
                IntervalSet.interval(0, Fraction(1, 2)),
                IntervalSet.interval(0, Fraction(1, 4)),
            ],
        ),
        (
            "gap",
            [
                IntervalSet.point(0).union(IntervalSet.interval(Fraction(1, 2), one)),
            ],
        ),
        (
            "half-open",
            [
                IntervalSet.interval(0, 1, lo_open=True, hi_open=False),
                IntervalSet.interval(Fraction(1, 4), 1, lo_open=True, hi_open=False),
            ],
        ),
    ]


def run_suite(suite: str, seed: int, caps: Caps | None = None) -> list[CheckReport]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    caps = caps or Caps()
    reports: list[CheckReport] = []
    if suite in ("all", "finite"):
        reports.extend(finite_suite(seed, caps))
    if suite in ("all", "symbolic"):
        reports.extend(symbolic_suite(seed, caps))
    if suite in ("all", "metric"):
        reports.extend(metric_suite(seed, caps))
    return reports
