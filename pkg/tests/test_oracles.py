"""Member-level oracles.

Every fast predicate in the package quantifies over filter generators and
the min-entourage, justified by monotonicity.  These tests recompute the
same predicates from the raw definitions, enumerating actual filter members
and entourage supersets on tiny spaces, and demand agreement.
"""
import random
from itertools import combinations

from quspace import filters as flt
from quspace import stability as st
from quspace.filters import PFilter
from quspace.relcore import QUSpace, Relation, bits, closure
from quspace.suites import catalogue_spaces, gen_space

TINY = [s for s in catalogue_spaces(max_points=3)]
RANDOM_TINY = [gen_space(3, k, seed) for k in (1, 2, 3) for seed in range(10)]


def members(space, f):
    """All member sets of a principal filter."""
    rest = space.ground.full & ~f.gen
    out = []
    sub = rest
    while True:
        out.append(f.gen | sub)
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return out


def entourages(space):
    """Every relation of the generated entourage filter: all reflexive
    supersets of the min-entourage.  Exponential; tiny spaces only."""
    n = space.ground.size
    m = space.min_entourage
    free = []
    for i in range(n):
        for j in range(n):
            if i != j and not m.contains_pair(i, j):
                free.append((i, j))
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            rows = list(m.rows)
            for i, j in extra:
                rows[i] |= 1 << j
            yield Relation(space.ground, tuple(rows))


def in_filter(space, f, mask):
    """Membership by member enumeration rather than the superset test."""
    return any(mask == m for m in members(space, f))


class TestStabilityOracle:
    def test_stable_matches_member_definition(self):
        for space in TINY[:40] + RANDOM_TINY:
            for f in flt.all_pfilters(space.ground):
                fast = flt.stability_profile(space, f).stable
                slow = True
                for u in entourages(space):
                    floor = space.ground.full
                    for mem in members(space, f):
                        floor &= u.image(mem)
                    if not f.contains(floor):
                        slow = False
                        break
                assert fast == slow

    def test_doubly_stable_matches_member_definition(self):
        for space in TINY[:30]:
            for f in flt.all_pfilters(space.ground):
                fast = flt.stability_profile(space, f).doubly_stable
                slow = True
                for u in entourages(space):
                    floor = space.ground.full
                    for mem in members(space, f):
                        floor &= u.preimage(mem) & u.image(mem)
                    if not f.contains(floor):
                        slow = False
                        break
                assert fast == slow

    def test_floor_set_is_infimum_over_members(self):
        for space in TINY[:40]:
            for f in flt.all_pfilters(space.ground):
                for u in space.base_ext:
                    floor = space.ground.full
                    for mem in members(space, f):
                        floor &= u.preimage(mem) & u.image(mem)
                    assert flt.u_sub_f(u, f) == floor


class TestPairOracle:
    def test_upper_membership_matches_member_definition(self):
        for space in TINY[:40]:
            for f in flt.all_pfilters(space.ground):
                for g in flt.all_pfilters(space.ground):
                    for u in space.base_ext:
                        floor = space.ground.full
                        for mem in members(space, f):
                            floor &= u.image(mem)
                        slow = in_filter(space, g, floor)
                        assert st.pair_in_u_plus(u, f, g) == slow

    def test_lower_membership_matches_member_definition(self):
        for space in TINY[:40]:
            for f in flt.all_pfilters(space.ground):
                for g in flt.all_pfilters(space.ground):
                    for u in space.base_ext:
                        floor = space.ground.full
                        for mem in members(space, g):
                            floor &= u.preimage(mem)
                        slow = in_filter(space, f, floor)
                        assert st.pair_in_u_minus(u, f, g) == slow

    def test_cauchy_pair_matches_member_box_search(self):
        for space in TINY[:40]:
            for f in flt.all_pfilters(space.ground):
                for g in flt.all_pfilters(space.ground):
                    fast = flt.is_cauchy_pair(space, f, g)
                    slow = True
                    for u in entourages(space):
                        found = False
                        for fm in members(space, f):
                            for gm in members(space, g):
                                if all(
                                    u.rows[x] & gm == gm for x in bits(fm)
                                ):
                                    found = True
                                    break
                            if found:
                                break
                        if not found:
                            slow = False
                            break
                    assert fast == slow

    def test_generalized_pair_matches_quantified_definition(self):
        for space in TINY[:30]:
            for f in flt.all_pfilters(space.ground):
                for g in flt.all_pfilters(space.ground):
                    fast = flt.is_generalized_cauchy_pair(space, f, g)
                    slow = all(
                        st.pair_in_u_d(u, f, g) for u in entourages(space)
                    )
                    assert fast == slow


class TestAdherenceOracle:
    def test_cluster_points_match_member_closure_intersection(self):
        for space in TINY[:40] + RANDOM_TINY:
            for f in flt.all_pfilters(space.ground):
                for d in ("forward", "conjugate"):
                    fast = flt.cluster_points(space, f, d)
                    slow = space.ground.full
                    for mem in members(space, f):
                        slow &= closure(space, mem, d)
                    assert fast == slow

    def test_convergence_matches_entourage_quantifier(self):
        for space in TINY[:30]:
            for f in flt.all_pfilters(space.ground):
                fast = flt.limit_points(space, f, "forward")
                slow = 0
                for x in range(space.ground.size):
                    if all(f.contains(u.rows[x]) for u in entourages(space)):
                        slow |= 1 << x
                assert fast == slow


class TestCompletionOracle:
    def test_member_box_entourages_match_generator_reduction(self):
        from quspace.relcore import is_t0

        for space in TINY:
            if not is_t0(space):
                continue
            bic = st.bicompletion(space)
            for u, lifted in zip(space.base_ext, bic.space.base):
                for i, f in enumerate(bic.points):
                    for j, g in enumerate(bic.points):
                        slow = False
                        for fm in members(space, f):
                            for gm in members(space, g):
                                if all(
                                    u.rows[x] & gm == gm for x in bits(fm)
                                ):
                                    slow = True
                        assert lifted.contains_pair(i, j) == slow

    def test_cauchy_filters_match_box_definition(self):
        for space in TINY[:30]:
            fast = {f.gen for f in flt.s_cauchy_filters(space)}
            slow = set()
            for f in flt.all_pfilters(space.ground):
                ok = True
                for u in entourages(space):
                    us = u.symmetrize()
                    if not any(
                        all(us.rows[x] & mem == mem for x in bits(mem))
                        for mem in members(space, f)
                    ):
                        ok = False
                        break
                if ok:
                    slow.add(f.gen)
            assert fast == slow
