import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from quspace import qpm
from quspace.intervals import IntervalSet
from quspace.qpm import QPSpace, sorgenfrey


def grid(n, denom):
    return [F(i, denom) for i in range(n)]


class TestSorgenfrey:
    def test_anchor_values(self):
        assert sorgenfrey(0, F(1, 2)) == F(1, 2)
        assert sorgenfrey(F(1, 2), 0) == 1
        assert sorgenfrey(F(3, 7), F(3, 7)) == 0

    def test_symmetrization_closed_form(self):
        rng = random.Random(31)
        for _ in range(1000):
            x = F(rng.randint(-40, 40), rng.randint(1, 12))
            y = F(rng.randint(-40, 40), rng.randint(1, 12))
            if x == y:
                continue
            assert max(sorgenfrey(x, y), sorgenfrey(y, x)) == max(abs(x - y), F(1))

    def test_conjugate_involution(self):
        space = QPSpace.sorgenfrey_space(grid(5, 4))
        back = space.conjugate().conjugate()
        for x in space.points:
            for y in space.points:
                assert back.dist(x, y) == space.dist(x, y)

    def test_symmetric_space_fixed_by_symmetrization(self):
        space = QPSpace.build(grid(4, 2), lambda x, y: abs(x - y))
        sym = space.symmetrize()
        for x in space.points:
            for y in space.points:
                assert sym.dist(x, y) == space.dist(x, y)

    def test_triangle_validated_at_construction(self):
        def bad(x, y):
            if x == y:
                return F(0)
            if (x, y) in ((F(0), F(1)), (F(1), F(2))):
                return F(1, 100)
            return F(10)

        with pytest.raises(ValueError, match="triangle"):
            QPSpace.build([F(0), F(1), F(2)], bad)


class TestHausdorff:
    def test_self_distance_zero(self):
        space = QPSpace.sorgenfrey_space(grid(5, 4))
        for size in (1, 2, 3):
            for a in combinations(space.points, size):
                assert qpm.hausdorff_qpm(space, a, a) == 0

    def test_singleton_pair(self):
        space = QPSpace.sorgenfrey_space([F(0), F(1, 2), F(1)])
        assert qpm.hausdorff_qpm(space, [F(0)], [F(1, 2)]) == F(1, 2)

    def test_far_point_dominates(self):
        space = QPSpace.sorgenfrey_space([F(0), F(1, 2), F(1)])
        assert qpm.hausdorff_qpm(space, [F(0), F(1)], [F(1, 2)]) == 1

    def test_triangle_exhaustive_six_point_grid(self):
        points = grid(6, 5)
        space = QPSpace.sorgenfrey_space(points)
        subsets = []
        for size in range(1, 7):
            subsets.extend(combinations(points, size))
        table = {
            (a, b): qpm.hausdorff_qpm(space, a, b) for a in subsets for b in subsets
        }
        for a in subsets:
            for b in subsets:
                ab = table[(a, b)]
                for c in subsets:
                    assert table[(a, c)] <= ab + table[(b, c)]

    def test_membership_biconditional(self):
        points = grid(5, 4)
        space = QPSpace.sorgenfrey_space(points)
        subsets = []
        for size in range(1, 6):
            subsets.extend(combinations(points, size))
        for eps in (F(1, 8), F(1, 2), F(2)):
            for a in subsets:
                for b in subsets:
                    h = qpm.hausdorff_qpm(space, a, b)
                    if h == eps:
                        continue
                    assert (h < eps) == qpm.hausdorff_pair_in(space, a, b, eps)

    def test_empty_rejected(self):
        space = QPSpace.sorgenfrey_space(grid(3, 2))
        with pytest.raises(ValueError):
            qpm.hausdorff_qpm(space, [], [F(0)])


class TestDoubleClosureGrid:
    def test_junction_point_joins_union(self):
        points = [F(i, 4) for i in range(9)]
        space = QPSpace.sorgenfrey_space(points)
        inner = [x for x in points if 0 < x < 1 or 1 < x < 2]
        assert F(1) in qpm.double_closure_metric(space, inner)

    def test_single_interval_stays_closed(self):
        points = [F(i, 4) for i in range(9)]
        space = QPSpace.sorgenfrey_space(points)
        left = [x for x in points if 0 < x < 1]
        result = qpm.double_closure_metric(space, left)
        assert F(1) not in result
        assert set(result) == set(left)

    def test_whole_grid_closed(self):
        points = [F(i, 4) for i in range(9)]
        space = QPSpace.sorgenfrey_space(points)
        assert qpm.double_closure_metric(space, points) == tuple(points)


class TestCoverFact:
    def test_shrinking_sequence_covers(self):
        verdict = qpm.cover_fact_check(0, [F(1, m) for m in range(1, 129)], 2)
        assert verdict.covered and not verdict.counterwitnesses

    def test_constant_sequence_covers(self):
        verdict = qpm.cover_fact_check(0, [F(0)] * 8, 2)
        assert verdict.covered

    def test_stalled_sequence_rejected(self):
        with pytest.raises(ValueError, match="tolerance"):
            qpm.cover_fact_check(0, [F(1, 8)] * 10, 4)

    def test_random_convergent_sequences_never_fail(self):
        rng = random.Random(47)
        for _ in range(500):
            y = F(rng.randint(-20, 20), rng.randint(1, 10))
            n = rng.randint(1, 5)
            terms = []
            for m in range(n + 7):
                off = F(rng.randint(0, 3), 4) * F(1, 2**m)
                sign = -1 if rng.random() < 0.5 else 1
                terms.append(y + sign * off)
            verdict = qpm.cover_fact_check(y, terms, n)
            assert verdict.covered, (y, n, verdict.counterwitnesses)

    def test_two_sided_approach_covers(self):
        terms = [F((-1) ** m, 2**m) for m in range(12)]
        assert qpm.cover_fact_check(0, terms, 2).covered


class TestFloorSets:
    def test_singleton_base(self):
        base = [IntervalSet.point(0)]
        for n in (1, 3, 6):
            assert qpm.fn_sets(base, n) == IntervalSet.point(0)

    def test_closed_unit_interval(self):
        base = [IntervalSet.interval(0, 1)]
        assert qpm.fn_sets(base, 3) == IntervalSet.interval(0, 1)

    def test_descending_chain_floor(self):
        base = [
            IntervalSet.interval(0, 1),
            IntervalSet.interval(0, F(1, 2)),
            IntervalSet.interval(0, F(1, 4)),
        ]
        chain = qpm.fn_chain(base, 8)
        for prev, nxt in zip(chain, chain[1:]):
            assert nxt.is_subset(prev)
        assert qpm.fn_sets(base, 12) == qpm.double_cluster_trace(base)

    def test_gap_base_shrinks_strictly(self):
        base = [IntervalSet.point(0).union(IntervalSet.interval(F(1, 2), 1))]
        wide = qpm.fn_sets(base, 1)
        narrow = qpm.fn_sets(base, 4)
        assert narrow.is_subset(wide)
        assert wide != narrow
        assert narrow == qpm.double_cluster_trace(base)

    def test_non_descending_rejected(self):
        base = [IntervalSet.interval(0, F(1, 2)), IntervalSet.interval(0, 1)]
        with pytest.raises(ValueError, match="descending"):
            qpm.fn_sets(base, 2)

    def test_membership_queries(self):
        e = IntervalSet.interval(0, 1)
        em = IntervalSet.interval(F(1, 2), 1)
        a = qpm.anm_set(e, em, 2)
        b = qpm.bnm_set(e, em, 2)
        assert F(0) in a and F(3, 4) not in a
        assert F(0) in b and F(1, 2) not in b


class TestNets:
    def test_greedy_net_covers(self):
        space = QPSpace.sorgenfrey_space([F(i, 8) for i in range(9)])
        net = qpm.eps_net(space, F(1, 4))
        assert len(net) <= 5
        assert qpm.is_precompact_at(space, F(1, 4))

    def test_huge_radius_single_center(self):
        space = QPSpace.sorgenfrey_space([F(i, 8) for i in range(9)])
        assert qpm.eps_net(space, 2) == (F(0),)

    def test_nonpositive_radius_rejected(self):
        space = QPSpace.sorgenfrey_space(grid(3, 2))
        with pytest.raises(ValueError):
            qpm.eps_net(space, 0)

    def test_transfer_eight_point_grid(self):
        space = QPSpace.sorgenfrey_space([F(i, 7) for i in range(8)])
        for eps in (F(1, 8), F(1, 4), F(1, 2)):
            rep = qpm.hausdorff_net_transfer(space, eps)
            assert rep.forward_ok and rep.backward_ok
            assert rep.subsets == 255


class TestCauchyProbe:
    def test_constant(self):
        space = QPSpace.sorgenfrey_space(grid(5, 4))
        probe = qpm.cauchy_probe(space, [F(1, 2)] * 5)
        assert probe.is_cauchy and probe.limit == F(1, 2)

    def test_harmonic_not_cauchy(self):
        space = QPSpace.sorgenfrey_space(grid(5, 4))
        probe = qpm.cauchy_probe(space, [F(1, m) for m in range(1, 10)])
        assert not probe.is_cauchy and probe.limit is None

    def test_eventually_constant(self):
        space = QPSpace.sorgenfrey_space(grid(5, 4))
        probe = qpm.cauchy_probe(space, [F(3, 4), F(1, 4), F(1, 4), F(1, 4)])
        assert probe.is_cauchy and probe.limit == F(1, 4)

    def test_limit_found_among_candidates(self):
        space = QPSpace.sorgenfrey_space([F(0), F(1)])
        probe = qpm.cauchy_probe(space, [F(1, 3)] * 4, candidates=[F(1, 3)])
        assert probe.limit == F(1, 3)
