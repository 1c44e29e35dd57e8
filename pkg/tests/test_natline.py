import random
from itertools import combinations

import pytest

from quspace import natline as nl
from quspace.natline import (
    COFINITE_FILTER,
    EMPTY,
    GFILTER,
    LEQ,
    NATS,
    CofSet,
    SymEntourage,
    SymFilter,
    Truncation,
)
from quspace.relcore import GroundSet, QUSpace, full_relation, identity, relation_from_pairs
from quspace.suites import sierpinski


def cofsets_for_tests(bound=12):
    yield CofSet.finite((1,))
    yield CofSet.finite((1, 2, 3))
    yield CofSet.finite((5,))
    yield CofSet.finite((2, 7, 11))
    yield NATS
    yield CofSet.cofinite_without((1,))
    yield CofSet.cofinite_without((1, 3))
    yield CofSet.cofinite_without(range(2, bound + 1))


class TestCofSet:
    def test_membership(self):
        a = CofSet.cofinite_without((2, 5))
        assert 1 in a and 3 in a and 2 not in a and 5 not in a

    def test_min_element(self):
        assert CofSet.finite((4, 9)).min_element() == 4
        assert CofSet.cofinite_without((1, 2)).min_element() == 3
        assert EMPTY.min_element() is None

    def test_algebra_against_truncations(self):
        rng = random.Random(1)
        n = 500
        for _ in range(1000):
            a = CofSet(rng.random() < 0.5, frozenset(rng.randint(1, 60) for _ in range(rng.randint(0, 8))))
            b = CofSet(rng.random() < 0.5, frozenset(rng.randint(1, 60) for _ in range(rng.randint(0, 8))))
            assert a.union(b).truncate(n) == a.truncate(n) | b.truncate(n)
            assert a.intersection(b).truncate(n) == a.truncate(n) & b.truncate(n)
            assert a.difference(b).truncate(n) == a.truncate(n) - b.truncate(n)
            assert a.complement().complement() == a
            assert a.union(b).complement() == a.complement().intersection(b.complement())
            assert a.intersection(b).complement() == a.complement().union(b.complement())

    def test_subset(self):
        assert CofSet.finite((1, 2)).is_subset(NATS)
        assert not NATS.is_subset(CofSet.finite((1, 2)))
        assert CofSet.cofinite_without((1, 2)).is_subset(CofSet.cofinite_without((1,)))


class TestEntourageForms:
    def test_order_image_of_anchor_is_everything(self):
        assert LEQ.image(CofSet.finite((1,))) == NATS

    def test_order_preimage_of_cofinite_is_everything(self):
        for g in (NATS, CofSet.cofinite_without((1, 5))):
            assert LEQ.preimage(g) == NATS

    def test_puncture_relation_images(self):
        t2 = SymEntourage(False, frozenset((2,)))
        assert t2.image(CofSet.finite((2,))) == NATS
        assert t2.image(CofSet.finite((3,))) == NATS.difference(CofSet.finite((2,)))
        assert t2.preimage(CofSet.finite((2,))) == CofSet.finite((2,))
        assert t2.preimage(CofSet.finite((3,))) == NATS

    def test_punctured_order_image_of_anchor(self):
        e = SymEntourage(True, frozenset((2, 3)))
        img = e.image(CofSet.finite((1,)))
        assert img == NATS.difference(CofSet.finite((2, 3)))

    def test_forms_match_truncation_exhaustively_small_punctures(self):
        # breadth shrinks as the truncation grows: pairs of punctures at the
        # small models, singletons at the big one; the sampled test below
        # covers wide puncture sets at the big model
        points = range(1, 13)
        sets = list(cofsets_for_tests())
        plans = ((20, 2), (50, 2), (200, 1))
        for n, max_size in plans:
            for with_leq in (True, False):
                for size in range(max_size + 1):
                    for punct in combinations(points, size):
                        e = SymEntourage(with_leq, frozenset(punct))
                        for a in sets:
                            assert nl.truncation_agrees(e, a, n), (e, a, n)

    def test_forms_match_truncation_sampled_large(self):
        rng = random.Random(7)
        sets = list(cofsets_for_tests())
        for _ in range(100):
            punct = frozenset(rng.sample(range(1, 13), rng.randint(0, 12)))
            e = SymEntourage(rng.random() < 0.5, punct)
            for a in sets:
                assert nl.truncation_agrees(e, a, 200)

    def test_pair_membership_consistent_with_rows(self):
        e = SymEntourage(True, frozenset((3,)))
        t = Truncation(e, 30)
        for x in range(1, 31):
            for y in range(1, 31):
                assert e.contains_pair(x, y) == bool(t.rows[x - 1] >> (y - 1) & 1)

    def test_reflexive(self):
        rng = random.Random(11)
        for _ in range(50):
            e = SymEntourage(rng.random() < 0.5, frozenset(rng.sample(range(1, 13), 3)))
            for x in range(1, 20):
                assert e.contains_pair(x, x)

    def test_intersection_stays_in_family(self):
        a = SymEntourage(True, frozenset((1,)))
        b = SymEntourage(False, frozenset((2, 4)))
        c = a.intersection(b)
        assert c.with_leq and c.punctures == frozenset((1, 2, 4))


class TestDistinguishedFilter:
    def test_membership(self):
        assert GFILTER.contains(NATS)
        assert GFILTER.contains(CofSet.cofinite_without((2, 9)))
        assert not GFILTER.contains(CofSet.cofinite_without((1,)))
        assert not GFILTER.contains(CofSet.finite((1, 2, 3)))

    def test_intersection_is_anchor(self):
        assert GFILTER.members_intersection() == CofSet.finite((1,))

    def test_floor_in_filter_for_plain_order(self):
        floor = nl.sym_u_sub_f(LEQ, GFILTER)
        assert floor.cofinite and 1 in floor
        assert GFILTER.contains(floor)

    def test_floor_for_principal_everything(self):
        f = SymFilter("principal", NATS)
        assert nl.sym_u_sub_f(LEQ, f) == NATS

    def test_floor_sweep_stays_in_filter(self):
        rng = random.Random(13)
        for _ in range(20):
            punct = frozenset(rng.sample(range(1, 13), rng.randint(0, 12)))
            e = SymEntourage(rng.random() < 0.5, punct)
            floor = nl.sym_u_sub_f(e, GFILTER)
            assert GFILTER.contains(floor)
            assert nl.floor_truncation_agrees(e, GFILTER, 200)

    def test_floor_truncation_for_principal(self):
        rng = random.Random(17)
        for base in (CofSet.finite((1, 4)), CofSet.cofinite_without((2,))):
            f = SymFilter("principal", base)
            for _ in range(10):
                punct = frozenset(rng.sample(range(1, 13), rng.randint(0, 6)))
                e = SymEntourage(rng.random() < 0.5, punct)
                assert nl.floor_truncation_agrees(e, f, 200)

    def test_cluster_points(self):
        assert nl.sym_cluster_points(GFILTER, "forward") == NATS
        assert nl.sym_cluster_points(GFILTER, "conjugate") == CofSet.finite((1,))
        assert nl.sym_double_cluster_points(GFILTER) == CofSet.finite((1,))

    def test_cluster_points_of_catalogue_filters(self):
        assert nl.sym_cluster_points(COFINITE_FILTER, "conjugate") == EMPTY
        assert nl.sym_double_cluster_points(COFINITE_FILTER) == EMPTY
        small = SymFilter("principal", CofSet.finite((2, 5)))
        assert nl.sym_cluster_points(small, "forward") == CofSet.finite((2, 5))
        assert nl.sym_double_cluster_points(small) == CofSet.finite((2, 5))
        wide = SymFilter("principal", CofSet.cofinite_without((3,)))
        assert nl.sym_cluster_points(wide, "forward") == NATS
        assert nl.sym_cluster_points(wide, "conjugate") == CofSet.cofinite_without((3,))

    def test_cofinite_filter_not_stable(self):
        stable, witness = nl.sym_is_stable(COFINITE_FILTER, bound_s=3)
        assert not stable and witness is not None and witness.with_leq

    def test_principal_filters_stable(self):
        for base in (CofSet.finite((1,)), CofSet.finite((2, 7)), NATS):
            stable, _ = nl.sym_is_stable(SymFilter("principal", base), bound_s=4)
            assert stable

    def test_symmetrized_facts(self):
        s_stable, has_limit = nl.gfilter_symmetrized_facts()
        assert not s_stable and not has_limit


class TestTopologyShape:
    def test_forward_fattenings_cofinite(self):
        rng = random.Random(19)
        for _ in range(50):
            punct = frozenset(rng.sample(range(1, 13), rng.randint(0, 8)))
            e = SymEntourage(rng.random() < 0.5, punct)
            for x in (1, 2, 7, 40):
                assert e.image(CofSet.finite((x,))).cofinite

    def test_cofinite_sets_are_open(self):
        # a cofinite set is a neighborhood of each of its points once the
        # punctures swallow its complement
        for missing in ((), (2,), (3, 8)):
            o = CofSet.cofinite_without(missing)
            for x in (1, 5, 30):
                if x not in o:
                    continue
                e = SymEntourage(True, frozenset(missing))
                assert e.image(CofSet.finite((x,))).is_subset(o.union(CofSet.finite((x,))))

    def test_finite_sets_not_open(self):
        rng = random.Random(23)
        o = CofSet.finite((1, 2, 3))
        for _ in range(30):
            punct = frozenset(rng.sample(range(1, 13), rng.randint(0, 8)))
            e = SymEntourage(True, punct)
            assert not e.image(CofSet.finite((1,))).is_subset(o)

    def test_conjugate_isolates_punctured_points(self):
        for x in (2, 5, 9):
            e = SymEntourage(True, frozenset((x,)))
            assert e.preimage(CofSet.finite((x,))) == CofSet.finite((x,))


class TestContraReport:
    def test_small_bounds_pass(self):
        report = nl.verify_contra(3, 24)
        assert report.ok, report.witnesses

    def test_bounds_carried(self):
        report = nl.verify_contra(3, 24)
        assert report.bounds["bound_s"] == 3 and report.bounds["bound_n"] == 24

    def test_bounds_too_small_rejected(self):
        with pytest.raises(ValueError):
            nl.verify_contra(2, 200)
        with pytest.raises(ValueError):
            nl.verify_contra(5, 10)

    def test_residue_probe_membership(self):
        # membership in the residue filter is membership of the anchored
        # superset in the source filter
        anchor = CofSet.finite((1,))
        for a in (NATS, CofSet.cofinite_without((1,)), CofSet.finite((2, 3))):
            in_residue = GFILTER.contains(a.union(anchor))
            assert in_residue == COFINITE_FILTER.contains(a)


class TestIsolatedPointCriterion:
    def test_identity_space(self):
        g = GroundSet(3)
        space = QUSpace.build(g, [identity(g)])
        outcome = nl.verify_bei(space)
        assert outcome.ok

    def test_fan_space(self):
        g = GroundSet(4)
        fan = relation_from_pairs(g, [(0, 1), (0, 2)])
        outcome = nl.verify_bei(QUSpace.build(g, [fan]))
        assert outcome.ok

    def test_sierpinski(self):
        assert nl.verify_bei(sierpinski()).ok

    def test_violation_names_point(self):
        g = GroundSet(3)
        chain = relation_from_pairs(g, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(ValueError, match="point 2"):
            nl.verify_bei(QUSpace.build(g, [chain]))

    def test_indiscrete_rejected(self):
        g = GroundSet(2)
        with pytest.raises(ValueError, match="point"):
            nl.verify_bei(QUSpace.build(g, [full_relation(g)]))
