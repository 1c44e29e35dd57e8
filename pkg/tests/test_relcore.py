import random

import pytest

from quspace.relcore import (
    GroundSet,
    QUSpace,
    Relation,
    SpaceValidationError,
    bits,
    closure,
    double_closure,
    full_relation,
    identity,
    image_table,
    preimage_table,
    relation_from_pairs,
    relation_from_rows,
    repair_base,
    subspace,
    t0_classes,
    transitive_core,
    validate,
    validate_base,
)


def pairs_of(rel):
    return set(rel.pairs())


def compose_oracle(r, s):
    """Boolean matrix product over explicit pair sets."""
    rp, sp = pairs_of(r), pairs_of(s)
    return {(x, z) for (x, y) in rp for (y2, z) in sp if y == y2}


def random_relation(rng, ground):
    rows = []
    for i in range(ground.size):
        row = 1 << i
        for j in range(ground.size):
            if rng.random() < 0.4:
                row |= 1 << j
        rows.append(row)
    return Relation(ground, tuple(rows))


def sierpinski():
    g = GroundSet(2)
    return QUSpace.build(g, [relation_from_pairs(g, [(0, 1)])])


class TestRelation:
    def test_identity_compose(self):
        g = GroundSet(3)
        rng = random.Random(7)
        r = random_relation(rng, g)
        assert identity(g).compose(r).rows == r.rows
        assert r.compose(identity(g)).rows == r.rows

    def test_compose_matches_matrix_oracle(self):
        g = GroundSet(3)
        r = relation_from_pairs(g, [(0, 1)])
        s = relation_from_pairs(g, [(1, 2)])
        composed = r.compose(s)
        assert composed.contains_pair(0, 2)
        assert pairs_of(composed) == compose_oracle(r, s)

    def test_full_absorbs(self):
        g = GroundSet(4)
        rng = random.Random(3)
        r = random_relation(rng, g)
        assert full_relation(g).compose(r).rows == full_relation(g).rows
        assert r.compose(full_relation(g)).rows == full_relation(g).rows

    def test_compose_random_against_oracle(self):
        rng = random.Random(11)
        for _ in range(100):
            g = GroundSet(rng.randint(1, 5))
            r, s = random_relation(rng, g), random_relation(rng, g)
            assert pairs_of(r.compose(s)) == compose_oracle(r, s)

    def test_compose_associative_and_inverse_law(self):
        rng = random.Random(5)
        for _ in range(200):
            g = GroundSet(rng.randint(1, 5))
            r, s, t = (random_relation(rng, g) for _ in range(3))
            assert r.compose(s).compose(t).rows == r.compose(s.compose(t)).rows
            assert r.compose(s).inverse().rows == s.inverse().compose(r.inverse()).rows

    def test_inverse_involution(self):
        rng = random.Random(13)
        for _ in range(50):
            g = GroundSet(rng.randint(1, 6))
            r = random_relation(rng, g)
            assert r.inverse().inverse().rows == r.rows

    def test_inverse_transposes(self):
        g = GroundSet(2)
        r = relation_from_pairs(g, [(0, 1)])
        assert r.inverse().rows == relation_from_pairs(g, [(1, 0)]).rows
        assert identity(g).inverse().rows == identity(g).rows

    def test_symmetrize(self):
        g = GroundSet(2)
        r = relation_from_pairs(g, [(0, 1)])
        assert r.symmetrize().rows == identity(g).rows
        assert full_relation(g).symmetrize().rows == full_relation(g).rows
        rng = random.Random(17)
        for _ in range(30):
            gg = GroundSet(rng.randint(1, 5))
            s = random_relation(rng, gg).symmetrize()
            assert s.is_symmetric()
            assert s.symmetrize().rows == s.rows

    def test_image(self):
        g = GroundSet(2)
        m = relation_from_pairs(g, [(0, 1)])
        assert m.image(0b01) == 0b11
        assert m.image(0) == 0
        assert identity(g).image(0b10) == 0b10
        rng = random.Random(23)
        for _ in range(50):
            gg = GroundSet(rng.randint(1, 5))
            r = random_relation(rng, gg)
            a = rng.randrange(1 << gg.size)
            oracle = 0
            for x in bits(a):
                oracle |= r.rows[x]
            assert r.image(a) == oracle
            assert a & ~r.image(a) == 0  # reflexivity makes images extensive

    def test_image_monotone_and_meet_bound(self):
        rng = random.Random(29)
        for _ in range(50):
            g = GroundSet(rng.randint(2, 5))
            u, v = random_relation(rng, g), random_relation(rng, g)
            for a in range(1 << g.size):
                meet = u.intersect(v).image(a)
                assert meet & ~(u.image(a) & v.image(a)) == 0

    def test_non_reflexive_rejected(self):
        g = GroundSet(2)
        with pytest.raises(ValueError, match="not reflexive"):
            Relation(g, (0b01, 0b01))

    def test_from_rows_repairs_diagonal(self):
        g = GroundSet(2)
        r = relation_from_rows(g, (0b10, 0b00))
        assert r.contains_pair(0, 0) and r.contains_pair(1, 1)


class TestValidation:
    def test_identity_base_valid(self):
        g = GroundSet(3)
        report = validate_base(g, [identity(g).rows])
        assert report.ok

    def test_two_step_base_valid(self):
        g = GroundSet(3)
        base = [relation_from_pairs(g, [(0, 1)]), relation_from_pairs(g, [(1, 2)])]
        report = validate_base(g, [r.rows for r in base])
        assert report.ok  # intersection is the identity

    def test_missing_diagonal_reported(self):
        g = GroundSet(2)
        report = validate_base(g, [(0b01, 0b01)])
        assert not report.ok
        assert any("non-reflexive" in issue for issue in report.issues)

    def test_non_transitive_min_reported(self):
        g = GroundSet(3)
        bad = relation_from_pairs(g, [(0, 1), (1, 2)])
        report = validate_base(g, [bad.rows])
        assert not report.ok
        assert any("non-transitive" in issue for issue in report.issues)
        with pytest.raises(SpaceValidationError):
            QUSpace.build(g, [bad])

    def test_validate_constructed_space(self):
        assert validate(sierpinski()).ok


class TestClosure:
    def test_whole_set_closed(self):
        s = sierpinski()
        assert closure(s, 0b11, "forward") == 0b11
        assert closure(s, 0b11, "conjugate") == 0b11

    def test_sierpinski_closures(self):
        s = sierpinski()
        assert closure(s, 0b01, "forward") == 0b01
        assert closure(s, 0b01, "conjugate") == 0b11

    def test_closure_against_neighborhood_oracle(self):
        rng = random.Random(31)
        for _ in range(40):
            g = GroundSet(rng.randint(1, 4))
            base = [random_relation(rng, g) for _ in range(rng.randint(1, 3))]
            repaired, _ = repair_base(g, base)
            space = QUSpace.build(g, repaired)
            for a in range(1 << g.size):
                # a point clusters iff its minimal neighborhood meets the set
                oracle = 0
                for x in range(g.size):
                    nbhd = g.full
                    for u in space.base:
                        nbhd &= u.rows[x]
                    if nbhd & a:
                        oracle |= 1 << x
                assert closure(space, a, "forward") == oracle

    def test_closure_idempotent_extensive_monotone(self):
        rng = random.Random(37)
        for _ in range(30):
            g = GroundSet(4)
            repaired, _ = repair_base(g, [random_relation(rng, g)])
            space = QUSpace.build(g, repaired)
            for d in ("forward", "conjugate"):
                for a in range(1 << g.size):
                    c = closure(space, a, d)
                    assert a & ~c == 0
                    assert closure(space, c, d) == c
                    b = a & rng.randrange(1 << g.size)
                    assert closure(space, b, d) & ~c == 0


class TestDoubleClosure:
    def test_singletons_doubly_closed_in_t0(self):
        s = sierpinski()
        for x in range(2):
            assert double_closure(s, 1 << x) == 1 << x

    def test_whole_set(self):
        s = sierpinski()
        assert double_closure(s, 0b11) == 0b11

    def test_idempotent_extensive_monotone_exhaustive(self):
        rng = random.Random(41)
        for _ in range(25):
            g = GroundSet(4)
            repaired, _ = repair_base(
                g, [random_relation(rng, g) for _ in range(rng.randint(1, 2))]
            )
            space = QUSpace.build(g, repaired)
            for a in range(1 << g.size):
                dc = double_closure(space, a)
                assert a & ~dc == 0
                assert double_closure(space, dc) == dc

    def test_one_sided_closed_sets_doubly_closed(self):
        rng = random.Random(43)
        for _ in range(25):
            g = GroundSet(4)
            repaired, _ = repair_base(g, [random_relation(rng, g)])
            space = QUSpace.build(g, repaired)
            for a in range(1 << g.size):
                for d in ("forward", "conjugate"):
                    c = closure(space, a, d)
                    assert double_closure(space, c) == c

    def test_union_can_grow_strictly(self):
        # three-point chain: the double closures of the endpoints are the
        # endpoints, but the union's double closure swallows the middle
        g = GroundSet(3)
        m = relation_from_pairs(g, [(1, 0), (2, 1), (2, 0)])
        space = QUSpace.build(g, [m])
        a, b = 0b001, 0b100
        separate = double_closure(space, a) | double_closure(space, b)
        joint = double_closure(space, a | b)
        assert separate == 0b101
        assert joint == 0b111
        assert separate & ~joint == 0 and joint & ~separate


class TestT0Classes:
    def test_identity_discrete(self):
        g = GroundSet(3)
        space = QUSpace.build(g, [identity(g)])
        assert t0_classes(space) == (0b001, 0b010, 0b100)

    def test_indiscrete_single_class(self):
        g = GroundSet(2)
        space = QUSpace.build(g, [full_relation(g)])
        assert t0_classes(space) == (0b11,)

    def test_sierpinski_discrete(self):
        assert t0_classes(sierpinski()) == (0b01, 0b10)


class TestRepairAndSubspace:
    def test_transitive_core_is_transitive(self):
        rng = random.Random(47)
        for _ in range(100):
            g = GroundSet(rng.randint(1, 5))
            core = transitive_core(random_relation(rng, g))
            assert core.is_transitive()

    def test_repair_produces_valid_space(self):
        rng = random.Random(53)
        for _ in range(100):
            g = GroundSet(rng.randint(2, 5))
            base = [random_relation(rng, g) for _ in range(rng.randint(1, 3))]
            repaired, notes = repair_base(g, base)
            space = QUSpace.build(g, repaired, notes)
            assert space.min_entourage.is_transitive()

    def test_repair_noop_when_valid(self):
        g = GroundSet(3)
        base = [identity(g)]
        repaired, notes = repair_base(g, base)
        assert repaired[0].rows == base[0].rows and notes == ()

    def test_subspace_restricts(self):
        g = GroundSet(3)
        chain = relation_from_pairs(g, [(0, 1), (1, 2), (0, 2)])
        space = QUSpace.build(g, [chain])
        sub, kept = subspace(space, 0b101)
        assert kept == (0, 2)
        assert sub.base[0].contains_pair(0, 1)  # 0 -> 2 survives reindexed
        assert not sub.base[0].contains_pair(1, 0)

    def test_tables_match_direct_ops(self):
        rng = random.Random(59)
        for _ in range(20):
            g = GroundSet(rng.randint(1, 5))
            r = random_relation(rng, g)
            img, pre = image_table(r), preimage_table(r)
            for a in range(1 << g.size):
                assert img[a] == r.image(a)
                assert pre[a] == r.preimage(a)
