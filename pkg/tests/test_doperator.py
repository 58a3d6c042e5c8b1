from __future__ import annotations

import random

import pytest

import oracles
from catbase import (
    InputError,
    OperatorTable,
    PointSet,
    TheoremViolation,
    basic_topology,
    cluster_operator,
    cluster_points,
    d_topology,
    validate_operator,
)
from catbase.doperator import ADDITIVITY, SINGULAR, additive_closure
from catbase.search import random_operator
from conftest import ps, valid_bases


class TestClusterPoints:
    def test_examples(self, sier, indisc2):
        assert cluster_points(sier, ps(2, 1)) == PointSet.full(2)
        assert cluster_points(sier, PointSet.empty(2)) == PointSet.empty(2)
        assert cluster_points(indisc2, ps(2, 0)) == PointSet.full(2)

    def test_matches_oracle_on_n3_bases(self):
        for base in valid_bases(3)[::4]:
            for s in range(8):
                got = cluster_points(base, PointSet(3, s)).bits
                want = oracles.cluster_points_direct(base.region_masks(), 3, s)
                assert got == want


class TestClusterOperator:
    def test_tables(self, sier, indisc2, disc3):
        assert cluster_operator(sier).table == (0, 0, 3, 3)
        assert cluster_operator(indisc2).table == (0, 3, 3, 3)
        assert cluster_operator(disc3).table == tuple(range(8))

    def test_always_admissible(self):
        for base in valid_bases(3):
            assert validate_operator(base, cluster_operator(base)) == ()


class TestValidateOperator:
    def test_identity_on_disc3_valid(self, disc3):
        assert validate_operator(disc3, OperatorTable(3, tuple(range(8)))) == ()

    def test_identity_on_sier_breaks_singular(self, sier):
        bad = validate_operator(sier, OperatorTable(2, (0, 1, 2, 3)))
        assert any(v.kind == SINGULAR and v.s == ps(2, 0) for v in bad)

    def test_constant_full_on_indisc2_valid(self, indisc2):
        table = OperatorTable(2, (0, 3, 3, 3))
        assert validate_operator(indisc2, table) == ()

    def test_additivity_violation_found(self, indisc2):
        # Fails D({0}|{1}) = D({0}) | D({1}).
        bad = validate_operator(indisc2, OperatorTable(2, (0, 1, 2, 0)))
        assert any(v.kind == ADDITIVITY for v in bad)

    def test_paranoid_agrees_with_generator_check(self, disc3):
        rng = random.Random(5)
        for _ in range(30):
            table = OperatorTable(3, tuple(rng.randrange(8) for _ in range(8)))
            fast = validate_operator(disc3, table)
            slow = validate_operator(disc3, table, paranoid=True)
            assert (fast == ()) == (slow == ())

    def test_size_mismatch(self, sier, disc3):
        with pytest.raises(InputError):
            validate_operator(sier, OperatorTable(3, tuple(range(8))))


class TestOperatorTable:
    def test_shape_enforced(self):
        with pytest.raises(InputError):
            OperatorTable(2, (0, 1, 2))
        with pytest.raises(InputError):
            OperatorTable(2, (0, 1, 2, 4))

    def test_from_mapping_requires_total(self):
        with pytest.raises(InputError):
            OperatorTable.from_mapping(2, {0: 0, 1: 1})
        table = OperatorTable.from_mapping(2, {0: 0, 1: 0, 2: 3, 3: 3})
        assert table.table == (0, 0, 3, 3)

    def test_of_and_singletons(self, sier):
        table = cluster_operator(sier)
        assert table.of(ps(2, 1)) == PointSet.full(2)
        assert table.singleton_values() == (0, 3)
        with pytest.raises(InputError):
            table.of(ps(3, 1))

    def test_additive_closure_is_union_of_singletons(self):
        vals = (5, 2, 4)
        table = additive_closure(3, vals)
        for s in range(8):
            want = 0
            for x in range(3):
                if s >> x & 1:
                    want |= vals[x]
            assert table[s] == want


class TestDTopology:
    def test_examples(self, sier, disc3):
        assert d_topology(sier, cluster_operator(sier)).open_masks() == (0, 2, 3)
        assert d_topology(disc3, cluster_operator(disc3)).open_masks() == tuple(range(8))
        const_full = OperatorTable(3, (0,) + (7,) * 7)
        assert d_topology(disc3, const_full).open_masks() == (0, 7)

    def test_inadmissible_table_trips_the_guard(self, sier):
        with pytest.raises(TheoremViolation):
            d_topology(sier, OperatorTable(2, (3, 0, 0, 0)))

    def test_matches_direct_tau(self, disc3):
        rng = random.Random(9)
        for _ in range(20):
            op = random_operator(disc3, rng.randrange(10**6))
            t = d_topology(disc3, op)
            assert t.open_masks() == oracles.tau_direct(op.table, 3)


class TestBasicTopology:
    def test_examples(self, sier, indisc2, disc3):
        assert basic_topology(sier).open_masks() == (0, 2, 3)
        assert basic_topology(indisc2).open_masks() == (0, 3)
        assert basic_topology(disc3).open_masks() == tuple(range(8))


class TestOperatorLaws:
    def _operators(self, base, count, seed):
        return [random_operator(base, seed + i) for i in range(count)]

    def test_monotone(self):
        for base in valid_bases(3)[::6]:
            for op in self._operators(base, 5, 100):
                for s in range(8):
                    for t in range(8):
                        if s & ~t == 0:
                            assert op.table[s] & ~op.table[t] == 0

    def test_difference_bound(self):
        for base in valid_bases(3)[::6]:
            for op in self._operators(base, 5, 200):
                for s in range(8):
                    for t in range(8):
                        assert (op.table[s] & ~op.table[t]) & ~op.table[s & ~t] == 0

    def test_intersection_bound(self):
        rng = random.Random(3)
        for base in valid_bases(3)[::6]:
            for op in self._operators(base, 3, 300):
                for _ in range(10):
                    picks = [rng.randrange(8) for _ in range(rng.randrange(1, 5))]
                    inter = (1 << 3) - 1
                    for p in picks:
                        inter &= p
                    image_inter = op.table[inter]
                    for p in picks:
                        assert image_inter & ~op.table[p] == 0

    def test_monotonicity_derived_not_stored(self, sier):
        # The table type itself accepts non-monotone data; admissibility
        # checks are what reject it.
        table = OperatorTable(2, (0, 3, 0, 0))
        assert validate_operator(sier, table) != ()
