import random
from fractions import Fraction

import pytest

from sepsets.errors import NotAMetric, NotASubfamily
from sepsets.generators import gen_family, gen_setoid
from sepsets.induced import (
    empty_subset,
    f1_report,
    induce,
    is_separating,
    metric_family,
    monotonicity_check,
)
from sepsets.kernel import (
    FinSetoid,
    FnFamily,
    FnTable,
    IneqSet,
    check_ineq_axioms,
    constant_table,
)


class TestInduce:
    def test_single_member_merges_and_witnesses(self, x3, fam_single, fn_f):
        rel = induce(x3, fam_single)
        assert rel.eq_blocks == (("a", "b"), ("c",))
        assert rel.neq_pairs() == frozenset(
            {("a", "c"), ("c", "a"), ("b", "c"), ("c", "b")}
        )
        w = rel.witnesses[("a", "c")]
        assert w.member is fn_f and w.gap == Fraction(1)

    def test_empty_family_makes_everything_equal(self, x3):
        rel = induce(x3, FnFamily(x3, ()))
        assert rel.eq_blocks == (("a", "b", "c"),)
        assert rel.neq_pairs() == frozenset()

    def test_constant_members_are_not_separating(self, x3):
        fam = FnFamily(x3, (constant_table(x3, Fraction(5)),))
        rel = induce(x3, fam)
        assert rel.eq_blocks == (("a", "b", "c"),)
        assert is_separating(x3, fam) == (False, ("a", "b"))

    def test_first_listed_member_wins_as_witness(self, x3, fn_f, fn_g):
        rel = induce(x3, FnFamily(x3, (fn_f, fn_g)))
        assert rel.witnesses[("a", "c")].member is fn_f  # f already splits a from c
        assert rel.witnesses[("a", "b")].member is fn_g  # only g splits a from b


class TestSeparating:
    def test_single_member_fails_with_counterexample(self, x3, fam_single):
        ok, pair = is_separating(x3, fam_single)
        assert not ok and set(pair) == {"a", "b"}

    def test_pair_separates(self, x3, fam_pair):
        assert is_separating(x3, fam_pair) == (True, None)

    def test_identity_sample_separates_one_point(self):
        one = FinSetoid.discrete("Q", ("q",))
        ident = FnTable(one, {"q": Fraction(7, 3)}, name="id")
        assert is_separating(one, FnFamily(one, (ident,))) == (True, None)


class TestEmptySubset:
    def test_always_empty(self, x3, fam_pair):
        assert empty_subset(x3, fam_pair) == []

    def test_empty_family(self, x3):
        assert empty_subset(x3, FnFamily(x3, ())) == []

    def test_empty_carrier(self):
        empty = FinSetoid("E", (), ())
        assert empty_subset(empty, FnFamily(empty, ())) == []


class TestMonotonicity:
    def test_growing_family(self, x3, fam_single, fam_pair):
        assert monotonicity_check(x3, fam_single, fam_pair).ok

    def test_equal_families(self, x3, fam_pair):
        assert monotonicity_check(x3, fam_pair, fam_pair).ok

    def test_empty_into_anything(self, x3, fam_pair):
        assert monotonicity_check(x3, FnFamily(x3, ()), fam_pair).ok

    def test_non_subfamily_rejected(self, x3, fam_single, fam_pair):
        with pytest.raises(NotASubfamily):
            monotonicity_check(x3, fam_pair, fam_single)

    def test_generated_chains(self):
        rng = random.Random(21)
        for _ in range(40):
            carrier = gen_setoid(rng, 5)
            small = gen_family(rng, carrier, max_members=3)
            extra = gen_family(rng, carrier, max_members=2)
            big = FnFamily(carrier, small.members + extra.members)
            assert monotonicity_check(carrier, small, big).ok


class TestBasicLawReport:
    def test_matching_declared_relation_passes_everything(self, x3, fam_pair):
        ineq = IneqSet(x3, induce(x3, fam_pair).neq_pairs())
        report = f1_report(ineq, fam_pair)
        assert report.ok
        assert report.clause("declared-apartness").status == "pass"
        assert report.clause("induced-below-declared").status == "pass"

    def test_empty_declared_relation_disables_the_last_clause(self, x3, fam_pair):
        ineq = IneqSet(x3, frozenset())
        report = f1_report(ineq, fam_pair)
        # members split atoms the declared relation never separates
        assert report.clause("induced-below-declared").status == "not-applicable"
        assert report.ok

    def test_empty_family_is_vacuous(self, x3):
        ineq = IneqSet(x3, frozenset())
        report = f1_report(ineq, FnFamily(x3, ()))
        for name in ("eq-below-induced", "induced-tight", "induced-apartness"):
            assert report.clause(name).status == "pass"


class TestMetricFamily:
    def test_two_points(self):
        z = FinSetoid.discrete("Z", ("p", "q"))
        fam = metric_family(z, {("p", "q"): Fraction(3, 2)})
        assert [m.name for m in fam.members] == ["d[p]", "d[q]"]
        rel = induce(z, fam)
        w = rel.witnesses[("p", "q")]
        assert w.gap == Fraction(3, 2)

    def test_singleton(self):
        z = FinSetoid.discrete("Z", ("p",))
        fam = metric_family(z, {})
        assert induce(z, fam).neq_pairs() == frozenset()

    def test_zero_pseudometric_on_a_block(self):
        z = FinSetoid("Z", ("p", "q"), (("p", "q"),))
        fam = metric_family(z, {("p", "q"): Fraction(0)})
        assert induce(z, fam).eq_blocks == (("p", "q"),)

    def test_triangle_violation_rejected(self):
        z = FinSetoid.discrete("Z", ("p", "q", "r"))
        d = {
            ("p", "q"): Fraction(1),
            ("q", "r"): Fraction(1),
            ("p", "r"): Fraction(5),
        }
        with pytest.raises(NotAMetric):
            metric_family(z, d)
        fam = metric_family(z, d, triangle=False)
        assert len(fam.members) == 3

    def test_asymmetry_rejected(self):
        z = FinSetoid.discrete("Z", ("p", "q"))
        with pytest.raises(NotAMetric):
            metric_family(z, {("p", "q"): Fraction(1), ("q", "p"): Fraction(2)})

    def test_missing_distance_rejected(self):
        z = FinSetoid.discrete("Z", ("p", "q", "r"))
        with pytest.raises(NotAMetric):
            metric_family(z, {("p", "q"): Fraction(1)})


class TestGeneratedLaws:
    def test_induced_relation_laws_hold_on_random_instances(self):
        rng = random.Random(22)
        for _ in range(60):
            carrier = gen_setoid(rng, 6)
            fam = gen_family(rng, carrier, max_members=4)
            rel = induce(carrier, fam)
            ineq = IneqSet(carrier, rel.neq_pairs())
            report = check_ineq_axioms(ineq)
            assert report.ineq1.holds and report.ineq2.holds
            assert report.ineq4.holds and report.ineq5.holds
            # tightness against the induced equality, decidably
            for a in carrier.atoms:
                for b in carrier.atoms:
                    if not rel.apart(a, b):
                        assert rel.eq(a, b)
            assert empty_subset(carrier, fam) == []

    def test_separation_iff_partitions_agree(self):
        rng = random.Random(23)
        for _ in range(60):
            carrier = gen_setoid(rng, 6)
            fam = gen_family(rng, carrier, max_members=4)
            rel = induce(carrier, fam)
            ok, pair = is_separating(carrier, fam)
            same = rel.eq_setoid().same_carrier(
                FinSetoid("ref", carrier.atoms, carrier.blocks)
            )
            assert ok == same
            if not ok:
                a, b = pair
                assert rel.eq(a, b) and not carrier.eq(a, b)
