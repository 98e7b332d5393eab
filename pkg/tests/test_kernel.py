import random
from fractions import Fraction
from itertools import product

import pytest

from sepsets.errors import CarrierTooLarge, MissingEntry, NotInjective
from sepsets.generators import gen_family, gen_ineqset, gen_setoid
from sepsets.induced import induce
from sepsets.kernel import (
    Bounds,
    FinSetoid,
    FnFamily,
    FnTable,
    IneqSet,
    canonical_funspace_ineq,
    canonical_product_ineq,
    canonical_subset_ineq,
    check_ineq_axioms,
    enumerate_functions,
    function_carrier,
    identity_table,
    is_strongly_extensional,
    pair_atom,
    pointwise_equal,
    product_setoid,
    validate_function,
)


def blocked(name, atoms, blocks):
    return FinSetoid(name, atoms, blocks)


class TestValidateFunction:
    def test_constant_on_blocks_is_ok(self):
        dom = blocked("D", ("a", "b", "c"), (("a", "b"), ("c",)))
        f = FnTable(dom, {"a": Fraction(0), "b": Fraction(0), "c": Fraction(1)})
        assert validate_function(f) is None

    def test_split_block_is_reported(self):
        dom = blocked("D", ("a", "b", "c"), (("a", "b"), ("c",)))
        f = FnTable(dom, {"a": Fraction(0), "b": Fraction(1), "c": Fraction(1)})
        bad = validate_function(f)
        assert bad is not None and set(bad.atoms) == {"a", "b"}

    def test_discrete_domain_accepts_any_total_table(self):
        dom = FinSetoid.discrete("D", ("a", "b"))
        f = FnTable(dom, {"a": Fraction(3, 7), "b": Fraction(-1)})
        assert validate_function(f) is None

    def test_partial_table_raises(self):
        dom = FinSetoid.discrete("D", ("a", "b"))
        f = FnTable(dom, {"a": Fraction(0)})
        with pytest.raises(MissingEntry):
            validate_function(f)


class TestIneqAxioms:
    def test_discrete_full_relation_satisfies_everything(self):
        s = IneqSet(
            FinSetoid.discrete("S", ("a", "b")), frozenset({("a", "b"), ("b", "a")})
        )
        report = check_ineq_axioms(s)
        assert all(
            report.verdict(f"Ineq{k}").holds for k in range(1, 7)
        )
        assert report.is_apartness and report.is_tight and report.is_discrete

    def test_apart_inside_a_block_fails_the_first_law(self):
        s = IneqSet(
            blocked("S", ("a", "b", "c"), (("a", "b"), ("c",))),
            frozenset({("a", "b"), ("b", "a")}),
        )
        report = check_ineq_axioms(s)
        assert not report.ineq1.holds
        assert set(report.ineq1.witness.atoms) == {"a", "b"}

    def test_empty_relation(self):
        s = IneqSet(FinSetoid.discrete("S", ("a", "b")), frozenset())
        report = check_ineq_axioms(s)
        assert report.ineq1.holds and report.ineq2.holds
        assert report.ineq4.holds and report.ineq5.holds
        assert not report.ineq3.holds  # tight only when the equality is total
        one_block = IneqSet(blocked("T", ("a", "b"), (("a", "b"),)), frozenset())
        assert check_ineq_axioms(one_block).ineq3.holds


class TestStrongExtensionality:
    def test_identity_is_strongly_extensional(self):
        s = IneqSet(FinSetoid.discrete("S", ("a", "b")), frozenset({("a", "b"), ("b", "a")}))
        assert is_strongly_extensional(identity_table(s.base), s, s) is None

    def test_injection_from_trivially_unseparated_fails(self):
        src = IneqSet(FinSetoid.discrete("S", ("a", "b")), frozenset())
        dst = IneqSet(FinSetoid.discrete("T", ("p", "q")), frozenset({("p", "q"), ("q", "p")}))
        f = FnTable(src.base, {"a": "p", "b": "q"}, cod=dst.base)
        bad = is_strongly_extensional(f, src, dst)
        assert bad is not None and set(bad.atoms) == {"a", "b"}

    def test_constant_map_is_vacuously_strongly_extensional(self):
        src = IneqSet(FinSetoid.discrete("S", ("a", "b")), frozenset())
        dst = IneqSet(FinSetoid.discrete("T", ("p", "q")), frozenset({("p", "q"), ("q", "p")}))
        f = FnTable(src.base, {"a": "p", "b": "p"}, cod=dst.base)
        assert is_strongly_extensional(f, src, dst) is None


class TestProduct:
    def test_discrete_product_covers_componentwise_apartness(self):
        two = IneqSet(
            FinSetoid.discrete("2", ("0", "1")), frozenset({("0", "1"), ("1", "0")})
        )
        prod = canonical_product_ineq(two, two)
        assert len(prod.base.atoms) == 4
        assert prod.apart(pair_atom("0", "0"), pair_atom("1", "1"))

    def test_empty_factors_give_empty_relation(self):
        s = IneqSet(FinSetoid.discrete("S", ("a", "b")), frozenset())
        prod = canonical_product_ineq(s, s)
        assert prod.neq == frozenset()

    def test_singleton_factor_reduces_to_the_other(self, ex_coarse):
        one = IneqSet(FinSetoid.discrete("1", ("*",)), frozenset())
        prod = canonical_product_ineq(ex_coarse, one)
        expected = frozenset(
            (pair_atom(a, "*"), pair_atom(b, "*")) for (a, b) in ex_coarse.neq
        )
        assert prod.neq == expected


class TestFunctionSpace:
    def test_two_tables_into_a_separated_pair_are_apart(self):
        x = FinSetoid.discrete("X", ("*",))
        y = IneqSet(
            FinSetoid.discrete("Y", ("p", "q")), frozenset({("p", "q"), ("q", "p")})
        )
        space = canonical_funspace_ineq(x, y)
        assert len(space.base.atoms) == 2
        t0, t1 = space.base.atoms
        assert space.apart(t0, t1)

    def test_no_apartness_without_target_apartness(self):
        x = FinSetoid.discrete("X", ("*",))
        y = IneqSet(FinSetoid.discrete("Y", ("p", "q")), frozenset())
        space = canonical_funspace_ineq(x, y)
        assert space.neq == frozenset()

    def test_reflexive_pairs_never_apart(self):
        x = FinSetoid.discrete("X", ("a", "b"))
        y = IneqSet(
            FinSetoid.discrete("Y", ("p", "q")), frozenset({("p", "q"), ("q", "p")})
        )
        space = canonical_funspace_ineq(x, y)
        for t in space.base.atoms:
            assert not space.apart(t, t)

    def test_bound_refusal(self):
        x = FinSetoid.discrete("X", tuple(f"a{k}" for k in range(8)))
        y = IneqSet(FinSetoid.discrete("Y", ("p", "q", "r")), frozenset())
        with pytest.raises(CarrierTooLarge):
            canonical_funspace_ineq(x, y, Bounds(max_enum=100))


class TestSubset:
    def test_identity_embedding_reproduces_the_structure(self, ex_coarse):
        sub = canonical_subset_ineq(ex_coarse, identity_table(ex_coarse.base))
        assert sub.neq == ex_coarse.neq
        assert sub.base.same_carrier(ex_coarse.base)

    def test_singleton_subset_has_empty_relation(self, ex_coarse):
        a = FinSetoid.discrete("A", ("c",))
        sub = canonical_subset_ineq(ex_coarse, FnTable(a, {"c": "c"}, cod=ex_coarse.base))
        assert sub.neq == frozenset()

    def test_two_point_subset_pulls_back_the_relation(self, ex_coarse):
        a = FinSetoid.discrete("A", ("a", "c"))
        sub = canonical_subset_ineq(ex_coarse, FnTable(a, {"a": "a", "c": "c"}, cod=ex_coarse.base))
        assert sub.neq == frozenset({("a", "c"), ("c", "a")})

    def test_non_injective_embedding_rejected(self, ex_coarse):
        a = FinSetoid.discrete("A", ("u", "v"))
        emb = FnTable(a, {"u": "a", "v": "b"}, cod=ex_coarse.base)  # a and b are equal
        with pytest.raises(NotInjective):
            canonical_subset_ineq(ex_coarse, emb)


class TestEnumeration:
    def test_count_matches_the_block_formula(self):
        x = blocked("X", ("a", "b", "c"), (("a", "b"), ("c",)))
        y = FinSetoid.discrete("Y", ("p", "q", "r"))
        tables = enumerate_functions(x, y)
        # brute-force oracle: independent choices of target blocks
        assert len(tables) == len(list(product(range(3), repeat=2))) == 9
        keys = {tuple(t.value(a) for a in x.atoms) for t in tables}
        assert len(keys) == 9

    def test_singleton_target(self):
        x = FinSetoid.discrete("X", ("a", "b"))
        y = FinSetoid.discrete("Y", ("*",))
        assert len(enumerate_functions(x, y)) == 1

    def test_empty_domain_gives_one_empty_table(self):
        x = FinSetoid("X", (), ())
        y = FinSetoid.discrete("Y", ("p",))
        tables = enumerate_functions(x, y)
        assert len(tables) == 1 and tables[0].table == {}

    def test_all_results_respect_equalities(self):
        x = blocked("X", ("a", "b", "c"), (("a", "b"), ("c",)))
        y = blocked("Y", ("p", "q"), (("p", "q"),))
        for t in enumerate_functions(x, y):
            assert validate_function(t) is None


class TestGeneratedInvariants:
    def test_canonical_constructions_preserve_the_first_law(self):
        rng = random.Random(11)
        for _ in range(25):
            a = gen_ineqset(rng, 4)
            b = gen_ineqset(rng, 4)
            assert check_ineq_axioms(a).ineq1.holds
            prod = canonical_product_ineq(a, b)
            assert check_ineq_axioms(prod).ineq1.holds

    def test_funspace_preserves_the_first_law(self):
        rng = random.Random(12)
        for _ in range(10):
            x = gen_setoid(rng, 3)
            y = gen_ineqset(rng, 3)
            space = canonical_funspace_ineq(x, y)
            assert check_ineq_axioms(space).ineq1.holds

    def test_apartness_with_the_first_law_is_extensional(self):
        # the remark needs the first law: symmetry and cotransitivity alone
        # admit relations that are not extensional
        rng = random.Random(13)
        seen = 0
        for _ in range(120):
            s = gen_ineqset(rng, 5, lawful=rng.random() < 0.5)
            report = check_ineq_axioms(s)
            if report.ineq1.holds and report.is_apartness:
                seen += 1
                assert report.ineq2.holds
        assert seen > 10

    def test_projections_strongly_extensional_on_generated_products(self):
        rng = random.Random(14)
        for _ in range(15):
            a = gen_ineqset(rng, 4)
            b = gen_ineqset(rng, 4)
            prod_c = product_setoid(a.base, b.base)
            prod = canonical_product_ineq(a, b)
            assert is_strongly_extensional(prod_c.pr_left, prod, a) is None
            assert is_strongly_extensional(prod_c.pr_right, prod, b) is None


def test_pointwise_equality_uses_codomain_blocks():
    dom = FinSetoid.discrete("D", ("a",))
    cod = blocked("C", ("p", "q"), (("p", "q"),))
    f = FnTable(dom, {"a": "p"}, cod=cod)
    g = FnTable(dom, {"a": "q"}, cod=cod)
    assert pointwise_equal(f, g)


def test_function_carrier_tables_match_names():
    x = FinSetoid.discrete("X", ("a",))
    y = FinSetoid.discrete("Y", ("p", "q"))
    fc = function_carrier(x, y)
    assert set(fc.setoid.atoms) == set(fc.tables)
