from fractions import Fraction

import pytest

from sepsets.complsep import ComplSep, validate_complsep
from sepsets.induced import induce
from sepsets.kernel import FinSetoid, FnFamily, FnTable, IneqSet


@pytest.fixture
def x3():
    """Three-atom discrete carrier."""
    return FinSetoid.discrete("X", ("a", "b", "c"))


@pytest.fixture
def fn_f(x3):
    """Merges a and b, splits off c."""
    return FnTable(x3, {"a": Fraction(0), "b": Fraction(0), "c": Fraction(1)}, name="f")


@pytest.fixture
def fn_g(x3):
    """Splits a from b."""
    return FnTable(x3, {"a": Fraction(0), "b": Fraction(1), "c": Fraction(1)}, name="g")


@pytest.fixture
def fam_single(x3, fn_f):
    return FnFamily(x3, (fn_f,))


@pytest.fixture
def fam_pair(x3, fn_f, fn_g):
    return FnFamily(x3, (fn_f, fn_g))


@pytest.fixture
def ex_coarse():
    """Blocks {a,b},{c} with the cross-block inequality: the structure the
    single-member family induces."""
    setoid = FinSetoid("Xc", ("a", "b", "c"), (("a", "b"), ("c",)))
    neq = frozenset({("a", "c"), ("c", "a"), ("b", "c"), ("c", "b")})
    return IneqSet(setoid, neq)


@pytest.fixture
def ex_complsep(ex_coarse) -> ComplSep:
    fc = FnTable(
        ex_coarse.base, {"a": Fraction(0), "b": Fraction(0), "c": Fraction(1)}, name="fc"
    )
    built = validate_complsep(ex_coarse, FnFamily(ex_coarse.base, (fc,)))
    assert isinstance(built, ComplSep)
    return built


@pytest.fixture
def ex_discrete_cs(x3, fam_pair) -> ComplSep:
    """The separated structure on the discrete carrier with both functions."""
    ineq = IneqSet(x3, induce(x3, fam_pair).neq_pairs())
    built = validate_complsep(ineq, fam_pair)
    assert isinstance(built, ComplSep)
    return built


@pytest.fixture
def y2():
    return FinSetoid.discrete("Y", ("p", "q"))


@pytest.fixture
def y2_cs(y2) -> ComplSep:
    u = FnTable(y2, {"p": Fraction(0), "q": Fraction(1)}, name="u")
    fam = FnFamily(y2, (u,))
    built = validate_complsep(IneqSet(y2, induce(y2, fam).neq_pairs()), fam)
    assert isinstance(built, ComplSep)
    return built
