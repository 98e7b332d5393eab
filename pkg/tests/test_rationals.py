from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sepsets.errors import MalformedRational, PreconditionViolated
from sepsets.rationals import format_rational, parse_rational, rat_apart, rat_cotrans

rationals = st.fractions(max_denominator=64)


def test_apart_identity():
    assert rat_apart(Fraction(1, 2), Fraction(1, 2)) is None


def test_apart_unit_gap():
    assert rat_apart(Fraction(0), Fraction(1)) == Fraction(1)


def test_apart_exact_subtraction():
    # oracle: 2/3 - 1/6 = 4/6 - 1/6 = 3/6 = 1/2, exactly
    assert rat_apart(Fraction(2, 3), Fraction(1, 6)) == Fraction(1, 2)


def test_cotrans_tie_prefers_first_disjunct():
    # both gaps are exactly 1/2
    assert rat_cotrans(Fraction(0), Fraction(1), Fraction(1, 2)) == ("a", Fraction(1, 2))


def test_cotrans_at_endpoint():
    assert rat_cotrans(Fraction(0), Fraction(1), Fraction(0)) == ("b", Fraction(1))


def test_cotrans_larger_gap_wins():
    # |3/4 - 0| = 3/4 beats |3/4 - 1| = 1/4
    assert rat_cotrans(Fraction(0), Fraction(1), Fraction(3, 4)) == ("a", Fraction(3, 4))


def test_cotrans_requires_apart_endpoints():
    with pytest.raises(PreconditionViolated):
        rat_cotrans(Fraction(1), Fraction(1), Fraction(0))


@given(rationals, rationals)
def test_apartness_is_symmetric_and_tight(a, b):
    gap_ab = rat_apart(a, b)
    gap_ba = rat_apart(b, a)
    assert (gap_ab is None) == (gap_ba is None)
    if gap_ab is not None:
        assert gap_ab == gap_ba > 0
    else:
        assert a == b  # tightness: not apart means equal


@given(rationals, rationals)
def test_apartness_contradicts_equality(a, b):
    if a == b:
        assert rat_apart(a, b) is None


@given(rationals, rationals, rationals)
def test_cotransitivity_resolves_exactly(a, b, z):
    if rat_apart(a, b) is None:
        return
    which, gap = rat_cotrans(a, b, z)
    assert gap > 0
    if which == "a":
        assert rat_apart(z, a) == gap
    else:
        assert rat_apart(z, b) == gap


@given(rationals)
def test_literal_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize(
    "text,suggestion",
    [("2/4", "1/2"), ("0/5", "0"), ("3/1", "3"), ("-2/4", "-1/2")],
)
def test_non_canonical_literals_rejected(text, suggestion):
    with pytest.raises(MalformedRational) as exc:
        parse_rational(text)
    assert suggestion in str(exc.value)


@pytest.mark.parametrize("text", ["", "x", "1/0", "1/-2", "1.5"])
def test_malformed_literals_rejected(text):
    with pytest.raises(MalformedRational):
        parse_rational(text)
