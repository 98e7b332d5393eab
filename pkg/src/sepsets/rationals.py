"""Exact rational arithmetic: the desk-scale stand-in for the reals.

Values are `fractions.Fraction` throughout, which keeps every number in
reduced canonical form (positive denominator, gcd 1) and makes equality,
ordering and absolute value exact.  Apartness of two rationals is therefore
decidable: either the absolute difference is a positive rational (the gap),
or the two values are identical.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .errors import MalformedRational, PreconditionViolated

Rat = Fraction

_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def rat_apart(a: Rat, b: Rat) -> Rat | None:
    """Return the gap |a - b| if it is positive, else None.

    A None result means a and b are exactly equal.
    """
    gap = abs(a - b)
    return gap if gap > 0 else None


def rat_cotrans(a: Rat, b: Rat, z: Rat) -> tuple[str, Rat]:
    """Resolve cotransitivity at z for a pair a, b that are apart.

    Returns ("a", gap) when the chosen disjunct is z apart from a, and
    ("b", gap) when it is z apart from b.  The disjunct with the larger
    gap wins; on a tie the first disjunct (z apart from a) is chosen, so
    the output is deterministic.
    """
    if rat_apart(a, b) is None:
        raise PreconditionViolated(f"cotransitivity needs apart endpoints, got {a} = {b}")
    gap_a = abs(z - a)
    gap_b = abs(z - b)
    if gap_a >= gap_b:
        return "a", gap_a
    return "b", gap_b


def parse_rational(text: str, line: int = 0, col: int = 0) -> Rat:
    """Parse a canonical rational literal "p/q" or "p".

    Only reduced literals with a positive denominator are accepted; a
    non-canonical literal is rejected with a suggestion of its reduced form.
    """
    m = _RAT_RE.match(text)
    if m is None:
        raise MalformedRational(f"not a rational literal: {text!r}", line, col)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise MalformedRational(f"zero denominator in {text!r}", line, col)
    if gcd(abs(num), den) != 1 or (m.group(2) is not None and den == 1):
        suggestion = format_rational(Fraction(num, den))
        raise MalformedRational(
            f"non-canonical rational {text!r}; write {suggestion!r}", line, col
        )
    return Fraction(num, den)


def format_rational(q: Rat) -> str:
    """Canonical literal for q: "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
