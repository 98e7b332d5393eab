"""Relations induced on a carrier by a family of rational-valued functions.

A family F induces an equality (all members agree exactly) and an
inequality (some member separates with a positive gap).  The induced
inequality is materialized as a full pair relation with one stored witness
per pair, so later reports can replay the separating member instead of
recomputing it.  Witness selection is deterministic: the first member in
the family's listed order wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import CarrierMismatch, NotAMetric, NotASubfamily
from .kernel import (
    ClauseVerdict,
    FinSetoid,
    FnFamily,
    FnTable,
    IneqSet,
    Pair,
    Witness,
    check_ineq_axioms,
    is_strongly_extensional,
)
from .rationals import Rat, format_rational, rat_apart


@dataclass(frozen=True, eq=False)
class InducedRelations:
    """Both induced relations on a carrier, with witnesses for the inequality."""

    carrier: FinSetoid
    family: FnFamily
    eq_blocks: tuple[tuple[str, ...], ...]
    witnesses: Mapping[Pair, Witness]

    def eq_setoid(self, name: str = "") -> FinSetoid:
        return FinSetoid(name or f"{self.carrier.name}~", self.carrier.atoms, self.eq_blocks)

    def neq_pairs(self) -> frozenset[Pair]:
        return frozenset(self.witnesses)

    def as_ineqset(self, name: str = "") -> IneqSet:
        """The induced structure: carrier re-equipped with both induced relations."""
        return IneqSet(self.eq_setoid(name), self.neq_pairs())

    def eq(self, x: str, y: str) -> bool:
        for block in self.eq_blocks:
            if x in block:
                return y in block
        raise KeyError(x)

    def apart(self, x: str, y: str) -> bool:
        return (x, y) in self.witnesses


def induce(x: FinSetoid, f: FnFamily) -> InducedRelations:
    """Compute both induced relations by exhaustion over pairs and members."""
    if not f.carrier.same_carrier(x):
        raise CarrierMismatch("family lives on a different carrier")
    signature = {a: tuple(m.value(a) for m in f.members) for a in x.atoms}
    blocks: dict[tuple, list[str]] = {}
    for a in x.atoms:
        blocks.setdefault(signature[a], []).append(a)
    witnesses: dict[Pair, Witness] = {}
    for a in x.atoms:
        for b in x.atoms:
            for m in f.members:
                gap = rat_apart(m.value(a), m.value(b))
                if gap is not None:
                    witnesses[(a, b)] = Witness("apart", atoms=(a, b), member=m, gap=gap)
                    break
    return InducedRelations(x, f, tuple(map(tuple, blocks.values())), witnesses)


def is_separating(x: FinSetoid, f: FnFamily) -> tuple[bool, Pair | None]:
    """True when the induced equality refines the carrier equality.

    A negative answer carries the first counterexample pair: two atoms the
    family cannot tell apart that the carrier declares distinct.
    """
    rel = induce(x, f)
    for block in rel.eq_blocks:
        for a in block:
            for b in block:
                if not x.eq(a, b):
                    return False, (a, b)
    return True, None


def empty_subset(x: FinSetoid, f: FnFamily) -> list[str]:
    """Atoms apart from themselves; empty in exact arithmetic, computed honestly."""
    rel = induce(x, f)
    return [a for a in x.atoms if rel.apart(a, a)]


@dataclass(frozen=True, eq=False)
class MonotonicityReport:
    clauses: tuple[ClauseVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(not c.failed for c in self.clauses)


def monotonicity_check(x: FinSetoid, f: FnFamily, f_prime: FnFamily) -> MonotonicityReport:
    """Verify the four inclusions that growing a family must respect."""
    if not f.is_subfamily_of(f_prime):
        raise NotASubfamily("first family is not pointwise contained in the second")
    small = induce(x, f)
    big = induce(x, f_prime)

    clauses = []

    verdict = ClauseVerdict("eq-antitone", "pass")
    for a in x.atoms:
        for b in x.atoms:
            if big.eq(a, b) and not small.eq(a, b):
                verdict = ClauseVerdict(
                    "eq-antitone", "fail", witness=Witness("violation", atoms=(a, b))
                )
                break
        if verdict.failed:
            break
    clauses.append(verdict)

    verdict = ClauseVerdict("neq-monotone", "pass")
    for pair in small.neq_pairs():
        if pair not in big.neq_pairs():
            verdict = ClauseVerdict(
                "neq-monotone", "fail", witness=Witness("violation", atoms=pair)
            )
            break
    clauses.append(verdict)

    sep_small, _ = is_separating(x, f)
    sep_big, counterexample = is_separating(x, f_prime)
    if sep_small and not sep_big:
        clauses.append(
            ClauseVerdict(
                "separating-monotone",
                "fail",
                witness=Witness("violation", atoms=counterexample or ()),
            )
        )
    else:
        clauses.append(ClauseVerdict("separating-monotone", "pass"))

    missing = [a for a in empty_subset(x, f) if a not in empty_subset(x, f_prime)]
    clauses.append(
        ClauseVerdict("empty-subset-monotone", "fail" if missing else "pass")
    )

    return MonotonicityReport(tuple(clauses))


@dataclass(frozen=True, eq=False)
class InducedLawReport:
    """Clause-by-clause verdicts for the basic laws of an induced inequality."""

    clauses: tuple[ClauseVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(not c.failed for c in self.clauses)

    def clause(self, name: str) -> ClauseVerdict:
        for c in self.clauses:
            if c.clause == name:
                return c
        raise KeyError(name)


def f1_report(x: IneqSet, f: FnFamily) -> InducedLawReport:
    """Check the seven basic properties an induced inequality must satisfy.

    Clauses whose hypothesis fails on this instance are reported
    not-applicable rather than failing.
    """
    if not f.carrier.same_carrier(x.base):
        raise CarrierMismatch("family lives on a different carrier")
    rel = induce(x.base, f)
    atoms = x.base.atoms
    clauses: list[ClauseVerdict] = []

    # (i) declared equality is below the induced one
    verdict = ClauseVerdict("eq-below-induced", "pass")
    for a in atoms:
        for b in atoms:
            if x.eq(a, b) and not rel.eq(a, b):
                verdict = ClauseVerdict(
                    "eq-below-induced", "fail", witness=Witness("violation", atoms=(a, b))
                )
    clauses.append(verdict)

    # (ii) if separating, induced equality coincides with the declared one
    sep, _ = is_separating(x.base, f)
    if sep:
        agree = all(
            rel.eq(a, b) == x.eq(a, b) for a in atoms for b in atoms
        )
        clauses.append(ClauseVerdict("separating-eq-agrees", "pass" if agree else "fail"))
    else:
        clauses.append(ClauseVerdict("separating-eq-agrees", "not-applicable"))

    # (iii) tightness with respect to the induced equality
    verdict = ClauseVerdict("induced-tight", "pass")
    for a in atoms:
        for b in atoms:
            if not rel.apart(a, b) and not rel.eq(a, b):
                verdict = ClauseVerdict(
                    "induced-tight", "fail", witness=Witness("violation", atoms=(a, b))
                )
    clauses.append(verdict)

    # (iv) symmetry and cotransitivity of the induced inequality
    induced_ineq = IneqSet(x.base, rel.neq_pairs())
    report = check_ineq_axioms(induced_ineq)
    ok = report.ineq4.holds and report.ineq5.holds
    clauses.append(
        ClauseVerdict(
            "induced-apartness",
            "pass" if ok else "fail",
            witness=None if ok else (report.ineq4.witness or report.ineq5.witness),
        )
    )

    # (v) if the declared inequality is the induced one, it is an apartness
    if x.neq == rel.neq_pairs():
        declared = check_ineq_axioms(x)
        ok = declared.ineq4.holds and declared.ineq5.holds
        clauses.append(ClauseVerdict("declared-apartness", "pass" if ok else "fail"))
    else:
        clauses.append(ClauseVerdict("declared-apartness", "not-applicable"))

    # (vi) the two formulations of tightness agree on this finite instance
    positive = sep
    classical = all(
        x.eq(a, b) for a in atoms for b in atoms if not rel.apart(a, b)
    )
    clauses.append(
        ClauseVerdict("tightness-formulations-agree", "pass" if positive == classical else "fail")
    )

    # (vii) strongly extensional members force the induced inequality below the declared one
    members_se = all(is_strongly_extensional(m, x) is None for m in f.members)
    if members_se:
        stray = [p for p in rel.neq_pairs() if p not in x.neq]
        clauses.append(
            ClauseVerdict(
                "induced-below-declared",
                "fail" if stray else "pass",
                witness=Witness("violation", atoms=stray[0]) if stray else None,
            )
        )
    else:
        clauses.append(ClauseVerdict("induced-below-declared", "not-applicable"))

    return InducedLawReport(tuple(clauses))


def metric_family(
    z: FinSetoid,
    d: Mapping[Pair, Rat],
    triangle: bool = True,
) -> FnFamily:
    """The family of distance functions of a rational metric table.

    The table is completed symmetrically and with a zero diagonal; it must
    respect the carrier equality, and (unless triangle is False, the
    pseudometric escape hatch) satisfy the triangle inequality.  The
    induced inequality is asserted to be exactly positive distance.
    """
    dist: dict[Pair, Rat] = {}
    for (a, b), v in d.items():
        if a not in z.atoms or b not in z.atoms:
            raise NotAMetric(f"distance given for unknown atoms ({a},{b})")
        for key in ((a, b), (b, a)):
            if key in dist and dist[key] != v:
                raise NotAMetric(f"conflicting distances for {key}")
            dist[key] = v
    for a in z.atoms:
        dist.setdefault((a, a), Rat(0))
    for a in z.atoms:
        for b in z.atoms:
            if (a, b) not in dist:
                raise NotAMetric(f"missing distance for ({a},{b})")

    for a in z.atoms:
        if dist[(a, a)] != 0:
            raise NotAMetric(f"d({a},{a}) = {format_rational(dist[(a, a)])} is not 0")
    for (a, b), v in dist.items():
        if v < 0:
            raise NotAMetric(f"negative distance d({a},{b}) = {format_rational(v)}")
    for a in z.atoms:
        for b in z.atoms:
            for a2 in z.atoms:
                if z.eq(a, a2) and dist[(a, b)] != dist[(a2, b)]:
                    raise NotAMetric(
                        f"distance does not respect equality: d({a},{b}) != d({a2},{b})"
                    )
    if triangle:
        for a in z.atoms:
            for b in z.atoms:
                for c in z.atoms:
                    if dist[(a, c)] > dist[(a, b)] + dist[(b, c)]:
                        raise NotAMetric(f"triangle inequality fails on ({a},{b},{c})")

    members = [
        FnTable(z, {b: dist[(a, b)] for b in z.atoms}, name=f"d[{a}]") for a in z.atoms
    ]
    family = FnFamily(z, tuple(members))
    if triangle:
        rel = induce(z, family)
        expected = frozenset(
            (a, b) for a in z.atoms for b in z.atoms if dist[(a, b)] > 0
        )
        if rel.neq_pairs() != expected:
            raise NotAMetric("induced inequality does not match positive distance")
    return family
