"""Indexed families of inequality structures and their Sigma- and Pi-sets.

A family assigns a fiber to every index atom and a transport table to
every pair of equal indices (the diagonal); transports must be identities
on the diagonal's reflexive pairs, compose along equal triples, and be
strongly extensional.  Global families carry transports on *all* index
pairs instead, with a weakened composition law, which is what makes the
dependent-pair set completely separated.

Fiber atoms are disjointified inside dependent pairs by tagging them with
their index atom, so Sigma carriers never collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Mapping, Sequence

from .complsep import ComplSep, is_affine, require_complsep, validate_complsep
from .errors import (
    CarrierTooLarge,
    IndexNotDiscrete,
    InvalidStructure,
    MissingTransport,
    NotInPiSet,
    PreconditionViolated,
)
from .induced import induce
from .kernel import (
    Bounds,
    ClauseVerdict,
    DEFAULT_BOUNDS,
    FinSetoid,
    FnFamily,
    FnTable,
    IneqSet,
    Pair,
    Witness,
    canonical_key,
    check_ineq_axioms,
    identity_table,
    is_strongly_extensional,
    pointwise_equal,
    validate_function,
)
from .rationals import rat_apart

DepTable = Mapping[str, str]


def diagonal(index: FinSetoid) -> tuple[Pair, ...]:
    """All index pairs related by the index equality, in atom order."""
    return tuple(
        (i, j) for i in index.atoms for j in index.atoms if index.eq(i, j)
    )


@dataclass(frozen=True, eq=False)
class Family:
    """Fibers over an index, with transport tables on the diagonal."""

    index: IneqSet
    fibers: Mapping[str, IneqSet]
    transports: Mapping[Pair, FnTable]

    def fiber(self, i: str) -> IneqSet:
        return self.fibers[i]

    def transport(self, i: str, j: str) -> FnTable:
        try:
            return self.transports[(i, j)]
        except KeyError:
            raise MissingTransport(f"no transport for the diagonal pair ({i},{j})")


def validate_family(fam: Family) -> Witness | None:
    """None when all family laws hold; otherwise the first violation found."""
    index = fam.index.base
    for i in index.atoms:
        if i not in fam.fibers:
            return Witness("violation", atoms=(i,), detail="missing fiber")
    diag = diagonal(index)
    for pair in diag:
        if pair not in fam.transports:
            raise MissingTransport(f"no transport for the diagonal pair {pair}")
    for pair in fam.transports:
        if pair not in diag:
            return Witness("violation", atoms=pair, detail="transport outside the diagonal")
    for (i, j), t in fam.transports.items():
        if t.cod is None or not t.dom.same_carrier(fam.fiber(i).base) or not t.cod.same_carrier(fam.fiber(j).base):
            return Witness("violation", atoms=(i, j), detail="transport endpoints mismatch")
        if validate_function(t) is not None:
            return Witness("violation", atoms=(i, j), detail="transport not a function")
        if is_strongly_extensional(t, fam.fiber(i), fam.fiber(j)) is not None:
            return Witness("violation", atoms=(i, j), detail="transport not strongly extensional")
    for i in index.atoms:
        if not pointwise_equal(fam.transport(i, i), identity_table(fam.fiber(i).base)):
            return Witness("violation", atoms=(i, i), detail="diagonal transport is not the identity")
    for i, j in diag:
        for k in index.atoms:
            if not index.eq(j, k):
                continue
            left = _compose_transport(fam.transport(j, k), fam.transport(i, j))
            if not pointwise_equal(left, fam.transport(i, k)):
                return Witness("violation", atoms=(i, j, k), detail="transport triangle fails")
    return None


def _compose_transport(second: FnTable, first: FnTable) -> FnTable:
    from .kernel import compose_tables

    return compose_tables(second, first)


def constant_family(index: IneqSet, fiber: IneqSet) -> Family:
    transports = {
        (i, j): identity_table(fiber.base)
        for (i, j) in diagonal(index.base)
    }
    return Family(index, {i: fiber for i in index.base.atoms}, transports)


def tag_atom(i: str, x: str) -> str:
    return f"{i}@{x}"


@dataclass(frozen=True, eq=False)
class SigmaSet:
    """Dependent-pair structure: tagged carrier, relations, first projection."""

    ineq: IneqSet
    pairs: Mapping[str, Pair]
    pr1: FnTable


def _partition_from_relation(atoms: Sequence[str], related) -> tuple[tuple[str, ...], ...]:
    """Blocks of an equivalence relation given as a predicate; verifies closure."""
    blocks: list[list[str]] = []
    for a in atoms:
        for block in blocks:
            if related(block[0], a):
                block.append(a)
                break
        else:
            blocks.append([a])
    for block in blocks:
        for a in block:
            for other in blocks:
                for b in other:
                    if related(a, b) != (block is other):
                        raise InvalidStructure(
                            "relation is not an equivalence; family laws must hold first"
                        )
    return tuple(map(tuple, blocks))


def sigma_set(fam: Family) -> SigmaSet:
    """Dependent pairs with the componentwise-transported relations.

    The first projection is asserted strongly extensional.
    """
    index = fam.index
    pairs = {
        tag_atom(i, x): (i, x)
        for i in index.base.atoms
        for x in fam.fiber(i).base.atoms
    }
    atoms = tuple(pairs)

    def eq(wa: str, wb: str) -> bool:
        i, x = pairs[wa]
        j, y = pairs[wb]
        return index.eq(i, j) and fam.fiber(j).base.eq(fam.transport(i, j).value(x), y)

    def apart(wa: str, wb: str) -> bool:
        i, x = pairs[wa]
        j, y = pairs[wb]
        if index.apart(i, j):
            return True
        return index.eq(i, j) and fam.fiber(j).apart(fam.transport(i, j).value(x), y)

    setoid = FinSetoid(f"sigma({index.base.name})", atoms, _partition_from_relation(atoms, eq))
    neq = frozenset((a, b) for a in atoms for b in atoms if apart(a, b))
    ineq = IneqSet(setoid, neq)
    pr1 = FnTable(setoid, {w: pairs[w][0] for w in atoms}, cod=index.base, name="pr1")
    if validate_function(pr1) is not None:
        raise InvalidStructure("first projection does not respect the pair equality")
    if is_strongly_extensional(pr1, ineq, index) is not None:
        raise InvalidStructure("first projection is not strongly extensional")
    return SigmaSet(ineq, pairs, pr1)


@dataclass(frozen=True, eq=False)
class PiSet:
    """Dependent-function structure: one representative table per pointwise class."""

    ineq: IneqSet
    tables: Mapping[str, DepTable]


def pi_set(fam: Family, bounds: Bounds = DEFAULT_BOUNDS) -> PiSet:
    """All transport-compatible dependent tables, one per pointwise class.

    Representatives choose a block representative in every fiber, which
    keeps the carrier in bijection with the pointwise-equality classes.
    """
    index = fam.index.base
    choice_sets = [fam.fiber(i).base.block_reps() for i in index.atoms]
    total = 1
    for c in choice_sets:
        total *= len(c)
    if total > bounds.max_enum:
        raise CarrierTooLarge(f"{total} dependent tables exceed the bound {bounds.max_enum}")
    diag = diagonal(index)
    tables: dict[str, DepTable] = {}
    for combo in iproduct(*choice_sets):
        theta = dict(zip(index.atoms, combo))
        ok = all(
            fam.fiber(j).base.eq(theta[j], fam.transport(i, j).value(theta[i]))
            for (i, j) in diag
        )
        if ok:
            tables[f"dep{len(tables)}"] = theta
    atoms = tuple(tables)
    setoid = FinSetoid.discrete(f"pi({index.name})", atoms)
    neq = frozenset(
        (s, t)
        for s in atoms
        for t in atoms
        if any(fam.fiber(i).apart(tables[s][i], tables[t][i]) for i in index.atoms)
    )
    return PiSet(IneqSet(setoid, neq), tables)


@dataclass(frozen=True, eq=False)
class ConditionalVerdict:
    """A conditional law: its hypothesis on this instance, then the conclusion."""

    law: str
    hypothesis: bool
    status: str  # "pass" | "fail" | "not-applicable"
    detail: str = ""


@dataclass(frozen=True, eq=False)
class SigmaApartnessReport:
    apartness: ConditionalVerdict
    discreteness: ConditionalVerdict
    tightness: ConditionalVerdict

    @property
    def ok(self) -> bool:
        return all(
            v.status != "fail" for v in (self.apartness, self.discreteness, self.tightness)
        )


def sigma_apartness_report(fam: Family) -> SigmaApartnessReport:
    """Check the three conditional conclusions about a Sigma-set's inequality.

    Each conclusion is only demanded when its hypothesis holds on this
    instance; a failed hypothesis yields not-applicable, never a failure.
    """
    bad = validate_family(fam)
    if bad is not None:
        raise PreconditionViolated(f"family laws fail: {bad.describe()}")
    index_report = check_ineq_axioms(fam.index)
    fiber_reports = {i: check_ineq_axioms(fam.fiber(i)) for i in fam.index.base.atoms}
    sigma = sigma_set(fam)
    sigma_report = check_ineq_axioms(sigma.ineq)

    def conditional(law: str, hypothesis: bool, conclusion: bool) -> ConditionalVerdict:
        if not hypothesis:
            return ConditionalVerdict(law, False, "not-applicable")
        return ConditionalVerdict(law, True, "pass" if conclusion else "fail")

    # "set with an inequality" presupposes the first law, so it is part of
    # the hypothesis for both the index and the fibers
    hyp_apart = (
        index_report.ineq1.holds
        and index_report.is_discrete
        and all(r.ineq1.holds and r.is_apartness for r in fiber_reports.values())
    )
    apartness = conditional(
        "sigma-apartness", hyp_apart, sigma_report.ineq1.holds and sigma_report.is_apartness
    )

    hyp_disc = index_report.is_discrete and all(
        r.is_discrete for r in fiber_reports.values()
    )
    discreteness = conditional("sigma-discrete", hyp_disc, sigma_report.is_discrete)

    hyp_tight = index_report.is_tight and all(r.is_tight for r in fiber_reports.values())
    tightness = conditional("sigma-tight", hyp_tight, sigma_report.is_tight)

    return SigmaApartnessReport(apartness, discreteness, tightness)


@dataclass(frozen=True, eq=False)
class CSFamily:
    """A family whose fibers are completely separated, with member transports.

    fn_transports[(i, j)] maps member positions of the i-th fiber family to
    member positions of the j-th.
    """

    index_cs: ComplSep
    base: Family
    fiber_families: Mapping[str, FnFamily]
    fn_transports: Mapping[Pair, tuple[int, ...]]

    def fiber_family(self, i: str) -> FnFamily:
        return self.fiber_families[i]


def validate_cs_family(fam: CSFamily) -> Witness | None:
    """Check the completely-separated family laws; None when they all hold."""
    bad = validate_family(fam.base)
    if bad is not None:
        return bad
    if not fam.index_cs.carrier.same_carrier(fam.base.index.base):
        return Witness("violation", detail="index structure does not match the base family")
    index = fam.base.index.base
    fiber_cs: dict[str, ComplSep] = {}
    for i in index.atoms:
        built = validate_complsep(fam.base.fiber(i), fam.fiber_family(i))
        if isinstance(built, Witness):
            return Witness(
                "violation", atoms=(i,) + built.atoms, detail=f"fiber not completely separated: {built.detail}"
            )
        fiber_cs[i] = built
    diag = diagonal(index)
    for pair in diag:
        if pair not in fam.fn_transports:
            raise MissingTransport(f"no member transport for the diagonal pair {pair}")
    for pair in fam.fn_transports:
        if pair not in diag:
            return Witness("violation", atoms=pair, detail="member transport outside the diagonal")
    for (i, j), mapping in fam.fn_transports.items():
        fi = fam.fiber_family(i).members
        fj = fam.fiber_family(j).members
        if len(mapping) != len(fi) or any(m >= len(fj) for m in mapping):
            return Witness("violation", atoms=(i, j), detail="member transport malformed")
        back = fam.base.transport(j, i)
        for pos, target in enumerate(mapping):
            composed = _compose_member(fi[pos], back)
            if not pointwise_equal(fj[target], composed):
                return Witness(
                    "violation",
                    atoms=(i, j),
                    member=fi[pos],
                    detail="member transport disagrees with composition",
                )
    # the two structural consequences: member transports are strongly
    # extensional, and base transports are affine between the fibers
    for (i, j), mapping in fam.fn_transports.items():
        fi = fam.fiber_family(i).members
        fj = fam.fiber_family(j).members
        for p in range(len(fi)):
            for q in range(len(fi)):
                img_apart = any(
                    rat_apart(fj[mapping[p]].value(y), fj[mapping[q]].value(y)) is not None
                    for y in fam.base.fiber(j).base.atoms
                )
                src_apart = any(
                    rat_apart(fi[p].value(x), fi[q].value(x)) is not None
                    for x in fam.base.fiber(i).base.atoms
                )
                if img_apart and not src_apart:
                    return Witness(
                        "violation", atoms=(i, j), detail="member transport not strongly extensional"
                    )
    for (i, j) in diag:
        if is_affine(fam.base.transport(i, j), fiber_cs[i], fiber_cs[j]) is not None:
            return Witness("violation", atoms=(i, j), detail="base transport not affine")
    return None


def _compose_member(member: FnTable, back: FnTable) -> FnTable:
    from .kernel import compose_real

    return compose_real(member, back)


def constant_cs_family(index_cs: ComplSep, fiber_cs: ComplSep) -> CSFamily:
    base = constant_family(index_cs.ineq, fiber_cs.ineq)
    n = len(fiber_cs.family.members)
    ident = tuple(range(n))
    fn_transports = {pair: ident for pair in diagonal(index_cs.carrier)}
    families = {i: fiber_cs.family for i in index_cs.carrier.atoms}
    return CSFamily(index_cs, base, families, fn_transports)


def induced_function_family(fam: CSFamily, bounds: Bounds = DEFAULT_BOUNDS) -> CSFamily:
    """The evaluation family: fibers become the member sets, members become
    the evaluation functionals of the original fiber atoms."""
    bad = validate_cs_family(fam)
    if bad is not None:
        raise PreconditionViolated(f"family laws fail: {bad.describe()}")
    index = fam.base.index.base
    hat_fibers: dict[str, IneqSet] = {}
    hat_setoids: dict[str, FinSetoid] = {}
    member_atoms: dict[str, tuple[str, ...]] = {}
    for i in index.atoms:
        members = fam.fiber_family(i).members
        atoms = tuple(f"m{k}" for k in range(len(members)))
        member_atoms[i] = atoms
        groups: dict[tuple, list[str]] = {}
        for name, m in zip(atoms, members):
            groups.setdefault(canonical_key(m), []).append(name)
        setoid = FinSetoid(f"dual({i})", atoms, tuple(map(tuple, groups.values())))
        carr = fam.base.fiber(i).base
        neq = frozenset(
            (atoms[p], atoms[q])
            for p in range(len(members))
            for q in range(len(members))
            if any(
                rat_apart(members[p].value(x), members[q].value(x)) is not None
                for x in carr.atoms
            )
        )
        hat_setoids[i] = setoid
        hat_fibers[i] = IneqSet(setoid, neq)
    transports = {
        (i, j): FnTable(
            hat_setoids[i],
            {
                member_atoms[i][p]: member_atoms[j][fam.fn_transports[(i, j)][p]]
                for p in range(len(member_atoms[i]))
            },
            cod=hat_setoids[j],
            name=f"phi[{i},{j}]",
        )
        for (i, j) in diagonal(index)
    }
    base = Family(fam.base.index, hat_fibers, transports)
    families = {
        i: FnFamily(
            hat_setoids[i],
            tuple(
                FnTable(
                    hat_setoids[i],
                    {
                        member_atoms[i][p]: fam.fiber_family(i).members[p].value(x)
                        for p in range(len(member_atoms[i]))
                    },
                    name=f"ev[{x}]",
                )
                for x in fam.base.fiber(i).base.atoms
            ),
        )
        for i in index.atoms
    }
    fn_transports = {}
    for (i, j) in diagonal(index):
        src_atoms = fam.base.fiber(i).base.atoms
        dst_atoms = fam.base.fiber(j).base.atoms
        t = fam.base.transport(i, j)
        fn_transports[(i, j)] = tuple(
            dst_atoms.index(t.value(x)) for x in src_atoms
        )
    hat = CSFamily(fam.index_cs, base, families, fn_transports)
    bad = validate_cs_family(hat)
    if bad is not None:
        raise InvalidStructure(f"evaluation family violates the laws: {bad.describe()}")
    return hat


def pi_cs(fam: CSFamily, bounds: Bounds = DEFAULT_BOUNDS) -> ComplSep:
    """The dependent-function structure of a completely separated family."""
    bad = validate_cs_family(fam)
    if bad is not None:
        raise PreconditionViolated(f"family laws fail: {bad.describe()}")
    pi = pi_set(fam.base, bounds)
    index = fam.base.index.base
    members = []
    for i in index.atoms:
        for f in fam.fiber_family(i).members:
            members.append(
                FnTable(
                    pi.ineq.base,
                    {w: f.value(pi.tables[w][i]) for w in pi.ineq.base.atoms},
                    name=f"{f.name}.pr[{i}]",
                )
            )
    family = FnFamily(pi.ineq.base, tuple(members))
    result = require_complsep(pi.ineq, family, "dependent product")
    for i in index.atoms:
        pr = FnTable(
            pi.ineq.base,
            {w: pi.tables[w][i] for w in pi.ineq.base.atoms},
            cod=fam.base.fiber(i).base,
            name=f"pr[{i}]",
        )
        fiber_cs = require_complsep(fam.base.fiber(i), fam.fiber_family(i), "fiber")
        if is_affine(pr, result, fiber_cs) is not None:
            raise InvalidStructure(f"evaluation at {i} is not affine")
    return result


@dataclass(frozen=True, eq=False)
class Fcl3Report:
    """Verdicts for the restricted Sigma-set proposition over a discrete index."""

    extension_hypothesis: bool
    forward: ClauseVerdict  # induced inequality below the pair inequality
    reverse: ClauseVerdict  # pair inequality below the induced one (conditional)

    @property
    def ok(self) -> bool:
        return not self.forward.failed and not self.reverse.failed


def fcl3_check(fam: CSFamily, bounds: Bounds = DEFAULT_BOUNDS) -> Fcl3Report:
    """Compare the pair inequality with the one induced by lifted functions.

    The lifted family consists of index functions composed with the first
    projection, together with the evaluation of every compatible dependent
    choice of members.  The reverse inclusion is only demanded under the
    extension hypothesis: every member of every fiber family extends to a
    compatible dependent choice.
    """
    bad = validate_cs_family(fam)
    if bad is not None:
        raise PreconditionViolated(f"family laws fail: {bad.describe()}")
    index_report = check_ineq_axioms(fam.base.index)
    if not index_report.is_discrete:
        raise IndexNotDiscrete("the index inequality does not decide every pair")
    sigma = sigma_set(fam.base)
    atoms = sigma.ineq.base.atoms

    k_hat = [
        FnTable(
            sigma.ineq.base,
            {w: k.value(sigma.pairs[w][0]) for w in atoms},
            name=f"idx[{k.name}]",
        )
        for k in fam.index_cs.family.members
    ]
    hat = induced_function_family(fam, bounds)
    choices = pi_set(hat.base, bounds)
    index = fam.base.index.base
    member_of = {
        i: {f"m{k}": fam.fiber_family(i).members[k] for k in range(len(fam.fiber_family(i).members))}
        for i in index.atoms
    }
    h_hat = [
        FnTable(
            sigma.ineq.base,
            {
                w: member_of[sigma.pairs[w][0]][choices.tables[c][sigma.pairs[w][0]]].value(
                    sigma.pairs[w][1]
                )
                for w in atoms
            },
            name=f"lift[{c}]",
        )
        for c in choices.ineq.base.atoms
    ]
    lifted = FnFamily(sigma.ineq.base, tuple(k_hat + h_hat))
    rel = induce(sigma.ineq.base, lifted)
    induced_pairs = rel.neq_pairs()

    stray = sorted(induced_pairs - sigma.ineq.neq)
    forward = ClauseVerdict(
        "induced-below-pairs",
        "fail" if stray else "pass",
        witness=Witness("violation", atoms=stray[0]) if stray else None,
    )

    hypothesis = True
    for j in index.atoms:
        for h in fam.fiber_family(j).members:
            if not any(
                pointwise_equal(member_of[j][choices.tables[c][j]], h)
                for c in choices.ineq.base.atoms
            ):
                hypothesis = False
                break
        if not hypothesis:
            break

    if hypothesis:
        missing = sorted(sigma.ineq.neq - induced_pairs)
        reverse = ClauseVerdict(
            "pairs-below-induced",
            "fail" if missing else "pass",
            witness=Witness("violation", atoms=missing[0]) if missing else None,
        )
    else:
        reverse = ClauseVerdict("pairs-below-induced", "not-applicable")

    return Fcl3Report(hypothesis, forward, reverse)


@dataclass(frozen=True, eq=False)
class GlobalFamily:
    """Like CSFamily, but transports and member transports are total on all
    index pairs, with the weakened composition law."""

    index_cs: ComplSep
    fibers: Mapping[str, IneqSet]
    fiber_families: Mapping[str, FnFamily]
    transports: Mapping[Pair, FnTable]
    fn_transports: Mapping[Pair, tuple[int, ...]]

    def fiber(self, i: str) -> IneqSet:
        return self.fibers[i]

    def fiber_family(self, i: str) -> FnFamily:
        return self.fiber_families[i]

    def transport(self, i: str, j: str) -> FnTable:
        try:
            return self.transports[(i, j)]
        except KeyError:
            raise MissingTransport(f"no transport for the pair ({i},{j})")


def validate_global_family(fam: GlobalFamily) -> Witness | None:
    """Totality, identities, the weakened triangle, strong extensionality,
    separated fibers, and the member-transport condition on all pairs."""
    index = fam.index_cs.carrier
    for i in index.atoms:
        if i not in fam.fibers or i not in fam.fiber_families:
            return Witness("violation", atoms=(i,), detail="missing fiber data")
    for i in index.atoms:
        for j in index.atoms:
            if (i, j) not in fam.transports:
                raise MissingTransport(f"no transport for the pair ({i},{j})")
            if (i, j) not in fam.fn_transports:
                raise MissingTransport(f"no member transport for the pair ({i},{j})")
    for (i, j), t in fam.transports.items():
        if t.cod is None or not t.dom.same_carrier(fam.fiber(i).base) or not t.cod.same_carrier(fam.fiber(j).base):
            return Witness("violation", atoms=(i, j), detail="transport endpoints mismatch")
        if validate_function(t) is not None:
            return Witness("violation", atoms=(i, j), detail="transport not a function")
        if is_strongly_extensional(t, fam.fiber(i), fam.fiber(j)) is not None:
            return Witness("violation", atoms=(i, j), detail="transport not strongly extensional")
    for i in index.atoms:
        if not pointwise_equal(fam.transport(i, i), identity_table(fam.fiber(i).base)):
            return Witness("violation", atoms=(i, i), detail="reflexive transport is not the identity")
    for i in index.atoms:
        for j in index.atoms:
            if not index.eq(i, j):
                continue
            for k in index.atoms:
                left = _compose_transport(fam.transport(j, k), fam.transport(i, j))
                if not pointwise_equal(left, fam.transport(i, k)):
                    return Witness("violation", atoms=(i, j, k), detail="weakened triangle fails")
    for i in index.atoms:
        built = validate_complsep(fam.fiber(i), fam.fiber_family(i))
        if isinstance(built, Witness):
            return Witness(
                "violation", atoms=(i,) + built.atoms, detail=f"fiber not completely separated: {built.detail}"
            )
    for (i, j), mapping in fam.fn_transports.items():
        fi = fam.fiber_family(i).members
        fj = fam.fiber_family(j).members
        if len(mapping) != len(fi) or any(m >= len(fj) for m in mapping):
            return Witness("violation", atoms=(i, j), detail="member transport malformed")
        back = fam.transport(j, i)
        for pos, target in enumerate(mapping):
            if not pointwise_equal(fj[target], _compose_member(fi[pos], back)):
                return Witness(
                    "violation",
                    atoms=(i, j),
                    member=fi[pos],
                    detail="member transport disagrees with composition",
                )
    return None


def constant_global_family(index_cs: ComplSep, fiber_cs: ComplSep) -> GlobalFamily:
    atoms = index_cs.carrier.atoms
    ident_t = identity_table(fiber_cs.carrier)
    ident_m = tuple(range(len(fiber_cs.family.members)))
    return GlobalFamily(
        index_cs,
        {i: fiber_cs.ineq for i in atoms},
        {i: fiber_cs.family for i in atoms},
        {(i, j): ident_t for i in atoms for j in atoms},
        {(i, j): ident_m for i in atoms for j in atoms},
    )


@dataclass(frozen=True, eq=False)
class SigmaCS:
    """A completely separated dependent-pair structure with its pair map."""

    cs: ComplSep
    pairs: Mapping[str, Pair]
    pr1: FnTable


def sigma_global_cs(fam: GlobalFamily, bounds: Bounds = DEFAULT_BOUNDS) -> SigmaCS:
    """Dependent pairs of a global family as a completely separated set.

    The separating family consists of the index functions lifted through the
    first projection and, for every fiber member h at index j, the lift of
    its explicit extension i |-> h . transport(i, j).  Equality of the pair
    inequality with the induced one is asserted on every pair of pairs.
    """
    bad = validate_global_family(fam)
    if bad is not None:
        raise PreconditionViolated(f"global family laws fail: {bad.describe()}")
    index = fam.index_cs.ineq
    pairs = {
        tag_atom(i, x): (i, x)
        for i in index.base.atoms
        for x in fam.fiber(i).base.atoms
    }
    atoms = tuple(pairs)

    def eq(wa: str, wb: str) -> bool:
        i, x = pairs[wa]
        j, y = pairs[wb]
        return index.eq(i, j) and fam.fiber(j).base.eq(fam.transport(i, j).value(x), y)

    def apart(wa: str, wb: str) -> bool:
        i, x = pairs[wa]
        j, y = pairs[wb]
        return index.apart(i, j) or fam.fiber(j).apart(fam.transport(i, j).value(x), y)

    setoid = FinSetoid(
        f"sigma*({index.base.name})", atoms, _partition_from_relation(atoms, eq)
    )
    neq = frozenset((a, b) for a in atoms for b in atoms if apart(a, b))
    ineq = IneqSet(setoid, neq)

    members = [
        FnTable(setoid, {w: k.value(pairs[w][0]) for w in atoms}, name=f"idx[{k.name}]")
        for k in fam.index_cs.family.members
    ]
    for j in index.base.atoms:
        for h in fam.fiber_family(j).members:
            members.append(
                FnTable(
                    setoid,
                    {
                        w: h.value(fam.transport(pairs[w][0], j).value(pairs[w][1]))
                        for w in atoms
                    },
                    name=f"ext[{j}:{h.name}]",
                )
            )
    family = FnFamily(setoid, tuple(members))
    rel = induce(setoid, family)
    if rel.neq_pairs() != neq:
        raise InvalidStructure(
            "pair inequality disagrees with the one induced by the lifted family"
        )
    cs = require_complsep(ineq, family, "dependent-pair structure")
    pr1 = FnTable(setoid, {w: pairs[w][0] for w in atoms}, cod=index.base, name="pr1")
    return SigmaCS(cs, pairs, pr1)


def dep_strongly_extensional(theta: DepTable, fam: GlobalFamily) -> Witness | None:
    """None when transported values apart at (i, j) force the indices apart.

    theta must lie in the dependent-function set of the family: defined on
    every index atom, valued in the fibers, compatible along the diagonal.
    """
    index = fam.index_cs.ineq
    for i in index.base.atoms:
        if i not in theta or theta[i] not in fam.fiber(i).base.atoms:
            raise NotInPiSet(f"no fiber value at index atom {i!r}")
    for (i, j) in diagonal(index.base):
        if not fam.fiber(j).base.eq(theta[j], fam.transport(i, j).value(theta[i])):
            raise NotInPiSet(f"not transport-compatible at ({i},{j})")
    for i in index.base.atoms:
        for j in index.base.atoms:
            moved = fam.transport(i, j).value(theta[i])
            if fam.fiber(j).apart(moved, theta[j]) and not index.apart(i, j):
                return Witness(
                    "violation", atoms=(i, j), detail="values apart but indices not"
                )
    return None


@dataclass(frozen=True, eq=False)
class SecondProjectionReport:
    family_laws: ClauseVerdict
    membership: ClauseVerdict
    strong_extensionality: ClauseVerdict

    @property
    def ok(self) -> bool:
        return not any(
            c.failed
            for c in (self.family_laws, self.membership, self.strong_extensionality)
        )


def second_projection_check(
    fam: GlobalFamily, bounds: Bounds = DEFAULT_BOUNDS
) -> SecondProjectionReport:
    """Verify the second projection over the derived pair-indexed family.

    The derived family re-indexes the fibers by dependent pairs (the fiber
    over (i, x) is the fiber over i; transports are inherited).  The second
    projection must be transport-compatible over equal pairs and its
    apartness must force pairs apart.
    """
    bad = validate_global_family(fam)
    if bad is not None:
        raise PreconditionViolated(f"global family laws fail: {bad.describe()}")
    sigma = sigma_global_cs(fam, bounds)
    atoms = sigma.cs.carrier.atoms
    pairs = sigma.pairs
    ineq = sigma.cs.ineq

    def fiber_of(w: str) -> IneqSet:
        return fam.fiber(pairs[w][0])

    def transport_of(wa: str, wb: str) -> FnTable:
        return fam.transport(pairs[wa][0], pairs[wb][0])

    laws = ClauseVerdict("derived-family-laws", "pass")
    for wa in atoms:
        if not pointwise_equal(transport_of(wa, wa), identity_table(fiber_of(wa).base)):
            laws = ClauseVerdict("derived-family-laws", "fail", detail=f"identity at {wa}")
            break
        for wb in atoms:
            if not ineq.eq(wa, wb):
                continue
            for wc in atoms:
                left = _compose_transport(transport_of(wb, wc), transport_of(wa, wb))
                if not pointwise_equal(left, transport_of(wa, wc)):
                    laws = ClauseVerdict(
                        "derived-family-laws", "fail", detail=f"triangle at ({wa},{wb},{wc})"
                    )
                    break
            if laws.failed:
                break
        if laws.failed:
            break

    membership = ClauseVerdict("pr2-in-pi", "pass")
    for wa in atoms:
        for wb in atoms:
            if not ineq.eq(wa, wb):
                continue
            moved = transport_of(wa, wb).value(pairs[wa][1])
            if not fiber_of(wb).base.eq(pairs[wb][1], moved):
                membership = ClauseVerdict(
                    "pr2-in-pi", "fail", witness=Witness("violation", atoms=(wa, wb))
                )
                break
        if membership.failed:
            break

    se = ClauseVerdict("pr2-strongly-extensional", "pass")
    for wa in atoms:
        for wb in atoms:
            moved = transport_of(wa, wb).value(pairs[wa][1])
            if fiber_of(wb).apart(moved, pairs[wb][1]) and not ineq.apart(wa, wb):
                se = ClauseVerdict(
                    "pr2-strongly-extensional",
                    "fail",
                    witness=Witness("violation", atoms=(wa, wb)),
                )
                break
        if se.failed:
            break

    return SecondProjectionReport(laws, membership, se)
