"""Completely separated sets, affine arrows, and their closure constructions.

A completely separated set pairs an inequality structure with a function
family that induces exactly that inequality and separates the carrier's
points.  Arrows between such structures are affine when composing with any
target-family member lands back in the source family; membership is always
decided pointwise against the listed members, never by identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CarrierMismatch, CarrierTooLarge, DomainMismatch, InvalidStructure
from .induced import induce, is_separating
from .kernel import (
    Bounds,
    DEFAULT_BOUNDS,
    FnFamily,
    FnTable,
    IneqSet,
    Witness,
    compose_real,
    function_carrier,
    is_strongly_extensional,
    pointwise_equal,
    product_setoid,
    validate_function,
)


@dataclass(frozen=True, eq=False)
class ComplSep:
    """An inequality structure whose relation is induced by its own family."""

    ineq: IneqSet
    family: FnFamily

    @property
    def carrier(self):
        return self.ineq.base


def validate_complsep(x: IneqSet, f: FnFamily) -> ComplSep | Witness:
    """Build a ComplSep, or return the violation that prevents it.

    Two things can go wrong: the declared inequality disagrees with the
    induced one on some pair, or the family fails to separate two atoms the
    carrier declares distinct.
    """
    if not f.carrier.same_carrier(x.base):
        raise CarrierMismatch("family lives on a different carrier")
    rel = induce(x.base, f)
    induced = rel.neq_pairs()
    extra = sorted(x.neq - induced)
    if extra:
        return Witness("violation", atoms=extra[0], detail="declared apart but not induced apart")
    missing = sorted(induced - x.neq)
    if missing:
        return Witness("violation", atoms=missing[0], detail="induced apart but not declared apart")
    sep, counterexample = is_separating(x.base, f)
    if not sep:
        return Witness("violation", atoms=counterexample, detail="family does not separate")
    return ComplSep(x, f)


def require_complsep(x: IneqSet, f: FnFamily, what: str = "structure") -> ComplSep:
    built = validate_complsep(x, f)
    if isinstance(built, Witness):
        raise InvalidStructure(f"{what} is not completely separated: {built.describe()}")
    return built


def is_affine(h: FnTable, src: ComplSep, dst: ComplSep) -> Witness | None:
    """None when every target member pulled back along h lies in the source family."""
    if h.cod is None or not h.dom.same_carrier(src.carrier) or not h.cod.same_carrier(dst.carrier):
        raise DomainMismatch("arrow endpoints do not match the given structures")
    if validate_function(h) is not None:
        raise DomainMismatch(f"table {h.name!r} does not respect the source equality")
    for g in dst.family.members:
        if not src.family.contains(compose_real(g, h)):
            return Witness("violation", member=g, detail="composite escapes the source family")
    return None


def cs_product(a: ComplSep, b: ComplSep, bounds: Bounds = DEFAULT_BOUNDS) -> ComplSep:
    """Product structure: pairs, disjunctive inequality, projected families.

    Family members carry a provenance tag (left or right plus the source
    member) so witnesses in product proofs can be traced to a factor.
    """
    prod = product_setoid(a.carrier, b.carrier)
    if len(prod.setoid.atoms) > bounds.max_enum:
        raise CarrierTooLarge("product carrier exceeds the enumeration bound")
    neq = frozenset(
        (p, q)
        for p, (x, y) in prod.pairs.items()
        for q, (x2, y2) in prod.pairs.items()
        if a.ineq.apart(x, x2) or b.ineq.apart(y, y2)
    )
    members = [
        compose_real(f, prod.pr_left, name=f"L:{f.name}") for f in a.family.members
    ] + [
        compose_real(g, prod.pr_right, name=f"R:{g.name}") for g in b.family.members
    ]
    family = FnFamily(prod.setoid, tuple(members))
    rel = induce(prod.setoid, family)
    if rel.neq_pairs() != neq:
        raise InvalidStructure("product inequality disagrees with the induced one")
    result = require_complsep(IneqSet(prod.setoid, neq), family, "product")
    if is_affine(prod.pr_left, result, a) is not None:
        raise InvalidStructure("left projection is not affine")
    if is_affine(prod.pr_right, result, b) is not None:
        raise InvalidStructure("right projection is not affine")
    return result


def cs_funspace(a: ComplSep, b: ComplSep, bounds: Bounds = DEFAULT_BOUNDS) -> ComplSep:
    """Function-space structure on all equality-respecting tables a -> b.

    The family consists of the evaluation composites "apply at x, then g";
    duplicates after composition are kept (membership never depends on
    multiplicity).  The induced inequality is asserted to be apartness at
    some argument.
    """
    carrier = function_carrier(a.carrier, b.carrier, bounds)
    names = carrier.setoid.atoms
    neq = frozenset(
        (s, t)
        for s in names
        for t in names
        if any(
            b.ineq.apart(carrier.tables[s].value(x), carrier.tables[t].value(x))
            for x in a.carrier.atoms
        )
    )
    members = [
        FnTable(
            carrier.setoid,
            {t: g.value(carrier.tables[t].value(x)) for t in names},
            name=f"ev[{x};{g.name}]",
        )
        for x in a.carrier.atoms
        for g in b.family.members
    ]
    family = FnFamily(carrier.setoid, tuple(members))
    rel = induce(carrier.setoid, family)
    if rel.neq_pairs() != neq:
        raise InvalidStructure("function-space inequality disagrees with the induced one")
    return require_complsep(IneqSet(carrier.setoid, neq), family, "function space")


def cs_subset(a: ComplSep, i_a: FnTable) -> ComplSep:
    """Subset structure along an embedding: family and relations pulled back."""
    from .kernel import canonical_subset_ineq

    sub_ineq = canonical_subset_ineq(a.ineq, i_a)
    members = tuple(
        compose_real(f, i_a, name=f"{f.name}|sub") for f in a.family.members
    )
    family = FnFamily(i_a.dom, members)
    rel = induce(i_a.dom, family)
    if rel.neq_pairs() != sub_ineq.neq:
        raise InvalidStructure("subset inequality disagrees with the induced one")
    result = require_complsep(sub_ineq, family, "subset")
    if is_affine(i_a, result, a) is not None:
        raise InvalidStructure("subset embedding is not affine")
    return result


def affine_compose_check(h: FnTable, k: FnTable, a: ComplSep, b: ComplSep, c: ComplSep) -> bool:
    """Affine arrows compose: verified directly on a concrete triple."""
    from .kernel import compose_tables

    if is_affine(h, a, b) is not None or is_affine(k, b, c) is not None:
        raise DomainMismatch("inputs are not affine arrows")
    return is_affine(compose_tables(k, h), a, c) is None
