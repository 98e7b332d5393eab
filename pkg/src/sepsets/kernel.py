"""Finite setoids, inequality structures, function tables, and axiom checkers.

Everything here is immutable after construction and every operation is a
pure function of its inputs, so independent checks can run in any order
with identical results.  Universal statements are decided by exhaustion
over the (small) carriers; the `Bounds` value guards the enumerations that
can blow up combinatorially.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping

from .errors import (
    CarrierTooLarge,
    DomainMismatch,
    InvalidStructure,
    MissingEntry,
    NotInjective,
)
from .rationals import Rat, format_rational, rat_apart


@dataclass(frozen=True)
class Bounds:
    """Exhaustion guards.

    max_atoms limits declared carriers; max_enum limits the number of
    tables produced by any single enumeration.
    """

    max_atoms: int = 12
    max_enum: int = 10_000


DEFAULT_BOUNDS = Bounds()


def _normalize_blocks(
    atoms: tuple[str, ...], blocks: Iterable[Iterable[str]]
) -> tuple[tuple[str, ...], ...]:
    pos = {a: i for i, a in enumerate(atoms)}
    ordered = [tuple(sorted(b, key=pos.__getitem__)) for b in blocks]
    ordered.sort(key=lambda b: pos[b[0]])
    return tuple(ordered)


@dataclass(frozen=True)
class FinSetoid:
    """A finite carrier with an equality given by a partition into blocks.

    Two atoms are equal exactly when they lie in the same block.  Blocks
    are normalized on construction (ordered by first atom), so structurally
    equal setoids compare equal regardless of input order.
    """

    name: str
    atoms: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]
    _block_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if len(set(atoms)) != len(atoms):
            raise InvalidStructure(f"set {self.name!r}: duplicate atoms")
        blocks = _normalize_blocks(atoms, self.blocks)
        covered = [a for b in blocks for a in b]
        if sorted(covered) != sorted(atoms):
            raise InvalidStructure(
                f"set {self.name!r}: blocks do not partition the atoms"
            )
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(
            self, "_block_of", {a: i for i, b in enumerate(blocks) for a in b}
        )

    @classmethod
    def discrete(cls, name: str, atoms: Iterable[str]) -> "FinSetoid":
        atoms = tuple(atoms)
        return cls(name, atoms, tuple((a,) for a in atoms))

    def eq(self, x: str, y: str) -> bool:
        return self._block_of[x] == self._block_of[y]

    def block_of(self, x: str) -> int:
        return self._block_of[x]

    def rep(self, x: str) -> str:
        """First atom of x's block; the canonical class representative."""
        return self.blocks[self._block_of[x]][0]

    def block_reps(self) -> tuple[str, ...]:
        return tuple(b[0] for b in self.blocks)

    def same_carrier(self, other: "FinSetoid") -> bool:
        """Structural equality ignoring the name."""
        return self.atoms == other.atoms and self.blocks == other.blocks

    def is_discrete_partition(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


Pair = tuple[str, str]


@dataclass(frozen=True)
class IneqSet:
    """A setoid together with an explicitly stored inequality relation.

    No axiom is assumed of the relation; `check_ineq_axioms` decides each
    of the six candidate laws by exhaustion.
    """

    base: FinSetoid
    neq: frozenset[Pair]

    def __post_init__(self):
        object.__setattr__(self, "neq", frozenset(self.neq))
        atoms = set(self.base.atoms)
        for x, y in self.neq:
            if x not in atoms or y not in atoms:
                raise InvalidStructure(
                    f"inequality pair ({x},{y}) mentions unknown atoms"
                )

    def eq(self, x: str, y: str) -> bool:
        return self.base.eq(x, y)

    def apart(self, x: str, y: str) -> bool:
        return (x, y) in self.neq


@dataclass(frozen=True, eq=False)
class FnTable:
    """A total mapping from carrier atoms to rationals or to codomain atoms.

    cod is None for rational-valued tables.  Construction does not check
    extensionality; `validate_function` does.  Tables are compared with
    `pointwise_equal`, never with ==.
    """

    dom: FinSetoid
    table: Mapping[str, Rat | str]
    cod: FinSetoid | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "table", dict(self.table))

    @property
    def is_real(self) -> bool:
        return self.cod is None

    def value(self, x: str):
        try:
            return self.table[x]
        except KeyError:
            raise MissingEntry(f"table {self.name!r} has no entry for atom {x!r}")


def identity_table(x: FinSetoid, name: str = "id") -> FnTable:
    return FnTable(x, {a: a for a in x.atoms}, cod=x, name=name)


def constant_table(x: FinSetoid, value: Rat, name: str = "") -> FnTable:
    return FnTable(x, {a: value for a in x.atoms}, name=name or f"const[{format_rational(value)}]")


def compose_real(g: FnTable, h: FnTable, name: str = "") -> FnTable:
    """The rational-valued composite g . h for setoid-valued h."""
    if h.cod is None or g.cod is not None:
        raise DomainMismatch("compose_real needs setoid-valued h and real-valued g")
    if not g.dom.same_carrier(h.cod):
        raise DomainMismatch(
            f"cannot compose {g.name!r} after {h.name!r}: carrier mismatch"
        )
    table = {a: g.value(h.value(a)) for a in h.dom.atoms}
    return FnTable(h.dom, table, name=name or f"{g.name}.{h.name}")


def compose_tables(k: FnTable, h: FnTable, name: str = "") -> FnTable:
    """The setoid-valued composite k . h."""
    if h.cod is None or k.cod is None:
        raise DomainMismatch("compose_tables needs setoid-valued tables")
    if not k.dom.same_carrier(h.cod):
        raise DomainMismatch(
            f"cannot compose {k.name!r} after {h.name!r}: carrier mismatch"
        )
    table = {a: k.value(h.value(a)) for a in h.dom.atoms}
    return FnTable(h.dom, table, cod=k.cod, name=name or f"{k.name}.{h.name}")


def values_equal(f: FnTable, u, v) -> bool:
    """Equality of two codomain values of f: exact for rationals, blockwise otherwise."""
    if f.is_real:
        return u == v
    return f.cod.eq(u, v)


def pointwise_equal(f: FnTable, g: FnTable) -> bool:
    """Pointwise equality under the codomain equality; requires equal domains."""
    if not f.dom.same_carrier(g.dom):
        return False
    if f.is_real != g.is_real:
        return False
    if not f.is_real and not f.cod.same_carrier(g.cod):
        return False
    return all(values_equal(f, f.value(a), g.value(a)) for a in f.dom.atoms)


def canonical_key(f: FnTable) -> tuple:
    """Hashable key identifying f's pointwise-equality class."""
    if f.is_real:
        return tuple(f.value(a) for a in f.dom.atoms)
    return tuple(f.cod.block_of(f.value(a)) for a in f.dom.atoms)


@dataclass(frozen=True)
class FnFamily:
    """A finite extensional subset of the rational-valued functions on a carrier.

    Membership is extensional: a table belongs iff it is pointwise equal to
    some listed member.  Every listed member must be a genuine function
    (respect the carrier equality); construction enforces this.
    """

    carrier: FinSetoid
    members: tuple[FnTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for f in self.members:
            if not f.is_real:
                raise InvalidStructure(f"family member {f.name!r} is not rational-valued")
            if not f.dom.same_carrier(self.carrier):
                raise InvalidStructure(f"family member {f.name!r} lives on a different carrier")
            bad = validate_function(f)
            if bad is not None:
                raise InvalidStructure(
                    f"family member {f.name!r} does not respect the carrier equality "
                    f"on pair {bad.atoms}"
                )

    def contains(self, g: FnTable) -> bool:
        return any(pointwise_equal(f, g) for f in self.members)

    def is_subfamily_of(self, other: "FnFamily") -> bool:
        return all(other.contains(f) for f in self.members)

    def dedup(self) -> tuple[FnTable, ...]:
        """One representative per pointwise-equality class, for reporting."""
        seen: dict[tuple, FnTable] = {}
        for f in self.members:
            seen.setdefault(canonical_key(f), f)
        return tuple(seen.values())


@dataclass(frozen=True, eq=False)
class Witness:
    """A concrete reason: either a separating member with its gap, or an
    offending atom tuple for a failed law."""

    kind: str  # "apart" | "violation"
    atoms: tuple[str, ...] = ()
    member: FnTable | None = None
    gap: Rat | None = None
    detail: str = ""

    def describe(self) -> str:
        parts = []
        if self.detail:
            parts.append(self.detail)
        if self.atoms:
            parts.append("at (" + ", ".join(self.atoms) + ")")
        if self.member is not None:
            parts.append(f"by {self.member.name or 'member'}")
        if self.gap is not None:
            parts.append(f"gap {format_rational(self.gap)}")
        return " ".join(parts)


@dataclass(frozen=True, eq=False)
class AxiomVerdict:
    status: str  # "holds" | "fails" | "not-checked"
    witness: Witness | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"


HOLDS = AxiomVerdict("holds")


@dataclass(frozen=True, eq=False)
class AxiomReport:
    """Per-axiom verdicts for the six candidate laws of an inequality."""

    ineq1: AxiomVerdict
    ineq2: AxiomVerdict
    ineq3: AxiomVerdict
    ineq4: AxiomVerdict
    ineq5: AxiomVerdict
    ineq6: AxiomVerdict

    @property
    def is_apartness(self) -> bool:
        return self.ineq4.holds and self.ineq5.holds

    @property
    def is_tight(self) -> bool:
        return self.ineq3.holds

    @property
    def is_discrete(self) -> bool:
        return self.ineq6.holds

    @property
    def is_extensional(self) -> bool:
        return self.ineq2.holds

    def verdict(self, axiom: str) -> AxiomVerdict:
        return getattr(self, axiom.lower())


@dataclass(frozen=True, eq=False)
class ClauseVerdict:
    """Outcome of one clause of a multi-part law check."""

    clause: str
    status: str  # "pass" | "fail" | "not-applicable"
    detail: str = ""
    witness: Witness | None = None

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def validate_function(f: FnTable) -> Witness | None:
    """None when f respects the domain equality; otherwise the offending pair.

    Raises MissingEntry when the table is not total.
    """
    for a in f.dom.atoms:
        f.value(a)
    for block in f.dom.blocks:
        first = block[0]
        v0 = f.value(first)
        for a in block[1:]:
            if not values_equal(f, v0, f.value(a)):
                return Witness("violation", atoms=(first, a), detail="equality not respected")
    return None


def check_ineq_axioms(s: IneqSet) -> AxiomReport:
    """Decide each of the six laws by exhaustive quantification over atoms.

    Tightness (the third law) uses classical negation, which is faithful
    here because membership in the stored relation is decidable.
    """
    atoms = s.base.atoms

    def fail(*offending: str, detail: str = "") -> AxiomVerdict:
        return AxiomVerdict("fails", Witness("violation", atoms=offending, detail=detail))

    ineq1 = HOLDS
    for x, y in iproduct(atoms, atoms):
        if s.eq(x, y) and s.apart(x, y):
            ineq1 = fail(x, y, detail="equal and apart")
            break

    ineq2 = HOLDS
    for x, x2, y, y2 in iproduct(atoms, atoms, atoms, atoms):
        if s.eq(x, x2) and s.eq(y, y2) and s.apart(x, y) and not s.apart(x2, y2):
            ineq2 = fail(x, x2, y, y2, detail="not extensional")
            break

    ineq3 = HOLDS
    for x, y in iproduct(atoms, atoms):
        if not s.apart(x, y) and not s.eq(x, y):
            ineq3 = fail(x, y, detail="neither equal nor apart")
            break

    ineq4 = HOLDS
    for x, y in s.neq:
        if not s.apart(y, x):
            ineq4 = fail(x, y, detail="not symmetric")
            break

    ineq5 = HOLDS
    for x, y in sorted(s.neq):
        for z in atoms:
            if not s.apart(z, x) and not s.apart(z, y):
                ineq5 = fail(x, y, z, detail="not cotransitive")
                break
        if not ineq5.holds:
            break

    ineq6 = HOLDS
    for x, y in iproduct(atoms, atoms):
        if not s.eq(x, y) and not s.apart(x, y):
            ineq6 = fail(x, y, detail="not decided")
            break

    return AxiomReport(ineq1, ineq2, ineq3, ineq4, ineq5, ineq6)


def is_strongly_extensional(
    f: FnTable, x: IneqSet, y: IneqSet | None = None
) -> Witness | None:
    """None when apart images force apart arguments; otherwise the failing pair.

    Rational-valued tables are checked against rational apartness; setoid-
    valued tables need the codomain inequality y.
    """
    if not f.dom.same_carrier(x.base):
        raise DomainMismatch(f"table {f.name!r} does not live on the given carrier")
    if f.is_real:
        def apart_images(u, v):
            return rat_apart(u, v) is not None
    else:
        if y is None or not f.cod.same_carrier(y.base):
            raise DomainMismatch(
                f"table {f.name!r} needs a codomain inequality on its own codomain"
            )
        apart_images = y.apart
    for a in x.base.atoms:
        for b in x.base.atoms:
            if apart_images(f.value(a), f.value(b)) and not x.apart(a, b):
                return Witness(
                    "violation", atoms=(a, b), member=f, detail="images apart, arguments not"
                )
    return None


def pair_atom(x: str, y: str) -> str:
    return f"({x},{y})"


@dataclass(frozen=True, eq=False)
class ProductCarrier:
    """Pair carrier with componentwise equality and both projection tables."""

    setoid: FinSetoid
    pairs: Mapping[str, Pair]
    pr_left: FnTable
    pr_right: FnTable


def product_setoid(x: FinSetoid, y: FinSetoid, name: str = "") -> ProductCarrier:
    pairs = {pair_atom(a, b): (a, b) for a in x.atoms for b in y.atoms}
    atoms = tuple(pairs)
    groups: dict[tuple[int, int], list[str]] = {}
    for atom, (a, b) in pairs.items():
        groups.setdefault((x.block_of(a), y.block_of(b)), []).append(atom)
    setoid = FinSetoid(name or f"{x.name}*{y.name}", atoms, tuple(map(tuple, groups.values())))
    pr_left = FnTable(setoid, {p: ab[0] for p, ab in pairs.items()}, cod=x, name="pr1")
    pr_right = FnTable(setoid, {p: ab[1] for p, ab in pairs.items()}, cod=y, name="pr2")
    return ProductCarrier(setoid, pairs, pr_left, pr_right)


def canonical_product_ineq(x: IneqSet, y: IneqSet) -> IneqSet:
    """Pairs apart exactly when they are apart in some component.

    Both projections are asserted strongly extensional.
    """
    prod = product_setoid(x.base, y.base)
    neq = frozenset(
        (p, q)
        for p, (a, b) in prod.pairs.items()
        for q, (a2, b2) in prod.pairs.items()
        if x.apart(a, a2) or y.apart(b, b2)
    )
    result = IneqSet(prod.setoid, neq)
    if is_strongly_extensional(prod.pr_left, result, x) is not None:
        raise InvalidStructure("left projection not strongly extensional")
    if is_strongly_extensional(prod.pr_right, result, y) is not None:
        raise InvalidStructure("right projection not strongly extensional")
    return result


def enumerate_functions(
    x: FinSetoid, y: FinSetoid, bounds: Bounds = DEFAULT_BOUNDS
) -> list[FnTable]:
    """All equality-respecting tables x -> y, one per pointwise class.

    A representative assigns the same codomain block representative to every
    atom of a domain block, so the count is |y-blocks| ** |x-blocks|.
    """
    count = len(y.blocks) ** len(x.blocks)
    if count > bounds.max_enum:
        raise CarrierTooLarge(
            f"{count} tables from {x.name!r} to {y.name!r} exceed the bound {bounds.max_enum}"
        )
    reps = y.block_reps()
    out = []
    for i, choice in enumerate(iproduct(reps, repeat=len(x.blocks))):
        table = {a: choice[x.block_of(a)] for a in x.atoms}
        out.append(FnTable(x, table, cod=y, name=f"t{i}"))
    return out


@dataclass(frozen=True, eq=False)
class FunctionCarrier:
    """Function-space carrier: a discrete setoid of representative tables."""

    setoid: FinSetoid
    tables: Mapping[str, FnTable]


def function_carrier(
    x: FinSetoid, y: FinSetoid, bounds: Bounds = DEFAULT_BOUNDS, name: str = ""
) -> FunctionCarrier:
    tables = enumerate_functions(x, y, bounds)
    setoid = FinSetoid.discrete(name or f"fn({x.name},{y.name})", (t.name for t in tables))
    return FunctionCarrier(setoid, {t.name: t for t in tables})


def canonical_funspace_ineq(
    x: FinSetoid, y: IneqSet, bounds: Bounds = DEFAULT_BOUNDS
) -> IneqSet:
    """Tables apart exactly when they are apart at some argument."""
    carrier = function_carrier(x, y.base, bounds)
    names = carrier.setoid.atoms
    neq = frozenset(
        (f, g)
        for f in names
        for g in names
        if any(
            y.apart(carrier.tables[f].value(a), carrier.tables[g].value(a))
            for a in x.atoms
        )
    )
    return IneqSet(carrier.setoid, neq)


def canonical_subset_ineq(x: IneqSet, i_a: FnTable) -> IneqSet:
    """Pull the equality and inequality of x back along an embedding table."""
    if i_a.cod is None or not i_a.cod.same_carrier(x.base):
        raise DomainMismatch("embedding table must land in the ambient carrier")
    bad = validate_function(i_a)
    if bad is not None:
        raise InvalidStructure(f"embedding does not respect equality at {bad.atoms}")
    a_setoid = i_a.dom
    for p in a_setoid.atoms:
        for q in a_setoid.atoms:
            if x.base.eq(i_a.value(p), i_a.value(q)) and not a_setoid.eq(p, q):
                raise NotInjective(
                    f"atoms {p!r} and {q!r} are declared distinct but map to equal images"
                )
    neq = frozenset(
        (p, q)
        for p in a_setoid.atoms
        for q in a_setoid.atoms
        if x.apart(i_a.value(p), i_a.value(q))
    )
    result = IneqSet(a_setoid, neq)
    if is_strongly_extensional(i_a, result, x) is not None:
        raise InvalidStructure("pulled-back embedding not strongly extensional")
    return result
