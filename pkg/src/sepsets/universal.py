"""Universal constructions and their exhaustive verification oracles.

Covers the free completely separated structure on a bare setoid, the
reflector that re-equips a function space with its induced relations, the
double adjunction around that reflector, the dual structure on a family,
and the embedding of a separated function space into a power of the
rational line.  Uniqueness claims are decided by exhaustive comparison
against every candidate table within bounds; that is an oracle, not a
proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .complsep import ComplSep, cs_product, is_affine, require_complsep
from .errors import (
    CarrierTooLarge,
    DomainMismatch,
    EmptyValueUniverse,
    InvalidStructure,
    NotAffine,
    NotCompatible,
)
from .families import Family, PiSet, diagonal, pi_set
from .induced import induce, is_separating
from .kernel import (
    Bounds,
    ClauseVerdict,
    DEFAULT_BOUNDS,
    FinSetoid,
    FnFamily,
    FnTable,
    FunctionCarrier,
    IneqSet,
    Witness,
    canonical_key,
    compose_real,
    compose_tables,
    enumerate_functions,
    function_carrier,
    is_strongly_extensional,
    pointwise_equal,
    product_setoid,
    validate_function,
)
from .rationals import Rat, format_rational, rat_apart


@dataclass(frozen=True, eq=False)
class FunctionSpace:
    """A carrier with a function family but no committed inequality."""

    carrier: FinSetoid
    family: FnFamily

    def __post_init__(self):
        if not self.family.carrier.same_carrier(self.carrier):
            raise InvalidStructure("family lives on a different carrier")


@dataclass(frozen=True, eq=False)
class HomSet:
    """Deduplicated arrows of one kind between two named structures."""

    src: str
    dst: str
    kind: str  # "plain" | "strongly-extensional" | "affine"
    arrows: tuple[FnTable, ...]


@dataclass(frozen=True, eq=False)
class AdjunctionReport:
    hom_equality: tuple[ClauseVerdict, ...]
    naturality_left: tuple[ClauseVerdict, ...]
    naturality_right: tuple[ClauseVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(
            not c.failed
            for group in (self.hom_equality, self.naturality_left, self.naturality_right)
            for c in group
        )


def free_cs(x: FinSetoid) -> ComplSep:
    """The free structure: block indicators induce exactly the given equality
    and the full cross-block inequality."""
    members = []
    for block in x.blocks:
        inside = set(block)
        members.append(
            FnTable(
                x,
                {a: Rat(1) if a in inside else Rat(0) for a in x.atoms},
                name=f"ind[{block[0]}]",
            )
        )
    family = FnFamily(x, tuple(members))
    rel = induce(x, family)
    if rel.eq_setoid().blocks != x.blocks:
        raise InvalidStructure("indicators do not recover the carrier equality")
    expected = frozenset(
        (a, b) for a in x.atoms for b in x.atoms if not x.eq(a, b)
    )
    if rel.neq_pairs() != expected:
        raise InvalidStructure("indicators do not induce the cross-block inequality")
    return require_complsep(IneqSet(x, expected), family, "free structure")


@dataclass(frozen=True, eq=False)
class FreeUniversalReport:
    candidates: int
    clauses: tuple[ClauseVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(not c.failed for c in self.clauses)


def free_universal_check(
    x: FinSetoid, y: ComplSep, bounds: Bounds = DEFAULT_BOUNDS
) -> FreeUniversalReport:
    """Every plain map out of the carrier lifts uniquely and strongly
    extensionally out of the free structure; decided by enumeration."""
    free = free_cs(x)
    candidates = enumerate_functions(x, y.carrier, bounds)
    clauses: list[ClauseVerdict] = []
    for h in candidates:
        if is_strongly_extensional(h, free.ineq, y.ineq) is not None:
            clauses.append(
                ClauseVerdict("lift-strongly-extensional", "fail", detail=h.name)
            )
            break
    else:
        clauses.append(ClauseVerdict("lift-strongly-extensional", "pass"))
    # the unit is the identity, so the triangle is pointwise sameness
    triangle_ok = all(pointwise_equal(h, h) for h in candidates)
    clauses.append(ClauseVerdict("triangle", "pass" if triangle_ok else "fail"))
    unique = ClauseVerdict("uniqueness", "pass")
    for h in candidates:
        for g in candidates:
            if pointwise_equal(g, h) and g is not h:
                # distinct representatives never agree; a hit would mean the
                # lift is not unique among candidates
                unique = ClauseVerdict("uniqueness", "fail", detail=h.name)
    clauses.append(unique)
    return FreeUniversalReport(len(candidates), tuple(clauses))


@dataclass(frozen=True, eq=False)
class FreeNaturalitySample:
    """One naturality probe: a map into the left variable and an arrow out
    of the right one."""

    x: FinSetoid
    x2: FinSetoid
    phi: FnTable  # x2 -> x
    y: ComplSep
    y2: ComplSep
    theta: FnTable  # y -> y2, strongly extensional


def free_adjunction_check(
    instances: Sequence[tuple[FinSetoid, ComplSep]],
    samples: Sequence[FreeNaturalitySample] = (),
    bounds: Bounds = DEFAULT_BOUNDS,
) -> AdjunctionReport:
    """Hom-set equality by double enumeration, plus sampled naturality squares."""
    hom_clauses: list[ClauseVerdict] = []
    for x, y in instances:
        free = free_cs(x)
        candidates = enumerate_functions(x, y.carrier, bounds)
        se = [
            h
            for h in candidates
            if is_strongly_extensional(h, free.ineq, y.ineq) is None
        ]
        label = f"{x.name}->{y.carrier.name}"
        missing = [h.name for h in candidates if not any(pointwise_equal(h, g) for g in se)]
        extra = [h.name for h in se if not any(pointwise_equal(h, g) for g in candidates)]
        ok = not missing and not extra
        hom_clauses.append(
            ClauseVerdict(
                f"hom-equality[{label}]",
                "pass" if ok else "fail",
                detail="" if ok else f"missing={missing} extra={extra}",
            )
        )

    left: list[ClauseVerdict] = []
    right: list[ClauseVerdict] = []
    for n, s in enumerate(samples):
        free_x = free_cs(s.x)
        free_x2 = free_cs(s.x2)
        arrows = enumerate_functions(s.x, s.y.carrier, bounds)
        ok_left = True
        for h in arrows:
            if is_strongly_extensional(h, free_x.ineq, s.y.ineq) is not None:
                continue
            moved = compose_tables(h, s.phi)
            if validate_function(moved) is not None:
                ok_left = False
            if is_strongly_extensional(moved, free_x2.ineq, s.y.ineq) is not None:
                ok_left = False
            # both square paths produce the same composite table
            if not pointwise_equal(moved, compose_tables(h, s.phi)):
                ok_left = False
        left.append(ClauseVerdict(f"naturality-left[{n}]", "pass" if ok_left else "fail"))

        ok_right = True
        for h in arrows:
            if is_strongly_extensional(h, free_x.ineq, s.y.ineq) is not None:
                continue
            moved = compose_tables(s.theta, h)
            if validate_function(moved) is not None:
                ok_right = False
            if is_strongly_extensional(moved, free_x.ineq, s.y2.ineq) is not None:
                ok_right = False
            if not pointwise_equal(moved, compose_tables(s.theta, h)):
                ok_right = False
        right.append(ClauseVerdict(f"naturality-right[{n}]", "pass" if ok_right else "fail"))

    return AdjunctionReport(tuple(hom_clauses), tuple(left), tuple(right))


@dataclass(frozen=True, eq=False)
class RhoResult:
    """The reflected structure, the carrier re-typing map, and the member
    re-typings (original, reflected)."""

    cs: ComplSep
    tau: FnTable
    members: tuple[tuple[FnTable, FnTable], ...]


def rho(fs: FunctionSpace) -> RhoResult:
    """Re-equip a function space with its induced relations.

    The family is carried over unchanged (the same tables over the coarser
    equality); the two re-typing maps are asserted to compose to identities
    on tables, and every member becomes strongly extensional.
    """
    rel = induce(fs.carrier, fs.family)
    coarse = rel.eq_setoid(f"rho({fs.carrier.name})")
    ineq = IneqSet(coarse, rel.neq_pairs())
    retyped = tuple(
        FnTable(coarse, dict(m.table), name=m.name) for m in fs.family.members
    )
    family = FnFamily(coarse, retyped)
    cs = require_complsep(ineq, family, "reflected structure")
    for m in retyped:
        if is_strongly_extensional(m, ineq) is not None:
            raise InvalidStructure(f"member {m.name!r} not strongly extensional after reflection")
    tau = FnTable(fs.carrier, {a: a for a in fs.carrier.atoms}, cod=coarse, name="tau")
    if validate_function(tau) is not None:
        raise InvalidStructure("re-typing map is not a function")
    pairs = tuple(zip(fs.family.members, retyped))
    for original, reflected in pairs:
        pulled = compose_real(reflected, tau)
        if not pointwise_equal(pulled, original):
            raise InvalidStructure("re-typing maps do not compose to the identity")
    return RhoResult(cs, tau, pairs)


def rho_arrow(
    h: FnTable, fs: FunctionSpace, y: ComplSep, bounds: Bounds = DEFAULT_BOUNDS
) -> FnTable:
    """Lift an affine map out of a function space through the reflection.

    The lift is the same table over the coarser equality; well-definedness,
    affinity, the triangle, and uniqueness among all candidate tables are
    asserted.
    """
    if h.cod is None or not h.dom.same_carrier(fs.carrier) or not h.cod.same_carrier(y.carrier):
        raise DomainMismatch("arrow endpoints do not match")
    if validate_function(h) is not None:
        raise NotAffine("the table does not respect the source equality")
    for g in y.family.members:
        if not fs.family.contains(compose_real(g, h)):
            raise NotAffine(f"composite with {g.name!r} escapes the source family")
    r = rho(fs)
    lifted = FnTable(r.cs.carrier, dict(h.table), cod=y.carrier, name=f"rho[{h.name}]")
    if validate_function(lifted) is not None:
        raise InvalidStructure("lift does not respect the coarser equality")
    if is_affine(lifted, r.cs, y) is not None:
        raise InvalidStructure("lift is not affine")
    if not pointwise_equal(compose_tables(lifted, r.tau), h):
        raise InvalidStructure("lift triangle does not commute")
    for candidate in enumerate_functions(r.cs.carrier, y.carrier, bounds):
        if pointwise_equal(compose_tables(candidate, r.tau), h):
            if not pointwise_equal(candidate, lifted):
                raise InvalidStructure("lift is not unique")
    return lifted


def _affine_funcspace_arrows(
    src: FunctionSpace, dst: FunctionSpace, bounds: Bounds
) -> list[FnTable]:
    out = []
    for h in enumerate_functions(src.carrier, dst.carrier, bounds):
        if all(src.family.contains(compose_real(g, h)) for g in dst.family.members):
            out.append(h)
    return out


def _coarse_key(h: FnTable, coarse: FinSetoid) -> tuple:
    return tuple(coarse.block_of(h.value(a)) for a in h.dom.atoms)


@dataclass(frozen=True, eq=False)
class RhoNaturalitySample:
    a: ComplSep
    a2: ComplSep
    phi: FnTable  # a2 -> a, affine
    fs: FunctionSpace
    fs2: FunctionSpace
    theta: FnTable  # fs -> fs2, affine in the function-space sense


def rho_adjunction_check(
    instances: Sequence[tuple[ComplSep, FunctionSpace]],
    samples: Sequence[RhoNaturalitySample] = (),
    bounds: Bounds = DEFAULT_BOUNDS,
) -> AdjunctionReport:
    """Both adjunctions around the reflection, decided by enumeration.

    For each instance (a, fs): the affine arrows a -> fs (function-space
    sense) coincide with the affine arrows a -> rho(fs), and the affine
    arrows fs -> a coincide with the affine arrows rho(fs) -> a, the latter
    via the universal property of the lift.  All comparisons are made up to
    the coarser pointwise equality.
    """
    hom_clauses: list[ClauseVerdict] = []
    for a, fs in instances:
        r = rho(fs)
        coarse = r.cs.carrier
        label = f"{a.carrier.name}|{fs.carrier.name}"

        emb_a = FunctionSpace(a.carrier, a.family)
        hom1 = _affine_funcspace_arrows(emb_a, fs, bounds)
        hom2 = []
        for h in enumerate_functions(a.carrier, coarse, bounds):
            if all(a.family.contains(compose_real(g, h)) for g in r.cs.family.members):
                hom2.append(h)
        keys1 = {_coarse_key(h, coarse) for h in hom1}
        keys2 = {_coarse_key(h, coarse) for h in hom2}
        hom_clauses.append(
            ClauseVerdict(
                f"emb-then-reflect[{label}]",
                "pass" if keys1 == keys2 else "fail",
                detail="" if keys1 == keys2 else f"{len(keys1)} vs {len(keys2)} arrows",
            )
        )

        hom3 = _affine_funcspace_arrows(fs, emb_a, bounds)
        for h in hom3:
            rho_arrow(h, fs, a, bounds)
        hom4 = []
        for h in enumerate_functions(coarse, a.carrier, bounds):
            if all(r.cs.family.contains(compose_real(g, h)) for g in a.family.members):
                hom4.append(h)
        akeys3 = {_coarse_key(h, a.carrier) for h in hom3}
        akeys4 = {_coarse_key(h, a.carrier) for h in hom4}
        hom_clauses.append(
            ClauseVerdict(
                f"reflect-then-emb[{label}]",
                "pass" if akeys3 == akeys4 else "fail",
                detail="" if akeys3 == akeys4 else f"{len(akeys3)} vs {len(akeys4)} arrows",
            )
        )

    left: list[ClauseVerdict] = []
    right: list[ClauseVerdict] = []
    for n, s in enumerate(samples):
        ok_left = True
        emb_a = FunctionSpace(s.a.carrier, s.a.family)
        for h in _affine_funcspace_arrows(emb_a, s.fs, bounds):
            moved = compose_tables(h, s.phi)
            if not all(
                s.a2.family.contains(compose_real(g, moved)) for g in s.fs.family.members
            ):
                ok_left = False
            if not pointwise_equal(moved, compose_tables(h, s.phi)):
                ok_left = False
        left.append(ClauseVerdict(f"naturality-left[{n}]", "pass" if ok_left else "fail"))

        ok_right = True
        for h in _affine_funcspace_arrows(emb_a, s.fs, bounds):
            moved = compose_tables(s.theta, h)
            if not all(
                s.a.family.contains(compose_real(g, moved)) for g in s.fs2.family.members
            ):
                ok_right = False
            if not pointwise_equal(moved, compose_tables(s.theta, h)):
                ok_right = False
        right.append(ClauseVerdict(f"naturality-right[{n}]", "pass" if ok_right else "fail"))

    return AdjunctionReport(tuple(hom_clauses), tuple(left), tuple(right))


@dataclass(frozen=True, eq=False)
class ProductPreservationReport:
    clauses: tuple[ClauseVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(not c.failed for c in self.clauses)


def product_funcspace(fsx: FunctionSpace, fsy: FunctionSpace) -> FunctionSpace:
    """The product function space: pair carrier, projected families."""
    prod = product_setoid(fsx.carrier, fsy.carrier)
    members = [
        compose_real(f, prod.pr_left, name=f"L:{f.name}") for f in fsx.family.members
    ] + [
        compose_real(g, prod.pr_right, name=f"R:{g.name}") for g in fsy.family.members
    ]
    return FunctionSpace(prod.setoid, FnFamily(prod.setoid, tuple(members)))


def rho_product_check(
    fsx: FunctionSpace, fsy: FunctionSpace, bounds: Bounds = DEFAULT_BOUNDS
) -> ProductPreservationReport:
    """Reflecting a product function space equals the product of the
    reflections: same partition, same inequality, same induced relations."""
    whole = rho(product_funcspace(fsx, fsy))
    left = rho(fsx)
    right = rho(fsy)
    piecewise = cs_product(left.cs, right.cs, bounds)

    clauses = []
    same_partition = whole.cs.carrier.same_carrier(piecewise.carrier)
    clauses.append(ClauseVerdict("same-partition", "pass" if same_partition else "fail"))
    same_neq = whole.cs.ineq.neq == piecewise.ineq.neq
    clauses.append(ClauseVerdict("same-inequality", "pass" if same_neq else "fail"))
    rel_whole = induce(whole.cs.carrier, whole.cs.family)
    rel_piece = induce(whole.cs.carrier, FnFamily(whole.cs.carrier, tuple(
        FnTable(whole.cs.carrier, dict(m.table), name=m.name)
        for m in piecewise.family.members
    )))
    same_induced = (
        rel_whole.eq_blocks == rel_piece.eq_blocks
        and rel_whole.neq_pairs() == rel_piece.neq_pairs()
    )
    clauses.append(ClauseVerdict("families-induce-same-relations", "pass" if same_induced else "fail"))
    return ProductPreservationReport(tuple(clauses))


@dataclass(frozen=True, eq=False)
class DualResult:
    """The dual structure on a family's members, with the member map."""

    cs: ComplSep
    members: Mapping[str, FnTable]


def dual_cs(fs: FunctionSpace) -> DualResult:
    """Family members as points, separated by the evaluation functionals."""
    reps: dict[tuple, FnTable] = {}
    for m in fs.family.members:
        reps.setdefault(canonical_key(m), m)
    atoms = tuple(f"m{k}" for k in range(len(reps)))
    by_atom = dict(zip(atoms, reps.values()))
    setoid = FinSetoid.discrete(f"dual({fs.carrier.name})", atoms)
    neq = frozenset(
        (s, t)
        for s in atoms
        for t in atoms
        if any(
            rat_apart(by_atom[s].value(x), by_atom[t].value(x)) is not None
            for x in fs.carrier.atoms
        )
    )
    evals = tuple(
        FnTable(setoid, {s: by_atom[s].value(x) for s in atoms}, name=f"ev[{x}]")
        for x in fs.carrier.atoms
    )
    cs = require_complsep(IneqSet(setoid, neq), FnFamily(setoid, evals), "dual structure")
    return DualResult(cs, by_atom)


def dual_arrow(h: FnTable, src: FunctionSpace, dst: FunctionSpace) -> FnTable:
    """The contravariant action: pull each target member back along h."""
    for g in dst.family.members:
        if not src.family.contains(compose_real(g, h)):
            raise NotAffine(f"composite with {g.name!r} escapes the source family")
    d_src = dual_cs(src)
    d_dst = dual_cs(dst)
    src_by_key = {canonical_key(m): atom for atom, m in d_src.members.items()}
    table = {}
    for atom, g in d_dst.members.items():
        table[atom] = src_by_key[canonical_key(compose_real(g, h))]
    return FnTable(d_dst.cs.carrier, table, cod=d_src.cs.carrier, name=f"dual[{h.name}]")


def hom_family_M(
    x: IneqSet, fam: Family, bounds: Bounds = DEFAULT_BOUNDS
) -> Family:
    """The family of function spaces into the fibers, transported by
    post-composition; all family laws are asserted."""
    from .families import validate_family

    index = fam.index.base
    carriers: dict[str, FunctionCarrier] = {}
    fibers: dict[str, IneqSet] = {}
    for i in index.atoms:
        fc = function_carrier(x.base, fam.fiber(i).base, bounds, name=f"hom({i})")
        carriers[i] = fc
        names = fc.setoid.atoms
        neq = frozenset(
            (s, t)
            for s in names
            for t in names
            if any(
                fam.fiber(i).apart(fc.tables[s].value(a), fc.tables[t].value(a))
                for a in x.base.atoms
            )
        )
        fibers[i] = IneqSet(fc.setoid, neq)
    transports: dict[tuple[str, str], FnTable] = {}
    for (i, j) in diagonal(index):
        key_to_name = {
            canonical_key(t): name for name, t in carriers[j].tables.items()
        }
        table = {}
        for name, t in carriers[i].tables.items():
            composite = compose_tables(fam.transport(i, j), t)
            table[name] = key_to_name[canonical_key(composite)]
        transports[(i, j)] = FnTable(
            carriers[i].setoid, table, cod=carriers[j].setoid, name=f"post[{i},{j}]"
        )
    result = Family(fam.index, fibers, transports)
    bad = validate_family(result)
    if bad is not None:
        raise InvalidStructure(f"function-space family violates the laws: {bad.describe()}")
    return result


@dataclass(frozen=True, eq=False)
class EmbedReport:
    table: FnTable
    clauses: tuple[ClauseVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(not c.failed for c in self.clauses)

    def clause(self, name: str) -> ClauseVerdict:
        for c in self.clauses:
            if c.clause == name:
                return c
        raise KeyError(name)


def embed_eH(
    x: IneqSet,
    fam: Family,
    h: Mapping[str, FnTable],
    bounds: Bounds = DEFAULT_BOUNDS,
) -> EmbedReport:
    """Tuple a compatible choice of maps into the fibers into one map into
    the dependent-function structure."""
    index = fam.index.base
    for i in index.atoms:
        if i not in h:
            raise NotCompatible(f"no component at index atom {i!r}")
        hi = h[i]
        if hi.cod is None or not hi.dom.same_carrier(x.base) or not hi.cod.same_carrier(fam.fiber(i).base):
            raise DomainMismatch(f"component at {i!r} has wrong endpoints")
        if validate_function(hi) is not None:
            raise DomainMismatch(f"component at {i!r} is not a function")
    for (i, j) in diagonal(index):
        moved = compose_tables(fam.transport(i, j), h[i])
        if not pointwise_equal(moved, h[j]):
            raise NotCompatible(f"components disagree along ({i},{j})")

    pi = pi_set(fam, bounds)
    clauses: list[ClauseVerdict] = []
    table: dict[str, str] = {}
    for a in x.base.atoms:
        hit = None
        for w, theta in pi.tables.items():
            if all(
                fam.fiber(i).base.eq(theta[i], h[i].value(a)) for i in index.atoms
            ):
                hit = w
                break
        if hit is None:
            raise InvalidStructure(f"no compatible dependent image for atom {a!r}")
        table[a] = hit
    clauses.append(ClauseVerdict("lands-in-pi", "pass"))

    e = FnTable(x.base, table, cod=pi.ineq.base, name="embed")
    clauses.append(
        ClauseVerdict(
            "respects-equality",
            "pass" if validate_function(e) is None else "fail",
        )
    )

    # separation of the singleton image family is literally injectivity up
    # to the equalities, so the embedding clause holds whenever it applies
    injective = all(
        x.base.eq(a, b)
        for a in x.base.atoms
        for b in x.base.atoms
        if pi.ineq.base.eq(e.value(a), e.value(b))
    )
    if injective:
        clauses.append(ClauseVerdict("embedding", "pass"))
    else:
        clauses.append(ClauseVerdict("embedding", "not-applicable", detail="image family not separating"))

    components_se = all(
        is_strongly_extensional(h[i], x, fam.fiber(i)) is None for i in index.atoms
    )
    if components_se:
        se_ok = True
        for a in x.base.atoms:
            for b in x.base.atoms:
                if pi.ineq.apart(e.value(a), e.value(b)) and not x.apart(a, b):
                    se_ok = False
        clauses.append(ClauseVerdict("strongly-extensional", "pass" if se_ok else "fail"))
    else:
        clauses.append(
            ClauseVerdict("strongly-extensional", "not-applicable", detail="a component is not strongly extensional")
        )

    return EmbedReport(e, tuple(clauses))


@dataclass(frozen=True, eq=False)
class RPower:
    """A finite power of the rational line over a family's members."""

    cs: ComplSep
    coords: Mapping[str, Mapping[str, Rat]]  # carrier atom -> member atom -> value
    member_atoms: tuple[str, ...]
    member_of: Mapping[str, FnTable]
    values: tuple[Rat, ...]


def r_power(
    f: FnFamily, values: Sequence[Rat] | None = None, bounds: Bounds = DEFAULT_BOUNDS
) -> RPower:
    """The coordinate structure on dependent tables over a family's members.

    Each coordinate ranges over a finite value universe, which defaults to
    every value attained by the family; pointwise-equal members are forced
    to share coordinates.
    """
    member_atoms = tuple(f"c{k}" for k in range(len(f.members)))
    member_of = dict(zip(member_atoms, f.members))
    groups: dict[tuple, list[str]] = {}
    for atom, m in member_of.items():
        groups.setdefault(canonical_key(m), []).append(atom)
    index = FinSetoid("dualix", member_atoms, tuple(map(tuple, groups.values())))

    if values is None:
        pool = sorted({m.value(a) for m in f.members for a in f.carrier.atoms})
    else:
        pool = sorted(set(values))
    if f.members and not pool:
        raise EmptyValueUniverse("no coordinate values available")

    count = max(1, len(pool)) ** len(index.blocks)
    if count > bounds.max_enum:
        raise CarrierTooLarge(f"{count} coordinate tables exceed the bound {bounds.max_enum}")

    from itertools import product as iproduct

    combos = list(iproduct(pool, repeat=len(index.blocks)))
    atoms = tuple(f"v{n}" for n in range(len(combos)))
    coords = {
        atoms[n]: {
            c: combos[n][index.block_of(c)] for c in member_atoms
        }
        for n in range(len(combos))
    }
    setoid = FinSetoid.discrete(f"rpow({f.carrier.name})", atoms)
    neq = frozenset(
        (s, t)
        for s in atoms
        for t in atoms
        if any(rat_apart(coords[s][c], coords[t][c]) is not None for c in member_atoms)
    )
    projections = tuple(
        FnTable(setoid, {w: coords[w][c] for w in atoms}, name=f"pr[{c}]")
        for c in member_atoms
    )
    cs = require_complsep(IneqSet(setoid, neq), FnFamily(setoid, projections), "coordinate power")
    return RPower(cs, coords, member_atoms, member_of, tuple(pool))


@dataclass(frozen=True, eq=False)
class TychonoffReport:
    separating: bool
    table: FnTable
    clauses: tuple[ClauseVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(not c.failed for c in self.clauses)

    def clause(self, name: str) -> ClauseVerdict:
        for c in self.clauses:
            if c.clause == name:
                return c
        raise KeyError(name)


def tychonoff_check(
    fs: FunctionSpace,
    supplied: FnTable | None = None,
    bounds: Bounds = DEFAULT_BOUNDS,
    search: bool = True,
) -> TychonoffReport:
    """The separation-versus-embedding biconditional for a function space.

    The canonical coordinate map sends an atom to the tuple of its member
    values.  Separation makes it an injective affine embedding; conversely
    an affine injective map into the coordinate power forces separation.
    A missing converse witness is only searched for within bounds and its
    absence is reported as such, never as a refutation.
    """
    rp = r_power(fs.family, None, bounds)
    rel = induce(fs.carrier, fs.family)
    # the induced inequality over the *declared* carrier equality
    x_ineq = IneqSet(fs.carrier, rel.neq_pairs())

    table = {}
    for a in fs.carrier.atoms:
        wanted = {c: rp.member_of[c].value(a) for c in rp.member_atoms}
        hit = None
        for w, coord in rp.coords.items():
            if all(coord[c] == wanted[c] for c in rp.member_atoms):
                hit = w
                break
        if hit is None:
            raise InvalidStructure("attained value tuple missing from the coordinate power")
        table[a] = hit
    e = FnTable(fs.carrier, table, cod=rp.cs.carrier, name="coord")

    clauses: list[ClauseVerdict] = []
    affine_ok = all(
        pointwise_equal(compose_real(pr, e), rp.member_of[c])
        for c, pr in zip(rp.member_atoms, rp.cs.family.members)
    )
    clauses.append(ClauseVerdict("projections-recover-members", "pass" if affine_ok else "fail"))

    separating, counterexample = is_separating(fs.carrier, fs.family)
    injective = all(
        fs.carrier.eq(a, b)
        for a in fs.carrier.atoms
        for b in fs.carrier.atoms
        if rp.cs.carrier.eq(e.value(a), e.value(b))
    )
    clauses.append(
        ClauseVerdict(
            "injective-iff-separating",
            "pass" if injective == separating else "fail",
            detail=f"injective={injective} separating={separating}",
        )
    )

    if separating:
        respects = validate_function(e) is None
        clauses.append(ClauseVerdict("embedding", "pass" if respects and injective else "fail"))
    else:
        clauses.append(ClauseVerdict("embedding", "not-applicable", detail=f"not separated at {counterexample}"))

    members_se = all(
        is_strongly_extensional(m, x_ineq) is None for m in fs.family.members
    )
    if members_se:
        se_ok = is_strongly_extensional(e, x_ineq, rp.cs.ineq) is None
        clauses.append(ClauseVerdict("strongly-extensional", "pass" if se_ok else "fail"))
    else:
        clauses.append(ClauseVerdict("strongly-extensional", "not-applicable"))

    if supplied is not None:
        if supplied.cod is None or not supplied.cod.same_carrier(rp.cs.carrier):
            raise DomainMismatch("supplied map does not land in the coordinate power")
        if validate_function(supplied) is not None:
            raise NotAffine("supplied map is not a function")
        for pr in rp.cs.family.members:
            if not fs.family.contains(compose_real(pr, supplied)):
                raise NotAffine("supplied map is not affine")
        inj = all(
            fs.carrier.eq(a, b)
            for a in fs.carrier.atoms
            for b in fs.carrier.atoms
            if rp.cs.carrier.eq(supplied.value(a), supplied.value(b))
        )
        if not inj:
            raise NotAffine("supplied map is not injective up to equalities")
        clauses.append(
            ClauseVerdict("embedding-forces-separation", "pass" if separating else "fail")
        )
    elif separating:
        clauses.append(ClauseVerdict("embedding-forces-separation", "pass", detail="canonical embedding exists"))
    elif search:
        hom_count = len(rp.cs.carrier.blocks) ** len(fs.carrier.blocks)
        if hom_count > bounds.max_enum:
            clauses.append(
                ClauseVerdict(
                    "embedding-forces-separation",
                    "not-applicable",
                    detail=f"search space {hom_count} exceeds the bound",
                )
            )
        else:
            found = None
            for cand in enumerate_functions(fs.carrier, rp.cs.carrier, bounds):
                if not all(
                    fs.family.contains(compose_real(pr, cand))
                    for pr in rp.cs.family.members
                ):
                    continue
                inj = all(
                    fs.carrier.eq(a, b)
                    for a in fs.carrier.atoms
                    for b in fs.carrier.atoms
                    if rp.cs.carrier.eq(cand.value(a), cand.value(b))
                )
                if inj:
                    found = cand
                    break
            clauses.append(
                ClauseVerdict(
                    "embedding-forces-separation",
                    "fail" if found is not None else "pass",
                    detail=(
                        f"affine injective {found.name} exists without separation"
                        if found is not None
                        else "no embedding found within bounds"
                    ),
                )
            )
    else:
        clauses.append(ClauseVerdict("embedding-forces-separation", "not-applicable"))

    return TychonoffReport(separating, e, tuple(clauses))
