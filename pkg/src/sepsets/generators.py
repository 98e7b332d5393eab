"""Seeded random instances for the law sweeps.

Everything takes an explicit `random.Random`, so sweeps are reproducible.
Families of structures that must satisfy laws by construction (transport
triangles, member-transport compatibility) are built from automorphism
twists of a prototype fiber: transports of the form "untwist, then twist"
compose correctly no matter which automorphisms are chosen.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .complsep import ComplSep, require_complsep
from .families import CSFamily, Family, GlobalFamily, constant_family, diagonal
from .induced import induce
from .kernel import (
    FinSetoid,
    FnFamily,
    FnTable,
    IneqSet,
    identity_table,
)
from .universal import FunctionSpace

DEFAULT_POOL = None  # draw fresh rationals unless a pool is supplied


def gen_rational(rng: random.Random, max_den: int = 16) -> Fraction:
    return Fraction(rng.randint(-8, 8), rng.randint(1, max_den))


def gen_setoid(
    rng: random.Random, max_atoms: int = 8, prefix: str = "x", min_atoms: int = 1
) -> FinSetoid:
    n = rng.randint(min_atoms, max_atoms)
    atoms = tuple(f"{prefix}{k}" for k in range(n))
    blocks: list[list[str]] = []
    for a in atoms:
        if blocks and rng.random() < 0.4:
            rng.choice(blocks).append(a)
        else:
            blocks.append([a])
    return FinSetoid(f"{prefix.upper()}{n}", atoms, tuple(map(tuple, blocks)))


def gen_member(
    rng: random.Random,
    carrier: FinSetoid,
    max_den: int = 16,
    pool: Sequence[Fraction] | None = DEFAULT_POOL,
    name: str = "",
) -> FnTable:
    """A random function: one value per block, spread over the block's atoms."""
    per_block = [
        rng.choice(pool) if pool else gen_rational(rng, max_den)
        for _ in carrier.blocks
    ]
    table = {a: per_block[carrier.block_of(a)] for a in carrier.atoms}
    return FnTable(carrier, table, name=name or f"f{rng.randrange(10**6)}")


def gen_family(
    rng: random.Random,
    carrier: FinSetoid,
    max_members: int = 5,
    max_den: int = 16,
    pool: Sequence[Fraction] | None = DEFAULT_POOL,
    min_members: int = 0,
) -> FnFamily:
    n = rng.randint(min_members, max_members)
    members = tuple(
        gen_member(rng, carrier, max_den, pool, name=f"f{k}") for k in range(n)
    )
    return FnFamily(carrier, members)


def gen_function_space(
    rng: random.Random,
    max_atoms: int = 8,
    max_members: int = 5,
    max_den: int = 16,
    pool: Sequence[Fraction] | None = DEFAULT_POOL,
    min_members: int = 0,
) -> FunctionSpace:
    carrier = gen_setoid(rng, max_atoms)
    return FunctionSpace(
        carrier, gen_family(rng, carrier, max_members, max_den, pool, min_members)
    )


def gen_ineqset(
    rng: random.Random, max_atoms: int = 6, lawful: bool = True, prefix: str = "x"
) -> IneqSet:
    """A structure with either an induced (lawful) or a random relation."""
    carrier = gen_setoid(rng, max_atoms, prefix)
    if lawful:
        fam = gen_family(rng, carrier, max_members=3)
        return IneqSet(carrier, induce(carrier, fam).neq_pairs())
    pairs = set()
    for a in carrier.atoms:
        for b in carrier.atoms:
            if rng.random() < 0.3:
                pairs.add((a, b))
    return IneqSet(carrier, frozenset(pairs))


def gen_complsep(
    rng: random.Random,
    max_atoms: int = 5,
    max_members: int = 3,
    pool: Sequence[Fraction] | None = DEFAULT_POOL,
) -> ComplSep:
    """A completely separated structure: re-equip a random function space
    with its own induced relations."""
    carrier = gen_setoid(rng, max_atoms)
    fam = gen_family(rng, carrier, max_members, pool=pool)
    rel = induce(carrier, fam)
    coarse = rel.eq_setoid(f"cs({carrier.name})")
    retyped = FnFamily(
        coarse, tuple(FnTable(coarse, dict(m.table), name=m.name) for m in fam.members)
    )
    return require_complsep(IneqSet(coarse, rel.neq_pairs()), retyped, "generated structure")


def ineq_automorphisms(s: IneqSet, limit: int = 24) -> list[FnTable]:
    """Atom permutations preserving both relations in both directions."""
    atoms = s.base.atoms
    out = []
    for perm in permutations(atoms):
        mapping = dict(zip(atoms, perm))
        if not all(
            s.base.eq(a, b) == s.base.eq(mapping[a], mapping[b])
            and s.apart(a, b) == s.apart(mapping[a], mapping[b])
            for a in atoms
            for b in atoms
        ):
            continue
        out.append(FnTable(s.base, mapping, cod=s.base, name="aut"))
        if len(out) >= limit:
            break
    return out


def _invert(perm: FnTable) -> FnTable:
    return FnTable(
        perm.dom, {perm.value(a): a for a in perm.dom.atoms}, cod=perm.dom, name="aut'"
    )


def gen_set_family(
    rng: random.Random,
    max_index: int = 4,
    max_fiber: int = 5,
    lawful_fibers: bool = True,
) -> Family:
    """A lawful family: per index block, a prototype fiber twisted by
    automorphisms, so the transport laws hold by construction."""
    index = gen_ineqset(rng, max_index, lawful=rng.random() < 0.7, prefix="i")
    fibers: dict[str, IneqSet] = {}
    twists: dict[str, FnTable] = {}
    for block in index.base.blocks:
        proto = gen_ineqset(rng, max_fiber, lawful=lawful_fibers, prefix="z")
        auts = ineq_automorphisms(proto)
        for i in block:
            fibers[i] = proto
            twists[i] = rng.choice(auts)
    transports = {
        (i, j): _compose(twists[j], _invert(twists[i]))
        for (i, j) in diagonal(index.base)
    }
    return Family(index, fibers, transports)


def _compose(second: FnTable, first: FnTable) -> FnTable:
    from .kernel import compose_tables

    return compose_tables(second, first, name="aut")


def gen_cs_family(
    rng: random.Random,
    max_index: int = 3,
    max_fiber: int = 4,
    pool: Sequence[Fraction] | None = DEFAULT_POOL,
) -> CSFamily:
    """A lawful completely separated family over a generated index."""
    index_cs = gen_complsep(rng, max_index, max_members=2, pool=pool)
    fibers: dict[str, IneqSet] = {}
    families: dict[str, FnFamily] = {}
    twists: dict[str, FnTable] = {}
    for block in index_cs.carrier.blocks:
        proto = gen_complsep(rng, max_fiber, max_members=3, pool=pool)
        auts = ineq_automorphisms(proto.ineq)
        for i in block:
            sigma = rng.choice(auts)
            fibers[i] = proto.ineq
            twists[i] = sigma
            inv = _invert(sigma)
            families[i] = FnFamily(
                proto.carrier,
                tuple(
                    _pullback(m, inv) for m in proto.family.members
                ),
            )
    transports = {
        (i, j): _compose(twists[j], _invert(twists[i]))
        for (i, j) in diagonal(index_cs.carrier)
    }
    fn_transports = {
        (i, j): tuple(range(len(families[i].members)))
        for (i, j) in diagonal(index_cs.carrier)
    }
    base = Family(index_cs.ineq, fibers, transports)
    return CSFamily(index_cs, base, families, fn_transports)


def _pullback(member: FnTable, along: FnTable) -> FnTable:
    from .kernel import compose_real

    return compose_real(member, along, name=member.name)


def gen_global_family(
    rng: random.Random,
    max_index: int = 3,
    max_fiber: int = 4,
    pool: Sequence[Fraction] | None = DEFAULT_POOL,
    twisted: bool | None = None,
) -> GlobalFamily:
    """A lawful global family: one prototype fiber twisted at every index.

    With twisted=False all transports are identities (the constant family).
    """
    index_cs = gen_complsep(rng, max_index, max_members=2, pool=pool)
    proto = gen_complsep(rng, max_fiber, max_members=3, pool=pool)
    if twisted is None:
        twisted = rng.random() < 0.6
    auts = ineq_automorphisms(proto.ineq) if twisted else [identity_table(proto.carrier)]
    atoms = index_cs.carrier.atoms
    twists = {i: rng.choice(auts) for i in atoms}
    fibers = {i: proto.ineq for i in atoms}
    families = {
        i: FnFamily(
            proto.carrier,
            tuple(_pullback(m, _invert(twists[i])) for m in proto.family.members),
        )
        for i in atoms
    }
    transports = {
        (i, j): _compose(twists[j], _invert(twists[i])) for i in atoms for j in atoms
    }
    fn_transports = {
        (i, j): tuple(range(len(proto.family.members))) for i in atoms for j in atoms
    }
    return GlobalFamily(index_cs, fibers, families, transports, fn_transports)


def gen_plain_arrow(rng: random.Random, src: FinSetoid, dst: FinSetoid, name: str = "h") -> FnTable:
    """A random equality-respecting table src -> dst."""
    per_block = [rng.choice(dst.block_reps()) for _ in src.blocks]
    table = {a: per_block[src.block_of(a)] for a in src.atoms}
    return FnTable(src, table, cod=dst, name=name)


def gen_se_arrow(
    rng: random.Random, src: IneqSet, dst: IneqSet, tries: int = 50, name: str = "h"
) -> FnTable | None:
    """A random strongly extensional arrow, or None if sampling fails."""
    from .kernel import is_strongly_extensional

    for _ in range(tries):
        h = gen_plain_arrow(rng, src.base, dst.base, name)
        if is_strongly_extensional(h, src, dst) is None:
            return h
    return None
