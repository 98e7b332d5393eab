"""Document resolution, the law registry, check execution, and reports.

Each registered law id dispatches to exactly one library operation.  A
check's verdict is pass, fail, not-applicable (a conditional law whose
hypothesis does not hold on the instance), or skipped-bound (an
enumeration refused to exceed the configured bound).  Operation errors
other than bound refusals surface as failures with their message; they
never abort the remaining checks.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from fractions import Fraction

from . import families as fam_mod
from . import induced as ind_mod
from . import kernel as ker_mod
from . import universal as uni_mod
from .complsep import ComplSep, cs_funspace, cs_product, cs_subset, is_affine, validate_complsep
from .errors import (
    CarrierTooLarge,
    InvalidStructure,
    SepsetsError,
    SpecFileError,
    UndeclaredName,
    UnknownLawId,
)
from .families import (
    CSFamily,
    Family,
    GlobalFamily,
    dep_strongly_extensional,
    fcl3_check,
    pi_cs,
    second_projection_check,
    sigma_apartness_report,
    sigma_global_cs,
    validate_cs_family,
    validate_family,
    validate_global_family,
)
from .induced import f1_report, induce, metric_family, monotonicity_check
from .kernel import (
    Bounds,
    DEFAULT_BOUNDS,
    FinSetoid,
    FnFamily,
    FnTable,
    IneqSet,
    Witness,
    check_ineq_axioms,
    identity_table,
)
from .rationals import format_rational, parse_rational
from .specfile import (
    CheckDecl,
    CSFamilyDecl,
    FamilyDecl,
    FnDecl,
    IneqDecl,
    SetDecl,
    SetFamilyDecl,
    SpecDocument,
)
from .universal import (
    FreeNaturalitySample,
    FunctionSpace,
    RhoNaturalitySample,
    dual_cs,
    embed_eH,
    free_adjunction_check,
    free_cs,
    free_universal_check,
    hom_family_M,
    r_power,
    rho,
    rho_adjunction_check,
    rho_product_check,
    tychonoff_check,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class WitnessRecord:
    """A witness flattened for serialization; round-trips losslessly."""

    kind: str
    atoms: tuple[str, ...]
    member: str | None
    gap: str | None
    detail: str

    @classmethod
    def from_witness(cls, w: Witness) -> "WitnessRecord":
        return cls(
            w.kind,
            tuple(w.atoms),
            w.member.name if w.member is not None else None,
            format_rational(w.gap) if w.gap is not None else None,
            w.detail,
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "atoms": list(self.atoms),
            "member": self.member,
            "gap": self.gap,
            "detail": self.detail,
        }

    @classmethod
    def from_json(cls, data: dict) -> "WitnessRecord":
        return cls(
            data["kind"], tuple(data["atoms"]), data["member"], data["gap"], data["detail"]
        )


@dataclass(frozen=True)
class CheckResult:
    check: str
    law: str
    verdict: str  # pass | fail | not-applicable | skipped-bound
    details: tuple[str, ...] = ()
    witnesses: tuple[WitnessRecord, ...] = ()
    hypotheses: tuple[tuple[str, bool], ...] = ()


@dataclass(frozen=True)
class Report:
    results: tuple[CheckResult, ...]
    schema_version: int = SCHEMA_VERSION
    timings: tuple[float, ...] = field(default=(), compare=False)

    @property
    def failed(self) -> bool:
        return any(r.verdict == "fail" for r in self.results)

    @property
    def bound_skipped(self) -> bool:
        return any(r.verdict == "skipped-bound" for r in self.results)


@dataclass(frozen=True)
class Env:
    """Resolved declarations, in each namespace by name."""

    bounds: Bounds
    sets: dict
    ineqs: dict
    fns: dict
    families: dict
    setfams: dict
    csfams: dict
    globalfams: dict
    checks: tuple[CheckDecl, ...]


def _resolve_transport(value: str, src: IneqSet, dst: IneqSet, env: "Env", what: str) -> FnTable:
    if value == "id":
        if not src.base.same_carrier(dst.base):
            raise InvalidStructure(f"{what}: 'id' needs identical fiber carriers")
        return identity_table(src.base)
    t = env.fns[value]
    if t.cod is None or not t.dom.same_carrier(src.base) or not t.cod.same_carrier(dst.base):
        raise InvalidStructure(f"{what}: {value!r} has the wrong endpoints")
    return t


def _member_index(fam: FnFamily, name: str, what: str) -> int:
    hits = [k for k, m in enumerate(fam.members) if m.name == name]
    if len(hits) != 1:
        raise InvalidStructure(f"{what}: member {name!r} not found exactly once")
    return hits[0]


def _resolve_fn_transport(
    items, src: FnFamily, dst: FnFamily, what: str
) -> tuple[int, ...]:
    if items == (("id", "id"),):
        if len(src.members) != len(dst.members):
            raise InvalidStructure(f"{what}: 'id' needs families of equal size")
        return tuple(range(len(src.members)))
    mapping = {}
    for a, b in items:
        mapping[_member_index(src, a, what)] = _member_index(dst, b, what)
    if sorted(mapping) != list(range(len(src.members))):
        raise InvalidStructure(f"{what}: every member needs exactly one image")
    return tuple(mapping[k] for k in range(len(src.members)))


def effective_bounds(
    doc: SpecDocument, max_atoms: int | None = None, max_enum: int | None = None
) -> Bounds:
    """Defaults, overridden by document settings, overridden by explicit flags."""
    atoms = DEFAULT_BOUNDS.max_atoms
    enum = DEFAULT_BOUNDS.max_enum
    if doc.settings.max_atoms is not None:
        atoms = doc.settings.max_atoms
    if doc.settings.max_enum is not None:
        enum = doc.settings.max_enum
    if max_atoms is not None:
        atoms = max_atoms
    if max_enum is not None:
        enum = max_enum
    return Bounds(atoms, enum)


def resolve(
    doc: SpecDocument, max_atoms: int | None = None, max_enum: int | None = None
) -> Env:
    """Build library structures from a parsed document, in declaration order.

    Raises a diagnostic on any structural defect (oversized carriers,
    functions that do not respect their equality, missing transports, an
    index that is not completely separated where one is required).
    """
    eff = effective_bounds(doc, max_atoms, max_enum)
    env = Env(eff, {}, {}, {}, {}, {}, {}, {}, ())
    checks: list[CheckDecl] = []
    for d in doc.decls:
        if isinstance(d, SetDecl):
            if len(d.atoms) > eff.max_atoms:
                raise CarrierTooLarge(
                    f"set {d.name!r} has {len(d.atoms)} atoms, bound is {eff.max_atoms}"
                )
            blocks = d.blocks if d.blocks else tuple((a,) for a in d.atoms)
            env.sets[d.name] = FinSetoid(d.name, d.atoms, blocks)
        elif isinstance(d, IneqDecl):
            base = env.sets[d.base]
            if d.induced_by is not None:
                fam = env.families[d.induced_by]
                if not fam.carrier.same_carrier(base):
                    raise InvalidStructure(
                        f"ineq {d.name!r}: family {d.induced_by!r} lives on another carrier"
                    )
                neq = induce(base, fam).neq_pairs()
            else:
                neq = frozenset(d.pairs)
            env.ineqs[d.name] = IneqSet(base, neq)
        elif isinstance(d, FnDecl):
            dom = env.sets[d.on]
            if d.to is None:
                table = FnTable(dom, dict(d.real_values), name=d.name)
            else:
                table = FnTable(dom, dict(d.atom_values), cod=env.sets[d.to], name=d.name)
            bad = ker_mod.validate_function(table)
            if bad is not None:
                raise InvalidStructure(
                    f"fn {d.name!r} does not respect the equality of {d.on!r} at {bad.atoms}"
                )
            env.fns[d.name] = table
        elif isinstance(d, FamilyDecl):
            carrier = env.sets[d.on]
            if d.is_metric:
                env.families[d.name] = metric_family(
                    carrier, dict(d.metric), triangle=not d.pseudometric
                )
            else:
                members = tuple(env.fns[m] for m in d.members)
                env.families[d.name] = FnFamily(carrier, members)
        elif isinstance(d, SetFamilyDecl):
            index = env.ineqs[d.index]
            fibers = {i: env.ineqs[f] for i, f in d.fibers}
            for i in index.base.atoms:
                if i not in fibers:
                    raise InvalidStructure(f"setfamily {d.name!r}: no fiber for atom {i!r}")
            transports = {}
            for (i, j), value in d.transports:
                transports[(i, j)] = _resolve_transport(
                    value, fibers[i], fibers[j], env, f"setfamily {d.name!r}"
                )
            for pair in fam_mod.diagonal(index.base):
                if pair not in transports:
                    raise InvalidStructure(
                        f"setfamily {d.name!r}: no transport for the diagonal pair {pair}"
                    )
            env.setfams[d.name] = Family(index, fibers, transports)
        elif isinstance(d, CSFamilyDecl):
            index = env.ineqs[d.index]
            index_family = env.families[d.index_family]
            built = validate_complsep(index, index_family)
            if isinstance(built, Witness):
                raise InvalidStructure(
                    f"{d.kind} {d.name!r}: index is not completely separated ({built.describe()})"
                )
            fibers = {i: env.ineqs[f] for i, f in d.fibers}
            fiber_families = {i: env.families[f] for i, f in d.fiber_families}
            for i in index.base.atoms:
                if i not in fibers or i not in fiber_families:
                    raise InvalidStructure(f"{d.kind} {d.name!r}: missing data for atom {i!r}")
            transports = {}
            for (i, j), value in d.transports:
                transports[(i, j)] = _resolve_transport(
                    value, fibers[i], fibers[j], env, f"{d.kind} {d.name!r}"
                )
            fn_transports = {}
            for (i, j), items in d.fn_transports:
                fn_transports[(i, j)] = _resolve_fn_transport(
                    items, fiber_families[i], fiber_families[j], f"{d.kind} {d.name!r}"
                )
            if d.kind == "csfamily":
                wanted = fam_mod.diagonal(index.base)
            else:
                wanted = tuple(
                    (i, j) for i in index.base.atoms for j in index.base.atoms
                )
            for pair in wanted:
                if pair not in transports or pair not in fn_transports:
                    raise InvalidStructure(
                        f"{d.kind} {d.name!r}: missing transports for the pair {pair}"
                    )
            if d.kind == "csfamily":
                env.csfams[d.name] = CSFamily(
                    built, Family(index, fibers, transports), fiber_families, fn_transports
                )
            else:
                env.globalfams[d.name] = GlobalFamily(
                    built, fibers, fiber_families, transports, fn_transports
                )
        elif isinstance(d, CheckDecl):
            checks.append(d)
    return Env(
        env.bounds,
        env.sets,
        env.ineqs,
        env.fns,
        env.families,
        env.setfams,
        env.csfams,
        env.globalfams,
        tuple(checks),
    )


class _Params:
    def __init__(self, check: CheckDecl, env: Env):
        self.check = check
        self.env = env
        self.map = dict(check.params)

    def raw(self, key: str, default: str | None = None) -> str | None:
        return self.map.get(key, default)

    def _lookup(self, key: str, table: dict, what: str):
        name = self.map.get(key)
        if name is None:
            raise UndeclaredName(f"check {self.check.name!r}: missing parameter {key!r}")
        if name not in table:
            raise UndeclaredName(
                f"check {self.check.name!r}: {name!r} is not a declared {what}"
            )
        return table[name]

    def set_(self, key: str = "set") -> FinSetoid:
        return self._lookup(key, self.env.sets, "set")

    def ineq(self, key: str = "ineq") -> IneqSet:
        return self._lookup(key, self.env.ineqs, "ineq")

    def fn(self, key: str = "fn") -> FnTable:
        return self._lookup(key, self.env.fns, "fn")

    def family(self, key: str = "family") -> FnFamily:
        return self._lookup(key, self.env.families, "family")

    def setfam(self, key: str = "target") -> Family:
        return self._lookup(key, self.env.setfams, "setfamily")

    def csfam(self, key: str = "target") -> CSFamily:
        return self._lookup(key, self.env.csfams, "csfamily")

    def globalfam(self, key: str = "target") -> GlobalFamily:
        return self._lookup(key, self.env.globalfams, "globalfamily")

    def complsep(self, ineq_key: str, family_key: str) -> ComplSep | Witness:
        return validate_complsep(self.ineq(ineq_key), self.family(family_key))

    def prefixed(self, prefix: str) -> dict[str, str]:
        return {
            k[len(prefix):]: v for k, v in self.map.items() if k.startswith(prefix)
        }


@dataclass(frozen=True)
class _Outcome:
    verdict: str
    details: tuple[str, ...] = ()
    witnesses: tuple[WitnessRecord, ...] = ()
    hypotheses: tuple[tuple[str, bool], ...] = ()


def _pass(*details: str, hypotheses=()) -> _Outcome:
    return _Outcome("pass", tuple(details), hypotheses=tuple(hypotheses))


def _fail(*details: str, witness: Witness | None = None, hypotheses=()) -> _Outcome:
    records = (WitnessRecord.from_witness(witness),) if witness is not None else ()
    return _Outcome("fail", tuple(details), records, tuple(hypotheses))


def _from_clauses(clauses, hypotheses=()) -> _Outcome:
    details = tuple(
        f"{c.clause}: {c.status}" + (f" ({c.detail})" if c.detail else "")
        for c in clauses
    )
    witnesses = tuple(
        WitnessRecord.from_witness(c.witness)
        for c in clauses
        if c.failed and c.witness is not None
    )
    if any(c.failed for c in clauses):
        return _Outcome("fail", details, witnesses, tuple(hypotheses))
    if all(c.status == "not-applicable" for c in clauses):
        return _Outcome("not-applicable", details, hypotheses=tuple(hypotheses))
    return _Outcome("pass", details, hypotheses=tuple(hypotheses))


_AXIOM_NAMES = ("Ineq1", "Ineq2", "Ineq3", "Ineq4", "Ineq5", "Ineq6")


def _run_ineq_axioms(p: _Params, bounds: Bounds) -> _Outcome:
    target = p.ineq("target")
    report = check_ineq_axioms(target)
    required = (p.raw("require") or "Ineq1").split()
    for name in required:
        if name not in _AXIOM_NAMES:
            raise UnknownLawId(f"unknown axiom {name!r}")
    details = []
    witnesses = []
    ok = True
    for name in _AXIOM_NAMES:
        verdict = report.verdict(name)
        details.append(f"{name}: {verdict.status}")
        if name in required and not verdict.holds:
            ok = False
            if verdict.witness is not None:
                witnesses.append(WitnessRecord.from_witness(verdict.witness))
    details.append(
        f"apartness={report.is_apartness} tight={report.is_tight} "
        f"discrete={report.is_discrete} extensional={report.is_extensional}"
    )
    return _Outcome("pass" if ok else "fail", tuple(details), tuple(witnesses))


def _run_f1(p: _Params, bounds: Bounds) -> _Outcome:
    report = f1_report(p.ineq(), p.family())
    hyps = tuple(
        (c.clause, c.status != "not-applicable")
        for c in report.clauses
        if c.clause in ("separating-eq-agrees", "declared-apartness", "induced-below-declared")
    )
    return _from_clauses(report.clauses, hyps)


def _run_monotonicity(p: _Params, bounds: Bounds) -> _Outcome:
    report = monotonicity_check(p.set_("on"), p.family(), p.family("superfamily"))
    return _from_clauses(report.clauses)


def _run_complsep(p: _Params, bounds: Bounds) -> _Outcome:
    built = p.complsep("ineq", "family")
    if isinstance(built, Witness):
        return _fail(built.describe(), witness=built)
    return _pass(f"carrier {len(built.carrier.atoms)} atoms, family {len(built.family.members)} members")


def _run_affine(p: _Params, bounds: Bounds) -> _Outcome:
    src = p.complsep("src-ineq", "src-family")
    if isinstance(src, Witness):
        return _fail("source is not completely separated", witness=src)
    dst = p.complsep("dst-ineq", "dst-family")
    if isinstance(dst, Witness):
        return _fail("target is not completely separated", witness=dst)
    bad = is_affine(p.fn(), src, dst)
    if bad is not None:
        return _fail(bad.describe(), witness=bad)
    return _pass("affine")


def _run_family(p: _Params, bounds: Bounds) -> _Outcome:
    bad = validate_family(p.setfam())
    if bad is not None:
        return _fail(bad.describe(), witness=bad)
    return _pass("family laws hold")


def _run_sigma_apartness(p: _Params, bounds: Bounds) -> _Outcome:
    report = sigma_apartness_report(p.setfam())
    clauses = []
    hyps = []
    for v in (report.apartness, report.discreteness, report.tightness):
        clauses.append(ker_mod.ClauseVerdict(v.law, v.status, v.detail))
        hyps.append((v.law, v.hypothesis))
    return _from_clauses(clauses, hyps)


def _run_cs_family(p: _Params, bounds: Bounds) -> _Outcome:
    bad = validate_cs_family(p.csfam())
    if bad is not None:
        return _fail(bad.describe(), witness=bad)
    return _pass("family laws hold")


def _run_pi_cs(p: _Params, bounds: Bounds) -> _Outcome:
    built = pi_cs(p.csfam(), bounds)
    return _pass(f"dependent product on {len(built.carrier.atoms)} tables")


def _run_fcl3(p: _Params, bounds: Bounds) -> _Outcome:
    report = fcl3_check(p.csfam(), bounds)
    return _from_clauses(
        (report.forward, report.reverse),
        (("extension-hypothesis", report.extension_hypothesis),),
    )


def _run_global_family(p: _Params, bounds: Bounds) -> _Outcome:
    bad = validate_global_family(p.globalfam())
    if bad is not None:
        return _fail(bad.describe(), witness=bad)
    return _pass("global family laws hold")


def _run_sigma_global(p: _Params, bounds: Bounds) -> _Outcome:
    built = sigma_global_cs(p.globalfam(), bounds)
    return _pass(
        f"dependent pairs on {len(built.cs.carrier.atoms)} atoms, "
        f"family of {len(built.cs.family.members)} members"
    )


def _run_dep_se(p: _Params, bounds: Bounds) -> _Outcome:
    fam = p.globalfam()
    raw = p.raw("assign")
    if raw is None:
        raise UndeclaredName(f"check {p.check.name!r}: missing parameter 'assign'")
    theta = {}
    for tok in raw.split():
        i, _, x = tok.partition(":")
        theta[i] = x
    bad = dep_strongly_extensional(theta, fam)
    if bad is not None:
        return _fail(bad.describe(), witness=bad)
    return _pass("strongly extensional dependent function")


def _run_pr2(p: _Params, bounds: Bounds) -> _Outcome:
    report = second_projection_check(p.globalfam(), bounds)
    return _from_clauses(
        (report.family_laws, report.membership, report.strong_extensionality)
    )


def _run_free(p: _Params, bounds: Bounds) -> _Outcome:
    y = p.complsep("ineq", "family")
    if isinstance(y, Witness):
        return _fail("target is not completely separated", witness=y)
    report = free_universal_check(p.set_(), y, bounds)
    out = _from_clauses(report.clauses)
    return _Outcome(
        out.verdict, (f"{report.candidates} candidate maps",) + out.details, out.witnesses
    )


def _run_free_adjunction(p: _Params, bounds: Bounds) -> _Outcome:
    y = p.complsep("ineq", "family")
    if isinstance(y, Witness):
        return _fail("target is not completely separated", witness=y)
    x = p.set_()
    sample = FreeNaturalitySample(
        x, x, identity_table(x), y, y, identity_table(y.carrier)
    )
    report = free_adjunction_check([(x, y)], [sample], bounds)
    return _from_clauses(
        report.hom_equality + report.naturality_left + report.naturality_right
    )


def _run_rho(p: _Params, bounds: Bounds) -> _Outcome:
    result = rho(FunctionSpace(p.set_("on"), p.family()))
    return _pass(
        f"{len(result.cs.carrier.blocks)} classes, "
        f"{len(result.cs.ineq.neq)} apart pairs"
    )


def _run_rho_adjunction(p: _Params, bounds: Bounds) -> _Outcome:
    a = p.complsep("a-ineq", "a-family")
    if isinstance(a, Witness):
        return _fail("left structure is not completely separated", witness=a)
    fs = FunctionSpace(p.set_("on"), p.family())
    sample = RhoNaturalitySample(
        a, a, identity_table(a.carrier), fs, fs, identity_table(fs.carrier)
    )
    report = rho_adjunction_check([(a, fs)], [sample], bounds)
    return _from_clauses(
        report.hom_equality + report.naturality_left + report.naturality_right
    )


def _run_rho_product(p: _Params, bounds: Bounds) -> _Outcome:
    left = FunctionSpace(p.set_("left-on"), p.family("left-family"))
    right = FunctionSpace(p.set_("right-on"), p.family("right-family"))
    report = rho_product_check(left, right, bounds)
    return _from_clauses(report.clauses)


def _run_dual(p: _Params, bounds: Bounds) -> _Outcome:
    result = dual_cs(FunctionSpace(p.set_("on"), p.family()))
    return _pass(f"dual carrier of {len(result.cs.carrier.atoms)} points")


def _run_hom_family(p: _Params, bounds: Bounds) -> _Outcome:
    result = hom_family_M(p.ineq(), p.setfam(), bounds)
    sizes = {i: len(result.fiber(i).base.atoms) for i in result.index.base.atoms}
    return _pass(f"fiber sizes {sizes}")


def _run_embed(p: _Params, bounds: Bounds) -> _Outcome:
    fam = p.setfam()
    components = {}
    for atom, name in p.prefixed("h.").items():
        if name not in p.env.fns:
            raise UndeclaredName(f"check {p.check.name!r}: {name!r} is not a declared fn")
        components[atom] = p.env.fns[name]
    report = embed_eH(p.ineq(), fam, components, bounds)
    hyps = tuple(
        (c.clause, c.status != "not-applicable")
        for c in report.clauses
        if c.clause in ("embedding", "strongly-extensional")
    )
    return _from_clauses(report.clauses, hyps)


def _run_r_power(p: _Params, bounds: Bounds) -> _Outcome:
    raw = p.raw("values")
    values = None
    if raw is not None:
        values = [parse_rational(tok) for tok in raw.split()]
    result = r_power(p.family(), values, bounds)
    return _pass(
        f"carrier of {len(result.cs.carrier.atoms)} tables over "
        f"{len(result.values)} values"
    )


def _run_tychonoff(p: _Params, bounds: Bounds) -> _Outcome:
    report = tychonoff_check(FunctionSpace(p.set_("on"), p.family()), None, bounds)
    return _from_clauses(report.clauses, (("separating", report.separating),))


@dataclass(frozen=True)
class LawEntry:
    law_id: str
    operation: object  # the library operation the law dispatches to
    runner: object


REGISTRY: dict[str, LawEntry] = {
    e.law_id: e
    for e in (
        LawEntry("ineq-axioms", check_ineq_axioms, _run_ineq_axioms),
        LawEntry("f1", f1_report, _run_f1),
        LawEntry("monotonicity", monotonicity_check, _run_monotonicity),
        LawEntry("complsep", validate_complsep, _run_complsep),
        LawEntry("affine", is_affine, _run_affine),
        LawEntry("family", validate_family, _run_family),
        LawEntry("sigma-apartness", sigma_apartness_report, _run_sigma_apartness),
        LawEntry("cs-family", validate_cs_family, _run_cs_family),
        LawEntry("pi-cs", pi_cs, _run_pi_cs),
        LawEntry("fcl3", fcl3_check, _run_fcl3),
        LawEntry("global-family", validate_global_family, _run_global_family),
        LawEntry("sigma-global", sigma_global_cs, _run_sigma_global),
        LawEntry("dep-se", dep_strongly_extensional, _run_dep_se),
        LawEntry("pr2", second_projection_check, _run_pr2),
        LawEntry("free", free_universal_check, _run_free),
        LawEntry("free-adjunction", free_adjunction_check, _run_free_adjunction),
        LawEntry("rho", rho, _run_rho),
        LawEntry("rho-adjunction", rho_adjunction_check, _run_rho_adjunction),
        LawEntry("rho-product", rho_product_check, _run_rho_product),
        LawEntry("dual", dual_cs, _run_dual),
        LawEntry("hom-family", hom_family_M, _run_hom_family),
        LawEntry("embed", embed_eH, _run_embed),
        LawEntry("r-power", r_power, _run_r_power),
        LawEntry("tychonoff", tychonoff_check, _run_tychonoff),
    )
}


def run_checks(
    doc: SpecDocument,
    law_filter: str = "*",
    max_atoms: int | None = None,
    max_enum: int | None = None,
) -> Report:
    """Execute every declared check whose law id matches the glob.

    Bound refusals become skipped-bound verdicts; other operation errors
    become failures carrying the message.  Results follow declaration order.
    """
    env = resolve(doc, max_atoms, max_enum)
    results = []
    timings = []
    for decl in env.checks:
        if decl.law not in REGISTRY:
            raise UnknownLawId(f"check {decl.name!r}: unknown law id {decl.law!r}")
        if not fnmatchcase(decl.law, law_filter):
            continue
        entry = REGISTRY[decl.law]
        params = _Params(decl, env)
        start = time.perf_counter()
        try:
            outcome = entry.runner(params, env.bounds)
        except CarrierTooLarge as exc:
            outcome = _Outcome("skipped-bound", (str(exc),))
        except SpecFileError:
            raise
        except SepsetsError as exc:
            outcome = _Outcome("fail", (f"{type(exc).__name__}: {exc}",))
        timings.append(time.perf_counter() - start)
        results.append(
            CheckResult(
                decl.name,
                decl.law,
                outcome.verdict,
                outcome.details,
                outcome.witnesses,
                outcome.hypotheses,
            )
        )
    return Report(tuple(results), SCHEMA_VERSION, tuple(timings))


def emit_machine(report: Report, include_timings: bool = False) -> str:
    """Deterministic JSON; identical inputs give byte-identical output
    unless timings are explicitly requested."""
    doc = {
        "schemaVersion": report.schema_version,
        "summary": {
            "pass": sum(r.verdict == "pass" for r in report.results),
            "fail": sum(r.verdict == "fail" for r in report.results),
            "not-applicable": sum(r.verdict == "not-applicable" for r in report.results),
            "skipped-bound": sum(r.verdict == "skipped-bound" for r in report.results),
        },
        "checks": [
            {
                "check": r.check,
                "law": r.law,
                "verdict": r.verdict,
                "details": list(r.details),
                "witnesses": [w.to_json() for w in r.witnesses],
                "hypotheses": [[name, value] for name, value in r.hypotheses],
            }
            for r in report.results
        ],
    }
    if include_timings:
        doc["timingsMs"] = [round(t * 1000, 3) for t in report.timings]
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def report_from_machine(text: str) -> Report:
    """Rebuild a report from its machine form; witnesses survive exactly."""
    doc = json.loads(text)
    results = tuple(
        CheckResult(
            c["check"],
            c["law"],
            c["verdict"],
            tuple(c["details"]),
            tuple(WitnessRecord.from_json(w) for w in c["witnesses"]),
            tuple((name, value) for name, value in c["hypotheses"]),
        )
        for c in doc["checks"]
    )
    return Report(results, doc["schemaVersion"])


def emit_text(report: Report) -> str:
    lines = []
    for r in report.results:
        lines.append(f"[{r.verdict:>13}] {r.check} ({r.law})")
        if r.verdict != "pass":
            for d in r.details:
                lines.append(f"    {d}")
            for w in r.witnesses:
                parts = [w.detail or w.kind]
                if w.atoms:
                    parts.append("at (" + ", ".join(w.atoms) + ")")
                if w.member:
                    parts.append(f"by {w.member}")
                if w.gap:
                    parts.append(f"gap {w.gap}")
                lines.append("    witness: " + " ".join(parts))
        for name, value in r.hypotheses:
            lines.append(f"    hypothesis {name}: {'holds' if value else 'does not hold'}")
    lines.append(
        f"{sum(r.verdict == 'pass' for r in report.results)} pass, "
        f"{sum(r.verdict == 'fail' for r in report.results)} fail, "
        f"{sum(r.verdict == 'not-applicable' for r in report.results)} not applicable, "
        f"{sum(r.verdict == 'skipped-bound' for r in report.results)} skipped"
    )
    return "\n".join(lines) + "\n"
