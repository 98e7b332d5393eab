"""Line-oriented document format for declaring structures and law checks.

A document is a sequence of blocks.  A block opens with a header line
(`set X`, `ineq XI`, `fn f`, `family F`, `setfamily S`, `csfamily S`,
`globalfamily S`, `check c1`, or a bare `settings`) and continues with
`key = value` lines; `#` starts a comment, blank lines separate nothing in
particular.  Every referenced name must be declared earlier.  Rational
literals must be canonical ("p/q" reduced, or a bare integer).

Parsing is total: the result is either a fully structured document or a
diagnostic carrying the line and column of the offending token.  Printing
is canonical and `parse(print(doc))` recovers the document exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DuplicateName, ParseError, UndeclaredName
from .rationals import format_rational, parse_rational

NAME_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_\-]*$")

Pair = tuple[str, str]


@dataclass(frozen=True)
class Settings:
    max_atoms: int | None = None
    max_enum: int | None = None


@dataclass(frozen=True)
class SetDecl:
    name: str
    atoms: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]  # empty tuple means discrete


@dataclass(frozen=True)
class IneqDecl:
    name: str
    base: str
    pairs: tuple[Pair, ...] = ()
    induced_by: str | None = None


@dataclass(frozen=True)
class FnDecl:
    name: str
    on: str
    to: str | None = None
    real_values: tuple[tuple[str, Fraction], ...] = ()
    atom_values: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class FamilyDecl:
    name: str
    on: str
    members: tuple[str, ...] = ()
    metric: tuple[tuple[Pair, Fraction], ...] = ()
    is_metric: bool = False
    pseudometric: bool = False


@dataclass(frozen=True)
class SetFamilyDecl:
    name: str
    index: str
    fibers: tuple[tuple[str, str], ...]
    transports: tuple[tuple[Pair, str], ...]  # fn name or "id"


@dataclass(frozen=True)
class CSFamilyDecl:
    name: str
    kind: str  # "csfamily" | "globalfamily"
    index: str
    index_family: str
    fibers: tuple[tuple[str, str], ...]
    fiber_families: tuple[tuple[str, str], ...]
    transports: tuple[tuple[Pair, str], ...]
    fn_transports: tuple[tuple[Pair, tuple[Pair, ...]], ...]  # member-name pairs, or (("id","id"),)


@dataclass(frozen=True)
class CheckDecl:
    name: str
    law: str
    params: tuple[tuple[str, str], ...]


Decl = SetDecl | IneqDecl | FnDecl | FamilyDecl | SetFamilyDecl | CSFamilyDecl | CheckDecl


@dataclass(frozen=True)
class SpecDocument:
    settings: Settings
    decls: tuple[Decl, ...]

    def by_kind(self, kind: type) -> list:
        return [d for d in self.decls if isinstance(d, kind)]


_HEADER_KINDS = (
    "settings",
    "set",
    "ineq",
    "fn",
    "family",
    "setfamily",
    "csfamily",
    "globalfamily",
    "check",
)


@dataclass
class _RawBlock:
    kind: str
    name: str
    line: int
    entries: list[tuple[str, str, int, int]] = field(default_factory=list)  # key, value, line, col


def _strip_comment(line: str) -> str:
    if "#" in line:
        return line[: line.index("#")]
    return line


def _split_blocks(text: str) -> list[_RawBlock]:
    blocks: list[_RawBlock] = []
    current: _RawBlock | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        first = stripped.split(None, 1)[0]
        if "=" not in stripped and first in _HEADER_KINDS:
            parts = stripped.split()
            if first == "settings":
                if len(parts) != 1:
                    raise ParseError("settings takes no name", lineno, 1)
                current = _RawBlock("settings", "", lineno)
            else:
                if len(parts) != 2:
                    raise ParseError(f"expected '{first} <name>'", lineno, 1)
                if not NAME_RE.match(parts[1]):
                    raise ParseError(f"bad name {parts[1]!r}", lineno, len(first) + 2)
                current = _RawBlock(first, parts[1], lineno)
            blocks.append(current)
            continue
        if "=" not in stripped:
            raise ParseError(
                f"expected a block header or 'key = value', got {stripped!r}", lineno, 1
            )
        if current is None:
            raise ParseError("'key = value' before any block header", lineno, 1)
        key, _, value = stripped.partition("=")
        col = raw.index("=") + 2
        current.entries.append((key.strip(), value.strip(), lineno, col))
    return blocks


def _names(value: str, lineno: int, col: int) -> tuple[str, ...]:
    out = []
    for tok in value.split():
        if not NAME_RE.match(tok):
            raise ParseError(f"bad name {tok!r}", lineno, col)
        out.append(tok)
    return tuple(out)


_BLOCK_TOKEN_RE = re.compile(r"\{([^{}]*)\}")
_PAIR_TOKEN_RE = re.compile(r"\(([^(),]+),([^(),]+)\)")


def _blocks_value(value: str, lineno: int, col: int) -> tuple[tuple[str, ...], ...]:
    rest = value
    out = []
    pos = 0
    for m in _BLOCK_TOKEN_RE.finditer(value):
        if value[pos : m.start()].strip():
            raise ParseError(f"unexpected text {value[pos:m.start()].strip()!r}", lineno, col)
        out.append(_names(m.group(1), lineno, col))
        pos = m.end()
    if value[pos:].strip():
        raise ParseError(f"unexpected text {value[pos:].strip()!r}", lineno, col)
    if not out:
        raise ParseError("expected at least one {block}", lineno, col)
    return tuple(out)


def _pairs_value(value: str, lineno: int, col: int) -> tuple[Pair, ...]:
    out = []
    pos = 0
    for m in _PAIR_TOKEN_RE.finditer(value):
        if value[pos : m.start()].strip():
            raise ParseError(f"unexpected text {value[pos:m.start()].strip()!r}", lineno, col)
        out.append((m.group(1).strip(), m.group(2).strip()))
        pos = m.end()
    if value[pos:].strip():
        raise ParseError(f"unexpected text {value[pos:].strip()!r}", lineno, col)
    return tuple(out)


def _colon_items(value: str, lineno: int, col: int) -> tuple[tuple[str, str], ...]:
    out = []
    for tok in value.split():
        if ":" not in tok:
            raise ParseError(f"expected 'left:right', got {tok!r}", lineno, col)
        left, _, right = tok.partition(":")
        out.append((left.strip(), right.strip()))
    return tuple(out)


def _metric_items(value: str, lineno: int, col: int) -> tuple[tuple[Pair, Fraction], ...]:
    out = []
    pos = 0
    pattern = re.compile(r"\(([^(),]+),([^(),]+)\):(\S+)")
    for m in pattern.finditer(value):
        if value[pos : m.start()].strip():
            raise ParseError(f"unexpected text {value[pos:m.start()].strip()!r}", lineno, col)
        q = parse_rational(m.group(3), lineno, col)
        out.append(((m.group(1).strip(), m.group(2).strip()), q))
        pos = m.end()
    if value[pos:].strip():
        raise ParseError(f"unexpected text {value[pos:].strip()!r}", lineno, col)
    return tuple(out)


class _Scope:
    """Declared names, grouped by namespace, in declaration order."""

    def __init__(self):
        self.kinds: dict[str, str] = {}

    def declare(self, kind: str, name: str, lineno: int):
        if name in self.kinds:
            raise DuplicateName(f"{name!r} already declared as {self.kinds[name]}", lineno, 1)
        self.kinds[name] = kind

    def require(self, name: str, kinds: tuple[str, ...], lineno: int, col: int):
        if name not in self.kinds:
            raise UndeclaredName(f"{name!r} is not declared", lineno, col)
        if self.kinds[name] not in kinds:
            raise UndeclaredName(
                f"{name!r} is a {self.kinds[name]}, expected one of {', '.join(kinds)}",
                lineno,
                col,
            )


class _Entries:
    def __init__(self, block: _RawBlock):
        self.block = block
        self.map: dict[str, tuple[str, int, int]] = {}
        for key, value, lineno, col in block.entries:
            if key in self.map:
                raise ParseError(f"duplicate key {key!r}", lineno, 1)
            self.map[key] = (value, lineno, col)

    def take(self, key: str) -> tuple[str, int, int] | None:
        return self.map.pop(key, None)

    def need(self, key: str) -> tuple[str, int, int]:
        got = self.take(key)
        if got is None:
            raise ParseError(f"missing key {key!r}", self.block.line, 1)
        return got

    def prefixed(self, prefix: str) -> list[tuple[str, str, int, int]]:
        hits = [k for k in self.map if k.startswith(prefix)]
        out = []
        for k in hits:
            value, lineno, col = self.map.pop(k)
            out.append((k[len(prefix):], value, lineno, col))
        return out

    def finish(self):
        for key, (_, lineno, _) in self.map.items():
            raise ParseError(f"unknown key {key!r}", lineno, 1)


def _parse_set(block: _RawBlock, scope: _Scope) -> SetDecl:
    e = _Entries(block)
    value, lineno, col = e.need("atoms")
    atoms = _names(value, lineno, col)
    if len(set(atoms)) != len(atoms):
        raise ParseError("duplicate atoms", lineno, col)
    got = e.take("blocks")
    blocks: tuple[tuple[str, ...], ...] = ()
    if got is not None:
        value, lineno, col = got
        blocks = _blocks_value(value, lineno, col)
        seen = [a for b in blocks for a in b]
        if sorted(seen) != sorted(atoms):
            raise ParseError("blocks do not partition the atoms", lineno, col)
    e.finish()
    return SetDecl(block.name, atoms, blocks)


def _parse_ineq(block: _RawBlock, scope: _Scope, sets: dict[str, SetDecl]) -> IneqDecl:
    e = _Entries(block)
    value, lineno, col = e.need("base")
    scope.require(value, ("set",), lineno, col)
    base = value
    pairs: tuple[Pair, ...] = ()
    induced: str | None = None
    got = e.take("pairs")
    if got is not None:
        value, lineno, col = got
        pairs = _pairs_value(value, lineno, col)
        atoms = set(sets[base].atoms)
        for a, b in pairs:
            if a not in atoms or b not in atoms:
                raise ParseError(f"pair ({a},{b}) mentions unknown atoms", lineno, col)
    got = e.take("induced-by")
    if got is not None:
        if pairs:
            raise ParseError("give either pairs or induced-by, not both", got[1], got[2])
        scope.require(got[0], ("family",), got[1], got[2])
        induced = got[0]
    e.finish()
    return IneqDecl(block.name, base, pairs, induced)


def _parse_fn(block: _RawBlock, scope: _Scope, sets: dict[str, SetDecl]) -> FnDecl:
    e = _Entries(block)
    value, lineno, col = e.need("on")
    scope.require(value, ("set",), lineno, col)
    on = value
    to: str | None = None
    got = e.take("to")
    if got is not None:
        scope.require(got[0], ("set",), got[1], got[2])
        to = got[0]
    value, lineno, col = e.need("values")
    items = _colon_items(value, lineno, col)
    dom_atoms = set(sets[on].atoms)
    for atom, _ in items:
        if atom not in dom_atoms:
            raise ParseError(f"unknown atom {atom!r}", lineno, col)
    if set(a for a, _ in items) != dom_atoms:
        raise ParseError("values must cover every atom exactly once", lineno, col)
    if len(items) != len(dom_atoms):
        raise ParseError("values must cover every atom exactly once", lineno, col)
    e.finish()
    if to is None:
        real = tuple((a, parse_rational(v, lineno, col)) for a, v in items)
        return FnDecl(block.name, on, None, real, ())
    cod_atoms = set(sets[to].atoms)
    for _, v in items:
        if v not in cod_atoms:
            raise ParseError(f"unknown target atom {v!r}", lineno, col)
    return FnDecl(block.name, on, to, (), items)


def _parse_family(block: _RawBlock, scope: _Scope, fns: dict[str, FnDecl]) -> FamilyDecl:
    e = _Entries(block)
    value, lineno, col = e.need("on")
    scope.require(value, ("set",), lineno, col)
    on = value
    got_members = e.take("members")
    got_metric = e.take("metric")
    pseudo = False
    got_pseudo = e.take("pseudometric")
    if got_pseudo is not None:
        if got_pseudo[0] not in ("true", "false"):
            raise ParseError("pseudometric must be true or false", got_pseudo[1], got_pseudo[2])
        pseudo = got_pseudo[0] == "true"
    e.finish()
    if got_metric is not None and got_members is not None:
        raise ParseError("give either members or metric, not both", got_metric[1], got_metric[2])
    if got_metric is not None:
        value, lineno, col = got_metric
        return FamilyDecl(block.name, on, (), _metric_items(value, lineno, col), True, pseudo)
    members: tuple[str, ...] = ()
    if got_members is not None:
        value, lineno, col = got_members
        members = _names(value, lineno, col)
        for m in members:
            scope.require(m, ("fn",), lineno, col)
            if fns[m].on != on or fns[m].to is not None:
                raise UndeclaredName(
                    f"{m!r} is not a rational-valued function on {on!r}", lineno, col
                )
    return FamilyDecl(block.name, on, members, (), False, pseudo)


def _parse_transport_keys(
    e: _Entries, prefix: str, index_atoms: tuple[str, ...], scope: _Scope, kind_label: str
) -> tuple[tuple[Pair, str], ...]:
    out = []
    for suffix, value, lineno, col in e.prefixed(prefix + "."):
        parts = suffix.split(".")
        if len(parts) != 2:
            raise ParseError(f"expected {prefix}.<i>.<j>", lineno, 1)
        i, j = parts
        if i not in index_atoms or j not in index_atoms:
            raise ParseError(f"unknown index atoms in {prefix}.{suffix}", lineno, 1)
        if value != "id":
            scope.require(value, ("fn",), lineno, col)
        out.append(((i, j), value))
    return tuple(sorted(out, key=lambda t: (index_atoms.index(t[0][0]), index_atoms.index(t[0][1]))))


def _parse_setfamily(
    block: _RawBlock, scope: _Scope, sets: dict[str, SetDecl], ineqs: dict[str, IneqDecl]
) -> SetFamilyDecl:
    e = _Entries(block)
    value, lineno, col = e.need("index")
    scope.require(value, ("ineq",), lineno, col)
    index = value
    index_atoms = sets[ineqs[index].base].atoms
    fibers = []
    for suffix, value, lineno, col in e.prefixed("fiber."):
        if suffix not in index_atoms:
            raise ParseError(f"unknown index atom {suffix!r}", lineno, 1)
        scope.require(value, ("ineq",), lineno, col)
        fibers.append((suffix, value))
    fibers.sort(key=lambda t: index_atoms.index(t[0]))
    transports = _parse_transport_keys(e, "transport", index_atoms, scope, "transport")
    e.finish()
    return SetFamilyDecl(block.name, index, tuple(fibers), transports)


def _parse_csfamily(
    block: _RawBlock,
    scope: _Scope,
    sets: dict[str, SetDecl],
    ineqs: dict[str, IneqDecl],
) -> CSFamilyDecl:
    e = _Entries(block)
    value, lineno, col = e.need("index")
    scope.require(value, ("ineq",), lineno, col)
    index = value
    index_atoms = sets[ineqs[index].base].atoms
    value, lineno, col = e.need("indexfamily")
    scope.require(value, ("family",), lineno, col)
    index_family = value
    fibers = []
    for suffix, value, lineno, col in e.prefixed("fiber."):
        if suffix not in index_atoms:
            raise ParseError(f"unknown index atom {suffix!r}", lineno, 1)
        scope.require(value, ("ineq",), lineno, col)
        fibers.append((suffix, value))
    fibers.sort(key=lambda t: index_atoms.index(t[0]))
    fiber_families = []
    for suffix, value, lineno, col in e.prefixed("fiberfamily."):
        if suffix not in index_atoms:
            raise ParseError(f"unknown index atom {suffix!r}", lineno, 1)
        scope.require(value, ("family",), lineno, col)
        fiber_families.append((suffix, value))
    fiber_families.sort(key=lambda t: index_atoms.index(t[0]))
    transports = _parse_transport_keys(e, "transport", index_atoms, scope, "transport")
    fn_transports = []
    for suffix, value, lineno, col in e.prefixed("fntransport."):
        parts = suffix.split(".")
        if len(parts) != 2:
            raise ParseError("expected fntransport.<i>.<j>", lineno, 1)
        i, j = parts
        if i not in index_atoms or j not in index_atoms:
            raise ParseError(f"unknown index atoms in fntransport.{suffix}", lineno, 1)
        if value == "id":
            fn_transports.append(((i, j), (("id", "id"),)))
        else:
            fn_transports.append(((i, j), _colon_items(value, lineno, col)))
    fn_transports.sort(key=lambda t: (index_atoms.index(t[0][0]), index_atoms.index(t[0][1])))
    e.finish()
    return CSFamilyDecl(
        block.name,
        block.kind,
        index,
        index_family,
        tuple(fibers),
        tuple(fiber_families),
        transports,
        tuple(fn_transports),
    )


def _parse_check(block: _RawBlock, scope: _Scope) -> CheckDecl:
    e = _Entries(block)
    value, lineno, col = e.need("law")
    if not NAME_RE.match(value):
        raise ParseError(f"bad law id {value!r}", lineno, col)
    params = tuple(
        (key, val) for key, (val, _, _) in sorted(e.map.items())
    )
    e.map.clear()
    return CheckDecl(block.name, value, params)


def parse_spec(text: str) -> SpecDocument:
    """Parse a document; raises a located diagnostic on any defect."""
    settings = Settings()
    scope = _Scope()
    decls: list[Decl] = []
    sets: dict[str, SetDecl] = {}
    ineqs: dict[str, IneqDecl] = {}
    fns: dict[str, FnDecl] = {}
    seen_settings = False
    for block in _split_blocks(text):
        if block.kind == "settings":
            if seen_settings:
                raise ParseError("settings block given twice", block.line, 1)
            seen_settings = True
            e = _Entries(block)
            max_atoms = max_enum = None
            got = e.take("max-atoms")
            if got is not None:
                if not got[0].isdigit():
                    raise ParseError("max-atoms must be a positive integer", got[1], got[2])
                max_atoms = int(got[0])
            got = e.take("max-enum")
            if got is not None:
                if not got[0].isdigit():
                    raise ParseError("max-enum must be a positive integer", got[1], got[2])
                max_enum = int(got[0])
            e.finish()
            settings = Settings(max_atoms, max_enum)
            continue
        if block.kind == "check":
            decl: Decl = _parse_check(block, scope)
        else:
            scope_kind = block.kind
            if block.kind == "set":
                decl = _parse_set(block, scope)
                sets[block.name] = decl
            elif block.kind == "ineq":
                decl = _parse_ineq(block, scope, sets)
                ineqs[block.name] = decl
            elif block.kind == "fn":
                decl = _parse_fn(block, scope, sets)
                fns[block.name] = decl
            elif block.kind == "family":
                decl = _parse_family(block, scope, fns)
            elif block.kind == "setfamily":
                decl = _parse_setfamily(block, scope, sets, ineqs)
            elif block.kind in ("csfamily", "globalfamily"):
                decl = _parse_csfamily(block, scope, sets, ineqs)
            else:  # pragma: no cover - the header scanner rules this out
                raise ParseError(f"unknown block kind {block.kind!r}", block.line, 1)
            scope.declare(scope_kind, block.name, block.line)
        if block.kind == "check":
            scope.declare("check", block.name, block.line)
        decls.append(decl)
    return SpecDocument(settings, tuple(decls))


def _print_pairs(pairs: Iterable[Pair]) -> str:
    return " ".join(f"({a},{b})" for a, b in pairs)


def print_spec(doc: SpecDocument) -> str:
    """Canonical text for a document; the inverse of parse_spec."""
    out: list[str] = []
    if doc.settings.max_atoms is not None or doc.settings.max_enum is not None:
        out.append("settings")
        if doc.settings.max_atoms is not None:
            out.append(f"  max-atoms = {doc.settings.max_atoms}")
        if doc.settings.max_enum is not None:
            out.append(f"  max-enum = {doc.settings.max_enum}")
        out.append("")
    for d in doc.decls:
        if isinstance(d, SetDecl):
            out.append(f"set {d.name}")
            out.append(f"  atoms = {' '.join(d.atoms)}")
            if d.blocks:
                out.append(
                    "  blocks = " + " ".join("{" + " ".join(b) + "}" for b in d.blocks)
                )
        elif isinstance(d, IneqDecl):
            out.append(f"ineq {d.name}")
            out.append(f"  base = {d.base}")
            if d.induced_by is not None:
                out.append(f"  induced-by = {d.induced_by}")
            elif d.pairs:
                out.append(f"  pairs = {_print_pairs(d.pairs)}")
        elif isinstance(d, FnDecl):
            out.append(f"fn {d.name}")
            out.append(f"  on = {d.on}")
            if d.to is not None:
                out.append(f"  to = {d.to}")
                out.append(
                    "  values = " + " ".join(f"{a}:{v}" for a, v in d.atom_values)
                )
            else:
                out.append(
                    "  values = "
                    + " ".join(f"{a}:{format_rational(v)}" for a, v in d.real_values)
                )
        elif isinstance(d, FamilyDecl):
            out.append(f"family {d.name}")
            out.append(f"  on = {d.on}")
            if d.is_metric:
                out.append(
                    "  metric = "
                    + " ".join(
                        f"({a},{b}):{format_rational(v)}" for (a, b), v in d.metric
                    )
                )
            elif d.members:
                out.append(f"  members = {' '.join(d.members)}")
            if d.pseudometric:
                out.append("  pseudometric = true")
        elif isinstance(d, SetFamilyDecl):
            out.append(f"setfamily {d.name}")
            out.append(f"  index = {d.index}")
            for atom, fiber in d.fibers:
                out.append(f"  fiber.{atom} = {fiber}")
            for (i, j), t in d.transports:
                out.append(f"  transport.{i}.{j} = {t}")
        elif isinstance(d, CSFamilyDecl):
            out.append(f"{d.kind} {d.name}")
            out.append(f"  index = {d.index}")
            out.append(f"  indexfamily = {d.index_family}")
            for atom, fiber in d.fibers:
                out.append(f"  fiber.{atom} = {fiber}")
            for atom, fam in d.fiber_families:
                out.append(f"  fiberfamily.{atom} = {fam}")
            for (i, j), t in d.transports:
                out.append(f"  transport.{i}.{j} = {t}")
            for (i, j), items in d.fn_transports:
                if items == (("id", "id"),):
                    out.append(f"  fntransport.{i}.{j} = id")
                else:
                    out.append(
                        f"  fntransport.{i}.{j} = "
                        + " ".join(f"{a}:{b}" for a, b in items)
                    )
        elif isinstance(d, CheckDecl):
            out.append(f"check {d.name}")
            out.append(f"  law = {d.law}")
            for key, value in d.params:
                out.append(f"  {key} = {value}")
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"
