"""Class tables and ground types for the nominal engine.

A table declares classes, each with at most one type parameter and at
most one superclass. Arguments are intervals [L,U] of ground types;
the familiar forms are sugar: F<T> is [T,T], F<?> is [Null,Object],
F<? extends T> is [Null,T] and F<? super T> is [T,Object]. Null and
Object are built in as the least and greatest types.

Declarations are `class Name [extends Ground]` for plain classes and
`generic class Name[T [extends Bound]] [extends Ground]` for classes
with a parameter. In a super clause the class's own parameter may
appear only as a whole argument (as in `generic class List[T] extends
Collection<T>`); anything else must be ground. That keeps every
instantiated superclass chain inside a finite, statically computable
set of ground types, which is what the subtype checker's visit bound
is measured against.

Parameter bounds (`generic class F[T extends ...]`) are parsed and
validated but never enforced on instantiation; analyses quantify over
all well-formed intervals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DslError, GuardExceeded

CLOSURE_CAP = 20_000


class GroundType:
    __slots__ = ()


@dataclass(frozen=True)
class NullT(GroundType):
    pass


@dataclass(frozen=True)
class ObjectT(GroundType):
    pass


@dataclass(frozen=True)
class Plain(GroundType):
    name: str


@dataclass(frozen=True)
class Interval:
    lower: GroundType
    upper: GroundType


@dataclass(frozen=True)
class App(GroundType):
    name: str
    interval: Interval


NULL = NullT()
OBJECT = ObjectT()

PARAM = "param"


def point(t: GroundType) -> Interval:
    return Interval(t, t)


def render_ground(t: GroundType) -> str:
    if isinstance(t, NullT):
        return "Null"
    if isinstance(t, ObjectT):
        return "Object"
    if isinstance(t, Plain):
        return t.name
    if isinstance(t, App):
        lo, hi = t.interval.lower, t.interval.upper
        if lo == hi:
            return f"{t.name}<{render_ground(lo)}>"
        if isinstance(lo, NullT) and isinstance(hi, ObjectT):
            return f"{t.name}<?>"
        if isinstance(lo, NullT):
            return f"{t.name}<? extends {render_ground(hi)}>"
        if isinstance(hi, ObjectT):
            return f"{t.name}<? super {render_ground(lo)}>"
        return f"{t.name}<[{render_ground(lo)},{render_ground(hi)}]>"
    raise AssertionError(f"unrenderable ground type {t!r}")


@dataclass(frozen=True)
class ClassDecl:
    name: str
    param: str | None
    bound_display: str | None
    super_name: str | None
    super_arg: Interval | str | None  # Interval, PARAM, or None for a plain super

    @property
    def generic(self) -> bool:
        return self.param is not None


_TOKEN = re.compile(r"\s*(<|>|\[|\]|,|\?|[A-Za-z_][A-Za-z0-9_]*)")


def _tokenize(text: str, lineno: int) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = pos + (len(text[pos:]) - len(stripped)) + 1
            raise DslError(f"unexpected character {stripped[0]!r}", lineno, col)
        out.append((m.group(1), m.start(1) + 1))
        pos = m.end()
    return out


class _TypeParser:
    """Ground type expressions, with `param` usable as a whole argument."""

    def __init__(self, tokens: list[tuple[str, int]], lineno: int,
                 known: "ClassTable | _TableBuilder", param: str | None):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.known = known
        self.param = param

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def col(self) -> int:
        if self.i < len(self.tokens):
            return self.tokens[self.i][1]
        return self.tokens[-1][1] + len(self.tokens[-1][0]) if self.tokens else 1

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise DslError("unexpected end of type", self.lineno, self.col())
        if expected is not None and tok != expected:
            raise DslError(f"expected {expected!r}, found {tok!r}", self.lineno, self.col())
        self.i += 1
        return tok

    def type_(self, allow_param: bool) -> GroundType | str:
        col = self.col()
        name = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise DslError(f"expected a type name, found {name!r}", self.lineno, col)
        if name == self.param:
            if not allow_param:
                raise DslError(
                    f"parameter {name!r} may only appear as a whole argument",
                    self.lineno, col)
            if self.peek() == "<":
                raise DslError(f"parameter {name!r} cannot be applied", self.lineno, col)
            return PARAM
        if name == "Null":
            t: GroundType = NULL
        elif name == "Object":
            t = OBJECT
        else:
            if not self.known.declares(name):
                raise DslError(f"unknown class {name!r}", self.lineno, col)
            t = Plain(name)
        if self.peek() == "<":
            if isinstance(t, (NullT, ObjectT)):
                raise DslError(f"{name} takes no argument", self.lineno, col)
            if not self.known.is_generic(name):
                raise DslError(f"class {name!r} is not generic", self.lineno, col)
            self.take("<")
            arg = self.argument(allow_param)
            self.take(">")
            if arg == PARAM:
                return ("app-param", name)  # type: ignore[return-value]
            return App(name, arg)
        if isinstance(t, Plain) and self.known.is_generic(name):
            raise DslError(f"generic class {name!r} requires an argument", self.lineno, col)
        return t

    def argument(self, allow_param: bool):
        tok = self.peek()
        if tok == "?":
            self.take()
            nxt = self.peek()
            if nxt == "extends":
                self.take()
                hi = self._ground(allow_param=False)
                return Interval(NULL, hi)
            if nxt == "super":
                self.take()
                lo = self._ground(allow_param=False)
                return Interval(lo, OBJECT)
            return Interval(NULL, OBJECT)
        if tok == "[":
            self.take()
            lo = self.type_(allow_param)
            self.take(",")
            hi = self.type_(allow_param)
            self.take("]")
            if lo == PARAM and hi == PARAM:
                return PARAM
            if lo == PARAM or hi == PARAM:
                raise DslError(
                    "the parameter must fill both interval endpoints or neither",
                    self.lineno)
            if isinstance(lo, tuple) or isinstance(hi, tuple):
                raise DslError("parameter may only appear as a whole argument", self.lineno)
            return Interval(lo, hi)
        inner = self.type_(allow_param)
        if inner == PARAM:
            return PARAM
        if isinstance(inner, tuple):
            raise DslError("parameter may only appear as a whole argument", self.lineno)
        return point(inner)

    def _ground(self, allow_param: bool) -> GroundType:
        t = self.type_(allow_param)
        if t == PARAM or isinstance(t, tuple):
            raise DslError("parameter may only appear as a whole argument", self.lineno)
        return t

    def finish(self):
        if self.i != len(self.tokens):
            raise DslError(f"trailing input {self.peek()!r}", self.lineno, self.col())


class _TableBuilder:
    def __init__(self):
        self.decls: list[ClassDecl] = []
        self.names: set[str] = set()

    def declares(self, name: str) -> bool:
        return name in self.names

    def is_generic(self, name: str) -> bool:
        for d in self.decls:
            if d.name == name:
                return d.generic
        return False


class ClassTable:
    def __init__(self, decls: tuple[ClassDecl, ...]):
        self._decls = decls
        self._by_name = {d.name: d for d in decls}
        if len(self._by_name) != len(decls):
            raise DslError("duplicate class declaration")
        for d in decls:
            if d.param is not None and d.param in self._by_name:
                raise DslError(
                    f"parameter {d.param!r} of {d.name!r} collides with a class name")
            if d.super_name is not None and d.super_name not in self._by_name:
                raise DslError(f"unknown superclass {d.super_name!r} of {d.name!r}")
        self._check_acyclic()

    def _check_acyclic(self):
        for start in self._by_name:
            seen = {start}
            cur = self._by_name[start].super_name
            while cur is not None:
                if cur in seen:
                    raise DslError(f"superclass cycle through {cur!r}")
                seen.add(cur)
                cur = self._by_name[cur].super_name

    @property
    def decls(self) -> tuple[ClassDecl, ...]:
        return self._decls

    def declares(self, name: str) -> bool:
        return name in self._by_name

    def decl(self, name: str) -> ClassDecl:
        if name not in self._by_name:
            raise DslError(f"unknown class {name!r}")
        return self._by_name[name]

    def is_generic(self, name: str) -> bool:
        return self.decl(name).generic

    def plains(self) -> tuple[str, ...]:
        return tuple(d.name for d in self._decls if not d.generic)

    def generics(self) -> tuple[str, ...]:
        return tuple(d.name for d in self._decls if d.generic)

    def ground_super(self, t: GroundType) -> GroundType:
        """The declared superclass of a Plain or App, instantiated."""
        if isinstance(t, Plain):
            decl = self.decl(t.name)
            arg = None
        elif isinstance(t, App):
            decl = self.decl(t.name)
            arg = t.interval
        else:
            raise DslError(f"{render_ground(t)} has no declared superclass")
        if decl.super_name is None:
            return OBJECT
        if decl.super_arg is None:
            return Plain(decl.super_name)
        if decl.super_arg == PARAM:
            assert arg is not None
            return App(decl.super_name, arg)
        return App(decl.super_name, decl.super_arg)


def parse_ground(text: str, table: ClassTable, lineno: int = 1) -> GroundType:
    parser = _TypeParser(_tokenize(text, lineno), lineno, table, param=None)
    t = parser.type_(allow_param=False)
    parser.finish()
    assert isinstance(t, GroundType)
    return t


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_table(text: str) -> ClassTable:
    builder = _TableBuilder()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = _tokenize(line, lineno)
        generic = bool(tokens) and tokens[0][0] == "generic"
        offset = 1 if generic else 0
        if len(tokens) <= offset or tokens[offset][0] != "class":
            raise DslError(f"expected a class declaration, found: {line!r}", lineno)
        p = _TypeParser(tokens[offset + 1:], lineno, builder, param=None)

        col = p.col()
        name = p.take()
        if not _NAME.fullmatch(name) or name in ("class", "generic", "extends", "super"):
            raise DslError(f"expected a class name, found {name!r}", lineno, col)
        if name in ("Null", "Object"):
            raise DslError(f"{name!r} is built in and cannot be declared", lineno, col)
        if builder.declares(name):
            raise DslError(f"duplicate class {name!r}", lineno, col)

        param = None
        bound_display = None
        if generic:
            p.take("[")
            col = p.col()
            param = p.take()
            if not _NAME.fullmatch(param) or param in ("Null", "Object", "class", "generic"):
                raise DslError(f"bad parameter name {param!r}", lineno, col)
            builder.names.add(name)
            builder.decls.append(ClassDecl(name, param, None, None, None))
            p.param = param
            if p.peek() == "extends":
                p.take()
                bt = p.type_(allow_param=True)
                if bt == PARAM:
                    raise DslError("a parameter cannot bound itself directly", lineno)
                if isinstance(bt, tuple):
                    bound_display = f"{bt[1]}<{param}>"
                else:
                    bound_display = render_ground(bt)
            p.take("]")
        else:
            if p.peek() == "[":
                raise DslError(
                    f"class {name!r} takes a parameter only when declared with "
                    "'generic class'", lineno, p.col())
            builder.names.add(name)
            builder.decls.append(ClassDecl(name, param, None, None, None))

        super_name = super_arg = None
        if p.peek() == "extends":
            p.take("extends")
            p.param = param
            t = p.type_(allow_param=True)
            if t == PARAM:
                raise DslError("the parameter cannot be the whole superclass", lineno)
            if isinstance(t, tuple):
                super_name, super_arg = t[1], PARAM
            elif isinstance(t, App):
                super_name, super_arg = t.name, t.interval
            elif isinstance(t, Plain):
                super_name, super_arg = t.name, None
            elif isinstance(t, ObjectT):
                super_name = super_arg = None
            else:
                raise DslError("superclass must be a declared class or Object", lineno)
        p.finish()

        builder.decls[-1] = ClassDecl(name, param, bound_display, super_name, super_arg)
    return ClassTable(tuple(builder.decls))


def subterms(t: GroundType) -> frozenset:
    out = {t}
    if isinstance(t, App):
        out |= subterms(t.interval.lower)
        out |= subterms(t.interval.upper)
    return frozenset(out)


def ground_closure(table: ClassTable, *roots: GroundType,
                   cap: int = CLOSURE_CAP) -> frozenset:
    """All ground types a subtype query rooted here can ever mention:
    subterms, plus instantiated superclass chains, transitively."""
    seen: set = set()
    stack: list[GroundType] = list(roots)
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        if len(seen) > cap:
            raise GuardExceeded(f"ground closure exceeds {cap} types")
        if isinstance(t, App):
            stack.append(t.interval.lower)
            stack.append(t.interval.upper)
            stack.append(table.ground_super(t))
        elif isinstance(t, Plain):
            stack.append(table.ground_super(t))
    return frozenset(seen)
