"""Equi-recursive structural types: AST, parser, base order.

Types are closed and contractive (`mu X . X` is rejected: the bound
variable must sit under at least one Sum/Prod/Arrow before reuse).
Binders are renamed to canonical names X0, X1, ... at parse time, so
structural equality of two parsed types is alpha-equivalence.

Concrete grammar, loosest binding first:

    type  := 'mu' Name '.' type | arrow
    arrow := sum ('->' arrow)?              right associative
    sum   := prod ('+' prod)*               left associative
    prod  := atom ('*' atom)*               left associative
    atom  := 'Unit' | 'Top' | Name | '(' type ')' | 'mu' Name '.' type

A `mu` body extends as far right as possible. Names resolve to bound
variables first, then to definitions, then to declared bases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count

from ..errors import DslError, OrderError


class StructType:
    __slots__ = ()


@dataclass(frozen=True)
class Unit(StructType):
    def __repr__(self):
        return "Unit"


@dataclass(frozen=True)
class Top(StructType):
    def __repr__(self):
        return "Top"


@dataclass(frozen=True)
class Base(StructType):
    name: str


@dataclass(frozen=True)
class Sum(StructType):
    left: StructType
    right: StructType


@dataclass(frozen=True)
class Prod(StructType):
    left: StructType
    right: StructType


@dataclass(frozen=True)
class Arrow(StructType):
    domain: StructType
    codomain: StructType


@dataclass(frozen=True)
class Var(StructType):
    name: str


@dataclass(frozen=True)
class Mu(StructType):
    var: str
    body: StructType


UNIT = Unit()
TOP = Top()

_CANONICAL = re.compile(r"X\d+$")


class BaseOrder:
    """Declared base type names with a partial order among them."""

    def __init__(self, bases=(), pairs=()):
        self.bases = tuple(dict.fromkeys(bases))
        for b in self.bases:
            if b in ("Unit", "Top", "mu"):
                raise OrderError(f"{b!r} is reserved and cannot be a base name")
            if _CANONICAL.match(b):
                raise OrderError(f"{b!r} collides with canonical binder names")
        known = set(self.bases)
        for a, b in pairs:
            if a not in known or b not in known:
                raise OrderError(f"base order pair ({a!r}, {b!r}) mentions an undeclared base")
        # reflexive-transitive closure with antisymmetry check
        leq = {(b, b) for b in self.bases} | set(pairs)
        changed = True
        while changed:
            changed = False
            for a, b in list(leq):
                for c, d in list(leq):
                    if b == c and (a, d) not in leq:
                        leq.add((a, d))
                        changed = True
        for a, b in leq:
            if a != b and (b, a) in leq:
                raise OrderError(f"base order has a cycle through {a!r} and {b!r}")
        self._leq = frozenset(leq)

    def declares(self, name: str) -> bool:
        return name in self.bases

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self._leq

    @staticmethod
    def default() -> "BaseOrder":
        return BaseOrder(["Bool", "Nat", "Int"], [("Nat", "Int")])

    @staticmethod
    def empty() -> "BaseOrder":
        return BaseOrder()


_TOKEN = re.compile(r"\s*(->|[+*().]|[A-Za-z_][A-Za-z0-9_']*)")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise DslError(f"unexpected character {stripped[0]!r}", 1, pos + 1)
        tokens.append((m.group(1), m.start(1) + 1))
        pos = m.end()
    tokens.append((None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def col(self):
        return self.tokens[self.i][1]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok[0]

    def expect(self, tok: str):
        if self.peek() != tok:
            raise DslError(f"expected {tok!r}, found {self.peek()!r}", 1, self.col())
        self.take()

    def parse(self) -> StructType:
        t = self.type_()
        if self.peek() is not None:
            raise DslError(f"trailing input from {self.peek()!r}", 1, self.col())
        return t

    def type_(self) -> StructType:
        if self.peek() == "mu":
            return self.mu()
        return self.arrow()

    def mu(self) -> StructType:
        self.expect("mu")
        name = self.peek()
        if name is None or not name[0].isalpha() and name[0] != "_":
            raise DslError("expected a variable name after mu", 1, self.col())
        if name in ("Unit", "Top", "mu"):
            raise DslError(f"{name!r} cannot be bound by mu", 1, self.col())
        self.take()
        self.expect(".")
        return Mu(name, self.type_())

    def arrow(self) -> StructType:
        left = self.sum()
        if self.peek() == "->":
            self.take()
            return Arrow(left, self.type_())
        return left

    def sum(self) -> StructType:
        t = self.prod()
        while self.peek() == "+":
            self.take()
            t = Sum(t, self.prod())
        return t

    def prod(self) -> StructType:
        t = self.atom()
        while self.peek() == "*":
            self.take()
            t = Prod(t, self.atom())
        return t

    def atom(self) -> StructType:
        tok = self.peek()
        if tok == "(":
            self.take()
            t = self.type_()
            self.expect(")")
            return t
        if tok == "mu":
            return self.mu()
        if tok == "Unit":
            self.take()
            return UNIT
        if tok == "Top":
            self.take()
            return TOP
        if tok is None or tok in ("+", "*", "->", ")", "."):
            raise DslError(f"expected a type, found {tok!r}", 1, self.col())
        self.take()
        return Var(tok)  # resolved against binders/defs/bases afterwards


def _resolve(t: StructType, bound: frozenset, base_order: BaseOrder,
             defs: dict[str, StructType], free_ok: frozenset) -> StructType:
    if isinstance(t, Var):
        if t.name in bound:
            return t
        if t.name in defs:
            return defs[t.name]
        if base_order.declares(t.name):
            return Base(t.name)
        if t.name in free_ok:
            return t
        raise DslError(f"unbound name {t.name!r} (not a binder, definition or base)")
    if isinstance(t, Mu):
        if base_order.declares(t.var) or t.var in defs:
            raise DslError(f"mu binder {t.var!r} shadows a base or definition")
        return Mu(t.var, _resolve(t.body, bound | {t.var}, base_order, defs, free_ok))
    if isinstance(t, Sum):
        return Sum(_resolve(t.left, bound, base_order, defs, free_ok),
                   _resolve(t.right, bound, base_order, defs, free_ok))
    if isinstance(t, Prod):
        return Prod(_resolve(t.left, bound, base_order, defs, free_ok),
                    _resolve(t.right, bound, base_order, defs, free_ok))
    if isinstance(t, Arrow):
        return Arrow(_resolve(t.domain, bound, base_order, defs, free_ok),
                     _resolve(t.codomain, bound, base_order, defs, free_ok))
    return t


def check_contractive(t: StructType, unguarded: frozenset = frozenset()):
    """Every bound variable must cross a Sum/Prod/Arrow before use."""
    if isinstance(t, Var):
        if t.name in unguarded:
            raise DslError(f"type is not contractive: {t.name!r} is used without a "
                           "constructor between binder and use")
        return
    if isinstance(t, Mu):
        check_contractive(t.body, unguarded | {t.var})
        return
    if isinstance(t, (Sum, Prod)):
        check_contractive(t.left, frozenset())
        check_contractive(t.right, frozenset())
        return
    if isinstance(t, Arrow):
        check_contractive(t.domain, frozenset())
        check_contractive(t.codomain, frozenset())
        return


def free_vars(t: StructType, bound: frozenset = frozenset()) -> frozenset:
    if isinstance(t, Var):
        return frozenset() if t.name in bound else frozenset({t.name})
    if isinstance(t, Mu):
        return free_vars(t.body, bound | {t.var})
    if isinstance(t, (Sum, Prod)):
        return free_vars(t.left, bound) | free_vars(t.right, bound)
    if isinstance(t, Arrow):
        return free_vars(t.domain, bound) | free_vars(t.codomain, bound)
    return frozenset()


def canonicalize(t: StructType) -> StructType:
    """Rename binders to X0, X1, ... in depth-first order."""
    counter = count()

    def walk(t: StructType, env: dict[str, str]) -> StructType:
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, Mu):
            fresh = f"X{next(counter)}"
            return Mu(fresh, walk(t.body, {**env, t.var: fresh}))
        if isinstance(t, Sum):
            return Sum(walk(t.left, env), walk(t.right, env))
        if isinstance(t, Prod):
            return Prod(walk(t.left, env), walk(t.right, env))
        if isinstance(t, Arrow):
            return Arrow(walk(t.domain, env), walk(t.codomain, env))
        return t

    return walk(t, {})


def parse_type(text: str, base_order: BaseOrder | None = None,
               defs: dict[str, StructType] | None = None,
               free_ok=()) -> StructType:
    """Parse, resolve names, then enforce closedness and contractivity.

    `free_ok` lists variable names allowed to stay free (used for
    constructor bodies with a hole); everything else must be bound.
    """
    order = base_order if base_order is not None else BaseOrder.default()
    raw = _Parser(text).parse()
    resolved = _resolve(raw, frozenset(), order, defs or {}, frozenset(free_ok))
    check_contractive(resolved)
    leftover = free_vars(resolved) - frozenset(free_ok)
    if leftover:
        raise DslError(f"type is not closed: {sorted(leftover)[0]!r} is free")
    return canonicalize(resolved)


def render_type(t: StructType, prec: int = 0) -> str:
    """Inverse of parse_type up to alpha-canonical names."""
    if isinstance(t, Unit):
        return "Unit"
    if isinstance(t, Top):
        return "Top"
    if isinstance(t, (Base, Var)):
        return t.name
    if isinstance(t, Mu):
        s = f"mu {t.var} . {render_type(t.body, 0)}"
        return f"({s})" if prec > 0 else s
    if isinstance(t, Arrow):
        s = f"{render_type(t.domain, 1)} -> {render_type(t.codomain, 0)}"
        return f"({s})" if prec > 0 else s
    if isinstance(t, Sum):
        s = f"{render_type(t.left, 1)} + {render_type(t.right, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(t, Prod):
        s = f"{render_type(t.left, 2)} * {render_type(t.right, 3)}"
        return f"({s})" if prec > 2 else s
    raise AssertionError(f"unrenderable node {t!r}")


def node_count(t: StructType) -> int:
    if isinstance(t, (Sum, Prod)):
        return 1 + node_count(t.left) + node_count(t.right)
    if isinstance(t, Arrow):
        return 1 + node_count(t.domain) + node_count(t.codomain)
    if isinstance(t, Mu):
        return 1 + node_count(t.body)
    return 1


def _subst(t: StructType, name: str, replacement: StructType) -> StructType:
    if isinstance(t, Var):
        return replacement if t.name == name else t
    if isinstance(t, Mu):
        if t.var == name:  # inner binder shadows
            return t
        return Mu(t.var, _subst(t.body, name, replacement))
    if isinstance(t, Sum):
        return Sum(_subst(t.left, name, replacement), _subst(t.right, name, replacement))
    if isinstance(t, Prod):
        return Prod(_subst(t.left, name, replacement), _subst(t.right, name, replacement))
    if isinstance(t, Arrow):
        return Arrow(_subst(t.domain, name, replacement), _subst(t.codomain, name, replacement))
    return t


def unfold(t: Mu) -> StructType:
    """One equi-recursive unfolding: body with the binder replaced by
    the whole mu type. Safe without renaming because mu types are
    closed, so the replacement captures nothing."""
    if not isinstance(t, Mu):
        raise OrderError("unfold expects a mu type")
    return _subst(t.body, t.var, t)


def parse_defs(text: str):
    """Definitions source: `base A`, `base A <= B` and `type N = expr`.

    Later definitions may use earlier ones; recursion goes through
    explicit mu, never through definition names. Returns
    (BaseOrder, dict of definitions).
    """
    bases: list[str] = []
    pairs: list[tuple[str, str]] = []
    pending: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("base "):
            decl = line[len("base "):].strip()
            if "<=" in decl:
                a, _, b = decl.partition("<=")
                a, b = a.strip(), b.strip()
                if not a or not b:
                    raise DslError("expected: base A <= B", lineno)
                if b not in bases:
                    raise DslError(f"unknown base {b!r}; declare it first", lineno)
                if a not in bases:
                    bases.append(a)
                pairs.append((a, b))
            else:
                if not decl or " " in decl:
                    raise DslError("expected: base <name>", lineno)
                if decl in bases:
                    raise DslError(f"duplicate base {decl!r}", lineno)
                bases.append(decl)
            continue
        if line.startswith("type "):
            decl = line[len("type "):]
            name, eq, expr = decl.partition("=")
            name = name.strip()
            if not eq or not name or " " in name:
                raise DslError("expected: type <name> = <expr>", lineno)
            pending.append((name, expr.strip(), lineno))
            continue
        raise DslError(f"unexpected line: {line!r}", lineno)
    try:
        order = BaseOrder(bases, pairs)
    except OrderError as exc:
        raise DslError(str(exc)) from exc
    defs: dict[str, StructType] = {}
    for name, expr, lineno in pending:
        if name in defs or order.declares(name):
            raise DslError(f"duplicate definition of {name!r}", lineno)
        try:
            defs[name] = parse_type(expr, order, defs)
        except DslError as exc:
            raise DslError(f"in definition of {name!r}: {exc}", lineno) from exc
    return order, defs


_LIBRARY_SRC = """
type Bool = Unit + Unit
type Nat = mu N . Unit + N
type Int = Nat + Unit + Nat
type ListInt = mu L . Unit + Int * L
"""


def standard_library() -> dict[str, StructType]:
    """Closed encodings of the familiar base types.

    Bool is a two-way choice of Unit, Nat a choice of zero or a
    successor, Int a negative Nat, a zero, or a positive Nat, and
    ListInt the nil/cons shape over the Int encoding. Definition names
    are expanded away, so each entry is self-contained.
    """
    _, defs = parse_defs(_LIBRARY_SRC)
    return defs
