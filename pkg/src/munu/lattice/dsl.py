"""Line-oriented source format for lattices and endofunctions.

    # free comment
    lattice L
    elements: bot, a, b, top
    order: bot<=a, bot<=b, a<=top, b<=top

    lattice P
    powerset: 1 2 3

    fun F on P
    {} -> {1}
    {1} -> {1}
    ...

A file may declare any number of lattices and funs. Element labels in
`elements:`/`order:` lines must not contain commas, whitespace or
`<=`; powerset-generated labels (`{1,2}`) appear only in fun mapping
lines, which are split on `->` and so accept them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import DslError, MunuError
from .endo import MonotoneEndo
from .order import FiniteLattice, build_poset, build_powerset


@dataclass
class LabFile:
    lattices: dict[str, FiniteLattice] = field(default_factory=dict)
    endos: dict[str, MonotoneEndo] = field(default_factory=dict)

    def lattice(self, name: str) -> FiniteLattice:
        if name not in self.lattices:
            raise DslError(f"no lattice named {name!r} in this source")
        return self.lattices[name]

    def endo(self, name: str) -> MonotoneEndo:
        if name not in self.endos:
            raise DslError(f"no fun named {name!r} in this source")
        return self.endos[name]


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


class _LatticeBlock:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.elements: list[str] | None = None
        self.order: list[tuple[str, str]] = []
        self.powerset: list[str] | None = None


class _FunBlock:
    def __init__(self, name: str, lattice: str, line: int):
        self.name = name
        self.lattice = lattice
        self.line = line
        self.table: dict[str, str] = {}


def parse_lab_source(text: str) -> LabFile:
    out = LabFile()
    block: _LatticeBlock | _FunBlock | None = None

    def close(b):
        if b is None:
            return
        if isinstance(b, _LatticeBlock):
            if b.name in out.lattices:
                raise DslError(f"duplicate lattice name {b.name!r}", b.line)
            try:
                if b.powerset is not None:
                    lat = build_powerset(b.powerset, name=b.name)
                else:
                    lat = build_poset(b.elements or [], b.order, name=b.name)
            except MunuError as exc:
                raise DslError(f"lattice {b.name!r}: {exc}", b.line) from exc
            out.lattices[b.name] = lat
        else:
            if b.name in out.endos:
                raise DslError(f"duplicate fun name {b.name!r}", b.line)
            lat = out.lattices.get(b.lattice)
            if lat is None:
                raise DslError(f"fun {b.name!r} refers to unknown lattice {b.lattice!r}", b.line)
            try:
                out.endos[b.name] = MonotoneEndo(domain=lat, table=b.table, name=b.name)
            except MunuError as exc:
                raise DslError(f"fun {b.name!r}: {exc}", b.line) from exc

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("lattice "):
            close(block)
            name = line[len("lattice "):].strip()
            if not name or " " in name:
                raise DslError("expected: lattice <name>", lineno)
            block = _LatticeBlock(name, lineno)
            continue
        if line.startswith("fun "):
            close(block)
            rest = line[len("fun "):].strip()
            parts = rest.split()
            if len(parts) != 3 or parts[1] != "on":
                raise DslError("expected: fun <name> on <lattice>", lineno)
            block = _FunBlock(parts[0], parts[2], lineno)
            continue
        if isinstance(block, _LatticeBlock):
            if line.startswith("elements:"):
                if block.powerset is not None:
                    raise DslError("a lattice block may not mix powerset: with elements:", lineno)
                items = [e.strip() for e in line[len("elements:"):].split(",")]
                items = [e for e in items if e]
                if not items:
                    raise DslError("elements: list is empty", lineno)
                block.elements = (block.elements or []) + items
                continue
            if line.startswith("order:"):
                if block.powerset is not None:
                    raise DslError("a lattice block may not mix powerset: with order:", lineno)
                for chunk in line[len("order:"):].split(","):
                    chunk = chunk.strip()
                    if not chunk:
                        continue
                    if "<=" not in chunk:
                        raise DslError(f"order entry {chunk!r} is not of the form a<=b", lineno)
                    a, _, b = chunk.partition("<=")
                    a, b = a.strip(), b.strip()
                    if not a or not b:
                        raise DslError(f"order entry {chunk!r} is not of the form a<=b", lineno)
                    block.order.append((a, b))
                continue
            if line.startswith("powerset:"):
                if block.elements is not None or block.order:
                    raise DslError("a lattice block may not mix powerset: with elements:/order:", lineno)
                base = line[len("powerset:"):].split()
                if not base:
                    raise DslError("powerset: base list is empty", lineno)
                block.powerset = base
                continue
            raise DslError(f"unexpected line in lattice block: {line!r}", lineno)
        if isinstance(block, _FunBlock):
            if "->" not in line:
                raise DslError(f"expected a mapping line `x -> y`, got {line!r}", lineno)
            src, _, dst = line.partition("->")
            src, dst = src.strip(), dst.strip()
            if not src or not dst:
                raise DslError(f"malformed mapping line: {line!r}", lineno)
            if src in block.table:
                raise DslError(f"duplicate mapping for {src!r}", lineno)
            block.table[src] = dst
            continue
        raise DslError(f"unexpected top-level line: {line!r}", lineno)
    close(block)
    return out
