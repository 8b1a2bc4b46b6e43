"""Finite posets with explicit order tables.

A FiniteLattice is, despite the name, any finite poset: whether it is
actually a complete lattice is computed and recorded, never assumed.
Meets and joins are found by scanning the bound sets, so their absence
is observable (meet/join return None). All element labels are strings.

Conventions: `leq(a, b)` means a <= b. Elements keep the order in which
they were supplied; every listing derived from a lattice uses that
order, which keeps output deterministic.
"""

from __future__ import annotations

import os
from functools import cached_property
from itertools import combinations

from ..errors import GuardExceeded, OrderError

DEFAULT_MAX_ELEMENTS = 4096
MAX_POWERSET_BASE = 10


def max_elements() -> int:
    """Element guard for lattice construction.

    Defaults to 4096; the MUNU_MAX_ELEMENTS environment variable
    overrides it.
    """
    raw = os.environ.get("MUNU_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError:
        raise GuardExceeded(f"MUNU_MAX_ELEMENTS is not an integer: {raw!r}")
    if value <= 0:
        raise GuardExceeded("MUNU_MAX_ELEMENTS must be positive")
    return value


class FiniteLattice:
    """Finite poset with lazily cached meet/join tables.

    Construct through build_poset or build_powerset; the constructor
    expects `down` to already be reflexive-transitively closed and
    antisymmetric.
    """

    def __init__(self, elements: tuple[str, ...], down: tuple[frozenset[int], ...], name: str = ""):
        self.name = name
        self.elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        self._down = down
        up: list[set[int]] = [set() for _ in elements]
        for i, ds in enumerate(down):
            for j in ds:
                up[j].add(i)
        self._up = tuple(frozenset(s) for s in up)
        n = len(elements)
        self.bottom: str | None = None
        self.top: str | None = None
        for i in range(n):
            if len(self._up[i]) == n:
                self.bottom = elements[i]
            if len(self._down[i]) == n:
                self.top = elements[i]
        self._meet_cache: dict[tuple[int, int], int | None] = {}
        self._join_cache: dict[tuple[int, int], int | None] = {}

    # -- order queries ------------------------------------------------

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise OrderError(f"unknown element: {label!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return self.index(a) in self._down[self.index(b)]

    def down_set(self, a: str) -> tuple[str, ...]:
        ds = self._down[self.index(a)]
        return tuple(e for i, e in enumerate(self.elements) if i in ds)

    def up_set(self, a: str) -> tuple[str, ...]:
        us = self._up[self.index(a)]
        return tuple(e for i, e in enumerate(self.elements) if i in us)

    # -- bounds -------------------------------------------------------

    def _meet_idx(self, i: int, j: int) -> int | None:
        if i > j:
            i, j = j, i
        key = (i, j)
        if key not in self._meet_cache:
            common = self._down[i] & self._down[j]
            found = None
            for k in common:
                if common <= self._down[k]:
                    found = k
                    break
            self._meet_cache[key] = found
        return self._meet_cache[key]

    def _join_idx(self, i: int, j: int) -> int | None:
        if i > j:
            i, j = j, i
        key = (i, j)
        if key not in self._join_cache:
            common = self._up[i] & self._up[j]
            found = None
            for k in common:
                if common <= self._up[k]:
                    found = k
                    break
            self._join_cache[key] = found
        return self._join_cache[key]

    def meet(self, a: str, b: str) -> str | None:
        """Greatest lower bound of a and b, or None when absent."""
        k = self._meet_idx(self.index(a), self.index(b))
        return None if k is None else self.elements[k]

    def join(self, a: str, b: str) -> str | None:
        """Least upper bound of a and b, or None when absent."""
        k = self._join_idx(self.index(a), self.index(b))
        return None if k is None else self.elements[k]

    def meet_of(self, labels) -> str | None:
        """Greatest lower bound of a set of elements by bound scan.

        The empty set yields the top element (when present).
        """
        idxs = [self.index(a) for a in labels]
        common = frozenset(range(len(self.elements)))
        for i in idxs:
            common &= self._down[i]
        for k in common:
            if common <= self._down[k]:
                return self.elements[k]
        return None

    def join_of(self, labels) -> str | None:
        """Least upper bound of a set of elements by bound scan."""
        idxs = [self.index(a) for a in labels]
        common = frozenset(range(len(self.elements)))
        for i in idxs:
            common &= self._up[i]
        for k in common:
            if common <= self._up[k]:
                return self.elements[k]
        return None

    # -- summary tables ----------------------------------------------

    @cached_property
    def meet_table(self) -> dict[tuple[str, str], str]:
        """Partial table of all defined pairwise meets."""
        table = {}
        for a, b in combinations(self.elements, 2):
            m = self.meet(a, b)
            if m is not None:
                table[(a, b)] = m
                table[(b, a)] = m
        for a in self.elements:
            table[(a, a)] = a
        return table

    @cached_property
    def join_table(self) -> dict[tuple[str, str], str]:
        table = {}
        for a, b in combinations(self.elements, 2):
            j = self.join(a, b)
            if j is not None:
                table[(a, b)] = j
                table[(b, a)] = j
        for a in self.elements:
            table[(a, a)] = a
        return table

    @cached_property
    def is_complete_lattice(self) -> bool:
        """Whether every subset has both bounds.

        For a finite poset this reduces to: bottom and top exist and
        every pair has a meet and a join (set bounds then fold).
        """
        if self.bottom is None or self.top is None:
            return False
        n = len(self.elements)
        for i in range(n):
            for j in range(i + 1, n):
                if self._meet_idx(i, j) is None or self._join_idx(i, j) is None:
                    return False
        return True

    def complement_table(self) -> dict[str, str]:
        """Boolean complement per element.

        Raises OrderError unless every element has a complement c with
        meet(x, c) = bottom and join(x, c) = top (cached on success).
        """
        cached = getattr(self, "_complement", None)
        if cached is not None:
            return cached
        if self.bottom is None or self.top is None:
            raise OrderError("lattice is not Boolean: missing bottom or top")
        table: dict[str, str] = {}
        for x in self.elements:
            found = None
            for c in self.elements:
                if self.meet(x, c) == self.bottom and self.join(x, c) == self.top:
                    found = c
                    break
            if found is None:
                raise OrderError(f"lattice is not Boolean: {x!r} has no complement")
            table[x] = found
        self._complement = table
        return table

    def __repr__(self):
        label = self.name or "poset"
        return f"<FiniteLattice {label}: {len(self.elements)} elements>"


def parallel(lat: FiniteLattice, a: str, b: str) -> bool:
    """True when a and b are incomparable."""
    return not lat.leq(a, b) and not lat.leq(b, a)


def _closure(n: int, edges: set[tuple[int, int]]) -> tuple[frozenset[int], ...]:
    """Reflexive-transitive closure as down-sets; raises on cycles."""
    succ: list[list[int]] = [[] for _ in range(n)]  # successors: i <= j
    for i, j in sorted(edges):
        if i != j:
            succ[i].append(j)
    up: list[frozenset[int]] = [frozenset()] * n
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    for root in range(n):
        if state[root] == 2:
            continue
        state[root] = 1
        stack: list[tuple[int, object]] = [(root, iter(succ[root]))]
        while stack:
            node, it = stack[-1]
            pushed = False
            for j in it:  # type: ignore[union-attr]
                if state[j] == 1:
                    raise OrderError("order contains a cycle (antisymmetry violated)")
                if state[j] == 0:
                    state[j] = 1
                    stack.append((j, iter(succ[j])))
                    pushed = True
                    break
            if not pushed:
                acc = {node}
                for j in succ[node]:
                    acc |= up[j]
                up[node] = frozenset(acc)
                state[node] = 2
                stack.pop()
    down: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in up[i]:
            down[j].add(i)
    return tuple(frozenset(s) for s in down)


def build_poset(elements, order_pairs, name: str = "") -> FiniteLattice:
    """Build a finite poset from labels and a <= relation.

    `order_pairs` lists (lower, upper) pairs; the reflexive-transitive
    closure is taken. Duplicated labels, unknown labels in pairs and
    cycles are errors. Completeness, bottom and top are computed.
    """
    labels = tuple(elements)
    seen = set()
    for e in labels:
        if e in seen:
            raise OrderError(f"duplicate element: {e!r}")
        seen.add(e)
    limit = max_elements()
    if len(labels) > limit:
        raise GuardExceeded(f"{len(labels)} elements exceeds the guard of {limit} "
                            "(override with MUNU_MAX_ELEMENTS)")
    index = {e: i for i, e in enumerate(labels)}
    edges = set()
    for a, b in order_pairs:
        if a not in index:
            raise OrderError(f"order pair mentions unknown element: {a!r}")
        if b not in index:
            raise OrderError(f"order pair mentions unknown element: {b!r}")
        edges.add((index[a], index[b]))
    down = _closure(len(labels), edges)
    return FiniteLattice(labels, down, name=name)


def subset_label(members) -> str:
    return "{" + ",".join(members) + "}"


def build_powerset(base_labels, name: str = "") -> FiniteLattice:
    """Powerset lattice of a base set, ordered by inclusion.

    Elements are labelled `{a,b}` with members in base order; subsets
    are enumerated in binary-counting order, so `{}` comes first and
    the full set last. Guard: at most 10 base labels.
    """
    base = tuple(base_labels)
    if len(base) > MAX_POWERSET_BASE:
        raise GuardExceeded(f"powerset base of {len(base)} exceeds the guard of {MAX_POWERSET_BASE}")
    return powerset_lattice(base, name)


def powerset_lattice(base_labels, name: str = "") -> FiniteLattice:
    """Powerset construction without the base-size guard (the overall
    element guard still applies). Internal building block."""
    base = tuple(base_labels)
    if len(set(base)) != len(base):
        raise OrderError("duplicate base label")
    n = 1 << len(base)
    limit = max_elements()
    if n > limit:
        raise GuardExceeded(f"{n} elements exceeds the guard of {limit} "
                            "(override with MUNU_MAX_ELEMENTS)")
    labels = tuple(
        subset_label(b for k, b in enumerate(base) if mask >> k & 1)
        for mask in range(n)
    )
    down = tuple(
        frozenset(sub for sub in range(n) if sub & mask == sub)
        for mask in range(n)
    )
    lat = FiniteLattice(labels, down, name=name)
    # Inclusion order makes these immediate; preseed the lazy caches.
    lat.__dict__["is_complete_lattice"] = True
    lat._complement = {labels[m]: labels[(n - 1) ^ m] for m in range(n)}
    if n <= 256:
        for i in range(n):
            for j in range(i, n):
                lat._meet_cache[(i, j)] = i & j
                lat._join_cache[(i, j)] = i | j
    return lat
