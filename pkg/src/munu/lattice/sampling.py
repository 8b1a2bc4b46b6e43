"""Seeded sampling of monotone endofunctions.

Assignment walks a linear extension of the poset; each image is drawn
from the elements that dominate every already-assigned predecessor, so
the result is monotone by construction. Not uniform over all monotone
maps, but deterministic for a fixed seed and able to reach any of them.
"""

from __future__ import annotations

import random

from .endo import MonotoneEndo, check_monotone
from .order import FiniteLattice


def linear_extension(lat: FiniteLattice) -> tuple[str, ...]:
    """Elements sorted so that smaller ones come first."""
    return tuple(sorted(lat.elements, key=lambda e: (len(lat.down_set(e)), lat.index(e))))


def random_monotone_endo(lat: FiniteLattice, rng: random.Random, name: str = "") -> MonotoneEndo:
    order = linear_extension(lat)
    table: dict[str, str] = {}
    for x in order:
        below = [y for y in lat.down_set(x) if y in table]
        candidates = [
            z for z in lat.elements
            if all(lat.leq(table[y], z) for y in below)
        ]
        table[x] = rng.choice(candidates)
    f = MonotoneEndo(domain=lat, table=table, name=name)
    report = check_monotone(f)
    assert report.holds, "sampler produced a non-monotone table"
    return f


def all_monotone_endos(lat: FiniteLattice):
    """Exhaustively enumerate monotone tables (desk-scale lattices only)."""
    order = linear_extension(lat)

    def extend(i: int, table: dict[str, str]):
        if i == len(order):
            yield MonotoneEndo(domain=lat, table=dict(table), name="")
            return
        x = order[i]
        below = [y for y in lat.down_set(x) if y in table]
        for z in lat.elements:
            if all(lat.leq(table[y], z) for y in below):
                table[x] = z
                yield from extend(i + 1, table)
                del table[x]

    yield from extend(0, {})
