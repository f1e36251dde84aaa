"""Nested sets, facet enumeration, forests and the link map tau_Z.

Nested sets always contain the maximal members of the building set; a facet
is an inclusion-maximal nested set and is represented as a ``frozenset`` of
flat masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .building import BuildingSet, product_building_set
from .matroid import flat_key

__all__ = [
    "NestedSet",
    "ForestPoset",
    "NotInLink",
    "is_nested",
    "facets",
    "reduced",
    "forest",
    "link_vertices",
    "tau",
    "link_image",
    "product_of",
    "sorted_flats",
]

NestedSet = frozenset  # of flat masks, always including max(B)


class NotInLink(ValueError):
    pass


def _comparable(x: int, y: int) -> bool:
    return x & y == x or x & y == y


def sorted_flats(flats: Iterable[int]) -> list[int]:
    return sorted(flats, key=flat_key)


def _antichains(items: list[int], start: int = 0, chosen: tuple = ()) -> Iterator[tuple]:
    """Nonempty antichains of ``items`` (under inclusion), each yielded once."""
    for i in range(start, len(items)):
        x = items[i]
        if all(not _comparable(x, y) for y in chosen):
            grown = chosen + (x,)
            yield grown
            yield from _antichains(items, i + 1, grown)


def _bad_antichain(b: BuildingSet, flats: list[int], anchor: int | None = None):
    """An antichain of size >= 2 whose join lies in ``b``, or ``None``.

    With ``anchor`` given, only antichains containing ``anchor`` are examined;
    ``flats`` must then exclude it.
    """
    m = b.matroid
    if anchor is None:
        for chain in _antichains(flats):
            if len(chain) >= 2 and m.join(*chain) in b:
                return chain
        return None
    pool = [y for y in flats if not _comparable(anchor, y)]
    for chain in _antichains(pool):
        if m.join(anchor, *chain) in b:
            return (anchor,) + chain
    return None


def is_nested(b: BuildingSet, flats: Iterable[int]) -> tuple[bool, tuple[int, ...] | None]:
    """Check both nestedness conditions.

    Returns ``(True, None)`` or ``(False, witness)``. The witness is the tuple of
    missing maximal members when ``max(B)`` is not included, and otherwise a
    pairwise incomparable family whose join lies in ``B``.
    """
    flats = sorted_flats(set(flats))
    for f in flats:
        if f not in b:
            raise ValueError(f"{b.matroid.labels_of(f)} is not a member of the building set")
    missing = tuple(x for x in b.maximal if x not in flats)
    if missing:
        return False, missing
    bad = _bad_antichain(b, flats)
    if bad is not None:
        return False, bad
    return True, None


def facets(b: BuildingSet) -> list[NestedSet]:
    """All inclusion-maximal nested sets, each of size ``rank(M)``.

    Backtracks over the non-maximal members in canonical flat order, only
    testing antichains through the newly added member. The output order is
    the order in which facets are completed, which is deterministic.
    """
    target = b.matroid.rank
    candidates = sorted_flats(b.non_maximal)
    out: list[NestedSet] = []

    def grow(current: list[int], start: int) -> None:
        if len(current) == target:
            out.append(frozenset(current))
            return
        for i in range(start, len(candidates)):
            x = candidates[i]
            if _bad_antichain(b, current, anchor=x) is None:
                current.append(x)
                grow(current, i + 1)
                current.pop()

    grow(list(b.maximal), 0)
    return out


def reduced(b: BuildingSet, n: Iterable[int]) -> frozenset[int]:
    """The face of the nested set complex: ``n`` without the maximal members."""
    return frozenset(n) - set(b.maximal)


@dataclass(frozen=True)
class ForestPoset:
    nodes: tuple[int, ...]
    parent: dict

    def children(self, x: int) -> list[int]:
        return [y for y in self.nodes if self.parent.get(y) == x]

    def roots(self) -> list[int]:
        return [y for y in self.nodes if y not in self.parent]


def forest(n: Iterable[int]) -> ForestPoset:
    """Cover relations of a nested set: each flat points at the smallest member above it."""
    nodes = tuple(sorted_flats(n))
    parent = {}
    for x in nodes:
        above = [y for y in nodes if y != x and y & x == x]
        if above:
            parent[x] = min(above, key=flat_key)
            # forest property: everything above x is a chain
            assert all(_comparable(p, q) for p, q in combinations(above, 2)), "not a forest"
    return ForestPoset(nodes, parent)


def link_vertices(b: BuildingSet, z: int) -> list[int]:
    """Vertices X of the link of ``z``: non-maximal members with ``{X, z} u max(B)`` nested."""
    out = []
    for x in b.non_maximal:
        if x != z and is_nested(b, set(b.maximal) | {x, z})[0]:
            out.append(x)
    return out


def _require_link_point(b: BuildingSet, z: int, x: int) -> None:
    if z not in b or z in b.maximal:
        raise NotInLink(f"{b.matroid.labels_of(z)} is not a non-maximal member")
    if x == z or x in b.maximal:
        return
    if x not in b or not is_nested(b, set(b.maximal) | {x, z})[0]:
        raise NotInLink(f"{b.matroid.labels_of(x)} is not in the link of {b.matroid.labels_of(z)}")


def tau(b: BuildingSet, z: int, x: int, check: bool = True) -> int:
    """Image of ``x`` under tau_z: ``x`` itself when ``x <= z``, else ``(x v z) - z``.

    Defined on the link vertices of ``z`` and extended to ``{z} u max(B)``.
    """
    if check:
        _require_link_point(b, z, x)
    if x & z == x:
        return x
    return b.matroid.join(x, z) & ~z


def product_of(b: BuildingSet, z: int) -> BuildingSet:
    """``product_building_set`` memoized on ``b``."""
    cache = b.__dict__.setdefault("_products", {})
    if z not in cache:
        cache[z] = product_building_set(b, z)
    return cache[z]


def link_image(b: BuildingSet, z: int, n: Iterable[int]) -> NestedSet:
    """The elementwise tau_z image of a nested set containing ``z``.

    The result is a nested set of ``product_of(b, z)``; this is re-checked.
    """
    n = frozenset(n)
    if z not in n:
        raise NotInLink(f"{b.matroid.labels_of(z)} is not in the nested set")
    image = frozenset(tau(b, z, x) for x in n)
    pb = product_of(b, z)
    ok, witness = is_nested(pb, image)
    if not ok or len(image) != len(n):
        raise AssertionError(f"tau image is not nested in the product building set: {witness}")
    return image
