"""Building sets on a lattice of flats.

Membership is checked through the intrinsic characterization: a set of
nonempty flats is a building set exactly when it contains every connected flat
and the join of any two intersecting members is again a member.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .matroid import Matroid, flat_key

__all__ = [
    "BuildingSet",
    "Violation",
    "BuildingSetError",
    "NotAFlat",
    "NotABuildingSet",
    "XNotInBuildingSet",
    "XMaximal",
    "CapExceeded",
    "is_building_set",
    "minimal_building_set",
    "maximal_building_set",
    "restrict_building_set",
    "contract_building_set",
    "product_building_set",
    "enumerate_building_sets",
]


class BuildingSetError(ValueError):
    pass


class NotAFlat(BuildingSetError):
    pass


class NotABuildingSet(BuildingSetError):
    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class XNotInBuildingSet(BuildingSetError):
    pass


class XMaximal(BuildingSetError):
    pass


class CapExceeded(BuildingSetError):
    pass


@dataclass(frozen=True)
class Violation:
    """One failed building-set condition.

    ``kind`` is ``"missing_connected"`` (``flats == (X,)``, a connected flat not in
    the set) or ``"missing_join"`` (``flats == (X, Y, X v Y)`` for intersecting
    members whose join is absent).
    """

    kind: str
    flats: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}: {[bin(f) for f in self.flats]}"


def _check_members(m: Matroid, members: Iterable[int]) -> list[int]:
    out = sorted(set(members), key=flat_key)
    for f in out:
        if f == 0 or not m.is_flat(f):
            raise NotAFlat(f"{m.labels_of(f)} is not a nonempty flat")
    return out


def is_building_set(m: Matroid, members: Iterable[int]) -> tuple[bool, list[Violation]]:
    members = _check_members(m, members)
    have = set(members)
    violations = [
        Violation("missing_connected", (f,)) for f in m.connected_flats() if f not in have
    ]
    for x, y in combinations(members, 2):
        if x & y:
            j = m.join(x, y)
            if j not in have:
                violations.append(Violation("missing_join", (x, y, j)))
    return not violations, violations


class BuildingSet:
    """A validated building set. ``maximal`` lists its inclusion-maximal members."""

    def __init__(self, matroid: Matroid, members: Iterable[int], check: bool = True):
        self.matroid = matroid
        self.members: tuple[int, ...] = tuple(_check_members(matroid, members))
        if check:
            ok, violations = is_building_set(matroid, self.members)
            if not ok:
                raise NotABuildingSet(violations)
        self._member_set = frozenset(self.members)
        self.maximal: tuple[int, ...] = tuple(
            x for x in self.members
            if not any(y != x and y & x == x for y in self.members)
        )
        self.non_maximal: tuple[int, ...] = tuple(
            x for x in self.members if x not in set(self.maximal)
        )

    def __contains__(self, flat: int) -> bool:
        return flat in self._member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BuildingSet):
            return NotImplemented
        return self.matroid == other.matroid and self._member_set == other._member_set

    def __hash__(self) -> int:
        return hash((self.matroid, self._member_set))

    def __repr__(self) -> str:
        names = ", ".join(self.matroid.name(x) for x in self.members)
        return f"BuildingSet({{{names}}})"

    def maximal_above(self, flat: int) -> int:
        """The unique maximal member containing the nonempty ``flat``."""
        for y in self.maximal:
            if y & flat == flat:
                return y
        raise BuildingSetError(f"{self.matroid.labels_of(flat)} lies below no maximal member")

    def transport(self, other: Matroid) -> "BuildingSet":
        """The same members, by label, in a matroid with the same flats but another ground order."""
        return BuildingSet(
            other, [other.mask(self.matroid.labels_of(x)) for x in self.members]
        )


def minimal_building_set(m: Matroid) -> BuildingSet:
    return BuildingSet(m, m.connected_flats(), check=False)


def maximal_building_set(m: Matroid) -> BuildingSet:
    return BuildingSet(m, [f for f in m.flats if f], check=False)


def restrict_building_set(b: BuildingSet, x: int) -> BuildingSet:
    """Members below the flat ``x``, as a building set of the restriction to ``x``."""
    m = b.matroid
    if not m.is_flat(x):
        raise NotAFlat(f"{m.labels_of(x)} is not a flat")
    sub = m.restriction(x)
    return BuildingSet(sub, [sub.mask(m.labels_of(y)) for y in b.members if y & x == y])


def _contracted_members(b: BuildingSet, x: int) -> list[int]:
    m = b.matroid
    return sorted({m.join(y, x) & ~x for y in b.members if y & x != y}, key=flat_key)


def _require_contractible(b: BuildingSet, x: int) -> None:
    if x not in b:
        raise XNotInBuildingSet(f"{b.matroid.labels_of(x)} is not a member")
    if x in b.maximal:
        raise XMaximal(f"{b.matroid.labels_of(x)} is a maximal member")


def contract_building_set(b: BuildingSet, x: int) -> BuildingSet:
    """``{(Y v X) - X : Y in B, Y not below X}`` as a building set of the contraction."""
    _require_contractible(b, x)
    m = b.matroid
    sub = m.contraction(x)
    return BuildingSet(sub, [sub.mask(m.labels_of(z)) for z in _contracted_members(b, x)])


def product_building_set(b: BuildingSet, x: int) -> BuildingSet:
    """Restriction and contraction at ``x`` combined on the original ground set.

    Members below ``x`` are kept as they are and contracted members are
    written as subsets of ``E - x``, so the result lives on ``m.split_at(x)``
    and shares ground indices (hence atom order) with ``b``.
    """
    _require_contractible(b, x)
    m = b.matroid
    lower = [y for y in b.members if y & x == y]
    return BuildingSet(m.split_at(x), lower + _contracted_members(b, x))


def _close_under_joins(m: Matroid, members: set[int]) -> frozenset[int]:
    members = set(members)
    changed = True
    while changed:
        changed = False
        for x, y in combinations(sorted(members), 2):
            if x & y:
                j = m.join(x, y)
                if j not in members:
                    members.add(j)
                    changed = True
    return frozenset(members)


def enumerate_building_sets(m: Matroid, cap: int = 1 << 14) -> list[BuildingSet]:
    """Every building set of ``m``, in a deterministic order.

    Each building set is the connected flats plus some non-connected flats,
    closed under joins of intersecting members. ``cap`` bounds the number of
    subsets of non-connected flats that may be tried.
    """
    connected = set(m.connected_flats())
    optional = [f for f in m.flats if f and f not in connected]
    if 1 << len(optional) > cap:
        raise CapExceeded(
            f"{len(optional)} non-connected flats give {1 << len(optional)} subsets (cap {cap})"
        )
    found = set()
    for mask in range(1 << len(optional)):
        chosen = connected | {optional[i] for i in range(len(optional)) if mask >> i & 1}
        found.add(_close_under_joins(m, chosen))
    ordered = sorted(found, key=lambda s: (len(s), sorted(flat_key(f) for f in s)))
    return [BuildingSet(m, s, check=False) for s in ordered]
