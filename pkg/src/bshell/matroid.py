"""Loopless matroids stored extensionally by their lattice of flats.

A flat is an ``int`` bit mask over the ground set: bit ``i`` is set when the
``i``-th ground label belongs to the flat. The ground order is significant,
since it orders the atoms (an atom compares by its smallest ground index).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Matroid",
    "MatroidError",
    "NotALattice",
    "CoverPartitionViolation",
    "HasLoops",
    "LabelCollision",
    "popcount",
    "bits",
    "min_index",
    "flat_key",
]


class MatroidError(ValueError):
    pass


class NotALattice(MatroidError):
    pass


class CoverPartitionViolation(MatroidError):
    pass


class HasLoops(MatroidError):
    pass


class LabelCollision(MatroidError):
    pass


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def min_index(mask: int) -> int:
    """Smallest ground index in a nonempty mask; this is the atom comparison key."""
    return (mask & -mask).bit_length() - 1


def flat_key(mask: int) -> tuple[int, int]:
    """Canonical flat order: cardinality first, then bit pattern."""
    return (popcount(mask), mask)


def _compress(mask: int, positions: Sequence[int]) -> int:
    out = 0
    for j, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << j
    return out


class Matroid:
    """A loopless matroid given by its ordered ground set and all of its flats.

    Construction validates the geometric-lattice axioms: the empty set and the
    ground set are flats, flats are closed under intersection, and for every
    flat ``F`` the covers of ``F`` partition ``E - F``. Ranks are derived from
    cover chains. Instances are treated as immutable.
    """

    def __init__(self, labels: Iterable[str], flats: Iterable[int]):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise LabelCollision(f"ground labels are not distinct: {labels}")
        self.labels = labels
        self.n = len(labels)
        self.full = (1 << self.n) - 1
        flat_set = set(flats)
        for f in flat_set:
            if f < 0 or f & ~self.full:
                raise NotALattice(f"flat {f:#b} is not a subset of the ground set")
        self.flats: tuple[int, ...] = tuple(sorted(flat_set, key=flat_key))
        self._flat_set = frozenset(flat_set)
        self._check_lattice()
        self._covers = self._compute_covers()
        self._rank = self._compute_ranks()
        self.rank: int = self._rank[self.full]
        self.atoms: tuple[int, ...] = tuple(
            sorted((f for f in self.flats if self._rank[f] == 1), key=min_index)
        )
        self._index = {label: i for i, label in enumerate(labels)}
        self._closure_memo: dict[int, int] = {}
        self._connected_memo: dict[int, bool] = {}

    # -- validation -------------------------------------------------------

    def _check_lattice(self) -> None:
        if self.full not in self._flat_set:
            raise NotALattice("the ground set is not listed as a flat")
        bottom = self.full
        for f in self.flats:
            bottom &= f
        if bottom:
            raise HasLoops(f"elements {self.labels_of(bottom)} lie in every flat")
        if 0 not in self._flat_set:
            raise NotALattice("the empty set is not listed as a flat")
        for x, y in combinations(self.flats, 2):
            if x & y not in self._flat_set:
                raise NotALattice(
                    f"{self.labels_of(x)} and {self.labels_of(y)} meet outside the flats"
                )

    def _compute_covers(self) -> dict[int, tuple[int, ...]]:
        covers = {}
        for f in self.flats:
            above = [g for g in self.flats if g != f and g & f == f]
            minimal = [g for g in above if not any(h != g and h & g == h for h in above)]
            seen = 0
            for g in minimal:
                if (g & ~f) & seen:
                    raise CoverPartitionViolation(
                        f"covers of {self.labels_of(f)} overlap outside it"
                    )
                seen |= g & ~f
            if seen != self.full & ~f:
                raise CoverPartitionViolation(
                    f"covers of {self.labels_of(f)} miss {self.labels_of(self.full & ~f & ~seen)}"
                )
            covers[f] = tuple(minimal)
        return covers

    def _compute_ranks(self) -> dict[int, int]:
        rank = {0: 0}
        for f in self.flats:  # cardinality order visits lower flats first
            for g in self._covers[f]:
                r = rank[f] + 1
                if rank.setdefault(g, r) != r:
                    raise CoverPartitionViolation(
                        f"maximal chains below {self.labels_of(g)} differ in length"
                    )
        return rank

    # -- labels -----------------------------------------------------------

    def mask(self, labels: Iterable[str]) -> int:
        out = 0
        for label in labels:
            out |= 1 << self._index[str(label)]
        return out

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def name(self, mask: int) -> str:
        """Compact display name: labels concatenated when all are single characters, else braced."""
        parts = self.labels_of(mask)
        if not parts:
            return "{}"
        if all(len(p) == 1 for p in parts):
            return "".join(parts)
        return "{" + ",".join(parts) + "}"

    # -- lattice operations -----------------------------------------------

    def is_flat(self, mask: int) -> bool:
        return mask in self._flat_set

    def closure(self, s: int) -> int:
        hit = self._closure_memo.get(s)
        if hit is not None:
            return hit
        # flats are sorted by cardinality, so the first superset is the smallest
        for f in self.flats:
            if f & s == s:
                self._closure_memo[s] = f
                return f
        raise MatroidError(f"{s:#b} is not a subset of the ground set")

    def rank_of(self, s: int) -> int:
        return self._rank[self.closure(s)]

    def flat_rank(self, flat: int) -> int:
        return self._rank[flat]

    def join(self, *flats: int) -> int:
        u = 0
        for f in flats:
            u |= f
        return self.closure(u)

    def meet(self, x: int, y: int) -> int:
        return x & y

    def covers(self, flat: int) -> tuple[int, ...]:
        return self._covers[flat]

    def atoms_below(self, flat: int) -> list[int]:
        return [a for a in self.atoms if a & flat == a]

    def atom_of(self, i: int) -> int:
        """The atom containing ground index ``i``."""
        return self.closure(1 << i)

    # -- minors and sums --------------------------------------------------

    def restriction(self, x: int) -> "Matroid":
        """The matroid on ``x`` whose flats are the flats below ``x``."""
        pos = bits(x)
        return Matroid(
            [self.labels[i] for i in pos],
            [_compress(f, pos) for f in self.flats if f & x == f],
        )

    def contraction(self, x: int) -> "Matroid":
        """The matroid on ``E - x`` with flats ``Y - x`` for flats ``Y`` above ``x``."""
        if not self.is_flat(x):
            raise MatroidError(f"{self.labels_of(x)} is not a flat")
        pos = bits(self.full & ~x)
        return Matroid(
            [self.labels[i] for i in pos],
            [_compress(f & ~x, pos) for f in self.flats if f & x == x],
        )

    def direct_sum(self, other: "Matroid") -> "Matroid":
        clash = set(self.labels) & set(other.labels)
        if clash:
            raise LabelCollision(f"labels shared by both summands: {sorted(clash)}")
        return Matroid(
            self.labels + other.labels,
            [f | (g << self.n) for f in self.flats for g in other.flats],
        )

    def split_at(self, x: int) -> "Matroid":
        """Restriction to ``x`` summed with contraction at ``x``, kept on this ground set.

        The flats are the unions ``Y | W`` with ``Y`` a flat below ``x`` and ``W``
        a flat of the contraction, written as a subset of ``E - x``. Ground
        indices and hence atom order are unchanged.
        """
        if not self.is_flat(x):
            raise MatroidError(f"{self.labels_of(x)} is not a flat")
        lower = [f for f in self.flats if f & x == f]
        upper = [f & ~x for f in self.flats if f & x == x]
        return Matroid(self.labels, [y | w for y in lower for w in upper])

    def with_ground_order(self, order: Sequence[str]) -> "Matroid":
        """The same matroid with its ground labels listed in ``order``."""
        order = [str(x) for x in order]
        if sorted(order) != sorted(self.labels):
            raise MatroidError(f"{order} is not a permutation of {list(self.labels)}")
        perm = [self._index[label] for label in order]
        return Matroid(order, [_compress(f, perm) for f in self.flats])

    # -- connectivity -----------------------------------------------------

    def is_connected_flat(self, x: int) -> bool:
        """Whether the restriction to the nonempty flat ``x`` is a connected matroid.

        In a loopless matroid every separator of ``M|x`` is itself a flat, so it
        suffices to look for a flat ``y < x`` whose complement in ``x`` is a flat
        with ``rank(y) + rank(x - y) = rank(x)``. Cost is linear in the number
        of flats.
        """
        if x == 0:
            raise MatroidError("connectivity is defined for nonempty flats only")
        if x in self._connected_memo:
            return self._connected_memo[x]
        rx = self._rank[x]
        answer = True
        for y in self.flats:
            if y == 0 or y == x or y & x != y:
                continue
            rest = x & ~y
            if rest in self._flat_set and self._rank[y] + self._rank[rest] == rx:
                answer = False
                break
        self._connected_memo[x] = answer
        return answer

    def connected_flats(self) -> list[int]:
        return [f for f in self.flats if f and self.is_connected_flat(f)]

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.labels == other.labels and self._flat_set == other._flat_set

    def __hash__(self) -> int:
        return hash((self.labels, self._flat_set))

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, flats={len(self.flats)})"
