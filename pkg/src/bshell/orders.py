"""Facet orders: normal-complex (NC), nested-lexicographic (NL) and EL.

Atoms compare by their smallest ground index, so every order here depends on
the ground order of the matroid. To sweep ground orders, rebuild the
matroid with ``Matroid.with_ground_order`` and carry building sets over with
``BuildingSet.transport``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Mapping, Sequence

from .building import BuildingSet
from .geometry import inner, is_cubical, lex_compare, vertices
from .matroid import Matroid, min_index
from .nested import facets as enumerate_facets
from .nested import is_nested, reduced

__all__ = [
    "FacetOrder",
    "NLLabeling",
    "NotALabeling",
    "NonCubical",
    "MismatchedFacetSets",
    "label_flat",
    "nl_labeling",
    "nl_order",
    "descents",
    "construct_n_min",
    "reconstruct_from_labeling",
    "nc_order",
    "functional_order",
    "el_labels",
    "el_order",
    "codim1_faces",
    "compare_orders",
    "OrderComparison",
]

NC, NL, EL, USER = "NC", "NL", "EL", "USER"


class NotALabeling(ValueError):
    pass


class NonCubical(ValueError):
    pass


class MismatchedFacetSets(ValueError):
    pass


@dataclass(frozen=True)
class FacetOrder:
    facets: tuple  # of frozensets, first = minimum
    provenance: str

    def __len__(self) -> int:
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def position(self) -> dict:
        return {f: i for i, f in enumerate(self.facets)}


@dataclass(frozen=True)
class NLLabeling:
    facet: frozenset
    sequence: tuple  # ((flat, atom), ...) in pluck order

    @property
    def flats(self) -> tuple:
        return tuple(x for x, _ in self.sequence)

    @property
    def atoms(self) -> tuple:
        return tuple(a for _, a in self.sequence)

    def key(self) -> tuple:
        """Sort key comparing atoms by their smallest ground index."""
        return tuple(min_index(a) for a in self.atoms)


def label_flat(m: Matroid, n: Iterable[int], x: int) -> int:
    """Smallest atom below ``x`` that is below no member of ``n`` strictly inside ``x``."""
    n = frozenset(n)
    below = [y for y in n if y != x and y & x == y]
    options = [a for a in m.atoms_below(x) if not any(a & y == a for y in below)]
    if not options:
        raise AssertionError(f"no label for {m.labels_of(x)}: input is not nested")
    return min(options, key=min_index)


def nl_labeling(m: Matroid, n: Iterable[int]) -> NLLabeling:
    """Pluck inclusion-minimal flats, smallest label first, recording labels."""
    n = frozenset(n)
    labels = {x: label_flat(m, n, x) for x in n}
    remaining = set(n)
    seq = []
    while remaining:
        leaves = [x for x in remaining if not any(y != x and y & x == y for y in remaining)]
        keys = [min_index(labels[x]) for x in leaves]
        assert len(set(keys)) == len(keys), "two leaves share a label"
        pick = leaves[keys.index(min(keys))]
        seq.append((pick, labels[pick]))
        remaining.remove(pick)
    return NLLabeling(n, tuple(seq))


def nl_order(b: BuildingSet, facets=None) -> FacetOrder:
    if facets is None:
        facets = enumerate_facets(b)
    keyed = sorted(((nl_labeling(b.matroid, f).key(), f) for f in facets), key=lambda t: t[0])
    for (k1, _), (k2, _) in zip(keyed, keyed[1:]):
        assert k1 != k2, "NL-labeling is not injective"
    return FacetOrder(tuple(f for _, f in keyed), NL)


def descents(labeling: NLLabeling | Sequence[int]) -> list[int]:
    """1-based positions ``i`` where label ``i`` exceeds label ``i + 1``.

    Accepts an ``NLLabeling`` (atoms compared in ground order) or a plain
    sequence of comparable keys.
    """
    keys = labeling.key() if isinstance(labeling, NLLabeling) else tuple(labeling)
    return [i + 1 for i in range(len(keys) - 1) if keys[i] > keys[i + 1]]


def _max_member_in(b: BuildingSet, atom: int, upper: int) -> int:
    """The unique inclusion-maximal member ``X`` with ``atom <= X <= upper``."""
    inside = [x for x in b.members if x & atom == atom and x & upper == x]
    tops = [x for x in inside if not any(y != x and y & x == x for y in inside)]
    if len(tops) != 1:
        raise NotALabeling(f"{len(tops)} maximal members between atom and join")
    return tops[0]


def construct_n_min(b: BuildingSet) -> frozenset:
    """The facet with increasing NL-labeling, built greedily atom by atom."""
    m = b.matroid
    joined = 0
    out = []
    for _ in range(m.rank):
        atom = next(a for a in m.atoms if a & joined != a)
        x = _max_member_in(b, atom, m.join(atom, joined))
        out.append(x)
        joined = m.join(joined, x)
    return frozenset(out)


def reconstruct_from_labeling(b: BuildingSet, atoms: Sequence[int]) -> frozenset:
    """Invert ``nl_labeling``: rebuild the facet from its atom sequence."""
    m = b.matroid
    joined = 0
    out = []
    for atom in atoms:
        if atom not in m.atoms:
            raise NotALabeling(f"{m.labels_of(atom)} is not an atom")
        if atom & joined == atom:
            raise NotALabeling(f"atom {m.labels_of(atom)} already lies below the previous flats")
        x = _max_member_in(b, atom, m.join(atom, joined))
        if x in out:
            raise NotALabeling("recipe repeats a flat")
        out.append(x)
        joined = m.join(joined, x)
    n = frozenset(out)
    if len(n) != m.rank or not is_nested(b, n)[0]:
        raise NotALabeling("recipe does not produce a facet")
    if nl_labeling(m, n).atoms != tuple(atoms):
        raise NotALabeling("sequence is not the NL-labeling of the reconstructed facet")
    return n


def nc_order(b: BuildingSet, c: Mapping, facets=None) -> FacetOrder:
    """Facets by lexicographically decreasing vertex coordinates.

    The first facet carries the lex-largest vertex, matching the worked broom
    examples where the listed order starts at the largest inner product.
    """
    if facets is None:
        facets = enumerate_facets(b)
    ok, report = is_cubical(b, c, facets)
    if not ok:
        raise NonCubical(f"{len(report)} facets have vertices outside their cones")
    sols = vertices(b, c, facets)  # cheap: Gram inverses are cached per facet
    ordered = sorted(facets, key=cmp_to_key(lambda f, g: lex_compare(sols[g].point, sols[f].point)))
    for f, g in zip(ordered, ordered[1:]):
        if sols[f].point == sols[g].point:
            raise NonCubical("two facets share a vertex")
    return FacetOrder(tuple(ordered), NC)


def functional_order(b: BuildingSet, c: Mapping, gamma: Sequence, facets=None) -> FacetOrder:
    """Facets by decreasing ``<v_N, gamma>``; ties keep canonical facet order."""
    if facets is None:
        facets = enumerate_facets(b)
    sols = vertices(b, c, facets)
    ordered = sorted(facets, key=lambda f: -inner(sols[f].point, gamma))
    return FacetOrder(tuple(ordered), USER)


def _maximal_chains(m: Matroid) -> list[tuple[int, ...]]:
    out = []

    def walk(chain):
        top = chain[-1]
        if top == m.full:
            out.append(tuple(chain))
            return
        for g in m.covers(top):
            walk(chain + [g])

    walk([0])
    return out


def el_labels(m: Matroid, chain: Sequence[int]) -> tuple[int, ...]:
    """Edge labels of a chain ``0 < X1 < ... < E``: smallest atom below the top, not the bottom."""
    out = []
    for x, y in zip(chain, chain[1:]):
        a = min((a for a in m.atoms_below(y) if a & x != a), key=min_index)
        out.append(min_index(a))
    return tuple(out)


def el_order(m: Matroid) -> FacetOrder:
    """Maximal chains sorted by edge labels, emitted as nested sets of the maximal building set."""
    keyed = sorted((el_labels(m, ch), ch) for ch in _maximal_chains(m))
    return FacetOrder(tuple(frozenset(ch[1:]) for _, ch in keyed), EL)


def codim1_faces(b: BuildingSet, facets) -> list[frozenset]:
    """Ridges of the nested set complex: reduced facets minus one vertex, deduplicated."""
    seen = {}
    for f in facets:
        r = reduced(b, f)
        for x in r:
            seen.setdefault(r - {x}, None)
    return list(seen)


def _check_same(o1: FacetOrder, o2: FacetOrder) -> None:
    if set(o1.facets) != set(o2.facets) or len(o1) != len(o2):
        raise MismatchedFacetSets("orders are over different facet sets")


@dataclass(frozen=True)
class OrderComparison:
    equal: bool
    locally_equivalent: bool
    weakly_locally_equivalent: bool
    same_minimum: bool
    local_witness: frozenset | None  # ridge where restrictions differ
    weak_witness: frozenset | None  # ridge where minima differ


def compare_orders(o1: FacetOrder, o2: FacetOrder, b: BuildingSet) -> OrderComparison:
    _check_same(o1, o2)
    p1, p2 = o1.position(), o2.position()
    local = weak = None
    for ridge in codim1_faces(b, o1.facets):
        star = [f for f in o1.facets if ridge <= reduced(b, f)]
        s1 = sorted(star, key=p1.__getitem__)
        s2 = sorted(star, key=p2.__getitem__)
        if s1 != s2 and local is None:
            local = ridge
        if s1[0] != s2[0] and weak is None:
            weak = ridge
    return OrderComparison(
        equal=o1.facets == o2.facets,
        locally_equivalent=local is None,
        weakly_locally_equivalent=weak is None,
        same_minimum=o1.facets[0] == o2.facets[0],
        local_witness=local,
        weak_witness=weak,
    )
