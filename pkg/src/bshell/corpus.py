"""The test corpus: small matroids paired with building sets.

Families: uniform matroids, graphic matroids of small connected graphs, the
broom, and a few direct sums. A matroid with at most ``all_building_sets_up_to``
nonempty flats contributes every building set; larger ones contribute only
the minimal and maximal building sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator

import networkx as nx

from . import generators as gen
from .building import (
    BuildingSet,
    enumerate_building_sets,
    maximal_building_set,
    minimal_building_set,
)
from .matroid import Matroid, bits, popcount

__all__ = ["CorpusSpec", "CorpusInstance", "corpus_matroids", "corpus", "ground_orders",
           "isomorphic", "invariant", "dedup", "building_sets"]

FAMILIES = ("uniform", "graphic", "broom", "sums")


@dataclass(frozen=True)
class CorpusSpec:
    families: tuple[str, ...] = FAMILIES
    max_n: int = 6  # uniform matroids U_{r,n} for n <= max_n
    max_vertices: int = 5  # graphic matroids of connected graphs up to this size
    all_building_sets_up_to: int = 14
    # ground orders per matroid: every permutation up to this size ...
    all_orders_up_to: int = 4
    # ... and this many random ones above it (the identity is always included)
    random_orders: int = 50

    @classmethod
    def from_dict(cls, data: dict) -> "CorpusSpec":
        data = dict(data)
        if "families" in data:
            data["families"] = tuple(data["families"])
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown corpus options: {sorted(unknown)}")
        bad = set(data.get("families", ())) - set(FAMILIES) - {"broom-all-orders"}
        if bad:
            raise ValueError(f"unknown families: {sorted(bad)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


@dataclass(frozen=True)
class CorpusInstance:
    name: str
    building: BuildingSet = field(compare=False)

    @property
    def matroid(self) -> Matroid:
        return self.building.matroid


def _sums() -> Iterator[tuple[str, Matroid]]:
    abc = "abcdef"
    pairs = [((1, 1), (1, 1)), ((1, 1), (1, 2)), ((1, 2), (2, 3)), ((2, 3), (1, 1)), ((2, 2), (1, 2))]
    for (r1, n1), (r2, n2) in pairs:
        left = gen.uniform(r1, n1)
        right = gen.uniform(r2, n2, labels=list(abc[:n2]))
        yield f"U({r1},{n1})+U({r2},{n2})", left.direct_sum(right)
    triple = gen.uniform(1, 1).direct_sum(gen.uniform(1, 1, ["a"])).direct_sum(gen.uniform(1, 2, ["x", "y"]))
    yield "U(1,1)+U(1,1)+U(1,2)", triple
    yield "broom+U(1,1)", gen.broom().direct_sum(gen.uniform(1, 1, ["a"]))


def corpus_matroids(spec: CorpusSpec = CorpusSpec()) -> Iterator[tuple[str, Matroid]]:
    if "uniform" in spec.families:
        for n in range(1, spec.max_n + 1):
            for r in range(1, n + 1):
                yield f"U({r},{n})", gen.uniform(r, n)
    if "graphic" in spec.families:
        for k, g in enumerate(gen.connected_graphs(spec.max_vertices)):
            edges = sorted(tuple(sorted(e)) for e in g.edges())
            yield f"graphic#{k}{edges}", gen.graphic(edges)
    if "broom" in spec.families or "broom-all-orders" in spec.families:
        yield "broom", gen.broom()
    if "sums" in spec.families:
        yield from _sums()


def building_sets(m: Matroid, spec: CorpusSpec = CorpusSpec()) -> list[tuple[str, BuildingSet]]:
    if len(m.flats) - 1 <= spec.all_building_sets_up_to:
        return [(f"B#{i}", b) for i, b in enumerate(enumerate_building_sets(m))]
    return [("minimal", minimal_building_set(m)), ("maximal", maximal_building_set(m))]


def corpus(spec: CorpusSpec = CorpusSpec()) -> Iterator[CorpusInstance]:
    for name, m in corpus_matroids(spec):
        for bname, b in building_sets(m, spec):
            yield CorpusInstance(f"{name}/{bname}", b)


def ground_orders(m: Matroid, spec: CorpusSpec, rng: random.Random) -> list[tuple[str, ...]]:
    """Every permutation for small ground sets, else the identity plus random ones."""
    labels = m.labels
    if m.n <= spec.all_orders_up_to:
        return list(permutations(labels))
    out = {labels: None}
    # cap attempts so tiny n with a large request cannot loop forever
    for _ in range(spec.random_orders * 20):
        if len(out) > spec.random_orders:
            break
        p = list(labels)
        rng.shuffle(p)
        out.setdefault(tuple(p), None)
    return list(out)


def _incidence_graph(m: Matroid) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from((("e", i) for i in range(m.n)), kind="e")
    g.add_nodes_from((("f", f) for f in m.flats), kind="f")
    g.add_edges_from((("e", i), ("f", f)) for f in m.flats for i in bits(f))
    return g


def isomorphic(m1: Matroid, m2: Matroid) -> bool:
    """Matroid isomorphism, decided as isomorphism of the element/flat incidence graphs."""
    if invariant(m1) != invariant(m2):
        return False
    return nx.is_isomorphic(
        _incidence_graph(m1), _incidence_graph(m2), node_match=lambda a, b: a["kind"] == b["kind"]
    )


def invariant(m: Matroid) -> tuple:
    """Cheap isomorphism invariant used to bucket candidates before a full check."""
    return (m.n, m.rank, tuple(sorted((m.flat_rank(f), popcount(f)) for f in m.flats)))


def dedup(named: Iterable[tuple[str, Matroid]]) -> Iterator[tuple[str, Matroid]]:
    """Drop matroids isomorphic to one already yielded."""
    seen: dict[tuple, list[Matroid]] = {}
    for name, m in named:
        bucket = seen.setdefault(invariant(m), [])
        if any(isomorphic(m, other) for other in bucket):
            continue
        bucket.append(m)
        yield name, m
