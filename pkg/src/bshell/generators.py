"""Standard matroid families, built by iterated closure from a rank oracle."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

import networkx as nx

from .matroid import Matroid, bits

__all__ = [
    "from_rank_function",
    "uniform",
    "boolean",
    "graphic",
    "broom",
    "empty",
    "connected_graphs",
]


def from_rank_function(labels: Sequence[str], rank: Callable[[int], int]) -> Matroid:
    """Enumerate flats rank by rank: each flat of rank k+1 is cl(F + e) for a rank-k flat F."""
    n = len(labels)
    full = (1 << n) - 1

    def closure(s: int) -> int:
        r = rank(s)
        out = s
        for i in range(n):
            if not s >> i & 1 and rank(s | 1 << i) == r:
                out |= 1 << i
        return out

    level = {closure(0)}
    flats = set(level)
    while level:
        nxt = set()
        for f in level:
            for i in range(n):
                if not f >> i & 1:
                    nxt.add(closure(f | 1 << i))
        nxt -= flats
        flats |= nxt
        level = nxt
    flats.add(closure(full))
    return Matroid(labels, flats)


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def uniform(r: int, n: int, labels: Sequence[str] | None = None) -> Matroid:
    """U_{r,n}: every set of size < r is a flat, plus the ground set."""
    if not 0 < r <= n:
        raise ValueError(f"need 0 < r <= n for a loopless uniform matroid, got r={r}, n={n}")
    labels = list(labels) if labels is not None else _labels(n)
    full = (1 << n) - 1
    flats = {full}
    for k in range(r):
        for combo in combinations(range(n), k):
            flats.add(sum(1 << i for i in combo))
    return Matroid(labels, flats)


def boolean(n: int, labels: Sequence[str] | None = None) -> Matroid:
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(n)]
    return Matroid(labels, range(1 << n))


def empty() -> Matroid:
    """The matroid on the empty ground set; the identity for direct sums."""
    return Matroid([], [0])


def broom() -> Matroid:
    """Rank-3 matroid on {0,1,2,3} where 1, 2, 3 are collinear."""
    labels = ["0", "1", "2", "3"]
    names = ["", "0", "1", "2", "3", "01", "02", "03", "123", "0123"]
    flats = [sum(1 << int(ch) for ch in name) for name in names]
    return Matroid(labels, flats)


def graphic(edges: Iterable[tuple], labels: Sequence[str] | None = None) -> Matroid:
    """Cycle matroid of a graph given by its edge list (parallel edges allowed, no loops)."""
    edges = [tuple(e) for e in edges]
    for u, v in edges:
        if u == v:
            raise ValueError(f"edge {u}-{v} is a loop")
    if labels is None:
        labels = [f"{u}-{v}" for u, v in edges]
        if len(set(labels)) != len(labels):
            labels = [str(i) for i in range(len(edges))]

    def rank(s: int) -> int:
        parent: dict = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        r = 0
        for i in bits(s):
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                r += 1
        return r

    return from_rank_function(list(labels), rank)


def connected_graphs(max_vertices: int) -> list[nx.Graph]:
    """All connected simple graphs with at least one edge on at most ``max_vertices``
    vertices, one per isomorphism class (from the networkx graph atlas)."""
    if max_vertices > 7:
        raise ValueError("the graph atlas only covers graphs on up to 7 vertices")
    out = []
    for g in nx.graph_atlas_g():
        if 0 < g.number_of_nodes() <= max_vertices and g.number_of_edges() > 0:
            if nx.is_connected(g):
                out.append(g)
    return out
