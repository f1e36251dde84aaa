"""Search for counterexamples to NL-order shellability.

Each instance is a matroid, a building set and a ground order. For each one
the NL-order is checked for being a shelling, and the NC- and NL-orders are
compared for weak local equivalence (using ``default_cubical`` at the run
seed). Any failure becomes a finding: one JSON object per line carrying
everything needed to replay it.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .building import BuildingSet
from .corpus import CorpusSpec, building_sets, corpus_matroids, dedup, ground_orders
from .formats import (
    building_from_json,
    building_to_json,
    facet_name,
    matroid_from_json,
    matroid_to_json,
)
from .geometry import default_cubical
from .matroid import Matroid
from .nested import facets as enumerate_facets
from .nested import reduced
from .orders import compare_orders, nc_order, nl_order
from .shelling import check_shelling

__all__ = [
    "BudgetExceeded",
    "SearchResult",
    "search_nl_shelling",
    "instance_record",
    "check_instance",
    "replay",
    "worker_count",
]

NL_SHELLING = "NL"
WEAK_EQUIVALENCE = "NC~NL"


class BudgetExceeded(RuntimeError):
    def __init__(self, result: "SearchResult"):
        self.result = result
        super().__init__(f"budget of {result.checked} instances reached before the corpus was exhausted")


@dataclass
class SearchResult:
    findings: list = field(default_factory=list)
    checked: int = 0
    truncated: bool = False


def worker_count() -> int:
    cap = os.environ.get("BSHELL_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def instance_record(name: str, b: BuildingSet, order: Iterable[str], seed: int) -> dict:
    """Everything needed to rebuild an instance: matroid in its file order, members, ground order, seed."""
    return {
        "name": name,
        "matroid": matroid_to_json(b.matroid),
        "building": building_to_json(b)["members"],
        "ground_order": list(order),
        "seed": seed,
    }


def _rebuild(instance: dict) -> BuildingSet:
    m = matroid_from_json(instance["matroid"])
    b = building_from_json(m, instance["building"])
    return b.transport(m.with_ground_order(instance["ground_order"]))


def _labels(m: Matroid, flats) -> list:
    return sorted(",".join(m.labels_of(x)) for x in flats)


def check_instance(instance: dict) -> list[dict]:
    """Run both checks on one serialized instance and return its findings."""
    b = _rebuild(instance)
    m = b.matroid
    fs = enumerate_facets(b)
    out = []
    nl = nl_order(b, fs)
    report = check_shelling(nl.facets, strip=b.maximal)
    if not report.verdict:
        j, i = report.first_violation
        out.append({
            "instance": instance,
            "order_provenance": NL_SHELLING,
            "verdict": False,
            "violation": {
                "j": j,
                "i": i,
                "facet_j": facet_name(m, reduced(b, nl.facets[j])),
                "facet_i": facet_name(m, reduced(b, nl.facets[i])),
                "order": [facet_name(m, reduced(b, f)) for f in nl.facets],
            },
        })
    c = default_cubical(b, seed=instance["seed"])
    nc = nc_order(b, c, fs)
    cmp = compare_orders(nc, nl, b)
    if not cmp.weakly_locally_equivalent:
        ridge = cmp.weak_witness
        star = [f for f in fs if ridge <= reduced(b, f)]
        pos_nc, pos_nl = nc.position(), nl.position()
        out.append({
            "instance": instance,
            "order_provenance": WEAK_EQUIVALENCE,
            "verdict": False,
            "violation": {
                "ridge": _labels(m, ridge),
                "nc_min": facet_name(m, reduced(b, min(star, key=pos_nc.__getitem__))),
                "nl_min": facet_name(m, reduced(b, min(star, key=pos_nl.__getitem__))),
            },
        })
    return out


def replay(finding: dict) -> dict | None:
    """Re-run the check that produced ``finding``; returns the fresh finding or ``None``."""
    for fresh in check_instance(finding["instance"]):
        if fresh["order_provenance"] == finding["order_provenance"]:
            return fresh
    return None


def _instances(spec: CorpusSpec, seed: int) -> Iterator[dict]:
    for name, m in dedup(corpus_matroids(spec)):
        rng = random.Random(f"{seed}:{name}")
        orders = ground_orders(m, spec, rng)
        for bname, b in building_sets(m, spec):
            for order in orders:
                yield instance_record(f"{name}/{bname}", b, order, seed)


def search_nl_shelling(
    spec: CorpusSpec = CorpusSpec(),
    seed: int = 0,
    budget: int | None = None,
    sink: IO[str] | None = None,
    workers: int | None = None,
    strict: bool = False,
) -> SearchResult:
    """Sweep the corpus over ground orders, collecting findings.

    ``budget`` caps the number of instances. Reaching it marks the result as
    truncated; with ``strict`` it raises ``BudgetExceeded`` after the partial
    log has been written. Findings are written to ``sink`` as JSON lines in
    instance order, which does not depend on ``workers``.
    """
    if workers is None:
        workers = worker_count()
    result = SearchResult()
    batch = []
    for inst in _instances(spec, seed):
        if budget is not None and len(batch) >= budget:
            result.truncated = True
            break
        batch.append(inst)
    if workers > 1 and len(batch) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_instance = pool.map(check_instance, batch, chunksize=16)
            _collect(result, per_instance, sink)
    else:
        _collect(result, map(check_instance, batch), sink)
    if result.truncated and strict:
        raise BudgetExceeded(result)
    return result


def _collect(result: SearchResult, per_instance, sink) -> None:
    for found in per_instance:
        result.checked += 1
        for f in found:
            result.findings.append(f)
            if sink is not None:
                sink.write(json.dumps(f, sort_keys=True) + "\n")
                sink.flush()
