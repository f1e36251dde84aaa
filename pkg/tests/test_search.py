import io
import json

import pytest

from bshell import graphic, uniform
from bshell.building import maximal_building_set, minimal_building_set
from bshell.corpus import CorpusSpec, corpus_matroids, dedup, ground_orders, isomorphic
from bshell.search import (
    BudgetExceeded,
    check_instance,
    instance_record,
    replay,
    search_nl_shelling,
    worker_count,
)

SMALL = CorpusSpec(families=("uniform", "broom"), max_n=4)


def parse(log):
    return [json.loads(line) for line in log.getvalue().splitlines()]


def test_budget_zero_is_empty():
    log = io.StringIO()
    result = search_nl_shelling(SMALL, budget=0, sink=log)
    assert result.checked == 0 and result.truncated and log.getvalue() == ""


def test_strict_budget_keeps_the_partial_log():
    log = io.StringIO()
    with pytest.raises(BudgetExceeded) as err:
        search_nl_shelling(SMALL, budget=5, sink=log, strict=True)
    assert err.value.result.checked == 5 and err.value.result.truncated


def test_same_log_for_any_worker_count():
    logs = []
    for workers in (1, 2):
        log = io.StringIO()
        result = search_nl_shelling(CorpusSpec(families=("uniform", "broom"), max_n=3), seed=4, sink=log,
                                    workers=workers)
        logs.append(log.getvalue())
        assert not result.truncated
    assert logs[0] == logs[1]


def test_findings_are_well_formed_and_replay():
    log = io.StringIO()
    result = search_nl_shelling(CorpusSpec(families=("broom-all-orders",)), sink=log)
    assert result.checked == 9 * 24
    findings = parse(log)
    assert findings == json.loads(json.dumps(result.findings))
    for f in findings:
        assert set(f) == {"instance", "order_provenance", "verdict", "violation"}
        assert f["verdict"] is False
        assert set(f["instance"]) == {"name", "matroid", "building", "ground_order", "seed"}
        assert replay(f) == f


def test_rank_one_instances_have_no_findings():
    for n in range(1, 5):
        b = maximal_building_set(uniform(1, n))
        rec = instance_record("U1", b, b.matroid.labels, 0)
        assert check_instance(rec) == []


def test_known_nl_counterexample_is_found_and_replays():
    m = graphic([(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
    rec = instance_record("triangle+square", minimal_building_set(m), m.labels, 0)
    found = [f for f in check_instance(json.loads(json.dumps(rec))) if f["order_provenance"] == "NL"]
    assert len(found) == 1
    v = found[0]["violation"]
    assert (v["j"], v["i"]) == (10, 3)
    assert v["facet_i"] == "{{0-1},{0-4},{1-2}}"
    assert replay(found[0]) == found[0]


def test_uniform_three_five_is_searched():
    result = search_nl_shelling(CorpusSpec(families=("uniform",), max_n=5), budget=200)
    assert result.checked == 200


def test_worker_cap(monkeypatch):
    monkeypatch.setenv("BSHELL_THREADS", "1")
    assert worker_count() == 1


def test_ground_orders():
    import random

    spec = CorpusSpec()
    assert len(ground_orders(uniform(2, 4), spec, random.Random(0))) == 24
    orders = ground_orders(uniform(2, 6), spec, random.Random(0))
    assert len(orders) == 51 and orders[0] == uniform(2, 6).labels and len(set(orders)) == 51
    assert ground_orders(uniform(2, 6), spec, random.Random(0)) == orders


def test_dedup_drops_isomorphic_copies():
    tri = graphic([(0, 1), (1, 2), (0, 2)])
    assert isomorphic(tri, uniform(2, 3))
    assert not isomorphic(uniform(2, 4), uniform(3, 4))
    names = [n for n, _ in dedup(corpus_matroids(CorpusSpec(families=("uniform", "graphic"), max_vertices=3)))]
    assert not any(n.startswith("graphic") for n in names)  # 3-vertex graphs give U(1,1), U(2,2), U(2,3)
