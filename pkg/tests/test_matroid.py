from itertools import combinations

import pytest

import oracles
from bshell import boolean, broom, graphic, uniform
from bshell.generators import connected_graphs, empty, from_rank_function
from bshell.matroid import CoverPartitionViolation, LabelCollision, Matroid, NotALattice, bits


def subsets(mask):
    elems = bits(mask)
    for k in range(len(elems) + 1):
        for c in combinations(elems, k):
            yield sum(1 << i for i in c)


def test_broom_flats_and_rank():
    m = broom()
    assert sorted(m.name(f) for f in m.flats) == sorted(
        ["{}", "0", "1", "2", "3", "01", "02", "03", "123", "0123"]
    )
    assert m.rank == 3
    assert m.rank_of(m.mask("0123")) == 3
    assert m.rank_of(0) == 0
    assert m.rank_of(m.mask("123")) == 2


def test_smallest_loopless_matroid():
    m = Matroid(["0"], [0, 1])
    assert m.rank == 1 and len(m.flats) == 2


def test_broom_without_123_breaks_cover_partition():
    m = broom()
    flats = [f for f in m.flats if f != m.mask("123")]
    with pytest.raises(CoverPartitionViolation):
        Matroid(m.labels, flats)


def test_missing_empty_or_top_or_intersection():
    with pytest.raises(NotALattice):
        Matroid(["0", "1"], [1, 2, 3])  # no empty set: a loop
    with pytest.raises(NotALattice):
        Matroid(["0", "1"], [0, 1, 2])  # no ground set
    with pytest.raises(NotALattice):
        Matroid(["0", "1", "2"], [0, 0b011, 0b110, 0b111, 1, 4])  # 011 & 110 = 010 missing


def test_closure_examples():
    m = broom()
    assert m.closure(m.mask("12")) == m.mask("123")
    assert m.closure(0) == 0
    assert m.closure(m.mask("01")) == m.mask("01")


def test_join_meet_examples():
    m = broom()
    assert m.join(m.mask("0"), m.mask("1")) == m.mask("01")
    assert m.join(m.mask("02")) == m.mask("02")
    assert m.join(m.mask("01"), m.mask("2")) == m.full
    assert m.meet(m.mask("01"), m.mask("02")) == m.mask("0")


def test_restriction_examples():
    m = broom()
    r = m.restriction(m.mask("123"))
    assert r.labels == ("1", "2", "3") and r == uniform(2, 3, ["1", "2", "3"])
    assert m.restriction(m.full) == m
    assert m.restriction(m.mask("01")) == boolean(2, ["0", "1"])


def test_contraction_examples():
    m = broom()
    c1 = m.contraction(m.mask("1"))
    assert c1.labels == ("0", "2", "3")
    assert sorted(c1.name(f) for f in c1.flats) == sorted(["{}", "0", "23", "023"])
    assert m.contraction(0) == m
    c0 = m.contraction(m.mask("0"))
    assert c0 == uniform(2, 3, ["1", "2", "3"])


def test_direct_sum_examples():
    m = broom()
    x = m.mask("1")
    s = m.restriction(x).direct_sum(m.contraction(x))
    assert sorted(s.name(f) for f in s.flats) == sorted(
        ["{}", "1", "0", "23", "023", "10", "123", "1023"]
    )
    assert m.direct_sum(empty()) == m
    assert uniform(1, 1).direct_sum(uniform(1, 1, ["a"])) == boolean(2, ["0", "a"])
    with pytest.raises(LabelCollision):
        m.direct_sum(m)


def test_split_at_matches_direct_sum_up_to_relabelling():
    m = broom()
    x = m.mask("1")
    split = m.split_at(x)
    s = m.restriction(x).direct_sum(m.contraction(x))
    assert split.with_ground_order(s.labels) == s


def test_connectivity_examples():
    m = broom()
    assert m.is_connected_flat(m.mask("123"))
    assert all(m.is_connected_flat(a) for a in m.atoms)
    assert not m.is_connected_flat(m.full)
    assert sorted(m.name(f) for f in m.connected_flats()) == ["0", "1", "123", "2", "3"]


MATROIDS = [broom(), uniform(2, 4), uniform(3, 5), boolean(3), graphic([(0, 1), (1, 2), (0, 2), (2, 3)]),
            graphic([(0, 1), (0, 1), (1, 2)]), uniform(2, 3).direct_sum(uniform(1, 2, ["a", "b"]))]


@pytest.mark.parametrize("m", MATROIDS, ids=repr)
def test_connectivity_matches_partition_oracle(m):
    for f in m.flats:
        if f:
            assert m.is_connected_flat(f) == oracles.connected_by_partition(m.flats, f)


@pytest.mark.parametrize("m", MATROIDS, ids=repr)
def test_closure_axioms_and_oracle(m):
    table = oracles.rank_table(m.flats)
    for s in subsets(m.full):
        cl = m.closure(s)
        assert cl == oracles.closure(m.flats, s)
        assert cl & s == s and m.closure(cl) == cl
        assert m.rank_of(s) == table[cl]
        for i in bits(m.full & ~s):
            assert m.closure(s | 1 << i) & cl == cl  # monotone


@pytest.mark.parametrize("m", MATROIDS, ids=repr)
def test_ranks_step_by_one_along_covers(m):
    for f in m.flats:
        for g in m.covers(f):
            assert m.flat_rank(g) == m.flat_rank(f) + 1
    # covers partition the complement
    for f in m.flats:
        parts = [g & ~f for g in m.covers(f)]
        assert sum(parts) == m.full & ~f
        assert all(p & q == 0 for p, q in combinations(parts, 2))


def test_direct_sum_flat_count():
    a, b = uniform(2, 3), boolean(2, ["x", "y"])
    assert len(a.direct_sum(b).flats) == len(a.flats) * len(b.flats)


def test_parallel_elements_share_an_atom():
    m = graphic([(0, 1), (0, 1), (1, 2)])
    assert m.n == 3 and m.rank == 2
    assert len(m.atoms) == 2
    assert m.atom_of(0) == m.atom_of(1) == 0b011


def test_uniform_needs_positive_rank():
    with pytest.raises(ValueError):
        uniform(0, 3)


def test_from_rank_function_rebuilds_uniform():
    m = from_rank_function([str(i) for i in range(4)], lambda s: min(2, bin(s).count("1")))
    assert m == uniform(2, 4)


def test_graphic_triangle_is_u23():
    m = graphic([("a", "b"), ("b", "c"), ("a", "c")])
    assert len(m.flats) == 5 and m.rank == 2
    assert m == uniform(2, 3, m.labels)


def test_connected_graph_counts():
    # connected graphs on 2..5 vertices: 1, 2, 6, 21
    assert len(connected_graphs(5)) == 30


def test_ground_order_permutation_keeps_the_lattice():
    m = broom()
    p = m.with_ground_order(["3", "1", "0", "2"])
    assert p.labels == ("3", "1", "0", "2")
    assert sorted(p.name(f) for f in p.flats) == sorted(
        ["{}", "3", "1", "0", "2", "10", "02", "30", "312", "3102"]
    )
    assert p.with_ground_order(m.labels) == m
