"""Property tests over random small matroids, building sets, ground orders and weights."""

from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from bshell import boolean, broom, graphic, uniform
from bshell.building import enumerate_building_sets, is_building_set
from bshell.geometry import default_cubical, is_cubical, vertex
from bshell.nested import facets, reduced
from bshell.orders import construct_n_min, descents, nc_order, nl_labeling, nl_order, reconstruct_from_labeling
from bshell.shelling import check_shelling, verify_theorem1


@st.composite
def matroids(draw):
    kind = draw(st.sampled_from(["uniform", "boolean", "graphic", "broom"]))
    if kind == "uniform":
        n = draw(st.integers(1, 5))
        m = uniform(draw(st.integers(1, n)), n)
    elif kind == "boolean":
        m = boolean(draw(st.integers(1, 3)))
    elif kind == "graphic":
        k = draw(st.integers(2, 4))
        pairs = [(u, v) for u in range(k) for v in range(u + 1, k)]
        edges = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=5))
        m = graphic(edges)
    else:
        m = broom()
    order = draw(st.permutations(m.labels))
    return m.with_ground_order(list(order))


@st.composite
def building_sets(draw):
    m = draw(matroids())
    options = enumerate_building_sets(m) if len(m.flats) <= 13 else None
    assume(options)
    return draw(st.sampled_from(options))


@given(matroids())
def test_closure_is_a_closure_operator(m):
    for s in range(1 << m.n):
        cl = m.closure(s)
        assert cl & s == s and m.closure(cl) == cl and cl == oracles.closure(m.flats, s)


@given(building_sets())
def test_facet_structure(b):
    m = b.matroid
    assert is_building_set(m, b.members)[0]
    assert sum(b.maximal) == m.full
    fs = facets(b)
    assert fs and all(len(f) == m.rank for f in fs)
    assert set(fs) == oracles.facets_bruteforce(m.flats, b.members, m.rank)


@given(building_sets())
def test_nl_labeling_round_trip(b):
    m = b.matroid
    labs = [nl_labeling(m, f) for f in facets(b)]
    assert len({lab.key() for lab in labs}) == len(labs)
    for lab in labs:
        assert reconstruct_from_labeling(b, lab.atoms) == lab.facet
        assert lab.key() == oracles.nl_key_bruteforce(m.flats, lab.facet)
    assert [lab.facet for lab in labs if not descents(lab)] == [construct_n_min(b)]


@given(building_sets(), st.integers(0, 5))
def test_nc_order_shells_and_minimum_match(b, seed):
    c = default_cubical(b, seed)
    assert is_cubical(b, c)[0]
    assert verify_theorem1(b, c).verdict
    assert nc_order(b, c).facets[0] == nl_order(b).facets[0]


@given(building_sets(), st.data())
def test_vertex_solves_its_constraints(b, data):
    c = {x: Fraction(data.draw(st.integers(-9, 9)), data.draw(st.integers(1, 4))) for x in b.members}
    for f in facets(b):
        sol = vertex(b, f, c)
        for x in f:
            assert sum(sol.point[i] for i in range(b.matroid.n) if x >> i & 1) == c[x]


@given(building_sets(), st.randoms(use_true_random=False))
def test_checker_matches_literal_definition(b, rnd):
    fs = facets(b)
    order = list(fs)
    rnd.shuffle(order)
    order = order[:8]
    got = check_shelling(order, strip=b.maximal).verdict
    assert got == oracles.is_shelling_literal([reduced(b, f) for f in order])
