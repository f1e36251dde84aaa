from fractions import Fraction

import pytest

import oracles
from helpers import size_weights, weights_31
from bshell import boolean, broom, uniform
from bshell.building import BuildingSet, enumerate_building_sets, maximal_building_set, minimal_building_set
from bshell.corpus import corpus
from bshell.geometry import (
    DuplicateVertices,
    SingularGram,
    as_rational,
    default_cubical,
    gram_matrix,
    inner,
    invert_exact,
    is_cubical,
    is_lexicographic_vector,
    restrict_cubical,
    solve_exact,
    vertex,
    vertices,
)
from bshell.nested import facets, link_image, product_of


def fs(m, *names):
    return frozenset(m.mask(s) for s in names)


def pt(*xs):
    return tuple(Fraction(x) for x in xs)


def test_gram_examples(bm, bM):
    m = bm.matroid
    assert gram_matrix(fs(m, "0", "1", "123")) == [[1, 0, 0], [0, 1, 1], [0, 1, 3]]
    assert gram_matrix(fs(m, "0", "01", "0123")) == [[1, 1, 1], [1, 2, 2], [1, 2, 4]]
    one = uniform(1, 1)
    assert gram_matrix([one.full]) == [[1]]


def test_exact_solver():
    a = [[2, 1], [1, 3]]
    x = solve_exact(a, [1, 2])
    assert x == [Fraction(1, 5), Fraction(3, 5)]
    inv = invert_exact(a)
    assert inv == [[Fraction(3, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(2, 5)]]
    with pytest.raises(SingularGram):
        solve_exact([[1, 2], [2, 4]], [1, 1])


def test_floats_are_rejected():
    assert as_rational("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_vertices_of_the_maximal_broom(bM):
    m = bM.matroid
    c = size_weights(bM)
    assert vertex(bM, fs(m, "0", "01", "0123"), c).point == pt(3, 1, -2, -2)
    assert vertex(bM, fs(m, "3", "123", "0123"), c).point == pt(-3, 0, 0, 3)
    assert vertex(bM, fs(m, "1", "01", "0123"), c).point == pt(1, 3, -2, -2)


def test_vertices_of_the_minimal_broom(bm):
    m = bm.matroid
    got = {f: s.point for f, s in vertices(bm, weights_31(bm)).items()}
    assert got == {
        fs(m, "0", "1", "123"): pt(3, 1, -2, -2),
        fs(m, "0", "2", "123"): pt(3, -2, 1, -2),
        fs(m, "0", "3", "123"): pt(3, -2, -2, 1),
    }
    for p in got.values():
        assert p[0] == 3 and sum(p) == 0


def test_constraints_hold_exactly(bM):
    c = size_weights(bM)
    for f, sol in vertices(bM, c).items():
        for x in f:
            assert inner(sol.point, [int(x >> i & 1) for i in range(bM.matroid.n)]) == c[x]


def test_is_cubical_examples(bm, bM):
    assert is_cubical(bM, size_weights(bM))[0]
    assert is_cubical(bm, weights_31(bm))[0]
    ok, report = is_cubical(bM, {x: 0 for x in bM.members})
    assert not ok and len(report) == len(facets(bM))
    assert all(all(v == 0 for v in bad.values()) for _, bad in report)


def test_missing_weight_is_an_error(bm):
    c = weights_31(bm)
    c.pop(bm.matroid.mask("0"))
    with pytest.raises(KeyError):
        is_cubical(bm, c)


def test_default_cubical_is_verified_and_deterministic(bm, bM):
    for b in (bm, bM, maximal_building_set(uniform(1, 3))):
        for seed in range(3):
            c = default_cubical(b, seed)
            assert is_cubical(b, c)[0]
            assert c == default_cubical(b, seed)
    assert default_cubical(bM, 0) == size_weights(bM)


def test_restrict_cubical_example(bM):
    m = bM.matroid
    z = m.mask("0")
    c = size_weights(bM)
    rc = restrict_cubical(bM, z, c)
    assert rc[m.mask("1")] == 1  # c_01 - c_0
    assert rc[m.mask("123")] == c[m.full] - c[z]  # the image of 0123
    b4 = boolean(4)
    b = BuildingSet(b4, [*b4.atoms, b4.mask("12"), b4.full])
    c = size_weights(b)
    rc = restrict_cubical(b, b4.mask("12"), c)
    assert rc[b4.mask("3")] == c[b4.mask("3")]  # incomparable to z


SMALL = enumerate_building_sets(broom()) + enumerate_building_sets(boolean(3)) + [
    minimal_building_set(uniform(3, 5)), maximal_building_set(uniform(3, 4))]


@pytest.mark.parametrize("b", SMALL, ids=repr)
def test_restriction_keeps_vertices_and_cubicality(b):
    c = default_cubical(b, 0)
    sols = vertices(b, c)
    for z in b.non_maximal:
        rc = restrict_cubical(b, z, c)
        pb = product_of(b, z)
        assert is_cubical(pb, rc)[0]
        for f, sol in sols.items():
            if z in f:
                assert vertex(pb, link_image(b, z, f), rc).point == sol.point


@pytest.mark.parametrize("b", SMALL, ids=repr)
def test_vertex_matches_forest_formula(b):
    c = default_cubical(b, 1)
    for f, sol in vertices(b, c).items():
        point, lam = oracles.vertex_by_forest(f, c, b.matroid.n)
        assert sol.point == point
        assert sol.coefficients == lam


def test_lexicographic_vectors(bM):
    c = size_weights(bM)
    assert is_lexicographic_vector(bM, c, [1000, 100, 10, 1]) == (True, None)
    ok, pair = is_lexicographic_vector(bM, c, [1, 100, 101, -1000])
    assert not ok and len(pair) == 2
    one = maximal_building_set(uniform(1, 2))
    assert is_lexicographic_vector(one, {one.matroid.full: 1}, [1, 1])[0]


def test_shared_vertices_are_rejected(bM):
    with pytest.raises(DuplicateVertices):
        is_lexicographic_vector(bM, {x: 0 for x in bM.members}, [1, 1, 1, 1])


def test_vertices_distinct_and_grams_invertible_on_corpus():
    for inst in corpus():
        b = inst.building
        if len(b.members) > 12:
            continue
        sols = vertices(b, default_cubical(b, 0))
        assert len({s.point for s in sols.values()}) == len(sols)
