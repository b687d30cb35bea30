import random

import pytest
from hypothesis import given, settings, strategies as st

from srquotient.corpus import random_graded_poset, random_simplicial_poset
from srquotient.errors import CycleDetected, NotBoundedBelow, NotSimplicial, RedundantCover
from srquotient.polys import Polynomial1
from srquotient.poset import FinitePoset, SimplicialComplexData, boolean_lattice, face_poset

seeds = st.integers(0, 10 ** 6)


def test_twin_triangles_counts(twin):
    assert twin.is_simplicial() == (True, None)
    assert twin.f_vector() == [1, 3, 4, 2]
    assert twin.h_polynomial() == Polynomial1([1, 0, 1])
    assert twin.characteristic_polynomial() == Polynomial1([-2, 4, -3, 1])
    assert twin.chain_counts() == [10, 29, 32, 12]


def test_boolean_lattice():
    B = boolean_lattice(3)
    assert len(B) == 8 and B.bottom == "{}" and B.top == "{1,2,3}"
    assert B.mobius("{}", "{1,2,3}") == -1
    assert B.characteristic_polynomial() == Polynomial1([-1, 3, -3, 1])
    assert B.is_simplicial()[0]


def test_non_boolean_interval_witness():
    P = FinitePoset(["0", "a", "b", "c", "x"],
                    [("0", "a"), ("0", "b"), ("0", "c"), ("a", "x"), ("b", "x"), ("c", "x")])
    assert P.is_simplicial() == (False, "x")
    with pytest.raises(NotSimplicial):
        P.f_vector()


def test_cycle_and_redundancy():
    with pytest.raises(CycleDetected):
        FinitePoset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(RedundantCover):
        FinitePoset.from_dict({"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"], ["a", "c"]]})
    P = FinitePoset.from_relations(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert sorted(P.covers()) == [("a", "b"), ("b", "c")]


def test_unbounded_below():
    P = FinitePoset(["a", "b"], [])
    with pytest.raises(NotBoundedBelow):
        P.characteristic_polynomial()


def test_face_poset_of_triangle_boundary():
    cx = SimplicialComplexData.from_facets([["a", "b"], ["b", "c"], ["a", "c"]])
    P = face_poset(cx)
    assert P.f_vector() == [1, 3, 3]
    assert P.remove_bottom().reduced_euler() == -1   # a circle
    assert P.h_polynomial() == Polynomial1([1, 1, 1])


def test_round_trip(twin):
    Q = FinitePoset.from_dict(twin.to_dict())
    assert Q.to_dict() == twin.to_dict()
    assert Q.f_vector() == twin.f_vector()


def test_interval(twin):
    I = twin.interval("0", "T1", open=True)
    assert len(I) == 6
    assert I.reduced_euler() == -1


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_chain_counts_match_enumeration(seed):
    P = random_graded_poset(random.Random(seed), max_length=3, max_width=3)
    counts = [0] * (P.length + 1)
    for c in P.chains():
        counts[len(c) - 1] += 1
    assert counts == P.chain_counts()
    assert P.reduced_euler() == -1 + sum((-1) ** k * c for k, c in enumerate(counts))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_mobius_sums_vanish(seed):
    P = random_graded_poset(random.Random(seed))
    b = P.bottom
    for y in P.elements:
        if y != b:
            assert sum(P.mobius(b, z) for z in P.downset(y)) == 0


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_euler_identities(seed):
    P = random_graded_poset(random.Random(seed))
    assert P.euler_identities_check()["ok"]


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_chi_from_h(seed):
    # chi(t) = (t - 1)^d h(1 / (1 - t)), written without fractions
    rng = random.Random(seed)
    P = random_simplicial_poset(rng, rng.randint(2, 4), rng.randint(0, 5), rng.randint(0, 3))
    d = P.length
    h = P.h_polynomial()
    one_minus_t = Polynomial1.linear(1, -1)
    rhs = sum((h[i] * one_minus_t ** (d - i) for i in range(d + 1)), Polynomial1()) * (-1) ** d
    assert P.characteristic_polynomial() == rhs
