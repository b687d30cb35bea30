import random
from itertools import combinations
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st

from srquotient.arrangement import Arrangement, ArrangementSpec
from srquotient.corpus import random_arrangement
from srquotient.errors import NotEssential, NotIndependent, NotRefined
from srquotient.gsemimatroid import (QuotientSemimatroid, betti_predictions, char_poly_independence,
                                     char_poly_layers, delta, delta_of_support, from_arrangement,
                                     h_poly_independence, tutte)
from srquotient.intlat import bareiss_det, rational_rank
from srquotient.polys import Polynomial1, Polynomial2

seeds = st.integers(0, 10 ** 6)

RE_A_W = [
    [[5, -1, -1], [0, 1, 0], [0, 0, 1]],
    [[5, -1, -2], [0, 1, -1], [0, 0, 1]],
    [[5, -2, -1], [0, 1, -1], [0, 1, 0]],
    [[5, -2, -1], [5, -1, -2], [5, -1, -1]],
]


def minor_gcd(rows, r):
    g = 0
    for I in combinations(range(len(rows)), r):
        for J in combinations(range(len(rows[0])), r):
            g = gcd(g, bareiss_det([[rows[i][j] for j in J] for i in I]))
    return g


def tutte_oracle(spec):
    """Subset sum with multiplicities from gcds of maximal minors."""
    x, y = Polynomial2.x(), Polynomial2.y()
    T = Polynomial2()
    for k in range(spec.n + 1):
        for A in combinations(range(spec.n), k):
            rows = [list(spec.column(i)) for i in A]
            r = rational_rank(rows, spec.d) if rows else 0
            m = minor_gcd(rows, r) ** spec.p if r else 1
            T = T + m * (x - 1) ** (spec.d - r) * (y - 1) ** (k - r)
    return T


def test_re_a_tutte(re_a):
    T = tutte(from_arrangement(re_a))
    assert repr(T) == "x^3 + x^2 + 25*x + 25*y + 48"
    assert T(1, 1) == 100
    assert T == tutte_oracle(re_a)


def test_re_a_polynomials(re_a):
    Q = from_arrangement(re_a)
    assert h_poly_independence(Q) == Polynomial1([1, 1, 25, 73])
    assert char_poly_layers(Q) == Polynomial1([-75, 30, -4, 1])
    assert char_poly_layers(Q) == Arrangement(re_a).layers_poset().characteristic_polynomial()
    assert betti_predictions(Q)["layers_top"] == 48
    assert betti_predictions(Q)["independence_top"] == 73


def test_re_a_delta_table(re_a):
    rep = delta(re_a)
    assert rep.delta == 5
    assert [b.value for b in rep.table] == [5, 5, 5, 5]
    for b, want in zip(rep.table, RE_A_W):
        for v, w in zip(b.w, want):
            assert list(v) == w or [-a for a in v] == w
    assert rep.to_dict()["bases"][0]["basis"] == "{1,2,3}"


def test_re_a_delta_second_power(re_a):
    assert delta(ArrangementSpec(re_a.d, re_a.matrix, p=2)).delta == 25


def test_delta_of_support_values(re_a):
    assert all(delta_of_support(re_a, [i]) == 1 for i in range(4))
    assert all(delta_of_support(re_a, X) == 5 for X in combinations(range(4), 2))
    with pytest.raises(NotIndependent):
        delta_of_support(re_a, [0, 1, 2, 3])


def test_delta_errors(re_a):
    with pytest.raises(NotRefined):
        delta(ArrangementSpec(re_a.d, re_a.matrix, p=0))
    with pytest.raises(NotEssential):
        delta(ArrangementSpec.from_columns([(1, 1), (2, 2)], d=2))


def test_empty_arrangement():
    spec = ArrangementSpec.from_dict({"d": 0, "matrix": []})
    assert tutte(from_arrangement(spec)) == 1


def test_semimatroid_validation():
    with pytest.raises(ValueError):
        QuotientSemimatroid((0,), [frozenset({0})], {frozenset({0}): 1}, {frozenset({0}): 1})


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_tutte_matches_oracle(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    spec = random_arrangement(rng, d, rng.randint(d, 4), rng.choice([0, 1, 2]))
    assert tutte(from_arrangement(spec)) == tutte_oracle(spec)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_polynomial_identities(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    spec = random_arrangement(rng, d, rng.randint(d, 4), rng.choice([1, 2]))
    arr = Arrangement(spec)
    Q = from_arrangement(spec)
    T = tutte(Q)
    if sum(arr.multiplicity(I) for I in arr.independent_sets()) > 1500:
        return
    I = arr.independence_poset()
    assert I.h_polynomial() == h_poly_independence(Q, T)
    assert arr.layers_poset().characteristic_polynomial() == char_poly_layers(Q, T)
    assert I.characteristic_polynomial() == char_poly_independence(Q, T)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_delta_divides_along_chains(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    spec = random_arrangement(rng, d, rng.randint(d, 5), rng.choice([1, 2]))
    arr = Arrangement(spec)
    ind = [X for X in arr.independent_sets() if X]
    val = {X: delta_of_support(spec, X) for X in ind}
    for X in ind:
        for Y in ind:
            if X < Y:
                assert val[Y] % val[X] == 0
    bases = [X for X in ind if len(X) == spec.d]
    assert delta(spec).delta == lcm(*(val[B] for B in bases))


def test_single_character_five():
    spec = ArrangementSpec.from_dict({"d": 1, "matrix": [[5]]})
    Q = from_arrangement(spec)
    assert tutte(Q) == Polynomial2.x() + 4
    assert h_poly_independence(Q) == Polynomial1([1, 4])
    assert char_poly_layers(Q) == Polynomial1([-5, 1])
    # five points: reduced H_0 has rank 4 = T(0,0) = T(0,1)
    pred = betti_predictions(Q)
    assert pred["layers_top"] == 4 and pred["independence_top"] == 4
    assert len(Arrangement(spec).layers_poset()) == 6


def test_coloop_and_identity():
    Q = from_arrangement(ArrangementSpec.from_dict({"d": 1, "matrix": [[1]]}))
    assert tutte(Q) == Polynomial2.x()
    assert char_poly_layers(Q) == Polynomial1([-1, 1])
    assert delta(ArrangementSpec.from_dict({"d": 2, "matrix": [[1, 0], [0, 1]]})).delta == 1
