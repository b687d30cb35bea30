from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from srquotient.intlat import (INFINITE, IntMatrix, LatticeBasis, bareiss_det, component_representatives,
                               hermite_normal_form, kernel_lattice, lattice_index, rational_rank, same_component,
                               saturate, smith_normal_form, solve_in_lattice, torsion_order)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4, min_cols=1):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def minor_gcds(rows):
    """d_k = gcd of k x k minors; divisors are d_k / d_(k-1)."""
    r, c = len(rows), len(rows[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for I in combinations(range(r), k):
            for J in combinations(range(c), k):
                g = gcd(g, bareiss_det([[rows[i][j] for j in J] for i in I]))
        out.append(g)
    return out


def test_re_a_divisors():
    A = IntMatrix.from_rows([[1, 1, 1, 3], [0, 5, 0, 5], [0, 0, 5, 5]])
    snf = smith_normal_form(A)
    assert snf.divisors == (1, 5, 5)
    assert torsion_order(A) == 25


def test_kernel_of_three_columns():
    # characters (1,5,0) and (1,0,5) as rows
    K = kernel_lattice(IntMatrix.from_rows([[1, 5, 0], [1, 0, 5]]))
    assert [tuple(abs(x) for x in v) for v in K.generators] == [(5, 1, 1)]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_matches_minor_gcds(rows):
    A = IntMatrix.from_rows(rows)
    snf = smith_normal_form(A)
    divs = [x for x in snf.divisors if x]
    for a, b in zip(divs, divs[1:]):
        assert b % a == 0
    dk = minor_gcds(rows)
    prod = 1
    for k, x in enumerate(divs):
        prod *= x
        assert prod == dk[k]
    assert len(divs) == rational_rank(rows)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_transform(rows):
    A = IntMatrix.from_rows(rows)
    snf = smith_normal_form(A)
    D = snf.U @ A @ snf.V
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1
    for i in range(D.rows):
        for j in range(D.cols):
            want = snf.divisors[i] if i == j and i < len(snf.divisors) else 0
            assert D[i, j] == want


@settings(max_examples=100, deadline=None)
@given(matrices(4, 3, 3))
def test_hnf_spans_same_lattice(rows):
    H = hermite_normal_form(rows, 3)
    assert len(H) == rational_rank(rows)
    for v in rows:
        assert solve_in_lattice(IntMatrix.from_columns(H, 3), v) is not None if H else not any(v)


@settings(max_examples=80, deadline=None)
@given(matrices(3, 4))
def test_kernel_is_saturated(rows):
    A = IntMatrix.from_rows(rows)
    K = kernel_lattice(A)
    assert K.rank == A.cols - rational_rank(rows)
    for v in K.generators:
        assert all(sum(r[j] * v[j] for j in range(A.cols)) == 0 for r in rows)
    if K.rank:
        assert lattice_index(saturate(K), K) == 1


def test_lattice_index():
    L = LatticeBasis.spanned_by(2, [(2, 0), (0, 3)])
    assert lattice_index(L, LatticeBasis.standard(2)) == 6
    assert lattice_index(LatticeBasis.spanned_by(2, [(1, 0)]), LatticeBasis.standard(2)) == INFINITE


def test_components_of_single_character():
    A = IntMatrix.from_rows([[5]])
    reps = component_representatives(A)
    assert sorted(reps) == [(Fraction(k, 5),) for k in range(5)]
    assert same_component(A, (Fraction(1, 5),), (Fraction(6, 5),))
    assert not same_component(A, (Fraction(1, 5),), (Fraction(2, 5),))


def test_component_count_is_torsion_order():
    A = IntMatrix.from_rows([[1, 1, 1, 3], [0, 5, 0, 5], [0, 0, 5, 5]]).T
    assert len(component_representatives(A)) == 25


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_component_count_property(rows):
    A = IntMatrix.from_rows(rows)
    if rational_rank(rows) == 0:
        return
    assert len(component_representatives(A)) == torsion_order(A)


def test_det_and_gcd():
    assert bareiss_det([[2, 1], [1, 3]]) == 5
    assert reduce(gcd, [6, 10, 15]) == 1
