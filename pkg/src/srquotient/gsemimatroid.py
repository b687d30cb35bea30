"""Finite quotient data of a translative group action on a semimatroid: the
Tutte polynomial, the h- and characteristic polynomials it determines, the
index delta, and the Betti numbers it predicts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .arrangement import Arrangement, ArrangementSpec, support_label
from .errors import NotEssential, NotIndependent, NotRefined
from .intlat import (INFINITE, IntMatrix, LatticeBasis, bareiss_det,
                     kernel_lattice, lattice_index)
from .polys import Polynomial1, Polynomial2


@dataclass
class QuotientSemimatroid:
    """``central`` is a downward closed family of subsets of ``ground``;
    ``m`` and ``rho`` are the multiplicity and rank on central sets."""
    ground: tuple[int, ...]
    central: list[frozenset[int]]
    m: dict[frozenset[int], int]
    rho: dict[frozenset[int], int]
    d: int = field(default=0)

    def __post_init__(self):
        cs = set(self.central)
        if frozenset() not in cs or self.rho[frozenset()] != 0:
            raise ValueError("the empty set must be central of rank 0")
        for A in self.central:
            if self.m[A] < 1:
                raise ValueError(f"multiplicity of {sorted(A)} must be positive")
            for e in A:
                B = A - {e}
                if B not in cs:
                    raise ValueError("central sets must be downward closed")
                if not self.rho[B] <= self.rho[A] <= self.rho[B] + 1:
                    raise ValueError("rank must be monotone with unit increase")
        self.d = max(self.rho.values(), default=0)

    @classmethod
    def from_arrangement(cls, spec: ArrangementSpec) -> QuotientSemimatroid:
        arr = Arrangement(spec)
        central = [frozenset(X) for k in range(spec.n + 1) for X in combinations(range(spec.n), k)]
        return cls(tuple(range(spec.n)), central,
                   {A: arr.multiplicity(A) for A in central},
                   {A: arr.rank(A) for A in central})

    def independent(self) -> list[frozenset[int]]:
        return [A for A in self.central if self.rho[A] == len(A)]


def from_arrangement(spec: ArrangementSpec) -> QuotientSemimatroid:
    return QuotientSemimatroid.from_arrangement(spec)


def tutte(Q: QuotientSemimatroid) -> Polynomial2:
    """Direct sum over central sets of ``m(A) (x-1)^(d-rho) (y-1)^(|A|-rho)``."""
    x1 = Polynomial2.x() - 1
    y1 = Polynomial2.y() - 1
    T = Polynomial2()
    for A in Q.central:
        r = Q.rho[A]
        T = T + Q.m[A] * x1 ** (Q.d - r) * y1 ** (len(A) - r)
    return T


def h_poly_independence(Q: QuotientSemimatroid, T: Polynomial2 | None = None) -> Polynomial1:
    """``t^d T(1/t, 1)``: reverse the coefficients of ``T(x, 1)``."""
    T = T if T is not None else tutte(Q)
    coeffs = [0] * (Q.d + 1)
    for (i, j), c in T.terms.items():
        coeffs[Q.d - i] += c  # y = 1 collapses the y-degree
    return Polynomial1(coeffs)


def char_poly_layers(Q: QuotientSemimatroid, T: Polynomial2 | None = None) -> Polynomial1:
    """``(-1)^d T(1 - t, 0)``"""
    T = T if T is not None else tutte(Q)
    return (-1) ** Q.d * T(Polynomial1.linear(1, -1), Polynomial1())


def char_poly_independence(Q: QuotientSemimatroid, T: Polynomial2 | None = None) -> Polynomial1:
    """``(-1)^d T(1 - t, 1)``"""
    T = T if T is not None else tutte(Q)
    return (-1) ** Q.d * T(Polynomial1.linear(1, -1), Polynomial1.const(1))


def char_poly_independence_literal(Q: QuotientSemimatroid, T: Polynomial2 | None = None):
    """``(-t)^d T((1-t)/t, 1)`` as a function of ``t`` (rational in general)."""
    T = T if T is not None else tutte(Q)
    return lambda t: (-t) ** Q.d * T((1 - t) / t, 1)


# -- delta ------------------------------------------------------------------

@dataclass
class BasisDelta:
    basis: tuple[int, ...]                 # 0-based
    w: list[tuple[int, ...]]
    value: int

    def to_dict(self) -> dict:
        return {"basis": support_label(self.basis), "w": [list(v) for v in self.w], "delta": self.value}


@dataclass
class DeltaReport:
    p: int
    table: list[BasisDelta]
    delta: int

    def to_dict(self) -> dict:
        return {"p": self.p, "bases": [b.to_dict() for b in self.table], "delta": self.delta}


def _stab(spec: ArrangementSpec, Y: Iterable[int]) -> list[tuple[int, ...]]:
    """Generators of ``stab(Y)^p`` in ``Z^(pd)``: the kernel lattice of the
    characters in ``Y``, one copy per circle factor."""
    Y = sorted(Y)
    d, p = spec.d, spec.p
    if Y:
        K = kernel_lattice(spec.rows_of(Y)).generators
    else:
        K = LatticeBasis.standard(d).generators
    out = []
    for k in range(p):
        for v in K:
            out.append((0,) * (k * d) + tuple(v) + (0,) * ((p - k - 1) * d))
    return out


def _primitive_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    nz = next((x for x in v if x), 0)
    return tuple(-x for x in v) if nz < 0 else v


def delta_of_support(spec: ArrangementSpec, X: Iterable[int]) -> int:
    """``[Z^(pd) : stab(X) + sum_i stab(X - x_i)]``; this is the index of the
    direct sum of the codimension-one stabilizers in ``Z^(pd) / stab(X)``."""
    X = sorted(set(X))
    arr = Arrangement(spec)
    if not X or not arr.is_independent(X):
        raise NotIndependent(f"{support_label(X)} is not a nonempty independent set")
    if spec.p == 0:
        return 1
    gens = list(_stab(spec, X))
    for x in X:
        gens += _stab(spec, [y for y in X if y != x])
    pd = spec.p * spec.d
    idx = lattice_index(LatticeBasis.spanned_by(pd, gens), LatticeBasis.standard(pd))
    assert idx != INFINITE
    return int(idx)


def delta(spec: ArrangementSpec) -> DeltaReport:
    arr = Arrangement(spec)
    if spec.p == 0:
        raise NotRefined("p = 0 is the linear case, where delta is trivially 1")
    if arr.rank(range(spec.n)) != spec.d:
        raise NotEssential("delta needs an essential arrangement")
    d = spec.d
    table = []
    for B in combinations(range(spec.n), d):
        if not arr.is_independent(B):
            continue
        w = []
        for j in range(d):
            others = [B[l] for l in range(d) if l != j]
            if others:
                K = kernel_lattice(spec.rows_of(others)).generators
            else:
                K = LatticeBasis.standard(1).generators
            assert len(K) == 1
            w.append(_primitive_sign(K[0]))
        value = delta_of_support(spec, B)
        det = abs(bareiss_det([list(v) for v in w])) if d else 1
        if value != det ** spec.p:
            raise AssertionError(f"block index {value} != |det|^p = {det ** spec.p} for {B}")
        table.append(BasisDelta(tuple(B), w, value))
    overall = math.lcm(*(b.value for b in table)) if table else 1
    return DeltaReport(spec.p, table, overall)


# -- Betti predictions -----------------------------------------------------

def betti_predictions(Q: QuotientSemimatroid, T: Polynomial2 | None = None) -> dict:
    """Rational Betti numbers in degree ``d - 1`` implied by the Tutte
    polynomial (all lower reduced Betti numbers vanish).

    ``independence_top`` is ``T(0,1)``, the top coefficient of the h-polynomial;
    ``independence_top_negated`` is its negative, kept for comparison."""
    T = T if T is not None else tutte(Q)
    return {
        "d": Q.d,
        "layers_top": T(0, 0),
        "proper_part_top": -T(1, 0),
        "independence_top": T(0, 1),
        "independence_top_negated": -T(0, 1),
    }
