"""Central toric and (p,q)-arrangements given by an integer character matrix.

The characters are the columns ``a_1..a_n`` of a ``d x n`` matrix.  For
``p >= 1`` every circle factor carries an independent copy of the torus
arrangement, so a layer over a flat ``F`` is a ``p``-tuple of components of
``{x in (R/Z)^d : a_i . x in Z, i in F}``.  For ``p = 0`` the arrangement is
the linear one and layers are just flats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import NotEssential, ZeroColumn
from .intlat import (ComponentReducer, IntMatrix, component_representatives,
                     rational_rank, same_component, torsion_order)
from .poset import FinitePoset


@dataclass(frozen=True)
class ArrangementSpec:
    d: int
    matrix: IntMatrix
    p: int = 1
    q: int = 0

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], d: int | None = None, p: int = 1, q: int = 0):
        if d is None:
            d = len(columns[0]) if columns else 0
        return cls(d, IntMatrix.from_columns(columns, d), p, q)

    @classmethod
    def from_dict(cls, data: dict) -> ArrangementSpec:
        d = int(data["d"])
        rows = data["matrix"]
        if len(rows) != d:
            raise ValueError(f"matrix must have d = {d} rows, got {len(rows)}")
        n = len(rows[0]) if rows else 0
        return cls(d, IntMatrix.from_rows(rows, n), int(data.get("p", 1)), int(data.get("q", 0)))

    def to_dict(self) -> dict:
        return {"d": self.d, "p": self.p, "q": self.q, "matrix": self.matrix.tolist()}

    @property
    def n(self) -> int:
        return self.matrix.cols

    def column(self, i: int) -> tuple[int, ...]:
        return self.matrix.col(i)

    def rows_of(self, X: Iterable[int]) -> IntMatrix:
        """Characters in ``X`` as the rows of a ``|X| x d`` matrix."""
        X = sorted(X)
        return IntMatrix.from_rows([self.column(i) for i in X], self.d)

    def __post_init__(self):
        if self.matrix.rows != self.d:
            raise ValueError("matrix must have d rows")
        if self.p < 0:
            raise ValueError("p must be nonnegative")


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def support_label(X: Iterable[int]) -> str:
    """1-based set notation, e.g. ``{1,2}``."""
    return "{" + ",".join(str(i + 1) for i in sorted(X)) + "}"


@dataclass(frozen=True, order=True)
class Layer:
    """``support`` holds 0-based character indices; ``component`` is a tuple of
    ``p`` canonical points of ``[0,1)^d`` (empty for ``p = 0``)."""
    support: tuple[int, ...]
    component: tuple[tuple[Fraction, ...], ...]

    @property
    def id(self) -> str:
        s = support_label(self.support)
        if not self.component:
            return s
        return s + "@(" + "|".join(",".join(_fmt_frac(x) for x in blk) for blk in self.component) + ")"

    def __str__(self):
        return self.id


def validate_spec(spec: ArrangementSpec, essential_required: bool = False) -> dict:
    zero = [i + 1 for i in range(spec.n) if not any(spec.column(i))]
    if zero:
        raise ZeroColumn(f"zero character column(s): {zero}")
    rank = rational_rank([spec.column(i) for i in range(spec.n)], spec.d)
    essential = rank == spec.d
    if essential_required and not essential:
        raise NotEssential(f"columns span rank {rank} < d = {spec.d}")
    return {"d": spec.d, "n": spec.n, "p": spec.p, "q": spec.q, "rank": rank,
            "essential": essential, "refined": essential or spec.p == 0}


class Arrangement:
    """Cached combinatorial data of an :class:`ArrangementSpec`."""

    def __init__(self, spec: ArrangementSpec):
        self.spec = spec
        self._rank: dict[frozenset, int] = {}
        self._reducers: dict[frozenset, ComponentReducer] = {}
        self._components: dict[frozenset, list] = {}

    @property
    def n(self):
        return self.spec.n

    @property
    def d(self):
        return self.spec.d

    @property
    def p(self):
        return self.spec.p

    def rank(self, X: Iterable[int]) -> int:
        key = frozenset(X)
        r = self._rank.get(key)
        if r is None:
            r = self._rank[key] = rational_rank([self.spec.column(i) for i in sorted(key)], self.d)
        return r

    def is_independent(self, X: Iterable[int]) -> bool:
        X = frozenset(X)
        return self.rank(X) == len(X)

    def multiplicity(self, X: Iterable[int]) -> int:
        """Number of layers over ``X``: ``torsion_order(A_X)^p`` (1 for ``p = 0``)."""
        X = frozenset(X)
        if self.p == 0 or not X:
            return 1
        return torsion_order(self.spec.rows_of(X)) ** self.p

    def closure(self, X: Iterable[int]) -> frozenset[int]:
        X = frozenset(X)
        r = self.rank(X)
        return frozenset(i for i in range(self.n) if i in X or self.rank(X | {i}) == r)

    @cached_property
    def flats(self) -> list[tuple[frozenset[int], int]]:
        """All flats with their ranks, sorted by rank then support."""
        seen = set()
        for k in range(self.n + 1):
            for X in combinations(range(self.n), k):
                seen.add(self.closure(X))
        return sorted(((F, self.rank(F)) for F in seen), key=lambda fr: (fr[1], sorted(fr[0])))

    def reducer(self, X: frozenset) -> ComponentReducer:
        red = self._reducers.get(X)
        if red is None:
            red = self._reducers[X] = ComponentReducer(self.spec.rows_of(X) if X else
                                                       IntMatrix.zeros(0, self.d))
        return red

    def canonical(self, X: frozenset, component) -> tuple:
        """Name of the layer over ``X`` containing a point of a smaller layer."""
        if self.p == 0:
            return ()
        red = self.reducer(X)
        return tuple(red.canonical(blk) for blk in component)

    def components(self, X: Iterable[int]) -> list[tuple]:
        X = frozenset(X)
        comps = self._components.get(X)
        if comps is None:
            if self.p == 0:
                comps = [()]
            else:
                A = self.spec.rows_of(X) if X else IntMatrix.zeros(0, self.d)
                base = component_representatives(A) if X else [tuple(Fraction(0) for _ in range(self.d))]
                comps = [tuple(c) for c in product(base, repeat=self.p)]
            self._components[X] = comps
        return comps

    def _layers_over(self, supports: list[frozenset]) -> tuple[list[Layer], dict[str, Layer]]:
        layers: list[Layer] = []
        for X in supports:
            for c in self.components(X):
                layers.append(Layer(tuple(sorted(X)), c))
        by_id = {L.id: L for L in layers}
        return layers, by_id

    def support_at(self, X: Iterable[int], component) -> frozenset[int]:
        """Characters trivial on the layer over ``X`` through ``component``.

        Only characters in the closure of ``X`` are constant on that layer;
        such a character is trivial there iff it is trivial at the point."""
        X = frozenset(X)
        if self.p == 0:
            return self.closure(X)
        return frozenset(i for i in self.closure(X)
                         if all(sum(a * x for a, x in zip(self.spec.column(i), blk)).denominator == 1
                                for blk in component))

    def _layer_through(self, X: frozenset, component) -> Layer:
        S = self.support_at(X, component)
        return Layer(tuple(sorted(S)), self.canonical(S, component))

    @cached_property
    def layers(self) -> list[Layer]:
        """Every layer, each reached as a component over one of its bases;
        sorted by rank, support and component."""
        seen: dict[str, Layer] = {}
        for B in self.independent_sets():
            for c in self.components(B):
                L = self._layer_through(B, c)
                seen.setdefault(L.id, L)
        return sorted(seen.values(), key=lambda L: (self.rank(L.support), L.support, L.component))

    def layers_poset(self) -> FinitePoset:
        """Layers ordered by reverse inclusion.  The layers covered by ``L`` of
        rank ``r`` are the layers through a point of ``L`` over the independent
        ``(r-1)``-subsets of its support."""
        layers = self.layers
        covers = set()
        for L in layers:
            S = L.support
            r = self.rank(S)
            for B in combinations(S, r - 1) if r else ():
                if self.is_independent(B):
                    covers.add((self._layer_through(frozenset(B), L.component).id, L.id))
        P = FinitePoset([L.id for L in layers], sorted(covers))
        P.layers = {L.id: L for L in layers}
        return P

    def independent_sets(self) -> list[frozenset[int]]:
        out = [frozenset()]
        frontier = [frozenset()]
        while frontier:
            nxt = set()
            for I in frontier:
                for i in range(max(I, default=-1) + 1, self.n):
                    J = I | {i}
                    if self.is_independent(J):
                        nxt.add(J)
            frontier = sorted(nxt, key=sorted)
            out += frontier
        return out

    def independence_poset(self) -> FinitePoset:
        inds = self.independent_sets()
        layers, by_id = self._layers_over(inds)
        covers = []
        for J in inds:
            for c in self.components(J):
                top = Layer(tuple(sorted(J)), c).id
                for j in J:
                    I = J - {j}
                    covers.append((Layer(tuple(sorted(I)), self.canonical(I, c)).id, top))
        P = FinitePoset([L.id for L in layers], covers)
        P.layers = by_id
        return P

    def component_contains(self, small: Layer, big: Layer) -> bool:
        """Whether layer ``big`` lies inside layer ``small`` (``small`` has the
        smaller support)."""
        X = frozenset(small.support)
        if not X <= frozenset(big.support):
            return False
        if self.p == 0 or not X:
            return True
        A = self.spec.rows_of(X)
        return all(same_component(A, v, w) for v, w in zip(small.component, big.component))


def multiplicity(spec: ArrangementSpec, X: Iterable[int]) -> int:
    return Arrangement(spec).multiplicity(X)


def closure(spec: ArrangementSpec, X: Iterable[int]) -> frozenset[int]:
    return Arrangement(spec).closure(X)


def flats(spec: ArrangementSpec) -> list[tuple[frozenset[int], int]]:
    return Arrangement(spec).flats


def layers_poset(spec: ArrangementSpec) -> FinitePoset:
    return Arrangement(spec).layers_poset()


def independence_poset(spec: ArrangementSpec) -> FinitePoset:
    return Arrangement(spec).independence_poset()


def component_contains(spec: ArrangementSpec, small: Layer, big: Layer) -> bool:
    return Arrangement(spec).component_contains(small, big)


RE_A = ArrangementSpec.from_columns([(1, 0, 0), (1, 5, 0), (1, 0, 5), (3, 5, 5)], d=3, p=1)
