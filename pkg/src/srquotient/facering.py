"""Face rings of finite simplicial posets, computed degreewise.

There is one variable ``x_p`` for every element ``p`` other than the minimum,
of degree ``rk(p)``; the variable of the minimum is set to 1.  Ideal questions
are answered one graded piece at a time by exact row reduction, so no
Groebner bases are needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import DegreeTooLarge, NotOrderIdeal, NotTranslative
from .linalg import Echelon
from .poset import FinitePoset

MAX_DEGREE = 12

Monomial = tuple  # sorted tuple of variable indices, repeated by exponent
Poly = dict       # {Monomial: int}


@dataclass
class GradedPresentation:
    variables: list[str]
    degrees: list[int]
    generators: list[Poly]

    def degree_of(self, m: Monomial) -> int:
        return sum(self.degrees[i] for i in m)

    def generator_degree(self, g: Poly) -> int:
        return max(self.degree_of(m) for m in g)

    def is_homogeneous(self) -> bool:
        return all(len({self.degree_of(m) for m in g}) == 1 for g in self.generators)

    def format_poly(self, g: Poly) -> str:
        parts = []
        for m, c in g.items():  # construction order: the product term leads
            mono = "*".join(f"x[{self.variables[i]}]" for i in m) or "1"
            parts.append(("+ " if c > 0 else "- ") + (mono if abs(c) == 1 else f"{abs(c)}*{mono}"))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_dict(self) -> dict:
        return {
            "variables": [{"name": v, "degree": d} for v, d in zip(self.variables, self.degrees)],
            "generators": [[{"coef": c, "monomial": [self.variables[i] for i in m]}
                            for m, c in sorted(g.items())] for g in self.generators],
        }


@dataclass
class HilbertTable:
    characteristic: int
    D: int
    values: list[int]

    def to_dict(self) -> dict:
        return {"characteristic": self.characteristic, "degree": self.D, "values": list(self.values)}


def _check_degree(D: int):
    if D > MAX_DEGREE:
        raise DegreeTooLarge(f"degree bound {D} exceeds {MAX_DEGREE}")
    if D < 0:
        raise ValueError("degree bound must be nonnegative")


def is_order_ideal(P: FinitePoset, a: Iterable[str]) -> bool:
    a = set(a)
    return all(P.downset(x) <= a for x in a)


def order_ideals(P: FinitePoset) -> list[frozenset[str]]:
    """All order ideals (down-closed subsets), including the empty one."""
    out = {frozenset()}
    for x in P.topological():
        out |= {I | {x} for I in out if set(P.lower_covers(x)) <= I}
    return sorted(out, key=lambda I: (len(I), sorted(I)))


def stanley_ideal(P: FinitePoset, a: Iterable[str] | None = None) -> GradedPresentation:
    P.require_simplicial()
    bot = P.bottom
    a = set(P.elements) if a is None else set(a)
    if not is_order_ideal(P, a):
        raise NotOrderIdeal("the given set is not downward closed")
    variables = [e for e in sorted(P.elements, key=lambda e: (P.rank(e), e)) if e != bot]
    vidx = {v: i for i, v in enumerate(variables)}
    degrees = [P.rank(v) for v in variables]

    def mono(*elems) -> Monomial:
        return tuple(sorted(vidx[e] for e in elems if e != bot))

    gens: list[Poly] = []
    if bot not in a:
        gens.append({(): 1})
    gens += [{mono(v): 1} for v in variables if v not in a]
    inside = [v for v in variables if v in a]
    for p, q in combinations(inside, 2):
        if P.leq(p, q) or P.leq(q, p):
            continue
        ups = (P.upset(p) & P.upset(q)) & a
        minimal = [z for z in ups if not any(w != z and P.leq(w, z) for w in ups)]
        g: Poly = {mono(p, q): 1}
        if minimal:
            common = P.downset(p) & P.downset(q)
            meet = max(common, key=P.rank)
            for z in sorted(minimal):
                m = mono(meet, z)
                g[m] = g.get(m, 0) - 1
        gens.append({m: c for m, c in g.items() if c})
    return GradedPresentation(variables, degrees, gens)


# -- graded pieces -------------------------------------------------------------

class GradedPieces:
    """Monomial bases of graded pieces and the degree-``k`` spans of ideals."""

    def __init__(self, degrees: Sequence[int]):
        self.degrees = list(degrees)
        self._monos: dict[int, list[Monomial]] = {}
        self._index: dict[int, dict[Monomial, int]] = {}

    def monomials(self, k: int) -> list[Monomial]:
        if k not in self._monos:
            out = []
            nv = len(self.degrees)

            def rec(start, remaining, acc):
                if remaining == 0:
                    out.append(tuple(acc))
                    return
                for i in range(start, nv):
                    if self.degrees[i] <= remaining:
                        acc.append(i)
                        rec(i, remaining - self.degrees[i], acc)
                        acc.pop()

            if k >= 0:
                rec(0, k, [])
            out.sort(key=lambda m: (len(m), m))  # graded-lex on variable order
            self._monos[k] = out
            self._index[k] = {m: i for i, m in enumerate(out)}
        return self._monos[k]

    def index(self, k: int) -> dict[Monomial, int]:
        self.monomials(k)
        return self._index[k]

    def rows(self, pres: GradedPresentation, k: int):
        """Coordinate rows ``m * g`` spanning the degree-``k`` piece of the ideal."""
        idx = self.index(k)
        for g in pres.generators:
            e = pres.generator_degree(g)
            if e > k:
                continue
            for m in self.monomials(k - e):
                row = {}
                for gm, c in g.items():
                    col = idx[tuple(sorted(m + gm))]
                    row[col] = row.get(col, 0) + c
                yield {c: v for c, v in row.items() if v}

    def span(self, pres: GradedPresentation, k: int, char: int = 0) -> Echelon:
        return Echelon(char).extend(self.rows(pres, k))


def _ideal_dimension(pres: GradedPresentation, pieces: GradedPieces, k: int, char: int) -> int:
    """Dimension of the degree-``k`` piece of the ideal.  Monomial generators
    are handled combinatorially; only the remaining rows are reduced."""
    monos = pieces.monomials(k)
    mono_gens = [next(iter(g)) for g in pres.generators if len(g) == 1]
    if () in mono_gens:
        return len(monos)
    mono_sets = [_multiset(m) for m in mono_gens]
    killed = {i for i, m in enumerate(monos) if any(_divides(s, _multiset(m)) for s in mono_sets)}
    ech = Echelon(char)
    for row in pieces.rows(GradedPresentation(pres.variables, pres.degrees,
                                              [g for g in pres.generators if len(g) > 1]), k):
        ech.add({c: v for c, v in row.items() if c not in killed})
    return len(killed) + ech.rank


def _multiset(m: Monomial) -> dict[int, int]:
    out: dict[int, int] = {}
    for i in m:
        out[i] = out.get(i, 0) + 1
    return out


def _divides(a: dict, b: dict) -> bool:
    return all(b.get(i, 0) >= e for i, e in a.items())


def hilbert_function(pres: GradedPresentation, D: int = 4, char: int = 0) -> HilbertTable:
    _check_degree(D)
    pieces = GradedPieces(pres.degrees)
    values = [len(pieces.monomials(k)) - _ideal_dimension(pres, pieces, k, char) for k in range(D + 1)]
    return HilbertTable(char, D, values)


def hilbert_from_f(P: FinitePoset, D: int = 4) -> HilbertTable:
    """Coefficients of ``sum_i f_{i-1} t^i / (1-t)^i``."""
    _check_degree(D)
    f = P.f_vector()
    values = [1] + [sum(f[i] * comb(k - 1, i - 1) for i in range(1, len(f))) for k in range(1, D + 1)]
    return HilbertTable(0, D, values)


# -- ideal lattice -------------------------------------------------------------

def ideal_lattice_check(P: FinitePoset, a: Iterable[str], b: Iterable[str], D: int = 4,
                        char: int = 0, cache: dict | None = None) -> dict:
    """Check degreewise that ``I_a + I_b = I_(a & b)``, ``I_a & I_b = I_(a | b)``
    and ``I_a = intersection of I_(q)`` over principal ideals ``(q)``, q in a."""
    _check_degree(D)
    a, b = frozenset(a), frozenset(b)
    cache = cache if cache is not None else {}
    pieces = cache.setdefault(("pieces", id(P)), None)
    if pieces is None:
        pieces = cache[("pieces", id(P))] = GradedPieces(stanley_ideal(P).degrees)

    def span(ideal: frozenset, k: int) -> Echelon:
        key = ("span", id(P), ideal, k, char)
        if key not in cache:
            cache[key] = pieces.span(stanley_ideal(P, ideal), k, char)
        return cache[key]

    def joint_rank(*spans: Echelon) -> int:
        e = spans[0].copy()
        for s in spans[1:]:
            for row in s.pivots.values():
                e.add(row)
        return e.rank

    def inside(small: frozenset, big: frozenset, k: int) -> bool:
        key = ("inside", id(P), small, big, k, char)
        if key not in cache:
            B = span(big, k)
            cache[key] = all(B.contains(row) for row in span(small, k).pivots.values())
        return cache[key]

    def decomposes(ideal: frozenset, k: int) -> bool:
        key = ("decomp", id(P), ideal, k, char)
        if key not in cache:
            N = len(pieces.monomials(k))
            principal = [span(frozenset(P.downset(q)), k) for q in sorted(ideal)]
            ann = Echelon(char)
            for s in principal:
                for row in s.annihilator(N):
                    ann.add(row)
            Sideal = span(ideal, k)
            cap_dim = N - ann.rank
            cache[key] = (all(inside(ideal, frozenset(P.downset(q)), k) for q in ideal)
                          and cap_dim == Sideal.rank)
        return cache[key]

    per_degree = []
    for k in range(D + 1):
        Sa, Sb, Smeet, Sjoin = span(a, k), span(b, k), span(a & b, k), span(a | b, k)
        # I_a, I_b lie in I_(a & b) and contain I_(a | b); dimensions settle equality
        sum_dim = joint_rank(Sa, Sb) if Sa.rank and Sb.rank else max(Sa.rank, Sb.rank)
        sum_ok = sum_dim == Smeet.rank and inside(a, a & b, k) and inside(b, a & b, k)
        inter_dim = Sa.rank + Sb.rank - sum_dim
        inter_ok = inter_dim == Sjoin.rank and inside(a | b, a, k) and inside(a | b, b, k)
        # the empty intersection is the whole ring, as is I_{}
        decomp_ok = all(decomposes(ideal, k) for ideal in (a, b) if ideal)
        per_degree.append({"degree": k, "sum": sum_ok, "intersection": inter_ok,
                           "decomposition": decomp_ok})
    ok = all(d["sum"] and d["intersection"] and d["decomposition"] for d in per_degree)
    return {"ok": ok, "degrees": per_degree}


def reversal_check(P: FinitePoset, a: Iterable[str], b: Iterable[str], D: int = 4, char: int = 0) -> bool:
    """For ``a <= b`` every graded piece of ``I_b`` lies in that of ``I_a``."""
    a, b = frozenset(a), frozenset(b)
    pieces = GradedPieces(stanley_ideal(P).degrees)
    Ia, Ib = stanley_ideal(P, a), stanley_ideal(P, b)
    for k in range(D + 1):
        Sa = pieces.span(Ia, k, char)
        if not all(Sa.contains(r) for r in pieces.rows(Ib, k)):
            return False
    return True


# -- invariant rings -------------------------------------------------------------

def invariant_dimensions(P: FinitePoset, group: Sequence[dict[str, str]], D: int = 4) -> list[int]:
    """``dim (S/I_P)_k^G`` in characteristic 0 for ``k <= D``: the Reynolds
    operator maps the ideal onto its invariants, so the answer is the number of
    monomial orbits minus the rank of the averaged ideal rows."""
    _check_degree(D)
    pres = stanley_ideal(P)
    vidx = {v: i for i, v in enumerate(pres.variables)}
    perms = [[vidx[g[v]] for v in pres.variables] for g in group]
    pieces = GradedPieces(pres.degrees)
    out = []
    for k in range(D + 1):
        monos = pieces.monomials(k)
        orbit_of: dict[int, int] = {}
        orbit_size: list[int] = []
        idx = pieces.index(k)
        for i, m in enumerate(monos):
            if i in orbit_of:
                continue
            orb = {idx[tuple(sorted(g[j] for j in m))] for g in perms}
            for o in orb:
                orbit_of[o] = len(orbit_size)
            orbit_size.append(len(orb))
        ech = Echelon(0)
        for row in pieces.rows(pres, k):
            avg: dict[int, Fraction] = {}
            for c, v in row.items():
                o = orbit_of[c]
                avg[o] = avg.get(o, 0) + Fraction(v, orbit_size[o])
            ech.add({o: v for o, v in avg.items() if v})
        out.append(len(orbit_size) - ech.rank)
    return out


def invariant_hilbert_check(action, D: int = 4) -> dict:
    """Compare invariant dimensions upstairs with the Hilbert function of the
    quotient poset's face ring.  ``action`` is a :class:`~srquotient.action.PosetAction`."""
    ok, witness = action.is_translative()
    if not ok:
        raise NotTranslative(f"not translative: {witness}")
    inv = invariant_dimensions(action.poset, action.group, D)
    quot = hilbert_function(stanley_ideal(action.quotient_poset()), D, 0).values
    return {"ok": inv == quot, "invariant_dimensions": inv, "quotient_hilbert": quot}
