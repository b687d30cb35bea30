"""Finite posets given by their Hasse diagram.

Elements are opaque string identifiers; all structure lives in the cover
relation.  Rank is the length of the longest chain in the lower set of an
element, so gradedness is checked rather than assumed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .errors import (CycleDetected, NotBoundedBelow, NotComparable, NotGraded,
                     NotSimplicial, RedundantCover)
from .polys import Polynomial1

TOP = "^1"
BOTTOM = "^0"


@dataclass(frozen=True)
class SimplicialComplexData:
    vertices: tuple[str, ...]
    facets: frozenset[frozenset[str]]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[str]], vertices: Iterable[str] | None = None):
        """Keep inclusion-maximal sets; listed vertices not in any facet become
        isolated points."""
        fs = {frozenset(f) for f in facets}
        if vertices is not None:
            covered = set().union(*fs) if fs else set()
            fs |= {frozenset([v]) for v in vertices if v not in covered}
        fs = {f for f in fs if not any(f < g for g in fs)}
        if not fs:
            fs = {frozenset()}
        vs = set().union(*fs)
        return cls(tuple(sorted(vs)), frozenset(fs))

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def faces(self) -> set[frozenset[str]]:
        out = set()
        for f in self.facets:
            fl = sorted(f)
            for k in range(len(fl) + 1):
                out.update(frozenset(c) for c in combinations(fl, k))
        return out

    def f_vector(self) -> list[int]:
        """``[f_{-1}, f_0, ..., f_dim]``"""
        counts = [0] * (self.dim + 2)
        for s in self.faces():
            counts[len(s)] += 1
        return counts

    def link(self, sigma: Iterable[str]) -> SimplicialComplexData:
        s = frozenset(sigma)
        return SimplicialComplexData.from_facets(f - s for f in self.facets if s <= f)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "facets": sorted(sorted(f) for f in self.facets)}

    @classmethod
    def from_dict(cls, data: dict) -> SimplicialComplexData:
        return cls.from_facets(data["facets"], data.get("vertices"))


class FinitePoset:
    """Immutable finite poset.  Construction checks acyclicity; cover
    irredundancy is checked by :meth:`validate` (and by :meth:`from_dict`)."""

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]]):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate element identifiers")
        n = len(self.elements)
        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for x, y in covers:
            i, j = self.index[x], self.index[y]
            if (i, j) in seen:
                continue
            if i == j:
                raise CycleDetected(f"self-cover at {x}")
            seen.add((i, j))
            up[i].append(j)
            down[j].append(i)
        self._up = [tuple(sorted(u)) for u in up]
        self._down = [tuple(sorted(d)) for d in down]
        indeg = [len(d) for d in self._down]
        queue = deque(i for i in range(n) if indeg[i] == 0)
        order = []
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in self._up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        if len(order) != n:
            stuck = min(self.elements[i] for i in range(n) if indeg[i] > 0)
            raise CycleDetected(f"cover relation has a cycle through {stuck}")
        self._topo = tuple(order)
        rk = [0] * n
        for i in order:
            for j in self._up[i]:
                rk[j] = max(rk[j], rk[i] + 1)
        self._rank = rk
        self._downsets: dict[int, frozenset[int]] = {}
        self._upsets: dict[int, frozenset[int]] = {}
        self._mobius_rows: dict[int, dict[int, int]] = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_order(cls, elements: Sequence[str], leq: Callable[[str, str], bool]) -> FinitePoset:
        """Build from an order predicate by transitive reduction (quadratic)."""
        elements = list(elements)
        covers = []
        for y in elements:
            below = [x for x in elements if x != y and leq(x, y)]
            covers += [(x, y) for x in below
                       if not any(z != x and leq(x, z) for z in below)]
        return cls(elements, covers)

    @classmethod
    def from_relations(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> FinitePoset:
        """Transitive reduction of the order generated by ``pairs``."""
        elements = list(elements)
        tmp = cls(elements, pairs)
        covers = []
        for j in range(len(elements)):
            strict = tmp._downset_idx(j) - {j}
            below_strict = set()
            for i in strict:
                below_strict |= tmp._downset_idx(i) - {i}
            covers += [(elements[i], elements[j]) for i in strict - below_strict]
        return cls(elements, covers)

    def to_dict(self) -> dict:
        return {"elements": list(self.elements),
                "covers": [[self.elements[i], self.elements[j]]
                           for i in range(len(self.elements)) for j in self._up[i]]}

    @classmethod
    def from_dict(cls, data: dict) -> FinitePoset:
        P = cls(data["elements"], [tuple(c) for c in data["covers"]])
        P.check_irredundant()
        return P

    # -- basic structure ----------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"FinitePoset({len(self.elements)} elements, {self.num_covers()} covers)"

    def num_covers(self) -> int:
        return sum(len(u) for u in self._up)

    def covers(self) -> list[tuple[str, str]]:
        return [tuple(c) for c in self.to_dict()["covers"]]

    def upper_covers(self, x: str) -> list[str]:
        return [self.elements[j] for j in self._up[self.index[x]]]

    def lower_covers(self, x: str) -> list[str]:
        return [self.elements[j] for j in self._down[self.index[x]]]

    def topological(self) -> list[str]:
        return [self.elements[i] for i in self._topo]

    def _downset_idx(self, i: int) -> frozenset[int]:
        ds = self._downsets.get(i)
        if ds is None:
            acc = {i}
            for j in self._down[i]:
                acc |= self._downset_idx(j)
            ds = self._downsets[i] = frozenset(acc)
        return ds

    def _upset_idx(self, i: int) -> frozenset[int]:
        us = self._upsets.get(i)
        if us is None:
            acc = {i}
            for j in self._up[i]:
                acc |= self._upset_idx(j)
            us = self._upsets[i] = frozenset(acc)
        return us

    def downset(self, x: str) -> set[str]:
        return {self.elements[i] for i in self._downset_idx(self.index[x])}

    def upset(self, x: str) -> set[str]:
        return {self.elements[i] for i in self._upset_idx(self.index[x])}

    def leq(self, x: str, y: str) -> bool:
        i, j = self.index[x], self.index[y]
        if self._rank[i] > self._rank[j]:
            return False
        return i in self._downset_idx(j)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def rank(self, x: str) -> int:
        return self._rank[self.index[x]]

    @property
    def length(self) -> int:
        return max(self._rank, default=-1)

    def minimal(self) -> list[str]:
        return [self.elements[i] for i in range(len(self.elements)) if not self._down[i]]

    def maximal(self) -> list[str]:
        return [self.elements[i] for i in range(len(self.elements)) if not self._up[i]]

    @property
    def bottom(self) -> str | None:
        m = self.minimal()
        return m[0] if len(m) == 1 else None

    @property
    def top(self) -> str | None:
        m = self.maximal()
        return m[0] if len(m) == 1 else None

    def is_graded(self) -> bool:
        """Every cover raises the rank by exactly one."""
        return all(self._rank[j] == self._rank[i] + 1
                   for i in range(len(self.elements)) for j in self._up[i])

    def elements_of_rank(self, k: int) -> list[str]:
        return [e for e, r in zip(self.elements, self._rank) if r == k]

    def check_irredundant(self):
        for j in range(len(self.elements)):
            lower = self._down[j]
            if len(lower) < 2:
                continue
            for i in lower:
                for k in lower:
                    if k != i and i in self._downset_idx(k):
                        raise RedundantCover(
                            f"cover {self.elements[i]} < {self.elements[j]} is implied "
                            f"via {self.elements[k]}")

    def validate(self) -> dict:
        self.check_irredundant()
        return {
            "elements": len(self.elements),
            "graded": self.is_graded(),
            "length": self.length,
            "bounded_below": self.bottom is not None,
            "bounded_above": self.top is not None,
            "bottom": self.bottom,
            "top": self.top,
        }

    # -- derived posets -----------------------------------------------------

    def subposet(self, keep: Iterable[str]) -> FinitePoset:
        """Induced subposet (covers recomputed)."""
        keep_set = set(keep)
        elems = [e for e in self.elements if e in keep_set]
        idx = [self.index[e] for e in elems]
        pairs = []
        for j in idx:
            below = (self._downset_idx(j) - {j})
            kept_below = [i for i in below if self.elements[i] in keep_set]
            blocked = set()
            for i in kept_below:
                blocked |= {k for k in self._downset_idx(i) if k != i}
            pairs += [(self.elements[i], self.elements[j]) for i in kept_below if i not in blocked]
        return FinitePoset(elems, pairs)

    def interval(self, x: str, y: str, open: bool = False) -> FinitePoset:
        if not self.leq(x, y):
            raise NotComparable(f"{x} is not below {y}")
        i, j = self.index[x], self.index[y]
        members = self._upset_idx(i) & self._downset_idx(j)
        if open:
            members = members - {i, j}
        return self.subposet(self.elements[k] for k in members)

    def open_upper(self, x: str) -> FinitePoset:
        """``P_{>x}``, the open interval ``(x, 1^)`` of the bounded extension."""
        i = self.index[x]
        return self.subposet(self.elements[k] for k in self._upset_idx(i) - {i})

    def open_lower(self, x: str) -> FinitePoset:
        i = self.index[x]
        return self.subposet(self.elements[k] for k in self._downset_idx(i) - {i})

    def _fresh(self, name: str) -> str:
        while name in self.index:
            name = name + "'"
        return name

    def adjoin_top(self, name: str = TOP) -> FinitePoset:
        name = self._fresh(name)
        return FinitePoset(self.elements + (name,),
                           self.covers() + [(m, name) for m in self.maximal()])

    def adjoin_bottom(self, name: str = BOTTOM) -> FinitePoset:
        name = self._fresh(name)
        return FinitePoset((name,) + self.elements,
                           [(name, m) for m in self.minimal()] + self.covers())

    def bounded_extension(self) -> FinitePoset:
        """``P^``: a new bottom and a new top adjoined."""
        return self.adjoin_bottom().adjoin_top()

    def remove_bottom(self) -> FinitePoset:
        """``P`` with its minimum removed (requires a unique minimal element)."""
        b = self.bottom
        if b is None:
            raise NotBoundedBelow("poset has no unique minimal element")
        return self.subposet(e for e in self.elements if e != b)

    def proper_part(self) -> FinitePoset:
        """Remove the minimum and, if present, the maximum."""
        drop = {self.bottom, self.top} - {None}
        return self.subposet(e for e in self.elements if e not in drop)

    # -- simplicial posets -------------------------------------------------

    def is_simplicial(self) -> tuple[bool, str | None]:
        """Unique minimal element and every lower interval Boolean.  On failure
        the witness is the first offending element (by rank, then name)."""
        if len(self.elements) == 0:
            return False, None
        mins = self.minimal()
        if len(mins) != 1:
            return False, sorted(mins)[1]
        atoms_of: dict[int, frozenset[int]] = {}
        order = sorted(range(len(self.elements)), key=lambda i: (self._rank[i], self.elements[i]))
        for i in order:
            ds = self._downset_idx(i)
            atoms = frozenset(k for k in ds if self._rank[k] == 1)
            atoms_of[i] = atoms
            r = self._rank[i]
            ok = len(atoms) == r and len(ds) == 2 ** r
            if ok:
                ok = len({atoms_of[k] for k in ds}) == len(ds)
            if not ok:
                return False, self.elements[i]
        return True, None

    def require_simplicial(self):
        ok, w = self.is_simplicial()
        if not ok:
            raise NotSimplicial(f"lower interval below {w} is not Boolean")

    def f_vector(self) -> list[int]:
        """``[f_{-1}, f_0, ..., f_{d-1}]`` with ``f_i`` the number of rank ``i+1``
        elements."""
        self.require_simplicial()
        counts = [0] * (self.length + 1)
        for r in self._rank:
            counts[r] += 1
        return counts

    def h_polynomial(self) -> Polynomial1:
        f = self.f_vector()
        d = len(f) - 1
        t = Polynomial1.t()
        one_minus_t = Polynomial1.linear(1, -1)
        return sum((f[i] * t ** i * one_minus_t ** (d - i) for i in range(d + 1)), Polynomial1())

    # -- Moebius machinery ---------------------------------------------------

    def _mobius_row(self, i: int) -> dict[int, int]:
        row = self._mobius_rows.get(i)
        if row is None:
            ups = self._upset_idx(i)
            row = {}
            for k in self._topo:
                if k not in ups:
                    continue
                if k == i:
                    row[k] = 1
                    continue
                row[k] = -sum(row[w] for w in self._downset_idx(k) if w != k and w in row)
            self._mobius_rows[i] = row
        return row

    def mobius(self, x: str, y: str) -> int:
        if not self.leq(x, y):
            raise NotComparable(f"{x} is not below {y}")
        return self._mobius_row(self.index[x])[self.index[y]]

    def characteristic_polynomial(self) -> Polynomial1:
        """``sum_x mu(0^, x) t^(d - rk x)`` for a graded bounded-below poset."""
        b = self.bottom
        if b is None:
            raise NotBoundedBelow("characteristic polynomial needs a minimum")
        if not self.is_graded():
            raise NotGraded("characteristic polynomial needs a graded poset")
        d = self.length
        coeffs = [0] * (d + 1)
        for k, m in self._mobius_row(self.index[b]).items():
            coeffs[d - self._rank[k]] += m
        return Polynomial1(coeffs)

    # -- chains and order complex -----------------------------------------

    def chains(self, max_size: int | None = None):
        """Yield every nonempty chain as an increasing tuple of identifiers."""
        n = len(self.elements)
        strict_up = [sorted(self._upset_idx(i) - {i}, key=lambda k: self._rank[k]) for i in range(n)]

        def extend(chain):
            yield tuple(self.elements[k] for k in chain)
            if max_size is not None and len(chain) >= max_size:
                return
            for k in strict_up[chain[-1]]:
                yield from extend(chain + [k])

        for i in self._topo:
            yield from extend([i])

    def maximal_chains(self) -> list[tuple[str, ...]]:
        out = []

        def walk(path):
            i = path[-1]
            if not self._up[i]:
                out.append(tuple(self.elements[k] for k in path))
                return
            for j in self._up[i]:
                walk(path + [j])

        for m in self.minimal():
            walk([self.index[m]])
        return out

    def order_complex(self) -> SimplicialComplexData:
        facets = self.maximal_chains()
        if not facets:
            return SimplicialComplexData((), frozenset([frozenset()]))
        return SimplicialComplexData(tuple(sorted(self.elements)), frozenset(frozenset(c) for c in facets))

    def chain_counts(self) -> list[int]:
        """``c[k]`` = number of chains with ``k+1`` elements (faces of dim ``k``)."""
        n = len(self.elements)
        per: list[list[int]] = [[] for _ in range(n)]
        for i in self._topo:
            acc = [1]
            for w in self._downset_idx(i):
                if w == i:
                    continue
                for s, c in enumerate(per[w]):
                    if s + 1 >= len(acc):
                        acc.append(0)
                    acc[s + 1] += c
            per[i] = acc
        total = [0] * (self.length + 1) if n else []
        for acc in per:
            for s, c in enumerate(acc):
                total[s] += c
        return total

    def reduced_euler(self) -> int:
        """Reduced Euler characteristic of the order complex (``-1`` if empty)."""
        n = len(self.elements)
        g = [0] * n
        for i in self._topo:
            g[i] = 1 - sum(g[w] for w in self._downset_idx(i) if w != i)
        return sum(g) - 1

    def euler_identities_check(self) -> dict:
        """Compare Euler characteristics of the truncations with values of the
        characteristic polynomial."""
        if self.bottom is None:
            raise NotBoundedBelow("Euler identities need a minimum")
        chi = self.characteristic_polynomial()
        eps_check = self.remove_bottom().reduced_euler()
        report = {"eps_without_bottom": eps_check, "minus_chi_at_1": -chi(1),
                  "identity_without_bottom": eps_check == -chi(1)}
        if self.top is not None and len(self.elements) > 1:
            eps_bar = self.proper_part().reduced_euler()
            report.update({"eps_proper_part": eps_bar, "chi_at_0": chi(0),
                           "identity_proper_part": eps_bar == chi(0)})
        report["ok"] = all(v for k, v in report.items() if k.startswith("identity"))
        return report


def boolean_lattice(n: int, names: Sequence[Hashable] | None = None) -> FinitePoset:
    names = list(names) if names is not None else [str(i + 1) for i in range(n)]

    def label(s):
        return "{" + ",".join(str(names[i]) for i in s) + "}"

    elems, covers = [], []
    for k in range(n + 1):
        for s in combinations(range(n), k):
            elems.append(label(s))
            covers += [(label(s), label(tuple(sorted(s + (j,))))) for j in range(n) if j not in s]
    return FinitePoset(elems, covers)


def face_poset(sigma: SimplicialComplexData) -> FinitePoset:
    """Poset of all faces (including the empty face) ordered by inclusion."""
    faces = sorted(sigma.faces(), key=lambda f: (len(f), sorted(f)))

    def label(f):
        return "{" + ",".join(sorted(f)) + "}"

    face_set = set(faces)
    covers = [(label(f - {v}), label(f)) for f in faces for v in f if f - {v} in face_set]
    return FinitePoset([label(f) for f in faces], covers)
