"""Finite permutation-group actions on posets and simplicial complexes:
translativity, quotient posets, decoupled decompositions and the shelling
order of orbit complexes."""
from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

from .errors import (InvalidAction, NoDecompositionSupplied, NotDecoupled,
                     OrderIncomplete, PreconditionsFailed)
from .homology import is_cm_complex, is_cm_poset
from .poset import FinitePoset, SimplicialComplexData, face_poset

DEFAULT_MAX_ORDER = 10 ** 5

Perm = tuple  # images of 0..n-1


def _compose(g: Perm, h: Perm) -> Perm:
    """``g after h``"""
    return tuple(g[i] for i in h)


def generate_group(gens: Sequence[Perm], n: int, max_order: int = DEFAULT_MAX_ORDER) -> list[Perm]:
    """Closure of ``gens`` in breadth-first order, identity first."""
    ident = tuple(range(n))
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                gh = _compose(g, h)
                if gh not in seen:
                    seen.add(gh)
                    order.append(gh)
                    nxt.append(gh)
                    if len(order) > max_order:
                        raise InvalidAction(f"group order exceeds the limit {max_order}")
        frontier = nxt
    return order


class PosetAction:
    def __init__(self, poset: FinitePoset, generators: Iterable[dict[str, str]],
                 max_order: int = DEFAULT_MAX_ORDER):
        self.poset = poset
        els = poset.elements
        idx = poset.index
        self.generators = [dict(g) for g in generators]
        perms = []
        for g in self.generators:
            full = {e: g.get(e, e) for e in els}
            if set(full.values()) != set(els) or any(v not in idx for v in full.values()):
                raise InvalidAction("generator is not a permutation of the elements")
            perm = tuple(idx[full[e]] for e in els)
            cover_set = {(idx[x], idx[y]) for x, y in poset.covers()}
            if {(perm[i], perm[j]) for i, j in cover_set} != cover_set:
                raise InvalidAction("generator does not preserve the cover relation")
            perms.append(perm)
        self._perms = generate_group(perms, len(els), max_order)
        self.group = [{e: els[p[i]] for i, e in enumerate(els)} for p in self._perms]

    @property
    def order(self) -> int:
        return len(self._perms)

    def orbit(self, x: str) -> list[str]:
        i = self.poset.index[x]
        return sorted({self.poset.elements[p[i]] for p in self._perms})

    def orbits(self) -> list[list[str]]:
        seen, out = set(), []
        for e in sorted(self.poset.elements, key=lambda e: (self.poset.rank(e), e)):
            if e not in seen:
                orb = self.orbit(e)
                seen.update(orb)
                out.append(orb)
        return out

    def stabilizer(self, x: str) -> list[int]:
        """Indices (into :attr:`group`) of the elements fixing ``x``."""
        i = self.poset.index[x]
        return [k for k, p in enumerate(self._perms) if p[i] == i]

    def is_translative(self) -> tuple[bool, tuple | None]:
        """``{p, gp}`` bounded above forces ``gp = p``.  Witness:
        ``(p, gp, common upper bound)``."""
        P = self.poset
        for x in sorted(P.elements, key=lambda e: (P.rank(e), e)):
            ux = P.upset(x)
            for y in self.orbit(x):
                if y == x:
                    continue
                common = ux & P.upset(y)
                if common:
                    return False, (x, y, min(common, key=lambda e: (P.rank(e), e)))
        return True, None

    def orbit_label(self, orb: Sequence[str]) -> str:
        return "[" + orb[0] + "]" if len(orb) == 1 else "[" + ",".join(orb) + "]"

    def quotient_poset(self) -> FinitePoset:
        """Orbits, with ``Gp <= Gq`` iff ``gp <= q`` for some ``g``."""
        orbs = self.orbits()
        name = {}
        for orb in orbs:
            lab = self.orbit_label(orb)
            for e in orb:
                name[e] = lab
        pairs = {(name[x], name[y]) for x, y in self.poset.covers()}
        return FinitePoset.from_relations([self.orbit_label(o) for o in orbs], sorted(pairs))

    def simplicial_quotient_check(self) -> dict:
        self.poset.require_simplicial()
        trans, witness = self.is_translative()
        simp, qwit = self.quotient_poset().is_simplicial()
        return {"translative": trans, "quotient_simplicial": simp, "ok": trans == simp,
                "translativity_witness": witness, "quotient_witness": qwit}


def _face_label(f: Iterable[str]) -> str:
    return "{" + ",".join(sorted(f)) + "}"


class ComplexAction:
    def __init__(self, complex: SimplicialComplexData, generators: Iterable[dict[str, str]],
                 decomposition: Sequence[Sequence[dict[str, str]]] | None = None,
                 max_order: int = DEFAULT_MAX_ORDER):
        self.complex = complex
        vs = complex.vertices
        self.vidx = {v: i for i, v in enumerate(vs)}
        self.generators = [dict(g) for g in generators]
        self._gen_perms = [self._perm(g) for g in self.generators]
        facets = set(complex.facets)
        for g in self._gen_perms:
            if {self.apply(g, f) for f in facets} != facets:
                raise InvalidAction("generator does not permute the facets")
        self._perms = generate_group(self._gen_perms, len(vs), max_order)
        self.decomposition = None
        if decomposition is not None:
            self.decomposition = [[self._perm(g) for g in gens] for gens in decomposition]

    def _perm(self, g: dict[str, str]) -> Perm:
        vs = self.complex.vertices
        p = tuple(self.vidx[g.get(v, v)] for v in vs)
        if sorted(p) != list(range(len(vs))):
            raise InvalidAction("generator is not a permutation of the vertices")
        return p

    def apply(self, g: Perm, face: Iterable[str]) -> frozenset[str]:
        vs = self.complex.vertices
        return frozenset(vs[g[self.vidx[v]]] for v in face)

    @property
    def group(self) -> list[Perm]:
        return self._perms

    def is_abelian(self) -> bool:
        return all(_compose(g, h) == _compose(h, g) for g in self._gen_perms for h in self._gen_perms)

    def face_poset_action(self) -> PosetAction:
        P = face_poset(self.complex)
        gens = []
        for g in self._gen_perms:
            gens.append({_face_label(f): _face_label(self.apply(g, f)) for f in self.complex.faces()})
        return PosetAction(P, gens)

    def stabilizer(self, face: Iterable[str], within: Sequence[Perm] | None = None) -> frozenset[Perm]:
        f = frozenset(face)
        return frozenset(g for g in (within or self._perms) if self.apply(g, f) == f)

    def is_translative(self) -> tuple[bool, tuple | None]:
        return self.face_poset_action().is_translative()

    def subgroups(self) -> list[list[Perm]]:
        if self.decomposition is None:
            raise NoDecompositionSupplied("a decomposition H_0..H_d is required")
        n = len(self.complex.vertices)
        return [generate_group(gens, n) for gens in self.decomposition]

    def _facet_ordering(self, sigma: frozenset, subs: list[frozenset]) -> list[str] | None:
        """Vertices ``x_0..x_d`` of ``sigma`` with ``H_i = stab(sigma - x_i)``."""
        verts = sorted(sigma)
        stabs = {x: self.stabilizer(sigma - {x}) for x in verts}
        for perm in permutations(verts):
            if all(stabs[x] == H for x, H in zip(perm, subs)):
                return list(perm)
        return None

    def is_decoupled(self) -> tuple[bool, object]:
        """Translative, ``H = H_0 + ... + H_d`` internally direct with nontrivial
        summands, and every facet admits the stabilizer ordering.  The witness
        is a reason string or the first failing facet."""
        subs_list = self.subgroups()
        cx = self.complex
        if not cx.is_pure():
            return False, "complex is not pure"
        d = cx.dim
        if len(subs_list) != d + 1:
            return False, f"expected {d + 1} summands, got {len(subs_list)}"
        if any(len(H) < 2 for H in subs_list):
            return False, "a summand is trivial"
        ok, w = self.is_translative()
        if not ok:
            return False, f"not translative: {w}"
        group = set(self._perms)
        products = {tuple(range(len(cx.vertices)))}
        for H in subs_list:
            if not set(H) <= group:
                return False, "a summand is not a subgroup of the acting group"
            products = {_compose(a, b) for a in products for b in H}
        size = 1
        for H in subs_list:
            size *= len(H)
        if len(products) != size or products != group:
            return False, "summands do not form an internal direct sum equal to the group"
        subs = [frozenset(H) for H in subs_list]
        for sigma in sorted(cx.facets, key=sorted):
            if self._facet_ordering(sigma, subs) is None:
                return False, tuple(sorted(sigma))
        if d == 0:
            for v in cx.vertices:
                if len(self.stabilizer([v])) != 1:
                    return False, (v,)
        return True, None

    def orbit_complex(self, sigma: Iterable[str]) -> SimplicialComplexData:
        s = frozenset(sigma)
        return SimplicialComplexData.from_facets({self.apply(g, s) for g in self._perms})

    def shelling_order(self, sigma: Iterable[str]) -> list[frozenset[str]]:
        """Facets ``h sigma`` of the orbit complex sorted by the label
        ``(h_0, ..., h_d)`` of ``h = h_0 + ... + h_d``, each ``H_i`` well-ordered
        by its enumeration (identity first), lexicographically."""
        ok, w = self.is_decoupled()
        if not ok:
            raise NotDecoupled(str(w))
        if not self.is_abelian():
            raise NotDecoupled("the acting group is not abelian")
        s = frozenset(sigma)
        if s not in self.complex.facets:
            raise ValueError("sigma must be a facet")
        subs = self.subgroups()
        pos = [{g: k for k, g in enumerate(H)} for H in subs]
        labelled = {}
        for combo in _product_elements(subs):
            h = tuple(range(len(self.complex.vertices)))
            for g in combo:
                h = _compose(g, h)
            key = tuple(pos[i][g] for i, g in enumerate(combo))
            facet = self.apply(h, s)
            if facet not in labelled or key < labelled[facet]:
                labelled[facet] = key
        return sorted(labelled, key=labelled.get)

    def quotient_hcm_check(self) -> dict:
        ok, w = self.is_decoupled()
        if not ok:
            raise PreconditionsFailed(f"action is not decoupled: {w}")
        cm, cw = is_cm_complex(self.complex, 0)
        if not cm:
            raise PreconditionsFailed(f"complex is not Cohen-Macaulay over Q: link of {cw}")
        quotient = self.face_poset_action().quotient_poset()
        qcm, qw = is_cm_poset(quotient.remove_bottom(), 0)
        return {"quotient_elements": len(quotient), "cm": qcm, "witness": qw}


def _product_elements(subs: list[list[Perm]]):
    if not subs:
        yield ()
        return
    for g in subs[0]:
        for rest in _product_elements(subs[1:]):
            yield (g,) + rest


def verify_shelling(sigma: SimplicialComplexData, order: Sequence[Iterable[str]]) -> tuple[bool, tuple | None]:
    """Each facet after the first meets the union of its predecessors in a
    pure codimension-one subcomplex.  Witness: ``(m1, m2)`` failing pair."""
    order = [frozenset(m) for m in order]
    if set(order) != set(sigma.facets) or len(order) != len(sigma.facets):
        raise OrderIncomplete("the order must list every facet exactly once")
    if not sigma.is_pure():
        return False, None
    for k, m2 in enumerate(order):
        earlier = order[:k]
        ridge_vertices = {next(iter(m2 - m3)) for m3 in earlier if len(m2 - m3) == 1}
        for m1 in earlier:
            if not (m2 - m1) & ridge_vertices:
                return False, (tuple(sorted(m1)), tuple(sorted(m2)))
    return True, None
