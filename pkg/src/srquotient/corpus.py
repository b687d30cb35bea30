"""Seeded generators of test instances: arrangements, graded posets,
simplicial posets, group actions and decoupled complexes.

Everything takes a :class:`random.Random` so corpora are reproducible.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .action import ComplexAction, PosetAction, generate_group
from .arrangement import Arrangement, ArrangementSpec
from .intlat import IntMatrix, rational_rank
from .poset import FinitePoset, SimplicialComplexData, face_poset


# -- arrangements ----------------------------------------------------------------

def random_arrangement(rng: random.Random, d: int, n: int, p: int = 1, lo: int = -3, hi: int = 3,
                       max_tries: int = 1000) -> ArrangementSpec:
    """Essential arrangement with nonzero columns and entries in ``[lo, hi]``."""
    for _ in range(max_tries):
        cols = []
        while len(cols) < n:
            c = tuple(rng.randint(lo, hi) for _ in range(d))
            if any(c):
                cols.append(c)
        if rational_rank(cols, d) == d:
            return ArrangementSpec(d, IntMatrix.from_columns(cols, d), p)
    raise RuntimeError("could not draw an essential arrangement")


def arrangement_size(spec: ArrangementSpec) -> int:
    """Element count of the independence poset, without building it.  Every
    layer is a component over an independent set, so this also bounds the
    number of layers."""
    arr = Arrangement(spec)
    return sum(arr.multiplicity(I) for I in arr.independent_sets())


def arrangement_corpus(seed: int = 2024, count: int = 30, max_elements: int = 1500) -> list[ArrangementSpec]:
    """Arrangements with ``d <= 3``, ``n <= 5``, entries in ``[-3, 3]`` and
    ``p in {1, 2}``, kept only while both posets stay below ``max_elements``."""
    rng = random.Random(seed)
    out = []
    shapes = [(d, n, p) for p in (1, 2) for d in (1, 2, 3) for n in range(d, 6)]
    while len(out) < count:
        d, n, p = shapes[len(out) % len(shapes)]
        spec = random_arrangement(rng, d, n, p)
        if arrangement_size(spec) <= max_elements:
            out.append(spec)
    return out


# -- posets ----------------------------------------------------------------------

def random_graded_poset(rng: random.Random, max_length: int = 4, max_width: int = 4,
                        bounded_above: bool | None = None) -> FinitePoset:
    """Bounded-below graded poset of length at most ``max_length``, built level
    by level; every element covers at least one element of the previous level.
    ``bounded_above=None`` adds a maximum at random."""
    if bounded_above is None:
        bounded_above = max_length >= 2 and rng.random() < 0.5
    length = rng.randint(2 if bounded_above else 1, max(max_length, 1))
    levels = [["0"]]
    covers = []
    for k in range(1, length + 1):
        top_level = bounded_above and k == length
        width = 1 if top_level else rng.randint(1, max_width)
        level = ["top"] if top_level else [f"r{k}e{i}" for i in range(width)]
        for e in level:
            below = levels[-1]
            chosen = below if top_level else rng.sample(below, rng.randint(1, len(below)))
            covers += [(b, e) for b in chosen]
        levels.append(level)
    return FinitePoset([e for lv in levels for e in lv], covers)


def random_simplicial_poset(rng: random.Random, vertices: int = 3, edges: int = 4, triangles: int = 2,
                            multi: bool = True) -> FinitePoset:
    """Cells glued along their boundaries: edges may be parallel, triangles may
    share all three edges, so the result need not be a simplicial complex."""
    vs = [f"v{i}" for i in range(vertices)]
    covers = [("0", v) for v in vs]
    elems = ["0"] + vs
    edge_of: dict[frozenset, list[str]] = {}
    pairs = list(combinations(vs, 2))
    for k in range(edges if pairs else 0):
        a, b = rng.choice(pairs)
        key = frozenset((a, b))
        if edge_of.get(key) and not multi:
            continue
        name = f"e{k}"
        edge_of.setdefault(key, []).append(name)
        elems.append(name)
        covers += [(a, name), (b, name)]
    tris = [t for t in combinations(vs, 3) if all(edge_of.get(frozenset(pr)) for pr in combinations(t, 2))]
    used = set()
    for k in range(triangles if tris else 0):
        t = rng.choice(tris)
        bnd = tuple(rng.choice(edge_of[frozenset(pr)]) for pr in combinations(t, 2))
        if bnd in used and not multi:
            continue
        used.add(bnd)
        name = f"t{k}"
        elems.append(name)
        covers += [(e, name) for e in bnd]
    return FinitePoset(elems, covers)


def all_complexes(n_vertices: int) -> Iterator[SimplicialComplexData]:
    """Every simplicial complex on vertex set ``{0..n-1}`` with all vertices
    used, up to the symmetric group (canonical form by brute force)."""
    from itertools import permutations
    vs = [str(i) for i in range(n_vertices)]
    candidates = [frozenset(c) for k in range(2, n_vertices + 1) for c in combinations(vs, k)]
    seen = set()

    def canon(facets):
        best = None
        for perm in permutations(range(n_vertices)):
            m = {v: str(perm[i]) for i, v in enumerate(vs)}
            form = tuple(sorted(tuple(sorted(m[v] for v in f)) for f in facets))
            if best is None or form < best:
                best = form
        return best

    def rec(i, faces):
        if i == len(candidates):
            cx = SimplicialComplexData.from_facets(list(faces), vs)
            key = canon(cx.facets)
            if key not in seen:
                seen.add(key)
                yield cx
            return
        c = candidates[i]
        # faces are added by increasing size, so c is admissible once all of
        # its codimension-one faces (of size >= 2) are present
        if len(c) == 2 or all(c - {v} in faces for v in c):
            yield from rec(i + 1, faces | {c})
        yield from rec(i + 1, faces)

    yield from rec(0, frozenset())


# -- automorphisms and actions ---------------------------------------------------

def automorphisms(P: FinitePoset, limit: int = 2000) -> list[dict[str, str]]:
    """Automorphisms by backtracking over elements in rank order."""
    order = sorted(P.elements, key=lambda e: (P.rank(e), e))
    sig = {e: (P.rank(e), len(P.lower_covers(e)), len(P.upper_covers(e))) for e in P.elements}
    lower = {e: set(P.lower_covers(e)) for e in P.elements}
    out: list[dict[str, str]] = []

    def rec(i, m, used):
        if len(out) >= limit:
            return
        if i == len(order):
            out.append(dict(m))
            return
        x = order[i]
        for y in order:
            if y in used or sig[y] != sig[x]:
                continue
            # lower covers are already mapped (rank order); they must land on y's
            if {m[z] for z in lower[x]} != lower[y]:
                continue
            m[x] = y
            used.add(y)
            rec(i + 1, m, used)
            used.discard(y)
            del m[x]

    rec(0, {}, set())
    return out


def glued_copies(Q: FinitePoset, shared: set[str], k: int) -> tuple[FinitePoset, dict[str, str]]:
    """``k`` copies of ``Q`` glued along the order ideal ``shared``; returns
    the poset and the generator cycling the copies."""
    def name(e, i):
        return e if e in shared else f"{e}#{i}"

    elems = list(dict.fromkeys(name(e, i) for i in range(k) for e in Q.elements))
    covers = list(dict.fromkeys((name(x, i), name(y, i)) for i in range(k) for x, y in Q.covers()))
    cyc = {name(e, i): name(e, (i + 1) % k) for i in range(k) for e in Q.elements}
    return FinitePoset(elems, covers), cyc


def _lift(auto: dict[str, str], shared: set[str], k: int) -> dict[str, str]:
    out = {}
    for e, f in auto.items():
        if e in shared:
            out[e] = f
        else:
            for i in range(k):
                out[f"{e}#{i}"] = f if f in shared else f"{f}#{i}"
    return out


def random_action(rng: random.Random, max_order: int = 8, max_elements: int = 20,
                  translative_only: bool = False) -> PosetAction:
    """Copies of a small random simplicial poset glued along a random order
    ideal, acted on by the copy rotation and/or a lifted automorphism."""
    while True:
        nv = rng.randint(2, 4)
        Q = random_simplicial_poset(rng, nv, rng.randint(1, 4), rng.randint(0, 2))
        ideal = {Q.bottom}
        for v in Q.elements_of_rank(1):
            if rng.random() < 0.5:
                ideal.add(v)
        for e in Q.elements_of_rank(2):
            if set(Q.lower_covers(e)) <= ideal and rng.random() < 0.3:
                ideal.add(e)
        k = rng.randint(1, 4)
        if len(ideal) + k * (len(Q) - len(ideal)) > max_elements:
            continue
        P, cyc = glued_copies(Q, ideal, k)
        gens = [cyc] if k > 1 else []
        autos = [a for a in automorphisms(Q, 200) if all(a[x] in ideal for x in ideal)]
        autos = [a for a in autos if any(a[x] != x for x in a)]
        if autos and (not gens or rng.random() < 0.6):
            gens.append(_lift(rng.choice(autos), ideal, k))
        if not gens:
            continue
        try:
            act = PosetAction(P, gens, max_order=max_order)
        except Exception:
            continue
        if translative_only and not act.is_translative()[0]:
            continue
        return act


def polygon_rotation(n: int, shift: int) -> PosetAction:
    cx = SimplicialComplexData.from_facets([[f"v{i}", f"v{(i + 1) % n}"] for i in range(n)])
    return ComplexAction(cx, [{f"v{i}": f"v{(i + shift) % n}" for i in range(n)}]).face_poset_action()


# -- decoupled complexes ---------------------------------------------------------

def _regular_gens(sizes: list[int], prefix: str) -> tuple[list[str], list[dict[str, str]]]:
    """Regular action of ``Z/s_1 x ... x Z/s_r`` on its own elements."""
    from itertools import product
    elems = list(product(*(range(s) for s in sizes)))
    names = [prefix + "".join(map(str, e)) for e in elems]
    gens = []
    for j, s in enumerate(sizes):
        g = {}
        for e, nm in zip(elems, names):
            f = list(e)
            f[j] = (f[j] + 1) % s
            g[nm] = prefix + "".join(map(str, f))
        gens.append(g)
    return names, gens


def decoupled_join(factor_sizes: list[list[int]]) -> tuple[ComplexAction, list[str]]:
    """Join of torsors ``V_i`` for ``H_i = Z/s_1 x ...``; ``H = sum H_i`` acts
    factorwise.  Returns the action and a base facet."""
    parts = []
    all_gens: list[list[dict[str, str]]] = []
    for i, sizes in enumerate(factor_sizes):
        names, gens = _regular_gens(sizes, f"x{i}_")
        parts.append(names)
        all_gens.append(gens)
    from itertools import product
    cx = SimplicialComplexData.from_facets([list(f) for f in product(*parts)])
    flat = [g for gens in all_gens for g in gens]
    act = ComplexAction(cx, flat, decomposition=all_gens)
    return act, [names[0] for names in parts]


def decoupled_corpus(seed: int = 7, count: int = 12) -> list[tuple[ComplexAction, list[str]]]:
    rng = random.Random(seed)
    out = []
    choices = [[2], [3], [4], [2, 2]]
    while len(out) < count:
        d = rng.randint(0, 2)
        sizes = [rng.choice(choices) for _ in range(d + 1)]
        total = 1
        for s in sizes:
            for x in s:
                total *= x
        if total > 64:
            continue
        out.append(decoupled_join(sizes))
    return out


def group_order(gens, n) -> int:
    return len(generate_group(gens, n))
