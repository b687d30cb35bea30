"""Reduced simplicial homology over Z and prime fields, and Cohen-Macaulay
verifiers for complexes and posets.

Boundary maps are reduced once over the integers: unit pivots are eliminated
sparsely, the remaining core goes through a dense Smith form.  Field ranks
then follow from the universal coefficient theorem.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .intlat import IntMatrix, smith_divisors
from .poset import FinitePoset, SimplicialComplexData


@dataclass
class ChainComplexData:
    """Augmented chain complex.  ``faces[k]`` lists the cells of dimension
    ``k`` (``faces[-1]`` is the single empty cell); ``boundaries[k]`` is the
    sparse matrix of ``d_k : C_k -> C_{k-1}``, one ``{col: coeff}`` dict per
    ``k``-cell."""
    faces: dict[int, list] = field(default_factory=dict)
    boundaries: dict[int, list[dict[int, int]]] = field(default_factory=dict)

    @property
    def top_dim(self) -> int:
        return max(self.faces)

    def boundary_matrix(self, k: int) -> IntMatrix:
        """Dense ``|C_{k-1}| x |C_k|`` matrix of ``d_k``."""
        rows, cols = len(self.faces.get(k - 1, [])), len(self.faces.get(k, []))
        M = [[0] * cols for _ in range(rows)]
        for j, col in enumerate(self.boundaries.get(k, [])):
            for i, v in col.items():
                M[i][j] = v
        return IntMatrix.from_rows(M, cols)

    def check_dd_zero(self) -> bool:
        for k in self.boundaries:
            if k - 1 not in self.boundaries:
                continue
            lower = self.boundaries[k - 1]
            for col in self.boundaries[k]:
                acc: dict[int, int] = {}
                for i, v in col.items():
                    for r, w in lower[i].items():
                        acc[r] = acc.get(r, 0) + v * w
                if any(acc.values()):
                    return False
        return True


@dataclass
class HomologyResult:
    """Reduced homology; ``groups[k] = (rank, torsion divisors)``.  For a field
    of characteristic ``p > 0`` only ranks are meaningful and torsion is empty."""
    groups: dict[int, tuple[int, list[int]]]
    characteristic: int | None = None  # None means integral

    def rank(self, k: int) -> int:
        return self.groups.get(k, (0, []))[0]

    def torsion(self, k: int) -> list[int]:
        return self.groups.get(k, (0, []))[1]

    def is_acyclic_through(self, t: int) -> bool:
        return all(self.rank(k) == 0 and not self.torsion(k) for k in self.groups if k <= t)

    def to_dict(self) -> dict:
        return {str(k): {"rank": r, "torsion": list(tors)} for k, (r, tors) in sorted(self.groups.items())}


# -- building chain complexes --------------------------------------------------

def _simplicial_chain_complex(faces_by_dim: dict[int, list[tuple]]) -> ChainComplexData:
    """Standard signs: dropping position ``i`` of a sorted tuple gives ``(-1)^i``."""
    cc = ChainComplexData()
    for k in sorted(faces_by_dim):
        cc.faces[k] = faces_by_dim[k]
    for k in sorted(cc.faces):
        if k < 0:
            continue
        index = {f: i for i, f in enumerate(cc.faces.get(k - 1, []))}
        cols = []
        for f in cc.faces[k]:
            col = {}
            for i in range(len(f)):
                col[index[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
            cols.append(col)
        cc.boundaries[k] = cols
    return cc


def chain_complex(sigma: SimplicialComplexData) -> ChainComplexData:
    """Augmented chain complex with vertices in lexicographic order."""
    by_dim: dict[int, list[tuple]] = {k: [] for k in range(-1, sigma.dim + 1)}
    for f in sigma.faces():
        by_dim[len(f) - 1].append(tuple(sorted(f)))
    for k in by_dim:
        by_dim[k].sort()
    return _simplicial_chain_complex(by_dim)


def order_chain_complex(P: FinitePoset) -> ChainComplexData:
    """Chain complex of the order complex of ``P``, built from chains directly
    (vertices within a chain ordered by the poset)."""
    pos = {e: i for i, e in enumerate(P.topological())}
    by_dim: dict[int, list[tuple]] = {k: [] for k in range(-1, P.length + 1)}
    by_dim[-1].append(())
    for c in P.chains():
        by_dim[len(c) - 1].append(tuple(pos[e] for e in c))
    for k in by_dim:
        by_dim[k].sort()
    return _simplicial_chain_complex(by_dim)


def cellular_chain_complex(P: FinitePoset) -> ChainComplexData:
    """Cellular chains of a simplicial poset (``P`` itself is the face poset of
    a regular CW complex of simplices).  Cells are the elements, ``x`` has
    dimension ``rk(x) - 1``; the sign of ``y < x`` is ``(-1)^i`` where ``i`` is
    the position, among the atoms below ``x``, of the atom not below ``y``."""
    P.require_simplicial()
    order = sorted(P.elements, key=lambda e: (P.rank(e), e))
    atom_pos = {a: i for i, a in enumerate(P.elements_of_rank(1))}
    cc = ChainComplexData()
    for k in range(-1, P.length):
        cc.faces[k] = [e for e in order if P.rank(e) == k + 1]
    index = {e: i for k in cc.faces for i, e in enumerate(cc.faces[k])}
    atoms = {e: sorted((a for a in P.downset(e) if P.rank(a) == 1), key=atom_pos.get)
             for e in P.elements}
    for k in range(0, P.length):
        cols = []
        for e in cc.faces[k]:
            ae = atoms[e]
            col = {}
            for y in P.lower_covers(e):
                missing = next(i for i, a in enumerate(ae) if a not in set(atoms[y]))
                col[index[y]] = -1 if missing % 2 else 1
            cols.append(col)
        cc.boundaries[k] = cols
    return cc


# -- integral reduction ------------------------------------------------------

def sparse_invariants(columns: Sequence[dict[int, int]]) -> tuple[int, list[int]]:
    """Rank and nontrivial invariant factors (> 1) of a sparse integer matrix
    given as a list of ``{row: value}`` columns."""
    vecs = [dict(c) for c in columns if c]
    where: dict[int, set[int]] = {}
    for j, v in enumerate(vecs):
        for i in v:
            where.setdefault(i, set()).add(j)
    alive = set(range(len(vecs)))
    rank = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(alive, key=lambda j: len(vecs[j])):
            if j not in alive:
                continue
            v = vecs[j]
            if not v:
                alive.discard(j)
                continue
            units = [i for i, a in v.items() if a in (1, -1)]
            if not units:
                continue
            piv = min(units, key=lambda i: (len(where[i]), i))
            a = v[piv]
            for j2 in list(where[piv]):
                if j2 == j:
                    continue
                w = vecs[j2]
                q = w[piv] * a  # a is a unit so w - q*a*v clears the entry
                for i, b in v.items():
                    nb = w.get(i, 0) - q * b
                    if nb:
                        if i not in w:
                            where.setdefault(i, set()).add(j2)
                        w[i] = nb
                    elif i in w:
                        del w[i]
                        where[i].discard(j2)
            for i in v:
                where[i].discard(j)
            alive.discard(j)
            vecs[j] = {}
            rank += 1
            progress = True
    core = [vecs[j] for j in sorted(alive) if vecs[j]]
    if not core:
        return rank, []
    rows = sorted({i for v in core for i in v})
    ri = {r: k for k, r in enumerate(rows)}
    dense = [[0] * len(core) for _ in rows]
    for j, v in enumerate(core):
        for i, a in v.items():
            dense[ri[i]][j] = a
    divs = smith_divisors(dense)
    return rank + len(divs), [d for d in divs if d > 1]


def _reduce_all(cc: ChainComplexData) -> dict[int, tuple[int, list[int]]]:
    return {k: sparse_invariants(cols) for k, cols in cc.boundaries.items()}


def _homology_from_invariants(cc: ChainComplexData, inv, characteristic: int | None) -> HomologyResult:
    groups = {}
    for k in sorted(cc.faces):
        n = len(cc.faces[k])
        r_out, div_out = inv.get(k, (0, []))
        r_in, div_in = inv.get(k + 1, (0, []))
        free = n - r_out - r_in
        if characteristic is None:
            groups[k] = (free, list(div_in))
        elif characteristic == 0:
            groups[k] = (free, [])
        else:
            p = characteristic
            extra = sum(1 for d in div_in if d % p == 0) + sum(1 for d in div_out if d % p == 0)
            groups[k] = (free + extra, [])
    return HomologyResult(groups, characteristic)


def homology_of_chain_complex(cc: ChainComplexData, characteristic: int | None = None) -> HomologyResult:
    return _homology_from_invariants(cc, _reduce_all(cc), characteristic)


def homology_integral(sigma: SimplicialComplexData) -> HomologyResult:
    return homology_of_chain_complex(chain_complex(sigma))


def homology_all(cc: ChainComplexData, chars: Iterable[int]) -> dict:
    """Integral homology plus field ranks for each requested characteristic,
    from a single integral reduction."""
    inv = _reduce_all(cc)
    out = {"Z": _homology_from_invariants(cc, inv, None)}
    for c in chars:
        out[c] = _homology_from_invariants(cc, inv, c)
    return out


def betti(sigma: SimplicialComplexData, char: int = 0) -> dict[int, int]:
    """Reduced Betti numbers ``{k: rank}`` for ``k = -1 .. dim``."""
    res = homology_of_chain_complex(chain_complex(sigma), char)
    return {k: r for k, (r, _) in res.groups.items()}


def poset_homology(P: FinitePoset, characteristic: int | None = None) -> HomologyResult:
    """Reduced homology of the order complex of ``P``."""
    return homology_of_chain_complex(order_chain_complex(P), characteristic)


def simplicial_poset_homology(P: FinitePoset, characteristic: int | None = None) -> HomologyResult:
    """Reduced homology of the order complex of ``P`` minus its minimum, for a
    simplicial poset ``P``, via cellular chains (the order complex of the proper
    upper part is the barycentric subdivision of the cell complex)."""
    return homology_of_chain_complex(cellular_chain_complex(P), characteristic)


# -- Cohen-Macaulay checks ----------------------------------------------------

@dataclass
class CMReport:
    characteristic: int
    cm: bool
    witness: object = None

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {"characteristic": self.characteristic, "cm": self.cm, "witness": w}


def _acyclic_through(res: HomologyResult, t: int) -> bool:
    return all(r == 0 for k, (r, _) in res.groups.items() if k <= t)


def cm_scan_poset(P: FinitePoset, chars: Sequence[int]) -> dict[int, CMReport]:
    """Check every open interval ``(x, y)`` of the bounded extension of ``P``;
    an interval of length ``l`` must be ``(l-1)``-acyclic.  One integral
    reduction per interval serves all characteristics."""
    Ph = P.bounded_extension()
    bot, top = Ph.minimal()[0], Ph.maximal()[0]
    label = {bot: "0^", top: "1^"}
    order = sorted(Ph.elements, key=lambda e: (Ph.rank(e), e not in label, e))
    reports = {c: CMReport(c, True) for c in chars}
    pending = set(chars)
    for x in order:
        ups = Ph.upset(x)
        for y in order:
            if y == x or y not in ups or not pending:
                continue
            if Ph.rank(y) - Ph.rank(x) < 3:
                # open intervals of length <= 0 are (-1)-acyclic iff nonempty,
                # which holds whenever x < y is not a cover
                continue
            inner = Ph.interval(x, y, open=True)
            ell = inner.length
            if ell < 1:
                continue
            res = homology_all(order_chain_complex(inner), [c for c in pending])
            for c in list(pending):
                if not _acyclic_through(res[c], ell - 1):
                    reports[c] = CMReport(c, False, (label.get(x, x), label.get(y, y)))
                    pending.discard(c)
    return reports


def is_cm_poset(P: FinitePoset, char: int = 0) -> tuple[bool, tuple | None]:
    rep = cm_scan_poset(P, [char])[char]
    return rep.cm, rep.witness


def cm_scan_complex(sigma: SimplicialComplexData, chars: Sequence[int]) -> dict[int, CMReport]:
    """Reisner-style check: every link, including the link of the empty face,
    must be acyclic below its top dimension."""
    faces = sorted(sigma.faces(), key=lambda f: (len(f), sorted(f)))
    reports = {c: CMReport(c, True) for c in chars}
    pending = set(chars)
    for s in faces:
        if not pending:
            break
        lk = sigma.link(s)
        if lk.dim < 1:
            continue  # a 0-dimensional link is nonempty, the empty link is trivially fine
        res = homology_all(chain_complex(lk), list(pending))
        for c in list(pending):
            if not _acyclic_through(res[c], lk.dim - 1):
                reports[c] = CMReport(c, False, tuple(sorted(s)))
                pending.discard(c)
    return reports


def is_cm_complex(sigma: SimplicialComplexData, char: int = 0) -> tuple[bool, tuple | None]:
    rep = cm_scan_complex(sigma, [char])[char]
    return rep.cm, rep.witness


def simplex_faces(vertices: Sequence[str]) -> list[tuple[str, ...]]:
    vs = sorted(vertices)
    return [c for k in range(len(vs) + 1) for c in combinations(vs, k)]
