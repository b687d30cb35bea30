"""Exact integer linear algebra: Smith and Hermite forms, kernel lattices,
saturation, lattice indices and the torus components cut out by characters.

Everything here works with Python integers and :class:`fractions.Fraction`;
no floating point is used anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Sequence

from .errors import NotASubgroup

INFINITE = math.inf


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        cols = [list(c) for c in columns]
        return cls.from_rows([[c[i] for c in cols] for i in range(rows)], len(cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows([list(self.col(j)) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ocols = [other.col(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in ocols] for i in range(self.rows)],
            other.cols)

    def select_columns(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix.from_rows([[self[i, j] for j in idx] for i in range(self.rows)], len(idx))

    def select_rows(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix.from_rows([self.row(i) for i in idx], self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.tolist())

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.divisors if x)


@dataclass(frozen=True)
class LatticeBasis:
    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> LatticeBasis:
        """Basis (in Hermite form) of the subgroup generated by arbitrary vectors."""
        hnf = hermite_normal_form([list(v) for v in vectors], ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in hnf))

    @classmethod
    def standard(cls, d: int) -> LatticeBasis:
        return cls(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def matrix(self) -> IntMatrix:
        """Generators as the columns of a ``ambient_dim x rank`` matrix."""
        return IntMatrix.from_columns(self.generators, self.ambient_dim)


# -- elementary helpers ------------------------------------------------------

def bareiss_det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def hermite_normal_form(vectors: list[list[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    M = [list(v) for v in vectors if any(v)]
    r = 0
    for c in range(ncols):
        if r >= len(M):
            break
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(M[i][c]), i))
            M[r], M[i0] = M[i0], M[r]
            others = [i for i in range(r + 1, len(M)) if M[i][c]]
            if not others:
                break
            piv = M[r]
            for i in others:
                q = M[i][c] // piv[c]
                M[i] = [a - q * b for a, b in zip(M[i], piv)]
        if M[r][c]:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            piv = M[r]
            for i in range(r):
                q = M[i][c] // piv[c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], piv)]
            r += 1
    return M[:r]


def rational_rank(vectors: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    if not vectors:
        return 0
    if ncols is None:
        ncols = len(vectors[0])
    return len(hermite_normal_form([list(v) for v in vectors], ncols))


def _snf_core(M: list[list[int]], U: list[list[int]] | None, V: list[list[int]] | None) -> list[int]:
    m = len(M)
    n = len(M[0]) if m else 0

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in M:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                a = Mi[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        clean = False
            if not clean:
                cand = [(abs(M[i][t]), 0, i) for i in range(t + 1, m) if M[i][t]]
                cand += [(abs(M[t][j]), 1, j) for j in range(t + 1, n) if M[t][j]]
                _, kind, k = min(cand)
                if kind == 0:
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            piv = M[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
    return [M[i][i] for i in range(min(m, n))]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """``U @ A @ V == diag(divisors)`` with ``U``, ``V`` unimodular.

    Pivoting always takes the smallest nonzero entry in the remaining block,
    first in row-major order, so the output is deterministic.
    """
    M = A.tolist()
    U = IntMatrix.identity(A.rows).tolist()
    V = IntMatrix.identity(A.cols).tolist()
    divisors = _snf_core(M, U, V) if A.rows and A.cols else []
    return SmithDecomposition(IntMatrix.from_rows(U, A.rows),
                              IntMatrix.from_rows(V, A.cols), tuple(divisors))


def smith_divisors(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors only, without tracking transforms."""
    if not rows or not rows[0]:
        return []
    return [x for x in _snf_core([list(r) for r in rows], None, None) if x]


def torsion_order(A: IntMatrix) -> int:
    """Order of the torsion subgroup of ``Z^rows / colspan(A)``."""
    return reduce(lambda a, b: a * b, (x for x in smith_normal_form(A).divisors if x), 1)


def kernel_lattice(A: IntMatrix) -> LatticeBasis:
    """Basis of ``{x in Z^cols : A x = 0}``, normalized to Hermite form."""
    snf = smith_normal_form(A)
    r = snf.rank
    gens = [list(snf.V.col(j)) for j in range(r, A.cols)]
    return LatticeBasis.spanned_by(A.cols, gens)


def saturate(L: LatticeBasis) -> LatticeBasis:
    d = L.ambient_dim
    if L.rank == 0:
        return L
    annihilator = kernel_lattice(IntMatrix.from_rows(L.generators, d))
    if annihilator.rank == 0:
        return LatticeBasis.standard(d)
    return kernel_lattice(IntMatrix.from_rows(annihilator.generators, d))


def solve_in_lattice(M: IntMatrix, v: Sequence[int], snf: SmithDecomposition | None = None):
    """Integer coordinates ``c`` with ``M c = v``, or ``None`` if ``v`` is not in
    the column lattice of ``M``."""
    snf = snf or smith_normal_form(M)
    z = [sum(a * b for a, b in zip(snf.U.row(i), v)) for i in range(M.rows)]
    y = [0] * M.cols
    for i in range(M.rows):
        di = snf.divisors[i] if i < len(snf.divisors) else 0
        if di == 0:
            if z[i] != 0:
                return None
        else:
            if z[i] % di:
                return None
            y[i] = z[i] // di
    return [sum(a * b for a, b in zip(snf.V.row(i), y)) for i in range(M.cols)]


def lattice_index(sub: LatticeBasis, ambient: LatticeBasis) -> int | float:
    """``[<ambient> : <sub>]``, or :data:`INFINITE` when the ranks differ."""
    if sub.ambient_dim != ambient.ambient_dim:
        raise ValueError("lattices live in different ambient spaces")
    M = ambient.matrix()
    snf = smith_normal_form(M)
    coords = []
    for g in sub.generators:
        c = solve_in_lattice(M, g, snf)
        if c is None:
            raise NotASubgroup(f"{g} is not in the ambient lattice")
        coords.append(c)
    if sub.rank != ambient.rank:
        return INFINITE
    if sub.rank == 0:
        return 1
    return abs(bareiss_det(coords))


# -- torus components --------------------------------------------------------

class ComponentReducer:
    """Canonical representatives for the components of
    ``{x in (R/Z)^d : a.x in Z for every row a of A}``.

    Two solutions lie in the same component iff they differ by an element of
    ``Z^d + ker_R(A)``.  The representative zeroes the pivot coordinates of the
    (Hermite-normalized) kernel lattice and reduces the remaining coordinates
    modulo the projected integer lattice; it lies in ``[0, 1)^d``.
    """

    def __init__(self, A: IntMatrix):
        self.d = A.cols
        d = self.d
        K = kernel_lattice(A).generators if A.rows else LatticeBasis.standard(d).generators
        self.kernel = [list(k) for k in K]
        self.pivots = [next(j for j, x in enumerate(k) if x) for k in self.kernel]
        self.free = [j for j in range(d) if j not in set(self.pivots)]
        images = [self._project([Fraction(int(i == j)) for i in range(d)]) for j in range(d)]
        images = [[w[j] for j in self.free] for w in images]
        den = reduce(math.lcm, (x.denominator for w in images for x in w), 1)
        hnf = hermite_normal_form([[int(x * den) for x in w] for w in images], len(self.free))
        self.lattice = [[Fraction(x, den) for x in row] for row in hnf]

    def _project(self, v: list[Fraction]) -> list[Fraction]:
        v = list(v)
        for k, p in zip(self.kernel, self.pivots):
            if v[p]:
                c = v[p] / k[p]
                v = [a - c * b for a, b in zip(v, k)]
        return v

    def canonical(self, v: Sequence) -> tuple[Fraction, ...]:
        w = self._project([Fraction(x) for x in v])
        f = [w[j] for j in self.free]
        for i, row in enumerate(self.lattice):
            q = math.floor(f[i] / row[i])
            if q:
                f = [a - q * b for a, b in zip(f, row)]
        out = [Fraction(0)] * self.d
        for j, x in zip(self.free, f):
            out[j] = x
        return tuple(out)


def component_representatives(A: IntMatrix) -> list[tuple[Fraction, ...]]:
    """One canonical point per component of ``{x : A x in Z^rows}`` in the
    torus ``(R/Z)^cols``; the zero vector is always first."""
    d = A.cols
    if A.rows == 0 or A.is_zero():
        return [tuple(Fraction(0) for _ in range(d))]
    snf = smith_normal_form(A)
    nz = [x for x in snf.divisors if x]
    reducer = ComponentReducer(A)
    reps = set()
    for y in product(*(range(x) for x in nz)):
        yy = [Fraction(k, dk) for k, dk in zip(y, nz)] + [Fraction(0)] * (d - len(nz))
        x = [sum(snf.V[i, j] * yy[j] for j in range(d)) for i in range(d)]
        reps.add(reducer.canonical(x))
    return sorted(reps)


def same_component(A: IntMatrix, v: Sequence, w: Sequence) -> bool:
    """Whether solutions ``v`` and ``w`` of ``A x in Z^rows`` lie in the same
    torus component: ``A (w - v)`` must lie in the lattice ``A Z^cols``."""
    diff = [Fraction(b) - Fraction(a) for a, b in zip(v, w)]
    u = [sum(A[i, j] * diff[j] for j in range(A.cols)) for i in range(A.rows)]
    if any(x.denominator != 1 for x in u):
        raise ValueError("arguments are not solutions of the character system")
    return solve_in_lattice(A, [int(x) for x in u]) is not None
