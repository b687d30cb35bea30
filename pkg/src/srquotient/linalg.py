"""Sparse exact row reduction over Q or a prime field."""
from __future__ import annotations

import heapq
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of ``K^N``.

    Rows are ``{column: value}`` dicts; each stored row has leading (smallest)
    column equal to its pivot.  ``char = p`` works in ``F_p`` with leading
    coefficient 1.  ``char = 0`` works over ``Q`` but stores primitive integer
    rows with positive leading coefficient (fraction-free elimination), which
    is exact and much faster than :class:`fractions.Fraction` arithmetic.
    """

    def __init__(self, char: int = 0):
        self.char = char
        self.pivots: dict[int, dict[int, int]] = {}

    def _norm(self, row: dict) -> dict:
        p = self.char
        if p:
            return {c: v % p for c, v in row.items() if v % p}
        row = {c: v for c, v in row.items() if v}
        if all(type(v) is int for v in row.values()):
            return row
        den = reduce(math.lcm, (getattr(v, "denominator", 1) for v in row.values()), 1)
        return {c: int(v * den) for c, v in row.items()}

    def reduce(self, row: dict) -> dict:
        """Remainder of ``row`` after eliminating every pivot column (over
        ``Q`` only up to a nonzero scalar)."""
        row = self._norm(row)
        p = self.char
        pivots = self.pivots
        # pivot rows only reach columns right of their pivot, so a heap of
        # pending pivot columns visits each one in increasing order
        heap = [c for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            f = row.get(c)
            if not f:
                continue
            prow = pivots[c]
            if p:
                scale = 1
            else:
                lead = prow[c]
                g = math.gcd(f, lead)
                scale, f = lead // g, f // g
                if scale != 1:
                    row = {k: v * scale for k, v in row.items()}
            for cc, v in prow.items():
                old = row.get(cc)
                nv = (old or 0) - f * v
                if p:
                    nv %= p
                if nv:
                    if old is None and cc in pivots:
                        heapq.heappush(heap, cc)
                    row[cc] = nv
                elif old is not None:
                    del row[cc]
            if not p and scale != 1 and row:
                g = reduce(math.gcd, row.values())
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True if the rank went up."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        p = self.char
        if p:
            inv = pow(r[c], -1, p)
            self.pivots[c] = {k: (v * inv) % p for k, v in r.items()}
        else:
            g = reduce(math.gcd, r.values())
            if r[c] < 0:
                g = -g
            self.pivots[c] = {k: v // g for k, v in r.items()}
        return True

    def extend(self, rows: Iterable[dict]) -> Echelon:
        for r in rows:
            self.add(r)
        return self

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> Echelon:
        e = Echelon(self.char)
        e.pivots = dict(self.pivots)  # stored rows are never mutated in place
        return e

    def rref(self) -> dict[int, dict]:
        """Reduced form: every pivot column is zero in the other rows."""
        p = self.char
        if p:
            rows = {c: dict(r) for c, r in self.pivots.items()}
        else:
            rows = {c: {k: Fraction(v, r[c]) for k, v in r.items()} for c, r in self.pivots.items()}
        for c in sorted(rows, reverse=True):
            for c2, r2 in rows.items():
                if c2 != c and c in r2:
                    f = r2[c]
                    for k, v in rows[c].items():
                        nv = r2.get(k, 0) - f * v
                        if p:
                            nv %= p
                        if nv:
                            r2[k] = nv
                        else:
                            r2.pop(k, None)
        return rows

    def annihilator(self, ncols: int) -> list[dict]:
        """Basis of ``{y : y . r = 0 for all rows r}`` in ``K^ncols``."""
        rows = self.rref()
        p = self.char
        out = []
        for f in range(ncols):
            if f in rows:
                continue
            y = {f: 1 if p else Fraction(1)}
            for c, r in rows.items():
                v = r.get(f)
                if v:
                    y[c] = (-v) % p if p else -v
            out.append(y)
        return out


def rank_of(rows: Iterable[dict], char: int = 0) -> int:
    return Echelon(char).extend(rows).rank
