"""Dense integer polynomials in one and two variables."""
from __future__ import annotations

from itertools import zip_longest
from typing import Iterable, Mapping


class Polynomial1:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of ``t**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def t(cls) -> Polynomial1:
        return cls((0, 1))

    @classmethod
    def const(cls, a: int) -> Polynomial1:
        return cls((a,))

    @classmethod
    def linear(cls, a: int, b: int) -> Polynomial1:
        """``a + b t``"""
        return cls((a, b))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial1.const(other)
        return isinstance(other, Polynomial1) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> Polynomial1:
        return other if isinstance(other, Polynomial1) else Polynomial1.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial1(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial1(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial1()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial1(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial1.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        """Evaluate at a number or compose with another polynomial (Horner)."""
        acc = Polynomial1() if isinstance(x, Polynomial1) else 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(a) == 1:
                s = mono
            else:
                s = f"{abs(a)}{'*' if mono else ''}{mono}"
            terms.append(("-" if a < 0 else "+", s))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {sg} {s}" for sg, s in terms[1:])


class Polynomial2:
    """Integer polynomial in ``x, y`` stored sparsely as ``{(i, j): coeff}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, a: int):
        return cls({(0, 0): a})

    def _coerce(self, other):
        return other if isinstance(other, Polynomial2) else Polynomial2.const(other)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial2.const(other)
        return isinstance(other, Polynomial2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Polynomial2(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial2({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + a * b
        return Polynomial2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial2.const(1)
        for _ in range(n):
            out = out * self
        return out

    def coeff(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __call__(self, x, y):
        """Evaluate at numbers, or at :class:`Polynomial1` arguments."""
        poly = isinstance(x, Polynomial1) or isinstance(y, Polynomial1)
        acc = Polynomial1() if poly else 0
        for (i, j), a in self.terms.items():
            acc = acc + a * (x ** i) * (y ** j)
        return acc

    def to_list(self) -> list[list[int]]:
        """Sorted ``[i, j, coeff]`` triples."""
        return [[i, j, c] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_list(cls, triples) -> Polynomial2:
        return cls({(int(i), int(j)): int(c) for i, j, c in triples})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0] - kv[0][1], -kv[0][0])):
            mono = "*".join(m for m in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}")) if m)
            body = mono if mono and abs(c) == 1 else (f"{abs(c)}*{mono}" if mono else str(abs(c)))
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {sg} {b}" for sg, b in parts[1:])
