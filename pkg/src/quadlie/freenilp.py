"""Free t-nilpotent Lie algebras on d generators.

The basis is the Hall basis.  Words are ordered by length first; words of
equal length are ordered by their foliage (the sequence of generator
indices read left to right), which reproduces the printed lists

    H_{2,5}: ..., [[[[x2,x1],x1],x1],x1], [[[[x2,x1],x1],x1],x2],
             [[[x2,x1],x1],[x2,x1]], [[[[x2,x1],x1],x2],x2], ...

since their foliages 21111 < 21112 < 21121 < 21122 < ... are increasing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from sympy import divisors, mobius

from .exactlin import as_fraction, row_space
from .lie import StructureTable, Vector

__all__ = [
    "FreeNilpotent",
    "HallWord",
    "LieElement",
    "hall_basis",
    "witt_dimension",
]


@dataclass(frozen=True)
class HallWord:
    """A bracket monomial: either a generator or ``[left, right]``."""

    gen: int | None = None
    left: "HallWord | None" = None
    right: "HallWord | None" = None

    @classmethod
    def generator(cls, i: int) -> "HallWord":
        return cls(gen=i)

    @classmethod
    def bracket(cls, a: "HallWord", b: "HallWord") -> "HallWord":
        return cls(left=a, right=b)

    @property
    def is_generator(self) -> bool:
        return self.gen is not None

    @cached_property
    def length(self) -> int:
        return 1 if self.is_generator else self.left.length + self.right.length

    @cached_property
    def foliage(self) -> tuple[int, ...]:
        return (self.gen,) if self.is_generator else self.left.foliage + self.right.foliage

    def __str__(self) -> str:
        if self.is_generator:
            return f"x{self.gen}"
        return f"[{self.left},{self.right}]"

    def __repr__(self) -> str:
        return f"HallWord({self})"


def witt_dimension(d: int, l: int) -> int:
    """Dimension of the degree-l part of the free Lie algebra on d letters."""
    if d < 1 or l < 1:
        raise ValueError("need d >= 1 and l >= 1")
    total = sum(int(mobius(a)) * d ** (l // a) for a in divisors(l))
    assert total % l == 0
    return total // l


def hall_basis(d: int, t: int) -> list[HallWord]:
    """Ordered Hall basis of the free t-nilpotent algebra on d generators."""
    if d < 1 or t < 1:
        raise ValueError("need d >= 1 and t >= 1")
    basis = [HallWord.generator(i) for i in range(1, d + 1)]
    position = {w: n for n, w in enumerate(basis)}
    by_length: dict[int, list[HallWord]] = {1: list(basis)}
    for r in range(2, t + 1):
        new = []
        for s in range(1, r):
            for a in by_length.get(s, []):
                for b in by_length.get(r - s, []):
                    if position[a] <= position[b]:
                        continue
                    if not a.is_generator and position[b] < position[a.right]:
                        continue
                    new.append(HallWord.bracket(a, b))
        new.sort(key=lambda w: w.foliage)
        by_length[r] = new
        for w in new:
            position[w] = len(basis)
            basis.append(w)
    return basis


class FreeNilpotent:
    """The algebra n_{d,t} with its Hall basis and structure constants.

    Basis indices are 0-based internally; ``structure_constants`` reports
    them 1-based so that index k matches the k-th printed basis element.
    """

    def __init__(self, d: int, t: int):
        self.d = d
        self.t = t
        self.basis = hall_basis(d, t)
        self.dim = len(self.basis)
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.grade = [w.length for w in self.basis]
        self.graded_offsets = [self.grade.index(k) if k in self.grade else self.dim for k in range(1, t + 1)]
        self._memo: dict[tuple[int, int], dict[int, Fraction]] = {}
        prods = {}
        for i in range(self.dim):
            for j in range(self.dim):
                if i != j:
                    r = self._bracket_idx(i, j)
                    if r:
                        prods[(i, j)] = dict(r)
        self.table = StructureTable(self.dim, prods)
        self._memo = {}

    def __repr__(self) -> str:
        return f"FreeNilpotent(d={self.d}, t={self.t}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeNilpotent) and (self.d, self.t) == (other.d, other.t)

    def __hash__(self) -> int:
        return hash((self.d, self.t))

    # -- rewriting into the Hall basis ----------------------------------
    def _bracket_idx(self, i: int, j: int) -> Mapping[int, Fraction]:
        """[h_i, h_j] in the Hall basis, products of length > t dropped."""
        if i == j:
            return {}
        key = (i, j)
        if key in self._memo:
            return self._memo[key]
        if i < j:
            res = {k: -c for k, c in self._bracket_idx(j, i).items()}
        else:
            a, b = self.basis[i], self.basis[j]
            if a.length + b.length > self.t:
                res = {}
            elif a.is_generator or j >= self.index[a.right]:
                res = {self.index[HallWord.bracket(a, b)]: Fraction(1)}
            else:
                # [[c,e],b] = [[c,b],e] + [c,[e,b]] with b < e
                c, e = self.index[a.left], self.index[a.right]
                res = {}
                for k, v in self._bracket_idx(c, j).items():
                    _axpy(res, v, self._bracket_idx(k, e))
                for k, v in self._bracket_idx(e, j).items():
                    _axpy(res, v, self._bracket_idx(c, k))
        self._memo[key] = res
        return res

    # -- elements -------------------------------------------------------
    def zero(self) -> "LieElement":
        return LieElement(self, {})

    def gen(self, i: int) -> "LieElement":
        """Generator x_i (1-based, as printed)."""
        if not 1 <= i <= self.d:
            raise ValueError(f"no generator x{i} in n_{self.d},{self.t}")
        return LieElement(self, {i - 1: Fraction(1)})

    def basis_element(self, k: int) -> "LieElement":
        return LieElement(self, {k: Fraction(1)})

    def element(self, coeffs: Iterable) -> "LieElement":
        return LieElement(self, {k: as_fraction(c) for k, c in enumerate(coeffs) if c})

    def word(self, text: str) -> "LieElement":
        """Evaluate a bracket expression such as ``"[[x2,x1],x1]"``.

        The expression need not be a Hall word; it is expanded with
        :meth:`bracket`.
        """
        tokens = re.findall(r"\[|\]|,|x_?\{?\d+\}?", text.replace(" ", ""))
        pos = 0

        def parse() -> LieElement:
            nonlocal pos
            tok = tokens[pos]
            pos += 1
            if tok == "[":
                left = parse()
                if tokens[pos] != ",":
                    raise ValueError(f"malformed bracket expression: {text!r}")
                pos += 1
                right = parse()
                if tokens[pos] != "]":
                    raise ValueError(f"malformed bracket expression: {text!r}")
                pos += 1
                return self.bracket(left, right)
            m = re.fullmatch(r"x_?\{?(\d+)\}?", tok)
            if not m:
                raise ValueError(f"unexpected token {tok!r} in {text!r}")
            return self.gen(int(m.group(1)))

        out = parse()
        if pos != len(tokens):
            raise ValueError(f"trailing input in {text!r}")
        return out

    def bracket(self, a: "LieElement", b: "LieElement") -> "LieElement":
        if a.algebra != self or b.algebra != self:
            raise ValueError("elements belong to different algebras")
        res: dict[int, Fraction] = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                _axpy(res, x * y, self.table.bracket_basis(i, j))
        return LieElement(self, res)

    # -- structure ------------------------------------------------------
    def grade_indices(self, k: int) -> list[int]:
        """Indices of the basis of s_k (1 <= k <= t)."""
        return [i for i, g in enumerate(self.grade) if g == k]

    def power_indices(self, k: int) -> list[int]:
        """Indices spanning n^k, i.e. all Hall words of length >= k."""
        return [i for i, g in enumerate(self.grade) if g >= k]

    def structure_constants(self) -> list[tuple[int, int, int, Fraction]]:
        return structure_constants(self)

    def central_series(self):
        return central_series(self)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "t": self.t,
            "basis": [str(w) for w in self.basis],
            "structure": [[i, j, k, _fstr(c)] for i, j, k, c in structure_constants(self)],
        }


def _fstr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _axpy(acc: dict[int, Fraction], a: Fraction, x: Mapping[int, Fraction]) -> None:
    for k, v in x.items():
        nv = acc.get(k, 0) + a * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class LieElement:
    """Sparse rational combination of Hall basis elements."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: FreeNilpotent, coeffs: Mapping[int, Fraction]):
        self.algebra = algebra
        self.coeffs = {k: as_fraction(v) for k, v in coeffs.items() if v}

    def _check(self, other: "LieElement"):
        if not isinstance(other, LieElement) or other.algebra != self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        out = dict(self.coeffs)
        _axpy(out, Fraction(1), other.coeffs)
        return LieElement(self.algebra, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, s) -> "LieElement":
        s = as_fraction(s)
        return LieElement(self.algebra, {k: s * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and other.algebra == self.algebra and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.algebra, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def bracket(self, other: "LieElement") -> "LieElement":
        return self.algebra.bracket(self, other)

    def vector(self) -> Vector:
        return tuple(self.coeffs.get(k, Fraction(0)) for k in range(self.algebra.dim))

    def grades(self) -> set[int]:
        return {self.algebra.grade[k] for k in self.coeffs}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            w = str(self.algebra.basis[k])
            parts.append(w if c == 1 else f"-{w}" if c == -1 else f"({_fstr(c)}){w}")
        return " + ".join(parts).replace("+ -", "- ")


def structure_constants(alg: FreeNilpotent) -> list[tuple[int, int, int, Fraction]]:
    """``(i, j, k, c)`` with ``[h_i, h_j] = ... + c h_k`` for i > j, 1-based."""
    return [(i + 1, j + 1, k + 1, c) for i, j, k, c in alg.table.triples()]


def central_series(alg) -> tuple[list[list[Vector]], list[list[Vector]]]:
    """Lower and upper central series of an algebra with a ``table``.

    ``lower[i]`` spans n^{i+1} and ``upper[i]`` spans Z_{i+1}, so
    ``upper[0]`` is zero and ``upper[1]`` is the center.
    """
    return alg.table.lower_central_series(), alg.table.upper_central_series()


def graded_span(alg: FreeNilpotent, indices: Iterable[int]) -> list[Vector]:
    return row_space([alg.table.unit(i) for i in indices], alg.dim)
