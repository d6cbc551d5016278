"""Finite-dimensional Lie algebras given by structure constants.

A :class:`StructureTable` stores ``[e_i, e_j] = sum_k c^k_ij e_k`` for every
ordered pair with a nonzero product.  Free nilpotent algebras and their
quadratic quotients both sit on top of it, so the central series, Jacobi
checks and invariance checks are written once, here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exactlin import QMatrix, as_fraction, nullspace_vectors, row_space

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class StructureTable:
    dim: int
    products: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(default_factory=dict)

    @classmethod
    def from_triples(cls, dim: int, triples: Iterable[tuple[int, int, int, object]], complete: bool = True):
        """Build from ``(i, j, k, c)`` meaning ``[e_i, e_j] += c e_k`` (0-based).

        With ``complete=True`` the antisymmetric partner ``[e_j, e_i]`` is
        filled in, so only one of each pair needs to be listed.
        """
        prods: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i, j, k, c in triples:
            c = as_fraction(c)
            if not c:
                continue
            if i == j:
                raise ValueError(f"[e_{i}, e_{i}] must vanish")
            pairs = [((i, j), c)] + ([((j, i), -c)] if complete else [])
            for key, val in pairs:
                d = prods.setdefault(key, {})
                d[k] = d.get(k, 0) + val
                if not d[k]:
                    del d[k]
        return cls(dim, {k: v for k, v in prods.items() if v})

    def triples(self) -> list[tuple[int, int, int, Fraction]]:
        """``(i, j, k, c)`` for ``i > j``, sorted."""
        return sorted(
            (i, j, k, c) for (i, j), d in self.products.items() if i > j for k, c in d.items()
        )

    # -- evaluation -----------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self.products.get((i, j), {})

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        nz_v = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in nz_v:
                d = self.products.get((i, j))
                if d:
                    ab = a * b
                    for k, c in d.items():
                        out[k] += ab * c
        return tuple(out)

    def ad(self, i: int) -> QMatrix:
        """Matrix of ``ad e_i`` (column j holds ``[e_i, e_j]``)."""
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_basis(i, j).items():
                m[k][j] = c
        return QMatrix(m, cols=self.dim)

    def unit(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    # -- series ---------------------------------------------------------
    def lower_central_series(self) -> list[list[Vector]]:
        """``[g^1, g^2, ...]`` as RREF bases, ending with the first zero term.

        Stops early (without a zero term) if the series stabilises, which
        only happens for non-nilpotent algebras.
        """
        current = row_space([self.unit(i) for i in range(self.dim)], self.dim)
        series = [current]
        while current:
            nxt = row_space(
                (self.bracket(u, self.unit(j)) for u in current for j in range(self.dim)), self.dim
            )
            if nxt == current:
                break
            series.append(nxt)
            current = nxt
        return series

    def upper_central_series(self) -> list[list[Vector]]:
        """``[Z_1 = 0, Z_2 = center, ...]`` ending with the whole algebra.

        Stops early if the series stabilises below the whole algebra.
        """
        series: list[list[Vector]] = [[]]
        while len(series[-1]) < self.dim:
            prev = series[-1]
            # annihilator of prev: rows L with L v = 0 for v in prev
            if prev:
                ann = nullspace_vectors(QMatrix(prev, cols=self.dim))
            else:
                ann = [self.unit(i) for i in range(self.dim)]
            rows = []
            for j in range(self.dim):
                adj = self.ad(j)
                for a in ann:
                    rows.append(tuple(sum((a[k] * adj[k, c] for k in range(self.dim)), Fraction(0))
                                      for c in range(self.dim)))
            nxt = row_space(nullspace_vectors(QMatrix(rows, cols=self.dim)), self.dim) if rows else \
                row_space([self.unit(i) for i in range(self.dim)], self.dim)
            if len(nxt) == len(prev):
                break
            series.append(nxt)
        return series

    def center(self) -> list[Vector]:
        ucs = self.upper_central_series()
        return ucs[1] if len(ucs) > 1 else []

    # -- identities -----------------------------------------------------
    def antisymmetry_violation(self) -> tuple[int, int] | None:
        for (i, j), d in sorted(self.products.items()):
            if i == j and d:
                return (i, j)
            other = self.products.get((j, i), {})
            keys = set(d) | set(other)
            if any(d.get(k, 0) != -other.get(k, 0) for k in keys):
                return (i, j)
        return None

    def jacobi_violation(self) -> tuple[int, int, int] | None:
        """First basis triple (i < j < k) where the Jacobi identity fails."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    ei, ej, ek = self.unit(i), self.unit(j), self.unit(k)
                    s = [
                        a + b + c
                        for a, b, c in zip(
                            self.bracket(self.bracket(ei, ej), ek),
                            self.bracket(self.bracket(ej, ek), ei),
                            self.bracket(self.bracket(ek, ei), ej),
                        )
                    ]
                    if any(s):
                        return (i, j, k)
        return None

    def invariance_violation(self, form: QMatrix) -> tuple[int, int, int] | None:
        """First triple with ``B([e_i,e_j],e_k) != B(e_i,[e_j,e_k])``."""
        n = self.dim
        for i, j, k in product(range(n), repeat=3):
            lhs = sum((c * form[m, k] for m, c in self.bracket_basis(i, j).items()), Fraction(0))
            rhs = sum((c * form[i, m] for m, c in self.bracket_basis(j, k).items()), Fraction(0))
            if lhs != rhs:
                return (i, j, k)
        return None

    def is_homomorphism(self, theta: QMatrix, target: "StructureTable") -> tuple[int, int] | None:
        """First pair (i, j) where ``theta[e_i,e_j] != [theta e_i, theta e_j]``."""
        cols = [theta.col(i) for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs = theta.apply(self.bracket(self.unit(i), self.unit(j)))
                rhs = target.bracket(cols[i], cols[j])
                if lhs != rhs:
                    return (i, j)
        return None
