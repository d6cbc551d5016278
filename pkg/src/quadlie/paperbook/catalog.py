"""Classified quadratic nilpotent algebras, entered from their printed tables.

Products are listed once as ``(i, j, k, c)`` for ``[a_i, a_j] = c a_k``
(1-based); form values as ``(i, j, v)`` with the symmetric partner implied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactlin import QMatrix
from ..quadratize import QuadraticAlgebra

__all__ = ["CatalogEntry", "CATALOG_LABELS", "classified_algebra"]


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    name: str
    algebra: QuadraticAlgebra
    type: int
    nilindex: int
    field: str  # "C" (any closed field) or "R" (real only)
    source: dict  # free algebra and form whose quotient realises the entry

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "name": self.name,
            "type": self.type,
            "nilindex": self.nilindex,
            "field": self.field,
            "source": self.source,
            "algebra": self.algebra.to_json(),
        }


def _form(n: int, values) -> QMatrix:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j, v in values:
        m[i - 1][j - 1] = m[j - 1][i - 1] = Fraction(v)
    return QMatrix(m, cols=n)


def _anti(n: int, sign) -> list:
    """Values on the pairs i <= j, i + j = n + 1, with sign(i)."""
    return [(i, n + 1 - i, sign(i)) for i in range(1, n // 2 + 2) if i <= n + 1 - i]


_P_II = [(2, 1, 3, 1), (3, 1, 4, 1), (3, 2, 5, 1)]
_P_III = [(2, 1, 3, 1), (3, 1, 4, 1), (4, 1, 5, 1), (5, 1, 6, 1), (5, 2, 7, 1), (3, 4, 7, 1)]
_P_IV = [
    (2, 1, 3, 1), (3, 1, 4, 1), (3, 2, 5, 1), (4, 1, 6, 1), (6, 1, 7, 1),
    (6, 2, 8, 1), (2, 5, 6, -1), (4, 3, 8, -1), (5, 3, 7, 1),
]
_P_V = [(2, 1, 4, 1), (3, 1, 5, 1), (3, 2, 6, 1)]
_P_VI = [(2, 1, 4, 1), (3, 1, 5, 1), (4, 1, 6, 1), (4, 2, 7, 1), (5, 1, 8, 1), (5, 3, 7, 1)]
_P_VII = [
    (2, 1, 4, 1), (3, 1, 5, 1), (3, 2, 6, 1), (4, 1, 7, 1), (4, 2, 8, 1),
    (5, 1, 9, 1), (5, 3, 8, 1), (6, 3, 7, -1), (6, 2, 9, 1),
]
_P_R_II = [
    (2, 1, 3, 1), (3, 1, 4, 1), (4, 1, 6, 1), (6, 1, 7, 1), (3, 2, 5, 1),
    (5, 2, 6, -1), (6, 2, 8, 1), (4, 3, 8, -1), (5, 3, 7, -1),
]
_P_R_III = [(2, 1, 4, 1), (3, 1, 5, 1), (4, 1, 6, 1), (5, 1, 8, 1), (4, 2, 7, 1), (5, 3, 7, -1)]
_P_R_IV = [
    (2, 1, 4, 1), (3, 1, 5, 1), (4, 1, 7, 1), (5, 1, 9, 1), (3, 2, 6, 1),
    (4, 2, 8, 1), (6, 2, 9, -1), (5, 3, 8, 1), (6, 3, 7, 1),
]

# label -> (name, dim, products, form values, type, nilindex, field, source)
_TABLE = {
    "closed-i": ("(n_{1,1}, phi)", 1, [], [(1, 1, 1)], 1, 1, "C", {"d": 1, "t": 1, "A1": [[1]]}),
    "closed-ii": ("(n_{2,3}, varphi)", 5, _P_II, _anti(5, lambda i: (-1) ** (i - 1)), 2, 3, "C",
                 {"d": 2, "t": 3, "gamma": 1}),
    "closed-iii": ("(n^1_{2,5}, varphi_1)", 7, _P_III, _anti(7, lambda i: (-1) ** i), 2, 5, "C",
                  {"d": 2, "t": 5, "A2": [[1, 0], [0, 0]]}),
    "closed-iv": ("(n^2_{2,5}, varphi_2)", 8, _P_IV,
                 [(i, 9 - i, (-1) ** i) for i in (1, 2, 3)] + [(4, 4, 1), (5, 5, 1)], 2, 5, "C",
                 {"d": 2, "t": 5, "A2": [[1, 0], [0, 1]]}),
    "closed-v": ("(n_{3,2}, psi)", 6, _P_V, _anti(6, lambda i: (-1) ** (i - 1)), 3, 2, "C",
                {"d": 3, "t": 2, "gamma": 1}),
    "closed-vi": ("(n^1_{3,3}, psi_1)", 8, _P_VI,
                 [(4, 4, 1), (5, 5, 1), (1, 7, 1), (2, 6, -1), (3, 8, -1)], 3, 3, "C",
                 {"d": 3, "t": 3, "A2": [[1, 0, 0], [0, 1, 0], [0, 0, 0]]}),
    "closed-vii": ("(n^2_{3,3}, psi_2)", 9, _P_VII,
                  [(4, 4, 1), (5, 5, 1), (6, 6, 1), (1, 8, 1), (2, 7, -1), (3, 9, -1)], 3, 3, "C",
                  {"d": 3, "t": 3, "A2": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}),
    "real-ii": ("(n^3_{2,5}, varphi_3)", 8, _P_R_II,
                 [(i, 9 - i, (-1) ** i) for i in (1, 2, 3)] + [(4, 4, 1), (5, 5, -1)], 2, 5, "R",
                 {"d": 2, "t": 5, "A2": [[1, 0], [0, -1]]}),
    "real-iii": ("(n^3_{3,3}, psi_3)", 8, _P_R_III,
                  [(4, 4, 1), (5, 5, -1), (1, 7, 1), (2, 6, -1), (3, 8, 1)], 3, 3, "R",
                  {"d": 3, "t": 3, "A2": [[1, 0, 0], [0, -1, 0], [0, 0, 0]]}),
    "real-iv": ("(n^4_{3,3}, psi_4)", 9, _P_R_IV,
                 [(4, 4, 1), (5, 5, 1), (6, 6, -1), (1, 8, 1), (2, 7, -1), (3, 9, -1)], 3, 3, "R",
                 {"d": 3, "t": 3, "A2": [[1, 0, 0], [0, 1, 0], [0, 0, -1]]}),
}

# over R the negated forms give further classes
_NEGATED = ["closed-i", "closed-ii", "closed-iii", "closed-iv", "closed-vi", "closed-vii", "real-iv"]

CATALOG_LABELS = tuple(_TABLE) + tuple(f"-{lab}" for lab in _NEGATED)


def classified_algebra(label: str) -> CatalogEntry:
    """The entry ``label``; a leading ``-`` negates the form."""
    neg = label.startswith("-")
    base = label[1:] if neg else label
    if base not in _TABLE or (neg and base not in _NEGATED):
        raise KeyError(f"unknown catalog label {label!r}; known: {', '.join(CATALOG_LABELS)}")
    name, n, prods, vals, typ, t, fld, source = _TABLE[base]
    form = _form(n, vals)
    source = dict(source)
    if neg:
        form = -form
        name = name.replace(", ", ", -", 1)
        fld = "R"
        source["negate"] = True
    alg = QuadraticAlgebra.from_products(n, prods, form, provenance={"catalog": label})
    return CatalogEntry(label, name, alg, typ, t, fld, source)
