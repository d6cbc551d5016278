"""Parametric form families and explicit matrices, indexed by the Hall basis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..exactlin import QMatrix, as_fraction
from ..freenilp import FreeNilpotent
from ..invforms import BilinearForm

FAMILIES = ("B21", "B22", "B23", "B24", "B25", "B31", "B32", "B33", "PHI32", "PHI23")

# anti-diagonal matrix C with W_gamma = gamma * C
C3 = QMatrix([[0, 0, 1], [0, -1, 0], [1, 0, 0]])


def sym(*entries) -> QMatrix:
    """Symmetric matrix from its upper triangle, row by row.

    ``sym(a, b, d)`` is ``[[a, b], [b, d]]``; ``sym(a, b, c, d, e, f)`` is
    the 3x3 matrix ``[[a, b, c], [b, d, e], [c, e, f]]``.
    """
    n = {1: 1, 3: 2, 6: 3}[len(entries)]
    vals = iter(entries)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(vals)
    return QMatrix(m)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    A1: Optional[QMatrix] = None
    gamma: Fraction = Fraction(0)
    A2: Optional[QMatrix] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "gamma", as_fraction(self.gamma))
        d = self.d
        for name in ("A1", "A2"):
            m = getattr(self, name)
            if m is None:
                continue
            if not isinstance(m, QMatrix):
                m = QMatrix(m)
                object.__setattr__(self, name, m)
            if m.shape != (d, d) or not m.is_symmetric():
                raise ValueError(f"{name} must be a symmetric {d}x{d} matrix for {self.family}")

    @property
    def d(self) -> int:
        return 3 if self.family in ("B31", "B32", "B33", "PHI32") else 2

    @property
    def t(self) -> int:
        return {"PHI32": 2, "PHI23": 3}.get(self.family, int(self.family[2]) if self.family.startswith("B") else 0)

    def to_json(self) -> dict:
        out = {"family": self.family, "gamma": str(self.gamma)}
        for name in ("A1", "A2"):
            m = getattr(self, name)
            if m is not None:
                out[name] = m.to_json()["entries"]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "FamilySpec":
        return cls(
            obj["family"],
            A1=QMatrix(obj["A1"]) if "A1" in obj else None,
            gamma=obj.get("gamma", obj.get("lambda", 0)),
            A2=QMatrix(obj["A2"]) if "A2" in obj else None,
        )


def a2prime(A2: QMatrix) -> QMatrix:
    """The 3x8 block pairing s_1 with s_3 in the n_{3,3} forms."""
    if A2.shape != (3, 3) or not A2.is_symmetric():
        raise ValueError("a2prime needs a symmetric 3x3 matrix")
    a, b, c, d, e, f = A2[0, 0], A2[0, 1], A2[0, 2], A2[1, 1], A2[1, 2], A2[2, 2]
    return QMatrix(
        [
            [0, a, b, 0, b, d, c, e],
            [-a, 0, c, -b, 0, e, 0, f],
            [-b, -c, 0, -d, -e, 0, -f, 0],
        ]
    )


def _b2_rows(A1: QMatrix, g, A2: QMatrix | None, n: int) -> list[list]:
    m = [[Fraction(0)] * n for _ in range(n)]
    al, be, de = A1[0, 0], A1[0, 1], A1[1, 1]
    m[0][0], m[0][1], m[1][0], m[1][1] = al, be, be, de
    if n >= 5:
        # gamma pattern on the (s1, s3) and (s2, s2) blocks
        m[0][4] = m[4][0] = g
        m[1][3] = m[3][1] = -g
        m[2][2] = g
    if n == 14 and A2 is not None:
        d, e, f = A2[0, 0], A2[0, 1], A2[1, 1]
        row0 = [0, -d, d, -e, e, -f]
        row1 = [d, 0, e, 0, f, 0]
        for k in range(6):
            m[0][8 + k] = m[8 + k][0] = row0[k]
            m[1][8 + k] = m[8 + k][1] = row1[k]
        for k, v in enumerate((-d, -e, -f)):
            m[2][5 + k] = m[5 + k][2] = v
        m[3][3], m[3][4], m[4][3], m[4][4] = d, e, e, f
    return m


def family_form(spec: FamilySpec, algebra: FreeNilpotent | None = None) -> BilinearForm:
    """The printed matrix of ``spec`` as a form on the matching free algebra."""
    fam = spec.family
    if fam == "PHI32":
        alg = algebra or FreeNilpotent(3, 2)
        return BilinearForm(alg, QMatrix.block([[QMatrix.zeros(3), C3], [C3, QMatrix.zeros(3)]]))
    if fam == "PHI23":
        alg = algebra or FreeNilpotent(2, 3)
        phi = [[0] * 5 for _ in range(5)]
        for i, v in enumerate((1, -1, 1, -1, 1)):
            phi[i][4 - i] = v
        return BilinearForm(alg, QMatrix(phi))
    d, t = spec.d, spec.t
    alg = algebra or FreeNilpotent(d, t)
    if (alg.d, alg.t) != (d, t):
        raise ValueError(f"{fam} lives on n_{d},{t}, not on {alg!r}")
    A1 = spec.A1 if spec.A1 is not None else QMatrix.zeros(d)
    A2 = spec.A2 if spec.A2 is not None else QMatrix.zeros(d)
    g = spec.gamma
    n = alg.dim
    if d == 2:
        return BilinearForm(alg, QMatrix(_b2_rows(A1, g, A2, n)))
    # d == 3
    Z = QMatrix.zeros
    if t == 1:
        return BilinearForm(alg, A1)
    W = C3 * g
    if t == 2:
        return BilinearForm(alg, QMatrix.block([[A1, W], [W, Z(3)]]))
    Ap = a2prime(A2)
    return BilinearForm(
        alg,
        QMatrix.block(
            [
                [A1, W, Ap],
                [W, A2, Z(3, 8)],
                [Ap.T, Z(8, 3), Z(8)],
            ]
        ),
    )
