"""Invariant symmetric bilinear forms on free nilpotent Lie algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactlin import QMatrix, RowReducer, nullspace_vectors, row_space, span_contains
from .freenilp import FreeNilpotent, LieElement
from .lie import Vector

__all__ = [
    "BilinearForm",
    "FormComponent",
    "Membership",
    "bk_components",
    "block",
    "invariant_form_space",
    "is_invariant",
    "kernel",
    "sym0_membership",
]


class NotInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class BilinearForm:
    algebra: FreeNilpotent
    matrix: QMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.algebra.dim, self.algebra.dim):
            raise ValueError(
                f"form matrix is {self.matrix.shape}, algebra has dimension {self.algebra.dim}"
            )
        if not self.matrix.is_symmetric():
            raise ValueError("bilinear form matrix must be symmetric")

    def __call__(self, x: LieElement, y: LieElement) -> Fraction:
        return sum(
            (a * b * self.matrix[i, j] for i, a in x.coeffs.items() for j, b in y.coeffs.items()),
            Fraction(0),
        )

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        return BilinearForm(self.algebra, self.matrix + other.matrix)

    def __mul__(self, s) -> "BilinearForm":
        return BilinearForm(self.algebra, self.matrix * s)

    __rmul__ = __mul__

    def rank(self) -> int:
        return self.matrix.rank()

    def to_json(self) -> dict:
        return {
            "algebra": {"d": self.algebra.d, "t": self.algebra.t},
            "matrix": self.matrix.to_json()["entries"],
        }

    @classmethod
    def from_json(cls, obj: dict, algebra: FreeNilpotent | None = None) -> "BilinearForm":
        alg = algebra or FreeNilpotent(obj["algebra"]["d"], obj["algebra"]["t"])
        return cls(alg, QMatrix(obj["matrix"]))


@dataclass(frozen=True)
class FormComponent:
    """The k-th graded piece ``B_k = sum_i B(e_i, e_{t-i-k+2})``."""

    parent: BilinearForm
    k: int
    matrix: QMatrix


def is_invariant(B: BilinearForm) -> bool:
    """``B([x,y],z) == B(x,[y,z])`` on every triple of basis elements."""
    if not B.matrix.is_symmetric():
        raise ValueError("is_invariant expects a symmetric form")
    return B.algebra.table.invariance_violation(B.matrix) is None


def _sym_index(n: int):
    """Map (i, j) to the coordinate of the unknown B_ij = B_ji."""
    pos = {}
    c = 0
    for i in range(n):
        for j in range(i, n):
            pos[(i, j)] = pos[(j, i)] = c
            c += 1
    return pos, c


def invariance_system(alg: FreeNilpotent) -> tuple[RowReducer, dict, int]:
    """Row-reduced invariance equations over the upper-triangular unknowns.

    One equation per basis triple (i, j, k):
    ``sum_m c^m_ij B_mk - sum_m c^m_jk B_im = 0``.
    """
    n = alg.dim
    pos, nvars = _sym_index(n)
    red = RowReducer(nvars)
    table = alg.table
    for i in range(n):
        for j in range(n):
            left = table.bracket_basis(i, j)
            for k in range(n):
                right = table.bracket_basis(j, k)
                if not left and not right:
                    continue
                row: dict[int, Fraction] = {}
                for m, c in left.items():
                    p = pos[(m, k)]
                    row[p] = row.get(p, 0) + c
                for m, c in right.items():
                    p = pos[(i, m)]
                    row[p] = row.get(p, 0) - c
                red.add(row)
    return red, pos, nvars


def _vector_to_form(alg: FreeNilpotent, vec: Vector, pos: dict) -> BilinearForm:
    n = alg.dim
    return BilinearForm(alg, QMatrix([[vec[pos[(i, j)]] for j in range(n)] for i in range(n)], cols=n))


def form_to_vector(B: BilinearForm) -> Vector:
    pos, nvars = _sym_index(B.algebra.dim)
    v = [Fraction(0)] * nvars
    for (i, j), p in pos.items():
        v[p] = B.matrix[i, j]
    return tuple(v)


def invariant_form_space(alg: FreeNilpotent) -> list[BilinearForm]:
    """Basis of S^2_0(d,t), canonicalised to RREF in the symmetric coordinates."""
    red, pos, nvars = invariance_system(alg)
    sols = row_space(red.nullspace(), nvars)
    return [_vector_to_form(alg, v, pos) for v in sols]


def form_in_span(B: BilinearForm, space: list[BilinearForm]) -> bool:
    pos, nvars = _sym_index(B.algebra.dim)
    return span_contains([form_to_vector(S) for S in space], form_to_vector(B), nvars)


def block(B: BilinearForm | QMatrix, alg: FreeNilpotent, i: int, j: int) -> QMatrix:
    """The ``B(e_i, e_j)`` block: rows from s_i, columns from s_j."""
    M = B.matrix if isinstance(B, BilinearForm) else B
    return M.submatrix(alg.grade_indices(i), alg.grade_indices(j))


def _masked(M: QMatrix, alg: FreeNilpotent, keep) -> QMatrix:
    g = alg.grade
    n = alg.dim
    return QMatrix([[M[r, c] if keep(g[r], g[c]) else 0 for c in range(n)] for r in range(n)], cols=n)


def bk_components(B: BilinearForm) -> list[FormComponent]:
    """``[B_1, ..., B_t]``; B_k collects the blocks (i, j) with i + j = t + 2 - k."""
    alg = B.algebra
    t = alg.t
    if not is_invariant(B):
        raise NotInvariantError("bk_components needs an invariant form")
    high = _masked(B.matrix, alg, lambda a, b: a + b > t + 1)
    if not high.is_zero():
        raise AssertionError("invariant form has a nonzero block beyond grade t+1")
    comps = []
    for k in range(1, t + 1):
        M = _masked(B.matrix, alg, lambda a, b, k=k: a + b == t + 2 - k)
        comps.append(FormComponent(B, k, M))
    total = QMatrix.zeros(alg.dim)
    for c in comps:
        total = total + c.matrix
    assert total == B.matrix
    return comps


def kernel(B: BilinearForm) -> list[LieElement]:
    """Basis of the radical ``{x : B(x, .) = 0}`` (canonical RREF basis)."""
    alg = B.algebra
    vecs = row_space(nullspace_vectors(B.matrix), alg.dim)
    return [alg.element(v) for v in vecs]


def kernel_vectors(B: BilinearForm) -> list[Vector]:
    return row_space(nullspace_vectors(B.matrix), B.algebra.dim)


@dataclass(frozen=True)
class Membership:
    member: bool
    reason: str
    witness: Optional[LieElement] = None

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "reason": self.reason,
            "witness": None if self.witness is None else repr(self.witness),
        }


def sym0_membership(B: BilinearForm) -> Membership:
    """Is B an admissible form: Ker(B) inside n^2 and n^t not inside Ker(B)?

    On failure the reason names the violated condition; when the kernel
    leaks out of n^2 the witness is a kernel vector with a nonzero
    generator component.
    """
    if not is_invariant(B):
        raise NotInvariantError("sym0_membership needs an invariant form")
    alg = B.algebra
    ker = kernel_vectors(B)
    gens = set(range(alg.d))
    for v in ker:
        if any(v[i] for i in gens):
            return Membership(False, "kernel not contained in n^2", alg.element(v))
    top = alg.grade_indices(alg.t)
    outside = [i for i in top if not span_contains(ker, alg.table.unit(i), alg.dim)]
    if not outside:
        return Membership(False, "n^t contained in kernel")
    return Membership(True, "member", alg.basis_element(outside[0]))


def kernel_is_ideal(B: BilinearForm) -> bool:
    alg = B.algebra
    ker = kernel_vectors(B)
    for v in ker:
        for j in range(alg.dim):
            w = alg.table.bracket(v, alg.table.unit(j))
            if not span_contains(ker, w, alg.dim):
                return False
    return True
