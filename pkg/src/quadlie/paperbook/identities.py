"""Matrix identities that decide isomorphism of the type-2 and type-3 forms."""

from __future__ import annotations

from ..exactlin import QMatrix, SingularMatrixError, rational_cube_root
from .families import C3

__all__ = [
    "SingularMatrixError",
    "adj",
    "adjugate_congruence_check",
    "cube_root_witness",
    "det_twisted_congruence_check",
]


def adj(P: QMatrix) -> QMatrix:
    """Cofactor matrix, ``Adj(P) = det(P) (P^{-1})^t`` for regular P.

    This is the transpose of the classical adjoint returned by
    :meth:`QMatrix.adjugate`; it is the convention under which the grade-2
    block of the graded automorphism induced by P on n_{3,t} is
    ``C Adj(P) C``.
    """
    return P.adjugate().T


def _square(M: QMatrix, n: int, name: str) -> None:
    if M.shape != (n, n):
        raise ValueError(f"{name} must be {n}x{n}, got {M.shape}")


def adjugate_congruence_check(A: QMatrix, B: QMatrix, P: QMatrix) -> bool:
    """``C B C == Adj(P)^t C A C Adj(P)`` with C the anti-diagonal (1,-1,1)."""
    for M, name in ((A, "A"), (B, "B"), (P, "P")):
        _square(M, 3, name)
    if not (A.is_symmetric() and B.is_symmetric()):
        raise ValueError("A and B must be symmetric")
    if P.det() == 0:
        raise SingularMatrixError("P must be invertible")
    K = adj(P)
    return C3 @ B @ C3 == K.T @ C3 @ A @ C3 @ K


def det_twisted_congruence_check(A: QMatrix, B: QMatrix, P: QMatrix) -> bool:
    """``B == det(P)^2 P^t A P`` for 2x2 matrices."""
    for M, name in ((A, "A"), (B, "B"), (P, "P")):
        _square(M, 2, name)
    if not (A.is_symmetric() and B.is_symmetric()):
        raise ValueError("A and B must be symmetric")
    det = P.det()
    if det == 0:
        raise SingularMatrixError("P must be invertible")
    return B == (P.T @ A @ P) * (det * det)


def cube_root_witness(P: QMatrix) -> QMatrix | None:
    """``R = P / cbrt(det P)``, so that ``P^t A P = det(R)^2 R^t A R``.

    Returns None when det P has no rational cube root.
    """
    if P.det() == 0:
        raise SingularMatrixError("P must be invertible")
    r = rational_cube_root(P.det())
    return None if r is None else P * (1 / r)
