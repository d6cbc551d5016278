"""Field-dependent isomorphism data for the parameters of the classification.

Over an algebraically closed field only ranks matter, over the reals ranks
and signatures, and over Q the artifact reports square-class data without
claiming the list of classes is complete.
"""

from __future__ import annotations

from sympy.ntheory.factor_ import core

from ..exactlin import FieldMode, QMatrix, as_fraction, congruence_diagonalize, signature

__all__ = ["gamma_class", "matrix_class", "squarefree_part", "same_gamma_class", "same_matrix_class"]


def squarefree_part(q) -> int:
    """The square-free integer s with q = s * (rational square)."""
    q = as_fraction(q)
    if q == 0:
        raise ValueError("zero has no square class")
    n = q.numerator * q.denominator
    s = core(abs(n), 2)
    return s if n > 0 else -s


def gamma_class(gamma, mode: FieldMode) -> dict:
    """Class of the scalar gamma of the (n_{2,3}, B^{0;gamma}) algebras."""
    gamma = as_fraction(gamma)
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    if mode is FieldMode.ALG_CLOSED_RANK:
        return {"field": mode.value, "class": 1, "complete": True}
    if mode is FieldMode.REAL_SIGNATURE:
        return {"field": mode.value, "sign": 1 if gamma > 0 else -1, "complete": True}
    return {"field": mode.value, "squarefree": squarefree_part(gamma), "complete": False}


def matrix_class(A: QMatrix, mode: FieldMode) -> dict:
    """Congruence data for the symmetric parameter matrix A."""
    if not A.is_symmetric():
        raise ValueError("matrix_class needs a symmetric matrix")
    r = A.rank()
    if mode is FieldMode.ALG_CLOSED_RANK:
        return {"field": mode.value, "rank": r, "complete": True}
    if mode is FieldMode.REAL_SIGNATURE:
        p, m, z = signature(A)
        return {"field": mode.value, "rank": r, "signature": [p, m, z], "complete": True}
    _, D = congruence_diagonalize(A)
    diag = sorted(squarefree_part(D[i, i]) for i in range(D.rows) if D[i, i])
    return {"field": mode.value, "rank": r, "diagonal_classes": diag, "complete": False}


def same_gamma_class(gamma, delta, mode: FieldMode) -> bool:
    return gamma_class(gamma, mode) == gamma_class(delta, mode)


def same_matrix_class(A: QMatrix, B: QMatrix, mode: FieldMode) -> bool | None:
    """Decides congruence for C and R; over Q returns False on a rank mismatch
    and None otherwise (undecided)."""
    a, b = matrix_class(A, mode), matrix_class(B, mode)
    if mode is FieldMode.RATIONALS:
        return False if a["rank"] != b["rank"] else None
    return a == b
