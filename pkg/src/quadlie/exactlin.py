"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Matrices are small
(the largest basis handled by the package has 14 elements) so plain Python
Gaussian elimination is fast enough and, more importantly, exact and
reproducible.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "FieldMode",
    "QMatrix",
    "SingularMatrixError",
    "as_fraction",
    "congruence_diagonalize",
    "nullspace",
    "rank",
    "row_space",
    "same_square_class",
    "signature",
    "solve",
    "span_contains",
    "subspace_equal",
    "subspace_intersection",
    "complete_basis",
]


class FieldMode(enum.Enum):
    """Which field a classification question is asked over."""

    RATIONALS = "Q"
    REAL_SIGNATURE = "R"
    ALG_CLOSED_RANK = "C"


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class SingularMatrixError(ValueError, ZeroDivisionError):
    pass


class QMatrix:
    """Immutable dense matrix of rationals, row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable] = (), *, cols: int | None = None):
        rows = tuple(tuple(as_fraction(x) for x in r) for r in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix rows")
            if cols is not None and cols != width:
                raise ValueError("column count does not match data")
        else:
            width = cols or 0
        self.rows = len(rows)
        self.cols = width
        self._data = rows
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "QMatrix":
        if not columns:
            return cls.zeros(nrows or 0, 0)
        n = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(n)], cols=len(columns))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["QMatrix"]]) -> "QMatrix":
        """Assemble a block matrix from a grid of QMatrix blocks."""
        out = []
        for brow in blocks:
            height = brow[0].rows
            for i in range(height):
                row = []
                for b in brow:
                    if b.rows != height:
                        raise ValueError("block heights differ within a block row")
                    row.extend(b._data[i])
                out.append(row)
        return cls(out)

    # -- basic protocol -------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(_frac_str(x) for x in r) for r in self._data)
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"

    def pretty(self) -> str:
        cells = [[_frac_str(x) for x in r] for r in self._data]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return QMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def __mul__(self, scalar) -> "QMatrix":
        s = as_fraction(scalar)
        return QMatrix([[s * a for a in r] for r in self._data], cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.cols
        odata = other._data
        out = []
        for r in self._data:
            acc = [Fraction(0)] * ocols
            for k, a in enumerate(r):
                if a:
                    orow = odata[k]
                    for j in range(ocols):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return QMatrix(out, cols=ocols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix times column vector given as a sequence."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._data)

    @property
    def T(self) -> "QMatrix":
        return QMatrix([[r[j] for r in self._data] for j in range(self.cols)], cols=self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix([[self._data[i][j] for j in cols] for i in rows], cols=len(cols))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_diagonal(self) -> bool:
        return all(self._data[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    # -- derived quantities ---------------------------------------------
    def rank(self) -> int:
        return len(_echelon(self._data, self.cols))

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self._data]
        n = self.rows
        det = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if m[i][k]), None)
            if p is None:
                return Fraction(0)
            if p != k:
                m[k], m[p] = m[p], m[k]
                det = -det
            piv = m[k][k]
            det *= piv
            for i in range(k + 1, n):
                f = m[i][k]
                if f:
                    f /= piv
                    m[i] = [a - f * b for a, b in zip(m[i], m[k])]
        return det

    def inverse(self) -> "QMatrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._data)]
        for k in range(n):
            p = next((i for i in range(k, n) if aug[i][k]), None)
            if p is None:
                raise SingularMatrixError("matrix is singular")
            aug[k], aug[p] = aug[p], aug[k]
            piv = aug[k][k]
            aug[k] = [a / piv for a in aug[k]]
            for i in range(n):
                if i != k and aug[i][k]:
                    f = aug[i][k]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
        return QMatrix([r[n:] for r in aug], cols=n)

    def adjugate(self) -> "QMatrix":
        """Classical adjoint: transpose of the cofactor matrix."""
        n = self.rows
        if not self.is_square():
            raise ValueError("adjugate of a non-square matrix")
        if n == 1:
            return QMatrix([[1]])
        cof = [
            [
                (-1) ** (i + j)
                * self.submatrix([r for r in range(n) if r != i], [c for c in range(n) if c != j]).det()
                for j in range(n)
            ]
            for i in range(n)
        ]
        return QMatrix(cof, cols=n).T

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[_frac_str(x) for x in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QMatrix":
        m = cls(obj["entries"], cols=obj["cols"])
        if m.rows != obj["rows"]:
            raise ValueError("row count does not match entries")
        return m


# ----------------------------------------------------------------------
# elimination engine (sparse rows as dicts column -> Fraction)
# ----------------------------------------------------------------------


class RowReducer:
    """Incremental reduced row echelon form over sparse rows.

    Rows are dicts mapping column index to a nonzero Fraction.  Each added
    row is reduced against the current pivots; if something survives it
    becomes a new pivot row and the existing pivot rows are cleared in its
    pivot column, so the stored rows are always in RREF.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = {k: v for k, v in row.items() if v}
        # pivot rows vanish on every other pivot column, so one pass suffices
        for c in [c for c in row if c in self.pivots]:
            f = row[c]
            for k, v in self.pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict[int, Fraction]) -> bool:
        """Add a row; return True if it increased the rank."""
        r = self.reduce(dict(row))
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        for c, prow in self.pivots.items():
            f = prow.get(p)
            if f:
                for k, v in r.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivots[p] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref_rows(self) -> list[tuple[Fraction, ...]]:
        out = []
        for p in sorted(self.pivots):
            row = [Fraction(0)] * self.ncols
            for k, v in self.pivots[p].items():
                row[k] = v
            out.append(tuple(row))
        return out

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        free = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for p, prow in self.pivots.items():
                c = prow.get(f)
                if c:
                    v[p] = -c
            basis.append(tuple(v))
        return basis


def _echelon(rows: Iterable[Sequence], ncols: int) -> RowReducer:
    red = RowReducer(ncols)
    for r in rows:
        red.add({j: as_fraction(x) for j, x in enumerate(r) if x})
    return red.pivots


def _reducer(rows: Iterable[Sequence], ncols: int) -> RowReducer:
    red = RowReducer(ncols)
    for r in rows:
        red.add({j: as_fraction(x) for j, x in enumerate(r) if x})
    return red


def rank(M: QMatrix) -> int:
    return M.rank()


def nullspace(M: QMatrix) -> list[QMatrix]:
    """Basis of ``{x : M x = 0}`` as column vectors.

    The basis is the canonical one read off the RREF: one vector per free
    column, with a 1 in that column.
    """
    vecs = _reducer(M, M.cols).nullspace()
    return [QMatrix([[x] for x in v], cols=1) for v in vecs]


def nullspace_vectors(M: QMatrix) -> list[tuple[Fraction, ...]]:
    """Same as :func:`nullspace` but returns plain tuples."""
    return _reducer(M, M.cols).nullspace()


def solve(M: QMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``M x = b`` (free variables set to 0), or None."""
    if len(b) != M.rows:
        raise ValueError("right-hand side has wrong length")
    n = M.cols
    red = _reducer((list(r) + [as_fraction(bi)] for r, bi in zip(M, b)), n + 1)
    if n in red.pivots:
        return None
    x = [Fraction(0)] * n
    for p, prow in red.pivots.items():
        x[p] = prow.get(n, Fraction(0))
    return tuple(x)


# ----------------------------------------------------------------------
# subspaces, given as lists of vectors
# ----------------------------------------------------------------------


def row_space(vectors: Iterable[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    """Canonical (RREF) basis of the span of ``vectors`` inside Q^dim."""
    return _reducer(vectors, dim).rref_rows()


def span_contains(basis: Sequence[Sequence], v: Sequence, dim: int) -> bool:
    red = _reducer(basis, dim)
    return not red.reduce({j: as_fraction(x) for j, x in enumerate(v) if x})


def subspace_equal(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> bool:
    return row_space(a, dim) == row_space(b, dim)


def subspace_intersection(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    """Basis of span(a) ∩ span(b)."""
    a = row_space(a, dim)
    b = row_space(b, dim)
    if not a or not b:
        return []
    # solve sum x_i a_i - sum y_j b_j = 0
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    M = QMatrix.from_columns(cols)
    out = []
    for sol in nullspace_vectors(M):
        out.append(tuple(sum((sol[i] * a[i][k] for i in range(len(a))), Fraction(0)) for k in range(dim)))
    return row_space(out, dim)


def orthogonal_complement(basis: Sequence[Sequence], form: QMatrix) -> list[tuple[Fraction, ...]]:
    """``{x : form(x, v) = 0 for all v in basis}``."""
    if not basis:
        return [tuple(Fraction(int(i == j)) for j in range(form.rows)) for i in range(form.rows)]
    rows = [form.apply(v) for v in basis]
    return nullspace_vectors(QMatrix(rows, cols=form.rows))


def complete_basis(basis: Sequence[Sequence], dim: int, order: Sequence[int] | None = None) -> list[int]:
    """Indices of standard basis vectors completing ``basis`` to Q^dim.

    Standard vectors are tried in ``order`` (default: increasing index) and
    kept greedily, which gives the lexicographically earliest completion.
    """
    red = _reducer(basis, dim)
    chosen = []
    for i in order if order is not None else range(dim):
        if red.add({i: Fraction(1)}):
            chosen.append(i)
    if red.rank != dim:
        raise ValueError("order does not cover a complement")
    return chosen


def coordinates(basis: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...] | None:
    """Coefficients of ``v`` in the (independent) list ``basis``, or None."""
    M = QMatrix.from_columns([list(b) for b in basis]) if basis else QMatrix.zeros(len(v), 0)
    return solve(M, v)


# ----------------------------------------------------------------------
# symmetric forms
# ----------------------------------------------------------------------


def congruence_diagonalize(A: QMatrix) -> tuple[QMatrix, QMatrix]:
    """Return ``(P, D)`` with ``P.T @ A @ P == D`` diagonal and P invertible.

    Symmetric Gaussian elimination.  When every remaining diagonal entry is
    zero but an off-diagonal one is not, column j is added to column k first
    so that the new pivot is ``2 A[k][j]``.
    """
    if not A.is_symmetric():
        raise ValueError("congruence_diagonalize needs a symmetric matrix")
    n = A.rows
    a = [list(r) for r in A]
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in p:
            r[i], r[j] = r[j], r[i]

    def add_col(dst, src, f):
        # column op col_dst += f col_src, and the matching row op
        for r in a:
            r[dst] += f * r[src]
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        for r in p:
            r[dst] += f * r[src]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j]), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j]), None)
                if j is None:
                    continue
                add_col(k, j, Fraction(1))
        piv = a[k][k]
        for i in range(k + 1, n):
            if a[k][i]:
                add_col(i, k, -a[k][i] / piv)
    P = QMatrix(p, cols=n)
    D = QMatrix(a, cols=n)
    assert D.is_diagonal()
    return P, D


def signature(A: QMatrix) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)`` of a symmetric rational matrix."""
    _, D = congruence_diagonalize(A)
    diag = [D[i, i] for i in range(D.rows)]
    return (sum(x > 0 for x in diag), sum(x < 0 for x in diag), sum(x == 0 for x in diag))


def is_rational_square(q) -> bool:
    q = as_fraction(q)
    if q < 0:
        return False
    return all(math.isqrt(x) ** 2 == x for x in (q.numerator, q.denominator))


def same_square_class(gamma, delta) -> bool:
    """True iff ``delta / gamma`` is the square of a rational number."""
    gamma, delta = as_fraction(gamma), as_fraction(delta)
    if gamma == 0 or delta == 0:
        raise ValueError("square classes are only defined for nonzero scalars")
    r = delta / gamma
    n = r.numerator * r.denominator
    return n > 0 and math.isqrt(n) ** 2 == n


def rational_cube_root(q) -> Fraction | None:
    q = as_fraction(q)
    sign = -1 if q < 0 else 1

    def icbrt(n: int) -> int | None:
        lo, hi = 0, 1
        while hi**3 < n:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**3 < n:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**3 == n else None

    num, den = icbrt(abs(q.numerator)), icbrt(q.denominator)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)
