"""Quadratic Lie algebras and the quotient of n_{d,t} by the radical of a form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (
    QMatrix,
    complete_basis,
    nullspace_vectors,
    orthogonal_complement,
    row_space,
    subspace_equal,
)
from .invforms import BilinearForm, kernel_vectors, sym0_membership
from .lie import StructureTable, Vector

__all__ = [
    "NotAdmissibleError",
    "generator_map",
    "indecomposability",
    "QuadraticAlgebra",
    "Report",
    "orthogonality_check",
    "orthogonal_sum",
    "quotient_quadratic",
    "split_1dim",
    "type_and_nilindex",
    "verify_metric_map",
    "verify_quadratic",
]


class NotAdmissibleError(ValueError):
    """The form is not in Sym_0; ``reason`` names the failed condition."""

    def __init__(self, reason: str, witness=None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


@dataclass(frozen=True)
class QuadraticAlgebra:
    table: StructureTable
    form: QMatrix
    labels: tuple[str, ...] = ()
    provenance: Optional[dict] = None

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"a{i + 1}" for i in range(self.table.dim)))
        if len(self.labels) != self.table.dim:
            raise ValueError("one label per basis vector")
        if self.form.shape != (self.table.dim, self.table.dim):
            raise ValueError(f"form is {self.form.shape}, algebra has dimension {self.table.dim}")

    @property
    def dim(self) -> int:
        return self.table.dim

    @classmethod
    def from_products(
        cls,
        dim: int,
        products: Sequence[tuple[int, int, int, object]],
        form: QMatrix,
        labels: Sequence[str] = (),
        provenance: Optional[dict] = None,
    ) -> "QuadraticAlgebra":
        """Build from 1-based ``(i, j, k, c)`` meaning ``[a_i, a_j] += c a_k``."""
        triples = [(i - 1, j - 1, k - 1, c) for i, j, k, c in products]
        return cls(StructureTable.from_triples(dim, triples), form, tuple(labels), provenance)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        return self.table.bracket(u, v)

    def B(self, u: Sequence, v: Sequence) -> Fraction:
        return sum(
            (u[i] * self.form[i, j] * v[j] for i in range(self.dim) for j in range(self.dim) if u[i] and v[j]),
            Fraction(0),
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "structure": [[i + 1, j + 1, k + 1, str(c)] for i, j, k, c in self.table.triples()],
            "form": self.form.to_json()["entries"],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuadraticAlgebra":
        n = obj["dim"]
        return cls.from_products(
            n,
            [(i, j, k, Fraction(c)) for i, j, k, c in obj["structure"]],
            QMatrix(obj["form"], cols=n),
            obj.get("labels", ()),
            obj.get("provenance"),
        )


def orthogonal_sum(*parts: QuadraticAlgebra) -> QuadraticAlgebra:
    triples = []
    labels = []
    blocks = []
    off = 0
    for p in parts:
        triples += [(i + off, j + off, k + off, c) for i, j, k, c in p.table.triples()]
        labels += list(p.labels)
        blocks.append(p.form)
        off += p.dim
    n = off
    M = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                M[off + i][off + j] = b[i, j]
        off += b.rows
    if len(set(labels)) != len(labels):
        labels = [f"a{i + 1}" for i in range(n)]
    return QuadraticAlgebra(StructureTable.from_triples(n, triples), QMatrix(M, cols=n), tuple(labels))


# ----------------------------------------------------------------------
# quotient by the radical
# ----------------------------------------------------------------------


def _complement_indices(ker: list[Vector], dim: int) -> list[int]:
    """Lexicographically earliest basis indices completing ``ker``."""
    return complete_basis(ker, dim)


def quotient_quadratic(B: BilinearForm, complement: Sequence[int] | None = None) -> QuadraticAlgebra:
    """``(n_{d,t} / Ker B, induced form)`` over a complement of Ker B.

    ``complement`` overrides the default choice of Hall basis indices that
    represent the quotient; it must complete Ker B to the whole space.
    """
    m = sym0_membership(B)
    if not m:
        raise NotAdmissibleError(m.reason, m.witness)
    alg = B.algebra
    n = alg.dim
    ker = kernel_vectors(B)
    comp = list(complement) if complement is not None else _complement_indices(ker, n)
    basis = [alg.table.unit(i) for i in comp] + list(ker)
    if len(comp) != n - len(ker) or len(row_space(basis, n)) != n:
        raise ValueError("complement indices do not complete the kernel to a basis")
    # coordinates in (complement, kernel) basis; keep the first q of them
    q = len(comp)
    Tinv = QMatrix.from_columns(basis).inverse()
    triples = []
    for a in range(q):
        for b in range(a):
            v = alg.table.bracket(basis[a], basis[b])
            if not any(v):
                continue
            coords = Tinv.apply(v)
            for k in range(q):
                if coords[k]:
                    triples.append((a, b, k, coords[k]))
    form = B.matrix.submatrix(comp, comp)
    labels = tuple(str(alg.basis[i]) for i in comp)
    prov = {"d": alg.d, "t": alg.t, "complement": [i + 1 for i in comp], "form": B.to_json()}
    return QuadraticAlgebra(StructureTable.from_triples(q, triples), form, labels, prov)


def projection_matrix(B: BilinearForm, Q: QuadraticAlgebra) -> QMatrix:
    """Matrix of the canonical projection n_{d,t} -> Q (q x n)."""
    alg = B.algebra
    comp = [i - 1 for i in Q.provenance["complement"]]
    ker = kernel_vectors(B)
    basis = [alg.table.unit(i) for i in comp] + list(ker)
    Tinv = QMatrix.from_columns(basis).inverse()
    return Tinv.submatrix(list(range(len(comp))), list(range(alg.dim)))


def projection_check(B: BilinearForm, Q: QuadraticAlgebra) -> Optional[tuple[int, int]]:
    """First basis pair where the projection fails to be a homomorphism or isometry."""
    alg = B.algebra
    pi = projection_matrix(B, Q)
    cols = [pi.col(i) for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(alg.dim):
            if pi.apply(alg.table.bracket(alg.table.unit(i), alg.table.unit(j))) != Q.bracket(cols[i], cols[j]):
                return (i, j)
            if Q.B(cols[i], cols[j]) != B.matrix[i, j]:
                return (i, j)
    return None


# ----------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------


@dataclass
class Report:
    checks: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, witness=None) -> None:
        self.checks[name] = {"pass": bool(ok), "witness": witness}

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> dict:
        return {k: v for k, v in self.checks.items() if not v["pass"]}

    def to_json(self) -> dict:
        return {"pass": self.ok, "checks": self.checks}


def verify_quadratic(Q: QuadraticAlgebra) -> Report:
    """Antisymmetry, Jacobi, symmetry, invariance and nondegeneracy."""
    r = Report()
    t = Q.table
    w = t.antisymmetry_violation()
    r.add("antisymmetry", w is None, None if w is None else [i + 1 for i in w])
    w = t.jacobi_violation()
    r.add("jacobi", w is None, None if w is None else [i + 1 for i in w])
    sym = Q.form.is_symmetric()
    r.add("symmetry", sym, None if sym else _asym_witness(Q.form))
    w = t.invariance_violation(Q.form)
    r.add("invariance", w is None, None if w is None else [i + 1 for i in w])
    ns = nullspace_vectors(Q.form)
    r.add("nondegeneracy", not ns, [str(x) for x in ns[0]] if ns else None)
    return r


def _asym_witness(M: QMatrix):
    for i in range(M.rows):
        for j in range(i):
            if M[i, j] != M[j, i]:
                return [i + 1, j + 1]
    return None


class UnverifiedError(ValueError):
    pass


def orthogonality_check(Q: QuadraticAlgebra) -> bool:
    """``(g^i)^⊥ == Z_i(g)`` and ``dim g = dim g^i + dim Z_i`` for all i."""
    if not verify_quadratic(Q):
        raise UnverifiedError("orthogonality_check needs a verified quadratic algebra")
    lower = Q.table.lower_central_series()
    upper = Q.table.upper_central_series()
    if lower[-1] or len(upper[-1]) != Q.dim:
        return False  # not nilpotent
    for i in range(1, len(lower) + 1):
        gi = lower[i - 1]
        zi = upper[i - 1] if i - 1 < len(upper) else upper[-1]
        perp = orthogonal_complement(gi, Q.form)
        if not subspace_equal(perp, zi, Q.dim):
            return False
        if Q.dim != len(gi) + len(zi):
            return False
    return True


class NotNilpotentError(ValueError):
    pass


def type_and_nilindex(Q: QuadraticAlgebra) -> tuple[int, int]:
    lower = Q.table.lower_central_series()
    if lower[-1]:
        raise NotNilpotentError("lower central series does not reach zero")
    # lower = [g^1, ..., g^t, 0]
    return Q.dim - len(lower[1]), len(lower) - 1


@dataclass(frozen=True)
class Splitting:
    ideal: Vector
    complement: QuadraticAlgebra


def split_1dim(Q: QuadraticAlgebra) -> Optional[Splitting]:
    """Split off a central line ``Kx`` with ``B(x, x) != 0`` when one exists.

    The center is scanned for a basis vector or a pairwise sum with
    nonzero norm; if B vanishes on the whole center no such x exists.
    """
    if Q.dim <= 1:
        return None  # the line would be the whole algebra, not a proper ideal
    center = Q.table.center()
    x = None
    for v in center:
        if Q.B(v, v):
            x = v
            break
    if x is None:
        for a in range(len(center)):
            for b in range(a):
                v = tuple(p + q for p, q in zip(center[a], center[b]))
                if Q.B(v, v):
                    x = v
                    break
            if x is not None:
                break
    if x is None:
        return None
    perp = orthogonal_complement([x], Q.form)
    # perp is an ideal (x central) and B is nondegenerate on it
    P = QMatrix.from_columns(perp) if perp else QMatrix.zeros(Q.dim, 0)
    full = QMatrix.from_columns(list(perp) + [x]).inverse()
    m = len(perp)
    triples = []
    for a in range(m):
        for b in range(a):
            v = Q.bracket(perp[a], perp[b])
            if any(v):
                coords = full.apply(v)
                assert not coords[m]
                for k in range(m):
                    if coords[k]:
                        triples.append((a, b, k, coords[k]))
    form = P.T @ Q.form @ P if m else QMatrix.zeros(0)
    comp = QuadraticAlgebra(StructureTable.from_triples(m, triples), form, tuple(f"b{i + 1}" for i in range(m)))
    return Splitting(x, comp)


def indecomposability(Q: QuadraticAlgebra) -> str:
    """How far indecomposability of Q is established.

    ``"decomposable"`` when a central line splits off; ``"certified"`` when
    a known criterion applies (nonabelian of type 2, or a quotient of
    n_{3,3} whose A2 block has rank >= 2); otherwise only the 1-dimensional
    search was run and the answer is ``"no 1-dim splitting found"``.
    """
    if Q.dim > 1 and split_1dim(Q) is not None:
        return "decomposable"
    if Q.dim <= 1:
        return "certified"
    typ, nil = type_and_nilindex(Q)
    if typ == 2 and nil >= 2:
        return "certified"
    prov = Q.provenance or {}
    if (prov.get("d"), prov.get("t")) == (3, 3) and "form" in prov:
        A2 = QMatrix(prov["form"]["matrix"]).submatrix([3, 4, 5], [3, 4, 5])
        if A2.rank() >= 2:
            return "certified"
    return "no 1-dim splitting found"


@dataclass(frozen=True)
class MapCheck:
    ok: bool
    reason: str = ""
    witness: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_metric_map(theta: QMatrix, source: QuadraticAlgebra, target: QuadraticAlgebra) -> MapCheck:
    """Is ``theta`` (columns = images of source basis) a metric Lie isomorphism?"""
    if theta.shape != (target.dim, source.dim) or source.dim != target.dim:
        raise ValueError(f"map of shape {theta.shape} between dims {source.dim} and {target.dim}")
    if theta.rank() != source.dim:
        return MapCheck(False, "not invertible")
    w = source.table.is_homomorphism(theta, target.table)
    if w is not None:
        return MapCheck(False, "bracket", (w[0] + 1, w[1] + 1))
    pulled = theta.T @ target.form @ theta
    for i in range(source.dim):
        for j in range(source.dim):
            if pulled[i, j] != source.form[i, j]:
                return MapCheck(False, "form", (i + 1, j + 1))
    return MapCheck(True)


def change_of_complement(B: BilinearForm, Q1: QuadraticAlgebra, Q2: QuadraticAlgebra) -> QMatrix:
    """The induced isomorphism Q1 -> Q2 between two quotients of the same form."""
    pi2 = projection_matrix(B, Q2)
    comp1 = [i - 1 for i in Q1.provenance["complement"]]
    return QMatrix.from_columns([pi2.col(i) for i in comp1])


def generator_map(Q: QuadraticAlgebra, target: QuadraticAlgebra, images: Sequence[Sequence]) -> QMatrix:
    """Linear map Q -> target fixed by images of the generators x_1..x_d.

    Q must come from :func:`quotient_quadratic`: each basis vector of Q is
    a Hall word, and its image is the same bracket word evaluated on the
    generator images.  Whether the result is a homomorphism (or an
    isometry) is left to :func:`verify_metric_map`.
    """
    from .freenilp import hall_basis

    prov = Q.provenance or {}
    if "complement" not in prov:
        raise ValueError("generator_map needs a quotient produced by quotient_quadratic")
    words = hall_basis(prov["d"], prov["t"])
    if len(images) != prov["d"]:
        raise ValueError(f"expected {prov['d']} generator images")
    imgs = [tuple(Fraction(x) for x in v) for v in images]
    memo = {}

    def ev(w):
        if w not in memo:
            memo[w] = imgs[w.gen - 1] if w.is_generator else target.bracket(ev(w.left), ev(w.right))
        return memo[w]

    return QMatrix.from_columns([ev(words[i - 1]) for i in prov["complement"]], nrows=target.dim)
