"""Mechanical replays of the classification's computational claims.

Each tag bundles the identities behind one classification step.  Claims
stated for symbolic entries are checked at ``samples`` independent random
rational points; an identity between low-degree polynomials that holds at
all of them is reported as verified.  Every sample draws from its own
``random.Random`` seeded by the string ``"<tag>:<seed>:<i>"``, so reports
are reproducible and independent of evaluation order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Optional

from ..autgroup import act_on_form, extend, graded, random_automorphism, random_gl
from ..exactlin import (
    FieldMode,
    QMatrix,
    congruence_diagonalize,
    row_space,
    same_square_class,
    solve,
    subspace_equal,
)
from ..freenilp import FreeNilpotent
from ..invforms import (
    BilinearForm,
    bk_components,
    block,
    invariant_form_space,
    kernel_vectors,
    sym0_membership,
)
from ..autgroup import orbit_invariants
from ..quadratize import (
    QuadraticAlgebra,
    generator_map,
    orthogonal_sum,
    orthogonality_check,
    quotient_quadratic,
    split_1dim,
    type_and_nilindex,
    verify_metric_map,
    verify_quadratic,
)
from .catalog import CATALOG_LABELS, classified_algebra
from .families import C3, FamilySpec, a2prime, family_form, sym
from .fields import matrix_class
from .identities import adj, adjugate_congruence_check, cube_root_witness, det_twisted_congruence_check
from .kernels import GARBLED_READINGS, KERNEL_SPANS, combination

__all__ = ["TAGS", "Check", "ReplayReport", "replay_theorem"]


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QMatrix):
        return x.to_json()["entries"]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return repr(x)


@dataclass
class Check:
    name: str
    passed: bool
    samples: int = 1
    witness: Any = None
    detail: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed, "samples": self.samples}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.detail is not None:
            out["detail"] = jsonable(self.detail)
        return out


@dataclass
class ReplayReport:
    tag: str
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "seed": self.seed,
            "pass": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


class _Run:
    """Collects checks for one tag."""

    def __init__(self, tag: str, seed: int, samples: int):
        self.tag, self.seed, self.samples = tag, seed, samples
        self.checks: list[Check] = []

    def rng(self, i: int, salt: str = "") -> random.Random:
        return random.Random(f"{self.tag}:{self.seed}:{salt}:{i}")

    def once(self, name: str, ok: bool, witness=None, detail=None) -> None:
        self.checks.append(Check(name, bool(ok), 1, None if ok else witness, detail))

    def sample(self, name: str, fn: Callable[[random.Random], tuple[bool, Any]], n: int | None = None) -> None:
        """Run ``fn`` on n fresh generators; the first failure is the witness."""
        n = self.samples if n is None else n
        for i in range(n):
            ok, info = fn(self.rng(i, name))
            if not ok:
                self.checks.append(Check(name, False, i + 1, {"sample": i, "data": info}))
                return
        self.checks.append(Check(name, True, n))


# ----------------------------------------------------------------------
# random data
# ----------------------------------------------------------------------


def rq(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        if q or not nonzero:
            return q


def rsym(rng: random.Random, n: int) -> QMatrix:
    return sym(*[rq(rng) for _ in range(n * (n + 1) // 2)])


def rsym_rank(rng: random.Random, n: int, r: int) -> QMatrix:
    """Symmetric n x n matrix of rank r (exactly): Q^t diag(s, 0) Q."""
    Q = random_gl(rng, n)
    D = QMatrix.diag([rq(rng, nonzero=True) if i < r else 0 for i in range(n)])
    return Q.T @ D @ Q


def rgl(rng: random.Random, n: int) -> QMatrix:
    while True:
        M = QMatrix([[rq(rng) for _ in range(n)] for _ in range(n)])
        if M.det():
            return M


@lru_cache(maxsize=None)
def algebra(d: int, t: int) -> FreeNilpotent:
    return FreeNilpotent(d, t)


def form(fam: str, A1=None, gamma=0, A2=None) -> BilinearForm:
    spec = FamilySpec(fam, A1=A1, gamma=gamma, A2=A2)
    return family_form(spec, algebra(spec.d, spec.t))


def is_extension(alg: FreeNilpotent, M: QMatrix) -> bool:
    """Is M the matrix of the endomorphism fixed by its first d columns?"""
    return extend([alg.element(M.col(i)) for i in range(alg.d)]).matrix == M


def unipotent(alg: FreeNilpotent, lower: list[QMatrix]):
    """N-element with x_j -> x_j + sum_k lower[k][:, j] (lower[k] on s_{k+2})."""
    images = []
    for j in range(alg.d):
        v = [Fraction(0)] * alg.dim
        v[j] = Fraction(1)
        for k, M in enumerate(lower):
            for r, idx in enumerate(alg.grade_indices(k + 2)):
                v[idx] = M[r, j]
        images.append(alg.element(v))
    return extend(images)


def _diff(A: QMatrix, B: QMatrix):
    return [(i + 1, j + 1, A[i, j], B[i, j]) for i in range(A.rows) for j in range(A.cols) if A[i, j] != B[i, j]][:4]


# ----------------------------------------------------------------------
# printed matrices
# ----------------------------------------------------------------------


def p23_normalizer(u, v, w, gamma) -> QMatrix:
    """Automorphism of n_{2,3} carrying B^{0;gamma} to B^{(u v; v w);gamma}."""
    g = Fraction(gamma)
    return QMatrix(
        [
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [-Fraction(v) / g, -Fraction(w) / (2 * g), 0, 1, 0],
            [Fraction(u) / (2 * g), 0, 0, 0, 1],
        ]
    )


def q23_scaling(eps) -> QMatrix:
    e = Fraction(eps)
    return QMatrix.diag([e, 1, e, e * e, e])


def r23_general(a, b, c, d, alphas, printed: bool = False) -> QMatrix:
    """General automorphism of n_{2,3} with grade-1 block (a b; c d).

    The printed matrix has ``(alpha_2, -alpha_1)`` in the (s_3, s_2) column,
    which is right only when (a b; c d) is the identity; in general that
    column is ``(a alpha_2 - b alpha_1, c alpha_2 - d alpha_1)``.
    """
    a1, a2, a3, a4, a5, a6 = alphas
    e = a * d - b * c
    u, v = (a2, -a1) if printed else (a * a2 - b * a1, c * a2 - d * a1)
    return QMatrix(
        [
            [a, b, 0, 0, 0],
            [c, d, 0, 0, 0],
            [a1, a2, e, 0, 0],
            [a3, a4, u, e * a, e * b],
            [a5, a6, v, e * c, e * d],
        ]
    )


def x25_case(p, q, r, gamma, d, e, f):
    """(C, E, printed C'^t) of the unipotent automorphism clearing A1 and gamma.

    Here A1 = (p q; q r) and A2 = (d e; e f) with A2 != 0.
    """
    g = gamma
    if f:
        C = [[0, 0], [g / (2 * f), 0]]
        Et = [[0, 0, 0, 0, 0, (g * g - 4 * p * f) / (8 * f * f)],
              [0, 0, 0, 0, r / (2 * f), (e * r - 2 * q * f) / (2 * f * f)]]
        Cp = [0, 0, -g / (2 * f)]
    elif d:
        C = [[0, -g / (2 * d)], [0, 0]]
        Et = [[q / d, -p / (2 * d), 0, 0, 0, 0], [(4 * d * r - g * g) / (8 * d * d), 0, 0, 0, 0, 0]]
        Cp = [-g / (2 * d), 0, 0]
    elif e:
        C = [[g / (2 * e), 0], [0, 0]]
        Et = [[0, 0, q / e, 0, p / (2 * e), 0], [0, 0, r / (2 * e), 0, 0, 0]]
        Cp = [0, -g / (2 * e), 0]
    else:
        raise ValueError("A2 must be nonzero")
    return QMatrix(C), QMatrix(Et).T, QMatrix([Cp])


def p32_normalizer(A1: QMatrix, gamma) -> QMatrix:
    """Automorphism of n_{3,2} with P^t B^{0;1} P = B^{A1;gamma}."""
    g = Fraction(gamma)
    p, q, r, s, t, u = A1[0, 0], A1[0, 1], A1[0, 2], A1[1, 1], A1[1, 2], A1[2, 2]
    return QMatrix(
        [
            [g, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, u / 2, g, 0, 0],
            [0, -s / 2, -t, 0, g, 0],
            [p / (2 * g), q / g, r / g, 0, 0, 1],
        ]
    )


def minors_block(A: QMatrix) -> QMatrix:
    """[[A33, A32, A31], [A23, A22, A21], [A13, A12, A11]] with A_ij the (i,j) minor."""

    def minor(i, j):
        return A.submatrix([r for r in range(3) if r != i], [c for c in range(3) if c != j]).det()

    return QMatrix([[minor(2 - i, 2 - j) for j in range(3)] for i in range(3)])


def u_prime(U: QMatrix) -> QMatrix:
    """The printed 8x3 block U' of a unipotent automorphism of n_{3,3}."""
    x1, x2, x3, x4, x5, x6, x7, x8, x9 = [U[i, j] for i in range(3) for j in range(3)]
    return QMatrix(
        [
            [x2, -x1, -x8, x5, x8 - x4, 0, -x7, 0],
            [x3, 0, -x9 - x1, x6, x9, -x4, 0, -x7],
            [0, x3, -x2, 0, x6, -x5, x9, -x8],
        ]
    ).T


def relation(A2: QMatrix, gamma, U: QMatrix) -> Fraction:
    """gamma + c x1 - b x2 + a x3 + e x4 - d x5 + b x6 + f x7 - e x8 + c x9."""
    a, b, c, d, e, f = A2[0, 0], A2[0, 1], A2[0, 2], A2[1, 1], A2[1, 2], A2[2, 2]
    x1, x2, x3, x4, x5, x6, x7, x8, x9 = [U[i, j] for i in range(3) for j in range(3)]
    return gamma + c * x1 - b * x2 + a * x3 + e * x4 - d * x5 + b * x6 + f * x7 - e * x8 + c * x9


def relation_coefficients(A2: QMatrix) -> list[Fraction]:
    a, b, c, d, e, f = A2[0, 0], A2[0, 1], A2[0, 2], A2[1, 1], A2[1, 2], A2[2, 2]
    return [c, -b, a, e, -d, b, f, -e, c]


def d_matrices(A2: QMatrix):
    """(D from the columns of A2', printed D, printed D')."""
    a, b, c, d, e, f = A2[0, 0], A2[0, 1], A2[0, 2], A2[1, 1], A2[1, 2], A2[2, 2]
    Ap = a2prime(A2)
    col = [Ap.col(i) for i in range(8)]
    neg = lambda v: [-x for x in v]
    sub = lambda u, v: [x - y for x, y in zip(u, v)]
    built = QMatrix.from_columns([col[1], col[4], col[6], neg(col[0]), neg(col[3]), sub(col[2], col[4]), col[5], col[7]])
    D = QMatrix([[a, b, c, 0, 0, 0, d, e], [0, 0, 0, a, b, c, e, f], [-c, -e, -f, b, d, e, 0, 0]])
    Dp = QMatrix([[a, b, c, 0, 0, 0, e, f], [b, d, e, -c, -e, -f, 0, 0], [0, 0, 0, a, b, c, d, e]])
    return built, D, Dp


# ----------------------------------------------------------------------
# replays
# ----------------------------------------------------------------------


def _abelian(run: _Run) -> None:
    for d in (1, 2, 3):
        alg = algebra(d, 1)
        run.once(f"n_{d},1: every symmetric form is invariant", len(invariant_form_space(alg)) == d * (d + 1) // 2)

    def member_iff_nondegenerate(rng):
        d = rng.randint(1, 3)
        A = rsym_rank(rng, d, rng.randint(0, d))
        m = bool(sym0_membership(BilinearForm(algebra(d, 1), A)))
        return m == (A.rank() == d), {"A": A}

    run.sample("member iff nondegenerate", member_iff_nondegenerate)

    def orbit_is_congruence(rng):
        d = rng.randint(1, 3)
        alg = algebra(d, 1)
        A, P = rsym(rng, d), rgl(rng, d)
        got = act_on_form(BilinearForm(alg, A), graded(alg, P)).matrix
        return got == P.T @ A @ P, {"A": A, "P": P}

    run.sample("action of Aut n_{d,1} is congruence", orbit_is_congruence)

    def orthogonal_basis(rng):
        A = rsym(rng, rng.randint(1, 3))
        P, D = congruence_diagonalize(A)
        return P.det() != 0 and P.T @ A @ P == D and D.is_diagonal(), {"A": A}

    run.sample("orthogonal basis exists", orthogonal_basis)


def _type2(run: _Run) -> None:
    for t in (2, 4):
        alg = algebra(2, t)
        space = invariant_form_space(alg)
        top = alg.grade_indices(t)
        # n^t ⊆ Ker B is linear in B, so the basis of the space decides it
        bad = [k for k, B in enumerate(space) if any(B.matrix[i, j] for i in top for j in range(alg.dim))]
        run.once(f"n_2,{t}: n^t inside Ker B for the whole form space", not bad, {"form": bad[:1]})
        nonzero_b1 = [k for k, B in enumerate(space) if not bk_components(B)[0].matrix.is_zero()]
        run.once(f"n_2,{t}: B_1 = 0 on the whole form space", not nonzero_b1, {"form": nonzero_b1[:1]})

    def member23(rng):
        g = rq(rng) if rng.random() < 0.7 else Fraction(0)
        B = form("B23", A1=rsym(rng, 2), gamma=g)
        return bool(sym0_membership(B)) == (g != 0), {"gamma": g}

    run.sample("n_2,3: member iff gamma != 0", member23)

    def p_identity(rng):
        u, v, w, g = rq(rng), rq(rng), rq(rng), rq(rng, nonzero=True)
        P = p23_normalizer(u, v, w, g)
        lhs = P.T @ form("B23", gamma=g).matrix @ P
        rhs = form("B23", A1=sym(u, v, w), gamma=g).matrix
        return is_extension(algebra(2, 3), P) and lhs == rhs, {"u": u, "v": v, "w": w, "gamma": g}

    run.sample("P^t B^{0;g} P = B^{(u v; v w);g}", p_identity)

    def q_identity(rng):
        e, g = rq(rng, nonzero=True), rq(rng, nonzero=True)
        Q = q23_scaling(e)
        ok = is_extension(algebra(2, 3), Q) and Q.T @ form("B23", gamma=g).matrix @ Q == form("B23", gamma=e * e * g).matrix
        return ok, {"eps": e, "gamma": g}

    run.sample("Q^t B^{0;g} Q = B^{0;eps^2 g}", q_identity)

    def r_shape(rng):
        alg = algebra(2, 3)
        while True:
            a, b, c, d = (rq(rng) for _ in range(4))
            if a * d - b * c:
                break
        R = r23_general(a, b, c, d, [rq(rng) for _ in range(6)])
        g = rq(rng, nonzero=True)
        out = R.T @ form("B23", gamma=g).matrix @ R
        A1 = out.submatrix([0, 1], [0, 1])
        eps = a * d - b * c
        return is_extension(alg, R) and out == form("B23", A1=A1, gamma=g * eps * eps).matrix, {"R": R}

    run.sample("R is an automorphism and R^t B^{0;g} R = B^{*;g eps^2}", r_shape)

    def aut23_has_r_shape(rng):
        alg = algebra(2, 3)
        M = random_automorphism(alg, rng).matrix
        a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
        al = [M[2, 0], M[2, 1], M[3, 0], M[3, 1], M[4, 0], M[4, 1]]
        return M == r23_general(a, b, c, d, al), {"M": M}

    run.sample("every automorphism of n_2,3 has the R shape", aut23_has_r_shape)

    def r_printed(rng):
        alg = algebra(2, 3)
        al = [rq(rng) for _ in range(6)]
        P = r23_general(1, 0, 0, 1, al, printed=True)
        return is_extension(alg, P) and P == r23_general(1, 0, 0, 1, al), {"alphas": al}

    run.sample("printed R agrees with the general shape on unipotent elements", r_printed)

    def h23_block(rng):
        alg = algebra(2, 3)
        A = rgl(rng, 2)
        det = A.det()
        want = QMatrix.block([[A, QMatrix.zeros(2, 3)], [QMatrix.zeros(3, 2), QMatrix.block([[QMatrix([[det]]), QMatrix.zeros(1, 2)], [QMatrix.zeros(2, 1), A * det]])]])
        return graded(alg, A).matrix == want, {"A": A}

    run.sample("H(2,3) = diag(A, det A, det A . A)", h23_block)

    def member25(rng):
        r = rng.randint(0, 2)
        A2 = rsym_rank(rng, 2, r)
        B = form("B25", A1=rsym(rng, 2), gamma=rq(rng), A2=A2)
        m = sym0_membership(B)
        alg = algebra(2, 5)
        top = all(not any(B.matrix[i, j] for j in range(alg.dim)) for i in alg.grade_indices(5))
        return bool(m) == (r >= 1) and top == (r == 0), {"A2": A2}

    run.sample("n_2,5: member iff A2 != 0, and n^5 inside Ker iff A2 = 0", member25)

    alg25 = algebra(2, 5)
    for case in ("f != 0", "f = 0, d != 0", "f = d = 0, e != 0"):

        def x_case(rng, case=case):
            p, q, r, g = rq(rng), rq(rng), rq(rng), rq(rng)
            d, e, f = rq(rng, True), rq(rng, True), rq(rng, True)
            if case != "f != 0":
                f = Fraction(0)
            if case == "f = d = 0, e != 0":
                d = Fraction(0)
            A2 = sym(d, e, f)
            C, E, Cp = x25_case(p, q, r, g, d, e, f)
            X = unipotent(alg25, [QMatrix.zeros(1, 2), C, QMatrix.zeros(3, 2), E])
            zero_blocks = all(X.grade_block(i, j).is_zero() for i, j in ((3, 2), (4, 3), (5, 4), (5, 2)))
            cprime = X.grade_block(4, 2) == Cp.T
            got = act_on_form(form("B25", A2=A2), X).matrix
            want = form("B25", A1=sym(p, q, r), gamma=g, A2=A2).matrix
            return zero_blocks and cprime and got == want, {"p": p, "q": q, "r": r, "gamma": g, "A2": A2, "diff": _diff(got, want)}

        run.sample(f"X(0,C,0,E)^t B^{{0;0;A2}} X = B^{{A1;g;A2}} ({case})", x_case)

    def graded25(rng):
        P = rgl(rng, 2)
        A2 = rsym(rng, 2)
        h = graded(alg25, P)
        det = P.det()
        ok_blocks = h.grade_block(2, 2) == QMatrix([[det]]) and h.grade_block(3, 3) == P * det
        B2 = (P.T @ A2 @ P) * (det * det)
        got = act_on_form(form("B25", A2=A2), h).matrix
        return ok_blocks and got == form("B25", A2=B2).matrix and det_twisted_congruence_check(A2, B2, P), {"P": P, "A2": A2}

    run.sample("X(P;0,0,0,0) sends B^{0;0;A2} to B^{0;0;det(P)^2 P^t A2 P}", graded25)


def _square_classes(run: _Run) -> None:
    n23 = algebra(2, 3)

    def scaling_map(rng):
        e, g = rq(rng, True), rq(rng, True)
        src = quotient_quadratic(form("B23", gamma=e * e * g))
        tgt = quotient_quadratic(form("B23", gamma=g))
        ok = bool(verify_metric_map(q23_scaling(e), src, tgt)) and same_square_class(g, e * e * g)
        return ok, {"eps": e, "gamma": g}

    run.sample("theta_Q is a metric isomorphism between gamma and eps^2 gamma", scaling_map)

    def necessity(rng):
        M = random_automorphism(n23, rng).matrix
        g = rq(rng, True)
        out = M.T @ form("B23", gamma=g).matrix @ M
        return same_square_class(g, out[2, 2]), {"M": M, "gamma": g}

    run.sample("automorphisms move gamma within its square class", necessity)

    run.once("1 and 2 lie in different square classes", not same_square_class(1, 2))
    run.once("3 and 27 lie in the same square class", same_square_class(3, 27))

    def cube_root(rng):
        P0 = rgl(rng, 2)
        P = P0 * P0.det()  # det P = det(P0)^3 is a rational cube
        A = rsym(rng, 2)
        R = cube_root_witness(P)
        return R is not None and det_twisted_congruence_check(A, P.T @ A @ P, R), {"P": P, "A": A}

    run.sample("R = P / cbrt(det P) gives B = det(R)^2 R^t A R", cube_root)

    def t5_quotients(rng):
        alg = algebra(2, 5)
        A = rsym_rank(rng, 2, rng.randint(1, 2))
        P = rgl(rng, 2)
        det = P.det()
        B = (P.T @ A @ P) * (det * det)
        QA, QB = quotient_quadratic(form("B25", A2=A)), quotient_quadratic(form("B25", A2=B))
        images = [list(P.col(i)) + [0] * (QA.dim - 2) for i in range(2)]
        theta = generator_map(QB, QA, images)
        return bool(verify_metric_map(theta, QB, QA)), {"A": A, "P": P}

    run.sample("det-twisted congruent A2 give isometric n_2,5 quotients", t5_quotients)

    def indecomposable(rng):
        if rng.random() < 0.5:
            B = form("B23", A1=rsym(rng, 2), gamma=rq(rng, True))
        else:
            B = form("B25", A1=rsym(rng, 2), gamma=rq(rng), A2=rsym_rank(rng, 2, rng.randint(1, 2)))
        Q = quotient_quadratic(B)
        return split_1dim(Q) is None and type_and_nilindex(Q)[0] == 2, {"form": B.matrix}

    run.sample("type-2 quotients have no 1-dimensional splitting", indecomposable)


def _a2prime_rank(run: _Run) -> None:
    def ranks(rng):
        r = rng.randint(0, 3)
        A2 = rsym_rank(rng, 3, r) if rng.random() < 0.8 else rsym(rng, 3)
        ra, rp = A2.rank(), a2prime(A2).rank()
        ok = ((ra >= 2) == (rp == 3)) and ((ra == 1) == (rp == 2))
        return ok, {"A2": A2, "rank": ra, "rank_prime": rp}

    run.sample("rank A2 >= 2 iff rank A2' = 3; rank A2 = 1 iff rank A2' = 2", ranks, max(500, run.samples))

    def d_shapes(rng):
        A2 = rsym(rng, 3)
        built, D, Dp = d_matrices(A2)
        # D' reorders the rows of D as (2, 3, 1) and swaps column blocks 1-3 and 4-6
        perm_cols = [3, 4, 5, 0, 1, 2, 6, 7]
        reordered = D.submatrix([1, 2, 0], perm_cols)
        same_rank = a2prime(A2).rank() == D.rank() == Dp.rank()
        return built == D and reordered == Dp and same_rank, {"A2": A2}

    run.sample("D from columns of A2' and its reordering D'", d_shapes)

    def d_second(rng):
        v = [rq(rng, True), rq(rng), rq(rng)]
        k = rq(rng, True)
        A2 = QMatrix([[k * x * y for y in v] for x in v])
        a, b, c = A2.row(0)
        lam, mu = A2[0, 1] / a, A2[0, 2] / a
        _, D, _ = d_matrices(A2)
        r3 = [D[2, j] + mu * D[0, j] - lam * D[1, j] for j in range(8)]
        return not any(r3) and D.rank() == 2, {"A2": A2}

    run.sample("rank-1 A2: third row of D'' vanishes", d_second)

    def splitting(rng):
        r = rng.choice([1, 2, 3])
        A2 = rsym_rank(rng, 3, r)
        B = form("B33", A1=rsym(rng, 3), gamma=rq(rng), A2=A2)
        if not sym0_membership(B):
            return True, None
        Q = quotient_quadratic(B)
        s = split_1dim(Q)
        if r == 1:
            ok = s is not None and type_and_nilindex(s.complement) == (2, 3) and bool(verify_quadratic(s.complement))
        else:
            ok = s is None
        return ok, {"A2": A2, "rank": r}

    run.sample("rank A2 = 1 quotients split off n_1,1; rank >= 2 do not split", splitting)


def _type3_t2(run: _Run) -> None:
    alg = algebra(3, 2)

    def member(rng):
        g = rq(rng) if rng.random() < 0.7 else Fraction(0)
        return bool(sym0_membership(form("B32", A1=rsym(rng, 3), gamma=g))) == (g != 0), {"gamma": g}

    run.sample("n_3,2: member iff gamma != 0", member)

    def normalizer(rng):
        A1, g = rsym(rng, 3), rq(rng, True)
        P = p32_normalizer(A1, g)
        ok = is_extension(alg, P) and P.T @ form("B32", gamma=1).matrix @ P == form("B32", A1=A1, gamma=g).matrix
        return ok, {"A1": A1, "gamma": g}

    run.sample("P^t B^{0;1} P = B^{A1;g} on n_3,2", normalizer)

    def h32(rng):
        A = rgl(rng, 3)
        blk = graded(alg, A).grade_block(2, 2)
        return blk == minors_block(A) == C3 @ adj(A) @ C3, {"A": A}

    run.sample("grade-2 block of H(3,2) is the minors block C Adj(A) C", h32)


def _type3_t3(run: _Run) -> None:
    alg = algebra(3, 3)

    def aut_shape(rng):
        X = random_automorphism(alg, rng)
        P = X.grade_block(1, 1)
        ok = X.grade_block(2, 2) == C3 @ adj(P) @ C3 and X.grade_block(3, 3) == graded(alg, P).grade_block(3, 3)
        return ok, {"X": X.matrix}

    run.sample("automorphisms of n_3,3 have diagonal blocks P, C Adj(P) C, P''", aut_shape)

    def uprime(rng):
        U = QMatrix([[rq(rng) for _ in range(3)] for _ in range(3)])
        X = unipotent(alg, [U, QMatrix.zeros(8, 3)])
        return X.grade_block(3, 2) == u_prime(U), {"U": U}

    run.sample("U' block of X(I;U,V) matches the printed formula", uprime)

    def h_action(rng):
        P, A1, A2, g = rgl(rng, 3), rsym(rng, 3), rsym(rng, 3), rq(rng)
        h = graded(alg, P)
        Pp = h.grade_block(3, 3)
        got = act_on_form(form("B33", A1=A1, gamma=g, A2=A2), h)
        K = adj(P)
        ok = (
            block(got, alg, 1, 1) == P.T @ A1 @ P
            and block(got, alg, 1, 2) == C3 * (g * P.det())
            and block(got, alg, 1, 3) == P.T @ a2prime(A2) @ Pp
            and block(got, alg, 2, 2) == C3 @ adj(P.T) @ C3 @ A2 @ C3 @ K @ C3
        )
        return ok, {"P": P, "A1": A1, "A2": A2, "gamma": g}

    run.sample("H(3,3) action on B^{A1;g;A2}", h_action)

    def n_action(rng):
        A1, A2, g = rsym(rng, 3), rsym(rng, 3), rq(rng)
        U = QMatrix([[rq(rng) for _ in range(3)] for _ in range(3)])
        V = QMatrix([[rq(rng) for _ in range(3)] for _ in range(8)])
        X = unipotent(alg, [U, V])
        got = act_on_form(form("B33", A1=A1, gamma=g, A2=A2), X)
        W, Ap, Up = C3 * g, a2prime(A2), u_prime(U)
        top = A1 + U.T @ W + V.T @ Ap.T + W @ U + U.T @ A2 @ U + Ap @ V
        mid = W + U.T @ A2 + Ap @ Up
        ok = (
            block(got, alg, 1, 1) == top
            and block(got, alg, 1, 2) == mid
            and block(got, alg, 1, 3) == Ap
            and block(got, alg, 2, 2) == A2
            and block(got, alg, 2, 3).is_zero()
        )
        return ok, {"U": U, "A2": A2, "gamma": g}

    run.sample("N(3,3) action on B^{A1;g;A2}", n_action)

    def eliminate_gamma(rng):
        A2 = rsym_rank(rng, 3, rng.randint(1, 3))
        A1, g = rsym(rng, 3), rq(rng, True)
        x = [rq(rng) for _ in range(9)]
        coef = relation_coefficients(A2)
        k = next(i for i, c in enumerate(coef) if c)
        x[k] = 0
        x[k] = -relation(A2, g, QMatrix([x[0:3], x[3:6], x[6:9]])) / coef[k]
        U = QMatrix([x[0:3], x[3:6], x[6:9]])
        got = act_on_form(form("B33", A1=A1, gamma=g, A2=A2), unipotent(alg, [U, QMatrix.zeros(8, 3)]))
        Y = block(got, alg, 1, 1)
        return got.matrix == form("B33", A1=Y, A2=A2).matrix, {"A2": A2, "gamma": g}

    run.sample("a solution of the linear relation removes gamma", eliminate_gamma)

    def solve_v(rng):
        A2 = rsym_rank(rng, 3, rng.randint(2, 3))
        Y = rsym(rng, 3)
        Ap = a2prime(A2)
        cols = [solve(Ap, [y / 2 for y in Y.col(j)]) for j in range(3)]
        if any(c is None for c in cols):
            return False, {"A2": A2, "reason": "A2' V = Y/2 unsolvable"}
        V = QMatrix.from_columns(cols)
        got = act_on_form(form("B33", A2=A2), unipotent(alg, [QMatrix.zeros(3), V]))
        return got.matrix == form("B33", A1=Y, A2=A2).matrix, {"A2": A2, "Y": Y}

    run.sample("rank A2 >= 2: N(3,3) reaches every B^{Y;0;A2}", solve_v)

    # the rank-1 pair: equal A2 blocks, different orbits
    A1, A2 = sym(0, 0, 0, 0, 0, 1), sym(1, 0, 0, 0, 0, 0)
    B1, B0 = form("B33", A1=A1, A2=A2), form("B33", A2=A2)
    i1, i0 = orbit_invariants(B1), orbit_invariants(B0)
    m1, m0 = sym0_membership(B1), sym0_membership(B0)
    run.once(
        "rank-1 pair B^{E33;0;E11}, B^{0;0;E11} lie in different orbits",
        i1 != i0 and adjugate_congruence_check(A2, A2, QMatrix.identity(3)),
        detail={
            "invariants": [i1.to_json(), i0.to_json()],
            "e2_block_ranks": [block(B1, alg, 2, 2).rank(), block(B0, alg, 2, 2).rank()],
            "membership": [m1.to_json(), m0.to_json()],
        },
    )


def _type3_relation(run: _Run) -> None:
    def collapse(rng):
        A2, g = rsym(rng, 3), rq(rng)
        U = QMatrix([[rq(rng) for _ in range(3)] for _ in range(3)])
        M = C3 * g + U.T @ A2 + a2prime(A2) @ u_prime(U)
        L = relation(A2, g, U)
        return M == C3 * L, {"A2": A2, "gamma": g, "U": U}

    run.sample("W_g + U^t A2 + A2' U' = L(x) C for all nine entries", collapse)

    def only_relation(rng):
        # with U' computed by extend rather than the printed formula
        alg = algebra(3, 3)
        A2, g = rsym(rng, 3), rq(rng)
        U = QMatrix([[rq(rng) for _ in range(3)] for _ in range(3)])
        Up = unipotent(alg, [U, QMatrix.zeros(8, 3)]).grade_block(3, 2)
        M = C3 * g + U.T @ A2 + a2prime(A2) @ Up
        return M == C3 * relation(A2, g, U), {"A2": A2, "gamma": g, "U": U}

    run.sample("same collapse with U' read off the automorphism", only_relation)


def _type3_adjugate(run: _Run) -> None:
    alg = algebra(3, 3)

    def construct(rng):
        A, P = rsym(rng, 3), rgl(rng, 3)
        K = adj(P)
        B = C3 @ K.T @ C3 @ A @ C3 @ K @ C3
        E = QMatrix([[int(i == j == 0) for j in range(3)] for i in range(3)])
        return adjugate_congruence_check(A, B, P) and not adjugate_congruence_check(A, B + E, P), {"A": A, "P": P}

    run.sample("CBC = Adj(P)^t CAC Adj(P): constructed holds, perturbed fails", construct)

    def square_root(rng):
        R0 = rgl(rng, 3)
        R = R0 * R0.det()  # det R = det(R0)^4, a positive square
        root = Fraction(abs(R0.det())) ** 2
        P = C3 @ R.inverse().T @ C3 * root
        A = rsym(rng, 3)
        B = R.T @ A @ R
        return adj(P) == C3 @ R @ C3 and adjugate_congruence_check(A, B, P), {"R": R, "A": A}

    run.sample("P = sqrt(det R) C (R^-1)^t C satisfies Adj(P) = CRC", square_root)

    def negative_det(rng):
        R0 = rgl(rng, 3)
        R = R0 * (-R0.det())  # det R = -det(R0)^4 < 0
        S = -R
        A = rsym(rng, 3)
        return S.det() > 0 and S.T @ A @ S == R.T @ A @ R, {"R": R}

    run.sample("real case: S = -R has positive determinant", negative_det)

    def quotients(rng):
        A = rsym_rank(rng, 3, rng.randint(2, 3))
        R0 = rgl(rng, 3)
        R = R0 * R0.det()
        P = C3 @ R.inverse().T @ C3 * (Fraction(abs(R0.det())) ** 2)
        B = R.T @ A @ R
        h = graded(alg, P)
        moved = act_on_form(form("B33", A2=A), h).matrix == form("B33", A2=B).matrix
        QA, QB = quotient_quadratic(form("B33", A2=A)), quotient_quadratic(form("B33", A2=B))
        images = [list(P.col(i)) + [0] * (QA.dim - 3) for i in range(3)]
        theta = generator_map(QB, QA, images)
        return moved and bool(verify_metric_map(theta, QB, QA)), {"A": A, "R": R}

    run.sample("congruent A give isometric n_3,3 quotients", quotients)


def _kernel_replay(run: _Run, keys) -> None:
    for fam, tri in keys:
        alg = algebra(2, 5) if fam == "B25" else algebra(3, 3)
        A2 = sym(*tri)
        B = form(fam, A2=A2)
        ker = kernel_vectors(B)
        printed = KERNEL_SPANS[(fam, tri)]
        name = f"Ker {fam}^{{0;0;{list(tri)}}}"
        run.once(f"{name}: rank and kernel dimension",
                 len(ker) == KERNEL_DIMS[(fam, tri)] and B.rank() + len(ker) == alg.dim,
                 detail={"rank": B.rank(), "kernel_dim": len(ker)})
        if None in printed:
            matches = {}
            for reading, text in sorted(GARBLED_READINGS.items()):
                vecs = [combination(alg, s).vector() for s in printed if s] + [combination(alg, text).vector()]
                matches[reading] = subspace_equal(ker, vecs, alg.dim)
            run.once(
                f"{name}: printed span (illegible sign resolved)",
                list(matches.values()).count(True) == 1,
                witness=matches,
                detail={"matching_reading": [GARBLED_READINGS[k] for k, v in matches.items() if v]},
            )
        else:
            vecs = [combination(alg, s).vector() for s in printed]
            run.once(f"{name}: printed span equals the kernel", subspace_equal(ker, vecs, alg.dim),
                     witness={"computed": [alg.element(v) for v in ker]})


KERNEL_DIMS = {
    ("B25", (1, 0, 0)): 7,
    ("B25", (1, 0, 1)): 6,
    ("B25", (1, 0, -1)): 6,
    ("B33", (1, 0, 0, 1, 0, 0)): 6,
    ("B33", (1, 0, 0, 1, 0, 1)): 5,
    ("B33", (1, 0, 0, -1, 0, 0)): 6,
    ("B33", (1, 0, 0, 1, 0, -1)): 5,
}


def _kernels_closed(run: _Run) -> None:
    keys = [("B25", (1, 0, 0)), ("B25", (1, 0, 1)), ("B33", (1, 0, 0, 1, 0, 0)), ("B33", (1, 0, 0, 1, 0, 1))]
    for k in keys:
        B = form(k[0], A2=sym(*k[1]))
        run.once(f"kernel dimension of {k[0]}^{{0;0;{list(k[1])}}} is {KERNEL_DIMS[k]}",
                 len(kernel_vectors(B)) == KERNEL_DIMS[k], {"got": len(kernel_vectors(B))})
    _kernel_replay(run, keys)


def _kernels_real(run: _Run) -> None:
    keys = [("B25", (1, 0, -1)), ("B33", (1, 0, 0, -1, 0, 0)), ("B33", (1, 0, 0, 1, 0, -1))]
    for k in keys:
        B = form(k[0], A2=sym(*k[1]))
        run.once(f"kernel dimension of {k[0]}^{{0;0;{list(k[1])}}} is {KERNEL_DIMS[k]}",
                 len(kernel_vectors(B)) == KERNEL_DIMS[k], {"got": len(kernel_vectors(B))})
    neg = form("B33", A2=-sym(1, 0, 0, 1, 0, -1))
    run.once("kernel of the negated C4 form is the same", subspace_equal(
        kernel_vectors(neg), kernel_vectors(form("B33", A2=sym(1, 0, 0, 1, 0, -1))), 14))
    _kernel_replay(run, keys)


def source_form(entry) -> BilinearForm:
    s = entry.source
    d, t = s["d"], s["t"]
    if t == 1:
        B = BilinearForm(algebra(d, t), QMatrix(s["A1"]))
    else:
        B = form(f"B{d}{t}", gamma=s.get("gamma", 0), A2=QMatrix(s["A2"]) if "A2" in s else None)
    return B * -1 if s.get("negate") else B


def catalog_isomorphism(entry) -> tuple[QuadraticAlgebra, QMatrix]:
    """Quotient realising ``entry`` and the map sending x_i to a_i."""
    Q = quotient_quadratic(source_form(entry))
    d = entry.source["d"]
    images = [[int(i == j) for i in range(entry.algebra.dim)] for j in range(d)]
    return Q, generator_map(Q, entry.algebra, images)


def _catalog(run: _Run, labels) -> None:
    for lab in labels:
        e = classified_algebra(lab)
        Q = e.algebra
        rep = verify_quadratic(Q)
        run.once(f"{lab}: quadratic", rep.ok, rep.failures())
        run.once(f"{lab}: (g^i)^perp = Z_i", rep.ok and orthogonality_check(Q))
        tn = type_and_nilindex(Q)
        run.once(f"{lab}: type and nilindex {(e.type, e.nilindex)}", tn == (e.type, e.nilindex), {"got": tn})
        run.once(f"{lab}: no 1-dimensional splitting", split_1dim(Q) is None)
        src, theta = catalog_isomorphism(e)
        chk = verify_metric_map(theta, src, Q)
        run.once(f"{lab}: quotient is metric-isomorphic via x_i -> a_i", bool(chk),
                 {"reason": chk.reason, "pair": chk.witness})


def _catalog_closed(run: _Run) -> None:
    _catalog(run, [lab for lab in CATALOG_LABELS if classified_algebra(lab).field == "C"])
    base = classified_algebra("closed-i").algebra
    for lab in ("closed-ii", "closed-iii", "closed-iv"):
        L = classified_algebra(lab).algebra
        S = orthogonal_sum(base, L)
        s = split_1dim(S)
        ok = s is not None and type_and_nilindex(s.complement) == type_and_nilindex(L)
        run.once(f"(n_1,1, phi) + {lab} splits off the abelian factor", ok and bool(verify_quadratic(S)))


def _catalog_real(run: _Run) -> None:
    _catalog(run, [lab for lab in CATALOG_LABELS if classified_algebra(lab).field == "R"])
    # the real-only entries are new over R and merge with closed ones over C
    closed = [classified_algebra(l).source for l in ("closed-iii", "closed-iv", "closed-vi", "closed-vii")]
    for lab in ("real-ii", "real-iii", "real-iv"):
        A = QMatrix(classified_algebra(lab).source["A2"])
        others = [QMatrix(s["A2"]) for s in closed if len(s["A2"]) == A.rows]
        over_c = any(matrix_class(A, FieldMode.ALG_CLOSED_RANK) == matrix_class(B, FieldMode.ALG_CLOSED_RANK) for B in others)
        over_r = any(matrix_class(A, FieldMode.REAL_SIGNATURE) == matrix_class(B, FieldMode.REAL_SIGNATURE)
                     or matrix_class(-A, FieldMode.REAL_SIGNATURE) == matrix_class(B, FieldMode.REAL_SIGNATURE)
                     for B in others)
        run.once(f"{lab}: merges with a closed-field entry over C but not over R", over_c and not over_r)


_REPLAYS = {
    "abelian": _abelian,
    "type2": _type2,
    "type2-square-classes": _square_classes,
    "a2prime-rank": _a2prime_rank,
    "type3-t2": _type3_t2,
    "type3-t3": _type3_t3,
    "type3-relation": _type3_relation,
    "type3-adjugate": _type3_adjugate,
    "kernels-closed": _kernels_closed,
    "kernels-real": _kernels_real,
    "catalog-closed": _catalog_closed,
    "catalog-real": _catalog_real,
}

TAGS = tuple(_REPLAYS) + ("all",)


def replay_theorem(tag: str, seed: int = 0, samples: int = 10) -> ReplayReport:
    """Replay the identities behind ``tag``; ``"all"`` runs every tag in order."""
    if tag not in TAGS:
        raise KeyError(f"unknown tag {tag!r}; known: {', '.join(TAGS)}")
    if samples < 1:
        raise ValueError("samples must be positive")
    if tag == "all":
        report = ReplayReport("all", seed)
        for t in _REPLAYS:
            sub = replay_theorem(t, seed, samples)
            report.checks += [Check(f"{t}: {c.name}", c.passed, c.samples, c.witness, c.detail) for c in sub.checks]
        return report
    run = _Run(tag, seed, samples)
    _REPLAYS[tag](run)
    return ReplayReport(tag, seed, run.checks)
