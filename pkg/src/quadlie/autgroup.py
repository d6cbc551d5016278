"""Automorphisms of free nilpotent Lie algebras and their action on forms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import QMatrix, row_space, subspace_intersection
from .freenilp import FreeNilpotent, LieElement
from .invforms import BilinearForm, block, is_invariant, kernel_vectors

__all__ = [
    "AutFactorization",
    "Endo",
    "act_on_form",
    "extend",
    "hn_factorize",
    "is_automorphism",
    "orbit_invariants",
    "random_graded",
    "random_unipotent",
    "random_automorphism",
]


class NotAutomorphismError(ValueError):
    pass


@dataclass(frozen=True)
class Endo:
    """Algebra endomorphism; ``matrix`` column k is the image of h_k."""

    algebra: FreeNilpotent
    matrix: QMatrix
    generator_images: tuple[LieElement, ...]

    def __call__(self, x: LieElement) -> LieElement:
        return self.algebra.element(self.matrix.apply(x.vector()))

    def __matmul__(self, other: "Endo") -> "Endo":
        """Composition ``self o other``."""
        M = self.matrix @ other.matrix
        alg = self.algebra
        return Endo(alg, M, tuple(alg.element(M.col(i)) for i in range(alg.d)))

    def inverse(self) -> "Endo":
        M = self.matrix.inverse()
        alg = self.algebra
        return Endo(alg, M, tuple(alg.element(M.col(i)) for i in range(alg.d)))

    def grade_block(self, i: int, j: int) -> QMatrix:
        """``e_i o phi o e_j`` as a matrix from s_j to s_i."""
        a = self.algebra
        return self.matrix.submatrix(a.grade_indices(i), a.grade_indices(j))

    def to_json(self) -> dict:
        return {
            "algebra": {"d": self.algebra.d, "t": self.algebra.t},
            "generator_images": [[str(c) for c in g.vector()] for g in self.generator_images],
        }

    @classmethod
    def from_json(cls, obj: dict, algebra: FreeNilpotent | None = None) -> "Endo":
        alg = algebra or FreeNilpotent(obj["algebra"]["d"], obj["algebra"]["t"])
        return extend([alg.element([Fraction(c) for c in v]) for v in obj["generator_images"]])


def extend(images: Sequence[LieElement]) -> Endo:
    """The unique endomorphism sending x_i to ``images[i]``.

    Each Hall word [a, b] is sent to the bracket of the images of a and b,
    which were computed earlier because the basis is ordered by length.
    """
    if not images:
        raise ValueError("need one image per generator")
    alg = images[0].algebra
    if len(images) != alg.d:
        raise ValueError(f"expected {alg.d} generator images, got {len(images)}")
    if any(im.algebra != alg for im in images):
        raise ValueError("images live in different algebras")
    cols: list[LieElement] = []
    for w in alg.basis:
        if w.is_generator:
            cols.append(images[w.gen - 1])
        else:
            cols.append(alg.bracket(cols[alg.index[w.left]], cols[alg.index[w.right]]))
    M = QMatrix.from_columns([c.vector() for c in cols])
    return Endo(alg, M, tuple(images))


def identity(alg: FreeNilpotent) -> Endo:
    return extend([alg.gen(i) for i in range(1, alg.d + 1)])


def from_generator_matrix(alg: FreeNilpotent, G: QMatrix) -> Endo:
    """Endomorphism whose generator images are the columns of ``G`` (dim x d)."""
    if G.shape != (alg.dim, alg.d):
        raise ValueError(f"generator matrix must be {alg.dim}x{alg.d}")
    return extend([alg.element(G.col(i)) for i in range(alg.d)])


def graded(alg: FreeNilpotent, A: QMatrix) -> Endo:
    """Graded automorphism induced by ``A`` acting on span(x_1..x_d)."""
    if A.shape != (alg.d, alg.d):
        raise ValueError("graded automorphisms need a d x d matrix")
    return extend([alg.element(list(A.col(i)) + [0] * (alg.dim - alg.d)) for i in range(alg.d)])


def is_automorphism(phi: Endo) -> bool:
    return phi.grade_block(1, 1).det() != 0


def in_H(phi: Endo) -> bool:
    """Graded: only the diagonal grade blocks are nonzero."""
    t = phi.algebra.t
    return all(phi.grade_block(i, j).is_zero() for i in range(1, t + 1) for j in range(1, t + 1) if i != j)


def in_N(phi: Endo) -> bool:
    """Unitriangular: identity on grade-diagonal blocks, zero above."""
    t = phi.algebra.t
    for i in range(1, t + 1):
        for j in range(i, t + 1):
            b = phi.grade_block(i, j)
            if i == j and b != QMatrix.identity(b.rows):
                return False
            if i != j and not b.is_zero():
                return False
    return True


@dataclass(frozen=True)
class AutFactorization:
    h: Endo
    n: Endo

    def compose(self) -> Endo:
        return self.h @ self.n


def hn_factorize(phi: Endo) -> AutFactorization:
    """Split ``phi = h o n`` with h graded and n unitriangular."""
    if not is_automorphism(phi):
        raise NotAutomorphismError("hn_factorize needs an automorphism")
    h = graded(phi.algebra, phi.grade_block(1, 1))
    n = h.inverse() @ phi
    # rebuild n from its generator images so it is a genuine extension
    n = extend(n.generator_images)
    fac = AutFactorization(h, n)
    assert in_H(h) and in_N(n)
    assert fac.compose().matrix == phi.matrix
    return fac


def act_on_form(B: BilinearForm, phi: Endo) -> BilinearForm:
    """``B_phi(x, y) = B(phi x, phi y)``, i.e. ``M^T B M``."""
    if not is_automorphism(phi):
        raise NotAutomorphismError("act_on_form needs an automorphism")
    M = phi.matrix
    return BilinearForm(B.algebra, M.T @ B.matrix @ M)


def preimage(phi: Endo, basis: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """``phi^{-1}(span(basis))`` for an automorphism."""
    Minv = phi.matrix.inverse()
    return row_space([Minv.apply(v) for v in basis], phi.algebra.dim)


@dataclass(frozen=True)
class OrbitInvariants:
    rank: int
    kernel_dim: int
    top_block_ranks: tuple[int, ...]
    kernel_profile: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "top_block_ranks": list(self.top_block_ranks),
            "kernel_profile": list(self.kernel_profile),
        }


def orbit_invariants(B: BilinearForm) -> OrbitInvariants:
    """Quantities constant along Aut-orbits.

    ``top_block_ranks[i-1]`` is the rank of ``B(e_i, e_{t+1-i})`` and
    ``kernel_profile[k-1]`` is ``dim(Ker B ∩ n^k)``.
    """
    if not is_invariant(B):
        raise ValueError("orbit_invariants needs an invariant form")
    alg = B.algebra
    t = alg.t
    ker = kernel_vectors(B)
    profile = []
    for k in range(1, t + 1):
        nk = [alg.table.unit(i) for i in alg.power_indices(k)]
        profile.append(len(subspace_intersection(ker, nk, alg.dim)))
    return OrbitInvariants(
        rank=B.rank(),
        kernel_dim=len(ker),
        top_block_ranks=tuple(block(B, alg, i, t + 1 - i).rank() for i in range(1, t + 1)),
        kernel_profile=tuple(profile),
    )


# ----------------------------------------------------------------------
# sampling; every sampler takes an explicit random.Random
# ----------------------------------------------------------------------


def random_gl(rng: random.Random, d: int, max_det: int = 5) -> QMatrix:
    """Random integer matrix with 1 <= |det| <= max_det."""
    while True:
        A = QMatrix([[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)])
        det = abs(A.det())
        if 1 <= det <= max_det:
            return A


def random_graded(alg: FreeNilpotent, rng: random.Random) -> Endo:
    return graded(alg, random_gl(rng, alg.d))


def random_unipotent(alg: FreeNilpotent, rng: random.Random, density: float = 0.5) -> Endo:
    """Element of N(d,t): x_i -> x_i + sparse integer combination of n^2."""
    images = []
    higher = alg.power_indices(2)
    for i in range(alg.d):
        coeffs = {i: Fraction(1)}
        for k in higher:
            if rng.random() < density:
                c = rng.randint(-3, 3)
                if c:
                    coeffs[k] = Fraction(c)
        images.append(LieElement(alg, coeffs))
    return extend(images)


def random_automorphism(alg: FreeNilpotent, rng: random.Random) -> Endo:
    return random_graded(alg, rng) @ random_unipotent(alg, rng)
