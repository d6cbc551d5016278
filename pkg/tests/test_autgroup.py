import random
from fractions import Fraction

import pytest

from quadlie.autgroup import (
    Endo,
    NotAutomorphismError,
    act_on_form,
    extend,
    from_generator_matrix,
    graded,
    hn_factorize,
    identity,
    in_H,
    in_N,
    is_automorphism,
    orbit_invariants,
    preimage,
    random_automorphism,
    random_gl,
    random_graded,
    random_unipotent,
)
from quadlie.exactlin import QMatrix, subspace_equal
from quadlie.freenilp import FreeNilpotent
from quadlie.invforms import BilinearForm, bk_components, invariant_form_space, is_invariant, kernel_vectors
from quadlie.paperbook.families import C3, FamilySpec, family_form, sym
from quadlie.paperbook.identities import adj

ALGS = [FreeNilpotent(2, 3), FreeNilpotent(3, 2), FreeNilpotent(2, 5), FreeNilpotent(3, 3)]
IDS = ["n23", "n32", "n25", "n33"]


def is_homomorphism(phi: Endo) -> bool:
    alg = phi.algebra
    for i in range(alg.dim):
        for j in range(i):
            a, b = alg.basis_element(i), alg.basis_element(j)
            if phi(alg.bracket(a, b)) != alg.bracket(phi(a), phi(b)):
                return False
    return True


# ----- extension -------------------------------------------------------


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_identity_extension(alg):
    assert identity(alg).matrix == QMatrix.identity(alg.dim)


def test_h23_shape():
    alg = FreeNilpotent(2, 3)
    A = QMatrix([[2, 1], [3, -1]])
    det = A.det()
    M = graded(alg, A).matrix
    assert M.submatrix([0, 1], [0, 1]) == A
    assert M[2, 2] == det
    assert M.submatrix([3, 4], [3, 4]) == A * det


def test_h32_block_is_signed_cofactors():
    alg = FreeNilpotent(3, 2)
    A = QMatrix([[1, 2, 0], [0, 1, 3], [4, 0, 1]])

    def minor(i, j):
        return A.submatrix([r for r in range(3) if r != i], [c for c in range(3) if c != j]).det()

    blk = graded(alg, A).grade_block(2, 2)
    assert blk == QMatrix([[minor(2 - i, 2 - j) for j in range(3)] for i in range(3)])
    assert blk == C3 @ adj(A) @ C3


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_extension_is_homomorphism(alg):
    r = random.Random(f"hom:{alg.d}{alg.t}")
    for _ in range(5):
        assert is_homomorphism(random_automorphism(alg, r))
    # also for a non-invertible endomorphism
    images = [alg.gen(1)] * alg.d
    assert is_homomorphism(extend(images))


def test_extend_wrong_count():
    alg = FreeNilpotent(2, 3)
    with pytest.raises(ValueError):
        extend([alg.gen(1)])
    with pytest.raises(ValueError):
        extend([])


def test_automorphism_criterion():
    alg = FreeNilpotent(2, 3)
    assert is_automorphism(identity(alg))
    assert is_automorphism(extend([alg.gen(1) + alg.word("[x2,x1]"), alg.gen(2)]))
    assert not is_automorphism(extend([alg.gen(1), alg.gen(1)]))


def test_from_generator_matrix_shape():
    alg = FreeNilpotent(2, 3)
    with pytest.raises(ValueError):
        from_generator_matrix(alg, QMatrix.identity(2))
    G = QMatrix.identity(5).submatrix(range(5), [0, 1])
    assert from_generator_matrix(alg, G).matrix == QMatrix.identity(5)


def test_endo_json_roundtrip():
    alg = FreeNilpotent(3, 3)
    phi = random_automorphism(alg, random.Random("json"))
    assert Endo.from_json(phi.to_json()).matrix == phi.matrix


# ----- group structure -------------------------------------------------


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_semidirect_group_laws(alg):
    r = random.Random(f"group:{alg.d}{alg.t}")
    for _ in range(100):
        h1, h2 = random_graded(alg, r), random_graded(alg, r)
        n1, n2 = random_unipotent(alg, r, 0.3), random_unipotent(alg, r, 0.3)
        assert in_H(h1 @ h2)
        assert in_N(n1 @ n2)
        assert in_N(h1 @ n1 @ h1.inverse())
        assert in_N(n1.inverse()) and in_H(h1.inverse())


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_composition_is_an_extension(alg):
    r = random.Random(f"compose:{alg.d}{alg.t}")
    for _ in range(10):
        a, b = random_automorphism(alg, r), random_automorphism(alg, r)
        ab = a @ b
        assert extend(ab.generator_images).matrix == ab.matrix
        assert (a @ a.inverse()).matrix == QMatrix.identity(alg.dim)


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_hn_factorization_recomposes(alg):
    r = random.Random(f"hn:{alg.d}{alg.t}")
    for _ in range(100):
        phi = random_automorphism(alg, r)
        f = hn_factorize(phi)
        assert in_H(f.h) and in_N(f.n)
        assert f.compose().matrix == phi.matrix
        assert f.h.grade_block(1, 1) == phi.grade_block(1, 1)


def test_hn_trivial_cases():
    alg = FreeNilpotent(2, 3)
    f = hn_factorize(identity(alg))
    assert f.h.matrix == f.n.matrix == QMatrix.identity(5)
    h = graded(alg, QMatrix([[1, 1], [0, 2]]))
    f = hn_factorize(h)
    assert f.h.matrix == h.matrix and f.n.matrix == QMatrix.identity(5)
    with pytest.raises(NotAutomorphismError):
        hn_factorize(extend([alg.gen(1), alg.gen(1)]))


def test_random_gl_bounds():
    r = random.Random("gl")
    for _ in range(20):
        A = random_gl(r, 3)
        assert 1 <= abs(A.det()) <= 5


# ----- action on forms -------------------------------------------------

SEED_FORMS = [
    ("B23", dict(A1=sym(1, 2, 3), gamma=2)),
    ("B25", dict(A2=sym(1, 0, 1))),
    ("B25", dict(A1=sym(0, 1, 0), gamma=1, A2=sym(1, 0, 0))),
    ("B32", dict(gamma=1)),
    ("B33", dict(A2=sym(1, 0, 0, 1, 0, 1))),
    ("B33", dict(A1=sym(0, 0, 0, 0, 0, 1), A2=sym(1, 0, 0, 0, 0, 0))),
]


def test_action_examples():
    B = family_form(FamilySpec("B23", gamma=3))
    alg = B.algebra
    assert act_on_form(B, identity(alg)).matrix == B.matrix
    with pytest.raises(NotAutomorphismError):
        act_on_form(B, extend([alg.gen(1), alg.gen(1)]))


@pytest.mark.parametrize("fam, kw", SEED_FORMS, ids=[f"{f}-{i}" for i, (f, _) in enumerate(SEED_FORMS)])
def test_orbit_invariants_constant(fam, kw):
    B = family_form(FamilySpec(fam, **kw))
    inv = orbit_invariants(B)
    r = random.Random(f"orbit:{fam}:{sorted(kw)}")
    for _ in range(100):
        phi = random_automorphism(B.algebra, r)
        Bp = act_on_form(B, phi)
        assert is_invariant(Bp)
        assert orbit_invariants(Bp) == inv


def test_orbit_invariant_values():
    inv = orbit_invariants(family_form(FamilySpec("B25", A2=sym(1, 0, 1))))
    assert (inv.rank, inv.kernel_dim) == (8, 6)
    zero = orbit_invariants(BilinearForm(FreeNilpotent(2, 1), QMatrix.zeros(2)))
    assert zero.rank == 0 and zero.kernel_dim == 2
    with pytest.raises(ValueError):
        orbit_invariants(BilinearForm(FreeNilpotent(2, 3), QMatrix.identity(5)))


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_action_compatibility_and_kernel_transport(alg):
    r = random.Random(f"compat:{alg.d}{alg.t}")
    space = invariant_form_space(alg)
    for _ in range(5):
        B = space[0] * 0
        for S in space:
            B = B + S * r.randint(-2, 2)
        th, sg = random_automorphism(alg, r), random_automorphism(alg, r)
        assert act_on_form(act_on_form(B, th), sg).matrix == act_on_form(B, th @ sg).matrix
        ker = kernel_vectors(act_on_form(B, th))
        assert subspace_equal(ker, preimage(th, kernel_vectors(B)), alg.dim)


def _pure_b1(alg, r):
    """Random element of the subspace of forms equal to their own B_1."""
    space = invariant_form_space(alg)
    B = space[0] * 0
    for S in space:
        B = B + S * r.randint(-3, 3)
    return bk_components(B)[0].matrix


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_b1_subspace_stable_under_H_and_fixed_by_N(alg):
    r = random.Random(f"s200:{alg.d}{alg.t}")
    for _ in range(20):
        B = BilinearForm(alg, _pure_b1(alg, r))
        assert bk_components(B)[0].matrix == B.matrix
        h = random_graded(alg, r)
        Bh = act_on_form(B, h)
        assert bk_components(Bh)[0].matrix == Bh.matrix
        n = random_unipotent(alg, r)
        assert bk_components(act_on_form(B, n))[0].matrix == B.matrix


@pytest.mark.parametrize("alg", ALGS, ids=IDS)
def test_unipotent_action_keeps_b1_of_any_form(alg):
    r = random.Random(f"b1:{alg.d}{alg.t}")
    space = invariant_form_space(alg)
    for _ in range(10):
        B = space[0] * 0
        for S in space:
            B = B + S * Fraction(r.randint(-3, 3), r.randint(1, 2))
        n = random_unipotent(alg, r)
        assert bk_components(act_on_form(B, n))[0].matrix == bk_components(B)[0].matrix
