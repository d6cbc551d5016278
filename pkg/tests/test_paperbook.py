import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import nonzero_rationals, rationals, symmetric
from quadlie.exactlin import FieldMode, QMatrix, SingularMatrixError, subspace_equal
from quadlie.freenilp import FreeNilpotent
from quadlie.invforms import block, kernel_vectors
from quadlie.paperbook import (
    C3,
    CATALOG_LABELS,
    GARBLED_READINGS,
    KERNEL_SPANS,
    TAGS,
    FamilySpec,
    a2prime,
    adj,
    adjugate_congruence_check,
    classified_algebra,
    combination,
    cube_root_witness,
    det_twisted_congruence_check,
    family_form,
    gamma_class,
    matrix_class,
    replay_theorem,
    same_gamma_class,
    same_matrix_class,
    squarefree_part,
    sym,
)
from quadlie.quadratize import (
    orthogonality_check,
    quotient_quadratic,
    split_1dim,
    type_and_nilindex,
    verify_metric_map,
    verify_quadratic,
)
from quadlie.paperbook.replay import catalog_isomorphism, relation, u_prime

# ----- families --------------------------------------------------------


def test_phi32_matrix():
    M = family_form(FamilySpec("PHI32")).matrix
    expect = [[0] * 6 for _ in range(6)]
    for i, v in enumerate((1, -1, 1, 1, -1, 1)):
        expect[i][5 - i] = v
    assert M == QMatrix(expect)


def test_b23_gamma_pattern():
    M = family_form(FamilySpec("B23", gamma=1)).matrix
    assert M == QMatrix(
        [[0, 0, 0, 0, 1], [0, 0, 0, -1, 0], [0, 0, 1, 0, 0], [0, -1, 0, 0, 0], [1, 0, 0, 0, 0]]
    )


def test_b33_identity_a2_block():
    B = family_form(FamilySpec("B33", A2=QMatrix.identity(3)))
    alg = B.algebra
    assert block(B, alg, 2, 2) == QMatrix.identity(3)
    assert block(B, alg, 1, 3) == a2prime(QMatrix.identity(3))
    assert block(B, alg, 1, 1).is_zero() and block(B, alg, 1, 2).is_zero()


def test_a2prime_examples():
    assert a2prime(QMatrix.zeros(3)).is_zero()
    P = a2prime(QMatrix.identity(3))
    assert P == QMatrix([[0, 1, 0, 0, 0, 1, 0, 0], [-1, 0, 0, 0, 0, 0, 0, 1], [0, 0, 0, -1, 0, 0, -1, 0]])
    with pytest.raises(ValueError):
        a2prime(QMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


def test_a2prime_is_the_s1_s3_block_of_invariance():
    # B(x_i, [h, x_j]) = B([x_i, h], x_j) pins the (s1, s3) block given A2
    r = random.Random("a2p")
    alg = FreeNilpotent(3, 3)
    for _ in range(5):
        A2 = sym(*[r.randint(-3, 3) for _ in range(6)])
        B = family_form(FamilySpec("B33", A2=A2))
        for i in range(3):
            for k in alg.grade_indices(2):
                for j in range(3):
                    lhs = B(alg.gen(i + 1), alg.bracket(alg.basis_element(k), alg.gen(j + 1)))
                    rhs = B(alg.bracket(alg.gen(i + 1), alg.basis_element(k)), alg.gen(j + 1))
                    assert lhs == rhs


def test_family_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec("B99")
    with pytest.raises(ValueError):
        FamilySpec("B23", A1=QMatrix.identity(3))
    with pytest.raises(ValueError):
        FamilySpec("B33", A2=QMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    spec = FamilySpec("B25", A1=sym(1, 2, 3), gamma="1/2", A2=sym(0, 1, 0))
    assert FamilySpec.from_json(json.loads(json.dumps(spec.to_json()))) == spec
    with pytest.raises(ValueError):
        family_form(FamilySpec("B23"), FreeNilpotent(2, 5))


# ----- identities ------------------------------------------------------


def test_adj_is_cofactor_matrix():
    P = QMatrix([[2, 1, 0], [0, 1, 3], [1, 0, 1]])
    S = sympy.Matrix(P.tolist())
    assert adj(P) == QMatrix(S.adjugate().T.tolist())
    assert adj(P) == P.inverse().T * P.det()


def test_adjugate_congruence_examples():
    A = sym(1, 2, 3, 4, 5, 6)
    I3 = QMatrix.identity(3)
    assert adjugate_congruence_check(A, A, I3)
    assert adjugate_congruence_check(I3, C3 @ I3 @ C3, I3)


@given(symmetric(3), st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_adjugate_congruence_constructed(a, p):
    A = QMatrix(a)
    P = QMatrix([p[0:3], p[3:6], p[6:9]])
    if P.det() == 0:
        with pytest.raises(SingularMatrixError):
            adjugate_congruence_check(A, A, P)
        return
    K = adj(P)
    B = C3 @ K.T @ C3 @ A @ C3 @ K @ C3
    assert adjugate_congruence_check(A, B, P)
    E = QMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert not adjugate_congruence_check(A, B + E, P)


def test_det_twisted_examples():
    A = QMatrix.identity(2)
    assert det_twisted_congruence_check(A, A, QMatrix.identity(2))
    assert det_twisted_congruence_check(A, A * 64, QMatrix.identity(2) * 2)
    assert not det_twisted_congruence_check(A, A * 16, QMatrix.identity(2) * 2)
    with pytest.raises(ValueError):
        det_twisted_congruence_check(QMatrix([[0, 1], [0, 0]]), A, A)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), symmetric(2))
def test_cube_root_witness(p, a):
    P0 = QMatrix([p[0:2], p[2:4]])
    if P0.det() == 0:
        return
    P = P0 * P0.det()  # det P is a cube
    R = cube_root_witness(P)
    A = QMatrix(a)
    assert R is not None
    assert det_twisted_congruence_check(A, P.T @ A @ P, R)


def test_cube_root_witness_none():
    assert cube_root_witness(QMatrix.diag([2, 1])) is None


# ----- fields ----------------------------------------------------------


@pytest.mark.parametrize("q, s", [(1, 1), (4, 1), (2, 2), (Fraction(1, 2), 2), (-12, -3), (Fraction(9, 20), 5)])
def test_squarefree_part(q, s):
    assert squarefree_part(q) == s


@given(nonzero_rationals, nonzero_rationals)
def test_gamma_classes(g, e):
    for mode in FieldMode:
        assert same_gamma_class(g, e * e * g, mode)
    assert same_gamma_class(g, -g, FieldMode.ALG_CLOSED_RANK)
    assert not same_gamma_class(g, -g, FieldMode.REAL_SIGNATURE)


def test_gamma_class_over_q():
    assert not same_gamma_class(1, 2, FieldMode.RATIONALS)
    assert same_gamma_class(3, 27, FieldMode.RATIONALS)
    assert gamma_class(2, FieldMode.RATIONALS)["complete"] is False
    with pytest.raises(ValueError):
        gamma_class(0, FieldMode.REAL_SIGNATURE)


def test_matrix_classes():
    A, B = sym(1, 0, 0, 1, 0, -1), sym(1, 0, 0, 1, 0, 1)
    assert same_matrix_class(A, B, FieldMode.ALG_CLOSED_RANK)
    assert not same_matrix_class(A, B, FieldMode.REAL_SIGNATURE)
    assert same_matrix_class(A, B, FieldMode.RATIONALS) is None
    assert same_matrix_class(A, sym(1, 0, 0, 0, 0, 0), FieldMode.RATIONALS) is False
    assert matrix_class(A, FieldMode.REAL_SIGNATURE)["signature"] == [2, 1, 0]
    assert matrix_class(A, FieldMode.RATIONALS)["complete"] is False


# ----- kernels ---------------------------------------------------------


def test_combination_parser():
    alg = FreeNilpotent(2, 3)
    v = combination(alg, "[[x2,x1],x1]-[x2,x1]+x1")
    assert v == alg.word("[[x2,x1],x1]") - alg.word("[x2,x1]") + alg.gen(1)


@pytest.mark.parametrize("key", sorted(KERNEL_SPANS, key=str))
def test_printed_kernel_spans(key):
    fam, tri = key
    B = family_form(FamilySpec(fam, A2=sym(*tri)))
    alg = B.algebra
    ker = kernel_vectors(B)
    printed = KERNEL_SPANS[key]
    if None in printed:
        good = [r for r, text in GARBLED_READINGS.items()
                if subspace_equal(ker, [combination(alg, s).vector() for s in printed if s]
                                  + [combination(alg, text).vector()], alg.dim)]
        assert good == ["plus"]
    else:
        assert subspace_equal(ker, [combination(alg, s).vector() for s in printed], alg.dim)


# ----- catalog ---------------------------------------------------------


def test_catalog_examples():
    ii = classified_algebra("closed-ii").algebra
    assert ii.dim == 5
    for i in range(1, 6):
        assert ii.form[i - 1, 5 - i] == (-1) ** (i - 1)
    vii = classified_algebra("closed-vii").algebra
    assert vii.dim == 9 and vii.form[3, 3] == vii.form[4, 4] == vii.form[5, 5] == 1
    r3 = classified_algebra("real-iii").algebra
    assert r3.dim == 8 and r3.form[3, 3] == -r3.form[4, 4] == 1


def test_catalog_unknown_label():
    with pytest.raises(KeyError):
        classified_algebra("closed-viii")
    with pytest.raises(KeyError):
        classified_algebra("-closed-v")


def test_negated_entries():
    e = classified_algebra("-closed-iii")
    base = classified_algebra("closed-iii")
    assert e.algebra.form == -base.algebra.form and e.field == "R"


@pytest.mark.parametrize("label", CATALOG_LABELS)
def test_catalog_entry(label):
    e = classified_algebra(label)
    Q = e.algebra
    assert verify_quadratic(Q).ok
    assert orthogonality_check(Q)
    assert type_and_nilindex(Q) == (e.type, e.nilindex)
    assert split_1dim(Q) is None
    src, theta = catalog_isomorphism(e)
    assert verify_metric_map(theta, src, Q).ok


def test_decomposable_sums_split():
    from quadlie.quadratize import orthogonal_sum

    base = classified_algebra("closed-i").algebra
    for lab in ("closed-ii", "closed-iii", "closed-iv"):
        L = classified_algebra(lab).algebra
        s = split_1dim(orthogonal_sum(base, L))
        assert s is not None and type_and_nilindex(s.complement) == type_and_nilindex(L)


# ----- printed formulas used by the replays ----------------------------


@given(st.lists(rationals, min_size=9, max_size=9), symmetric(3), rationals)
def test_relation_collapse(x, a2, g):
    U = QMatrix([x[0:3], x[3:6], x[6:9]])
    A2 = QMatrix(a2)
    M = C3 * g + U.T @ A2 + a2prime(A2) @ u_prime(U)
    assert M == C3 * relation(A2, g, U)


def test_relation_collapse_symbolically():
    a, b, c, d, e, f, g = sympy.symbols("a b c d e f gamma")
    xs = sympy.symbols("x1:10")
    A2 = sympy.Matrix([[a, b, c], [b, d, e], [c, e, f]])
    U = sympy.Matrix(3, 3, xs)
    C = sympy.Matrix([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    x1, x2, x3, x4, x5, x6, x7, x8, x9 = xs
    Ap = sympy.Matrix([[0, a, b, 0, b, d, c, e], [-a, 0, c, -b, 0, e, 0, f], [-b, -c, 0, -d, -e, 0, -f, 0]])
    Up = sympy.Matrix([
        [x2, -x1, -x8, x5, x8 - x4, 0, -x7, 0],
        [x3, 0, -x9 - x1, x6, x9, -x4, 0, -x7],
        [0, x3, -x2, 0, x6, -x5, x9, -x8],
    ]).T
    L = g + c * x1 - b * x2 + a * x3 + e * x4 - d * x5 + b * x6 + f * x7 - e * x8 + c * x9
    assert sympy.expand(g * C + U.T * A2 + Ap * Up - L * C) == sympy.zeros(3, 3)


# ----- replay ----------------------------------------------------------


@pytest.mark.parametrize("tag", [t for t in TAGS if t != "all"])
def test_replay_tag_passes(tag):
    rep = replay_theorem(tag, seed=0, samples=4)
    assert rep.ok, [c.to_json() for c in rep.failures()]
    assert rep.checks


def test_replay_unknown_tag():
    with pytest.raises(KeyError):
        replay_theorem("nope")
    with pytest.raises(ValueError):
        replay_theorem("abelian", samples=0)


def test_replay_relation_uses_requested_samples():
    rep = replay_theorem("type3-relation", seed=3, samples=10)
    assert all(c.samples == 10 for c in rep.checks)


def test_replay_deterministic_json():
    a = json.dumps(replay_theorem("type2", seed=7).to_json(), sort_keys=True)
    b = json.dumps(replay_theorem("type2", seed=7).to_json(), sort_keys=True)
    assert a == b


def test_replay_kernels_report_resolved_reading():
    rep = replay_theorem("kernels-closed")
    garbled = [c for c in rep.checks if "illegible" in c.name]
    assert len(garbled) == 1 and garbled[0].passed
    assert garbled[0].detail["matching_reading"] == [GARBLED_READINGS["plus"]]


def test_replay_rank_one_pair_detail():
    rep = replay_theorem("type3-t3", samples=2)
    pair = next(c for c in rep.checks if c.name.startswith("rank-1 pair"))
    assert pair.passed
    m1, m0 = pair.detail["membership"]
    assert m1["member"] and not m0["member"]
