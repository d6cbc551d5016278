from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from quadlie.freenilp import FreeNilpotent, HallWord, central_series, hall_basis, structure_constants, witt_dimension

# Hall lists for small (d, t), in order
H22 = ["x1", "x2", "[x2,x1]"]
H23 = H22 + ["[[x2,x1],x1]", "[[x2,x1],x2]"]
H24 = H23 + ["[[[x2,x1],x1],x1]", "[[[x2,x1],x1],x2]", "[[[x2,x1],x2],x2]"]
H25 = H24 + [
    "[[[[x2,x1],x1],x1],x1]",
    "[[[[x2,x1],x1],x1],x2]",
    "[[[x2,x1],x1],[x2,x1]]",
    "[[[[x2,x1],x1],x2],x2]",
    "[[[x2,x1],x2],[x2,x1]]",
    "[[[[x2,x1],x2],x2],x2]",
]
H32 = ["x1", "x2", "x3", "[x2,x1]", "[x3,x1]", "[x3,x2]"]
H33 = H32 + [f"[[x2,x1],x{j}]" for j in (1, 2, 3)] + [f"[[x3,x1],x{j}]" for j in (1, 2, 3)] + [
    f"[[x3,x2],x{k}]" for k in (2, 3)
]


def lyndon_count(d, n):
    """Brute force: words strictly smaller than each of their proper suffixes."""
    count = 0
    for w in product(range(d), repeat=n):
        if all(w < w[i:] for i in range(1, n)):
            count += 1
    return count


def expand(w: HallWord) -> dict:
    """Image in the free associative algebra, [a, b] = ab - ba."""
    if w.is_generator:
        return {(w.gen,): 1}
    a, b = expand(w.left), expand(w.right)
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            out[u + v] = out.get(u + v, 0) + cu * cv
            out[v + u] = out.get(v + u, 0) - cu * cv
    return {k: c for k, c in out.items() if c}


@pytest.mark.parametrize("d,t,words", [(2, 2, H22), (2, 3, H23), (2, 4, H24), (2, 5, H25), (3, 2, H32), (3, 3, H33)])
def test_printed_hall_lists(d, t, words):
    assert [str(w) for w in hall_basis(d, t)] == words


def test_trivial_basis():
    assert [str(w) for w in hall_basis(1, 1)] == ["x1"]
    assert FreeNilpotent(1, 3).dim == 1


@pytest.mark.parametrize("d,tmax", [(2, 6), (3, 5), (4, 5)])
def test_grade_counts_match_witt_and_lyndon(d, tmax):
    alg = FreeNilpotent(d, tmax)
    for k in range(1, tmax + 1):
        n = len(alg.grade_indices(k))
        assert n == witt_dimension(d, k) == lyndon_count(d, k)


@pytest.mark.parametrize("d,l,n", [(2, 1, 2), (2, 5, 6), (3, 2, 3), (2, 6, 9)])
def test_witt_values(d, l, n):
    assert witt_dimension(d, l) == n


def test_length5_block_contains_mixed_word():
    alg = FreeNilpotent(2, 5)
    k = alg.index[HallWord.bracket(HallWord.bracket(HallWord.bracket(HallWord.generator(2), HallWord.generator(1)),
                                                     HallWord.generator(1)),
                                   HallWord.bracket(HallWord.generator(2), HallWord.generator(1)))]
    assert alg.grade[k] == 5


def test_bracket_examples():
    n23 = FreeNilpotent(2, 3)
    x1, x2 = n23.gen(1), n23.gen(2)
    assert not n23.bracket(x1, x1)
    assert n23.bracket(x1, x2) == -n23.word("[x2,x1]")
    assert n23.bracket(n23.word("[x2,x1]"), x1) == n23.basis_element(3)
    n25 = FreeNilpotent(2, 5)
    got = n25.bracket(n25.word("[[x2,x1],x1]"), n25.word("[x2,x1]"))
    assert got == n25.basis_element(10)


def test_structure_constant_examples():
    assert structure_constants(FreeNilpotent(2, 2)) == [(2, 1, 3, Fraction(1))]
    assert structure_constants(FreeNilpotent(1, 1)) == []
    sc = {(i, j): (k, c) for i, j, k, c in structure_constants(FreeNilpotent(2, 3))}
    assert sc[(3, 1)] == (4, 1) and sc[(3, 2)] == (5, 1)


@pytest.mark.parametrize("d,t", [(2, 4), (2, 5), (3, 3), (4, 3)])
def test_structure_constants_against_associative_embedding(d, t):
    alg = FreeNilpotent(d, t)
    images = [expand(w) for w in alg.basis]
    for i in range(alg.dim):
        for j in range(alg.dim):
            got = alg.table.bracket(alg.table.unit(i), alg.table.unit(j))
            lhs = {}
            if alg.grade[i] + alg.grade[j] <= t:
                for u, cu in images[i].items():
                    for v, cv in images[j].items():
                        lhs[u + v] = lhs.get(u + v, 0) + cu * cv
                        lhs[v + u] = lhs.get(v + u, 0) - cu * cv
            rhs = {}
            for k, c in enumerate(got):
                for w, cw in images[k].items():
                    rhs[w] = rhs.get(w, 0) + c * cw
            assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}, (i, j)


@pytest.mark.parametrize("d,t", [(2, 5), (3, 3), (2, 6)])
def test_hall_words_independent_in_associative_algebra(d, t):
    alg = FreeNilpotent(d, t)
    for k in range(1, t + 1):
        idx = alg.grade_indices(k)
        exps = [expand(alg.basis[i]) for i in idx]
        monos = sorted({m for e in exps for m in e})
        M = sympy.Matrix([[e.get(m, 0) for m in monos] for e in exps])
        assert M.rank() == len(idx)


# ----- properties on random elements --------------------------------

ALGS = [FreeNilpotent(2, 5), FreeNilpotent(3, 3), FreeNilpotent(2, 3)]


@st.composite
def element(draw, alg):
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=alg.dim, max_size=alg.dim))
    return alg.element(coeffs)


@pytest.mark.parametrize("alg", ALGS, ids=lambda a: f"n{a.d}{a.t}")
def test_antisymmetry_and_jacobi(alg):
    @given(element(alg), element(alg), element(alg))
    def check(x, y, z):
        b = alg.bracket
        assert b(x, y) == -b(y, x)
        assert not (b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y)))

    check()


@pytest.mark.parametrize("alg", ALGS, ids=lambda a: f"n{a.d}{a.t}")
def test_grading(alg):
    @given(st.integers(0, alg.dim - 1), st.integers(0, alg.dim - 1), st.integers(-3, 3))
    def check(i, j, c):
        x, y = alg.basis_element(i) * c, alg.basis_element(j)
        g = alg.grade[i] + alg.grade[j]
        z = alg.bracket(x, y)
        assert z.grades() <= ({g} if g <= alg.t else set())

    check()


def test_tables_are_valid_lie_algebras():
    for alg in ALGS:
        assert alg.table.antisymmetry_violation() is None
        assert alg.table.jacobi_violation() is None


@pytest.mark.parametrize("d,t", [(2, 3), (2, 5), (3, 2), (3, 3)])
def test_center_is_top_power_and_series_are_graded(d, t):
    alg = FreeNilpotent(d, t)
    lower, upper = central_series(alg)
    assert [len(s) for s in lower] == [len(alg.power_indices(k)) for k in range(1, t + 1)] + [0]
    assert len(upper[1]) == len(alg.grade_indices(t))
    for k, z in enumerate(upper):
        assert len(z) == sum(len(alg.grade_indices(g)) for g in range(t - k + 1, t + 1))


def test_word_parser_rejects_non_hall():
    alg = FreeNilpotent(2, 3)
    # [x1,[x2,x1]] is not a Hall word but still evaluates by rewriting
    assert alg.word("[x1,[x2,x1]]") == -alg.word("[[x2,x1],x1]")


def test_json_shape():
    obj = FreeNilpotent(2, 2).to_json()
    assert obj["d"] == 2 and obj["t"] == 2 and len(obj["basis"]) == 3
