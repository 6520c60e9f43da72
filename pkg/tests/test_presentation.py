import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

import catalog
from tropbns.linalg import mat_mul, mat_vec
from tropbns.presentation import (FreeWord, GroupPresentation, GroupRingElement, PresentationSyntaxError,
                                  abelianize, commutator, fox_derivative, parse_presentation,
                                  random_commutator_relator, smith_normal_form)

x1, x2 = FreeWord.generator(1), FreeWord.generator(2)

letters = st.lists(st.tuples(st.integers(1, 3), st.sampled_from([1, -1])), max_size=40)
words = letters.map(FreeWord.from_letters)


def ring(*pairs):
    return GroupRingElement({w: c for w, c in pairs})


# ---------------------------------------------------------------- words


def test_reduction_is_eager():
    w = FreeWord.from_ints([1, 2, -2, -1, 1])
    assert w == x1 and w.length == 1


def test_letters_round_trip():
    w = FreeWord.from_ints([1, 1, -2, 1])
    assert list(w.letters()) == [(1, 1), (1, 1), (2, -1), (1, 1)]
    assert w.syllables == ((1, 2), (2, -1), (1, 1))


def test_cyclic_reduction():
    w = FreeWord.from_ints([2, 1, 1, -2])
    assert w.cyclically_reduced() == FreeWord.from_ints([1, 1])
    # syllables of the same generator merge across the ends
    assert FreeWord.from_ints([1, 2, 1]).cyclically_reduced().length == 3


@given(words)
def test_reduced_has_no_inverse_pairs(w):
    ls = list(w.letters())
    assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(ls, ls[1:]))


@given(words)
def test_cyclic_reduction_is_idempotent(w):
    c = w.cyclically_reduced()
    assert c.cyclically_reduced() == c
    ls = list(c.letters())
    if len(ls) >= 2:
        assert not (ls[0][0] == ls[-1][0] and ls[0][1] == -ls[-1][1])


@given(words, words)
def test_group_axioms(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * u.inverse() == FreeWord()
    assert (u * v).exponent_sum(1) == u.exponent_sum(1) + v.exponent_sum(1)


def test_word_text():
    assert FreeWord.from_ints([1, 2, 2, -1]).text() == "x1*x2^2*x1^-1"
    assert FreeWord().text() == "1"


# ---------------------------------------------------------------- parsing


def test_parse_torsion_free_product():
    p = parse_presentation("<x1,x2 | x2^2>")
    assert p.num_generators == 2
    assert list(p.relators[0].letters()) == [(2, 1), (2, 1)]


def test_parse_free_group():
    p = parse_presentation("<x1 | >")
    assert p.num_generators == 1 and p.relators == ()


def test_parse_length_five():
    p = parse_presentation("<x1,x2 | x1*x2*x1^-1*x2^-2>")
    assert p.relators[0].length == 5


def test_parse_keeps_relator_as_written():
    p = parse_presentation("<a, b | b*a*b^-1 * a^-1 * b ^ 1>")
    assert p.relators[0].length == 5  # not cyclically reduced at parse time


def test_parse_custom_names_and_whitespace():
    p = parse_presentation("  < a , bb | a^3 , bb*a >")
    assert p.text() == "<a,bb | a^3, bb*a>"


@pytest.mark.parametrize("text", ["<x1,x2 | x1*>", "x1 | x1", "<x1 | x1^0>", "<x1 | x1^>", "<1x | x>"])
def test_parse_syntax_errors(text):
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation(text)
    assert err.value.position >= 0


def test_parse_undeclared_generator():
    with pytest.raises(PresentationSyntaxError, match="not declared"):
        parse_presentation("<x1 | x2>")


def test_presentation_generator_bound():
    with pytest.raises(ValueError):
        GroupPresentation(1, (x2,))


# ---------------------------------------------------------------- Fox calculus


def test_fox_square():
    assert fox_derivative(FreeWord.generator(2, 2), 2) == ring((FreeWord(), 1), (x2, 1))


def test_fox_generator():
    assert fox_derivative(x1, 1) == GroupRingElement.one()
    assert fox_derivative(x1.inverse(), 1) == ring((x1.inverse(), -1))


def test_fox_baumslag_solitar_abelianized():
    p = parse_presentation(catalog.BAUMSLAG_SOLITAR)
    ab = abelianize(p)
    d = fox_derivative(p.relators[0], 2)
    img: dict = {}
    for w, c in d.terms.items():
        k = ab.image(w)
        img[k] = img.get(k, 0) + c
    # x1 maps to t, x2 to 1: x1 - x2 - 1 becomes t - 2
    assert {k: v for k, v in img.items() if v} == {((1,), ()): 1, ((0,), ()): -2}


@settings(max_examples=200)
@given(words, words, st.integers(1, 3))
def test_fox_product_rule(u, v, j):
    assert fox_derivative(u * v, j) == fox_derivative(u, j) + ring((u, 1)) * fox_derivative(v, j)


@settings(max_examples=200)
@given(words)
def test_fundamental_identity(r):
    total = GroupRingElement()
    for j in (1, 2, 3):
        total = total + fox_derivative(r, j) * (ring((FreeWord.generator(j), 1)) - 1)
    assert total == ring((r, 1)) - 1


def test_group_ring_has_no_zero_terms():
    e = ring((x1, 1)) - ring((x1, 1))
    assert e.terms == {}


# ---------------------------------------------------------------- Smith form


def test_snf_small_cases():
    U, S, V = smith_normal_form([[2]])
    assert S == [[2]]
    U, S, V = smith_normal_form([[0, 0], [0, 0]])
    assert S == [[0, 0], [0, 0]] and U == [[1, 0], [0, 1]] and V == [[1, 0], [0, 1]]
    U, S, V = smith_normal_form([[0, 2]])
    assert S == [[2, 0]]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda s: st.integers(1, 6).flatmap(
    lambda t: st.lists(st.lists(st.integers(-20, 20), min_size=t, max_size=t), min_size=s, max_size=s))))
def test_snf_matches_sympy(A):
    U, S, V = smith_normal_form(A)
    assert mat_mul(mat_mul(U, A), V) == S
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    ours = [abs(S[i][i]) for i in range(min(len(A), len(A[0])))]
    ref = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert sorted(ours) == sorted(theirs)


# ---------------------------------------------------------------- abelianization


def test_abelianize_free_times_z2():
    ab = abelianize(parse_presentation(catalog.Z_FREE_Z2))
    assert (ab.rank, ab.torsion) == (1, (2,))
    assert ab.free_projection == ((1,), (0,))
    assert ab.torsion_projection == ((0,), (1,))


def test_abelianize_torus():
    ab = abelianize(GroupPresentation(2, (commutator(x1, x2),)))
    assert (ab.rank, ab.torsion) == (2, ())


def test_abelianize_brieskorn_248():
    from tropbns.seifert import brieskorn, seifert_presentation
    ab = abelianize(seifert_presentation(brieskorn((2, 4, 8)).seifert))
    assert (ab.rank, ab.torsion) == (2, (4,))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.lists(words, max_size=4))
def test_abelianize_invariants(m, rels):
    rels = tuple(FreeWord(tuple((min(g, m), e) for g, e in r.syllables)) for r in rels)
    p = GroupPresentation(m, rels)
    ab = abelianize(p)
    assert ab.rank >= m - len(rels)
    M = p.exponent_matrix()
    assert ab.rank + len(ab.torsion) <= m
    assert ab.rank == m - (sympy.Matrix(M).rank() if M else 0)
    for r in rels:
        free, tors = ab.image(r)
        assert not any(free) and not any(tors)
    for t in ab.torsion_projection:
        assert all(0 <= x < d for x, d in zip(t, ab.torsion))
    assert all(b % a == 0 for a, b in zip(ab.torsion, ab.torsion[1:]))


def test_free_projection_kills_relators_exactly():
    p = parse_presentation(catalog.HOPF3)
    ab = abelianize(p)
    for r in p.relators:
        assert mat_vec(list(zip(*ab.free_projection)), [r.exponent_sum(i) for i in (1, 2, 3)]) == (0, 0, 0)


def test_random_commutator_relator():
    rng = random.Random(3)
    for _ in range(50):
        w = random_commutator_relator(rng, 24)
        assert 4 <= w.length <= 24
        assert w.exponent_sum(1) == 0 and w.exponent_sum(2) == 0
        assert w.cyclically_reduced() == w
