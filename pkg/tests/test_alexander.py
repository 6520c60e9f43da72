import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import catalog
from tropbns.alexander import (FINITE_OR_EMPTY, FULL, HYPERSURFACE, DirectComponent, UnsupportedInput,
                               alexander_matrix, alexander_norm, alexander_polynomial, character_order,
                               component_analysis, description_from_json, description_to_json, is_symmetric,
                               specialize_torsion)
from tropbns.laurent import LaurentPoly
from tropbns.polyhedra import newton_polytope
from tropbns.presentation import FreeWord, GroupPresentation, parse_presentation, random_commutator_relator

P = parse_presentation


def L(text, n=None):
    return LaurentPoly.parse(text, n)


EXAMPLES = [catalog.DOUBLED_RECTANGLE, catalog.TRIANGLE, catalog.BROWN, catalog.TWO_ARCS, catalog.BAUMSLAG_SOLITAR]


def test_alexander_polynomials():
    assert alexander_polynomial(P(catalog.DOUBLED_RECTANGLE)) == L("t2 + 1", 2)
    assert alexander_polynomial(P(catalog.TRIANGLE)) == L("t1 + t2 + 1")
    assert alexander_polynomial(P(catalog.BROWN)) == L("t1 - 1", 2)
    assert alexander_polynomial(P(catalog.TWO_ARCS)) == (L("t1 - 1", 2) * L("t1*t2 - 1")).normalize()
    assert alexander_polynomial(P(catalog.BAUMSLAG_SOLITAR)) == L("t1 - 2")
    assert alexander_polynomial(P(catalog.HOPF3)) == L("t1*t2*t3 - 1")


def test_free_and_cyclic_groups():
    assert alexander_polynomial(P(catalog.FREE2)).is_zero()
    assert alexander_polynomial(P(catalog.INTEGERS)) == L("1", 1)
    assert alexander_polynomial(P(catalog.Z_FREE_Z2)) == L("2", 1)


def test_betti_zero_is_unsupported():
    with pytest.raises(UnsupportedInput):
        alexander_polynomial(P("<x1 | x1^3>"))


def test_specialize_free_times_z2():
    M = alexander_matrix(P(catalog.Z_FREE_Z2))
    zero = LaurentPoly.zero(1)
    assert specialize_torsion(M, (1,)) == [[zero, zero]]
    assert specialize_torsion(M, (0,)) == [[zero, L("2", 1)]]


def test_specialize_trivial_torsion_is_free_part():
    M = alexander_matrix(P(catalog.TRIANGLE))
    assert specialize_torsion(M, ()) == M.free_part()


def test_character_order():
    assert character_order((2,), (4,)) == 2
    assert character_order((1, 3), (2, 6)) == 2
    assert character_order((1, 1), (2, 3)) == 6


def test_components_free_times_z2():
    d = component_analysis(P(catalog.Z_FREE_Z2))
    assert d.component_at((0,)).outcome == FINITE_OR_EMPTY
    assert d.component_at((1,)).outcome == FULL


def test_components_baumslag_solitar():
    c = component_analysis(P(catalog.BAUMSLAG_SOLITAR)).component_at(())
    assert c.outcome == HYPERSURFACE and c.polynomial == L("t1 - 2") and c.exact


def test_components_brieskorn_order_four_field():
    from tropbns.seifert import brieskorn, seifert_presentation
    d = component_analysis(seifert_presentation(brieskorn((2, 4, 8)).seifert))
    assert d.component_at((2,)).outcome == FULL and d.component_at((2,)).exact
    assert d.component_at((1,)).outcome == FINITE_OR_EMPTY
    assert not d.component_at((1,)).exact  # more relators than m - 1: only the determinantal locus


def test_cyclotomic_limit():
    p = P("<x1,x2 | x2^14>")
    with pytest.raises(UnsupportedInput):
        component_analysis(p, max_cyclotomic=12)
    d = component_analysis(p, max_cyclotomic=14)
    assert all(c.outcome == (FULL if c.character != (0,) else FINITE_OR_EMPTY) for c in d.components)


@pytest.mark.parametrize("text", EXAMPLES)
def test_identity_component_agrees_with_alexander_polynomial(text):
    p = P(text)
    c = component_analysis(p).component_at(())
    delta = alexander_polynomial(p)
    if len(delta.terms) >= 2:
        assert c.outcome == HYPERSURFACE and c.polynomial == delta
    else:
        assert c.outcome == FINITE_OR_EMPTY


def _conjugate(p, rng):
    out = []
    for r in p.relators:
        u = FreeWord.from_ints([rng.choice([1, -1]) * rng.randint(1, p.num_generators) for _ in range(3)])
        out.append((u * r * u.inverse()) if rng.random() < 0.5 else r.inverse())
    return GroupPresentation(p.num_generators, tuple(out))


@pytest.mark.parametrize("text", EXAMPLES + [catalog.HOPF3])
def test_invariance_under_conjugation_and_inversion(text):
    rng = random.Random(text)
    p = P(text)
    for _ in range(5):
        assert alexander_polynomial(_conjugate(p, rng)) == alexander_polynomial(p)


def test_generator_swap_permutes_variables():
    for _ in range(20):
        rng = random.Random(_)
        w = random_commutator_relator(rng, 16)
        swapped = FreeWord(tuple((3 - g, e) for g, e in w.syllables))
        a = alexander_polynomial(GroupPresentation(2, (w,)))
        b = alexander_polynomial(GroupPresentation(2, (swapped,)))
        back = LaurentPoly(2, {(e[1], e[0]): c for e, c in b.terms.items()}).normalize()
        assert back == a


# ---------------------------------------------------------------- norm and symmetry


def test_alexander_norm_cases():
    assert alexander_norm(L("t1 + t2 + 1"), (1, 0)) == 1
    assert alexander_norm(L("1", 2), (3, -1)) == 0
    assert alexander_norm(L("t1*t2*t3 - 1"), (1, 1, 1)) == 3
    with pytest.raises(ValueError):
        alexander_norm(LaurentPoly.zero(1), (1,))


covectors = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@given(covectors, covectors, st.integers(0, 6))
def test_alexander_norm_is_seminorm(a, b, k):
    delta = L(catalog.DIAGONALS_DELTA, 2) * L("t1 - 2", 2)
    s = tuple(x + y for x, y in zip(a, b))
    assert alexander_norm(delta, s) <= alexander_norm(delta, a) + alexander_norm(delta, b)
    assert alexander_norm(delta, tuple(k * x for x in a)) == k * alexander_norm(delta, a)


@given(covectors)
def test_alexander_norm_is_width_of_newton_polytope(phi):
    delta = L(catalog.DIAGONALS_DELTA, 2)
    P_ = newton_polytope(delta)
    width = -P_.support_min(phi) - P_.support_min(tuple(-x for x in phi))
    assert alexander_norm(delta, phi) == width


def test_symmetry():
    assert is_symmetric(L("t2 + 1"))
    assert not is_symmetric(L("t1 - 2"))
    assert is_symmetric(L(catalog.DIAGONALS_DELTA, 2))
    assert is_symmetric(L("t1 - 1"))  # sign allowed


# ---------------------------------------------------------------- JSON


def test_description_json_round_trip():
    from tropbns.seifert import brieskorn, seifert_presentation
    for d in [component_analysis(P(catalog.TRIANGLE)),
              component_analysis(seifert_presentation(brieskorn((2, 4, 8)).seifert))]:
        assert description_from_json(description_to_json(d)) == d


def test_direct_description_from_json():
    d = description_from_json({"rank": 2, "components": [
        {"kind": "direct", "lattice": [[1, 0]], "translation": ["1/2", "0"]}]})
    assert d.components == (DirectComponent(((1, 0),), (Fraction(1, 2), 0)),)
    with pytest.raises(ValueError):
        description_from_json({"rank": 2, "components": [{"kind": "mystery"}]})
