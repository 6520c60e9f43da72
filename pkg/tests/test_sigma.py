import random

import pytest

import catalog
from tropbns.alexander import UnsupportedInput, alexander_polynomial, component_analysis
from tropbns.laurent import LaurentPoly
from tropbns.presentation import FreeWord, GroupPresentation, parse_presentation, random_commutator_relator
from tropbns.sigma import (ARCS, COMPLEMENT, EMPTY, FULL, SIGMAQ_Z, SphereBound, angle_key, arc_complement,
                           brown_polygon, brown_rank1, brown_rank2, facet_bound, in_open_arc, pencil_bound,
                           primitive_directions, sigma_bound_from_trop, verify_inclusion)
from tropbns.tropical import TropSet, trop_char_variety, trop_hypersurface

P = parse_presentation


def trop_bound(p):
    return sigma_bound_from_trop(trop_char_variety(component_analysis(p)))


# ---------------------------------------------------------------- circle geometry


def test_angle_order():
    ring = [(1, 0), (2, 1), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    assert sorted(ring, key=angle_key) == ring


def test_open_arcs():
    assert in_open_arc((1, 1), (1, 0), (0, 1))
    assert not in_open_arc((1, 0), (1, 0), (0, 1))
    assert in_open_arc((1, -1), (0, -1), (1, 0))  # arc that ends at angle zero
    assert in_open_arc((1, 0), (1, -1), (1, 1))  # wraps past angle zero
    assert in_open_arc((0, 1), (1, 0), (1, 0)) and not in_open_arc((1, 0), (1, 0), (1, 0))


def test_arc_complement():
    assert arc_complement([((1, 0), (-1, 0)), ((-1, 0), (1, 0))]) == [(-1, 0), (1, 0)]
    assert arc_complement([((1, 0), (0, 1))]) is None
    assert arc_complement([]) is None


def test_primitive_directions():
    assert len(primitive_directions(2, 1)) == 8
    assert primitive_directions(1, 5) == ((1,), (-1,))
    assert all(abs(x) <= 2 for d in primitive_directions(3, 2) for x in d)


# ---------------------------------------------------------------- Brown


def test_brown_rank1_baumslag_solitar():
    assert brown_rank1(P(catalog.BAUMSLAG_SOLITAR)) == (True, False)
    assert brown_rank1(P(catalog.BAUMSLAG_SOLITAR), (-1,)) == (False, True)


def test_brown_rank1_free_times_z2():
    assert brown_rank1(P(catalog.Z_FREE_Z2)) == (False, False)


def test_brown_rank1_rejects_other_ranks():
    with pytest.raises(UnsupportedInput):
        brown_rank1(P(catalog.TRIANGLE))
    with pytest.raises(UnsupportedInput):
        brown_rank1(P(catalog.HOPF3))


def test_brown_doubled_rectangle():
    b = brown_rank2(P(catalog.DOUBLED_RECTANGLE))
    assert b.mode == ARCS and b.excluded_directions() == {(1, 0), (-1, 0)}


def test_brown_triangle():
    b = brown_rank2(P(catalog.TRIANGLE))
    assert b.excluded_directions() == {(-1, 0), (1, 1), (0, -1)}


def test_brown_two_arcs():
    b = brown_rank2(P(catalog.TWO_ARCS))
    assert set(b.arcs) == {((0, -1), (1, -1)), ((0, 1), (-1, 1))}
    assert b.excluded_directions() is None


def test_brown_polygon_visits():
    poly = brown_polygon(P(catalog.DOUBLED_RECTANGLE))
    assert poly.walk[0] == poly.walk[-1] == (0, 0)
    assert sum(poly.visits.values()) == len(poly.walk) - 1


def test_brown_rejects_bad_relators():
    with pytest.raises(UnsupportedInput):
        brown_rank2(P("<x1,x2 | x1*x2>"))
    with pytest.raises(UnsupportedInput):
        brown_rank2(P("<x1,x2,x3 | x1*x2*x1^-1*x2^-1>"))


def _swap_signs(w):
    return FreeWord(tuple((g, -e) for g, e in w.syllables))


def test_inverting_generators_negates_sigma():
    rng = random.Random(11)
    dirs = primitive_directions(2, 6)
    for _ in range(40):
        r = random_commutator_relator(rng, 20)
        a = brown_rank2(GroupPresentation(2, (r,)))
        b = brown_rank2(GroupPresentation(2, (_swap_signs(r),)))
        for d in dirs:
            assert a.allows(d) == b.allows(tuple(-x for x in d))


def test_brown_is_invariant_under_relator_inversion_and_rotation():
    rng = random.Random(12)
    dirs = primitive_directions(2, 5)
    for _ in range(30):
        r = random_commutator_relator(rng, 18)
        a = brown_rank2(GroupPresentation(2, (r,)))
        b = brown_rank2(GroupPresentation(2, (r.inverse(),)))
        ls = list(r.letters())
        k = rng.randrange(len(ls))
        c = brown_rank2(GroupPresentation(2, (FreeWord.from_letters(ls[k:] + ls[:k]),)))
        for d in dirs:
            assert a.allows(d) == b.allows(d) == c.allows(d)


# ---------------------------------------------------------------- bounds


def test_bound_from_full_tropical_set_is_empty():
    assert sigma_bound_from_trop(TropSet.full(2)).mode == EMPTY


def test_bound_from_origin_is_full():
    assert sigma_bound_from_trop(TropSet.origin(3)).mode == FULL


def test_bound_from_triangle_is_antipodal():
    s = trop_bound(P(catalog.TRIANGLE))
    assert s.mode == COMPLEMENT
    assert s.excluded_directions() == {(-1, 0), (0, -1), (1, 1)}
    q = sigma_bound_from_trop(trop_char_variety(component_analysis(P(catalog.TRIANGLE))), SIGMAQ_Z)
    assert q.excluded_directions() == {(1, 0), (0, 1), (-1, -1)}
    with pytest.raises(ValueError):
        sigma_bound_from_trop(TropSet.full(2), "other")


def test_facet_bound_diagonals():
    f = facet_bound(LaurentPoly.parse(catalog.DIAGONALS_DELTA, 2))
    assert f.excluded_directions() == {(1, 1), (-1, 1), (1, -1), (-1, -1)}


def test_facet_bound_hopf():
    f = facet_bound(LaurentPoly.parse("t1*t2*t3 - 1"))
    assert f.allows((1, 1, 1)) and f.allows((-1, 0, 0))
    assert not f.allows((1, -1, 0))


def test_facet_bound_trivial_cases():
    assert facet_bound(LaurentPoly.parse("1", 2)).mode == FULL
    assert facet_bound(LaurentPoly.zero(2)).mode == EMPTY
    with pytest.raises(ValueError):
        facet_bound(LaurentPoly.parse("t1 + t2 + 1"))


@pytest.mark.parametrize("text", [catalog.DOUBLED_RECTANGLE, catalog.BROWN, catalog.TWO_ARCS])
def test_facet_bound_agrees_with_tropical_bound_for_symmetric_delta(text):
    p = P(text)
    f = facet_bound(alexander_polynomial(p))
    s = trop_bound(p)
    for d in primitive_directions(2, 8):
        assert f.allows(d) == s.allows(d)


def test_pencil_bound_cases():
    assert pencil_bound(3, []).mode == FULL
    assert pencil_bound(2, [[[1, 0], [0, 1]]]).mode == EMPTY
    b = pencil_bound(3, [[[1], [0], [0]], [[0, 0], [1, 0], [0, 1]]])
    assert b.mode == COMPLEMENT
    assert not b.allows((1, 0, 0)) and not b.allows((0, 2, -1)) and b.allows((1, 1, 0))
    with pytest.raises(ValueError):
        pencil_bound(2, [[[1, 2], [2, 4]]])
    with pytest.raises(ValueError):
        pencil_bound(3, [[[1], [0]]])


# ---------------------------------------------------------------- verification


def test_verify_equal_for_doubled_rectangle():
    p = P(catalog.DOUBLED_RECTANGLE)
    rep = verify_inclusion(brown_rank2(p), trop_bound(p))
    assert rep.holds and rep.equal and rep.method == "finite-exclusion"


def test_verify_strict_for_brown_relator():
    p = P(catalog.BROWN)
    rep = verify_inclusion(brown_rank2(p), trop_bound(p))
    assert rep.holds and rep.equal is False


def test_verify_against_full_bound():
    rep = verify_inclusion(brown_rank2(P(catalog.BROWN)), SphereBound(2, FULL))
    assert rep.holds and rep.method == "trivial" and not rep.equal


def test_verify_finds_violation():
    truth = SphereBound(2, FULL)
    bound = sigma_bound_from_trop(trop_hypersurface(LaurentPoly.parse("t1 + t2 + 1")))
    rep = verify_inclusion(truth, bound)
    assert not rep.holds and rep.verdict == "VIOLATION"
    assert not bound.allows(rep.witness)
    assert not verify_inclusion(truth, SphereBound(2, EMPTY)).holds


def test_verify_sampled_in_three_dimensions():
    p = P(catalog.HOPF3)
    s = trop_bound(p)
    rep = verify_inclusion(facet_bound(alexander_polynomial(p)), s, height=3)
    assert rep.holds and rep.method == "sampled" and rep.samples > 0


def test_verify_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_inclusion(SphereBound(2, FULL), SphereBound(3, FULL))


@pytest.mark.parametrize("b", [
    SphereBound(2, FULL), SphereBound(3, EMPTY),
    brown_rank2(P(catalog.TWO_ARCS)),
    SphereBound(1, ARCS, points=((1,),)),
])
def test_sphere_bound_json_round_trip(b):
    c = SphereBound.from_json(b.to_json())
    assert (c.ambient, c.mode, c.arcs, c.points) == (b.ambient, b.mode, b.arcs, b.points)


def test_complement_json_round_trip():
    b = trop_bound(P(catalog.TRIANGLE))
    c = SphereBound.from_json(b.to_json())
    assert c.trop == b.trop and c.antipodal == b.antipodal
    assert b.to_json()["excluded_directions"] == [[-1, 0], [0, -1], [1, 1]]
