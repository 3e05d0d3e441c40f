from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import upmost_integral_minorant
from pbrauer.errors import IntegralityViolation, InvalidArgument
from pbrauer.polygon import (NewtonPolygon, hodge_newton_polygon, integral_slope_multiplicities, lies_below,
                             plot, polygon_from_slopes, slopes_from_polygon)
from pbrauer.slopes import IsocrystalProfile, SlopeMultiset, exterior_power, m_ij, symmetric_admissible_h1

half = Fraction(1, 2)
AS_NP = NewtonPolygon(((0, 0), (4, 2), (11, 9), (15, 15)))
AS_HN = NewtonPolygon(((0, 0), (2, 0), (13, 11), (15, 15)))


def ms(*pairs):
    return SlopeMultiset.from_pairs(pairs)


# admissible: multiplicity of a/b is a multiple of b, so every breakpoint is a lattice point
admissible_st = st.lists(
    st.tuples(st.integers(0, 9), st.integers(1, 4), st.integers(1, 2)), max_size=4,
).map(lambda xs: SlopeMultiset.from_pairs([(Fraction(a, b), Fraction(a, b).denominator * k) for a, b, k in xs]))


def test_from_slopes_examples():
    assert polygon_from_slopes(ms((0, 3), (1, 3))).vertices == ((0, 0), (3, 0), (6, 3))
    assert polygon_from_slopes(ms((half, 4), (1, 7), (Fraction(3, 2), 4))) == AS_NP
    assert polygon_from_slopes(SlopeMultiset()).vertices == ((0, 0),)
    with pytest.raises(IntegralityViolation):
        polygon_from_slopes(ms((half, 3)))


def test_slopes_from_polygon_examples():
    assert slopes_from_polygon(NewtonPolygon(((0, 0), (3, 0), (6, 3)))) == ms((0, 3), (1, 3))
    assert slopes_from_polygon(AS_NP) == ms((half, 4), (1, 7), (Fraction(3, 2), 4))
    assert slopes_from_polygon(NewtonPolygon()) == SlopeMultiset()


def test_validation():
    with pytest.raises(InvalidArgument):
        NewtonPolygon(((1, 0), (2, 2)))
    with pytest.raises(InvalidArgument):
        NewtonPolygon(((0, 0), (2, 2), (3, 2)))  # concave
    with pytest.raises(IntegralityViolation):
        NewtonPolygon(((0, 0), (Fraction(1, 2), 0)))
    assert NewtonPolygon.from_points([(0, 0), (1, 1), (2, 2)]).vertices == ((0, 0), (2, 2))


@settings(max_examples=100, deadline=None)
@given(admissible_st)
def test_round_trip(a):
    assert slopes_from_polygon(polygon_from_slopes(a)) == a


def test_lies_below():
    assert lies_below(AS_HN, AS_NP)
    assert lies_below(AS_NP, AS_NP)
    assert not lies_below(AS_NP, AS_HN)
    a = NewtonPolygon(((0, 0), (3, 0), (6, 3)))
    b = NewtonPolygon(((0, 0), (2, 0), (6, 3)))
    assert lies_below(a, b) == all(a.height(x) <= b.height(x) for x in range(7))
    with pytest.raises(InvalidArgument):
        lies_below(a, AS_NP)


def test_hodge_newton_examples():
    assert hodge_newton_polygon(AS_NP) == AS_HN
    ss = NewtonPolygon(((0, 0), (15, 15)))
    assert hodge_newton_polygon(ss) == ss
    assert hodge_newton_polygon(polygon_from_slopes(ms((0, 2), (half, 2), (1, 2)))).vertices == ((0, 0), (3, 0), (6, 3))


@settings(max_examples=80, deadline=None)
@given(admissible_st.filter(lambda a: a.rank <= 12))
def test_hodge_newton_is_upmost_minorant(a):
    np = polygon_from_slopes(a)
    hn = hodge_newton_polygon(np)
    assert lies_below(hn, np)
    assert all(s.denominator == 1 for s, _ in hn.segments())
    assert [int(y) for y in hn.ordinates()] == upmost_integral_minorant(np.vertices)


@settings(max_examples=80, deadline=None)
@given(admissible_st)
def test_hodge_newton_multiplicities_are_m_ij(a):
    np = polygon_from_slopes(a)
    n = max([int(s) + 1 for s in a.slopes()] + [0])
    prof = IsocrystalProfile(n, a)
    mult = integral_slope_multiplicities(hodge_newton_polygon(np))
    assert all(mult.get(i, 0) == m_ij(prof, i, n - i) for i in range(n + 1))


def test_abelian_polygons_agree_with_oracle():
    for g in (1, 2, 3):
        for h1 in symmetric_admissible_h1(g):
            np = polygon_from_slopes(exterior_power(h1, 2))
            assert [int(y) for y in hodge_newton_polygon(np).ordinates()] == upmost_integral_minorant(np.vertices)


def test_plot_marks_shared_points():
    text = plot([("N", AS_NP), ("H", AS_HN)])
    lines = text.splitlines()
    assert lines[-1].startswith("N: (0,0),(4,2)")
    assert lines[-2][0] == "*"  # origin shared
    assert len(lines) == 15 * 2 + 1 + 1
