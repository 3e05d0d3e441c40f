from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pbrauer.classify import (DIVISIBLE, FINITE, UNIPOTENT, Abelian, BrauerShape, Enriques, Flags, Generic, K3,
                              PGroup, Superspecial, Surface, UnknownBounded, classify, dlog_injective_degree2,
                              ordinary_slope_check)
from pbrauer.errors import ClassificationError, InternalConsistencyError, InvalidArgument
from pbrauer.hodge_witt import HodgeDiamond
from pbrauer.slopes import IsocrystalProfile, SlopeMultiset, symmetric_admissible_h1

third = Fraction(1, 3)
ALL_FIELDS = {DIVISIBLE, UNIPOTENT, FINITE}


def ms(*pairs):
    return SlopeMultiset.from_pairs(pairs)


def generic(h2, h02, rho, flags, j_exp=None):
    return Generic(3, {2: h2}, HodgeDiamond(3, {(0, 2): h02}), rho, flags, j_exp)


def test_abelian_threefolds():
    shape, report = classify(Abelian(3, ms((third, 3), (2 * third, 3)), 3))
    assert (shape.divisible_rank, shape.unipotent_dim, shape.finite_part) == (6, 2, PGroup())
    assert str(shape) == "(Q_p/Z_p)^6 ⊕ U(k), dim U = 2"
    shape, _ = classify(Abelian(3, ms((Fraction(1, 2), 6)), 15))
    assert str(shape) == "U(k), dim U = 3"
    shape, _ = classify(Abelian(2, ms((0, 2), (1, 2)), 1))
    assert str(shape) == "(Q_p/Z_p)^3"


@pytest.mark.parametrize("g", [1, 2, 3])
def test_every_abelian_report_is_fully_justified(g):
    for h1 in symmetric_admissible_h1(g):
        shape, report = classify(Abelian(g, h1, 0))
        assert report.justified_fields() == ALL_FIELDS
        assert report.text().startswith("Br[p^∞] = ")
        assert set(report.to_json()) == {"shape", "rules"}
        assert all(set(r) == {"name", "citation", "conclusion"} for r in report.to_json()["rules"])


def test_abelian_validation():
    with pytest.raises(InvalidArgument):
        Abelian(2, ms((0, 3), (1, 1)), 0)  # not symmetric
    with pytest.raises(InvalidArgument):
        Abelian(2, ms((0, 1), (1, 1)), 0)  # wrong rank
    with pytest.raises(ClassificationError):
        classify(Abelian(1, ms((0, 1), (1, 1)), 2))  # rho > r = 1


@pytest.mark.parametrize("h", range(1, 11))
def test_k3_finite_height(h):
    for rho in range(1, 22 - 2 * h + 1):
        shape, report = classify(K3(h, rho))
        assert (shape.divisible_rank, shape.unipotent_dim) == (22 - 2 * h - rho, 0)
        assert shape.finite_part.is_trivial()
        assert report.justified_fields() == ALL_FIELDS
    with pytest.raises(ClassificationError):
        classify(K3(h, 23 - 2 * h))


def test_k3_supersingular():
    for sigma in (None, 1, 10):
        shape, _ = classify(K3("supersingular", artin_invariant=sigma))
        assert str(shape) == "k"
    with pytest.raises(InvalidArgument):
        K3(0, 1)
    with pytest.raises(InvalidArgument):
        K3(3)
    with pytest.raises(InvalidArgument):
        K3("supersingular", artin_invariant=11)


@pytest.mark.parametrize("p,subtype,expected", [(3, "classical", "0"), (5, "classical", "0"),
                                                (2, "classical", "Z/2"), (2, "singular", "0"),
                                                (2, "supersingular", "0")])
def test_enriques(p, subtype, expected):
    shape, report = classify(Enriques(p, subtype))
    assert str(shape) == expected
    assert report.justified_fields() == ALL_FIELDS


def test_enriques_validation():
    with pytest.raises(InvalidArgument):
        Enriques(3, "singular")
    with pytest.raises(InvalidArgument):
        Enriques(2, "exotic")
    with pytest.raises(InvalidArgument):
        Enriques(4)


def test_surface_dual_of_ns_torsion():
    s = Surface(6, 2, 2, 1, ms((0, 1), (1, 4), (2, 1)), PGroup((2, 4)), Flags(ordinary=True), ms((0, 2), (1, 2)))
    shape, report = classify(s)
    assert str(shape) == "(Q_p/Z_p)^2 ⊕ Z/2 ⊕ Z/4"
    assert report.justified_fields() == ALL_FIELDS


def test_surface_ordinary_mismatch():
    # the ordinary flag with a non-integral slope is rejected
    s = Surface(2, 0, 0, 0, ms((Fraction(1, 2), 2)), flags=Flags(ordinary=True))
    with pytest.raises(ClassificationError):
        classify(s)
    # ordinary, yet Crew would give T^02 = 1: h^02 = 1 with no slope-0 part
    s = Surface(2, 0, 0, 1, ms((1, 2)), flags=Flags(ordinary=True))
    with pytest.raises(ClassificationError):
        classify(s)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 8), st.integers(0, 4))
def test_ordinary_surfaces_have_no_unipotent_part(a, b, rho_gap):
    # ordinary surface with h^02 = m^02 = a and h^01 = m^01 = 0
    b2 = 2 * a + b
    s = Surface(b2, b - min(rho_gap, b), 0, a, ms((0, a), (1, b), (2, a)) if a else ms((1, b)) if b else ms(),
                flags=Flags(ordinary=True))
    shape, _ = classify(s)
    assert shape.unipotent_dim == 0
    assert shape.divisible_rank == min(rho_gap, b)


def test_superspecial():
    for g, dim in ((1, 0), (2, 1), (3, 3), (5, 10)):
        shape, report = classify(Superspecial(g, 3))
        assert (shape.divisible_rank, shape.unipotent_dim) == (0, dim)
        assert shape.finite_part.is_trivial()
        assert report.justified_fields() == ALL_FIELDS
    assert str(classify(Superspecial(2, 2))[0]) == "k"
    with pytest.raises(InvalidArgument):
        Superspecial(2, 6)


def test_generic_branches():
    h2 = ms((0, 1), (1, 3), (2, 1))
    shape, report = classify(generic(h2, 1, 1, Flags(ordinary=True, torsion_free={3})))
    assert (shape.divisible_rank, shape.unipotent_dim, shape.finite_part) == (2, 0, PGroup())
    assert report.justified_fields() == ALL_FIELDS

    h2 = ms((Fraction(1, 2), 2), (1, 5), (Fraction(3, 2), 2))
    shape, _ = classify(generic(h2, 2, 3, Flags(frolicher_degenerates=True, torsion_free={2, 3})))
    assert (shape.divisible_rank, shape.unipotent_dim) == (2, 1)

    shape, report = classify(generic(h2, 2, 3, Flags(), j_exp=2))
    assert shape.unipotent_dim is None and shape.unipotent_bound == 1
    assert shape.finite_part == UnknownBounded(3)
    assert report.justified_fields() == ALL_FIELDS
    assert "dim U <= 1" in str(shape)

    with pytest.raises(ClassificationError):
        classify(generic(h2, 2, 3, Flags(ordinary=True)))
    with pytest.raises(ClassificationError):
        classify(generic(ms((1, 1), (Fraction(1, 2), 2), (Fraction(3, 2), 2)), 0, 0, Flags()))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 4))
def test_unipotent_bound_is_respected(a, extra, rho):
    # whenever T^02 is determined exactly it never exceeds the Ekedahl bound computed without flags
    h2 = ms((0, a), (1, 4), (2, a)) if a else ms((1, 4))
    h02 = a + extra
    exact, _ = classify(generic(h2, h02, rho, Flags(frolicher_degenerates=True, torsion_free={2, 3})))
    loose, _ = classify(generic(h2, h02, rho, Flags()))
    assert exact.unipotent_dim <= loose.unipotent_bound
    assert exact.divisible_rank == loose.divisible_rank == 4 - rho


def test_dlog_criterion():
    assert str(dlog_injective_degree2(Flags(frolicher_degenerates=True, torsion_free={1, 2}))) == "decided(true)"
    assert str(dlog_injective_degree2(Flags(frolicher_degenerates=True, torsion_free={2, 3}))) == "decided(true)"
    assert str(dlog_injective_degree2(Flags(frolicher_degenerates=True, torsion_free={1, 3}))) == "criterion_inapplicable"
    assert str(dlog_injective_degree2(Flags(torsion_free={1, 2, 3}))) == "criterion_inapplicable"


def test_ordinary_slope_check():
    assert ordinary_slope_check([IsocrystalProfile(2, ms((0, 1), (1, 2), (2, 1)))])
    assert not ordinary_slope_check([IsocrystalProfile(1, ms((Fraction(1, 2), 2)))])


def test_shape_text():
    assert str(BrauerShape(0, 0, PGroup())) == "0"
    assert str(BrauerShape(1, 1, PGroup((3,)))) == "Q_p/Z_p ⊕ an extension of Z/3 by k"
    with pytest.raises(InvalidArgument):
        PGroup((6,))
    with pytest.raises(InvalidArgument):
        PGroup((2, 3))


def test_not_a_descriptor():
    with pytest.raises(InvalidArgument):
        classify("abelian")


def test_abelian_cross_check_is_wired(monkeypatch):
    import pbrauer.classify as cl
    monkeypatch.setattr(cl, "m_ij", lambda prof, i, j: Fraction(0))
    with pytest.raises(InternalConsistencyError):
        classify(Abelian(2, ms((0, 2), (1, 2)), 0))
