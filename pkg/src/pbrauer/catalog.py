"""Built-in self-check catalog and the abelian 3-fold table."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import classify as cl
from .dieudonne import GroupShape, dmodule_hom, superspecial_brauer, superspecial_h2, supersingular_E_p
from .finite_field import gf
from .hodge_witt import TTable, crew_surface_T02, hodge_numbers_abelian, hodge_witt_number, solve_T
from .polygon import NewtonPolygon, hodge_newton_polygon, lies_below, polygon_from_slopes
from .raynaud import (CoherentDesc, Domino, TruncatedDomino, cokernel_one_minus_F, kernel_one_minus_F,
                      supersingular_k3_desc, t_ij_from_desc)
from .slopes import IsocrystalProfile, SlopeMultiset, exterior_power, m_ij, slope_window

half, third = Fraction(1, 2), Fraction(1, 3)

ABELIAN3_CASES = [
    ("ordinary", SlopeMultiset.from_pairs([(0, 3), (1, 3)])),
    ("almost ordinary", SlopeMultiset.from_pairs([(0, 2), (half, 2), (1, 2)])),
    ("almost supersingular", SlopeMultiset.from_pairs([(0, 1), (half, 4), (1, 1)])),
    ("1/3 type", SlopeMultiset.from_pairs([(third, 3), (2 * third, 3)])),
    ("supersingular", SlopeMultiset.from_pairs([(half, 6)])),
]


def abelian_profiles(h1: SlopeMultiset, g: int) -> list[IsocrystalProfile]:
    return [IsocrystalProfile(n, exterior_power(h1, n) if n else SlopeMultiset.from_pairs([(0, 1)]))
            for n in range(2 * g + 1)]


@dataclass(frozen=True)
class TableRow:
    case: str
    h1: SlopeMultiset
    window: SlopeMultiset
    m02: Fraction
    t02: int

    def to_json(self) -> dict:
        return {"case": self.case, "h1_slopes": self.h1.to_json(), "h2_window0": self.window.to_json(),
                "m02": str(self.m02), "T02": self.t02}


def abelian3_table() -> list[TableRow]:
    rows = []
    for name, h1 in ABELIAN3_CASES:
        profiles = abelian_profiles(h1, 3)
        t = solve_T(hodge_numbers_abelian(3), profiles, 3)
        rows.append(TableRow(name, h1, slope_window(profiles[2], 0), m_ij(profiles[2], 0, 2), t[(0, 2)]))
    return rows


def format_table(rows: list[TableRow]) -> str:
    head = ("case", "H^2 slopes in [0,1)", "m^02", "T^02")
    body = [(r.case, str(r.window), str(r.m02), str(r.t02)) for r in rows]
    widths = [max(len(row[k]) for row in [head, *body]) for k in range(4)]
    fmt = " | ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*head), "-+-".join("-" * w for w in widths)]
    return "\n".join(line.rstrip() for line in lines + [fmt.format(*row) for row in body])


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], tuple[object, object]]

    def evaluate(self) -> tuple[bool, str]:
        try:
            got, want = self.run()
        except Exception as exc:  # a crash is a failed check, reported with its type
            return False, f"{type(exc).__name__}: {exc}"
        return got == want, f"got {got}, expected {want}"


def _ms(*pairs) -> SlopeMultiset:
    return SlopeMultiset.from_pairs(pairs)


AS_H2 = _ms((half, 4), (1, 7), (Fraction(3, 2), 4))
AS_NP = NewtonPolygon(((0, 0), (4, 2), (11, 9), (15, 15)))
AS_HN = NewtonPolygon(((0, 0), (2, 0), (13, 11), (15, 15)))


def _solve_abelian(h1: SlopeMultiset, g: int) -> TTable:
    return solve_T(hodge_numbers_abelian(g), abelian_profiles(h1, g), g)


def _classify(desc):
    return cl.classify(desc)[0]


def _ordinary_all_zero() -> tuple[bool, bool]:
    ok = all(not _solve_abelian(_ms((0, g), (1, g)), g).entries for g in range(1, 5))
    return ok, True


def _abelian_flags() -> cl.Flags:
    return cl.Flags(False, True, frozenset(range(7)))


def _domino_kernels() -> tuple[list, list]:
    got = []
    for p in (2, 3):
        for t in (1, 4):
            dom = TruncatedDomino(gf(p, 2), t, t + 2)
            got.append((kernel_one_minus_F(dom, 1), cokernel_one_minus_F(dom, 1)))
    return got, [(1, 0)] * len(got)


CHECKS = [
    Check("slopes.exterior_power.almost_supersingular",
          lambda: (exterior_power(_ms((0, 1), (half, 4), (1, 1)), 2), AS_H2)),
    Check("slopes.window.almost_supersingular",
          lambda: (slope_window(IsocrystalProfile(2, AS_H2), 0), _ms((half, 4)))),
    Check("slopes.m02.almost_supersingular", lambda: (m_ij(IsocrystalProfile(2, AS_H2), 0, 2), 2)),
    Check("slopes.m02.ordinary",
          lambda: (m_ij(IsocrystalProfile(2, _ms((0, 3), (1, 9), (2, 3))), 0, 2), 3)),
    Check("polygon.ordinary_h1",
          lambda: (polygon_from_slopes(_ms((0, 3), (1, 3))), NewtonPolygon(((0, 0), (3, 0), (6, 3))))),
    Check("polygon.hn_lies_below", lambda: (lies_below(AS_HN, AS_NP), True)),
    Check("polygon.hodge_newton.almost_supersingular", lambda: (hodge_newton_polygon(AS_NP), AS_HN)),
    Check("hodge_witt.h02_abelian3", lambda: (hodge_numbers_abelian(3)[(0, 2)], 3)),
    Check("hodge_witt.hw_ordinary", lambda: (hodge_witt_number(3, TTable(3), 0, 2), 3)),
    Check("hodge_witt.solve_T.supersingular3", lambda: (_solve_abelian(_ms((half, 6)), 3)[(0, 2)], 3)),
    Check("hodge_witt.solve_T.one_third", lambda: (_solve_abelian(_ms((third, 3), (2 * third, 3)), 3)[(0, 2)], 2)),
    Check("hodge_witt.solve_T.ordinary_vanishing", _ordinary_all_zero),
    Check("hodge_witt.crew.enriques", lambda: (crew_surface_T02(0, 0, 0, 0), 0)),
    Check("hodge_witt.table_abelian3",
          lambda: ([(r.m02, r.t02) for r in abelian3_table()], [(3, 0), (3, 0), (2, 1), (1, 2), (0, 3)])),
    Check("dieudonne.end_E_p",
          lambda: ([dmodule_hom(supersingular_E_p(gf(p)), supersingular_E_p(gf(p))) for p in (2, 3, 5)],
                   [GroupShape(2, 1)] * 3)),
    Check("dieudonne.superspecial_h2",
          lambda: ([superspecial_h2(g, 2) for g in (1, 2, 3)],
                   [GroupShape(1, 0), GroupShape(6, 1), GroupShape(15, 3)])),
    Check("dieudonne.superspecial_brauer.g2", lambda: (superspecial_brauer(2), GroupShape(0, 1))),
    Check("raynaud.t02.supersingular_k3", lambda: (t_ij_from_desc(supersingular_k3_desc(1), 0), 1)),
    Check("raynaud.t02.three_dominoes",
          lambda: (t_ij_from_desc(CoherentDesc([Domino(1, 0)] * 3), 0), 3)),
    Check("raynaud.one_minus_F.degree1", _domino_kernels),
    Check("classify.enriques_p2_classical",
          lambda: (str(_classify(cl.Enriques(2, "classical"))), "Z/2")),
    Check("classify.abelian_one_third",
          lambda: (_classify(cl.Abelian(3, _ms((third, 3), (2 * third, 3)), 3)),
                   cl.BrauerShape(6, 2, cl.PGroup()))),
    Check("classify.k3_supersingular",
          lambda: (str(_classify(cl.K3("supersingular", 22))), "k")),
    Check("classify.superspecial_g3", lambda: (str(_classify(cl.Superspecial(3, 2))), "k^3")),
    Check("classify.dlog.abelian", lambda: (str(cl.dlog_injective_degree2(_abelian_flags())), "decided(true)")),
    Check("classify.dlog.h2_h3", lambda: (str(cl.dlog_injective_degree2(cl.Flags(False, True, frozenset({2, 3})))),
                                           "decided(true)")),
    Check("classify.ordinary_slopes.abelian3",
          lambda: (cl.ordinary_slope_check(abelian_profiles(_ms((0, 3), (1, 3)), 3)), True)),
]


def select(name: str) -> list[Check]:
    if name == "all":
        return list(CHECKS)
    chosen = [c for c in CHECKS if c.name == name or c.name.startswith(name + ".")]
    return chosen


def run_checks(checks: list[Check], workers: int = 4) -> list[tuple[str, bool, str]]:
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda c: c.evaluate(), checks))
    return [(c.name, ok, detail) for c, (ok, detail) in zip(checks, results)]
