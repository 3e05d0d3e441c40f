"""Hodge numbers, Hodge-Witt numbers and the domino numbers T^{ij}.

The Hodge-Witt number is ``h_W^{ij} = m^{ij} + T^{ij} - 2 T^{i-1,j+1} + T^{i-2,j+2}``.
When the Hodge numbers in each degree add up to the crystalline rank
(the Mazur-Ogus situation) one has ``h_W = h`` and the T^{ij} can be solved
for from slope data alone; :func:`solve_T` does that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InconsistencyError, InvalidArgument, PreconditionError
from .slopes import IsocrystalProfile, m_ij

Index = tuple[int, int]


def _key(i: int, j: int) -> str:
    return f"{i},{j}"


def _parse_key(key: str) -> Index:
    try:
        i, j = (int(part) for part in key.split(","))
    except ValueError:
        raise InvalidArgument(f"table keys look like 'i,j', got {key!r}") from None
    return i, j


@dataclass(frozen=True)
class HodgeDiamond:
    dim: int
    entries: Mapping[Index, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 0:
            raise InvalidArgument(f"dimension must be >= 0, got {self.dim}")
        clean = {}
        for (i, j), h in dict(self.entries).items():
            if not (0 <= i <= self.dim and 0 <= j <= self.dim):
                if h:
                    raise InvalidArgument(f"h^{i}{j} = {h} lies outside the diamond of a {self.dim}-fold")
                continue
            if not isinstance(h, int) or h < 0:
                raise InvalidArgument(f"h^{i},{j} must be a nonnegative int, got {h!r}")
            if h:
                clean[(i, j)] = h
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, ij: Index) -> int:
        return self.entries.get(ij, 0)

    def degree_sum(self, n: int) -> int:
        return sum(self[(i, n - i)] for i in range(n + 1))

    def to_json(self) -> dict[str, int]:
        return {_key(i, j): h for (i, j), h in self.entries.items()}

    @classmethod
    def from_json(cls, dim: int, data: Mapping[str, int]) -> HodgeDiamond:
        return cls(dim, {_parse_key(k): v for k, v in data.items()})


@dataclass(frozen=True)
class TTable:
    """Domino numbers T^{ij}; they vanish for ``i >= dim - 1`` or ``j <= 1``."""

    dim: int
    entries: Mapping[Index, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), t in dict(self.entries).items():
            if not isinstance(t, int) or t < 0:
                raise InconsistencyError(f"T^{i},{j} must be a nonnegative int, got {t!r}")
            if t and (i < 0 or j < 0 or i >= self.dim - 1 or j <= 1):
                raise InconsistencyError(f"T^{i},{j} = {t} but it must vanish for a {self.dim}-fold")
            if t:
                clean[(i, j)] = t
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, ij: Index) -> int:
        return self.entries.get(ij, 0)

    def to_json(self) -> dict[str, int]:
        return {_key(i, j): t for (i, j), t in self.entries.items()}

    @classmethod
    def from_json(cls, dim: int, data: Mapping[str, int]) -> TTable:
        return cls(dim, {_parse_key(k): v for k, v in data.items()})


@dataclass(frozen=True)
class HWTable:
    entries: Mapping[Index, Fraction] = field(default_factory=dict)

    def __getitem__(self, ij: Index) -> Fraction:
        return self.entries.get(ij, Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {_key(i, j): str(v) for (i, j), v in sorted(self.entries.items())}


def hodge_numbers_abelian(g: int) -> HodgeDiamond:
    if g < 1:
        raise InvalidArgument(f"g must be >= 1, got {g}")
    return HodgeDiamond(g, {(i, j): math.comb(g, i) * math.comb(g, j)
                            for i in range(g + 1) for j in range(g + 1)})


def hodge_witt_number(m, t: TTable, i: int, j: int) -> Fraction:
    return Fraction(m) + t[(i, j)] - 2 * t[(i - 1, j + 1)] + t[(i - 2, j + 2)]


def _profiles_by_degree(profiles: Sequence[IsocrystalProfile]) -> dict[int, IsocrystalProfile]:
    out = {}
    for prof in profiles:
        if prof.degree in out:
            raise InvalidArgument(f"two profiles given for degree {prof.degree}")
        out[prof.degree] = prof
    return out


def _m(by_degree: Mapping[int, IsocrystalProfile], i: int, j: int) -> Fraction:
    prof = by_degree.get(i + j)
    if prof is None or i < 0 or j < 0:
        return Fraction(0)
    return m_ij(prof, i, j)


def hodge_witt_table(profiles: Sequence[IsocrystalProfile], t: TTable) -> HWTable:
    by_degree = _profiles_by_degree(profiles)
    entries = {}
    for n, prof in by_degree.items():
        for i in range(n + 1):
            entries[(i, n - i)] = hodge_witt_number(m_ij(prof, i, n - i), t, i, n - i)
    return HWTable(entries)


def crew_check(hW: HWTable, h: HodgeDiamond, i: int) -> bool:
    """Crew's formula for row i: alternating sums over j of h_W and h agree."""
    js = {j for (a, j) in hW.entries if a == i} | {j for (a, j) in h.entries if a == i}
    lhs = sum((hW[(i, j)] * (-1) ** j for j in js), Fraction(0))
    rhs = sum(h[(i, j)] * (-1) ** j for j in js)
    return lhs == rhs


def ekedahl_check(hW: HWTable, h: HodgeDiamond) -> bool:
    keys = set(hW.entries) | set(h.entries)
    return all(hW[k] <= h[k] for k in keys)


def is_mazur_ogus(h: HodgeDiamond, profiles: Sequence[IsocrystalProfile]) -> bool:
    by_degree = _profiles_by_degree(profiles)
    return all(n in by_degree and h.degree_sum(n) == by_degree[n].rank
               for n in range(2 * h.dim + 1))


def solve_T(h: HodgeDiamond, profiles: Sequence[IsocrystalProfile], dim: int) -> TTable:
    """Recover every T^{ij} from Hodge numbers and slopes, assuming ``h_W = h``.

    Works by increasing i: ``T^{ij} = h^{ij} - m^{ij} + 2 T^{i-1,j+1} - T^{i-2,j+2}``.
    All equations, including those outside the Hodge square where both
    sides must vanish, are re-checked afterwards.
    """
    if h.dim != dim:
        raise InvalidArgument(f"Hodge diamond has dimension {h.dim}, expected {dim}")
    by_degree = _profiles_by_degree(profiles)
    for n in range(2 * dim + 1):
        if n not in by_degree:
            raise PreconditionError(f"missing slope profile for degree {n}")
        if h.degree_sum(n) != by_degree[n].rank:
            raise PreconditionError(
                f"degree {n}: Hodge numbers sum to {h.degree_sum(n)} but the crystal has rank "
                f"{by_degree[n].rank}; h_W = h is not guaranteed")

    raw: dict[Index, Fraction] = {}

    def T(i: int, j: int) -> Fraction:
        return raw.get((i, j), Fraction(0))

    for i in range(dim + 1):
        for j in range(dim + 1):
            raw[(i, j)] = h[(i, j)] - _m(by_degree, i, j) + 2 * T(i - 1, j + 1) - T(i - 2, j + 2)

    for (i, j), value in raw.items():
        if value.denominator != 1:
            raise InconsistencyError(f"T^{i},{j} = {value} is not an integer")
        if value < 0:
            raise InconsistencyError(f"T^{i},{j} = {value} is negative")
    # off-square equations: h = 0 there, so m must be balanced by the T terms
    for n in range(2 * dim + 1):
        for i in range(n + 1):
            j = n - i
            if i <= dim and j <= dim:
                continue
            if _m(by_degree, i, j) + T(i, j) - 2 * T(i - 1, j + 1) + T(i - 2, j + 2) != 0:
                raise InconsistencyError(f"equation at ({i},{j}) fails outside the Hodge square")
    return TTable(dim, {ij: int(v) for ij, v in raw.items()})


def crew_surface_T02(h01: int, h02: int, m01, m02) -> Fraction:
    value = Fraction(h02 - h01) - (Fraction(m02) - Fraction(m01))
    if value.denominator != 1 or value < 0:
        raise InconsistencyError(f"T^02 = {value} must be a nonnegative integer")
    return value
