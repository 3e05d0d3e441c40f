"""Slope multisets of F-isocrystals and the Hodge-Newton numbers m^{ij}.

Everything here is exact: slopes are :class:`fractions.Fraction` values and
multiplicities are Python ints.

>>> h1 = SlopeMultiset.from_slopes([0, "1/2", "1/2", "1/2", "1/2", 1])
>>> h2 = exterior_power(h1, 2)
>>> h2
SlopeMultiset({1/2: 4, 1: 7, 3/2: 4})
>>> m_ij(IsocrystalProfile(2, h2), 0, 2)
Fraction(2, 1)
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Union

from .errors import InvalidArgument

SlopeLike = Union[int, str, Fraction]


def as_fraction(value: SlopeLike) -> Fraction:
    if isinstance(value, float):
        raise InvalidArgument("slopes must be exact; got a float")
    return Fraction(value)


@dataclass(frozen=True)
class SlopeMultiset:
    """A finite multiset of nonnegative rational slopes.

    Stored as ``((slope, multiplicity), ...)`` with strictly increasing
    slopes, so two multisets are equal iff their entries are.
    """

    entries: tuple[tuple[Fraction, int], ...] = ()

    def __post_init__(self):
        merged: Counter = Counter()
        for slope, mult in self.entries:
            slope = as_fraction(slope)
            if slope < 0:
                raise InvalidArgument(f"negative slope {slope}")
            if not isinstance(mult, int) or mult < 0:
                raise InvalidArgument(f"multiplicity must be a nonnegative int, got {mult!r}")
            merged[slope] += mult
        normal = tuple(sorted((s, m) for s, m in merged.items() if m > 0))
        object.__setattr__(self, "entries", normal)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[SlopeLike, int]]) -> SlopeMultiset:
        return cls(tuple((as_fraction(s), m) for s, m in pairs))

    @classmethod
    def from_slopes(cls, slopes: Iterable[SlopeLike]) -> SlopeMultiset:
        return cls(tuple((as_fraction(s), 1) for s in slopes))

    @classmethod
    def from_json(cls, triples) -> SlopeMultiset:
        pairs = []
        for item in triples:
            if len(item) != 3 or not all(isinstance(v, int) and not isinstance(v, bool) for v in item):
                raise InvalidArgument(f"slope entries are [num, den, mult] integer triples, got {item!r}")
            num, den, mult = item
            if den <= 0:
                raise InvalidArgument(f"slope denominator must be positive, got {den}")
            pairs.append((Fraction(num, den), mult))
        return cls(tuple(pairs))

    def to_json(self) -> list[list[int]]:
        return [[s.numerator, s.denominator, m] for s, m in self.entries]

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, slope: SlopeLike) -> int:
        slope = as_fraction(slope)
        for s, m in self.entries:
            if s == slope:
                return m
        return 0

    def slopes(self) -> list[Fraction]:
        """The slopes listed with repetition, ascending."""
        return [s for s, m in self.entries for _ in range(m)]

    def distinct(self) -> list[Fraction]:
        return [s for s, _ in self.entries]

    def total(self) -> Fraction:
        return sum((s * m for s, m in self.entries), Fraction(0))

    def shifted(self, delta: SlopeLike) -> SlopeMultiset:
        delta = as_fraction(delta)
        return SlopeMultiset(tuple((s + delta, m) for s, m in self.entries))

    def restricted(self, lo: SlopeLike, hi: SlopeLike) -> SlopeMultiset:
        """Slopes in the half-open interval [lo, hi)."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        return SlopeMultiset(tuple((s, m) for s, m in self.entries if lo <= s < hi))

    def is_integral(self) -> bool:
        return all(s.denominator == 1 for s, _ in self.entries)

    def is_symmetric(self, weight: int) -> bool:
        """True if slope s and weight - s occur with equal multiplicity."""
        return all(self.multiplicity(weight - s) == m for s, m in self.entries)

    def __add__(self, other: SlopeMultiset) -> SlopeMultiset:
        return SlopeMultiset(self.entries + other.entries)

    def __iter__(self) -> Iterator[tuple[Fraction, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}: {m}" for s, m in self.entries)
        return f"SlopeMultiset({{{body}}})"

    def __str__(self) -> str:
        if not self.entries:
            return "{}"
        return "{" + ", ".join(f"{s}x{m}" for s, m in self.entries) + "}"


@dataclass(frozen=True)
class IsocrystalProfile:
    """Slope data of H^n_cris(X/W) (x) K for a fixed cohomological degree n."""

    degree: int
    slopes: SlopeMultiset

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 0:
            raise InvalidArgument(f"degree must be a nonnegative int, got {self.degree!r}")
        if not isinstance(self.slopes, SlopeMultiset):
            object.__setattr__(self, "slopes", SlopeMultiset.from_pairs(self.slopes))
        for s, _ in self.slopes:
            if s > self.degree:
                raise InvalidArgument(f"slope {s} exceeds the degree {self.degree}")

    @property
    def rank(self) -> int:
        return self.slopes.rank


def exterior_power(ms: SlopeMultiset, n: int) -> SlopeMultiset:
    """Slopes of the n-th exterior power: sums over all n-element sub-multisets."""
    if not isinstance(n, int) or n < 0:
        raise InvalidArgument(f"exterior power index must be a nonnegative int, got {n!r}")
    if n > ms.rank:
        raise InvalidArgument(f"cannot take exterior power {n} of a rank {ms.rank} multiset")
    out: Counter = Counter()
    slopes = [s for s, _ in ms.entries]
    mults = [m for _, m in ms.entries]
    # choose k_i copies of the i-th distinct slope, sum k_i = n
    for ks in product(*(range(min(m, n) + 1) for m in mults)):
        if sum(ks) != n:
            continue
        count = math.prod(math.comb(m, k) for m, k in zip(mults, ks))
        out[sum((s * k for s, k in zip(slopes, ks)), Fraction(0))] += count
    return SlopeMultiset(tuple(out.items()))


def slope_window(profile: IsocrystalProfile, i: int) -> SlopeMultiset:
    """Slopes of H^{n-i}(X, W Omega^i) (x) K: the part of the profile in [i, i+1), shifted by -i."""
    if i < 0:
        raise InvalidArgument(f"window index must be >= 0, got {i}")
    return profile.slopes.restricted(i, i + 1).shifted(-i)


def _unit_interval(ms: SlopeMultiset):
    return [(s, m) for s, m in ms.entries if 0 <= s < 1]


def m_ij(profile: IsocrystalProfile, i: int, j: int) -> Fraction:
    """Hodge-Newton number m^{ij} of a degree i+j profile."""
    if i < 0 or j < 0:
        raise InvalidArgument(f"(i, j) must be nonnegative, got ({i}, {j})")
    if profile.degree != i + j:
        raise InvalidArgument(f"profile has degree {profile.degree}, expected i + j = {i + j}")
    value = sum(((1 - s) * m for s, m in _unit_interval(slope_window(profile, i))), Fraction(0))
    if i > 0:
        value += sum((s * m for s, m in _unit_interval(slope_window(profile, i - 1))), Fraction(0))
    return value


def hodge_newton_numbers(profile: IsocrystalProfile) -> list[Fraction]:
    """``[m^{0,n}, m^{1,n-1}, ..., m^{n,0}]`` for a profile of degree n."""
    n = profile.degree
    return [m_ij(profile, i, n - i) for i in range(n + 1)]


def slope_one_multiplicity(profile: IsocrystalProfile) -> int:
    return profile.slopes.multiplicity(1)


def symmetric_admissible_h1(g: int) -> list[SlopeMultiset]:
    """All symmetric slope multisets of rank 2g in [0, 1] with lattice breakpoints.

    These are the possible H^1 slope data of a g-dimensional abelian variety.
    A slope a/b in lowest terms needs a multiplicity divisible by b.
    """
    if g < 1:
        raise InvalidArgument(f"g must be >= 1, got {g}")
    half = sorted({Fraction(a, b) for b in range(1, 2 * g + 1) for a in range(0, b + 1)
                   if 2 * a <= b})
    found: list[SlopeMultiset] = []

    def extend(idx: int, remaining: int, acc: list[tuple[Fraction, int]]):
        if remaining == 0:
            found.append(SlopeMultiset(tuple(acc)))
            return
        if idx == len(half):
            return
        s = half[idx]
        b = s.denominator
        # slope 1/2 is its own partner; others come paired with 1 - s
        weight = 1 if s == Fraction(1, 2) else 2
        k = 0
        while weight * k * b <= remaining:
            mult = k * b
            extra = [(s, mult)] + ([(1 - s, mult)] if weight == 2 else []) if mult else []
            extend(idx + 1, remaining - weight * mult, acc + extra)
            k += 1

    extend(0, 2 * g, [])
    # lexicographic on the sorted slope list puts the ordinary case first
    return sorted(found, key=lambda ms: ms.slopes())
