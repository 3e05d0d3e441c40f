"""Assemble the p-primary Brauer group from numerical invariants.

``Br(X)[p^inf] = (Q_p/Z_p)^{r - rho} + H`` where H is an extension of a
finite p-group J by the k-points of a connected unipotent group U of
dimension T^{02}. Each descriptor kind has its own set of rules deciding
r, T^{02} and J; every rule that fires is recorded with its citation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from .citations import cite
from .dieudonne import superspecial_brauer, superspecial_h2
from .errors import ClassificationError, InconsistencyError, InternalConsistencyError, InvalidArgument
from .finite_field import is_prime, prime_factors
from .hodge_witt import HodgeDiamond, crew_surface_T02, hodge_numbers_abelian, solve_T
from .polygon import polygon_from_slopes
from .raynaud import supersingular_k3_desc, t_ij_from_desc
from .slopes import IsocrystalProfile, SlopeMultiset, exterior_power, m_ij, slope_one_multiplicity

DIVISIBLE = "divisible_rank"
UNIPOTENT = "unipotent_dim"
FINITE = "finite_part"


# -- shape ---------------------------------------------------------------

@dataclass(frozen=True)
class PGroup:
    """Finite abelian p-group by invariant factors (each a prime power > 1)."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(sorted(int(n) for n in self.invariant_factors))
        primes = set()
        for n in factors:
            ps = prime_factors(n) if n > 1 else []
            if len(ps) != 1:
                raise InvalidArgument(f"invariant factor {n} is not a prime power > 1")
            primes.add(ps[0])
        if len(primes) > 1:
            raise InvalidArgument(f"invariant factors {factors} mix several primes")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return max(self.invariant_factors, default=1)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def dual(self) -> PGroup:
        # a finite abelian group is non-canonically isomorphic to its Pontryagin dual
        return self

    def to_json(self) -> dict:
        return {"type": "exact", "invariant_factors": list(self.invariant_factors), "text": str(self)}

    def __str__(self) -> str:
        return " ⊕ ".join(f"Z/{n}" for n in self.invariant_factors) or "0"


@dataclass(frozen=True)
class UnknownBounded:
    """Finite p-group J not determined by the input.

    ``exponent_log`` bounds the exponent of the whole finite-exponent part
    (J and U(k) together) as ``p^exponent_log``; None when no bound is known.
    """

    exponent_log: Optional[int] = None

    def is_trivial(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"type": "unknown", "exponent_log": self.exponent_log, "text": str(self)}

    def __str__(self) -> str:
        return "J" if self.exponent_log is None else f"J (exponent of U(k) and J together divides p^{self.exponent_log})"


FinitePart = Union[PGroup, UnknownBounded]


@dataclass(frozen=True)
class BrauerShape:
    divisible_rank: int
    unipotent_dim: Optional[int]
    finite_part: FinitePart
    unipotent_bound: Optional[int] = None
    unipotent_vector: bool = False

    def unipotent_text(self) -> str:
        if self.unipotent_dim is None:
            return f"U(k), dim U <= {self.unipotent_bound}" if self.unipotent_bound is not None else "U(k)"
        d = self.unipotent_dim
        if d == 0:
            return ""
        if d == 1 or self.unipotent_vector:
            return "k" if d == 1 else f"k^{d}"
        return f"U(k), dim U = {d}"

    def __str__(self) -> str:
        parts = []
        if self.divisible_rank:
            parts.append("Q_p/Z_p" if self.divisible_rank == 1 else f"(Q_p/Z_p)^{self.divisible_rank}")
        u = self.unipotent_text()
        j = self.finite_part
        j_text = "" if j.is_trivial() else str(j)
        if u and j_text:
            parts.append(f"an extension of {j_text} by {u}")
        elif u or j_text:
            parts.append(u or j_text)
        return " ⊕ ".join(parts) or "0"

    def to_json(self) -> dict:
        return {
            "divisible_rank": self.divisible_rank,
            "unipotent_dim": self.unipotent_dim,
            "unipotent_bound": self.unipotent_bound,
            "unipotent_vector": self.unipotent_vector,
            "finite_part": self.finite_part.to_json(),
            "text": str(self),
        }


@dataclass(frozen=True)
class Rule:
    name: str
    citation: str
    conclusion: str
    justifies: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"name": self.name, "citation": self.citation, "conclusion": self.conclusion}


@dataclass
class Report:
    shape: BrauerShape
    rules: list[Rule] = field(default_factory=list)

    def justified_fields(self) -> set[str]:
        return {f for r in self.rules for f in r.justifies}

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "rules": [r.to_json() for r in self.rules]}

    def text(self) -> str:
        lines = [f"Br[p^∞] = {self.shape}"]
        lines += [f"  [{r.citation}] {r.name}: {r.conclusion}" for r in self.rules]
        return "\n".join(lines)


# -- flags and descriptors -----------------------------------------------

@dataclass(frozen=True)
class Flags:
    ordinary: bool = False
    frolicher_degenerates: bool = False
    torsion_free: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "torsion_free", frozenset(self.torsion_free))


@dataclass(frozen=True)
class Decision:
    """Outcome of a one-directional criterion: True, or not applicable."""

    value: Optional[bool]

    @property
    def decided(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return "criterion_inapplicable" if self.value is None else f"decided({str(self.value).lower()})"


def dlog_injective_degree2(flags: Flags) -> Decision:
    tf = flags.torsion_free
    if flags.frolicher_degenerates and ({1, 2} <= tf or {2, 3} <= tf):
        return Decision(True)
    return Decision(None)


def ordinary_slope_check(profiles) -> bool:
    return all(prof.slopes.is_integral() for prof in profiles)


@dataclass(frozen=True)
class Abelian:
    g: int
    h1_slopes: SlopeMultiset
    rho: int

    def __post_init__(self):
        if self.g < 1:
            raise InvalidArgument(f"g must be >= 1, got {self.g}")
        ms = self.h1_slopes
        if ms.rank != 2 * self.g:
            raise InvalidArgument(f"H^1 slopes have total multiplicity {ms.rank}, expected 2g = {2 * self.g}")
        if any(s < 0 or s > 1 for s in ms.slopes()):
            raise InvalidArgument("H^1 slopes must lie in [0, 1]")
        if not ms.is_symmetric(1):
            raise InvalidArgument("H^1 slopes must be symmetric under s -> 1 - s")
        polygon_from_slopes(ms)


@dataclass(frozen=True)
class K3:
    height: Union[int, str]
    rho: Optional[int] = None
    artin_invariant: Optional[int] = None

    def __post_init__(self):
        if self.height == "supersingular":
            if self.artin_invariant is not None and not 1 <= self.artin_invariant <= 10:
                raise InvalidArgument(f"Artin invariant must be in 1..10, got {self.artin_invariant}")
        elif isinstance(self.height, int) and not isinstance(self.height, bool):
            if not 1 <= self.height <= 10:
                raise InvalidArgument(f"K3 height must be in 1..10 or 'supersingular', got {self.height}")
            if self.rho is None:
                raise InvalidArgument("a K3 of finite height needs its Picard number")
            if self.artin_invariant is not None:
                raise InvalidArgument("an Artin invariant only makes sense for supersingular K3 surfaces")
        else:
            raise InvalidArgument(f"K3 height must be an int or 'supersingular', got {self.height!r}")

    @property
    def supersingular(self) -> bool:
        return self.height == "supersingular"


ENRIQUES_SUBTYPES = ("classical", "singular", "supersingular")


@dataclass(frozen=True)
class Enriques:
    p: int
    subtype: str = "classical"

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidArgument(f"p = {self.p} is not prime")
        if self.subtype not in ENRIQUES_SUBTYPES:
            raise InvalidArgument(f"Enriques subtype must be one of {ENRIQUES_SUBTYPES}, got {self.subtype!r}")
        if self.subtype != "classical" and self.p != 2:
            raise InvalidArgument(f"{self.subtype} Enriques surfaces exist only for p = 2")


@dataclass(frozen=True)
class Surface:
    b2: int
    rho: int
    h01: int
    h02: int
    np_h2: SlopeMultiset
    ns_torsion: PGroup = PGroup()
    flags: Flags = Flags()
    np_h1: SlopeMultiset = SlopeMultiset()

    def __post_init__(self):
        if self.np_h2.rank != self.b2:
            raise InvalidArgument(f"H^2 slopes have total multiplicity {self.np_h2.rank}, but b2 = {self.b2}")
        for name in ("rho", "h01", "h02"):
            if getattr(self, name) < 0:
                raise InvalidArgument(f"{name} must be >= 0")
        IsocrystalProfile(2, self.np_h2)
        IsocrystalProfile(1, self.np_h1)


@dataclass(frozen=True)
class Superspecial:
    g: int
    p: int

    def __post_init__(self):
        if self.g < 1:
            raise InvalidArgument(f"g must be >= 1, got {self.g}")
        if not is_prime(self.p):
            raise InvalidArgument(f"p = {self.p} is not prime")


@dataclass(frozen=True)
class Generic:
    dim: int
    profiles: Mapping[int, SlopeMultiset]
    hodge: HodgeDiamond
    rho: int
    flags: Flags = Flags()
    j_exponent_log: Optional[int] = None

    def __post_init__(self):
        if self.hodge.dim != self.dim:
            raise InvalidArgument(f"Hodge diamond has dimension {self.hodge.dim}, expected {self.dim}")
        if 2 not in self.profiles:
            raise InvalidArgument("the degree-2 slope profile is required")
        for n, ms in self.profiles.items():
            IsocrystalProfile(n, ms)

    def profile_list(self) -> list[IsocrystalProfile]:
        return [IsocrystalProfile(n, ms) for n, ms in sorted(self.profiles.items())]


VarietyDescriptor = Union[Abelian, K3, Enriques, Surface, Superspecial, Generic]


# -- rules ---------------------------------------------------------------

def _divisible(r: int, rho: int, rules: list[Rule], extra: str = "") -> int:
    if rho > r:
        raise ClassificationError(f"Picard number rho = {rho} exceeds r = {r}, the slope-1 multiplicity of H^2")
    rules.append(Rule("divisible part", cite("split_sequence"),
                      f"r = {r}, rho = {rho}, corank r - rho = {r - rho}{extra}", (DIVISIBLE,)))
    return r - rho


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InternalConsistencyError(f"{what} = {value} is not an integer")
    return int(value)


def _crew(h01, h02, m01, m02, rules: list[Rule]) -> int:
    try:
        t02 = crew_surface_T02(h01, h02, m01, m02)
    except InconsistencyError as exc:
        raise ClassificationError(f"Crew's formula: {exc}") from None
    rules.append(Rule("Crew's formula for surfaces", cite("surface_crew"),
                      f"T^02 = ({h02} - {h01}) - ({m02} - {m01}) = {t02}", (UNIPOTENT,)))
    return int(t02)


def classify_abelian(d: Abelian) -> Report:
    rules: list[Rule] = []
    g = d.g
    profiles = [IsocrystalProfile(n, exterior_power(d.h1_slopes, n) if n else SlopeMultiset.from_pairs([(0, 1)]))
                for n in range(2 * g + 1)]
    h2 = profiles[2]
    r = slope_one_multiplicity(h2)
    div = _divisible(r, d.rho, rules, f" (H^2 slopes {h2.slopes}, from the second exterior power of H^1)")
    t = solve_T(hodge_numbers_abelian(g), profiles, g)
    t02 = t[(0, 2)]
    m02 = _as_int(m_ij(h2, 0, 2), "m^02")
    h02 = g * (g - 1) // 2
    if t02 != h02 - m02:
        raise InternalConsistencyError(f"solve_T gives T^02 = {t02} but h^02 - m^02 = {h02 - m02}")
    rules.append(Rule("unipotent dimension", cite("abelian"),
                      f"T^02 = h^02 - m^02 = {h02} - {m02} = {t02}", (UNIPOTENT,)))
    rules.append(Rule("finite part", cite("abelian"),
                      f"J = 0 since H^3_cris is torsion-free ({cite('h3_free')})", (FINITE,)))
    return Report(BrauerShape(div, t02, PGroup(), unipotent_vector=t02 <= 1), rules)


def k3_profile(height: int) -> SlopeMultiset:
    h = height
    return SlopeMultiset.from_pairs([(1 - Fraction(1, h), h), (1, 22 - 2 * h), (1 + Fraction(1, h), h)])


def classify_k3(d: K3) -> Report:
    rules: list[Rule] = []
    if d.supersingular:
        ms = SlopeMultiset.from_pairs([(1, 22)])
        rho = 22 if d.rho is None else d.rho
        if d.rho is None:
            rules.append(Rule("Picard number", cite("k3_tate"), "rho = b2 = 22", (DIVISIBLE,)))
    else:
        ms = k3_profile(d.height)
        rho = d.rho
    prof = IsocrystalProfile(2, ms)
    r = slope_one_multiplicity(prof)
    extra = "" if d.supersingular else f" (b2 - 2h - rho with h = {d.height}, {cite('height_formula')})"
    div = _divisible(r, rho, rules, extra)
    t02 = _crew(0, 1, 0, m_ij(prof, 0, 2), rules)
    if d.supersingular and d.artin_invariant is not None:
        dominoes = t_ij_from_desc(supersingular_k3_desc(d.artin_invariant), 0)
        if dominoes != t02:
            raise InternalConsistencyError(f"domino count {dominoes} disagrees with T^02 = {t02}")
        rules.append(Rule("domino count", cite("unipotent_part"),
                          f"one domino U_{d.artin_invariant} in H^2: T^02 = {dominoes}", (UNIPOTENT,)))
    rules.append(Rule("finite part", cite("surface_dual"),
                      "J is dual to NS(X)[p^∞] = 0 (NS of a K3 is torsion-free)", (FINITE,)))
    return Report(BrauerShape(div, t02, PGroup(), unipotent_vector=True), rules)


def classify_enriques(d: Enriques) -> Report:
    rules: list[Rule] = []
    nonclassical = d.subtype != "classical"
    # rho = 10 = b2, all of H^2 has slope 1; b1 = 0
    prof = IsocrystalProfile(2, SlopeMultiset.from_pairs([(1, 10)]))
    div = _divisible(slope_one_multiplicity(prof), 10, rules)
    h = 1 if nonclassical else 0
    t02 = _crew(h, h, 0, m_ij(prof, 0, 2), rules)
    if d.p == 2 and not nonclassical:
        j, key = PGroup((2,)), "enriques_classical"
        why = "NS(X)[2^∞] = Z/2, so J = Z/2"
    else:
        j = PGroup()
        key = "enriques_odd" if d.p != 2 else "enriques_nonclassical"
        why = "NS(X)[p^∞] = 0, so J = 0"
    rules.append(Rule("finite part", cite("surface_dual"), f"J is dual to NS(X)[p^∞]; {why}", (FINITE,)))
    shape = BrauerShape(div, t02, j)
    rules.append(Rule("Enriques surfaces", cite(key), f"Br[p^∞] = {shape}", ()))
    return Report(shape, rules)


def classify_surface(d: Surface) -> Report:
    rules: list[Rule] = []
    h2 = IsocrystalProfile(2, d.np_h2)
    h1 = IsocrystalProfile(1, d.np_h1)
    if d.flags.ordinary and not ordinary_slope_check([h1, h2]):
        raise ClassificationError("ordinary flag set but some crystalline slope is not an integer")
    div = _divisible(slope_one_multiplicity(h2), d.rho, rules)
    t02 = _crew(d.h01, d.h02, m_ij(h1, 0, 1), m_ij(h2, 0, 2), rules)
    if d.flags.ordinary:
        if t02:
            raise ClassificationError(f"ordinary surface but Crew's formula gives T^02 = {t02}")
        rules.append(Rule("ordinary", cite("ordinary_T"), "all T^ij vanish", (UNIPOTENT,)))
    j = d.ns_torsion.dual()
    rules.append(Rule("finite part", cite("surface_dual"),
                      f"J is the Pontryagin dual of NS(X)[p^∞] = {d.ns_torsion}", (FINITE,)))
    return Report(BrauerShape(div, t02, j), rules)


def classify_superspecial(d: Superspecial) -> Report:
    rules: list[Rule] = []
    h2 = superspecial_h2(d.g, d.p)
    br = superspecial_brauer(d.g, d.p)
    rules.append(Rule("flat cohomology", cite("superspecial"),
                      f"H^2_fppf(A, mu_p) = {h2} by induction on the product formula ({cite('hom_lemma')})", ()))
    rules.append(Rule("divisible part", cite("split_sequence"),
                      "supersingular: every H^2 slope is 1 and rho = r, corank 0", (DIVISIBLE,)))
    rules.append(Rule("Brauer group", cite("superspecial"),
                      f"removing Pic(A)/p = (Z/p)^{d.g * (2 * d.g - 1)} leaves {br}", (UNIPOTENT, FINITE)))
    if br.etale_rank:
        raise InternalConsistencyError(f"superspecial Brauer group has etale part {br}")
    return Report(BrauerShape(0, br.field_dim, PGroup(), unipotent_vector=True), rules)


def classify_generic(d: Generic) -> Report:
    rules: list[Rule] = []
    profiles = d.profile_list()
    h2 = IsocrystalProfile(2, d.profiles[2])
    flags = d.flags
    div = _divisible(slope_one_multiplicity(h2), d.rho, rules)
    m02 = m_ij(h2, 0, 2)
    h02 = d.hodge[(0, 2)]
    t02: Optional[int] = None
    bound: Optional[int] = None
    if flags.ordinary:
        if not ordinary_slope_check(profiles):
            raise ClassificationError("ordinary flag set but some crystalline slope is not an integer")
        rules.append(Rule("integral slopes", cite("ordinary_slopes"), "all slopes are integers", ()))
        t02 = 0
        rules.append(Rule("ordinary", cite("ordinary_T"), "all T^ij vanish", (UNIPOTENT,)))
    elif flags.frolicher_degenerates and {2, 3} <= flags.torsion_free:
        value = Fraction(h02) - m02
        if value.denominator != 1 or value < 0:
            raise ClassificationError(f"T^02 = h^02 - m^02 = {value} must be a nonnegative integer")
        t02 = int(value)
        rules.append(Rule("unipotent dimension", cite("t_from_hodge"),
                          f"T^02 = h^02 - m^02 = {h02} - {m02} = {t02}", (UNIPOTENT,)))
    else:
        value = Fraction(h02) - m02
        if value < 0:
            raise ClassificationError(f"h^02 = {h02} is smaller than m^02 = {m02}")
        bound = math.floor(value)
        rules.append(Rule("unipotent bound", cite("ekedahl"),
                          f"m^02 + T^02 = h_W^02 <= h^02, so T^02 <= {bound}", (UNIPOTENT,)))
    if 3 in flags.torsion_free:
        j: FinitePart = PGroup()
        key = "ordinary_h3_free" if flags.ordinary else "h3_free"
        rules.append(Rule("finite part", cite(key), "H^3_cris is torsion-free, so J = 0", (FINITE,)))
    else:
        u_exp = t02 if t02 is not None else bound
        exp = None if d.j_exponent_log is None or u_exp is None else u_exp + d.j_exponent_log
        j = UnknownBounded(exp)
        note = f"; U(k) is killed by p^{u_exp} ({cite('exponent')})" if u_exp is not None else ""
        rules.append(Rule("finite part", cite("unipotent_part" if not flags.ordinary else "ordinary"),
                          f"J is a finite p-group not determined by the input{note}", (FINITE,)))
    dlog = dlog_injective_degree2(flags)
    if dlog.decided:
        rules.append(Rule("dlog in degree 2", cite("dlog"), f"injective for all n: {dlog}", ()))
    return Report(BrauerShape(div, t02, j, unipotent_bound=bound), rules)


_DISPATCH = {
    Abelian: classify_abelian,
    K3: classify_k3,
    Enriques: classify_enriques,
    Surface: classify_surface,
    Superspecial: classify_superspecial,
    Generic: classify_generic,
}


def classify(desc: VarietyDescriptor) -> tuple[BrauerShape, Report]:
    try:
        handler = _DISPATCH[type(desc)]
    except KeyError:
        raise InvalidArgument(f"not a variety descriptor: {desc!r}") from None
    report = handler(desc)
    return report.shape, report
