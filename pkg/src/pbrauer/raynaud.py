"""Coherent modules over the Raynaud ring, symbolically, plus truncated dominoes.

A coherent module is described by a list of pieces: finite-length
torsion, free pieces with slopes, and dominoes ``U_t[j]``. The domino
count in a given shift is what the Hodge-Witt calculus calls T.

The concrete model of ``U_t`` keeps the first N terms of each graded part:
degree 0 has basis ``V^0 .. V^{N-1}`` and degree 1 has ``dV^0 .. dV^{N-1}``.
F is zero on degree 0, shifts ``dV^n -> dV^{n-1}`` on degree 1 and kills
``d``. 1 - F is studied on the inverse system of truncations
``Q_{N+1} -> Q_N``, which is what the full module is a limit of.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import InternalConsistencyError, InvalidArgument
from .finite_field import FiniteField
from .semilinear import AdditiveSystem
from .slopes import SlopeMultiset


@dataclass(frozen=True)
class FiniteTorsion:
    degree: int
    length: int

    def __post_init__(self):
        if self.length <= 0:
            raise InvalidArgument(f"torsion length must be positive, got {self.length}")

    def to_json(self) -> dict:
        return {"type": "torsion", "degree": self.degree, "length": self.length}


@dataclass(frozen=True)
class FreePiece:
    degree: int
    rank: int
    slopes: SlopeMultiset

    def __post_init__(self):
        if self.rank <= 0:
            raise InvalidArgument(f"free rank must be positive, got {self.rank}")
        if self.slopes.rank != self.rank:
            raise InvalidArgument(f"slopes have total multiplicity {self.slopes.rank}, rank is {self.rank}")

    def to_json(self) -> dict:
        return {"type": "free", "degree": self.degree, "rank": self.rank, "slopes": self.slopes.to_json()}


@dataclass(frozen=True)
class Domino:
    """``U_t[shift]``; a domino in shift ``-i`` sits between H(W Omega^i) and H(W Omega^{i+1})."""

    t: int
    shift: int = 0

    def __post_init__(self):
        if self.t < 0:
            raise InvalidArgument(f"domino parameter t must be >= 0, got {self.t}")

    def to_json(self) -> dict:
        return {"type": "domino", "t": self.t, "shift": self.shift}


Piece = Union[FiniteTorsion, FreePiece, Domino]

_PIECE_KEYS = {
    "torsion": {"type", "degree", "length"},
    "free": {"type", "degree", "rank", "slopes"},
    "domino": {"type", "t", "shift"},
}


@dataclass(frozen=True)
class CoherentDesc:
    pieces: tuple[Piece, ...] = ()

    def __init__(self, pieces: Iterable[Piece] = ()):
        object.__setattr__(self, "pieces", tuple(pieces))

    def __add__(self, other: CoherentDesc) -> CoherentDesc:
        return CoherentDesc(self.pieces + other.pieces)

    def dominoes(self) -> list[Domino]:
        return [p for p in self.pieces if isinstance(p, Domino)]

    def to_json(self) -> list[dict]:
        return [p.to_json() for p in self.pieces]

    @classmethod
    def from_json(cls, data) -> CoherentDesc:
        if not isinstance(data, list):
            raise InvalidArgument("a coherent descriptor is a JSON list of pieces")
        pieces: list[Piece] = []
        for item in data:
            kind = item.get("type") if isinstance(item, dict) else None
            if kind not in _PIECE_KEYS:
                raise InvalidArgument(f"unknown piece {item!r}")
            extra = set(item) - _PIECE_KEYS[kind]
            if extra:
                raise InvalidArgument(f"unknown keys for {kind} piece: {sorted(extra)}")
            try:
                if kind == "torsion":
                    pieces.append(FiniteTorsion(item["degree"], item["length"]))
                elif kind == "free":
                    pieces.append(FreePiece(item["degree"], item["rank"], SlopeMultiset.from_json(item["slopes"])))
                else:
                    pieces.append(Domino(item["t"], item.get("shift", 0)))
            except KeyError as exc:
                raise InvalidArgument(f"{kind} piece is missing {exc}") from None
        return cls(pieces)


def t_ij_from_desc(desc: CoherentDesc, i: int) -> int:
    """Number of dominoes ``U_t[-i]`` for any t."""
    return sum(1 for d in desc.dominoes() if d.shift == -i)


def supersingular_k3_desc(artin_invariant: int) -> CoherentDesc:
    """H^2 of a supersingular K3: one domino between H^2(WO) and H^2(W Omega^1)."""
    return CoherentDesc([Domino(artin_invariant, 0)])


@dataclass(frozen=True)
class TruncatedDomino:
    field: FiniteField
    t: int
    N: int

    def __post_init__(self):
        if self.t < 0:
            raise InvalidArgument(f"t must be >= 0, got {self.t}")
        if self.N < self.t + 2:
            raise InvalidArgument(f"truncation N = {self.N} is too small for t = {self.t}; need N >= t + 2")

    def differential(self, n: int) -> int | None:
        """Index m with ``d(V^n) = dV^m``, or None when the image is zero."""
        if not 0 <= n < self.N:
            raise InvalidArgument(f"V^{n} is outside the truncation")
        m = n - self.t
        return m if m >= 0 else None

    def frobenius(self, part: int, n: int) -> int | None:
        """Index of F(basis_n) in the given part, None for zero."""
        if part == 0:
            return None
        if part == 1:
            return n - 1 if n >= 1 else None
        raise InvalidArgument(f"part must be 0 or 1, got {part}")


def _one_minus_F_system(dom: TruncatedDomino, part: int, level: int, zero_F: bool) -> AdditiveSystem:
    """``1 - F : Q_{level+1} -> Q_level`` on one graded part.

    Coefficient a_n of the n-th basis vector; F is sigma-semilinear, so the
    image coordinate n is ``a_n - sigma(a_{n+1})`` when F shifts indices down.
    """
    K = dom.field
    sys = AdditiveSystem(K, level + 1)
    for n in range(level):
        terms = [(n, K.one, 0)]
        if not zero_F and dom.frobenius(part, n + 1) == n:
            terms.append((n + 1, K.neg(K.one), 1))
        sys.add_semilinear(terms)
    return sys


def _kernel_at(dom: TruncatedDomino, part: int, level: int, zero_F: bool) -> int:
    # image of ker(Q_{level+1} -> Q_level) under the projection to Q_level
    sys = _one_minus_F_system(dom, part, level, zero_F)
    total = sys.kernel_shape()
    for n in range(level):
        sys.add_semilinear([(n, dom.field.one, 0)])
    fibre = sys.kernel_shape()
    if total.finite_rank or fibre.finite_rank:
        raise InternalConsistencyError("1 - F kernel on a domino has a finite etale part")
    return total.free_dim - fibre.free_dim


def _check_part(part: int) -> None:
    if part not in (0, 1):
        raise InvalidArgument(f"part must be 0 or 1, got {part}")


def kernel_one_minus_F(dom: TruncatedDomino, part: int, zero_F: bool = False) -> int:
    """k-dimension of ``ker(1 - F)`` on a graded part, stable across levels N and N+1.

    ``zero_F`` replaces F by 0 (a degenerate probe where 1 - F is the identity).
    """
    _check_part(part)
    here = _kernel_at(dom, part, dom.N, zero_F)
    there = _kernel_at(dom, part, dom.N + 1, zero_F)
    if here != there:
        raise InternalConsistencyError(f"kernel dimension not stable: {here} at N={dom.N}, {there} at N={dom.N + 1}")
    return here


def cokernel_one_minus_F(dom: TruncatedDomino, part: int, zero_F: bool = False) -> int:
    """k-dimension of ``coker(1 - F)`` on a graded part, stable across levels N and N+1."""
    _check_part(part)
    dims = [_one_minus_F_system(dom, part, level, zero_F).cokernel_dim() for level in (dom.N, dom.N + 1)]
    if dims[0] != dims[1]:
        raise InternalConsistencyError(f"cokernel dimension not stable: {dims}")
    return dims[0]
