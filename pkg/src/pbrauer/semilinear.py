"""Additive polynomial systems over an algebraically closed field.

A system of equations ``sum_c P[r][c](x_c) = 0`` where each ``P[r][c]`` is
an additive polynomial ``x -> sum_e a_e x^{p^e}`` with coefficients in a
finite field F. Additive polynomials form the twisted ring F{tau} with
``tau a = sigma(a) tau``; it is left and right Euclidean because sigma is
bijective on F.

Bringing the matrix to diagonal form by invertible row and column
operations over F{tau} reads off the group of solutions in k^n (k an
algebraic closure of F):

* a zero column contributes a free coordinate, i.e. a copy of k;
* a diagonal entry ``d`` contributes ``ker d``, an F_p-space of dimension
  ``deg d - ord d`` (``ord`` is the lowest tau-power present; the
  remaining factor is separable).

The cokernel of the map k^n -> k^rows is likewise a copy of k for each
row without a pivot, since nonzero additive polynomials are onto k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .finite_field import Elem, FiniteField


class TwistedPoly:
    """Element of F{tau}; ``coeffs[e]`` multiplies ``tau^e``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Sequence[Elem] = ()):
        self.field = field
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs: tuple[Elem, ...] = tuple(coeffs)

    @classmethod
    def monomial(cls, field: FiniteField, a: Elem, e: int = 0) -> TwistedPoly:
        return cls(field, [field.zero] * e + [a])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def order(self) -> int:
        """Lowest power of tau with nonzero coefficient."""
        for e, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return e
        return -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Elem:
        return self.coeffs[-1]

    def __add__(self, other: TwistedPoly) -> TwistedPoly:
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (F.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (F.zero,) * (n - len(other.coeffs))
        return TwistedPoly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> TwistedPoly:
        return TwistedPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: TwistedPoly) -> TwistedPoly:
        return self + (-other)

    def __mul__(self, other: TwistedPoly) -> TwistedPoly:
        """Composition: ``(self * other)(x) = self(other(x))``."""
        F = self.field
        if self.is_zero() or other.is_zero():
            return TwistedPoly(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not F.is_zero(b):
                    out[i + j] = F.add(out[i + j], F.mul(a, F.frob(b, i)))
        return TwistedPoly(F, out)

    def __call__(self, x: Elem, field: FiniteField | None = None, embed=None) -> Elem:
        """Evaluate at x, optionally in an extension ``field`` reached by ``embed``."""
        K = field or self.field
        acc = K.zero
        for e, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                coeff = embed(c) if embed else c
                acc = K.add(acc, K.mul(coeff, K.frob(x, e)))
        return acc

    def rdivmod(self, g: TwistedPoly) -> tuple[TwistedPoly, TwistedPoly]:
        """``self = q * g + r`` with ``deg r < deg g``."""
        F = self.field
        q = TwistedPoly(F)
        r = self
        while not r.is_zero() and r.degree >= g.degree:
            shift = r.degree - g.degree
            c = F.div(r.lead(), F.frob(g.lead(), shift))
            term = TwistedPoly.monomial(F, c, shift)
            q, r = q + term, r - term * g
        return q, r

    def ldivmod(self, g: TwistedPoly) -> tuple[TwistedPoly, TwistedPoly]:
        """``self = g * q + r`` with ``deg r < deg g``."""
        F = self.field
        q = TwistedPoly(F)
        r = self
        while not r.is_zero() and r.degree >= g.degree:
            shift = r.degree - g.degree
            c = F.frob(F.div(r.lead(), g.lead()), -g.degree)
            term = TwistedPoly.monomial(F, c, shift)
            q, r = q + term, r - g * term
        return q, r

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistedPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{list(c)}*t^{e}" for e, c in enumerate(self.coeffs) if any(c)]
        return "TwistedPoly(" + (" + ".join(terms) or "0") + ")"


@dataclass(frozen=True)
class SolutionShape:
    """``(Z/p)^finite_rank + k^free_dim`` as a group of k-points."""

    finite_rank: int
    free_dim: int


def diagonalize(matrix: Sequence[Sequence[TwistedPoly]], ncols: int) -> list[TwistedPoly]:
    """Nonzero diagonal entries of a diagonal form of ``matrix``.

    Smith-style elimination without the divisibility normalisation: the
    pivot is repeatedly replaced by a remainder of smaller degree until
    its row and column are clear.
    """
    mat = [list(row) for row in matrix if len(row)]
    if not mat:
        return []
    rows = len(mat)
    diag: list[TwistedPoly] = []
    top = 0
    while top < rows and top < ncols:
        best = None
        for i in range(top, rows):
            for j in range(top, ncols):
                if not mat[i][j].is_zero() and (best is None or mat[i][j].degree < best[0]):
                    best = (mat[i][j].degree, i, j)
        if best is None:
            break
        _, i, j = best
        mat[top], mat[i] = mat[i], mat[top]
        for row in mat:
            row[top], row[j] = row[j], row[top]
        while True:
            pivot = mat[top][top]
            swapped = False
            for i in range(top + 1, rows):
                if mat[i][top].is_zero():
                    continue
                q, r = mat[i][top].rdivmod(pivot)
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[top])]
                if not r.is_zero():
                    mat[top], mat[i] = mat[i], mat[top]
                    swapped = True
                    break
            if swapped:
                continue
            for j in range(top + 1, ncols):
                if mat[top][j].is_zero():
                    continue
                q, r = mat[top][j].ldivmod(pivot)
                for row in mat:
                    row[j] = row[j] - row[top] * q
                if not r.is_zero():
                    for row in mat:
                        row[top], row[j] = row[j], row[top]
                    swapped = True
                    break
            if not swapped:
                break
        diag.append(mat[top][top])
        top += 1
    return diag


class AdditiveSystem:
    """Linear system over F{tau} in ``nvars`` unknowns."""

    def __init__(self, field: FiniteField, nvars: int):
        self.field = field
        self.nvars = nvars
        self.rows: list[list[TwistedPoly]] = []

    def add_equation(self, terms: dict[int, TwistedPoly]) -> None:
        row = [TwistedPoly(self.field) for _ in range(self.nvars)]
        for var, poly in terms.items():
            row[var] = row[var] + poly
        if any(not t.is_zero() for t in row):
            self.rows.append(row)

    def add_semilinear(self, terms: Sequence[tuple[int, Elem, int]]) -> None:
        """Add ``sum a * sigma^e(x_var) = 0`` given as ``(var, a, e)`` triples with e >= 0."""
        acc: dict[int, TwistedPoly] = {}
        for var, a, e in terms:
            mono = TwistedPoly.monomial(self.field, a, e)
            acc[var] = acc[var] + mono if var in acc else mono
        self.add_equation(acc)

    def _diagonal(self) -> list[TwistedPoly]:
        return diagonalize(self.rows, self.nvars)

    def kernel_shape(self) -> SolutionShape:
        diag = self._diagonal()
        finite = sum(d.degree - d.order for d in diag)
        return SolutionShape(finite, self.nvars - len(diag))

    def cokernel_dim(self) -> int:
        return len(self.rows) - len(self._diagonal())

    def residual(self, x: Sequence[Elem], field: FiniteField | None = None, embed=None) -> list[Elem]:
        """Evaluate every equation at the point x (coordinates in ``field``)."""
        K = field or self.field
        out = []
        for row in self.rows:
            acc = K.zero
            for poly, xv in zip(row, x):
                if not poly.is_zero():
                    acc = K.add(acc, poly(xv, K, embed))
            out.append(acc)
        return out
