"""Mod-p Dieudonne modules and their Hom groups.

A module is a vector space over F = F_{p^m} with a sigma-linear F and a
sigma^{-1}-linear V, given by matrices acting on coordinate columns:
``F(x) = F_matrix . sigma(x)`` and ``V(x) = V_matrix . sigma^{-1}(x)``.
Entry ``[r][c]`` is the e_r-coefficient of the image of e_c.

Hom groups are computed over an algebraic closure k of F and reported as
``(Z/p)^r + k^s`` (see :mod:`pbrauer.semilinear`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalConsistencyError, InvalidArgument, ResourceError, UnsupportedInput
from .finite_field import Elem, FiniteField, embedding, fp_nullspace, gf
from .semilinear import AdditiveSystem

Matrix = tuple[tuple[Elem, ...], ...]

MAX_FIELD_DEGREE = 12


@dataclass(frozen=True)
class GroupShape:
    """The group ``(Z/p)^etale_rank + k^field_dim``."""

    etale_rank: int = 0
    field_dim: int = 0

    def __post_init__(self):
        if self.etale_rank < 0 or self.field_dim < 0:
            raise InvalidArgument(f"negative group shape {self}")

    def __add__(self, other: GroupShape) -> GroupShape:
        return GroupShape(self.etale_rank + other.etale_rank, self.field_dim + other.field_dim)

    def __mul__(self, n: int) -> GroupShape:
        return GroupShape(self.etale_rank * n, self.field_dim * n)

    __rmul__ = __mul__

    def isomorphic(self, other: GroupShape) -> bool:
        """Isomorphism as abstract groups.

        k is an infinite-dimensional F_p-vector space, so once a copy of k
        is present the finite summand is absorbed: (Z/p)^a + k^s is
        isomorphic to (Z/p)^b + k^s for any a, b when s >= 1.
        """
        if self.field_dim != other.field_dim:
            return False
        return self.field_dim > 0 or self.etale_rank == other.etale_rank

    def to_json(self) -> dict:
        return {"etale_rank": self.etale_rank, "field_dim": self.field_dim}

    def __str__(self) -> str:
        parts = []
        if self.etale_rank:
            parts.append("Z/p" if self.etale_rank == 1 else f"(Z/p)^{self.etale_rank}")
        if self.field_dim:
            parts.append("k" if self.field_dim == 1 else f"k^{self.field_dim}")
        return " + ".join(parts) or "0"


def _zero_matrix(F: FiniteField, n: int) -> Matrix:
    return tuple(tuple(F.zero for _ in range(n)) for _ in range(n))


def mat_mul(F: FiniteField, a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for r in range(n):
        row = []
        for c in range(m):
            acc = F.zero
            for t in range(k):
                if not F.is_zero(a[r][t]) and not F.is_zero(b[t][c]):
                    acc = F.add(acc, F.mul(a[r][t], b[t][c]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_frob(F: FiniteField, a: Matrix, k: int = 1) -> Matrix:
    return tuple(tuple(F.frob(x, k) for x in row) for row in a)


def _is_zero_matrix(F: FiniteField, a: Matrix) -> bool:
    return all(F.is_zero(x) for row in a for x in row)


@dataclass(frozen=True)
class DieudonneModuleFp:
    field: FiniteField
    dim: int
    F_matrix: Matrix
    V_matrix: Matrix

    def __post_init__(self):
        K = self.field
        for name in ("F_matrix", "V_matrix"):
            mat = getattr(self, name)
            if len(mat) != self.dim or any(len(row) != self.dim for row in mat):
                raise InvalidArgument(f"{name} must be {self.dim}x{self.dim}")
            object.__setattr__(self, name, tuple(tuple(K.element(x) for x in row) for row in mat))
        # F(V(x)) = F sigma(V) x and V(F(x)) = V sigma^{-1}(F) x
        if not _is_zero_matrix(K, mat_mul(K, self.F_matrix, mat_frob(K, self.V_matrix, 1))):
            raise InvalidArgument("F o V must vanish on a module killed by p")
        if not _is_zero_matrix(K, mat_mul(K, self.V_matrix, mat_frob(K, self.F_matrix, -1))):
            raise InvalidArgument("V o F must vanish on a module killed by p")

    @classmethod
    def from_sparse(cls, field: FiniteField, dim: int, F_entries, V_entries) -> DieudonneModuleFp:
        """Build from ``[row, col, value]`` triples; value is an int or coefficient list."""
        def dense(entries):
            mat = [[field.zero] * dim for _ in range(dim)]
            for entry in entries:
                if len(entry) != 3:
                    raise InvalidArgument(f"sparse entries are [row, col, value], got {entry!r}")
                r, c, v = entry
                if not (0 <= r < dim and 0 <= c < dim):
                    raise InvalidArgument(f"index ({r}, {c}) out of range for dimension {dim}")
                mat[r][c] = field.element(v)
            return tuple(tuple(row) for row in mat)
        return cls(field, dim, dense(F_entries), dense(V_entries))

    def is_monomial(self) -> bool:
        """Each basis vector goes to a multiple of a single basis vector under F and V."""
        K = self.field
        for mat in (self.F_matrix, self.V_matrix):
            for c in range(self.dim):
                if sum(1 for r in range(self.dim) if not K.is_zero(mat[r][c])) > 1:
                    return False
        return True

    def apply_F(self, x: Sequence[Elem]) -> tuple[Elem, ...]:
        col = tuple((self.field.frob(v, 1),) for v in x)
        return tuple(row[0] for row in mat_mul(self.field, self.F_matrix, col))

    def apply_V(self, x: Sequence[Elem]) -> tuple[Elem, ...]:
        col = tuple((self.field.frob(v, -1),) for v in x)
        return tuple(row[0] for row in mat_mul(self.field, self.V_matrix, col))

    def to_json(self) -> dict:
        K = self.field

        def sparse(mat):
            return [[r, c, list(mat[r][c]) if K.m > 1 else mat[r][c][0]]
                    for r in range(self.dim) for c in range(self.dim) if not K.is_zero(mat[r][c])]
        return {"field": K.to_json(), "dim": self.dim,
                "F": sparse(self.F_matrix), "V": sparse(self.V_matrix)}

    @classmethod
    def from_json(cls, data, field: FiniteField | None = None) -> DieudonneModuleFp:
        if not isinstance(data, dict):
            raise InvalidArgument("a module is a JSON object")
        unknown = set(data) - {"field", "dim", "F", "V"}
        if unknown:
            raise InvalidArgument(f"unknown module keys: {sorted(unknown)}")
        if field is None:
            if "field" not in data:
                raise InvalidArgument("module needs a 'field' entry (or pass --field)")
            field = FiniteField.from_json(data["field"])
        return cls.from_sparse(field, data["dim"], data.get("F", []), data.get("V", []))


def direct_sum(*modules: DieudonneModuleFp) -> DieudonneModuleFp:
    if not modules:
        raise InvalidArgument("direct sum of nothing")
    K = modules[0].field
    if any(M.field != K for M in modules):
        raise InvalidArgument("summands live over different fields")
    n = sum(M.dim for M in modules)

    def block(attr):
        mat = [[K.zero] * n for _ in range(n)]
        off = 0
        for M in modules:
            src = getattr(M, attr)
            for r in range(M.dim):
                for c in range(M.dim):
                    mat[off + r][off + c] = src[r][c]
            off += M.dim
        return tuple(tuple(row) for row in mat)

    return DieudonneModuleFp(K, n, block("F_matrix"), block("V_matrix"))


def supersingular_E_p(field: FiniteField) -> DieudonneModuleFp:
    """E[p] of a supersingular elliptic curve: F e1 = V e1 = e2, F e2 = V e2 = 0."""
    return DieudonneModuleFp.from_sparse(field, 2, [[1, 0, 1]], [[1, 0, 1]])


def constant_Z_p(field: FiniteField) -> DieudonneModuleFp:
    return DieudonneModuleFp.from_sparse(field, 1, [[0, 0, 1]], [])


def mu_p(field: FiniteField) -> DieudonneModuleFp:
    return DieudonneModuleFp.from_sparse(field, 1, [], [[0, 0, 1]])


def alpha_p(field: FiniteField) -> DieudonneModuleFp:
    return DieudonneModuleFp.from_sparse(field, 1, [], [])


def hom_system(M: DieudonneModuleFp, N: DieudonneModuleFp) -> AdditiveSystem:
    """Equations for k-linear f: M -> N with f F = F f and f V = V f.

    Unknown ``X[r][c]`` (index ``r * M.dim + c``) is the e'_r-coefficient of
    f(e_c). With A, C the F, V matrices of M and B, D those of N:
    ``X A = B sigma(X)`` and, after applying sigma, ``sigma(X) sigma(C) = sigma(D) X``.
    """
    if M.field != N.field:
        raise InvalidArgument(f"modules over different fields: {M.field} and {N.field}")
    K = M.field
    A, C, B, D = M.F_matrix, M.V_matrix, N.F_matrix, N.V_matrix
    sys = AdditiveSystem(K, N.dim * M.dim)

    def var(r, c):
        return r * M.dim + c

    for r in range(N.dim):
        for c in range(M.dim):
            terms = [(var(r, s), A[s][c], 0) for s in range(M.dim) if not K.is_zero(A[s][c])]
            terms += [(var(t, c), K.neg(B[r][t]), 1) for t in range(N.dim) if not K.is_zero(B[r][t])]
            sys.add_semilinear(terms)
            terms = [(var(r, s), K.frob(C[s][c], 1), 1) for s in range(M.dim) if not K.is_zero(C[s][c])]
            terms += [(var(t, c), K.neg(K.frob(D[r][t], 1)), 0) for t in range(N.dim) if not K.is_zero(D[r][t])]
            sys.add_semilinear(terms)
    return sys


def dmodule_hom(M: DieudonneModuleFp, N: DieudonneModuleFp) -> GroupShape:
    """Hom_{W_sigma[F,V]}(M, N) over k as ``(Z/p)^r + k^s``."""
    if M.field != N.field:
        raise InvalidArgument(f"modules over different fields: {M.field} and {N.field}")
    for name, mod in (("source", M), ("target", N)):
        if not mod.is_monomial():
            raise UnsupportedInput(f"{name} module is not monomial; only monomial F/V actions are supported")
    shape = hom_system(M, N).kernel_shape()
    return GroupShape(shape.finite_rank, shape.free_dim)


def _fp_solution_dim(sys: AdditiveSystem, degree: int) -> int:
    """F_p-dimension of the solutions of ``sys`` with coordinates in F_{p^degree}."""
    base = sys.field
    if degree % base.m:
        raise InvalidArgument(f"F_{base.p}^{degree} does not contain {base}")
    if degree > MAX_FIELD_DEGREE:
        raise ResourceError(f"field degree {degree} exceeds the budget {MAX_FIELD_DEGREE}")
    big = gf(base.p, degree)
    embed = embedding(base, big)
    n = big.m
    rows: list[list[int]] = []
    for eq in sys.rows:
        block = [[0] * (sys.nvars * n) for _ in range(n)]
        for var, poly in enumerate(eq):
            if poly.is_zero():
                continue
            for i in range(n):
                image = poly(big.basis(i), big, embed)
                for r in range(n):
                    block[r][var * n + i] = (block[r][var * n + i] + image[r]) % base.p
        rows.extend(block)
    return len(fp_nullspace(rows, sys.nvars * n, base.p))


def hom_points_dim(M: DieudonneModuleFp, N: DieudonneModuleFp, degree: int) -> int:
    """F_p-dimension of the homomorphisms defined over F_{p^degree}."""
    return _fp_solution_dim(hom_system(M, N), degree)


def _fixed_point_system(matrix, field: FiniteField, twist: int) -> AdditiveSystem:
    n = len(matrix)
    A = tuple(tuple(field.element(x) for x in row) for row in matrix)
    sys = AdditiveSystem(field, n)
    for r in range(n):
        if twist == 1:
            # x_r - sum_c A[r][c] sigma(x_c) = 0
            terms = [(r, field.one, 0)]
            terms += [(c, field.neg(A[r][c]), 1) for c in range(n) if not field.is_zero(A[r][c])]
        else:
            # sigma applied to x_r - sum_c A[r][c] sigma^{-1}(x_c) = 0
            terms = [(r, field.one, 1)]
            terms += [(c, field.neg(field.frob(A[r][c], 1)), 0) for c in range(n) if not field.is_zero(A[r][c])]
        sys.add_semilinear(terms)
    return sys


def extension_chain(base_degree: int, max_degree: int = MAX_FIELD_DEGREE) -> list[int]:
    """Field degrees m, 2m, 6m, 12m, ... (each dividing the next) up to the budget."""
    out, k, step = [], 1, 2
    while base_degree * k <= max_degree:
        out.append(base_degree * k)
        k *= step
        step = {2: 3, 3: 2}.get(step, 5)
    return out


def frobenius_fixed_dim(matrix, field: FiniteField, twist: int = 1,
                        max_degree: int = MAX_FIELD_DEGREE) -> int:
    """Dimension over F_p of ``{x : phi(x) = x}`` for ``phi(x) = matrix . sigma^twist(x)``.

    Rational points are counted in F_{p^M}^n for M along :func:`extension_chain`
    until their dimension reaches the rank over k given by the additive
    polynomial solver. Two equal consecutive counts are not enough: x = 2 sigma(x)
    over F_5 has no nonzero point over F_5 or F_25 but four over F_625.
    """
    if twist not in (1, -1):
        raise InvalidArgument(f"twist must be 1 or -1, got {twist}")
    sys = _fixed_point_system(matrix, field, twist)
    target = sys.kernel_shape().finite_rank
    for degree in extension_chain(field.m, max_degree):
        if _fp_solution_dim(sys, degree) == target:
            return target
    raise ResourceError(f"fixed points not all rational below field degree {max_degree}")


def frobenius_fixed_shape(matrix, field: FiniteField, twist: int = 1) -> GroupShape:
    """Exact fixed-point group over k, from the additive-polynomial system."""
    shape = _fixed_point_system(matrix, field, twist).kernel_shape()
    return GroupShape(shape.finite_rank, shape.free_dim)


def superspecial_h2_closed_form(g: int) -> GroupShape:
    return GroupShape(g * (2 * g - 1), g * (g - 1) // 2)


def superspecial_h2_induction(g: int, p: int) -> GroupShape:
    """H^2_fppf(E^g, mu_p) via the product formula, one elliptic factor at a time.

    H^2(E x E^{g-1}) = H^2(E) + H^2(E^{g-1}) + Hom(E[p]^dual, E^{g-1}[p]),
    with E[p] self-dual and H^2(E, mu_p) = Pic(E)/p = Z/p.
    """
    if g < 1:
        raise InvalidArgument(f"g must be >= 1, got {g}")
    field = gf(p, 1)
    Ep = supersingular_E_p(field)
    shape = GroupShape(1, 0)
    for h in range(2, g + 1):
        cross = dmodule_hom(Ep, direct_sum(*[Ep] * (h - 1)))
        shape = GroupShape(1, 0) + shape + cross
    return shape


def superspecial_h2(g: int, p: int) -> GroupShape:
    """H^2_fppf(A, mu_p) for the superspecial abelian g-fold, in its closed-form presentation.

    The induction yields etale rank g^2 against g(2g-1) in the closed form;
    both describe the same abstract group (see :meth:`GroupShape.isomorphic`).
    A disagreement in the k-part, or in the finite part when there is no
    k-part, raises.
    """
    induced = superspecial_h2_induction(g, p)
    closed = superspecial_h2_closed_form(g)
    if not induced.isomorphic(closed):
        raise InternalConsistencyError(f"induction gives {induced}, closed form {closed}")
    return closed


def superspecial_brauer(g: int, p: int = 2) -> GroupShape:
    """Br(A)[p^inf] for superspecial A: H^2(A, mu_p) minus Pic(A)/p = (Z/p)^{g(2g-1)}."""
    h2 = superspecial_h2(g, p)
    picard_rank = g * (2 * g - 1)
    return GroupShape(h2.etale_rank - picard_rank, h2.field_dim)
