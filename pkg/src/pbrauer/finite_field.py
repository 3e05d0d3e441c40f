"""Small finite fields F_{p^m} and linear algebra over F_p.

Elements of F_{p^m} are tuples of m coefficients in ``range(p)``, lowest
degree first, reduced modulo a monic irreducible ``modulus``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvalidArgument

Elem = tuple[int, ...]
Poly = list[int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# polynomials over F_p as coefficient lists, lowest degree first

def _trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Poly, f: Poly, p: int) -> Poly:
    a = _trim([c % p for c in a])
    inv_lead = pow(f[-1], -1, p)
    while len(a) >= len(f):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(f)
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: Poly, b: Poly, f: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a: Poly, e: int, f: Poly, p: int) -> Poly:
    result, base = [1], _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _poly_gcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p (coefficients lowest degree first)."""
    f = _trim([c % p for c in poly])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p ** n, f, p), x, p):
        return False
    for q in prime_factors(n):
        h = _poly_sub(_poly_powmod(x, p ** (n // q), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """The first monic irreducible of degree m in lexicographic order of coefficients."""
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    if m < 1:
        raise InvalidArgument(f"extension degree must be >= 1, got {m}")
    if m == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=m):
        poly = list(reversed(tail)) + [1]
        if poly[0] and is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FiniteField:
    p: int
    m: int = 1
    modulus: tuple[int, ...] = ()
    _frob: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidArgument(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise InvalidArgument(f"degree must be >= 1, got {self.m}")
        mod = tuple(c % self.p for c in self.modulus) if self.modulus else default_modulus(self.p, self.m)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise InvalidArgument(f"modulus must be monic of degree {self.m}")
        if not is_irreducible(list(mod), self.p):
            raise InvalidArgument(f"modulus {list(mod)} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)
        # columns: images of the basis x^i under x -> x^p
        cols = [self._pow_raw(self.basis(i), self.p) for i in range(self.m)]
        object.__setattr__(self, "_frob", tuple(cols))

    @property
    def order(self) -> int:
        return self.p ** self.m

    def __str__(self) -> str:
        return f"F_{self.p}^{self.m}" if self.m > 1 else f"F_{self.p}"

    # element constructors

    @property
    def zero(self) -> Elem:
        return (0,) * self.m

    @property
    def one(self) -> Elem:
        return self.from_int(1)

    def from_int(self, c: int) -> Elem:
        return (c % self.p,) + (0,) * (self.m - 1)

    def basis(self, i: int) -> Elem:
        return tuple(1 if k == i else 0 for k in range(self.m))

    def element(self, value) -> Elem:
        """Coerce an int (prime field) or a coefficient list into the field."""
        if isinstance(value, bool):
            raise InvalidArgument("booleans are not field elements")
        if isinstance(value, int):
            return self.from_int(value)
        coeffs = list(value)
        if len(coeffs) > self.m or not all(isinstance(c, int) for c in coeffs):
            raise InvalidArgument(f"{value!r} is not an element of {self}")
        return tuple(c % self.p for c in coeffs) + (0,) * (self.m - len(coeffs))

    def elements(self) -> Iterator[Elem]:
        for tail in itertools.product(range(self.p), repeat=self.m):
            yield tuple(reversed(tail))

    def random_element(self, rng: random.Random) -> Elem:
        return tuple(rng.randrange(self.p) for _ in range(self.m))

    # arithmetic

    def is_zero(self, a: Elem) -> bool:
        return not any(a)

    def add(self, a: Elem, b: Elem) -> Elem:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        p = self.p
        return tuple(-x % p for x in a)

    def scale(self, c: int, a: Elem) -> Elem:
        p = self.p
        return tuple(c * x % p for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        if self.m == 1:
            return ((a[0] * b[0]) % self.p,)
        red = _poly_mulmod(list(a), list(b), list(self.modulus), self.p)
        return tuple(red) + (0,) * (self.m - len(red))

    def _pow_raw(self, a: Elem, e: int) -> Elem:
        red = _poly_powmod(list(a), e, list(self.modulus), self.p)
        return tuple(red) + (0,) * (self.m - len(red))

    def pow(self, a: Elem, e: int) -> Elem:
        if e < 0:
            return self._pow_raw(self.inv(a), -e)
        return self._pow_raw(a, e)

    def inv(self, a: Elem) -> Elem:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self._pow_raw(a, self.order - 2)

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def frob(self, a: Elem, k: int = 1) -> Elem:
        """Apply sigma^k (x -> x^{p^k}); negative k gives the inverse powers."""
        for _ in range(k % self.m):
            out = [0] * self.m
            for coeff, col in zip(a, self._frob):
                if coeff:
                    for r in range(self.m):
                        out[r] += coeff * col[r]
            a = tuple(c % self.p for c in out)
        return a

    def eval_poly(self, coeffs: Sequence[int], a: Elem) -> Elem:
        """Evaluate a polynomial with prime-field coefficients at a."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), self.from_int(c))
        return acc

    # F_p-linear structure

    def frobenius_matrix(self, k: int = 1) -> list[list[int]]:
        """Matrix over F_p of sigma^k in the basis 1, x, ..., x^{m-1}."""
        cols = [self.frob(self.basis(i), k) for i in range(self.m)]
        return [[cols[c][r] for c in range(self.m)] for r in range(self.m)]

    def mul_matrix(self, a: Elem) -> list[list[int]]:
        cols = [self.mul(a, self.basis(i)) for i in range(self.m)]
        return [[cols[c][r] for c in range(self.m)] for r in range(self.m)]

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data) -> FiniteField:
        if not isinstance(data, dict) or set(data) - {"p", "m", "modulus"} or "p" not in data:
            raise InvalidArgument(f"a field needs keys p, m, modulus; got {data!r}")
        return cls(data["p"], data.get("m", 1), tuple(data.get("modulus", ())))

    @classmethod
    def parse(cls, text: str) -> FiniteField:
        """Parse ``"p"`` or ``"p^m"``."""
        try:
            if "^" in text:
                p, m = (int(part) for part in text.split("^"))
            else:
                p, m = int(text), 1
        except ValueError:
            raise InvalidArgument(f"a field must look like p^m, got {text!r}") from None
        return gf(p, m)


@lru_cache(maxsize=None)
def gf(p: int, m: int = 1) -> FiniteField:
    return FiniteField(p, m)


# linear algebra over F_p; matrices are lists of rows

def fp_row_reduce(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    mat = [[x % p for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def fp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(fp_row_reduce(rows, p)[1])


def fp_nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = fp_row_reduce(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for row, pc in zip(red, pivots):
            vec[pc] = -row[f] % p
        basis.append(vec)
    return basis


def embedding(small: FiniteField, big: FiniteField):
    """A field embedding ``small -> big`` (needs ``small.m`` to divide ``big.m``).

    The image of the generator is a root of ``small.modulus`` inside the
    degree-``small.m`` subfield of ``big``, which is the kernel of
    ``sigma^{small.m} - 1``.
    """
    if small.p != big.p or big.m % small.m:
        raise InvalidArgument(f"{small} does not embed in {big}")
    if small.m == 1:
        return lambda a: big.from_int(a[0])
    frob_m = big.frobenius_matrix(small.m)
    p = big.p
    shifted = [[(frob_m[r][c] - (r == c)) % p for c in range(big.m)] for r in range(big.m)]
    sub_basis = fp_nullspace(shifted, big.m, p)
    root = None
    for coeffs in itertools.product(range(p), repeat=len(sub_basis)):
        cand = tuple(sum(c * v[i] for c, v in zip(coeffs, sub_basis)) % p for i in range(big.m))
        if big.is_zero(big.eval_poly(small.modulus, cand)):
            root = cand
            break
    if root is None:
        raise AssertionError("a splitting field always contains a root")
    powers = [big.one]
    for _ in range(small.m - 1):
        powers.append(big.mul(powers[-1], root))

    def embed(a: Elem) -> Elem:
        acc = big.zero
        for c, pw in zip(a, powers):
            if c:
                acc = big.add(acc, big.scale(c, pw))
        return acc

    return embed
