"""Finite fields GF(p^r) with a canonical, reproducible modulus.

Elements are coefficient vectors ``(c0, ..., c_{r-1})`` of a polynomial in
``x`` reduced modulo the field's modulus. The canonical index of an element
is ``c0 + c1*p + ... + c_{r-1}*p^(r-1)``; it is also the element total order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from sympy import isprime

from .errors import DEFAULT_FIELD_LIMIT, SizeLimitError

Poly = list  # low-to-high coefficient list


# -- polynomial helpers over Z/m (m need not be prime unless stated) --------

def poly_trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], m: int) -> Poly:
    """Remainder of ``a`` modulo the monic polynomial ``f`` (full coefficient list)."""
    a = [c % m for c in a]
    d = len(f) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % m
    return poly_trim(a[:d])


def poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], m: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_mod(out, f, m)


def poly_powmod(a: Sequence[int], e: int, f: Sequence[int], m: int) -> Poly:
    result: Poly = [1]
    base = poly_mod(a, f, m)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, m)
        base = poly_mulmod(base, base, f, m)
        e >>= 1
    return poly_mod(result, f, m)


def poly_sub(a: Sequence[int], b: Sequence[int], m: int) -> Poly:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)]
    return poly_trim(out)


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    """Monic gcd over GF(p), p prime."""
    a = poly_trim([c % p for c in a])
    b = poly_trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        monic_b = [c * inv % p for c in b]
        a, b = b, poly_mod(a, monic_b, p)
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def is_irreducible(p: int, f: Sequence[int]) -> bool:
    """Rabin test for a monic ``f`` (full coefficient list) over GF(p)."""
    r = len(f) - 1
    if r < 1:
        return False
    x = [0, 1]
    xp = x
    for _ in range(1, r // 2 + 1):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(poly_sub(xp, x, p), f, p)) != 1:
            return False
    return not poly_sub(poly_powmod(x, p**r, f, p), poly_mod(x, f, p), p)


def _monic_from_low(p: int, r: int, code: int) -> list[int]:
    low = []
    for _ in range(r):
        low.append(code % p)
        code //= p
    return low + [1]


def find_irreducible(p: int, r: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``r`` over GF(p) in canonical encoding order.

    Returns the low coefficients ``(c0, ..., c_{r-1})``; the leading 1 is implicit.
    """
    _check_params(p, r, None)
    for code in range(p**r):
        f = _monic_from_low(p, r, code)
        if is_irreducible(p, f):
            return tuple(f[:-1])
    raise AssertionError(f"no irreducible of degree {r} over GF({p})")  # pragma: no cover


def _check_params(p: int, r: int, limit: int | None) -> None:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValueError(f"characteristic must be prime, got {p!r}")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"degree must be a positive integer, got {r!r}")
    if limit is not None and p**r > limit:
        raise SizeLimitError(f"GF({p}^{r}) has {p**r} elements, limit is {limit}")


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int
    modulus: tuple[int, ...]
    q: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.r)

    def __str__(self) -> str:
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"GF({self.p})"

    @property
    def full_modulus(self) -> list[int]:
        return list(self.modulus) + [1]

    def elem(self, value) -> FieldElem:
        """Coerce an int (canonical index), a coefficient sequence, or an element."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise ValueError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return self.from_index(value % self.q)
        coeffs = list(value)
        if len(coeffs) > self.r:
            raise ValueError(f"{len(coeffs)} coefficients given for degree-{self.r} field")
        coeffs += [0] * (self.r - len(coeffs))
        return FieldElem(self, tuple(c % self.p for c in coeffs))

    def from_index(self, index: int) -> FieldElem:
        coeffs = []
        for _ in range(self.r):
            coeffs.append(index % self.p)
            index //= self.p
        return FieldElem(self, tuple(coeffs))

    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.r)

    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.r - 1))

    def prime_elem(self, j: int) -> FieldElem:
        """The image of the integer ``j`` under Z -> F, j -> j*1."""
        return FieldElem(self, (j % self.p,) + (0,) * (self.r - 1))

    def elements(self) -> Iterator[FieldElem]:
        for i in range(self.q):
            yield self.from_index(i)


@dataclass(frozen=True, eq=True)
class FieldElem:
    field: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def __int__(self) -> int:
        return self.index

    def __lt__(self, other: FieldElem) -> bool:
        return self.index < other.index

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"{self.field}({self})"

    def __str__(self) -> str:
        if self.field.r == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(map(str, self.coeffs)) + "]"

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field.prime_elem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        if F.r == 1:
            return FieldElem(F, ((self.coeffs[0] * other.coeffs[0]) % F.p,))
        prod = poly_mulmod(self.coeffs, other.coeffs, F.full_modulus, F.p)
        return F.elem(prod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElem:
        if not self:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_unit(self) -> bool:
        return bool(self)


@lru_cache(maxsize=None)
def make_field(p: int, r: int = 1, limit: int = DEFAULT_FIELD_LIMIT) -> FieldSpec:
    """Build GF(p^r) with the canonical modulus. Deterministic and cached."""
    _check_params(p, r, limit)
    return FieldSpec(p, r, find_irreducible(p, r))


def arith(spec: FieldSpec, op: str, *args):
    """Dispatch ``add, sub, mul, neg, inv, pow`` on field elements or raw values."""
    if op == "pow":
        a, e = args
        return spec.elem(a) ** e
    xs = [spec.elem(a) for a in args]
    if op == "add":
        return xs[0] + xs[1]
    if op == "sub":
        return xs[0] - xs[1]
    if op == "mul":
        return xs[0] * xs[1]
    if op == "neg":
        return -xs[0]
    if op == "inv":
        return xs[0].inverse()
    raise ValueError(f"unknown field operation {op!r}")


def two_squares_minus_one(spec: FieldSpec) -> tuple[FieldElem, FieldElem]:
    """Lexicographically first ``(x, y)`` with ``x^2 + y^2 = -1``; odd characteristic only."""
    if spec.p == 2:
        raise ValueError("two_squares_minus_one needs odd characteristic")
    first_root: dict[FieldElem, FieldElem] = {}
    for y in spec.elements():
        first_root.setdefault(y * y, y)
    minus_one = -spec.one()
    for x in spec.elements():
        y = first_root.get(minus_one - x * x)
        if y is not None:
            return x, y
    raise AssertionError("no representation of -1 as a sum of two squares")  # pragma: no cover
