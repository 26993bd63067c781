"""Finite commutative rings presented as products of Galois rings.

A local factor is ``GR(p^n, r) = Z_{p^n}[x]/(f)`` where ``f`` is the canonical
GF(p) irreducible of degree ``r`` with its coefficients read in Z_{p^n}. A
:class:`RingSpec` is an ordered product of such factors; its elements hold one
length-``r`` coefficient vector per factor.

Integer literals map into each factor through that factor's canonical index,
``a mod |R_i|``. For ``Zn:m`` rings every factor has ``r = 1``, so this is
exactly the CRT splitting of ``a mod m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Callable, Iterator, Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import SizeLimitError, enum_limit
from .gf import FieldElem, FieldSpec, find_irreducible, make_field, poly_mod


@dataclass(frozen=True)
class LocalRingSpec:
    p: int
    n: int
    r: int
    modulus: tuple[int, ...]
    residue_field: FieldSpec = field(compare=False, repr=False)

    @property
    def pn(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.p ** (self.n * self.r)

    @property
    def radical_size(self) -> int:
        return self.p ** ((self.n - 1) * self.r)

    @property
    def unit_count(self) -> int:
        return self.order - self.radical_size

    @property
    def is_field(self) -> bool:
        return self.n == 1

    def __str__(self) -> str:
        if self.n == 1:
            return str(self.residue_field)
        if self.r == 1:
            return f"Z{self.pn}"
        return f"GR({self.p}^{self.n},{self.r})"

    # coefficient-vector arithmetic
    def reduce(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        full = list(self.modulus) + [1]
        out = poly_mod(list(coeffs), full, self.pn) if len(coeffs) > self.r else [c % self.pn for c in coeffs]
        out = list(out) + [0] * (self.r - len(out))
        return tuple(out)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        if self.r == 1:
            return ((a[0] * b[0]) % self.pn,)
        prod_ = [0] * (2 * self.r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod_[i + j] += x * y
        return self.reduce(prod_)

    def is_unit(self, a: Sequence[int]) -> bool:
        return any(c % self.p for c in a)

    def residue(self, a: Sequence[int]) -> FieldElem:
        return FieldElem(self.residue_field, tuple(c % self.p for c in a))

    def lift(self, x: FieldElem) -> tuple[int, ...]:
        """Canonical lift of a residue-field element (digits in [0, p))."""
        return tuple(x.coeffs)

    def index(self, a: Sequence[int]) -> int:
        return sum(c * self.pn**i for i, c in enumerate(a))

    def from_index(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            out.append(index % self.pn)
            index //= self.pn
        return tuple(out)

    @property
    def _reduction_rows(self) -> np.ndarray:
        return _reduction_rows(self)

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Vectorised product; ``a`` and ``b`` have the coefficient axis last."""
        m = self.pn
        if self.r == 1:
            return (a * b) % m
        r = self.r
        shape = np.broadcast_shapes(a.shape, b.shape)
        full = np.zeros(shape[:-1] + (2 * r - 1,), dtype=np.int64)
        for i in range(r):
            full[..., i:i + r] += a[..., i:i + 1] * b
        full %= m
        out = full[..., :r].copy()
        rows = self._reduction_rows
        for j in range(r, 2 * r - 1):
            out += full[..., j:j + 1] * rows[j - r]
        return out % m


@lru_cache(maxsize=None)
def _reduction_rows(L: LocalRingSpec) -> np.ndarray:
    # row t holds x^(r+t) mod f as a coefficient vector
    rows = []
    for t in range(L.r - 1):
        mono = [0] * (L.r + t) + [1]
        rows.append(L.reduce(mono))
    return np.array(rows, dtype=np.int64).reshape(-1, L.r)


@lru_cache(maxsize=None)
def make_galois_ring(p: int, n: int = 1, r: int = 1, limit: int | None = None) -> LocalRingSpec:
    """GR(p^n, r) with the canonical GF(p) irreducible lifted verbatim."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"nilpotency exponent must be >= 1, got {n!r}")
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValueError(f"characteristic must be prime, got {p!r}")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"residue degree must be >= 1, got {r!r}")
    limit = enum_limit() if limit is None else limit
    if p ** (n * r) > limit:
        raise SizeLimitError(f"GR({p}^{n},{r}) has {p ** (n * r)} elements, limit is {limit}")
    F = make_field(p, r, limit=max(limit, p**r))
    return LocalRingSpec(p, n, r, find_irreducible(p, r), F)


@dataclass(frozen=True)
class RingSpec:
    locals: tuple[LocalRingSpec, ...]

    def __post_init__(self):
        if not self.locals:
            raise ValueError("a ring needs at least one local factor")

    def __str__(self) -> str:
        return " x ".join(str(L) for L in self.locals)

    @property
    def order(self) -> int:
        return prod(L.order for L in self.locals)

    @property
    def is_local(self) -> bool:
        return len(self.locals) == 1

    @property
    def local(self) -> LocalRingSpec:
        if not self.is_local:
            raise ValueError(f"{self} is not local")
        return self.locals[0]

    @property
    def unit_count(self) -> int:
        return prod(L.unit_count for L in self.locals)

    def factor(self, i: int) -> RingSpec:
        return RingSpec((self.locals[i],))

    # element construction
    def elem(self, value) -> RingElem:
        if isinstance(value, RingElem):
            if value.ring != self:
                raise ValueError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_int(self, a: int) -> RingElem:
        return RingElem(self, tuple(L.from_index(a % L.order) for L in self.locals))

    def from_components(self, comps: Sequence[Sequence[int]]) -> RingElem:
        if len(comps) != len(self.locals):
            raise ValueError(f"expected {len(self.locals)} components, got {len(comps)}")
        out = []
        for L, c in zip(self.locals, comps):
            if len(c) > L.r:
                raise ValueError(f"{len(c)} coefficients given for {L} (degree {L.r})")
            out.append(L.reduce(list(c) + [0] * (L.r - len(c))))
        return RingElem(self, tuple(out))

    def zero(self) -> RingElem:
        return RingElem(self, tuple((0,) * L.r for L in self.locals))

    def one(self) -> RingElem:
        return RingElem(self, tuple((1,) + (0,) * (L.r - 1) for L in self.locals))

    def index(self, a: RingElem) -> int:
        idx, scale = 0, 1
        for L, c in zip(self.locals, a.components):
            idx += scale * L.index(c)
            scale *= L.order
        return idx

    def from_index(self, index: int) -> RingElem:
        comps = []
        for L in self.locals:
            comps.append(L.from_index(index % L.order))
            index //= L.order
        return RingElem(self, tuple(comps))

    def elements(self) -> Iterator[RingElem]:
        for i in range(self.order):
            yield self.from_index(i)

    def is_unit(self, a: RingElem) -> bool:
        return all(L.is_unit(c) for L, c in zip(self.locals, a.components))

    def inverse(self, a: RingElem) -> RingElem:
        """Inverse of a unit, via a^(|R*|-1)."""
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit of {self}")
        return a ** (self.unit_count - 1)

    # integer view, for rings whose factors all have r = 1 and distinct primes
    @property
    def is_integer_ring(self) -> bool:
        ps = [L.p for L in self.locals]
        return all(L.r == 1 for L in self.locals) and len(set(ps)) == len(ps)

    def to_int(self, a: RingElem) -> int:
        if not self.is_integer_ring:
            raise ValueError(f"{self} has no integer representatives")
        m = prod(L.pn for L in self.locals)
        total = 0
        for L, c in zip(self.locals, a.components):
            mi = m // L.pn
            total += c[0] * mi * pow(mi, -1, L.pn)
        return total % m

    def format(self, a: RingElem) -> str:
        if self.is_integer_ring:
            return str(self.to_int(a))
        parts = []
        for L, c in zip(self.locals, a.components):
            parts.append(str(c[0]) if L.r == 1 else "[" + ",".join(map(str, c)) + "]")
        return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class RingElem:
    ring: RingSpec
    components: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        return self.ring.format(self)

    def __repr__(self) -> str:
        return f"{self.ring}({self})"

    def __bool__(self) -> bool:
        return any(any(c) for c in self.components)

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise ValueError(f"mixing {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            # integers act through Z -> R, n -> n*1
            R = self.ring
            return RingElem(R, tuple(((other % L.pn),) + (0,) * (L.r - 1) for L in R.locals))
        return NotImplemented

    def _zip(self, other, fn):
        comps = []
        for L, a, b in zip(self.ring.locals, self.components, other.components):
            comps.append(fn(L, a, b))
        return RingElem(self.ring, tuple(comps))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._zip(other, lambda L, a, b: tuple((x + y) % L.pn for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, tuple(
            tuple((-x) % L.pn for x in a) for L, a in zip(self.ring.locals, self.components)))

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
        return self._zip(other, lambda L, a, b: L.mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_unit(self) -> bool:
        return self.ring.is_unit(self)

    def inverse(self) -> RingElem:
        return self.ring.inverse(self)


def make_zn(m: int, limit: int | None = None) -> RingSpec:
    """Z_m as the product of its primary components, ascending prime order."""
    if not isinstance(m, int) or m < 2:
        raise ValueError(f"Zn needs m >= 2, got {m!r}")
    limit = enum_limit() if limit is None else limit
    if m > limit:
        raise SizeLimitError(f"Z{m} exceeds the size limit {limit}")
    return RingSpec(tuple(make_galois_ring(p, e, 1, limit) for p, e in sorted(factorint(m).items())))


def make_ring(*factors: LocalRingSpec) -> RingSpec:
    return RingSpec(tuple(factors))


@dataclass(frozen=True)
class Radical:
    """Jacobson radical of a RingSpec: membership, size and the residue map."""

    ring: RingSpec
    size: int
    contains: Callable[[RingElem], bool]
    residue_map: Callable[[RingElem], tuple[FieldElem, ...]]

    @property
    def residue_fields(self) -> tuple[FieldSpec, ...]:
        return tuple(L.residue_field for L in self.ring.locals)


def radical(R: RingSpec) -> Radical:
    def contains(a: RingElem) -> bool:
        return all(not L.is_unit(c) for L, c in zip(R.locals, a.components))

    def residue_map(a: RingElem) -> tuple[FieldElem, ...]:
        return tuple(L.residue(c) for L, c in zip(R.locals, a.components))

    size = prod(L.radical_size for L in R.locals)
    return Radical(R, size, contains, residue_map)


def crt_split(R: RingSpec, a: RingElem) -> tuple[RingElem, ...]:
    """Components of ``a`` as elements of the single-factor rings ``R.factor(i)``."""
    return tuple(RingElem(R.factor(i), (c,)) for i, c in enumerate(a.components))


def crt_join(R: RingSpec, parts: Sequence[RingElem]) -> RingElem:
    if len(parts) != len(R.locals):
        raise ValueError(f"{R} has {len(R.locals)} factors, got {len(parts)} parts")
    comps = []
    for i, part in enumerate(parts):
        if part.ring != R.factor(i):
            raise ValueError(f"part {i} lives in {part.ring}, expected {R.factor(i)}")
        comps.append(part.components[0])
    return RingElem(R, tuple(comps))


def crt(R: RingSpec, direction: str, data):
    if direction == "split":
        return crt_split(R, data)
    if direction == "join":
        return crt_join(R, data)
    raise ValueError(f"direction must be 'split' or 'join', got {direction!r}")
