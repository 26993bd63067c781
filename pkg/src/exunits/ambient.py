"""Enumerable ambient rings for the brute-force oracles.

Every ambient ring here has an additive group that is a product of cyclic
groups ``Z_{m_1} x ... x Z_{m_D}``. An element is a coordinate vector, and its
canonical index is the C-order mixed-radix value of that vector, so ``x - v``
for all ``x`` at once is one modular subtraction and one dot product.

The unit predicate is evaluated per ambient kind:

* field / ring: the residue mod p of every local component is nonzero;
* quaternions H(R): the norm x1^2+x2^2+x3^2+x4^2 is a unit of R;
* matrices M2(F): the determinant is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt, prod
from typing import Any, Callable

import numpy as np

from .errors import SizeLimitError, enum_limit
from .gf import FieldElem, FieldSpec
from .mat2 import Mat2
from .quat import Quaternion
from .ring import LocalRingSpec, RingElem, RingSpec, make_galois_ring

CHUNK = 1 << 16


@dataclass(eq=False)
class Ambient:
    name: str
    kind: str
    dims: tuple[int, ...]
    unit_fn: Callable[[np.ndarray], np.ndarray]
    encode: Callable[[Any], np.ndarray]
    one: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return prod(self.dims)

    @property
    def strides(self) -> np.ndarray:
        out = np.ones(len(self.dims), dtype=np.int64)
        for i in range(len(self.dims) - 2, -1, -1):
            out[i] = out[i + 1] * self.dims[i + 1]
        return out

    @property
    def moduli(self) -> np.ndarray:
        return np.array(self.dims, dtype=np.int64)

    def coords(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        stop = self.size if stop is None else stop
        idx = np.arange(start, stop, dtype=np.int64)
        return np.stack(np.unravel_index(idx, self.dims), axis=1).astype(np.int64)

    def index_of(self, coords: np.ndarray) -> np.ndarray:
        return (coords % self.moduli) @ self.strides

    def chunks(self):
        for start in range(0, self.size, CHUNK):
            yield start, self.coords(start, min(self.size, start + CHUNK))

    @property
    def unit_mask(self) -> np.ndarray:
        if "units" not in self._cache:
            self._cache["units"] = np.concatenate([self.unit_fn(X) for _, X in self.chunks()])
        return self._cache["units"]

    @property
    def exceptional_mask(self) -> np.ndarray:
        """x is an exceptional unit iff x and 1 - x are units."""
        if "exc" not in self._cache:
            U = self.unit_mask
            parts = [U[s:s + len(X)] & U[self.index_of(self.one - X)] for s, X in self.chunks()]
            self._cache["exc"] = np.concatenate(parts)
        return self._cache["exc"]

    def scan_count(self, c: np.ndarray, start: int = 0, stop: int | None = None) -> int:
        """#{x in [start, stop) : x, x - 1, x - c, x + 1 - c are all units}."""
        U = self.unit_mask
        stop = self.size if stop is None else stop
        total = 0
        for s in range(start, stop, CHUNK):
            X = self.coords(s, min(stop, s + CHUNK))
            ok = U[s:s + len(X)].copy()
            ok &= U[self.index_of(X - self.one)]
            ok &= U[self.index_of(X - c)]
            ok &= U[self.index_of(X + self.one - c)]
            total += int(np.count_nonzero(ok))
        return total

    def convolution_power(self, j: int) -> np.ndarray:
        """The j-fold additive convolution of the exceptional-unit indicator."""
        key = ("conv", j)
        if key not in self._cache:
            E = self.exceptional_mask.astype(np.int64)
            if j == 1:
                self._cache[key] = E
            else:
                self._cache[key] = convolve(self.dims, self.convolution_power(j - 1), E)
        return self._cache[key]

    def count_k(self, c: np.ndarray, k: int) -> int:
        """Ordered k-tuples of exceptional units summing to c (k >= 2)."""
        E = self.exceptional_mask
        P = self.convolution_power(k - 1)
        total = 0
        for s, X in self.chunks():
            e = E[s:s + len(X)]
            if e.any():
                vals = P[self.index_of(c - X[e])]
                total += int(vals.sum(dtype=object)) if vals.dtype == object else int(vals.sum())
        return total


# -- exact convolution over a product of cyclic groups ------------------------

def _difference_table(dims: tuple[int, ...]) -> np.ndarray:
    """T[a, b] = index of (a - b) in the group with the given dims."""
    n = prod(dims)
    out = np.zeros((n, n), dtype=np.int64)
    if not dims:
        return out
    coords = np.unravel_index(np.arange(n), dims)
    stride = 1
    for d in range(len(dims) - 1, -1, -1):
        c = coords[d].astype(np.int64)
        out += ((c[:, None] - c[None, :]) % dims[d]) * stride
        stride *= dims[d]
    return out


def _split_point(dims: tuple[int, ...]) -> int:
    n = prod(dims)
    target = isqrt(n)
    best, best_gap = 0, n
    acc = 1
    for t in range(len(dims) + 1):
        if t:
            acc *= dims[t - 1]
        gap = abs(acc - target)
        if gap < best_gap:
            best, best_gap = t, gap
    return best


def _work_dtype(f: np.ndarray, g: np.ndarray):
    bound = int(f.sum(dtype=object)) * int(g.max(initial=0))
    if bound < 2**53:
        return np.float64
    if bound < 2**63:
        return np.int64
    return object


def convolve(dims: tuple[int, ...], f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """h(x) = sum_y g(y) f(x - y) for nonnegative integer vectors f, g.

    The group is split as A x B. For each B-coordinate b' of the support of g
    the A-part is a circulant product ``M @ f`` followed by a B-shift, so all
    arithmetic is integer-valued; floats are used only while every partial
    sum is provably below 2^53.
    """
    dims = tuple(dims)
    n = prod(dims)
    dtype = _work_dtype(f, g)
    t = _split_point(dims)
    A = prod(dims[:t])
    if A * A > (1 << 24):
        return _convolve_rolls(dims, f, g, dtype)
    B = n // A
    sub_a = _difference_table(dims[:t])
    sub_b = _difference_table(dims[t:])
    f2 = f.astype(dtype).reshape(A, B)
    g2 = g.astype(dtype).reshape(A, B)
    h = np.zeros((A, B), dtype=dtype)
    for bp in np.flatnonzero((g != 0).reshape(A, B).any(axis=0)):
        M = g2[:, bp][sub_a]
        T = M @ f2
        h += T[:, sub_b[:, bp]]
    return _to_int(h.reshape(n), dtype)


def _convolve_rolls(dims, f, g, dtype) -> np.ndarray:
    n = prod(dims)
    fn = f.astype(dtype).reshape(dims)
    h = np.zeros(dims, dtype=dtype)
    axes = tuple(range(len(dims)))
    for idx in np.flatnonzero(g):
        shift = tuple(int(s) for s in np.unravel_index(idx, dims))
        h += g[idx] * np.roll(fn, shift, axis=axes)
    return _to_int(h.reshape(n), dtype)


def _to_int(h: np.ndarray, dtype) -> np.ndarray:
    if dtype == np.float64:
        return np.rint(h).astype(np.int64)
    return h


# -- ambient constructors ---------------------------------------------------

def _check_size(name: str, size: int) -> None:
    limit = enum_limit()
    if size > limit:
        raise SizeLimitError(f"{name} has {size} elements, enumeration limit is {limit}")


def _blocks(R: RingSpec) -> list[tuple[LocalRingSpec, int, int]]:
    out, pos = [], 0
    for L in R.locals:
        out.append((L, pos, pos + L.r))
        pos += L.r
    return out


def _ring_dims(R: RingSpec) -> tuple[int, ...]:
    return tuple(L.pn for L in R.locals for _ in range(L.r))


def _ring_coords(a: RingElem) -> list[int]:
    return [c for comp in a.components for c in comp]


def _residue_nonzero(L: LocalRingSpec, block: np.ndarray) -> np.ndarray:
    return np.any(block % L.p != 0, axis=1)


@lru_cache(maxsize=32)
def ring_ambient(R: RingSpec) -> Ambient:
    _check_size(str(R), R.order)
    blocks = _blocks(R)

    def units(X):
        ok = np.ones(len(X), dtype=bool)
        for L, s, e in blocks:
            ok &= _residue_nonzero(L, X[:, s:e])
        return ok

    one = np.array(_ring_coords(R.one()), dtype=np.int64)
    return Ambient(str(R), "ring", _ring_dims(R), units,
                   lambda a: np.array(_ring_coords(R.elem(a)), dtype=np.int64), one)


@lru_cache(maxsize=32)
def field_ambient(F: FieldSpec) -> Ambient:
    _check_size(str(F), F.q)
    one = np.array(F.one().coeffs, dtype=np.int64)
    return Ambient(str(F), "field", (F.p,) * F.r, lambda X: np.any(X != 0, axis=1),
                   lambda a: np.array(F.elem(a).coeffs, dtype=np.int64), one)


@lru_cache(maxsize=32)
def quat_ambient(R: RingSpec) -> Ambient:
    _check_size(f"H({R})", R.order**4)
    blocks = _blocks(R)
    width = sum(L.r for L in R.locals)

    def units(X):
        ok = np.ones(len(X), dtype=bool)
        for L, s, e in blocks:
            norm = None
            for t in range(4):
                x = X[:, t * width + s:t * width + e]
                sq = L.mul_arrays(x, x)
                norm = sq if norm is None else norm + sq
            ok &= _residue_nonzero(L, norm % L.pn)
        return ok

    def encode(a: Quaternion) -> np.ndarray:
        return np.array([c for x in a.coords for c in _ring_coords(R.elem(x))], dtype=np.int64)

    one = np.zeros(4 * width, dtype=np.int64)
    one[:width] = _ring_coords(R.one())
    return Ambient(f"H({R})", "quat", _ring_dims(R) * 4, units, encode, one)


@lru_cache(maxsize=32)
def mat2_ambient(F: FieldSpec) -> Ambient:
    _check_size(f"M2({F})", F.q**4)
    L = make_galois_ring(F.p, 1, F.r)
    r = F.r

    def units(X):
        a, b, c, d = (X[:, t * r:(t + 1) * r] for t in range(4))
        det = (L.mul_arrays(a, d) - L.mul_arrays(b, c)) % F.p
        return np.any(det != 0, axis=1)

    def encode(m) -> np.ndarray:
        if not isinstance(m, Mat2):
            raise TypeError(f"expected a Mat2, got {m!r}")
        return np.array([c for e in m.entries for c in F.elem(e).coeffs], dtype=np.int64)

    one = np.array(F.one().coeffs + F.zero().coeffs + F.zero().coeffs + F.one().coeffs, dtype=np.int64)
    return Ambient(f"M2({F})", "mat2", (F.p,) * (4 * r), units, encode, one)


def ambient_for(obj) -> Ambient:
    """Pick the natural ambient for a spec: FieldSpec -> field, RingSpec -> H(R)."""
    if isinstance(obj, Ambient):
        return obj
    if isinstance(obj, FieldSpec):
        return field_ambient(obj)
    if isinstance(obj, RingSpec):
        return quat_ambient(obj)
    raise TypeError(f"no ambient for {obj!r}")


def decode_field(F: FieldSpec, coords) -> FieldElem:
    return F.elem([int(c) for c in coords])
