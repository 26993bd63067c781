"""Counting ordered sums of exceptional units.

``phi_k(S, c)`` is the number of ordered k-tuples of exceptional units of S
(units u with 1 - u also a unit) whose sum is c. Two independent routes are
provided: brute-force oracles over an enumerated ambient ring, and closed
forms and bounds that reduce H(R) to its local factors, then to the residue
field (even characteristic) or to M2 of the residue field (odd).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import comb, prod
from typing import Optional

from .ambient import ambient_for, mat2_ambient
from .errors import UnsupportedError
from .gf import FieldElem, FieldSpec
from .mat2 import (IDEMPOTENT_RANK_ONE, IDENTITY, INVERTIBLE_OTHER, LAMBDA_IDEMPOTENT,
                   NILPOTENT_NONZERO, SCALAR_OTHER, ZERO, Mat2, ResidueClass, classify, psi)
from .quat import Quaternion, q_radical_view, q_residue, q_split
from .ring import RingSpec

ORACLE = "Oracle"
FIELD_FORMULA = "FieldFormula"
EVEN_THEOREM = "EvenTheorem"
RADICAL_REDUCTION = "RadicalReduction"
PRODUCT_RULE = "ProductRule"

FALLBACK_MAX_Q = 11

_CASE_NAMES = {
    ZERO: "zero",
    IDENTITY: "identity",
    IDEMPOTENT_RANK_ONE: "idempotent",
    NILPOTENT_NONZERO: "nilpotent",
    INVERTIBLE_OTHER: "invertible",
    SCALAR_OTHER: "scalar",
    LAMBDA_IDEMPOTENT: "lambda_idempotent",
}


def odd_theorem(tag: str) -> str:
    return f"OddTheorem({_CASE_NAMES[tag]})"


@dataclass(frozen=True)
class PhiResult:
    """An exact count, or an inclusive integer interval known to contain it."""

    lo: int
    hi: int
    exact: bool
    provenance: str
    residue_class: Optional[str] = None
    factors: tuple["PhiResult", ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.lo < 0 or self.lo > self.hi:
            raise ValueError(f"invalid bounds [{self.lo}, {self.hi}]")
        if self.exact and self.lo != self.hi:
            raise ValueError("exact result with distinct bounds")

    @classmethod
    def of(cls, value: int, provenance: str, **kw) -> PhiResult:
        return cls(value, value, True, provenance, **kw)

    @classmethod
    def bounds(cls, lo: int, hi: int, provenance: str, **kw) -> PhiResult:
        return cls(lo, hi, False, provenance, **kw)

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"only bounds [{self.lo}, {self.hi}] are known")
        return self.lo

    def contains(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def scaled(self, s: int) -> PhiResult:
        return replace(self, lo=self.lo * s, hi=self.hi * s)

    def to_json(self) -> dict:
        return {"exact": self.lo} if self.exact else {"bounds": [self.lo, self.hi]}

    def __str__(self) -> str:
        return str(self.lo) if self.exact else f"[{self.lo}, {self.hi}]"


# -- oracles -------------------------------------------------------------------

def phi2_scan_oracle(ambient, c) -> PhiResult:
    """phi_2 by one pass: #{x : x, x-1, x-c, x+1-c are units}.

    ``ambient`` is an :class:`Ambient`, a FieldSpec (the field itself) or a
    RingSpec (its quaternion ring H(R)).
    """
    amb = ambient_for(ambient)
    return PhiResult.of(amb.scan_count(amb.encode(c)), ORACLE)


def phi_k_convolution_oracle(ambient, c, k: int) -> PhiResult:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    amb = ambient_for(ambient)
    return PhiResult.of(amb.count_k(amb.encode(c), k), ORACLE)


# -- fields --------------------------------------------------------------------

def binomial_parity_sums(k: int) -> tuple[int, int]:
    """(sum of C(k, even j), sum of C(k, odd j)); both equal 2^(k-1) for k >= 1."""
    even = sum(comb(k, j) for j in range(0, k + 1, 2))
    odd = sum(comb(k, j) for j in range(1, k + 1, 2))
    return even, odd


def _field_count(q: int, s: int, k: int) -> int:
    num = (-1) ** k * (q * s - 2**k + (2 - q) ** k)
    if num % q:
        raise AssertionError(f"field formula not divisible by q={q} (k={k}, S={s})")
    value = num // q
    if value < 0:
        raise AssertionError(f"negative field count {value}")
    return value


def phi_k_even_field_closed_form(r: int, in_prime_field: bool, k: int) -> int:
    """GF(2^r) count; the first branch is for c in {0, 1}."""
    q = 2**r
    s = 2 ** (k - 1) if in_prime_field else 0
    return _field_count(q, s, k)


def phi_k_field_formula(spec: FieldSpec, c: FieldElem, k: int) -> PhiResult:
    """Exact phi_k over GF(q) from the binomial sum over j in [0, k] with j*1 = c."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    c = spec.elem(c)
    s = sum(comb(k, j) for j in range(k + 1) if spec.prime_elem(j) == c)
    value = _field_count(spec.q, s, k)
    if spec.p == 2:
        in_prime = c in (spec.zero(), spec.one())
        assert value == phi_k_even_field_closed_form(spec.r, in_prime, k)
    return PhiResult.of(value, FIELD_FORMULA)


# -- even characteristic ---------------------------------------------------------

def phi_k_even_quaternion(R: RingSpec, c: Quaternion, k: int) -> PhiResult:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    L = R.local
    if L.p != 2:
        raise ValueError(f"even-order formula needs p = 2, got p = {L.p}")
    n, r = L.n, L.r
    view = q_radical_view(R, c)
    s = view.residue
    F = L.residue_field
    in_prime = s in (F.zero(), F.one())
    scale = 2 ** ((4 * n * k - 4 * n - k) * r)
    tail = (2 ** (r + k - 1) if in_prime else 0) - 2**k + (2 - 2**r) ** k
    closed = (-1) ** k * scale * tail
    via_radical = view.radical_size ** (k - 1) * phi_k_field_formula(F, s, k).value
    if closed != via_radical:
        raise AssertionError(f"even closed form {closed} != radical reduction {via_radical}")
    if closed < 0:
        raise AssertionError(f"negative count {closed}")
    return PhiResult.of(closed, EVEN_THEOREM, residue_class=f"EvenResidue({s})")


# -- odd characteristic, k = 2 ---------------------------------------------------

def zero_poly(q: int) -> int:
    return q**4 - 3 * q**3 + 6 * q


def identity_poly(q: int) -> int:
    return q**4 - 2 * q**3 - q**2 + 3 * q


def idempotent_poly(q: int) -> int:
    return q**4 - 4 * q**3 + 5 * q**2 - 4 * q + 4


def nilpotent_poly(q: int) -> int:
    return q**4 - 4 * q**3 + 3 * q**2 + 2 * q


def universal_lower_bound(q: int) -> int:
    """q^3 (q - 8) for q >= 9, holding for every target; 0 below that."""
    return q**3 * (q - 8) if q >= 9 else 0


def scaled_bounds(q: int, base: int) -> tuple[int, int]:
    """Integer hull of [(q-8)/q * base, q/(q-8) * base], q >= 9."""
    lo = -((-(q - 8) * base) // q)
    hi = (q * base) // (q - 8)
    return lo, hi


def phi2_mat_formula(q: int, cls: ResidueClass) -> PhiResult:
    if q % 2 == 0:
        raise ValueError(f"matrix formulas need odd q, got {q}")
    tag = cls.tag
    prov = odd_theorem(tag)
    exact = {ZERO: zero_poly, IDENTITY: identity_poly,
             IDEMPOTENT_RANK_ONE: idempotent_poly, NILPOTENT_NONZERO: nilpotent_poly}
    if tag in exact:
        return PhiResult.of(exact[tag](q), prov, residue_class=str(cls))
    if tag in (INVERTIBLE_OTHER, SCALAR_OTHER):
        return PhiResult.bounds(universal_lower_bound(q), identity_poly(q), prov, residue_class=str(cls))
    if tag == LAMBDA_IDEMPOTENT:
        if q >= 9:
            lo, hi = scaled_bounds(q, idempotent_poly(q))
            return PhiResult.bounds(max(lo, universal_lower_bound(q)), hi, prov, residue_class=str(cls))
        # every target is bounded by the number of exceptional units
        return PhiResult.bounds(0, identity_poly(q), prov, residue_class=str(cls))
    raise ValueError(f"unknown residue class {tag!r}")


def residue_matrix(R: RingSpec, c: Quaternion) -> Mat2:
    L = R.local
    return psi(L.residue_field, q_residue(R, c))


def phi2_odd_quaternion(R: RingSpec, c: Quaternion, fallback: bool = True,
                        fallback_max_q: int = FALLBACK_MAX_Q) -> PhiResult:
    L = R.local
    if L.p == 2:
        raise ValueError("odd-order formula needs odd p")
    F = L.residue_field
    C = residue_matrix(R, c)
    cls = classify(F, C)
    scale = L.radical_size**4
    res = phi2_mat_formula(F.q, cls)
    if not res.exact and fallback and F.q <= fallback_max_q:
        amb = mat2_ambient(F)
        v = amb.scan_count(amb.encode(C))
        return PhiResult.of(scale * v, RADICAL_REDUCTION, residue_class=str(cls))
    return res.scaled(scale)


# -- the reduction pipeline --------------------------------------------------------

def combine_product(results: list[PhiResult]) -> PhiResult:
    if len(results) == 1:
        return results[0]
    if any(r.exact and r.lo == 0 for r in results):
        return PhiResult.of(0, PRODUCT_RULE, factors=tuple(results))
    lo = prod(r.lo for r in results)
    hi = prod(r.hi for r in results)
    if all(r.exact for r in results):
        return PhiResult.of(lo, PRODUCT_RULE, factors=tuple(results))
    return PhiResult.bounds(lo, hi, PRODUCT_RULE, factors=tuple(results))


def phi_k_reduce(R: RingSpec, c: Quaternion, k: int, method: str = "auto") -> PhiResult:
    """phi_k(H(R), c) by factor decomposition (auto/formula) or full enumeration (oracle).

    ``formula`` never enumerates: it may return bounds, and raises
    UnsupportedError for odd-order factors with k >= 3, where no closed form
    is available (unless another factor is exactly zero).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if method not in ("auto", "formula", "oracle"):
        raise ValueError(f"unknown method {method!r}")
    if method == "oracle":
        return phi2_scan_oracle(R, c) if k == 2 else phi_k_convolution_oracle(R, c, k)
    results = []
    unsupported = None
    for i, part in enumerate(q_split(R, c)):
        Ri = R.factor(i)
        L = Ri.local
        if L.p == 2:
            results.append(phi_k_even_quaternion(Ri, part, k))
        elif k == 2:
            results.append(phi2_odd_quaternion(Ri, part, fallback=(method == "auto")))
        else:
            if method == "formula":
                unsupported = unsupported or f"no closed form for k={k} over odd-order {L}"
                continue
            F = L.residue_field
            C = residue_matrix(Ri, part)
            amb = mat2_ambient(F)
            v = amb.count_k(amb.encode(C), k)
            results.append(PhiResult.of(L.radical_size ** (4 * (k - 1)) * v, RADICAL_REDUCTION,
                                        residue_class=str(classify(F, C))))
    if unsupported:
        # a factor that is exactly zero settles the product without the missing one
        if any(r.exact and r.lo == 0 for r in results):
            return PhiResult.of(0, PRODUCT_RULE, factors=tuple(results))
        raise UnsupportedError(unsupported)
    return combine_product(results)
