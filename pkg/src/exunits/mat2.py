"""2x2 matrices over GF(q), similarity-class tags, and the map H(F) -> M2(F)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .gf import FieldElem, FieldSpec, two_squares_minus_one
from .quat import Quaternion
from .ring import RingElem


@dataclass(frozen=True)
class Mat2:
    a: FieldElem
    b: FieldElem
    c: FieldElem
    d: FieldElem

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    @property
    def entries(self) -> tuple[FieldElem, FieldElem, FieldElem, FieldElem]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(*(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(*(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> Mat2:
        return Mat2(*(-x for x in self.entries))

    def __mul__(self, other):
        if isinstance(other, Mat2):
            a, b, c, d = self.entries
            e, f, g, h = other.entries
            return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        return Mat2(*(x * other for x in self.entries))

    __rmul__ = __mul__

    def det(self) -> FieldElem:
        return self.a * self.d - self.b * self.c

    def trace(self) -> FieldElem:
        return self.a + self.d

    def is_invertible(self) -> bool:
        return bool(self.det())

    def inverse(self) -> Mat2:
        dinv = self.det().inverse()
        return Mat2(self.d * dinv, -self.b * dinv, -self.c * dinv, self.a * dinv)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def mat(F: FieldSpec, rows: Sequence[Sequence]) -> Mat2:
    (a, b), (c, d) = rows
    return Mat2(F.elem(a), F.elem(b), F.elem(c), F.elem(d))


def identity(F: FieldSpec) -> Mat2:
    return scalar(F, F.one())


def zero(F: FieldSpec) -> Mat2:
    return scalar(F, F.zero())


def scalar(F: FieldSpec, lam: FieldElem) -> Mat2:
    z = F.zero()
    return Mat2(lam, z, z, lam)


def matrices(F: FieldSpec) -> Iterator[Mat2]:
    elems = list(F.elements())
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    yield Mat2(a, b, c, d)


def mat_ops(F: FieldSpec, op: str, *args):
    ms = [m if isinstance(m, Mat2) else mat(F, m) for m in args]
    if op == "add":
        return ms[0] + ms[1]
    if op == "sub":
        return ms[0] - ms[1]
    if op == "mul":
        return ms[0] * ms[1]
    if op == "det":
        return ms[0].det()
    if op == "trace":
        return ms[0].trace()
    if op == "is_invertible":
        return ms[0].is_invertible()
    raise ValueError(f"unknown matrix operation {op!r}")


def gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


# -- classification ----------------------------------------------------------

ZERO = "Zero"
IDENTITY = "Identity"
INVERTIBLE_OTHER = "InvertibleOther"
SCALAR_OTHER = "ScalarOther"
IDEMPOTENT_RANK_ONE = "IdempotentRankOne"
NILPOTENT_NONZERO = "NilpotentNonzero"
LAMBDA_IDEMPOTENT = "LambdaIdempotent"

EXACT_TAGS = (ZERO, IDENTITY, IDEMPOTENT_RANK_ONE, NILPOTENT_NONZERO)


@dataclass(frozen=True)
class ResidueClass:
    tag: str
    det: FieldElem
    trace: FieldElem
    lam: Optional[FieldElem] = None

    @property
    def is_invertible(self) -> bool:
        return self.tag in (IDENTITY, INVERTIBLE_OTHER, SCALAR_OTHER)

    def __str__(self) -> str:
        return f"{self.tag}({self.lam})" if self.lam is not None else self.tag


def classify(F: FieldSpec, C: Mat2) -> ResidueClass:
    """Tag ``C`` from its determinant, trace and equality with 0 and I."""
    det, tr = C.det(), C.trace()
    one = F.one()
    if C == zero(F):
        return ResidueClass(ZERO, det, tr)
    if C == identity(F):
        return ResidueClass(IDENTITY, det, tr)
    if det:
        if not C.b and not C.c and C.a == C.d:
            return ResidueClass(SCALAR_OTHER, det, tr, C.a)
        return ResidueClass(INVERTIBLE_OTHER, det, tr)
    # rank one: C^2 = trace * C
    if not tr:
        return ResidueClass(NILPOTENT_NONZERO, det, tr)
    if tr == one:
        return ResidueClass(IDEMPOTENT_RANK_ONE, det, tr)
    return ResidueClass(LAMBDA_IDEMPOTENT, det, tr, tr)


# -- the isomorphism H(F) -> M2(F), q odd -------------------------------------

@dataclass(frozen=True)
class PsiBasis:
    field: FieldSpec
    images: tuple[Mat2, Mat2, Mat2, Mat2]  # images of 1, i, j, k
    inverse_rows: tuple[tuple[FieldElem, ...], ...]  # 4x4, maps (a,b,c,d) to coordinates


def _solve_inverse(F: FieldSpec, cols: Sequence[Sequence[FieldElem]]) -> tuple[tuple[FieldElem, ...], ...]:
    n = len(cols)
    # rows of the matrix whose columns are ``cols``, augmented with I
    aug = [[cols[j][i] for j in range(n)] + [F.one() if i == j else F.zero() for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@lru_cache(maxsize=None)
def psi_basis(F: FieldSpec) -> PsiBasis:
    if F.p == 2:
        raise ValueError("H(F) -> M2(F) needs odd characteristic")
    x, y = two_squares_minus_one(F)
    z, one = F.zero(), F.one()
    pi = Mat2(x, y, y, -x)
    pj = Mat2(z, one, -one, z)
    images = (identity(F), pi, pj, pi * pj)
    inv = _solve_inverse(F, [m.entries for m in images])
    return PsiBasis(F, images, inv)


def _field_coord(F: FieldSpec, x) -> FieldElem:
    if isinstance(x, RingElem):
        L = x.ring.local
        return L.residue(x.components[0])
    return F.elem(x)


def psi(F: FieldSpec, a: Quaternion) -> Mat2:
    basis = psi_basis(F).images
    coords = [_field_coord(F, x) for x in a.coords]
    out = zero(F)
    for s, m in zip(coords, basis):
        out = out + m * s
    return out


def psi_inv(F: FieldSpec, M: Mat2) -> Quaternion:
    rows = psi_basis(F).inverse_rows
    v = M.entries
    coords = []
    for row in rows:
        acc = F.zero()
        for r_, e in zip(row, v):
            acc = acc + r_ * e
        coords.append(acc)
    return Quaternion(*coords)


def companion(F: FieldSpec, trace: FieldElem, det: FieldElem) -> Mat2:
    """[[0, -det], [1, trace]], whose characteristic polynomial is t^2 - trace t + det."""
    return Mat2(F.zero(), -det, F.one(), trace)


def similarity_classes(F: FieldSpec) -> list[Mat2]:
    """One representative per similarity class of M2(F): scalars then companions."""
    reps = [scalar(F, lam) for lam in F.elements()]
    for tr in F.elements():
        for det in F.elements():
            reps.append(companion(F, tr, det))
    return reps
