"""Parsers for ring specifications and element literals.

Ring grammar (whitespace-insensitive)::

    spec   := factor { "x" factor }
    factor := "Zn:" int | "GF:" prime "^" int | "GR:" prime "^" int ":" int

``GR:p^n:r`` is the Galois ring GR(p^n, r); ``GF:p^r`` is GR(p^1, r).

Element literals are either quaternions ``a + b i + c j + d k`` (any subset of
terms, in any order; a coefficient is an integer or a bracketed coefficient
vector such as ``[1,2]``) or 2x2 matrices ``[[a,b],[c,d]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from sympy import isprime

from .errors import ParseError, UnsupportedError
from .gf import FieldSpec
from .mat2 import Mat2, psi_inv
from .quat import Quaternion
from .ring import LocalRingSpec, RingElem, RingSpec, make_galois_ring, make_zn


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.text, self.pos if pos is None else pos)

    def accept(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            found = self.peek() or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")

    def integer(self) -> tuple[int, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            raise self.error(f"expected an integer, found {found!r}")
        return int(self.text[start:self.pos]), start


# -- ring specs ----------------------------------------------------------------

@dataclass(frozen=True)
class RingSpecExpr:
    source: str
    factors: tuple[tuple, ...]  # ("Zn", m) | ("GF", p, r) | ("GR", p, n, r)
    ring: RingSpec

    @property
    def canonical(self) -> str:
        return format_factors(self.factors)


def format_factors(factors) -> str:
    out = []
    for f in factors:
        if f[0] == "Zn":
            out.append(f"Zn:{f[1]}")
        elif f[0] == "GF":
            out.append(f"GF:{f[1]}^{f[2]}")
        else:
            out.append(f"GR:{f[1]}^{f[2]}:{f[3]}")
    return " x ".join(out)


def _prime(cur: _Cursor) -> int:
    p, pos = cur.integer()
    if not isprime(p):
        raise cur.error(f"{p} is not prime", pos)
    return p


def _positive(cur: _Cursor, what: str) -> int:
    v, pos = cur.integer()
    if v < 1:
        raise cur.error(f"{what} must be >= 1", pos)
    return v


def _keyword(cur: _Cursor, name: str) -> bool:
    if cur.accept(name):
        cur.expect(":")
        return True
    return False


def parse_ring_expr(text: str) -> RingSpecExpr:
    cur = _Cursor(text)
    factors = []
    locals_: list[LocalRingSpec] = []
    while True:
        if _keyword(cur, "Zn"):
            m, pos = cur.integer()
            if m < 2:
                raise cur.error("Zn needs m >= 2", pos)
            factors.append(("Zn", m))
            locals_.extend(make_zn(m).locals)
        elif _keyword(cur, "GF"):
            p = _prime(cur)
            cur.expect("^")
            r = _positive(cur, "degree")
            factors.append(("GF", p, r))
            locals_.append(make_galois_ring(p, 1, r))
        elif _keyword(cur, "GR"):
            p = _prime(cur)
            cur.expect("^")
            n = _positive(cur, "exponent")
            cur.expect(":")
            r = _positive(cur, "degree")
            factors.append(("GR", p, n, r))
            locals_.append(make_galois_ring(p, n, r))
        else:
            found = cur.peek() or "end of input"
            raise cur.error(f"expected 'Zn:', 'GF:' or 'GR:', found {found!r}")
        if cur.at_end():
            break
        cur.expect("x")
    return RingSpecExpr(text, tuple(factors), RingSpec(tuple(locals_)))


def parse_ring_spec(text: str) -> RingSpec:
    return parse_ring_expr(text).ring


# -- elements ------------------------------------------------------------------

@dataclass(frozen=True)
class ElemExpr:
    source: str
    kind: str  # "quat" or "mat2"
    value: Union[Quaternion, Mat2]


def _coefficient(cur: _Cursor) -> Union[int, list[int]]:
    if cur.accept("["):
        vec = [cur.integer()[0]]
        while cur.accept(","):
            vec.append(cur.integer()[0])
        cur.expect("]")
        return vec
    return cur.integer()[0]


def _ring_value(R: RingSpec, coeff, cur: _Cursor, pos: int) -> RingElem:
    if isinstance(coeff, int):
        return R.from_int(coeff)
    comps = []
    for L in R.locals:
        if len(coeff) > L.r:
            raise cur.error(f"coefficient vector of length {len(coeff)} does not fit {L} (degree {L.r})", pos)
        comps.append(coeff)
    return R.from_components(comps)


def _parse_quaternion(R: RingSpec, cur: _Cursor) -> Quaternion:
    acc = [R.zero() for _ in range(4)]
    first = True
    while True:
        sign = 1
        if cur.accept("+"):
            pass
        elif cur.accept("-"):
            sign = -1
        elif not first:
            raise cur.error(f"expected '+' or '-', found {cur.peek()!r}")
        first = False
        cur.skip_ws()
        pos = cur.pos
        ch = cur.peek()
        if ch.isdigit() or ch == "[":
            value = _ring_value(R, _coefficient(cur), cur, pos)
            cur.accept("*")
        elif ch in ("i", "j", "k"):
            value = R.one()
        else:
            raise cur.error(f"expected a coefficient or i/j/k, found {ch or 'end of input'!r}")
        slot = 0
        for t, unit in enumerate(("i", "j", "k"), start=1):
            if cur.accept(unit):
                slot = t
                break
        acc[slot] = acc[slot] + (value if sign > 0 else -value)
        if cur.at_end():
            return Quaternion(*acc)


def _matrix_entry(F: FieldSpec, cur: _Cursor):
    neg = cur.accept("-")
    pos = cur.pos
    coeff = _coefficient(cur)
    if isinstance(coeff, list) and len(coeff) > F.r:
        raise cur.error(f"coefficient vector of length {len(coeff)} does not fit {F}", pos)
    e = F.elem(coeff)
    return -e if neg else e


def _parse_matrix(F: FieldSpec, cur: _Cursor) -> Mat2:
    entries = []
    cur.expect("[")
    for row in range(2):
        if row:
            cur.expect(",")
        cur.expect("[")
        entries.append(_matrix_entry(F, cur))
        cur.expect(",")
        entries.append(_matrix_entry(F, cur))
        cur.expect("]")
    cur.expect("]")
    if not cur.at_end():
        raise cur.error(f"unexpected trailing input {cur.peek()!r}")
    return Mat2(*entries)


def matrix_field(R: RingSpec) -> FieldSpec:
    if not R.is_local or not R.local.is_field or R.local.p == 2:
        raise UnsupportedError(f"matrix literals need a single field of odd order, got {R}")
    return R.local.residue_field


def parse_element(R: RingSpec, text: str, kind: str = "auto") -> ElemExpr:
    if kind == "auto":
        kind = "mat2" if text.strip().startswith("[[") and text.strip().endswith("]]") else "quat"
    cur = _Cursor(text)
    if kind == "quat":
        if cur.at_end():
            raise cur.error("empty element")
        return ElemExpr(text, kind, _parse_quaternion(R, cur))
    if kind == "mat2":
        return ElemExpr(text, kind, _parse_matrix(matrix_field(R), cur))
    raise ValueError(f"unknown element kind {kind!r}")


def quaternion_of(R: RingSpec, e: ElemExpr) -> Quaternion:
    """The element as a quaternion of H(R); matrices go through the inverse of psi."""
    if e.kind == "quat":
        return e.value
    F = matrix_field(R)
    q = psi_inv(F, e.value)
    return Quaternion(*(R.from_components([x.coeffs]) for x in q.coords))
