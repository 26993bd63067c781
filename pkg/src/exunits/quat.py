"""Quaternion rings H(R) = R + Ri + Rj + Rk with i^2 = j^2 = k^2 = ijk = -1.

Coordinates may be :class:`~exunits.ring.RingElem` or, for quaternions over a
residue field, :class:`~exunits.gf.FieldElem`; both support the ring operators
used here. Over a product ring the coordinates are componentwise, so splitting
a quaternion over the local factors is just splitting its coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .gf import FieldElem
from .ring import RingElem, RingSpec, crt_split, radical

Coord = Union[RingElem, FieldElem]


@dataclass(frozen=True)
class Quaternion:
    x1: Coord
    x2: Coord
    x3: Coord
    x4: Coord

    @property
    def coords(self) -> tuple[Coord, Coord, Coord, Coord]:
        return (self.x1, self.x2, self.x3, self.x4)

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Quaternion:
        return Quaternion(*(-a for a in self.coords))

    def __mul__(self, other: Quaternion) -> Quaternion:
        a1, a2, a3, a4 = self.coords
        b1, b2, b3, b4 = other.coords
        return Quaternion(
            a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
            a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
            a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
            a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
        )

    def scale(self, s: Coord) -> Quaternion:
        return Quaternion(*(s * a for a in self.coords))

    def conj(self) -> Quaternion:
        return Quaternion(self.x1, -self.x2, -self.x3, -self.x4)

    def norm(self) -> Coord:
        return self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3 + self.x4 * self.x4

    def is_unit(self) -> bool:
        return self.norm().is_unit()

    def is_exceptional_unit(self) -> bool:
        one = self.x1 - self.x1 + 1
        zero = one - one
        return self.is_unit() and (Quaternion(one, zero, zero, zero) - self).is_unit()

    def inverse(self) -> Quaternion:
        n = self.norm()
        if not n.is_unit():
            raise ZeroDivisionError("quaternion with non-unit norm")
        return self.conj().scale(n.inverse())

    def __str__(self) -> str:
        terms = []
        for coord, unit in zip(self.coords, ("", "i", "j", "k")):
            if coord:
                s = str(coord)
                if unit and s == "1":
                    s = ""
                terms.append(s + unit)
        return " + ".join(terms) if terms else "0"


def q_from(R: RingSpec, x1=0, x2=0, x3=0, x4=0) -> Quaternion:
    return Quaternion(R.elem(x1), R.elem(x2), R.elem(x3), R.elem(x4))


def q_zero(R: RingSpec) -> Quaternion:
    return q_from(R)


def q_one(R: RingSpec) -> Quaternion:
    return q_from(R, 1)


def q_elements(R: RingSpec) -> Iterator[Quaternion]:
    elems = list(R.elements())
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    yield Quaternion(a, b, c, d)


def q_mul(R: RingSpec, a: Quaternion, b: Quaternion) -> Quaternion:
    return a * b


def q_conj(R: RingSpec, a: Quaternion) -> Quaternion:
    return a.conj()


def q_norm(R: RingSpec, a: Quaternion) -> RingElem:
    """x1^2 + x2^2 + x3^2 + x4^2, which equals a * conj(a) over commutative R."""
    return a.norm()


def q_is_unit(R: RingSpec, a: Quaternion) -> bool:
    return R.is_unit(a.norm())


def q_is_exceptional_unit(R: RingSpec, a: Quaternion) -> bool:
    return q_is_unit(R, a) and q_is_unit(R, q_one(R) - a)


def q_split(R: RingSpec, a: Quaternion) -> tuple[Quaternion, ...]:
    """Image of ``a`` in the direct sum of H(R_i) over the local factors."""
    parts = [crt_split(R, x) for x in a.coords]
    return tuple(Quaternion(*(parts[t][i] for t in range(4))) for i in range(len(R.locals)))


@dataclass(frozen=True)
class QuatRadicalView:
    """Radical size of H(R) for local R and the residue of one element.

    ``kind`` is ``"even"`` (residue is a scalar of GF(2^r)) or ``"odd"``
    (residue is a quaternion over GF(p^r)).
    """

    kind: str
    radical_size: int
    residue: Union[FieldElem, Quaternion]


def q_residue(R: RingSpec, a: Quaternion) -> Quaternion:
    """Coordinatewise reduction modulo J(R) for local R."""
    L = R.local
    return Quaternion(*(L.residue(x.components[0]) for x in a.coords))


def q_radical_view(R: RingSpec, a: Quaternion) -> QuatRadicalView:
    if not R.is_local:
        raise ValueError(f"radical view needs a local ring, got {R}")
    L = R.local
    if L.p == 2:
        # H(R) is local; c lies in the radical iff x1+x2+x3+x4 lies in J(R)
        size = R.order**3 * radical(R).size
        s = a.x1 + a.x2 + a.x3 + a.x4
        return QuatRadicalView("even", size, L.residue(s.components[0]))
    return QuatRadicalView("odd", radical(R).size**4, q_residue(R, a))
