import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exunits.errors import SizeLimitError
from exunits.ring import RingSpec, crt, make_galois_ring, make_ring, make_zn, radical


def test_make_zn_factors():
    assert make_zn(15).locals == (make_galois_ring(3), make_galois_ring(5))
    assert make_zn(4).locals == (make_galois_ring(2, 2, 1),)
    assert make_zn(12).locals == (make_galois_ring(2, 2, 1), make_galois_ring(3))
    with pytest.raises(ValueError):
        make_zn(1)


def test_galois_ring_examples():
    L = make_galois_ring(2, 2, 2)
    assert L.order == 16 and L.radical_size == 4
    assert L.residue_field.q == 4
    assert str(make_galois_ring(3, 2, 1)) == "Z9"
    assert make_galois_ring(2, 1, 2).is_field


def test_galois_ring_radical_by_scan():
    R = RingSpec((make_galois_ring(2, 2, 2),))
    non_units = [a for a in R.elements() if not R.is_unit(a)]
    assert len(non_units) == radical(R).size == 4
    # non-units are closed under addition, so the ring is local
    assert all(not R.is_unit(a + b) for a in non_units for b in non_units)


def test_unit_examples():
    z9, z15 = make_zn(9), make_zn(15)
    assert z9.is_unit(z9.elem(4))
    assert not z9.is_unit(z9.elem(3))
    assert not z15.is_unit(z15.elem(10))
    gr = make_ring(make_galois_ring(2, 2, 2))
    assert not gr.is_unit(gr.elem(2))


def test_radical_examples():
    z9 = make_zn(9)
    J = radical(z9)
    assert J.size == 3
    assert J.residue_map(z9.elem(7)) == (J.residue_fields[0].elem(1),)
    assert J.contains(z9.elem(6))
    assert radical(make_ring(make_galois_ring(2, 1, 2))).size == 1
    assert radical(make_ring(make_galois_ring(2, 2, 2))).size == 4


def test_crt_examples():
    z15, z12 = make_zn(15), make_zn(12)
    parts = crt(z15, "split", z15.elem(7))
    assert [p.ring.format(p) for p in parts] == ["1", "2"]
    assert z15.to_int(crt(z15, "join", (make_zn(3).elem(1), make_zn(5).elem(2)))) == 7
    parts = crt(z12, "split", z12.elem(10))
    assert [p.ring.format(p) for p in parts] == ["2", "1"]
    with pytest.raises(ValueError):
        crt(z15, "sideways", None)


def test_size_limit(monkeypatch):
    monkeypatch.setenv("EXUNITS_SIZE_LIMIT", "100")
    with pytest.raises(SizeLimitError):
        make_zn(1000)


RINGS = [make_zn(12), make_zn(15), make_zn(9), make_ring(make_galois_ring(2, 2, 2)),
         make_ring(make_galois_ring(2, 2, 2), make_galois_ring(3))]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(RINGS), st.data())
def test_crt_round_trip(R, data):
    a = R.from_index(data.draw(st.integers(0, R.order - 1)))
    assert crt(R, "join", crt(R, "split", a)) == a
    assert R.from_index(R.index(a)) == a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(RINGS), st.data())
def test_ring_axioms(R, data):
    a, b, c = (R.from_index(data.draw(st.integers(0, R.order - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == R.zero() and a * R.one() == a
    if R.is_unit(a):
        assert a * a.inverse() == R.one()


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 200), st.integers(0, 10**6), st.integers(0, 10**6))
def test_zn_matches_integers(m, x, y):
    R = make_zn(m)
    assert R.to_int(R.elem(x) * R.elem(y)) == (x * y) % m
    assert R.to_int(R.elem(x) + R.elem(y)) == (x + y) % m
