from fractions import Fraction

import pytest

from bkhp.coefficients import GF, Num, PiRing, ZpRing
from bkhp.errors import InputError, PrecisionError


@pytest.fixture
def z3():
    return ZpRing(3, 20)


@pytest.fixture
def f9pi():
    return PiRing(9, 12)


def test_basic_arithmetic_zp(z3):
    a = z3.from_int(7)
    b = z3.from_int(-4)
    assert (a + b).val() == 1
    assert (a * b).agrees_with(z3.from_int(-28))
    assert (a - a).is_zero_at_prec


def test_valuation_and_shift(z3):
    x = z3.from_int(18)  # 2 * 3^2
    assert x.val() == 2
    assert x.shift(-2).agrees_with(z3.from_int(2))
    assert x.shift(3).val() == 5


def test_inverse(z3):
    x = z3.from_int(5)
    assert (x * x.inv()).agrees_with(z3.one())
    y = z3.from_int(6)  # 2*3: inverse has negative valuation
    xy = y * y.inv()
    assert xy.agrees_with(z3.one())
    with pytest.raises(PrecisionError):
        (z3.from_int(3) - z3.from_int(3)).inv()


def test_fraction_embedding(z3):
    x = z3.from_fraction(Fraction(1, 3))
    assert x.val() == -1
    three = z3.from_int(3)
    assert (x * three).agrees_with(z3.one())
    y = z3.from_fraction(Fraction(2, 5))
    assert (y * z3.from_int(5)).agrees_with(z3.from_int(2))


def test_precision_rules(z3):
    a = z3.from_int(1, prec=5)
    b = z3.from_int(1, prec=9)
    assert (a + b).prec == 5
    # multiplying by p shifts absolute precision up
    c = z3.from_int(3) * a
    assert c.prec == 6 and c.val() == 1


def test_zero_at_precision_semantics(z3):
    d = z3.from_int(3**6) - z3.from_int(0)
    assert d.val() == 6
    e = z3.from_int(1, prec=4) - z3.from_int(1, prec=7)
    assert e.is_zero_at_prec and e.prec == 4
    with pytest.raises(PrecisionError):
        e.val()


def test_gf_prime_power_field():
    gf = GF(9)
    assert gf.p == 3 and gf.f == 2
    nonzero = [a for a in range(9) if a != 0]
    for a in nonzero:
        assert gf.mul(a, gf.inv(a)) == 1
    # commutativity and distributivity spot checks
    for a in range(9):
        for b in range(9):
            assert gf.mul(a, b) == gf.mul(b, a)
            assert gf.add(a, b) == gf.add(b, a)


def test_pi_ring_arithmetic(f9pi):
    x = f9pi.from_digits([1, 2])       # 1 + 2 pi
    y = f9pi.from_digits([0, 1])       # pi
    assert (x * y).val() == 1
    assert (x * x.inv()).agrees_with(f9pi.one())
    with pytest.raises(InputError):
        f9pi.from_fraction(Fraction(1, 3))


def test_pi_ring_char_p(f9pi):
    # the integer 3 embeds as 0 in residue characteristic 3
    assert f9pi.from_int(3).is_zero_at_prec
    assert f9pi.from_int(4).agrees_with(f9pi.one())


def test_composite_p_rejected():
    with pytest.raises(InputError):
        ZpRing(6, 10)
    with pytest.raises(InputError):
        PiRing(12, 10)
