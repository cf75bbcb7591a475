import random

import pytest

from padic_deform.errors import (
    InsufficientPrecision,
    ParentMismatch,
    PrecisionExceedsIso,
    PrecisionLoss,
)
from padic_deform.gf import GF
from padic_deform.literals import parse_element
from padic_deform.localfield import (
    INF,
    RingClass,
    TripleIso,
    UnitClass,
    laurent_field,
    witt_field,
)

K5 = laurent_field(5)
K2 = laurent_field(2)
W2e4 = witt_field(GF(2), 4)


def test_equal_char_add_example():
    x = parse_element(K5, "t + t^2", prec=5)
    y = parse_element(K5, "-t", prec=5)
    z = x + y
    assert z.valuation() == 2 and z.abs_prec == 5
    assert z == parse_element(K5, "t^2", prec=5)


def test_uniformizer_power_equals_p():
    T = W2e4.uniformizer()
    assert T * T * T * T == W2e4.from_int(2)
    assert (T ** 4).valuation() == 4
    assert W2e4.from_int(2).valuation() == 4


def test_geometric_series_division():
    one = K5.one()
    t = K5.uniformizer()
    d = one / (one - t)
    assert all(d.coeff(i) == 1 for i in range(20))
    assert (d * (one - t) - one).valuation() is None


def test_valuation_rules():
    x = parse_element(K2, "t^3 + t^4")
    assert x.valuation() == 3
    below = K2.from_coeff_map({4: 1}, prec=4)
    assert below.valuation() is None and below.abs_prec == 4
    rng = random.Random(1)
    for _ in range(50):
        a = K5.from_coeff_map({rng.randrange(6): 1 + rng.randrange(4), 7: rng.randrange(5)})
        b = K5.from_coeff_map({rng.randrange(6): 1 + rng.randrange(4)})
        assert (a * b).valuation() == a.valuation() + b.valuation()
        va, vb = a.valuation(), b.valuation()
        vs = (a + b).valuation()
        if va != vb:
            assert vs == min(va, vb)
        else:
            assert vs is None or vs >= min(va, vb)


def test_mixed_char_valuations():
    W = witt_field(GF(3), 2)
    assert W.from_int(3).valuation() == 2
    assert W.uniformizer().valuation() == 1
    assert W.from_int(9).valuation() == 4
    assert W.from_int(12).valuation() == 2  # 12 = 3 * 4, 4 a unit


def test_reduce_mod_examples():
    x = parse_element(K2, "1 + t + t^5")
    assert K2.reduce_mod(x, 3).digits == (1, 1, 0)
    W = witt_field(GF(3), 2)
    z = W.from_int(3) + W.uniformizer()
    assert W.reduce_mod(z, 2).digits == (0, 1)
    assert W.reduce_mod(W.zero(), 3).digits == (0, 0, 0)


def test_reduce_mod_requires_precision():
    x = K2.from_coeff_map({0: 1}, prec=2)
    with pytest.raises(InsufficientPrecision):
        x.reduce_digits(3)


def test_lift_round_trip():
    rng = random.Random(2)
    for field in (K2, W2e4, witt_field(GF(5, 2), 3)):
        q = field.residue.q
        for _ in range(100):
            digits = tuple(rng.randrange(q) for _ in range(4))
            cls = RingClass(field, 4, digits)
            assert field.reduce_mod(cls.lift(), 4) == cls


def test_lift_respects_target_prec():
    cls = RingClass(W2e4, 4, (1, 0, 1, 0))
    x = cls.lift(target_prec=8)
    assert x.abs_prec == 8
    assert W2e4.reduce_mod(x, 4) == cls


def test_phi_is_identity_on_digits_and_a_hom():
    iso = TripleIso(K2, W2e4)
    one_plus_t = K2.reduce_mod(parse_element(K2, "1 + t"), 4)
    assert iso.phi_apply(one_plus_t).digits == (1, 1, 0, 0)
    # the hand-checked square: (1+t)^2 = 1 + t^2 transports to 1 + T^2
    lhs = iso.phi_apply(one_plus_t * one_plus_t)
    rhs = iso.phi_apply(one_plus_t) * iso.phi_apply(one_plus_t)
    assert lhs == rhs
    assert lhs.digits == (1, 0, 1, 0)
    with pytest.raises(PrecisionExceedsIso):
        iso.phi_apply(K2.reduce_mod(parse_element(K2, "1 + t"), 5))


@pytest.mark.parametrize("p,n,e", [(2, 1, 4), (2, 2, 3), (3, 1, 6), (5, 2, 5)])
def test_phi_ring_hom_random(p, n, e):
    iso = TripleIso(laurent_field(p, n, prec=64), witt_field(GF(p, n), e))
    rng = random.Random(e * 10 + p)
    assert iso.check_ring_hom(rng, pairs=200) == 0


@pytest.mark.parametrize("p,n,e", [(2, 1, 6), (3, 2, 5)])
def test_phi_ring_hom_every_level(p, n, e):
    iso = TripleIso(laurent_field(p, n, prec=64), witt_field(GF(p, n), e))
    rng = random.Random(17)
    for level in range(1, e + 1):
        assert iso.check_ring_hom(rng, pairs=60, level=level) == 0


def test_eta_semilinear_over_phi():
    # eta(x*m) == phi(x)*eta(m) as classes mod m^(e+1), checked via lifts
    iso = TripleIso(K2, W2e4)
    rng = random.Random(9)
    e = iso.e
    for _ in range(100):
        x = RingClass(K2, e, tuple(rng.randrange(2) for _ in range(e)))
        m = RingClass(K2, e + 1, (0,) + tuple(rng.randrange(2) for _ in range(e)))
        xm = K2.reduce_mod(x.lift() * m.lift(), e + 1)
        lhs = iso.eta_apply(xm)
        rhs = W2e4.reduce_mod(
            iso.phi_apply(x).lift() * iso.eta_apply(m).lift(), e + 1
        )
        assert lhs == rhs


def test_xi_transport_and_multiplicativity():
    iso = TripleIso(K2, W2e4)
    u = K2.unit_class(parse_element(K2, "t + t^2"), 3)
    assert u.m == 1 and u.digits == (1, 1, 0)
    v = iso.xi_apply(u)
    assert v.m == 1 and v.digits == (1, 1, 0) and v.field is W2e4
    rng = random.Random(11)
    for _ in range(100):
        a = UnitClass(K2, 3, rng.randrange(-3, 4), (1,) + tuple(rng.randrange(2) for _ in range(2)))
        b = UnitClass(K2, 3, rng.randrange(-3, 4), (1,) + tuple(rng.randrange(2) for _ in range(2)))
        assert iso.xi_apply(a * b) == iso.xi_apply(a) * iso.xi_apply(b)


def test_precision_soundness_under_doubling():
    rng = random.Random(4)
    for _ in range(50):
        coeffs = {i: rng.randrange(5) for i in range(6)}
        lo = K5.from_coeff_map(coeffs, prec=8)
        hi = K5.from_coeff_map(coeffs, prec=16)
        other = {i: rng.randrange(5) for i in range(4)}
        lo2 = K5.from_coeff_map(other, prec=8)
        hi2 = K5.from_coeff_map(other, prec=16)
        prod_lo = lo * lo2
        prod_hi = (hi * hi2).truncate(prod_lo.abs_prec)
        assert prod_lo == prod_hi


def test_mixed_structural_mod_e():
    # classes mod m^e of mixed integers only see W-coordinates mod p
    W = witt_field(GF(2), 3)
    a = W.from_int(5)  # = 1 + 4, and 4 has valuation 6 >= 3
    assert W.reduce_mod(a, 3).digits == (1, 0, 0)
    b = W.from_int(2)  # = T^3
    assert W.reduce_mod(b, 3).digits == (0, 0, 0)


def test_parent_mismatch():
    with pytest.raises(ParentMismatch):
        K5.one() + K2.one()
    with pytest.raises(PrecisionLoss):
        K5.one() / K5.zero(prec=3)


def test_division_by_below_precision_zero_raises():
    z = K2.from_coeff_map({5: 1}, prec=3)  # indistinguishable from 0
    assert z.valuation() is None
    with pytest.raises(PrecisionLoss):
        K2.one() / z


def test_mixed_division_round_trip():
    W = witt_field(GF(5), 3)
    x = parse_element(W, "1 + 2*T + T^2")
    y = parse_element(W, "3 + T")
    q = x / y
    assert (q * y - x).valuation() is None
    quarter = W.one() / W.from_int(4)
    assert quarter.valuation() == 0
    assert (quarter * W.from_int(4) - W.one()).valuation() is None
