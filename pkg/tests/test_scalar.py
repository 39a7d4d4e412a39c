"""Tests for exact Laurent / rational scalar arithmetic."""

import random
from fractions import Fraction

import pytest

from qcanon.scalar import (LaurentScalar, RationalScalar, laurent_gcd,
                           qint, qfact, qbinom, phi, dmul, dadd_into, dshift)


def _random_laurent(rng, size=5, span=6, scale=1):
    d = {}
    for _ in range(rng.randint(0, size)):
        e = rng.randint(-span, span)
        c = rng.randint(-9, 9)
        if c:
            d[e] = d.get(e, 0) + c
    d = {e: c for e, c in d.items() if c}
    return LaurentScalar(d, scale)


def test_quantum_integers_small():
    q = LaurentScalar.q_power
    assert qint(0) == LaurentScalar.zero()
    assert qint(1) == LaurentScalar.one()
    assert qint(2) == q(1) + q(-1)
    assert qint(3) == q(2) + q(0) + q(-2)
    # q_i = q^2 variant
    assert qint(2, d=2) == q(2) + q(-2)


def test_quantum_factorial_and_binomial():
    assert qfact(3) == qint(2) * qint(3)
    # [4 choose 2] = q^-4 + q^-2 + 2 + q^2 + q^4
    b = qbinom(4, 2)
    assert b == LaurentScalar.from_terms([(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)])
    # symmetric and bar-invariant
    for n in range(9):
        for k in range(n + 1):
            x = qbinom(n, k)
            assert x == qbinom(n, n - k)
            assert x == x.bar()
            assert all(c > 0 for _, c in x.terms())
            assert x.value_at_one() == _choose(n, k)


def _choose(n, k):
    out = 1
    for j in range(k):
        out = out * (n - j) // (j + 1)
    return out


def test_phi_polynomials():
    one = LaurentScalar.one()
    assert phi(0) == one
    assert phi(1, d=2) == LaurentScalar.from_terms([(0, 1), (2, -1)])
    p = phi(2, d=2)  # (1-q^2)(1-q^4)
    assert p == LaurentScalar.from_terms([(0, 1), (2, -1), (4, -1), (6, 1)])
    # phi_m(q^2) = (1-q^2)^m * q^{m(m-1)/2} * [m]!
    for m in range(6):
        lhs = phi(m, d=2)
        rhs = (phi(1, d=2) ** m) * qfact(m) * LaurentScalar.q_power(
            m * (m - 1) // 2)
        assert lhs == rhs


def test_laurent_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(200):
        a = _random_laurent(rng)
        b = _random_laurent(rng)
        c = _random_laurent(rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert (a * b).bar() == a.bar() * b.bar()
        assert a.bar().bar() == a


def test_exact_division_roundtrip():
    rng = random.Random(11)
    for _ in range(200):
        a = _random_laurent(rng)
        b = _random_laurent(rng)
        if b.is_zero():
            continue
        p = a * b
        assert p.exact_div(b) == a
    with pytest.raises(ValueError):
        (LaurentScalar.q_power(1) + 1).exact_div(LaurentScalar.integer(2))
    with pytest.raises(ValueError):
        (LaurentScalar.q_power(2) + 1).exact_div(LaurentScalar.q_power(1) + 1)


def test_fractional_scale():
    h = LaurentScalar.q_power(Fraction(1, 2))
    assert h * h == LaurentScalar.q_power(1)
    x = h + 1
    assert x * x == LaurentScalar.q_power(1) + 2 * h + 1
    assert (h ** 4).q_power_exponent() == 2
    assert h.bar() == LaurentScalar.q_power(Fraction(-1, 2))
    # scale normalizes away when exponents are integral
    y = LaurentScalar({2: 1}, 2)
    assert y == LaurentScalar.q_power(1)
    assert y.normalized().scale == 1


def test_laurent_queries():
    x = LaurentScalar.from_terms([(-2, 3), (0, -1), (5, 2)])
    assert x.valuation() == -2 and x.degree() == 5
    assert x.coeff(-2) == 3 and x.coeff(1) == 0
    assert x.value_at_one() == 4
    assert x.integer_content() == 1
    assert LaurentScalar.from_terms([(1, 1)]).value_at_zero() == 0
    assert LaurentScalar.from_terms([(0, 4), (3, 1)]).value_at_zero() == 4
    with pytest.raises(ValueError):
        LaurentScalar.q_power(-1).value_at_zero()
    assert LaurentScalar.q_power(3).q_power_exponent() == 3
    assert (2 * LaurentScalar.q_power(3)).q_power_exponent() is None
    assert (-LaurentScalar.q_power(3)).unit_exponent_and_sign() == (3, -1)


def test_laurent_json_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        a = _random_laurent(rng, scale=rng.choice([1, 1, 2, 3]))
        assert LaurentScalar.from_json(a.to_json()) == a


def test_rational_normalization():
    q = LaurentScalar.q_power
    # unit denominators fold away
    r = RationalScalar(q(3) + q(1), q(2))
    assert r.is_laurent()
    assert r.as_laurent() == q(1) + q(-1)
    # exact polynomial division collapses
    num = (q(2) + 1) * (q(1) + 3)
    r = RationalScalar(num, q(2) + 1)
    assert r.is_laurent() and r.as_laurent() == q(1) + 3
    # denominator normal form: valuation 0, positive lowest coefficient
    r = RationalScalar(q(1), -2 * q(3) + 2 * q(1))
    assert r.den.valuation() == 0
    assert r.den.c[min(r.den.c)] > 0


def test_rational_field_axioms_random():
    rng = random.Random(23)
    for _ in range(120):
        a = RationalScalar(_random_laurent(rng), _nonzero(rng))
        b = RationalScalar(_random_laurent(rng), _nonzero(rng))
        c = RationalScalar(_random_laurent(rng), _nonzero(rng))
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a
        assert (a * b).bar() == a.bar() * b.bar()


def _nonzero(rng):
    while True:
        x = _random_laurent(rng)
        if not x.is_zero():
            return x


def test_rational_q_power_detection():
    q = LaurentScalar.q_power
    den = q(2) + 1
    r = RationalScalar(den.shift(5), den)
    assert r.q_power_exponent() == 5
    r = RationalScalar(den.shift(5) + q(0), den)
    assert r.q_power_exponent() is None
    assert RationalScalar(q(2) + 1, q(4) + q(2)).q_power_exponent() == -2


def test_rational_values():
    q = LaurentScalar.q_power
    r = RationalScalar(LaurentScalar.one(), LaurentScalar.one() - q(2))
    assert r.value_at_zero() == 1
    assert RationalScalar(q(1), LaurentScalar.one() + q(1)).value_at_zero() == 0
    with pytest.raises(ValueError):
        RationalScalar(LaurentScalar.one(), q(1) + q(2)).value_at_zero()
    with pytest.raises(ValueError):
        r.value_at_one()
    assert RationalScalar(qint(3), qint(2)).value_at_one() == Fraction(3, 2)


def test_gcd():
    q = LaurentScalar.q_power
    a = (q(2) + 1) * (q(1) + 1)
    b = (q(2) + 1) * (q(1) - 1)
    g = laurent_gcd(a, b)
    assert g == q(2) + 1
    assert laurent_gcd(a, LaurentScalar.zero()) == a
    # gcd(0, b) is b up to the unit normalization (b has negative low coeff)
    assert laurent_gcd(LaurentScalar.zero(), b) == -b
    f, p = qfact(4), phi(3, d=2)
    g2 = laurent_gcd(f, p)
    cf, cp = f.exact_div(g2), p.exact_div(g2)  # must divide both exactly
    assert laurent_gcd(cf, cp).is_one()  # and leave coprime cofactors


def test_raw_dict_helpers():
    a = {0: 1, 2: -1}
    b = {1: 3}
    assert dmul(a, b) == {1: 3, 3: -3}
    acc = {0: 1}
    dadd_into(acc, a, coeff=2, shift=1)
    assert acc == {0: 1, 1: 2, 3: -2}
    dadd_into(acc, {1: -2, 3: 2})
    assert acc == {0: 1}
    assert dshift({0: 1, 1: 1}, 2) == {2: 1, 3: 1}
