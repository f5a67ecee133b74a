import random

import pytest

from moduliq import qq
from moduliq.qseries import (
    PrecisionError,
    QSeries,
    delta_series,
    eta_power,
    inverse_delta,
)
from moduliq.scalars import CYC_ONE, CycNum


def conv(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        for j, y in enumerate(b[: n + 1]):
            if i + j <= n:
                out[i + j] += x * y
    return out


def product_coeffs(m, n):
    """Integer coefficients of prod_{k>=1} (1 - q^k)^m up to q^n, by plain
    list convolution (independent of the QSeries implementation)."""
    import math

    out = [1] + [0] * n
    for k in range(1, n + 1):
        factor = [0] * (n + 1)
        j = 0
        while k * j <= n and j <= m:
            factor[k * j] = (-1) ** j * math.comb(m, j)
            j += 1
        out = conv(out, factor, n)
    return out


def test_mul_basic():
    one_plus = QSeries.make(1, {0: 1, 1: 1}, 10)
    one_minus = QSeries.make(1, {0: 1, 1: -1}, 10)
    prod = one_plus * one_minus
    assert prod.coeff(0).rational() == 1
    assert prod.coeff(1).rational() == 0
    assert prod.coeff(2).rational() == -1


def test_grid_merge():
    third = QSeries.monomial(1, qq(1, 3), 5)
    two_thirds = QSeries.monomial(1, qq(2, 3), 5)
    assert (third * two_thirds).coeff(1).rational() == 1


def test_theta_product_cross_term():
    a = QSeries.make(1, {0: 1, 1: 6}, 2)
    b = QSeries.make(1, {0: 1, 1: 72}, 2)
    assert (a * b).coeff(1).rational() == 78


def test_delta_against_convolution_oracle():
    n = 8
    oracle = product_coeffs(24, n)
    d = delta_series(n + 1)
    for k in range(n):
        assert d.coeff(k + 1).rational() == oracle[k]


def test_eta8_against_convolution_oracle():
    n = 8
    oracle = product_coeffs(8, n)
    e = eta_power(8, qq(n) + qq(1, 3))
    for k in range(n):
        assert e.coeff(qq(k) + qq(1, 3)).rational() == oracle[k]


def test_eta_leading_exponents():
    assert eta_power(16, 3).leading()[0] == qq(2, 3)
    assert eta_power(24, 3).leading()[0] == 1
    assert eta_power(8, 3).leading()[0] == qq(1, 3)


def test_inverse_delta_oracle():
    # solve for the inverse coefficients by triangular back-substitution
    n = 6
    d = product_coeffs(24, n)  # Delta / q
    inv = [qq(1)]
    for i in range(1, n + 1):
        inv.append(-sum(inv[j] * d[i - j] for j in range(i)))
    series = inverse_delta(n)
    assert series.coeff(-1).rational() == 1
    for i in range(1, n + 1):
        assert series.coeff(i - 1).rational() == inv[i]
    assert series.coeff(0).rational() == 24
    assert series.coeff(1).rational() == 324


def test_invert_monomial():
    m = QSeries.monomial(1, qq(1, 3), 3)
    assert m.invert().leading()[0] == qq(-1, 3)


def test_pow():
    base = QSeries.make(1, {0: 1, 1: 1}, 6)
    assert base.pow(3).coeff(2).rational() == 3
    assert base.pow(0).coeff(0).rational() == 1
    assert base.pow(-1).agrees_with(base.invert())


def test_eta_power_product_identity():
    lhs = eta_power(8, 5) * eta_power(16, 5)
    assert lhs.agrees_with(delta_series(5))


def test_truncation_guard():
    d = delta_series(3)
    with pytest.raises(PrecisionError):
        d.coeff(3)
    with pytest.raises(PrecisionError):
        d.coeff(10)


def _random_series(rng, invertible=False):
    n_den = rng.choice((1, 2, 3))
    trunc = qq(rng.randint(2, 4))
    terms = {}
    lo = 0 if invertible else rng.randint(-2, 0)
    for k in range(lo, int(trunc) * n_den):
        if rng.random() < 0.5:
            terms[k] = CycNum(qq(rng.randint(-4, 4)), qq(rng.randint(-2, 2)))
    if invertible:
        terms[lo] = CycNum(qq(rng.choice((1, 2, -1, 3))), qq(rng.randint(0, 2)))
    return QSeries.make(n_den, terms, trunc)


def test_ring_laws_on_100_random_triples():
    rng = random.Random(314)
    for _ in range(100):
        a = _random_series(rng)
        b = _random_series(rng)
        c = _random_series(rng)
        assert ((a + b) + c).agrees_with(a + (b + c))
        assert (a * (b + c)).agrees_with(a * b + a * c)
        assert ((a * b) * c).agrees_with(a * (b * c))
        assert (a * b).agrees_with(b * a)


def test_inversion_on_100_random_series():
    rng = random.Random(2718)
    for _ in range(100):
        a = _random_series(rng, invertible=True)
        inv = a.invert()
        one = QSeries.one(qq(10))
        assert (a * inv).agrees_with(one)
        assert (inv * a).agrees_with(one)


def test_rendering():
    s = QSeries.make(3, {-3: 1, 0: 24, 2: 3}, 2)
    assert str(s) == "q^(-1) + 24 + 3*q^(2/3)"
    t = QSeries.monomial(CycNum(qq(1), qq(2)), qq(1, 3), 1)
    assert str(t) == "(1 + 2*w)*q^(1/3)"
