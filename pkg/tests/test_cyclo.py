from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqplus.cyclo import (
    CycloZeroDivisionError,
    ctx_new,
    cyclo_arith,
    cyclotomic_poly,
    qbinom,
    qfactorial,
    qint,
)

ORDERS = [2, 3, 5, 6, 7, 8, 9, 10, 12]


def numeric(x):
    """Evaluate an element at exp(2 pi i / n) (floating point oracle only)."""
    z = cmath.exp(2j * cmath.pi / x.ctx.n)
    return sum(float(c) * z**k for k, c in enumerate(x.coefficients()))


def elements(ctx):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=ctx.degree, max_size=ctx.degree).map(ctx.from_coeffs)


@pytest.mark.parametrize("n,d", [(3, 3), (6, 3), (5, 5), (8, 4), (2, 1)])
def test_d_case_split(n, d):
    assert ctx_new(n).d == d


@pytest.mark.parametrize("n", [4, 1, 0, -3])
def test_rejected_orders(n):
    with pytest.raises(ValueError):
        ctx_new(n)


@pytest.mark.parametrize("n", ORDERS)
def test_cyclotomic_polynomial_divides(n):
    phi = cyclotomic_poly(n)
    assert phi[-1] == 1
    ctx = ctx_new(n)
    # every root of Phi_n is a primitive n-th root of unity
    z = cmath.exp(2j * cmath.pi / n)
    assert abs(sum(c * z**k for k, c in enumerate(phi))) < 1e-9
    q = ctx.q
    assert q**n == ctx.one
    for k in range(1, n):
        assert q**k != ctx.one


@pytest.mark.parametrize("n", ORDERS)
def test_q_square_order_is_d(n):
    ctx = ctx_new(n)
    q2 = ctx.qpow(2)
    assert q2**ctx.d == 1
    assert all(q2**k != 1 for k in range(1, ctx.d))
    assert ctx.q**ctx.d == (-1 if n % 2 == 0 else 1)


def test_small_examples():
    ctx = ctx_new(3)
    assert cyclo_arith(ctx.one, ctx.one, "mul") == 1
    assert ctx.q * ctx.qpow(2) == 1
    inv = cyclo_arith(ctx.one, ctx.q + ctx.qpow(-1), "div")
    assert inv == -1
    assert qint(2, ctx) == -1
    assert qint(0, ctx) == 0
    assert qint(1, ctx) == 1
    with pytest.raises(CycloZeroDivisionError):
        cyclo_arith(ctx.one, ctx.zero, "div")


@pytest.mark.parametrize("n", ORDERS)
def test_qint_matches_quotient_definition(n):
    ctx = ctx_new(n)
    den = ctx.q - ctx.qpow(-1)
    for k in range(-2 * n, 2 * n):
        if den.is_zero():
            continue
        assert qint(k, ctx) * den == ctx.qpow(k) - ctx.qpow(-k)
        assert qint(-k, ctx) == -qint(k, ctx)
        assert qint(k, ctx).is_zero() == (k % ctx.d == 0)


@pytest.mark.parametrize("n", ORDERS)
def test_qint_numeric(n):
    ctx = ctx_new(n)
    z = cmath.exp(2j * cmath.pi / n)
    for k in range(1, n + 2):
        if abs(z - 1 / z) < 1e-12:
            continue
        expect = (z**k - z**-k) / (z - 1 / z)
        assert abs(numeric(qint(k, ctx)) - expect) < 1e-9


@pytest.mark.parametrize("n", ORDERS)
def test_qfactorial_nonzero_below_d(n):
    ctx = ctx_new(n)
    for k in range(ctx.d):
        assert not qfactorial(k, ctx).is_zero()
    if ctx.d > 1:
        assert qfactorial(ctx.d, ctx).is_zero()


def _gauss_binomial(y, x, ctx):
    """Pascal recursion binom(y,x) = q^x binom(y-1,x) + q^(x-y) binom(y-1,x-1)."""
    if x < 0 or x > y:
        return ctx.zero
    if x == 0 or x == y:
        return ctx.one
    return ctx.qpow(x) * _gauss_binomial(y - 1, x, ctx) + ctx.qpow(x - y) * _gauss_binomial(y - 1, x - 1, ctx)


@pytest.mark.parametrize("n", [3, 5, 6, 7, 8])
def test_qbinom_against_pascal_recursion(n):
    ctx = ctx_new(n)
    for y in range(ctx.d):
        for x in range(y + 1):
            assert qbinom(y, x, ctx) == _gauss_binomial(y, x, ctx)


def test_qbinom_examples():
    ctx = ctx_new(5)
    assert qbinom(3, 0, ctx) == 1
    assert qbinom(2, 1, ctx) == ctx.q + ctx.qpow(-1)
    assert qbinom(4, 2, ctx) == qint(4, ctx) * qint(3, ctx) / qint(2, ctx)
    z = cmath.exp(2j * cmath.pi / 5)
    assert abs(numeric(qbinom(2, 1, ctx)) - (z + 1 / z)) < 1e-12
    with pytest.raises(CycloZeroDivisionError):
        qbinom(6, 5, ctx)


def test_json_roundtrip():
    ctx = ctx_new(7)
    x = ctx.from_coeffs([Fraction(1, 3), -2, 0, 5, 0, 1])
    data = x.to_json()
    assert data["n"] == 7
    assert ctx.from_coeffs([Fraction(c) for c in data["coeffs"]]) == x


@pytest.mark.parametrize("n", [3, 5, 8, 12])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_field_axioms(n, data):
    ctx = ctx_new(n)
    a, b, c = (data.draw(elements(ctx)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6 * (1 + abs(numeric(a) * numeric(b)))
