from __future__ import annotations

import itertools
import random

import pytest
from conftest import rho
from hypothesis import given, settings
from hypothesis import strategies as st

from uqplus.algebra import (
    AlgebraElement as A,
    TensorElement,
    antipode,
    apply_legwise,
    commutator_EmFm,
    comultiply,
    comultiply_power_closed,
    counit,
    counit_leg,
    map_leg,
    multiply_legs,
    r_matrix,
)
from uqplus.cyclo import ctx_new, qfactorial
from uqplus.reps import direct_sum, extended_projective, make_simple_uq, make_tilde_p


def big_module(ctx):
    """A sum of u_q modules used as a matrix oracle for products."""
    d = ctx.d
    parts = [make_simple_uq(i, ctx) for i in range(d)]
    parts += [extended_projective(i, 0, ctx) for i in range(d)]
    parts += [make_tilde_p(a, ctx) for a in range(d) if (2 * a) % d != 1][:2]
    return direct_sum(*parts)


def random_element(ctx, rng, terms=3):
    d = ctx.d
    out = A(ctx)
    for _ in range(terms):
        out = out + A.monomial(ctx, rng.randrange(d), rng.randrange(d), rng.randrange(d), rng.randint(-3, 3))
    return out


def test_defining_relations(small_ctx):
    ctx = small_ctx
    E, F, K = A.E(ctx), A.F(ctx), A.K(ctx)
    assert K * E == (E * K).scale(ctx.qpow(2))
    assert K * F == (F * K).scale(ctx.qpow(-2))
    inv = (ctx.q - ctx.qpow(-1)).inverse()
    assert E * F - F * E == (K - A.K(ctx, -1)).scale(inv)
    assert E ** ctx.d == A(ctx) and F ** ctx.d == A(ctx)
    assert K ** ctx.d == A.one(ctx)
    one = A.one(ctx)
    assert one * E == E and F * one == F


def test_fe_pbw_form():
    ctx = ctx_new(5)
    inv = (ctx.q - ctx.qpow(-1)).inverse()
    FE = A.F(ctx) * A.E(ctx)
    expected = A.monomial(ctx, 1, 0, 1) - A.monomial(ctx, 0, 1, 0, inv) + A.monomial(ctx, 0, 4, 0, inv)
    assert FE == expected
    M = big_module(ctx)
    assert rho(FE, M) == M.F @ M.E


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_products_agree_with_matrices(n):
    ctx = ctx_new(n)
    M = big_module(ctx)
    rng = random.Random(n)
    for _ in range(15):
        x, y = random_element(ctx, rng), random_element(ctx, rng)
        assert rho(x * y, M) == rho(x, M) @ rho(y, M)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_associativity(seed):
    ctx = ctx_new(5)
    rng = random.Random(seed)
    x, y, z = (random_element(ctx, rng, 2) for _ in range(3))
    assert (x * y) * z == x * (y * z)


def test_coproduct_examples():
    ctx = ctx_new(5)
    assert comultiply(A.one(ctx), ctx) == TensorElement.one(ctx)
    K = A.K(ctx)
    assert comultiply(K, ctx) == TensorElement.pure(K, K)
    E = A.E(ctx)
    dE = TensorElement.pure(A.one(ctx), E) + TensorElement.pure(E, K)
    assert comultiply(E * E, ctx) == dE * dE
    assert comultiply_power_closed("E", 1, ctx) == dE
    assert comultiply_power_closed("E", 0, ctx) == TensorElement.one(ctx)


@pytest.mark.parametrize("n", [3, 5, 6, 7, 8])
def test_closed_powers_match_brute_force(n):
    ctx = ctx_new(n)
    dE = comultiply(A.E(ctx), ctx)
    dF = comultiply(A.F(ctx), ctx)
    for r in range(ctx.d):
        assert comultiply_power_closed("E", r, ctx) == dE**r
        assert comultiply_power_closed("F", r, ctx) == dF**r


def test_hopf_laws(small_ctx):
    ctx = small_ctx
    d = ctx.d
    D = lambda x: comultiply(x, ctx)  # noqa: E731
    S = lambda x: antipode(x, ctx)  # noqa: E731
    for m in itertools.product(range(d), repeat=3):
        x = A.monomial(ctx, *m)
        dx = D(x)
        assert apply_legwise(dx, (0, D), ctx) == apply_legwise(dx, (1, D), ctx)
        assert counit_leg(dx, 0, ctx) == x and counit_leg(dx, 1, ctx) == x
        eps = A.one(ctx).scale(counit(x))
        assert multiply_legs(map_leg(dx, 0, S, ctx), ctx) == eps
        assert multiply_legs(map_leg(dx, 1, S, ctx), ctx) == eps


def test_comultiplication_is_multiplicative(small_ctx):
    ctx = small_ctx
    rng = random.Random(3)
    for _ in range(10):
        x, y = random_element(ctx, rng, 2), random_element(ctx, rng, 2)
        assert comultiply(x * y, ctx) == comultiply(x, ctx) * comultiply(y, ctx)


def test_antipode_examples():
    ctx = ctx_new(5)
    assert antipode(A.one(ctx), ctx) == A.one(ctx)
    assert counit(A.one(ctx)) == 1
    assert antipode(A.K(ctx), ctx) == A.K(ctx, ctx.d - 1)
    # S(EK) = S(K) S(E) = -K^-1 E K^-1 = -q^-2 E K^-2
    assert antipode(A.E(ctx) * A.K(ctx), ctx) == A.monomial(ctx, 1, ctx.d - 2, 0, -ctx.qpow(-2))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_antipode_is_anti_multiplicative(seed):
    ctx = ctx_new(6)
    rng = random.Random(seed)
    x, y = random_element(ctx, rng, 2), random_element(ctx, rng, 2)
    assert antipode(x * y, ctx) == antipode(y, ctx) * antipode(x, ctx)


def test_borel_is_sub_hopf(small_ctx):
    ctx = small_ctx
    for a in range(ctx.d):
        for b in range(ctx.d):
            x = A.monomial(ctx, a, b, 0)
            assert comultiply(x, ctx).in_borel()
            assert antipode(x, ctx).in_borel()


def test_commutator_small_cases():
    ctx = ctx_new(5)
    el, coeffs = commutator_EmFm(0, ctx)
    assert el == A.one(ctx) and coeffs == [1]
    el, coeffs = commutator_EmFm(1, ctx)
    assert coeffs == [1, 1]
    _, coeffs = commutator_EmFm(2, ctx)
    assert all(not c.is_zero() for c in coeffs)


@pytest.mark.parametrize("n", [3, 5, 6, 7])
def test_commutator_coefficients_nonzero(n):
    ctx = ctx_new(n)
    for m in range(ctx.d):
        el, coeffs = commutator_EmFm(m, ctx)
        assert el == A.E(ctx) ** m * A.F(ctx) ** m
        assert len(coeffs) == m + 1 and all(not c.is_zero() for c in coeffs)


def test_commutator_basis_degenerates_at_n8():
    # at n=8 the factors (K q^-j - K^-1 q^j), j < 3, multiply to a multiple of K^4 - 1 = 0
    ctx = ctx_new(8)
    with pytest.raises(ArithmeticError):
        commutator_EmFm(3, ctx)


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_r_matrix_shape(n):
    ctx = ctx_new(n)
    R = r_matrix(ctx)
    d = ctx.d
    assert len(R.terms) == d**3
    assert R.coefficient((0, 0, 0), (0, 0, 0)) == ctx.scalar(1) / d
    # coefficient of E^k K^i (x) F^k K^j rewritten as E^k K^i (x) K^j F^k
    k, i, j = 1, 1, 2 % d
    expo = k * (k - 1) // 2 + 2 * k * (i - j) - 2 * i * j + 2 * k * j
    expect = (ctx.q - ctx.qpow(-1)) ** k / qfactorial(k, ctx) / d * ctx.qpow(expo)
    assert R.coefficient((k, i, 0), (0, j, k)) == expect
