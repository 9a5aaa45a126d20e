from __future__ import annotations

import pytest

from uqplus.cyclo import ctx_new, qint
from uqplus.linalg import Matrix
from uqplus.reps import (
    ModuleRep,
    direct_sum,
    dual_module,
    extended_projective,
    is_module,
    lambda_coeffs,
    make_module,
    make_simple_uq,
    make_tilde_p,
    literal_tilde_p,
    simple_length,
    tilde_partner,
    verify_module,
)
from uqplus.tensorops import Plus, decompose_plus, find_isomorphism

NS = [3, 5, 6, 7, 8]


@pytest.mark.parametrize("n", NS)
def test_all_indecomposables_are_modules(n):
    ctx = ctx_new(n)
    for i in range(ctx.d):
        for u in range(ctx.d):
            M = make_module(i, u, ctx)
            assert M.dim == u + 1
            assert is_module(M)


def test_make_module_examples():
    ctx = ctx_new(3)
    S = make_module(0, 0, ctx)
    assert S.dim == 1 and S.K() == Matrix.identity(ctx, 1) and S.E.is_zero()
    M = make_module(1, 1, ctx)
    assert M.weights == (1, 2)
    assert M.K() == Matrix.diagonal(ctx, [ctx.qpow(2), ctx.q])
    assert M.E.to_dense() == Matrix.from_dense(ctx, [[0, 0], [1, 0]]).to_dense()
    assert make_module(2, 2, ctx).dim == 3
    with pytest.raises(ValueError):
        make_module(0, 3, ctx)


def test_negative_control():
    ctx = ctx_new(5)
    M = make_module(0, 2, ctx)
    E = M.E.copy()
    E[2, 0] = ctx.one  # maps weight 0 to weight 2
    bad = ModuleRep(ctx, M.weights, E)
    assert verify_module(bad)["KE=q^2EK"] is False


@pytest.mark.parametrize("n", NS)
def test_dual_involution_and_self_duality(n):
    ctx = ctx_new(n)
    d = ctx.d
    for i in range(d):
        for u in range(d):
            M = make_module(i, u, ctx)
            D = dual_module(M)
            assert is_module(D)
            assert decompose_plus(D).summands == (Plus((-i - u) % d, u),)
            assert decompose_plus(dual_module(D)).summands == (Plus(i, u),)
            self_dual = decompose_plus(D).summands == (Plus(i, u),)
            assert self_dual == (u == simple_length(i, d))


def test_dual_examples():
    ctx = ctx_new(5)
    assert decompose_plus(dual_module(make_module(0, 0, ctx))).summands == (Plus(0, 0),)
    assert decompose_plus(dual_module(make_module(1, 2, ctx))).summands == (Plus(2, 2),)
    assert decompose_plus(dual_module(make_module(1, 3, ctx))).summands == (Plus(1, 3),)


def test_dual_of_uq_module_is_module():
    ctx = ctx_new(5)
    for i in range(ctx.d):
        assert is_module(dual_module(make_simple_uq(i, ctx)))


def test_lambda_recursion():
    ctx = ctx_new(5)
    for i in range(5):
        lam = lambda_coeffs(i, ctx)
        for j in range(5):
            expect = -sum((qint(2 * (i + h), ctx) for h in range(j + 1)), ctx.zero)
            assert lam[j] == expect


@pytest.mark.parametrize("n", NS + [9, 10])
def test_simple_modules(n):
    ctx = ctx_new(n)
    d = ctx.d
    seen = set()
    for i in range(d):
        X = make_simple_uq(i, ctx)
        assert is_module(X)
        assert X.dim == simple_length(i, d) + 1
        seen.add(tuple(sorted(X.weights)))
        # simple: F has a one-dimensional kernel, spanned by e^0, which generates under E
        assert len(X.F.nullspace()) == 1
        assert X.F.apply({0: ctx.one}) == {}
    assert len(seen) == d


def test_simple_examples():
    ctx = ctx_new(3)
    T = make_simple_uq(0, ctx)
    assert T.dim == 1 and T.E.is_zero() and T.F.is_zero()
    X = make_simple_uq(1, ctx)
    assert X.F[0, 1] == 1  # lambda^0 = -[2] = 1 at n = 3


@pytest.mark.parametrize("n", NS + [9, 10])
def test_extended_projectives(n):
    ctx = ctx_new(n)
    d = ctx.d
    for i in range(d):
        assert is_module(extended_projective(i, 0, ctx))
        ok = all(verify_module(extended_projective(i, 1, ctx)).values())
        steinberg = d % 2 == 1 and (2 * i) % d == 1
        assert ok == (not steinberg)


@pytest.mark.parametrize("n", NS + [9, 10])
def test_tilde_p(n):
    ctx = ctx_new(n)
    d = ctx.d
    for a in range(d):
        b = tilde_partner(a, d)
        if a == b:
            with pytest.raises(ValueError):
                make_tilde_p(a, ctx)
            continue
        P = make_tilde_p(a, ctx)
        assert P.dim == 2 * d
        assert all(verify_module(P).values())
        assert decompose_plus(P).counter() == decompose_plus(
            direct_sum(make_module(a, d - 1, ctx), make_module(b, d - 1, ctx))
        ).counter()


def test_tilde_p_orientation_matters():
    ctx = ctx_new(5)
    T, info = find_isomorphism(make_tilde_p(0, ctx), make_tilde_p(1, ctx))
    assert T is None and info["certain"]


@pytest.mark.parametrize("n", [3, 5, 6, 7])
def test_literal_tilde_p_violates_relations(n):
    # diagnostic: the literal construction fails K F = q^-2 F K
    ctx = ctx_new(n)
    for i in range(ctx.d):
        report = verify_module(literal_tilde_p(i, ctx))
        assert not all(report.values())
