from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqplus.cyclo import ctx_new
from uqplus.linalg import Matrix, solve_affine
from uqplus.reps import (
    ModuleRep,
    direct_sum,
    extended_projective,
    is_module,
    make_module,
    make_simple_uq,
    sum_of_modules,
)
from uqplus.tensorops import (
    DecompositionResult,
    Plus,
    Simple,
    TildeP,
    clebsch_gordan_plus,
    clebsch_gordan_uq,
    decompose_plus,
    decompose_uq,
    find_isomorphism,
    hom_space,
    is_intertwiner,
    is_isomorphic,
    peel_strings,
    tensor,
)


def conjugate_by_weight_preserving(rep: ModuleRep, rng) -> ModuleRep:
    """Hide the string basis: E -> P E P^-1 with P invertible and weight preserving."""
    ctx = rep.ctx
    while True:
        P = Matrix.zeros(ctx, rep.dim)
        for idx in rep.weight_blocks().values():
            for r in idx:
                for c in idx:
                    val = rng.randint(-2, 2) + (3 if r == c else 0)
                    if val:
                        P[r, c] = ctx.scalar(val)
        if P.is_invertible():
            break
    E = P @ rep.E @ P.inverse()
    return ModuleRep(ctx, rep.weights, E, None, "conjugated")


def in_span(T: Matrix, basis) -> bool:
    ctx = T.ctx
    eqs = []
    for r in range(T.nrows):
        for c in range(T.ncols):
            coeffs = {k: B[r, c] for k, B in enumerate(basis) if not B[r, c].is_zero()}
            if coeffs or not T[r, c].is_zero():
                eqs.append((coeffs, T[r, c]))
    part, _ = solve_affine(ctx, eqs, len(basis))
    return part is not None


def test_tensor_example_matrix():
    ctx = ctx_new(3)
    M = make_module(0, 1, ctx)
    T = tensor(M, M)
    # basis e0e0, e0e1, e1e0, e1e1
    assert T.E.column(0) == {1: ctx.one, 2: ctx.one}
    assert T.E.column(1) == {3: ctx.qpow(2)}
    assert T.E.column(2) == {3: ctx.one}
    assert T.E.column(3) == {}
    assert is_module(T)


def test_simple_tensors_shift_index():
    ctx = ctx_new(5)
    for i in range(5):
        for j in range(5):
            T = tensor(make_module(i, 0, ctx), make_module(j, 0, ctx))
            assert T.weights == ((i + j) % 5,)


def test_decompose_plus_examples():
    ctx = ctx_new(5)
    for i in range(5):
        for u in range(5):
            assert decompose_plus(make_module(i, u, ctx)).summands == (Plus(i, u),)
    T = tensor(make_module(0, 1, ctx), make_module(0, 1, ctx))
    assert decompose_plus(T).counter() == Counter([Plus(0, 2), Plus(1, 0)])
    T = tensor(make_module(0, 2, ctx), make_module(0, 3, ctx))
    assert decompose_plus(T).counter() == Counter([Plus(0, 4), Plus(1, 4), Plus(2, 1)])
    assert decompose_plus(T).labels() == ["0:4", "1:4", "2:1"]


def test_clebsch_gordan_plus_examples():
    ctx = ctx_new(5)
    assert clebsch_gordan_plus(2, 0, 4, 0, ctx).summands == (Plus(1, 0),)
    full = clebsch_gordan_plus(0, 4, 0, 4, ctx)
    assert full.counter() == Counter(Plus(l, 4) for l in range(5))
    assert full.total_dim(5) == 25


@pytest.mark.parametrize("n", [3, 5, 6, 8])
def test_decomposition_properties(n):
    ctx = ctx_new(n)
    d = ctx.d
    for i in range(d):
        for u in range(d):
            for j in range(d):
                for v in range(d):
                    a, b = make_module(i, u, ctx), make_module(j, v, ctx)
                    T = tensor(a, b)
                    res = decompose_plus(T)
                    assert res.total_dim(d) == T.dim
                    assert Counter(T.weights) == Counter((x + y) % d for x in a.weights for y in b.weights)
                    assert res.same_summands(decompose_plus(tensor(b, a)))
                    if u + v <= d - 1:
                        assert len(res.summands) == min(u, v) + 1
                if u == 0:
                    assert decompose_plus(tensor(make_module(1, 0, ctx), make_module(j, v, ctx))).summands == (
                        Plus((j + 1) % d, v),
                    )


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.sampled_from([3, 5, 6, 7]))
def test_decompose_plus_recovers_hidden_sums(seed, n):
    ctx = ctx_new(n)
    d = ctx.d
    rng = random.Random(seed)
    parts = [(rng.randrange(d), rng.randrange(d)) for _ in range(rng.randint(1, 4))]
    rep = conjugate_by_weight_preserving(sum_of_modules(parts, ctx), rng)
    want = Counter(Plus(i, u) for i, u in parts)
    assert decompose_plus(rep).counter() == want
    assert peel_strings(rep).counter() == want


def test_hom_space_examples():
    ctx = ctx_new(5)
    M = make_module(1, 3, ctx)
    H = hom_space(M, M)
    ident = Matrix.identity(ctx, M.dim)
    assert in_span(ident, H.basis)
    assert all(is_intertwiner(B, M, M) for B in H.basis)
    assert hom_space(make_module(1, 0, ctx), make_module(1, 0, ctx)).dim == 1
    assert hom_space(make_module(1, 0, ctx), make_module(2, 0, ctx)).dim == 0


@pytest.mark.parametrize("n", [3, 5])
def test_hom_space_methods_agree(n):
    ctx = ctx_new(n)
    d = ctx.d
    for i in range(d):
        for u in range(d):
            for j in range(d):
                for v in range(d):
                    a = sum_of_modules([(i, u), (j, v)], ctx)
                    b = make_module(j, v, ctx)
                    s = hom_space(a, b, "strings")
                    g = hom_space(a, b, "generic")
                    assert s.dim == g.dim
                    assert all(is_intertwiner(B, a, b) for B in s.basis)


def test_is_isomorphic_examples():
    ctx = ctx_new(3)
    M = make_module(0, 2, ctx)
    assert is_isomorphic(M, M)
    assert not is_isomorphic(make_module(0, 0, ctx), make_module(1, 0, ctx))
    T, info = find_isomorphism(extended_projective(0, 0, ctx), extended_projective(0, 1, ctx))
    assert T is None and info["certain"]


def test_hom_for_thm51_at_n3():
    ctx = ctx_new(3)
    X = make_simple_uq(1, ctx)
    src = direct_sum(make_simple_uq(2, ctx), make_simple_uq(0, ctx))
    H = hom_space(src, tensor(X, X))
    assert H.dim >= 1
    T, _ = find_isomorphism(src, tensor(X, X))
    assert T is not None and T.is_invertible() and is_intertwiner(T, src, tensor(X, X))


def test_decompose_uq_examples():
    ctx = ctx_new(5)
    for i in range(5):
        assert decompose_uq(make_simple_uq(i, ctx)).summands == (Simple(i),)
    X = make_simple_uq(2, ctx)
    res = decompose_uq(tensor(X, X))
    assert res.status == "certified"
    assert res.counter() == Counter([Simple(4), Simple(0)])
    ctx3 = ctx_new(3)
    Y = make_simple_uq(1, ctx3)
    assert decompose_uq(tensor(Y, Y)).counter() == Counter([Simple(2), Simple(0)])


@pytest.mark.parametrize("n", [3, 5, 6])
def test_decompose_uq_certificates_are_real(n):
    from uqplus.tensorops import build_summand

    ctx = ctx_new(n)
    d = ctx.d
    for i in range(d):
        for j in range(i, d):
            rep = tensor(make_simple_uq(i, ctx), make_simple_uq(j, ctx))
            res = decompose_uq(rep)
            assert res.status == "certified"
            assert res.total_dim(d) == rep.dim
            model = direct_sum(*(build_summand(s, ctx) for s in res.summands))
            T = res.intertwiner
            assert T.is_invertible() and is_intertwiner(T, model, rep)


def test_clebsch_gordan_uq_examples():
    ctx = ctx_new(5)
    res = clebsch_gordan_uq(0, 0, ctx)
    assert res["prediction"].summands == (Simple(0),) and res["consistent"]
    res = clebsch_gordan_uq(2, 2, ctx)
    assert res["prediction"].counter() == Counter([Simple(4), Simple(0)]) and res["consistent"]
    res = clebsch_gordan_uq(1, 1, ctx)
    assert res["case"] == "e-even"
    assert res["prediction"].total_dim(5) == 21
    assert not res["dimension_audit"] and not res["consistent"]
    assert res["oracle"].status == "certified"
    assert res["oracle"].total_dim(5) == 16
    assert res["oracle"].counter() == Counter([Simple(0), Simple(3), TildeP(2)])


def test_decomposition_result_json():
    res = DecompositionResult((Plus(1, 2), Simple(0)))
    data = res.to_json()
    assert data["summands"] == ["1:2", "simple(0)"]
