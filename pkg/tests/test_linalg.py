from __future__ import annotations

import cmath
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from uqplus.cyclo import ctx_new
from uqplus.linalg import Matrix, solve_affine


def to_complex(M: Matrix) -> np.ndarray:
    z = cmath.exp(2j * cmath.pi / M.ctx.n)
    out = np.zeros(M.shape, dtype=complex)
    for r, c, x in M.entries():
        out[r, c] = sum(float(a) * z**k for k, a in enumerate(x.coefficients()))
    return out


def random_matrix(ctx, rows, cols, rng, density=0.6, rational=False):
    M = Matrix.zeros(ctx, rows, cols)
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                if rational:
                    M[r, c] = ctx.scalar(rng.randint(-3, 3))
                else:
                    M[r, c] = ctx.from_coeffs([rng.randint(-2, 2) for _ in range(ctx.degree)])
    return M


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), rows=st.integers(1, 6), cols=st.integers(1, 6))
def test_rank_and_det_against_sympy(seed, rows, cols):
    ctx = ctx_new(5)
    rng = random.Random(seed)
    M = random_matrix(ctx, rows, cols, rng, rational=True)
    S = sympy.Matrix([[int(M[r, c].coefficients()[0]) for c in range(cols)] for r in range(rows)])
    assert M.rank() == S.rank()
    if rows == cols:
        assert M.det() == int(S.det())


@pytest.mark.parametrize("n", [3, 5, 8])
def test_cyclotomic_det_numeric(n):
    ctx = ctx_new(n)
    rng = random.Random(n)
    for size in range(1, 5):
        M = random_matrix(ctx, size, size, rng)
        det = M.det()
        z = cmath.exp(2j * cmath.pi / n)
        val = sum(float(a) * z**k for k, a in enumerate(det.coefficients()))
        assert abs(val - np.linalg.det(to_complex(M))) < 1e-6 * (1 + abs(val))


@pytest.mark.parametrize("n", [3, 7])
def test_inverse_nullspace_consistency(n):
    ctx = ctx_new(n)
    rng = random.Random(11)
    for _ in range(10):
        size = rng.randint(1, 5)
        M = random_matrix(ctx, size, size, rng)
        if M.is_invertible():
            assert M @ M.inverse() == Matrix.identity(ctx, size)
            assert M.inverse() @ M == Matrix.identity(ctx, size)
        else:
            assert M.det().is_zero()
        A = random_matrix(ctx, rng.randint(1, 4), rng.randint(2, 6), rng)
        kernel = A.nullspace()
        assert len(kernel) + A.rank() == A.ncols
        for v in kernel:
            assert not A.apply(v)


def test_kron_and_block_diag_shapes():
    ctx = ctx_new(3)
    A = Matrix.from_dense(ctx, [[1, 2], [3, 4]])
    B = Matrix.identity(ctx, 3)
    K = A.kron(B)
    assert K.shape == (6, 6)
    assert K[3, 0] == 3 and K[4, 1] == 3 and K[0, 1] == 0
    D = A.block_diag(B)
    assert D.shape == (5, 5) and D[2, 2] == 1 and D[0, 2] == 0
    assert (A @ A).to_dense() == Matrix.from_dense(ctx, [[7, 10], [15, 22]]).to_dense()
    assert A.transpose()[0, 1] == 3


def test_solve_affine():
    ctx = ctx_new(5)
    # x0 + x1 = 2, x1 - x2 = q
    eqs = [({0: ctx.one, 1: ctx.one}, 2), ({1: ctx.one, 2: -ctx.one}, ctx.q)]
    part, kernel = solve_affine(ctx, eqs, 3)
    assert part is not None and len(kernel) == 1
    x = [part.get(k, ctx.zero) for k in range(3)]
    assert x[0] + x[1] == 2 and x[1] - x[2] == ctx.q
    inconsistent = [({0: ctx.one}, 1), ({0: ctx.one}, 2)]
    part, _ = solve_affine(ctx, inconsistent, 1)
    assert part is None
