"""R-matrix actions, commutativity isomorphisms and the non-quasi-cocommutativity certificate.

For u_q modules X, Y the map tau R : X (x) Y -> Y (x) X (flip after R) is
an isomorphism of u_q modules.  A u_q^+ module M_i^u whose length u is the
length of some simple u_q module splits as S_a (x) X with X extendable; the
maps c_{U,V} are tau R transported along these splittings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from uqplus.algebra import (
    AlgebraElement,
    TensorElement,
    comultiply,
    delta_op,
    r_matrix,
)
from uqplus.cyclo import CycloContext, ctx_new, qfactorial
from uqplus.linalg import Echelon, Matrix
from uqplus.reps import ModuleRep, make_module, make_simple_uq, simple_length
from uqplus.tensorops import is_intertwiner, tensor


class MissingGeneratorError(ValueError):
    """A tensor element involves F but a module carries no F-action."""


@dataclass
class LinearMap:
    source: ModuleRep
    target: ModuleRep
    matrix: Matrix

    def is_intertwiner(self) -> bool:
        return is_intertwiner(self.matrix, self.source, self.target)

    def is_invertible(self) -> bool:
        return self.matrix.is_invertible()


# ---------------------------------------------------------------------------
# evaluating tensor elements on modules


def _monomial_matrix(rep: ModuleRep, mono, cache: dict) -> Matrix:
    if mono in cache:
        return cache[mono]
    a, b, c = mono
    if c and not rep.has_F:
        raise MissingGeneratorError(f"module {rep.label} has no F-action")
    M = (rep.E ** a) @ rep.K(b)
    if c:
        M = M @ (rep.F ** c)
    cache[mono] = M
    return M


def act_tensor_element(t: TensorElement, a: ModuleRep, b: ModuleRep) -> LinearMap:
    """The operator by which a 2-fold tensor element acts on a (x) b."""
    ctx = a.ctx
    ca: dict = {}
    cb: dict = {}
    out = Matrix.zeros(ctx, a.dim * b.dim)
    for (m1, m2), coeff in t.terms.items():
        A = _monomial_matrix(a, m1, ca)
        B = _monomial_matrix(b, m2, cb)
        if A.is_zero() or B.is_zero():
            continue
        out = out + A.kron(B).scale(coeff)
    mod = tensor(a, b)
    return LinearMap(mod, mod, out)


def flip_matrix(ctx: CycloContext, dim_a: int, dim_b: int) -> Matrix:
    """x (x) y -> y (x) x in the row-major tensor bases."""
    P = Matrix.zeros(ctx, dim_a * dim_b)
    for i in range(dim_a):
        for j in range(dim_b):
            P.rows[j * dim_a + i][i * dim_b + j] = ctx.one
    return P


@lru_cache(maxsize=None)
def _r_matrix_cached(n: int) -> TensorElement:
    return r_matrix(ctx_new(n))


def tau_r(x: ModuleRep, y: ModuleRep) -> LinearMap:
    """flip o R : x (x) y -> y (x) x."""
    ctx = x.ctx
    R = act_tensor_element(_r_matrix_cached(ctx.n), x, y).matrix
    M = flip_matrix(ctx, x.dim, y.dim) @ R
    return LinearMap(tensor(x, y), tensor(y, x), M)


def r_action_closed(x: ModuleRep, y: ModuleRep) -> Matrix:
    """R on x (x) y via the collapsed sum over the K-exponents.

    On weight vectors with weights wa, wb the sums over i and j collapse to
    R(v (x) w) = sum_k (q-q^-1)^k/[k]! q^(k(k-1)/2 + 2(k+wa)(wb-k)) E^k v (x) F^k w.
    Used as an independent check of ``act_tensor_element``.
    """
    ctx = x.ctx
    d = ctx.d
    qq = ctx.q - ctx.qpow(-1)
    out = Matrix.zeros(ctx, x.dim * y.dim)
    Ek = Matrix.identity(ctx, x.dim)
    Fk = Matrix.identity(ctx, y.dim)
    for k in range(d):
        pref = qq**k / qfactorial(k, ctx)
        ph = k * (k - 1) // 2
        block = Ek.kron(Fk)
        scale = Matrix.diagonal(
            ctx,
            [
                ctx.qpow(ph + 2 * (k + wa) * (wb - k))
                for wa in x.weights
                for wb in y.weights
            ],
        )
        out = out + (block @ scale).scale(pref)
        Ek = x.E @ Ek
        Fk = y.F @ Fk
    return out


# ---------------------------------------------------------------------------
# commutativity isomorphisms on the orbit of the extendable modules


def orbit_base(u: int, d: int) -> int | None:
    """Smallest i0 with -2 i0 = u mod d (so M_i0^u is extendable), or None."""
    for i0 in range(d):
        if (-2 * i0) % d == u:
            return i0
    return None


def in_orbit(u: int, d: int) -> bool:
    return orbit_base(u, d) is not None


@dataclass(frozen=True)
class Word:
    """A tensor word U_1 (x) ... (x) U_r of orbit modules, as labels (i, u)."""

    labels: tuple[tuple[int, int], ...]

    def parts(self, d):
        out = []
        for i, u in self.labels:
            i0 = orbit_base(u, d)
            if i0 is None:
                raise ValueError(f"M({i},{u}) is outside the orbit of the extendable modules")
            out.append(((i - i0) % d, i0, u))
        return out


def _word_module(word: Word, ctx) -> ModuleRep:
    mods = [make_module(i, u, ctx) for i, u in word.labels]
    out = mods[0]
    for m in mods[1:]:
        out = tensor(out, m)
    return out


def _word_core(word: Word, ctx) -> ModuleRep:
    """X_1 (x) ... (x) X_r with X_m the simple u_q module on M_(i0_m)^(u_m)."""
    parts = word.parts(ctx.d)
    out = make_simple_uq(parts[0][1], ctx)
    for _, i0, _ in parts[1:]:
        out = tensor(out, make_simple_uq(i0, ctx))
    return out


def _word_phase(word: Word, ctx) -> Matrix:
    """Phi: U_1(x)...(x)U_r -> S (x) X_1 (x) ... (x) X_r, diagonal in the product basis.

    Moving S_(a_m) to the front past X_k (k < m) costs q^(-2 a_m j_k) on a
    basis vector whose k-th index is j_k.
    """
    parts = word.parts(ctx.d)
    dims = [u + 1 for _, _, u in parts]
    entries = []

    def rec(pos, idx):
        if pos == len(dims):
            expo = 0
            for m in range(len(idx)):
                for k in range(m):
                    expo += parts[m][0] * idx[k]
            entries.append(ctx.qpow(-2 * expo))
            return
        for j in range(dims[pos]):
            rec(pos + 1, idx + [j])

    rec(0, [])
    return Matrix.diagonal(ctx, entries)


def braiding_words(A: Word, B: Word, ctx: CycloContext) -> LinearMap:
    """c_{A,B}: A (x) B -> B (x) A for tensor words of orbit modules."""
    AB = Word(A.labels + B.labels)
    BA = Word(B.labels + A.labels)
    core = tau_r(_word_core(A, ctx), _word_core(B, ctx)).matrix
    phase_in = _word_phase(AB, ctx)
    phase_out = _word_phase(BA, ctx)
    out_inv = Matrix.diagonal(ctx, [x.inverse() for x in _diag(phase_out)])
    M = out_inv @ core @ phase_in
    return LinearMap(_word_module(AB, ctx), _word_module(BA, ctx), M)


def _diag(M: Matrix):
    return [M[r, r] for r in range(M.nrows)]


def braiding_iso(u_label, v_label, ctx: CycloContext) -> LinearMap:
    """c_{U,V}: U (x) V -> V (x) U for U = M_i^u, V = M_j^v in the orbit.

    For d even only odd-dimensional modules (u, v even) are in the orbit;
    other requests raise ValueError.
    """
    d = ctx.d
    (i, u), (j, v) = u_label, v_label
    for w in (u, v):
        if not in_orbit(w, d):
            raise ValueError(
                f"length {w} is outside the orbit of the extendable modules for d={d}"
            )
    return braiding_words(Word(((i % d, u),)), Word(((j % d, v),)), ctx)


def _kron_id_left(dim: int, M: Matrix) -> Matrix:
    return Matrix.identity(M.ctx, dim).kron(M)


def _kron_id_right(M: Matrix, dim: int) -> Matrix:
    return M.kron(Matrix.identity(M.ctx, dim))


def check_braid_identities(u, v, w, ctx: CycloContext) -> dict:
    """Evaluate the three braiding identities for U, V, W given as labels (i, u).

        c_{U,V(x)W} = (id_V (x) c_{U,W}) (c_{U,V} (x) id_W)
        c_{U(x)V,W} = (c_{U,W} (x) id_V) (id_U (x) c_{V,W})
        (c_{V,W} (x) id_U)(id_V (x) c_{U,W})(c_{U,V} (x) id_W)
            = (id_W (x) c_{U,V})(c_{U,W} (x) id_V)(id_U (x) c_{V,W})
    """
    U, V, W = (Word(((x[0] % ctx.d, x[1]),)) for x in (u, v, w))
    dU, dV, dW = (x[1] + 1 for x in (u, v, w))
    cUV = braiding_words(U, V, ctx).matrix
    cUW = braiding_words(U, W, ctx).matrix
    cVW = braiding_words(V, W, ctx).matrix
    c_U_VW = braiding_words(U, Word(V.labels + W.labels), ctx).matrix
    c_UV_W = braiding_words(Word(U.labels + V.labels), W, ctx).matrix
    lhs3 = _kron_id_right(cVW, dU) @ _kron_id_left(dV, cUW) @ _kron_id_right(cUV, dW)
    rhs3 = _kron_id_left(dW, cUV) @ _kron_id_right(cUW, dV) @ _kron_id_left(dU, cVW)
    return {
        "hexagon_left": c_U_VW == _kron_id_left(dV, cUW) @ _kron_id_right(cUV, dW),
        "hexagon_right": c_UV_W == _kron_id_right(cUW, dV) @ _kron_id_left(dU, cVW),
        "yang_baxter": lhs3 == rhs3,
    }


def raw_independence(u: int, v: int, ctx: CycloContext, decide_common: bool = True) -> dict:
    """Does the matrix of c_{M_i^u, M_j^v} depend on (i, j)?

    Reports whether the matrices built by ``braiding_iso`` coincide for all
    index pairs, and decides whether *any* single matrix intertwines
    M_i^u (x) M_j^v -> M_j^v (x) M_i^u for every (i, j) at once, by
    intersecting all those intertwiner spaces.
    """
    d = ctx.d
    mats = {}
    for i in range(d):
        for j in range(d):
            mats[(i, j)] = braiding_iso((i, u), (j, v), ctx).matrix
    first = mats[(0, 0)]
    same = all(M == first for M in mats.values())
    common = common_intertwiners(u, v, ctx) if decide_common else {"dim": None, "invertible": None}
    core = tau_r(make_simple_uq(orbit_base(u, d), ctx), make_simple_uq(orbit_base(v, d), ctx)).matrix
    # undo the diagonal transport: Phi_out c Phi_in^-1 should be tau R on X (x) Y for every (i, j)
    stripped = True
    for (i, j), M in mats.items():
        AB = Word(((i, u), (j, v)))
        BA = Word(((j, v), (i, u)))
        phase_in = _word_phase(AB, ctx)
        in_inv = Matrix.diagonal(ctx, [x.inverse() for x in _diag(phase_in)])
        if _word_phase(BA, ctx) @ M @ in_inv != core:
            stripped = False
            break
    return {
        "u": u,
        "v": v,
        "braiding_iso_matrices_equal": same,
        "distinct_matrices": len({_matrix_key(M) for M in mats.values()}),
        "common_intertwiner_dim": common["dim"],
        "common_invertible_exists": common["invertible"],
        "transported_core_index_free": stripped,
    }


def _matrix_key(M: Matrix):
    return tuple(sorted((r, c, str(x)) for r, c, x in M.entries()))


def common_intertwiners(u: int, v: int, ctx: CycloContext) -> dict:
    """Matrices intertwining M_i^u (x) M_j^v -> M_j^v (x) M_i^u for every (i, j)."""
    from uqplus.linalg import solve_affine

    d = ctx.d
    du, dv = u + 1, v + 1
    size = du * dv
    var = lambda r, s: r * size + s  # noqa: E731
    equations = []
    for i in range(d):
        for j in range(d):
            a = tensor(make_module(i, u, ctx), make_module(j, v, ctx))
            b = tensor(make_module(j, v, ctx), make_module(i, u, ctx))
            for Xa, Xb in ((a.E, b.E), (a.K(), b.K())):
                Xa_cols = Xa.columns()
                for r in range(size):
                    for s in range(size):
                        row: dict = {}
                        for k, x in Xa_cols[s].items():  # (T Xa)[r,s] = T[r,k] Xa[k,s]
                            key = var(r, k)
                            row[key] = row[key] + x if key in row else x
                        for k, x in Xb.rows[r].items():  # (Xb T)[r,s] = Xb[r,k] T[k,s]
                            key = var(k, s)
                            row[key] = row[key] - x if key in row else -x
                        row = {k2: y for k2, y in row.items() if not y.is_zero()}
                        if row:
                            equations.append((row, 0))
    _, kernel = solve_affine(ctx, equations, size * size)
    basis = []
    for vec in kernel:
        T = Matrix.zeros(ctx, size)
        for idx, x in vec.items():
            T.rows[idx // size][idx % size] = x
        basis.append(T)
    invertible = False
    rng = random.Random(0)
    if basis:
        for _ in range(20):
            T = Matrix.zeros(ctx, size)
            for B in basis:
                T = T + B.scale(rng.randint(-10**6, 10**6))
            if T.is_invertible():
                invertible = True
                break
    return {"dim": len(basis), "invertible": invertible, "basis": basis}


# ---------------------------------------------------------------------------
# quasi-cocommutativity


@dataclass
class QccReport:
    n: int
    unknowns: int
    solution_dim: int
    annihilates: bool
    delta_op_nonzero: bool
    detail: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.annihilates and self.delta_op_nonzero

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "unknowns": self.unknowns,
            "solution_dim": self.solution_dim,
            "all_solutions_kill_Delta(E^(d-1))": self.annihilates,
            "Delta_op(E^(d-1))_nonzero": self.delta_op_nonzero,
            "certified": self.certified,
            **self.detail,
        }


def _tensor_basis(ctx, borel: bool):
    d = ctx.d
    monos = [(a, b, 0) for a in range(d) for b in range(d)]
    if not borel:
        monos = [(a, b, c) for a in range(d) for b in range(d) for c in range(d)]
    return [(m1, m2) for m1 in monos for m2 in monos]


def intertwining_equations(ctx, gens, basis):
    """Linear equations on coefficients of R = sum a_t t: Delta^op(x) R = R Delta(x)."""
    index = {t: k for k, t in enumerate(basis)}
    rows: dict[tuple, dict] = {}
    for x in gens:
        left = delta_op(x, ctx)
        right = comultiply(x, ctx)
        for t in basis:
            T = TensorElement(ctx, {t: 1})
            diff = left * T - T * right
            col = index[t]
            for key, c in diff.terms.items():
                row = rows.setdefault((id(x), key), {})
                row[col] = row[col] + c if col in row else c
    return [({k: v for k, v in row.items() if not v.is_zero()}, 0) for row in rows.values()]


def qcc_witness(ctx: CycloContext) -> QccReport:
    """Certify that u_q^+ admits no invertible R with Delta^op = R Delta R^-1.

    Solve Delta^op(x) R = R Delta(x) for x in {K, E} over the d^4 unknown
    coefficients of R in u_q^+ (x) u_q^+, then check that every solution
    kills Delta(E^(d-1)) from the right while Delta^op(E^(d-1)) != 0.
    An invertible solution would give Delta^op(E^(d-1)) = R Delta(E^(d-1)) R^-1 = 0.
    """
    from uqplus.linalg import solve_affine

    d = ctx.d
    basis = _tensor_basis(ctx, borel=True)
    gens = [AlgebraElement.K(ctx), AlgebraElement.E(ctx)]
    eqs = intertwining_equations(ctx, gens, basis)
    _, kernel = solve_affine(ctx, eqs, len(basis))
    top = AlgebraElement.E(ctx) ** (d - 1)
    d_top = comultiply(top, ctx)
    dop_top = delta_op(top, ctx)
    annihilates = True
    for vec in kernel:
        R = TensorElement(ctx, {basis[k]: x for k, x in vec.items()})
        if not (R * d_top).is_zero():
            annihilates = False
            break
    return QccReport(
        ctx.n,
        len(basis),
        len(kernel),
        annihilates,
        not dop_top.is_zero(),
        {"equations": len(eqs)},
    )


def r_matrix_control(ctx: CycloContext) -> dict:
    """Check Delta^op(x) R = R Delta(x) for x in {E, F, K} with the standard truncated R."""
    R = _r_matrix_cached(ctx.n)
    out = {}
    for name, x in (
        ("E", AlgebraElement.E(ctx)),
        ("F", AlgebraElement.F(ctx)),
        ("K", AlgebraElement.K(ctx)),
    ):
        out[name] = delta_op(x, ctx) * R == R * comultiply(x, ctx)
    return out


def r_matrix_control_on_modules(x: ModuleRep, y: ModuleRep) -> bool:
    """tau R intertwines E, F, K from x (x) y to y (x) x."""
    return tau_r(x, y).is_intertwiner()


def simple_length_of(i: int, d: int) -> int:
    return simple_length(i, d)


__all__ = [
    "LinearMap",
    "MissingGeneratorError",
    "act_tensor_element",
    "tau_r",
    "r_action_closed",
    "braiding_iso",
    "braiding_words",
    "check_braid_identities",
    "raw_independence",
    "common_intertwiners",
    "qcc_witness",
    "r_matrix_control",
    "Word",
    "Echelon",
]
