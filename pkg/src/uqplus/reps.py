"""Explicit matrix models of u_q^+ and u_q modules.

Conventions: a module has basis e_0..e_{dim-1}; ``weights[j] = c`` means
K e_j = q^(2c) e_j with c taken mod d; matrices act on column vectors, so
``E[r, c]`` is the coefficient of e_r in E e_c.

The indecomposable u_q^+ module M_i^u has basis e^0..e^u with
E e^j = e^(j+1) and weight i+j.  S_i = M_i^0 and P_i = M_i^(d-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from uqplus.cyclo import CycloContext, CycloNum, qint
from uqplus.linalg import Matrix


@dataclass(frozen=True)
class ModuleRep:
    """A finite-dimensional module given by weights and E (and maybe F) matrices.

    ``strings`` optionally records a decomposition of the basis into E-strings:
    tuples of basis indices (b_0, ..., b_u) with E b_k = b_(k+1) and E b_u = 0.
    It is filled for modules built from M_i^u blocks and used as a fast path
    by the intertwiner solver; it is never required for correctness.
    """

    ctx: CycloContext
    weights: tuple[int, ...]
    E: Matrix
    F: Matrix | None = None
    label: str = ""
    strings: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def has_F(self) -> bool:
        return self.F is not None

    def K(self, power: int = 1) -> Matrix:
        ctx = self.ctx
        return Matrix.diagonal(ctx, [ctx.qpow(2 * power * c) for c in self.weights])

    def weight_blocks(self) -> dict[int, list[int]]:
        blocks: dict[int, list[int]] = {}
        for idx, c in enumerate(self.weights):
            blocks.setdefault(c, []).append(idx)
        return blocks

    def restrict(self) -> ModuleRep:
        """Forget the F-action."""
        return ModuleRep(self.ctx, self.weights, self.E, None, self.label, self.strings)

    def with_F(self, F: Matrix, label: str | None = None) -> ModuleRep:
        return ModuleRep(
            self.ctx, self.weights, self.E, F,
            self.label if label is None else label, self.strings,
        )

    def summary(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "weights": sorted(self.weights),
            "uq": self.has_F,
        }


def plus_label(i: int, u: int, d: int) -> str:
    return f"{i % d}:{u}"


def make_module(i: int, u: int, ctx: CycloContext) -> ModuleRep:
    """The indecomposable u_q^+ module M_i^u (dimension u+1)."""
    d = ctx.d
    if not 0 <= u <= d - 1:
        raise ValueError(f"length u={u} outside 0..{d - 1}")
    i %= d
    E = Matrix.zeros(ctx, u + 1)
    for j in range(u):
        E.rows[j + 1][j] = ctx.one
    weights = tuple((i + j) % d for j in range(u + 1))
    return ModuleRep(ctx, weights, E, None, f"M({i},{u})", (tuple(range(u + 1)),))


def direct_sum(*mods: ModuleRep, label: str | None = None) -> ModuleRep:
    """Block diagonal sum; F is kept only if every summand has it."""
    ctx = mods[0].ctx
    E = mods[0].E
    weights = list(mods[0].weights)
    keep_F = all(m.has_F for m in mods)
    F = mods[0].F if keep_F else None
    strings: list[tuple[int, ...]] | None = (
        list(mods[0].strings) if mods[0].strings is not None else None
    )
    offset = mods[0].dim
    for m in mods[1:]:
        if m.ctx is not ctx:
            raise ValueError("direct sum of modules over different fields")
        E = E.block_diag(m.E)
        if keep_F:
            F = F.block_diag(m.F)
        weights.extend(m.weights)
        if strings is not None and m.strings is not None:
            strings.extend(tuple(b + offset for b in s) for s in m.strings)
        else:
            strings = None
        offset += m.dim
    if label is None:
        label = " + ".join(m.label for m in mods)
    return ModuleRep(
        ctx, tuple(weights), E, F, label, tuple(strings) if strings is not None else None
    )


def sum_of_modules(parts, ctx: CycloContext) -> ModuleRep:
    """Direct sum of M_i^u for a list of (i, u) pairs."""
    return direct_sum(*(make_module(i, u, ctx) for i, u in parts))


# ---------------------------------------------------------------------------
# relation checks


def _relation_checks(rep: ModuleRep) -> dict[str, bool]:
    ctx = rep.ctx
    d = ctx.d
    dim = rep.dim
    K = rep.K()
    Kinv = rep.K(-1)
    I = Matrix.identity(ctx, dim)
    E = rep.E
    q2 = ctx.qpow(2)
    out = {
        "K^d=1": K ** d == I,
        "E^d=0": (E ** d).is_zero(),
        "KE=q^2EK": K @ E == (E @ K).scale(q2),
    }
    if rep.F is not None:
        F = rep.F
        inv = (ctx.q - ctx.qpow(-1)).inverse()
        out["KF=q^-2FK"] = K @ F == (F @ K).scale(ctx.qpow(-2))
        out["F^d=0"] = (F ** d).is_zero()
        out["EF-FE=(K-K^-1)/(q-q^-1)"] = (E @ F - F @ E) == (K - Kinv).scale(inv)
    return out


def verify_module(rep: ModuleRep) -> dict[str, bool]:
    """Check the defining relations on the representation matrices.

    Returns a mapping relation -> holds.  For u_q^+ modules the relations
    are K^d = 1, E^d = 0 and KE = q^2 EK; with F present the F relations
    and the commutator are checked too.
    """
    if rep.E.shape != (rep.dim, rep.dim):
        raise ValueError("E has the wrong shape")
    if rep.F is not None and rep.F.shape != (rep.dim, rep.dim):
        raise ValueError("F has the wrong shape")
    return _relation_checks(rep)


def is_module(rep: ModuleRep) -> bool:
    return all(verify_module(rep).values())


# ---------------------------------------------------------------------------
# duals


def dual_module(rep: ModuleRep) -> ModuleRep:
    """The dual module with x.f = f(S(x) -) on the dual basis.

    S(K) = K^-1, S(E) = -E K^-1, S(F) = -K F, so the matrices are the
    transposes of those operators.
    """
    ctx = rep.ctx
    d = ctx.d
    weights = tuple((-c) % d for c in rep.weights)
    E = -(rep.E @ rep.K(-1)).transpose()
    F = None
    if rep.F is not None:
        F = -(rep.K() @ rep.F).transpose()
    return ModuleRep(ctx, weights, E, F, f"dual({rep.label})")


# ---------------------------------------------------------------------------
# u_q modules


def lambda_coeffs(i: int, ctx: CycloContext) -> list[CycloNum]:
    """lambda^j = -sum_{h=0..j} [2(i+h)] for j = 0..d-1."""
    out = []
    acc = ctx.zero
    for h in range(ctx.d):
        acc = acc - qint(2 * (i + h), ctx)
        out.append(acc)
    return out


def _lambda_F(i: int, u: int, ctx: CycloContext) -> Matrix:
    lam = lambda_coeffs(i, ctx)
    F = Matrix.zeros(ctx, u + 1)
    for j in range(u):
        if not lam[j].is_zero():
            F.rows[j][j + 1] = lam[j]
    return F


def simple_length(i: int, d: int) -> int:
    return (-2 * i) % d


def make_simple_uq(i: int, ctx: CycloContext) -> ModuleRep:
    """The simple u_q module obtained by extending M_i^u, u = -2i mod d.

    F e^(j+1) = lambda^j e^j and F e^0 = 0.  When u = d-1 (this happens
    for 2i = 1 mod d, d odd) this is the Steinberg module, which is also
    projective.
    """
    d = ctx.d
    i %= d
    u = simple_length(i, d)
    base = make_module(i, u, ctx)
    return base.with_F(_lambda_F(i, u, ctx), f"simple({i})")


def extended_projective(i: int, t, ctx: CycloContext) -> ModuleRep:
    """P_i with F e^(j+1) = lambda^j e^j and F e^0 = t e^(d-1).

    Every value of t satisfies KF = q^-2 FK and the commutator relation;
    F^d = 0 holds iff t * prod(lambda^j) = 0.
    """
    d = ctx.d
    i %= d
    t = ctx.scalar(t)
    base = make_module(i, d - 1, ctx)
    F = _lambda_F(i, d - 1, ctx)
    if not t.is_zero():
        F.rows[d - 1][0] = t
    return base.with_F(F, f"extP({i},{t})")


def tilde_partner(a: int, d: int) -> int:
    """Index of the projective paired with P_a inside a projective u_q module."""
    return (1 - a) % d


def make_tilde_p(a: int, ctx: CycloContext) -> ModuleRep:
    """The 2d-dimensional projective u_q module built on P_a + P_b, b = 1-a.

    With u = -2a mod d, F acts on P_a by the lambda-shift (F e_a^0 = 0) and
    on P_b by the lambda-shift plus the linking term
    F e_b^j += e_a^(u+j) for u+j <= d-1.  The summand P_a carries the
    F-invariant generator.  Rejected when a = b (the Steinberg index).
    """
    d = ctx.d
    a %= d
    b = tilde_partner(a, d)
    if a == b:
        raise ValueError(f"no 2d-dimensional projective at the Steinberg index {a}")
    u = simple_length(a, d)
    Pa = make_module(a, d - 1, ctx)
    Pb = make_module(b, d - 1, ctx)
    base = direct_sum(Pa, Pb)
    F = _lambda_F(a, d - 1, ctx).block_diag(_lambda_F(b, d - 1, ctx))
    for j in range(d):
        if u + j <= d - 1:
            F.rows[u + j][d + j] = F.rows[u + j].get(d + j, ctx.zero) + ctx.one
    return ModuleRep(ctx, base.weights, base.E, F, f"tildeP({a}|{b})", base.strings)


def literal_tilde_p(i: int, ctx: CycloContext) -> ModuleRep:
    """A naive 2d-dimensional construction pairing P_i with P_b, b = -2i mod d.

    F is the lambda-shift on both blocks plus the
    extra term F e_b^j += e_i^(b+j) for j <= (4i-1 mod d).  Kept as a
    diagnostic: for most (n, i) this violates KF = q^-2 FK, which
    ``verify_module`` reports.
    """
    d = ctx.d
    i %= d
    b = (-2 * i) % d
    Pi = make_module(i, d - 1, ctx)
    Pb = make_module(b, d - 1, ctx)
    base = direct_sum(Pi, Pb)
    F = _lambda_F(i, d - 1, ctx).block_diag(_lambda_F(b, d - 1, ctx))
    top = (4 * i - 1) % d
    for j in range(top + 1):
        if b + j <= d - 1:
            F.rows[b + j][d + j] = F.rows[b + j].get(d + j, ctx.zero) + ctx.one
    return ModuleRep(ctx, base.weights, base.E, F, f"literalTildeP({i})", base.strings)
