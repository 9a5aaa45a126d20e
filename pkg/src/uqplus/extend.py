"""Promoting u_q^+ modules to u_q modules.

Given E and K, an F-action must satisfy the linear relations
KF = q^-2 FK and EF - FE = (K - K^-1)/(q - q^-1), plus the nonlinear
relation F^d = 0.  The linear part is solved exactly over all dim^2 matrix
entries; F^d = 0 is then tested on a finite, recorded set of points of the
affine solution space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from uqplus.cyclo import CycloContext, qint
from uqplus.linalg import Matrix, solve_affine
from uqplus.reps import (
    ModuleRep,
    extended_projective,
    make_module,
    make_simple_uq,
    simple_length,
    sum_of_modules,
)
from uqplus.tensorops import DEFAULT_SEED, find_isomorphism


@dataclass
class ExtensionSpace:
    """Affine space F0 + span(H_k) of F-actions satisfying the linear relations."""

    base: ModuleRep
    particular: Matrix | None
    homogeneous: list[Matrix]
    nilpotency_report: list[dict] = field(default_factory=list)

    @property
    def solvable(self) -> bool:
        return self.particular is not None

    @property
    def parameters(self) -> int:
        return len(self.homogeneous)

    def point(self, coeffs) -> Matrix:
        F = self.particular
        for c, H in zip(coeffs, self.homogeneous):
            if c:
                F = F + H.scale(c)
        return F

    def module_at(self, coeffs) -> ModuleRep:
        return self.base.with_F(self.point(coeffs), f"ext({self.base.label};{list(coeffs)})")


def _is_nilpotent(F: Matrix, d: int) -> bool:
    return (F ** d).is_zero()


def solve_extensions(rep: ModuleRep, extra_points=()) -> ExtensionSpace:
    """All F with KF = q^-2 FK and [E, F] = (K - K^-1)/(q - q^-1) on ``rep``.

    F^d = 0 is evaluated at F0 and at F0 +- H_k for every direction, plus
    any coefficient vectors passed in ``extra_points``.
    """
    ctx = rep.ctx
    d = ctx.d
    dim = rep.dim
    w = rep.weights
    E = rep.E
    var = lambda r, s: r * dim + s  # noqa: E731  unknown F[r, s]
    equations = []
    # KF = q^-2 FK: entry (r, s) gives (q^(2w_r) - q^(2w_s - 2)) F[r, s] = 0
    for r in range(dim):
        for s in range(dim):
            coeff = ctx.qpow(2 * w[r]) - ctx.qpow(2 * w[s] - 2)
            if not coeff.is_zero():
                equations.append(({var(r, s): coeff}, 0))
    # (EF - FE)[r, s] = delta_rs [2 w_r]
    Ecols = E.columns()
    for r in range(dim):
        for s in range(dim):
            row: dict = {}
            for k, x in E.rows[r].items():  # E[r, k] F[k, s]
                key = var(k, s)
                row[key] = row[key] + x if key in row else x
            for k, x in Ecols[s].items():  # F[r, k] E[k, s]
                key = var(r, k)
                row[key] = row[key] - x if key in row else -x
            row = {k: v for k, v in row.items() if not v.is_zero()}
            rhs = qint(2 * w[r], ctx) if r == s else ctx.zero
            if row or not rhs.is_zero():
                equations.append((row, rhs))
    particular, kernel = solve_affine(ctx, equations, dim * dim)

    def to_matrix(vec) -> Matrix:
        M = Matrix.zeros(ctx, dim)
        for idx, x in vec.items():
            M.rows[idx // dim][idx % dim] = x
        return M

    if particular is None:
        return ExtensionSpace(rep, None, [])
    space = ExtensionSpace(rep, to_matrix(particular), [to_matrix(v) for v in kernel])
    points = [tuple([0] * space.parameters)]
    for k in range(space.parameters):
        for sign in (1, -1):
            pt = [0] * space.parameters
            pt[k] = sign
            points.append(tuple(pt))
    points.extend(tuple(p) for p in extra_points)
    for pt in points:
        space.nilpotency_report.append(
            {"point": list(pt), "F^d=0": _is_nilpotent(space.point(pt), d)}
        )
    return space


def is_extendable_label(i: int, u: int, d: int) -> bool:
    return u == d - 1 or u == simple_length(i, d)


def classify_extendable(n: int, seed: int = DEFAULT_SEED) -> dict:
    """Classify every M_i^u by how many u_q structures it carries.

    Categories: "not extendable", "unique", "two iso-classes",
    "unique-despite-parameter" (a free parameter exists but only one value
    class survives F^d = 0).  For projectives the two representatives
    F e^0 = 0 and F e^0 = e^(d-1) are compared with the isomorphism test.
    """
    from uqplus.cyclo import ctx_new

    ctx = ctx_new(n)
    d = ctx.d
    table = {}
    for i in range(d):
        for u in range(d):
            rep = make_module(i, u, ctx)
            space = solve_extensions(rep)
            entry: dict = {"parameters": space.parameters}
            if not space.solvable:
                entry["class"] = "not extendable"
            elif space.parameters == 0:
                ok = space.nilpotency_report[0]["F^d=0"]
                entry["class"] = "unique" if ok else "not extendable"
                if u < d - 1:
                    entry["matches_simple"] = space.particular == make_simple_uq(i, ctx).F
            else:
                reps = [extended_projective(i, t, ctx) for t in (0, 1)]
                valid = [r for r in reps if _is_nilpotent(r.F, d)]
                entry["representatives_valid"] = [_is_nilpotent(r.F, d) for r in reps]
                # the representatives must lie on the solver's affine family
                entry["on_family"] = all(
                    _in_affine_span(r.F, space) for r in reps
                )
                if len(valid) == 2:
                    T, info = find_isomorphism(valid[0], valid[1], seed)
                    entry["isomorphic"] = T is not None
                    entry["certain"] = info.get("certain", True)
                    entry["class"] = "unique" if T is not None else "two iso-classes"
                    # do distinct nonzero values of F e^0 = t e^(d-1) give isomorphic modules?
                    T12, info12 = find_isomorphism(reps[1], extended_projective(i, 2, ctx), seed)
                    entry["nonzero_values_isomorphic"] = T12 is not None
                    entry["certain"] = entry["certain"] and info12.get("certain", True)
                elif len(valid) == 1:
                    entry["class"] = "unique-despite-parameter"
                else:
                    entry["class"] = "not extendable"
            table[(i, u)] = entry
    return table


def _in_affine_span(F: Matrix, space: ExtensionSpace) -> bool:
    ctx = space.base.ctx
    dim = space.base.dim
    diff = F - space.particular
    equations = []
    for r in range(dim):
        for s in range(dim):
            coeffs = {
                k: H[r, s] for k, H in enumerate(space.homogeneous) if not H[r, s].is_zero()
            }
            if coeffs or not diff[r, s].is_zero():
                equations.append((coeffs, diff[r, s]))
    particular, _ = solve_affine(ctx, equations, space.parameters)
    return particular is not None


def expected_classification(i: int, u: int, d: int) -> str:
    """What the classification theorem predicts for M_i^u."""
    if u == d - 1:
        if d % 2 == 1 and (2 * i) % d == 1:
            return "unique-despite-parameter"
        return "two iso-classes"
    if u == simple_length(i, d):
        return "unique"
    return "not extendable"


def extendable_sum_check(parts, ctx: CycloContext, seed: int = DEFAULT_SEED, grid=(-1, 0, 1, 2)) -> dict:
    """Check that a direct sum extends iff every summand does, and count classes.

    Representative points are all coefficient vectors over ``grid`` (when
    the parameter space is small enough) together with the unit directions.
    Points with F^d != 0 are discarded; the rest are sorted into
    isomorphism classes.
    """
    d = ctx.d
    rep = sum_of_modules(parts, ctx)
    space = solve_extensions(rep)
    expected = all(is_extendable_label(i, u, d) for i, u in parts)
    report: dict = {
        "parts": [f"{i % d}:{u}" for i, u in parts],
        "solvable": space.solvable,
        "expected_solvable": expected,
        "iff_holds": space.solvable == expected,
        "parameters": space.parameters,
    }
    if not space.solvable:
        return report
    k = space.parameters
    if len(grid) ** k <= 256:
        points = list(product(grid, repeat=k))
    else:
        points = [tuple([0] * k)]
        for j in range(k):
            for c in grid:
                if c:
                    pt = [0] * k
                    pt[j] = c
                    points.append(tuple(pt))
    valid = []
    for pt in points:
        F = space.point(pt)
        if _is_nilpotent(F, d):
            valid.append((pt, space.base.with_F(F, f"ext{pt}")))
    # union-find on isomorphism
    classes: list[list] = []
    for pt, mod in valid:
        for cls in classes:
            T, _ = find_isomorphism(cls[0][1], mod, seed)
            if T is not None:
                cls.append((pt, mod))
                break
        else:
            classes.append([(pt, mod)])
    report["points_tested"] = len(points)
    report["valid_points"] = len(valid)
    report["iso_classes"] = len(classes)
    report["class_representatives"] = [list(cls[0][0]) for cls in classes]
    return report
