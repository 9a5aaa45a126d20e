"""The small quantum group u_q(sl2) on its PBW basis E^a K^b F^c.

Relations: E^d = F^d = 0, K^d = 1, KE = q^2 EK, KF = q^-2 FK and
EF - FE = (K - K^-1)/(q - q^-1).  Elements with no F part span the Borel
subalgebra u_q^+, which is a sub-Hopf algebra.

Monomials are triples ``(a, b, c)`` standing for E^a K^b F^c with every
exponent in 0..d-1; K^-1 is stored as K^(d-1).
"""

from __future__ import annotations

from functools import lru_cache

from uqplus.cyclo import CycloContext, CycloNum, ctx_new, qbinom, qfactorial, qint
from uqplus.linalg import solve_affine

Monomial = tuple[int, int, int]

ONE: Monomial = (0, 0, 0)
E_MON: Monomial = (1, 0, 0)
K_MON: Monomial = (0, 1, 0)
F_MON: Monomial = (0, 0, 1)


class AlgebraElement:
    """A linear combination of PBW monomials with CycloNum coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: CycloContext, terms: dict | None = None):
        self.ctx = ctx
        self.terms: dict[Monomial, CycloNum] = {}
        if terms:
            d = ctx.d
            for (a, b, c), x in terms.items():
                if a >= d or c >= d:
                    continue
                x = ctx.scalar(x)
                key = (a, b % d, c)
                prev = self.terms.get(key)
                s = x if prev is None else prev + x
                if s.is_zero():
                    self.terms.pop(key, None)
                else:
                    self.terms[key] = s

    @classmethod
    def monomial(cls, ctx, a=0, b=0, c=0, coeff=1) -> AlgebraElement:
        return cls(ctx, {(a, b, c): coeff})

    @classmethod
    def one(cls, ctx) -> AlgebraElement:
        return cls(ctx, {ONE: 1})

    @classmethod
    def E(cls, ctx) -> AlgebraElement:
        return cls(ctx, {E_MON: 1})

    @classmethod
    def F(cls, ctx) -> AlgebraElement:
        return cls(ctx, {F_MON: 1})

    @classmethod
    def K(cls, ctx, power: int = 1) -> AlgebraElement:
        return cls(ctx, {(0, power % ctx.d, 0): 1})

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement(self.ctx, self.terms)
        _accumulate(out.terms, other.terms)
        return out

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.ctx, {m: -x for m, x in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, s) -> AlgebraElement:
        s = self.ctx.scalar(s)
        return AlgebraElement(self.ctx, {m: x * s for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return pbw_multiply(self, other, self.ctx)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> AlgebraElement:
        out = AlgebraElement.one(self.ctx)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def in_borel(self) -> bool:
        """True when the element lies in u_q^+ (no F in any monomial)."""
        return all(c == 0 for (_, _, c) in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), x in sorted(self.terms.items()):
            parts.append(f"({x})*E^{a}K^{b}F^{c}")
        return " + ".join(parts)


def _accumulate(target: dict, src: dict, scale: CycloNum | None = None) -> None:
    for m, x in src.items():
        if scale is not None:
            x = x * scale
        prev = target.get(m)
        s = x if prev is None else prev + x
        if s.is_zero():
            target.pop(m, None)
        else:
            target[m] = s


# ---------------------------------------------------------------------------
# straightening


@lru_cache(maxsize=None)
def _f_times_epow(x: int, n: int) -> tuple:
    """F E^x written in PBW order, as a tuple of (monomial, coefficient)."""
    ctx = ctx_new(n)
    d = ctx.d
    if x == 0:
        return ((F_MON, ctx.one),)
    # F E^x = E (F E^(x-1)) - (K - K^-1)/(q - q^-1) E^(x-1)
    terms: dict[Monomial, CycloNum] = {}
    for (a, b, c), coeff in _f_times_epow(x - 1, n):
        if a + 1 < d:
            _accumulate(terms, {(a + 1, b, c): coeff})
    inv = (ctx.q - ctx.qpow(-1)).inverse()
    _accumulate(terms, {(x - 1, 1, 0): -(ctx.qpow(2 * (x - 1)) * inv)})
    _accumulate(terms, {(x - 1, d - 1, 0): ctx.qpow(-2 * (x - 1)) * inv})
    return tuple(terms.items())


@lru_cache(maxsize=None)
def _mono_mul(m1: Monomial, m2: Monomial, n: int) -> tuple:
    ctx = ctx_new(n)
    d = ctx.d
    a, b, c = m1
    x, y, z = m2
    if c == 0:
        # E^a K^b E^x = q^(2bx) E^(a+x) K^b
        if a + x >= d:
            return ()
        return (((a + x, (b + y) % d, z), ctx.qpow(2 * b * x)),)
    if x == 0:
        # F^c K^y = q^(2cy) K^y F^c
        if c + z >= d:
            return ()
        return (((a, (b + y) % d, c + z), ctx.qpow(2 * c * y)),)
    # E^a K^b F^(c-1) * (F E^x) * K^y F^z
    right: dict[Monomial, CycloNum] = {}
    for mono, coeff in _f_times_epow(x, n):
        for mono2, coeff2 in _mono_mul(mono, (0, y, z), n):
            _accumulate(right, {mono2: coeff * coeff2})
    out: dict[Monomial, CycloNum] = {}
    left = (a, b, c - 1)
    for mono, coeff in right.items():
        for mono2, coeff2 in _mono_mul(left, mono, n):
            _accumulate(out, {mono2: coeff * coeff2})
    return tuple(out.items())


def mono_mul(m1: Monomial, m2: Monomial, ctx: CycloContext) -> dict[Monomial, CycloNum]:
    return dict(_mono_mul(m1, m2, ctx.n))


def pbw_multiply(a: AlgebraElement, b: AlgebraElement, ctx: CycloContext) -> AlgebraElement:
    """Product of two elements, straightened to PBW order."""
    out: dict[Monomial, CycloNum] = {}
    n = ctx.n
    for m1, x in a.terms.items():
        for m2, y in b.terms.items():
            xy = x * y
            for m, z in _mono_mul(m1, m2, n):
                _accumulate(out, {m: xy * z})
    res = AlgebraElement(ctx)
    res.terms = out
    return res


# ---------------------------------------------------------------------------
# tensor powers


class TensorElement:
    """A linear combination of tensor products of PBW monomials.

    Keys are tuples of monomials (one per tensor leg); multiplication is the
    plain legwise product (a (x) b)(a' (x) b') = aa' (x) bb'.
    """

    __slots__ = ("ctx", "terms", "arity")

    def __init__(self, ctx: CycloContext, terms: dict | None = None, arity: int = 2):
        self.ctx = ctx
        self.arity = arity
        self.terms: dict[tuple, CycloNum] = {}
        if terms:
            for key, x in terms.items():
                if len(key) != arity:
                    raise ValueError("tensor key of the wrong arity")
                x = ctx.scalar(x)
                if not x.is_zero():
                    prev = self.terms.get(key)
                    s = x if prev is None else prev + x
                    if s.is_zero():
                        self.terms.pop(key, None)
                    else:
                        self.terms[key] = s

    @classmethod
    def pure(cls, *elements: AlgebraElement) -> TensorElement:
        """x_1 (x) x_2 (x) ... for algebra elements x_k."""
        ctx = elements[0].ctx
        terms: dict[tuple, CycloNum] = {(): ctx.one}
        for el in elements:
            new: dict[tuple, CycloNum] = {}
            for key, x in terms.items():
                for m, y in el.terms.items():
                    _accumulate(new, {key + (m,): x * y})
            terms = new
        out = cls(ctx, arity=len(elements))
        out.terms = terms
        return out

    @classmethod
    def one(cls, ctx, arity: int = 2) -> TensorElement:
        return cls(ctx, {(ONE,) * arity: 1}, arity)

    def __add__(self, other: TensorElement) -> TensorElement:
        out = TensorElement(self.ctx, self.terms, self.arity)
        _accumulate(out.terms, other.terms)
        return out

    def __neg__(self) -> TensorElement:
        return TensorElement(self.ctx, {k: -x for k, x in self.terms.items()}, self.arity)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def scale(self, s) -> TensorElement:
        s = self.ctx.scalar(s)
        return TensorElement(self.ctx, {k: x * s for k, x in self.terms.items()}, self.arity)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        n = self.ctx.n
        out: dict[tuple, CycloNum] = {}
        for k1, x in self.terms.items():
            for k2, y in other.terms.items():
                partial: dict[tuple, CycloNum] = {(): x * y}
                for m1, m2 in zip(k1, k2):
                    prods = _mono_mul(m1, m2, n)
                    if not prods:
                        partial = {}
                        break
                    new: dict[tuple, CycloNum] = {}
                    for key, c in partial.items():
                        for m, z in prods:
                            _accumulate(new, {key + (m,): c * z})
                    partial = new
                _accumulate(out, partial)
        res = TensorElement(self.ctx, arity=self.arity)
        res.terms = out
        return res

    def __pow__(self, k: int) -> TensorElement:
        out = TensorElement.one(self.ctx, self.arity)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def in_borel(self) -> bool:
        return all(m[2] == 0 for key in self.terms for m in key)

    def flip(self) -> TensorElement:
        """Swap the two legs of a 2-fold tensor."""
        if self.arity != 2:
            raise ValueError("flip is defined for two legs")
        return TensorElement(
            self.ctx, {(b, a): x for (a, b), x in self.terms.items()}, 2
        )

    def coefficient(self, *key) -> CycloNum:
        return self.terms.get(tuple(key), self.ctx.zero)

    def __repr__(self) -> str:
        return f"TensorElement(arity={self.arity}, terms={len(self.terms)})"


# ---------------------------------------------------------------------------
# Hopf structure


def _delta_generators(ctx: CycloContext):
    E = AlgebraElement.E(ctx)
    F = AlgebraElement.F(ctx)
    K = AlgebraElement.K(ctx)
    one = AlgebraElement.one(ctx)
    Kinv = AlgebraElement.K(ctx, -1)
    dE = TensorElement.pure(one, E) + TensorElement.pure(E, K)
    dF = TensorElement.pure(Kinv, F) + TensorElement.pure(F, one)
    dK = TensorElement.pure(K, K)
    return dE, dK, dF


@lru_cache(maxsize=None)
def _delta_mono(mono: Monomial, n: int) -> TensorElement:
    ctx = ctx_new(n)
    a, b, c = mono
    if mono == ONE:
        return TensorElement.one(ctx)
    dE, dK, dF = _delta_generators(ctx)
    # peel one generator at a time so that smaller monomials are reused
    if c > 0:
        return _delta_mono((a, b, c - 1), n) * dF
    if b > 0:
        return _delta_mono((a, b - 1, 0), n) * dK
    return _delta_mono((a - 1, 0, 0), n) * dE


def comultiply(x: AlgebraElement, ctx: CycloContext) -> TensorElement:
    """Delta(x), with Delta(E) = 1(x)E + E(x)K, Delta(F) = K^-1(x)F + F(x)1, Delta(K) = K(x)K."""
    out = TensorElement(ctx)
    for mono, coeff in x.terms.items():
        _accumulate(out.terms, _delta_mono(mono, ctx.n).terms, coeff)
    return out


def apply_legwise(t: TensorElement, fn, ctx: CycloContext) -> TensorElement:
    """Apply a linear map AlgebraElement -> TensorElement to one leg.

    ``fn`` is a pair ``(leg, map)``; the selected leg is replaced by the
    legs of ``map(monomial)``.  Used for (Delta (x) id) and (id (x) Delta).
    """
    leg, mapping = fn
    out: dict[tuple, CycloNum] = {}
    for key, x in t.terms.items():
        image = mapping(AlgebraElement.monomial(ctx, *key[leg]))
        for ikey, y in image.terms.items():
            _accumulate(out, {key[:leg] + ikey + key[leg + 1:]: x * y})
    arity = len(next(iter(out))) if out else t.arity + 1
    res = TensorElement(ctx, arity=arity)
    res.terms = out
    return res


def comultiply_power_closed(gen: str, r: int, ctx: CycloContext) -> TensorElement:
    """Closed form of Delta(E)^r or Delta(F)^r.

    Delta(E)^r = sum_k q^(-k(r-k)) [r choose k] E^k (x) K^k E^(r-k)
    Delta(F)^r = sum_k q^( k(r-k)) [r choose k] F^k K^-(r-k) (x) F^(r-k)
    """
    if not 0 <= r <= ctx.d - 1:
        raise ValueError(f"exponent r={r} outside 0..{ctx.d - 1}")
    d = ctx.d
    out = TensorElement(ctx)
    for k in range(r + 1):
        coeff = qbinom(r, k, ctx)
        if gen == "E":
            coeff = coeff * ctx.qpow(-k * (r - k))
            # K^k E^(r-k) = q^(2k(r-k)) E^(r-k) K^k
            left = (k, 0, 0)
            right = (r - k, k % d, 0)
            coeff = coeff * ctx.qpow(2 * k * (r - k))
        elif gen == "F":
            coeff = coeff * ctx.qpow(k * (r - k))
            # F^k K^-(r-k) = q^(-2k(r-k)) K^-(r-k) F^k
            left = (0, (-(r - k)) % d, k)
            right = (0, 0, r - k)
            coeff = coeff * ctx.qpow(-2 * k * (r - k))
        else:
            raise ValueError(f"generator must be 'E' or 'F', got {gen!r}")
        _accumulate(out.terms, {(left, right): coeff})
    return out


def counit(x: AlgebraElement) -> CycloNum:
    """epsilon(E) = epsilon(F) = 0, epsilon(K) = 1."""
    ctx = x.ctx
    total = ctx.zero
    for (a, _, c), coeff in x.terms.items():
        if a == 0 and c == 0:
            total = total + coeff
    return total


@lru_cache(maxsize=None)
def _antipode_mono(mono: Monomial, n: int) -> AlgebraElement:
    ctx = ctx_new(n)
    a, b, c = mono
    if mono == ONE:
        return AlgebraElement.one(ctx)
    # S(E) = -E K^-1, S(F) = -K F, S(K) = K^-1; S reverses products
    SE = AlgebraElement(ctx, {(1, ctx.d - 1, 0): -1})
    SF = AlgebraElement(ctx, {(0, 1, 1): -1})
    SK = AlgebraElement.K(ctx, -1)
    # E^a K^b F^c -> S(F)^c S(K)^b S(E)^a; peel the rightmost factor first
    if c > 0:
        return SF * _antipode_mono((a, b, c - 1), n)
    if b > 0:
        return SK * _antipode_mono((a, b - 1, 0), n)
    return _antipode_mono((a - 1, 0, 0), n) * SE


def antipode(x: AlgebraElement, ctx: CycloContext) -> AlgebraElement:
    out = AlgebraElement(ctx)
    for mono, coeff in x.terms.items():
        _accumulate(out.terms, _antipode_mono(mono, ctx.n).terms, coeff)
    return out


def multiply_legs(t: TensorElement, ctx: CycloContext) -> AlgebraElement:
    """The multiplication map a (x) b -> ab."""
    out = AlgebraElement(ctx)
    for (m1, m2), x in t.terms.items():
        for m, y in _mono_mul(m1, m2, ctx.n):
            _accumulate(out.terms, {m: x * y})
    return out


def map_leg(t: TensorElement, leg: int, fn, ctx: CycloContext) -> TensorElement:
    """Apply a linear map AlgebraElement -> AlgebraElement on one leg."""
    out: dict[tuple, CycloNum] = {}
    for key, x in t.terms.items():
        image = fn(AlgebraElement.monomial(ctx, *key[leg]))
        for m, y in image.terms.items():
            _accumulate(out, {key[:leg] + (m,) + key[leg + 1:]: x * y})
    res = TensorElement(ctx, arity=t.arity)
    res.terms = out
    return res


def counit_leg(t: TensorElement, leg: int, ctx: CycloContext) -> AlgebraElement:
    """(epsilon (x) id) or (id (x) epsilon) applied to a 2-fold tensor."""
    out = AlgebraElement(ctx)
    for key, x in t.terms.items():
        eps = counit(AlgebraElement.monomial(ctx, *key[leg]))
        if not eps.is_zero():
            _accumulate(out.terms, {key[1 - leg]: x * eps})
    return out


# ---------------------------------------------------------------------------
# commutator and R-matrix


def _commutator_basis_element(m: int, h: int, ctx: CycloContext) -> AlgebraElement:
    q = ctx.q
    inv = (q - ctx.qpow(-1)).inverse()
    el = AlgebraElement.F(ctx) ** (m - h) * AlgebraElement.E(ctx) ** (m - h)
    for j in range(h):
        factor = AlgebraElement(
            ctx, {(0, 1, 0): ctx.qpow(-j) * inv, (0, ctx.d - 1, 0): -(ctx.qpow(j) * inv)}
        )
        el = el * factor
    return el


def commutator_EmFm(m: int, ctx: CycloContext):
    """E^m F^m in PBW form and the coefficients c_0..c_m with

        E^m F^m = sum_h c_h F^(m-h) E^(m-h) prod_{j<h} (K q^-j - K^-1 q^j)/(q - q^-1).

    The c_h are found by solving the linear system in the PBW basis.
    Raises ``ArithmeticError`` if no such expansion exists.
    """
    if not 0 <= m <= ctx.d - 1:
        raise ValueError(f"m={m} outside 0..{ctx.d - 1}")
    target = AlgebraElement.E(ctx) ** m * AlgebraElement.F(ctx) ** m
    basis = [_commutator_basis_element(m, h, ctx) for h in range(m + 1)]
    monos = sorted(set(target.terms).union(*(b.terms for b in basis)))
    equations = []
    for mono in monos:
        coeffs = {h: b.terms[mono] for h, b in enumerate(basis) if mono in b.terms}
        equations.append((coeffs, target.terms.get(mono, ctx.zero)))
    particular, kernel = solve_affine(ctx, equations, m + 1)
    if particular is None:
        raise ArithmeticError(f"E^{m}F^{m} is not in the span of the expansion basis")
    if kernel:
        raise ArithmeticError("expansion basis is degenerate")
    coeffs = [particular.get(h, ctx.zero) for h in range(m + 1)]
    return target, coeffs


def r_matrix(ctx: CycloContext) -> TensorElement:
    """R = 1/d sum_{i,j,k} (q-q^-1)^k/[k]! q^(k(k-1)/2 + 2k(i-j) - 2ij) E^k K^i (x) F^k K^j."""
    d = ctx.d
    qq = ctx.q - ctx.qpow(-1)
    inv_d = ctx.scalar(d).inverse()
    out: dict[tuple, CycloNum] = {}
    for k in range(d):
        pref = qq**k / qfactorial(k, ctx) * inv_d
        for i in range(d):
            for j in range(d):
                expo = k * (k - 1) // 2 + 2 * k * (i - j) - 2 * i * j
                # F^k K^j = q^(2kj) K^j F^k in PBW order
                coeff = pref * ctx.qpow(expo + 2 * k * j)
                _accumulate(out, {((k, i, 0), (0, j, k)): coeff})
    res = TensorElement(ctx)
    res.terms = out
    return res


def delta_op(x: AlgebraElement, ctx: CycloContext) -> TensorElement:
    return comultiply(x, ctx).flip()


__all__ = [
    "AlgebraElement",
    "TensorElement",
    "pbw_multiply",
    "comultiply",
    "comultiply_power_closed",
    "commutator_EmFm",
    "antipode",
    "counit",
    "r_matrix",
    "delta_op",
    "qint",
]
