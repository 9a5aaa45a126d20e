"""Exact arithmetic in the cyclotomic field Q(q), q a primitive n-th root of unity.

Elements are polynomials in q with rational coefficients, reduced modulo the
n-th cyclotomic polynomial.  The reduced form is canonical, so equality is
plain coefficient equality; there is no floating point anywhere in here.

    >>> ctx = ctx_new(3)
    >>> ctx.d
    3
    >>> qint(2, ctx) == -1
    True
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly


class CycloZeroDivisionError(ZeroDivisionError):
    """Raised on division by the zero element of Q(q)."""


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, low degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for t, b in enumerate(den):
                num[k + t] -= c * b
    if any(num[: len(den) - 1]):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(k)))
    return tuple(poly)


class CycloContext:
    """The field Q(q) for q a primitive n-th root of unity (n >= 2, n != 4).

    ``d`` is the order of q**2: n for odd n, n/2 for even n.
    """

    __slots__ = ("n", "d", "phi", "degree", "_mod", "_qpow", "zero", "one")

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"order n={n} must be at least 2")
        if n == 4:
            raise ValueError("order n=4 is excluded")
        self.n = n
        self.d = n if n % 2 else n // 2
        self.phi = cyclotomic_poly(n)
        self.degree = len(self.phi) - 1
        self._mod = fmpq_poly(list(self.phi))
        self.zero = CycloNum(self, fmpq_poly(0))
        self.one = CycloNum(self, fmpq_poly(1))
        x = fmpq_poly([0, 1])
        self._qpow = tuple(
            CycloNum(self, (x**k) % self._mod) for k in range(n)
        )

    def __repr__(self) -> str:
        return f"CycloContext(n={self.n})"

    def __reduce__(self):
        return (ctx_new, (self.n,))

    @property
    def q(self) -> CycloNum:
        return self._qpow[1 % self.n]

    def qpow(self, k: int) -> CycloNum:
        """q**k for any integer k."""
        return self._qpow[k % self.n]

    def scalar(self, value) -> CycloNum:
        """Coerce an int, Fraction or CycloNum into this field."""
        if isinstance(value, CycloNum):
            if value.ctx is not self:
                raise ValueError("elements belong to different cyclotomic fields")
            return value
        if isinstance(value, Fraction):
            return CycloNum(self, fmpq_poly([fmpq(value.numerator, value.denominator)]))
        if isinstance(value, int):
            return CycloNum(self, fmpq_poly([value]))
        raise TypeError(f"cannot coerce {type(value).__name__} into Q(zeta_{self.n})")

    def from_coeffs(self, coeffs) -> CycloNum:
        """Element sum(c_k q**k); coefficients may be ints or Fractions."""
        vals = []
        for c in coeffs:
            c = Fraction(c)
            vals.append(fmpq(c.numerator, c.denominator))
        return CycloNum(self, fmpq_poly(vals) % self._mod)


@lru_cache(maxsize=None)
def ctx_new(n: int) -> CycloContext:
    """Build (and cache) the context for q of order n."""
    return CycloContext(n)


class CycloNum:
    """An element of Q(q), stored as a reduced polynomial in q."""

    __slots__ = ("ctx", "poly")

    def __init__(self, ctx: CycloContext, poly: fmpq_poly):
        self.ctx = ctx
        self.poly = poly

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.ctx is not self.ctx:
                raise ValueError("elements belong to different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.ctx, self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.ctx, self.poly - other.poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.ctx, other.poly - self.poly)

    def __neg__(self):
        return CycloNum(self.ctx, -self.poly)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNum(self.ctx, self.poly * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = self.poly * other.poly
        if prod.degree() >= self.ctx.degree:
            prod = prod % self.ctx._mod
        return CycloNum(self.ctx, prod)

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        if self.poly.is_zero():
            raise CycloZeroDivisionError("inverse of zero in cyclotomic field")
        # Phi_n is irreducible, so gcd(a, Phi_n) = 1 and s*a + t*Phi_n = 1
        g, s, _ = self.poly.xgcd(self.ctx._mod)
        return CycloNum(self.ctx, (s / g.coeffs()[0]) % self.ctx._mod)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.ctx is other.ctx and self.poly == other.poly
        if isinstance(other, (int, Fraction)):
            return self.poly == self.ctx.scalar(other).poly
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.n, tuple(str(c) for c in self.poly.coeffs())))

    def __bool__(self):
        return not self.poly.is_zero()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def coefficients(self) -> list[Fraction]:
        """Coefficient vector of length phi(n), lowest power of q first."""
        out = [Fraction(int(c.p), int(c.q)) for c in self.poly.coeffs()]
        return out + [Fraction(0)] * (self.ctx.degree - len(out))

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def __repr__(self) -> str:
        if self.poly.is_zero():
            return "0"
        return str(self.poly).replace("x", "q")

    def to_json(self) -> dict:
        return {"n": self.ctx.n, "coeffs": [str(c) for c in self.coefficients()]}


def cyclo_arith(a: CycloNum, b: CycloNum, op: str) -> CycloNum:
    """Apply one of ``add``, ``sub``, ``mul``, ``div``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def qint(k: int, ctx: CycloContext) -> CycloNum:
    """The q-integer [k] = (q^k - q^-k)/(q - q^-1).

    Evaluated as q^(k-1) + q^(k-3) + ... + q^(1-k), which needs no division.
    """
    if k < 0:
        return -qint(-k, ctx)
    total = ctx.zero
    for m in range(k):
        total = total + ctx.qpow(k - 1 - 2 * m)
    return total


@lru_cache(maxsize=None)
def _qfactorial(k: int, n: int) -> CycloNum:
    ctx = ctx_new(n)
    if k == 0:
        return ctx.one
    return _qfactorial(k - 1, n) * qint(k, ctx)


def qfactorial(k: int, ctx: CycloContext) -> CycloNum:
    """[k]! = [1][2]...[k]; [0]! = 1."""
    if k < 0:
        raise ValueError("q-factorial of a negative integer")
    return _qfactorial(k, ctx.n)


def qbinom(y: int, x: int, ctx: CycloContext) -> CycloNum:
    """[y]! / ([x]! [y-x]!), the q-binomial choosing x items out of y."""
    if not 0 <= x <= y:
        raise ValueError(f"q-binomial needs 0 <= x <= y, got x={x}, y={y}")
    den = qfactorial(x, ctx) * qfactorial(y - x, ctx)
    if den.is_zero():
        raise CycloZeroDivisionError(
            f"[{x}]![{y - x}]! vanishes at q of order {ctx.n} (d={ctx.d})"
        )
    return qfactorial(y, ctx) / den
