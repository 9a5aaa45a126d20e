"""An axiomatised Grothendieck ring of tensor products.

Generators [i, u] with i in an index group I (trivial, or Z/d) and
u in {0, ..., m-1} (m may be infinite).  Only a few rules are assumed:

    [i, 0] (x) [j, 0] = [i+j, 0]
    [0, 1] (x) [j, v] = [j, v+1] + [j+1, v-1]      (v <= m-2)
    [0, 1] (x) [j, m-1] = [j, m-1] + [j+1, m-1]

together with commutativity and associativity.  ``gr_mul_recursive``
derives every product from these rules by double induction, and
``gr_mul_closed`` evaluates the resulting closed formula; agreement of the
two is the content of the ring-level Clebsch-Gordan statement.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class RingParams:
    """``modulus`` None means the trivial index group; ``m`` None means infinity."""

    modulus: int | None
    m: int | None

    def idx(self, i: int) -> int:
        return 0 if self.modulus is None else i % self.modulus

    def describe(self) -> dict:
        return {
            "index_group": "trivial" if self.modulus is None else f"cyclic({self.modulus})",
            "m": "infinity" if self.m is None else self.m,
        }


class RingElement:
    """Integer combination of generators [i, u]; negative multiplicities allowed."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int], int] = {}
        if terms:
            for key, k in dict(terms).items():
                if k and key[1] >= 0:
                    self.terms[key] = self.terms.get(key, 0) + k
            self.terms = {key: k for key, k in self.terms.items() if k}

    @classmethod
    def gen(cls, i: int, u: int, p: RingParams) -> RingElement:
        if u < 0:
            return cls()
        if p.m is not None and u > p.m - 1:
            raise ValueError(f"generator length {u} exceeds m-1 = {p.m - 1}")
        return cls({(p.idx(i), u): 1})

    def __add__(self, other: RingElement) -> RingElement:
        out = Counter(self.terms)
        out.update(other.terms)
        return RingElement(out)

    def __neg__(self) -> RingElement:
        return RingElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def scale(self, k: int) -> RingElement:
        return RingElement({key: k * v for key, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_effective(self) -> bool:
        return all(v > 0 for v in self.terms.values())

    def as_multiset(self) -> Counter:
        return Counter(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, u), k in sorted(self.terms.items()):
            parts.append(f"{k}*[{i},{u}]" if k != 1 else f"[{i},{u}]")
        return " + ".join(parts)


def _closed_pair(i: int, u: int, j: int, v: int, p: RingParams) -> RingElement:
    terms: Counter = Counter()
    if p.m is not None and u + v > p.m - 1:
        e = u + v - (p.m - 1)
        for l in range(e + 1):
            terms[(p.idx(i + j + l), p.m - 1)] += 1
        for l in range(e + 1, min(u, v) + 1):
            terms[(p.idx(i + j + l), u + v - 2 * l)] += 1
    else:
        for l in range(min(u, v) + 1):
            terms[(p.idx(i + j + l), u + v - 2 * l)] += 1
    return RingElement(terms)


def _bilinear(a: RingElement, b: RingElement, pair) -> RingElement:
    out: Counter = Counter()
    for (i, u), x in a.terms.items():
        for (j, v), y in b.terms.items():
            for key, z in pair(i, u, j, v).terms.items():
                out[key] += x * y * z
    return RingElement(out)


def gr_mul_closed(a: RingElement, b: RingElement, p: RingParams) -> RingElement:
    """Product by the closed formula, extended bilinearly."""
    return _bilinear(a, b, lambda i, u, j, v: _closed_pair(i, u, j, v, p))


def _times_generator_01(x: RingElement, p: RingParams) -> RingElement:
    """[0, 1] (x) x using only the assumed rules."""
    out: Counter = Counter()
    for (j, v), k in x.terms.items():
        if p.m is not None and v == p.m - 1:
            out[(j, v)] += k
            out[(p.idx(j + 1), v)] += k
        else:
            out[(j, v + 1)] += k
            if v >= 1:
                out[(p.idx(j + 1), v - 1)] += k
    return RingElement(out)


@lru_cache(maxsize=None)
def _recursive_pair(i: int, u: int, j: int, v: int, p: RingParams) -> RingElement:
    if u < 0 or v < 0:
        return RingElement()
    if u == 0 and v == 0:
        return RingElement({(p.idx(i + j), 0): 1})
    if u == 0 or v > u:
        return _recursive_pair(j, v, i, u, p)  # commutativity
    # here u >= 1 and u >= v: peel one step off the longer factor using
    # [i, u] = [0,1](x)[i, u-1] - [i+1, u-2], valid because u-1 <= m-2
    first = _times_generator_01(_recursive_pair(i, u - 1, j, v, p), p)
    second = _recursive_pair(p.idx(i + 1), u - 2, j, v, p)
    return first - second


def gr_mul_recursive(a: RingElement, b: RingElement, p: RingParams) -> RingElement:
    """Product derived from the assumed rules by induction (memoised per pair)."""
    return _bilinear(a, b, lambda i, u, j, v: _recursive_pair(i, u, j, v, p))


def instantiate(preset: str) -> RingParams:
    """``uqplus:d`` (or ``uq_plus(d)``) gives (Z/d, d); ``usl2`` and ``uqgeneric`` give (trivial, infinity)."""
    key = preset.strip().lower().replace("_", "")
    if key.startswith("uqplus"):
        rest = key[len("uqplus"):].strip(":()")
        d = int(rest)
        if d < 1:
            raise ValueError("d must be positive")
        return RingParams(d, d)
    if key in ("usl2", "uqgeneric"):
        return RingParams(None, None)
    raise ValueError(f"unknown preset {preset!r}")


def gen(i: int, u: int, p: RingParams) -> RingElement:
    return RingElement.gen(i, u, p)
