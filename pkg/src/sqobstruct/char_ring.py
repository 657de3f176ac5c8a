"""Stiefel-Whitney class rings H*(BO_k; F2) and H*(BSO_k; F2) with the
Steenrod action given by the Wu formula and the Cartan formula.

A monomial is a length-k tuple of exponents, slot ``i - 1`` holding the
exponent of ``w_i``.  A polynomial is a frozenset of such tuples (F2
coefficients, so addition is symmetric difference).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from ._expr import IntPoly, parse_int_poly
from .steenrod import SqWord, SteenrodElement, binom2

SWMonomial = tuple[int, ...]


class DegreeCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class RingContext:
    """F2[w_1..w_k] (or F2[w_2..w_k] when oriented), tracked up to degree_cap."""

    k: int
    oriented: bool = False
    degree_cap: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"rank must be at least 1, got {self.k}")
        if self.degree_cap is None:
            object.__setattr__(self, "degree_cap", 2 * self.k + 2)
        if self.degree_cap < self.k:
            raise ValueError(f"degree_cap {self.degree_cap} below rank {self.k}")

    @property
    def generators(self) -> range:
        return range(2 if self.oriented else 1, self.k + 1)

    def is_generator(self, j: int) -> bool:
        return j in self.generators

    def monomial(self, exps: Mapping[int, int]) -> SWMonomial | None:
        """Exponent map -> monomial tuple, or None if it is the zero class here."""
        out = [0] * self.k
        for j, e in exps.items():
            if e < 0:
                raise ValueError(f"negative exponent for w{j}")
            if e == 0 or j == 0:
                continue
            if not self.is_generator(j):
                return None
            out[j - 1] += e
        return tuple(out)

    def zero(self) -> SWPolynomial:
        return SWPolynomial(frozenset(), self)

    def one(self) -> SWPolynomial:
        return SWPolynomial(frozenset({(0,) * self.k}), self)

    def w(self, j: int) -> SWPolynomial:
        if j == 0:
            return self.one()
        if not 0 < j <= self.k:
            raise ValueError(f"w{j} is not a generator of BO_{self.k}")
        m = self.monomial({j: 1})
        return SWPolynomial(frozenset() if m is None else frozenset({m}), self)

    def poly(self, *monomials: Mapping[int, int]) -> SWPolynomial:
        acc: set[SWMonomial] = set()
        for exps in monomials:
            m = self.monomial(exps)
            if m is not None:
                acc ^= {m}
        return SWPolynomial(frozenset(acc), self)

    def parse(self, text: str) -> SWPolynomial:
        return parse_sw(text, self)

    def __str__(self) -> str:
        base = "BSO" if self.oriented else "BO"
        return f"{base}_{self.k}"


def mono_degree(m: SWMonomial) -> int:
    return sum((i + 1) * e for i, e in enumerate(m))


def _mono_mul(a: SWMonomial, b: SWMonomial) -> SWMonomial:
    return tuple(x + y for x, y in zip(a, b))


def _set_mul(a: Iterable[SWMonomial], b: Iterable[SWMonomial]) -> set[SWMonomial]:
    out: set[SWMonomial] = set()
    b = list(b)
    for ma in a:
        for mb in b:
            out ^= {_mono_mul(ma, mb)}
    return out


@dataclass(frozen=True)
class SWPolynomial:
    terms: frozenset[SWMonomial]
    ctx: RingContext = field(compare=True)

    def __post_init__(self):
        for m in self.terms:
            if len(m) != self.ctx.k:
                raise ValueError(f"monomial {m} does not fit {self.ctx}")
            if self.ctx.oriented and m[0]:
                raise ValueError(f"w1 appears in oriented context {self.ctx}")
            d = mono_degree(m)
            if d > self.ctx.degree_cap:
                raise DegreeCapExceeded(
                    f"degree {d} exceeds the cap {self.ctx.degree_cap} of {self.ctx}")

    @property
    def degrees(self) -> set[int]:
        return {mono_degree(m) for m in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        degs = self.degrees
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
        return next(iter(degs))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: SWPolynomial):
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: SWPolynomial) -> SWPolynomial:
        self._check(other)
        return SWPolynomial(self.terms ^ other.terms, self.ctx)

    __sub__ = __add__

    def __mul__(self, other: SWPolynomial) -> SWPolynomial:
        self._check(other)
        return SWPolynomial(frozenset(_set_mul(self.terms, other.terms)), self.ctx)

    def __pow__(self, n: int) -> SWPolynomial:
        out = self.ctx.one()
        for _ in range(n):
            out = out * self
        return out

    def divisible_by(self, j: int) -> bool:
        """Every monomial contains w_j."""
        return all(m[j - 1] >= 1 for m in self.terms)

    def quotient(self, j: int) -> SWPolynomial:
        """Divide every monomial by w_j (requires divisible_by(j))."""
        if not self.divisible_by(j):
            raise ValueError(f"{self} is not divisible by w{j}")
        out = set()
        for m in self.terms:
            lst = list(m)
            lst[j - 1] -= 1
            out.add(tuple(lst))
        return SWPolynomial(frozenset(out), self.ctx)

    def sorted_terms(self) -> list[SWMonomial]:
        return sorted(self.terms, key=_order_key, reverse=True)

    def __str__(self) -> str:
        return format_poly(self)


def _order_key(m: SWMonomial):
    return (mono_degree(m), tuple(reversed(m)))


def format_monomial(m: SWMonomial) -> str:
    parts = []
    for i in range(len(m), 0, -1):
        e = m[i - 1]
        if e == 1:
            parts.append(f"w{i}")
        elif e > 1:
            parts.append(f"w{i}^{e}")
    return "*".join(parts) or "1"


def format_poly(p: SWPolynomial, factor: int | None = None) -> str:
    """Canonical text: graded-lex, highest generator most significant.

    With ``factor=j`` and every term divisible by w_j, a sum is printed as
    ``wj*(...)`` in the style ``w11*(w10*w3 + w9*w2^2)``.
    """
    if p.is_zero():
        return "0"
    if factor is not None and len(p.terms) > 1 and p.divisible_by(factor):
        return f"w{factor}*({format_poly(p.quotient(factor))})"
    return " + ".join(format_monomial(m) for m in p.sorted_terms())


_W_NAME = re.compile(r"^w(\d+)$")


def _from_int_poly(ip: IntPoly, ctx: RingContext, rename) -> SWPolynomial:
    acc: set[SWMonomial] = set()
    for mono, coeff in ip.items():
        if coeff % 2 == 0:
            continue
        exps: dict[int, int] = {}
        for name, e in mono:
            for j, mult in rename(name):
                exps[j] = exps.get(j, 0) + mult * e
        m = ctx.monomial(exps)
        if m is not None:
            acc ^= {m}
    return SWPolynomial(frozenset(acc), ctx)


def parse_sw(text: str, ctx: RingContext) -> SWPolynomial:
    """Parse ``w11*w6*w3 + w11*w2^4``; integer coefficients are reduced mod 2."""

    def rename(name: str):
        m = _W_NAME.match(name)
        if m is None:
            raise ValueError(f"unknown symbol {name!r}; expected w<i>")
        j = int(m.group(1))
        if j > ctx.k:
            # w_j with j > k is the zero class; keep it so the monomial dies
            return [(j, 1)]
        return [(j, 1)] if j else []

    return _from_int_poly(parse_int_poly(text), ctx, rename)


# --- the Steenrod action -------------------------------------------------


@lru_cache(maxsize=None)
def _sq_gen_terms(i: int, j: int, ctx: RingContext) -> frozenset[SWMonomial]:
    if i > j:
        return frozenset()
    if i == 0:
        m = ctx.monomial({j: 1})
        return frozenset() if m is None else frozenset({m})
    if i == j:
        m = ctx.monomial({j: 2})
        return frozenset() if m is None else frozenset({m})
    acc: set[SWMonomial] = set()
    # Wu: Sq^i w_j = sum_t C(j - i + t - 1, t) w_{i-t} w_{j+t}
    for t in range(i + 1):
        if not binom2(j - i + t - 1, t):
            continue
        m = ctx.monomial({i - t: 1, j + t: 1} if i - t != j + t else {j + t: 2})
        if m is not None:
            acc ^= {m}
    return frozenset(acc)


def sq_generator(i: int, j: int, ctx: RingContext) -> SWPolynomial:
    """Sq^i(w_j) via the unstable axioms and the Wu formula."""
    if i < 0:
        raise ValueError(f"negative square Sq^{i}")
    if not ctx.is_generator(j):
        raise ValueError(f"w{j} is not a generator of {ctx}")
    if i <= j and j + i > ctx.degree_cap:
        raise DegreeCapExceeded(f"Sq^{i} w{j} lands above the cap of {ctx}")
    return SWPolynomial(_sq_gen_terms(i, j, ctx), ctx)


# The action kernel works on packed monomials: the exponent of w_i sits in
# bits [W(i-1), Wi) with W wide enough for any exponent below the degree
# cap, so multiplying monomials is integer addition.


def _width(ctx: RingContext) -> int:
    return ctx.degree_cap.bit_length() + 1


def _pack(m: SWMonomial, w: int) -> int:
    return sum(e << (w * i) for i, e in enumerate(m) if e)


def _unpack(x: int, k: int, w: int) -> SWMonomial:
    mask = (1 << w) - 1
    return tuple((x >> (w * i)) & mask for i in range(k))


def _toggle_products(out: set[int], a: Iterable[int], b: Iterable[int]) -> None:
    b = tuple(b)
    for x in a:
        for y in b:
            s = x + y
            if s in out:
                out.remove(s)
            else:
                out.add(s)


@lru_cache(maxsize=None)
def _gen_total_packed(j: int, ctx: RingContext) -> tuple[frozenset[int], ...]:
    w = _width(ctx)
    return tuple(frozenset(_pack(m, w) for m in _sq_gen_terms(i, j, ctx))
                 for i in range(j + 1))


@lru_cache(maxsize=None)
def _total_square(x: int, ctx: RingContext) -> tuple[frozenset[int], ...]:
    """Components Sq^0 m, Sq^1 m, ... of a packed monomial, truncated at the cap."""
    w = _width(ctx)
    m = _unpack(x, ctx.k, w)
    d = mono_degree(m)
    if d == 0:
        return (frozenset({x}),)
    top = min(d, ctx.degree_cap - d)
    j = max(i + 1 for i, e in enumerate(m) if e)
    rest_t = _total_square(x - (1 << (w * (j - 1))), ctx)
    comps: list[set[int]] = [set() for _ in range(top + 1)]
    for a, ga in enumerate(_gen_total_packed(j, ctx)):
        if a > top:
            break
        if not ga:
            continue
        for b, rb in enumerate(rest_t):
            if a + b > top:
                break
            if rb:
                _toggle_products(comps[a + b], ga, rb)
    return tuple(frozenset(c) for c in comps)


def _sq_terms(n: int, terms: Iterable[SWMonomial], ctx: RingContext) -> frozenset[SWMonomial]:
    w = _width(ctx)
    acc: set[int] = set()
    for m in terms:
        comps = _total_square(_pack(m, w), ctx)
        if n < len(comps):
            acc ^= comps[n]
    return frozenset(_unpack(x, ctx.k, w) for x in acc)


def sq_poly(n: int, p: SWPolynomial) -> SWPolynomial:
    """Sq^n p: the degree (deg p + n) part of the multiplicative total square."""
    if n < 0:
        raise ValueError(f"negative square Sq^{n}")
    if not p.is_homogeneous:
        raise ValueError(f"Sq^{n} needs a homogeneous polynomial; degrees {sorted(p.degrees)}")
    d = p.degree
    if d is None or n > d:
        return p.ctx.zero()
    if d + n > p.ctx.degree_cap:
        raise DegreeCapExceeded(
            f"Sq^{n} of a degree-{d} class exceeds the cap {p.ctx.degree_cap} of {p.ctx}")
    return SWPolynomial(_sq_terms(n, p.terms, p.ctx), p.ctx)


def apply_word(w: SqWord | Iterable[int], p: SWPolynomial) -> SWPolynomial:
    idx = w.indices if isinstance(w, SqWord) else tuple(w)
    for i in reversed(idx):
        p = sq_poly(i, p)
    return p


def apply_steenrod(e: SteenrodElement | SqWord, p: SWPolynomial) -> SWPolynomial:
    """Apply an F2-sum of words, each right to left."""
    if isinstance(e, SqWord):
        return apply_word(e, p)
    acc = p.ctx.zero()
    for w in e.terms:
        acc = acc + apply_word(w, p)
    return acc


# --- Pontryagin classes ----------------------------------------------------


_P_NAME = re.compile(r"^p(\d+)$")


@dataclass(frozen=True)
class PontryaginExpression:
    """Integer polynomial in p_1, p_2, ... (deg 4i) and the Thom class t."""

    terms: tuple[tuple[tuple[str, int], ...], ...]
    coeffs: tuple[int, ...]

    @classmethod
    def from_int_poly(cls, ip: IntPoly) -> PontryaginExpression:
        items = sorted(ip.items())
        for mono, _ in items:
            for name, _e in mono:
                if name != "t" and _P_NAME.match(name) is None:
                    raise ValueError(f"unknown symbol {name!r}; expected t or p<i>")
                if name == "p0":
                    raise ValueError("Pontryagin indices start at 1")
        return cls(tuple(m for m, _ in items), tuple(c for _, c in items))

    @property
    def max_index(self) -> int:
        return max((int(n[1:]) for m in self.terms for n, _ in m if n != "t"), default=0)

    def degrees(self, k: int) -> set[int]:
        return {
            sum((k if n == "t" else 4 * int(n[1:])) * e for n, e in m)
            for m in self.terms
        }

    def __str__(self) -> str:
        out = ""
        for mono, c in zip(self.terms, self.coeffs):
            if c == 0:
                continue
            body = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            mag = abs(c)
            term = body if mag == 1 and body else (f"{mag}*{body}" if body else str(mag))
            if not out:
                out = term if c > 0 else f"-{term}"
            else:
                out += f" + {term}" if c > 0 else f" - {term}"
        return out or "0"


def parse_pontryagin(text: str) -> PontryaginExpression:
    """Parse ``t*(p1^2 - 2*p2)``."""
    return PontryaginExpression.from_int_poly(parse_int_poly(text))


def reduce_pontryagin(expr: PontryaginExpression | str, ctx: RingContext) -> SWPolynomial:
    """Mod 2 reduction: p_i -> w_{2i}^2, t -> w_k, coefficients mod 2."""
    if isinstance(expr, str):
        expr = parse_pontryagin(expr)
    if not ctx.oriented:
        raise ValueError("Pontryagin reduction needs an oriented context")
    if 2 * expr.max_index > ctx.k:
        raise ValueError(f"p{expr.max_index} is out of range for {ctx}")

    def rename(name: str):
        if name == "t":
            return [(ctx.k, 1)]
        return [(2 * int(name[1:]), 2)]

    ip = dict(zip(expr.terms, expr.coeffs))
    return _from_int_poly(ip, ctx, rename)
