from __future__ import annotations

import random
from itertools import product
from math import comb

import pytest

from sqobstruct.fixtures import fixture_path

# --- independent oracle: F2[t_1..t_n] with Sq(t) = t + t^2 -------------------
#
# Polynomials are frozensets of exponent tuples.  On a monomial t^a the total
# square is t^a (1 + t)^a, so Sq^i t^a = C(a, i) t^(a+i); on products the
# Cartan formula distributes i over the variables.  This never touches an
# Adem relation or the Wu formula, which is what makes it an oracle.


def t_sq(i: int, poly: frozenset) -> frozenset:
    out: set = set()
    for mono in poly:
        n = len(mono)
        for split in _compositions(i, n):
            if all(comb(a, s) % 2 for a, s in zip(mono, split)):
                out ^= {tuple(a + s for a, s in zip(mono, split))}
    return frozenset(out)


def t_word(indices, poly: frozenset) -> frozenset:
    for i in reversed(tuple(indices)):
        poly = t_sq(i, poly)
    return poly


def t_mul(p: frozenset, q: frozenset) -> frozenset:
    out: set = set()
    for a in p:
        for b in q:
            out ^= {tuple(x + y for x, y in zip(a, b))}
    return frozenset(out)


def t_elementary(j: int, n: int) -> frozenset:
    """e_j(t_1, ..., t_n) as a t-polynomial."""
    out = set()
    for bits in product((0, 1), repeat=n):
        if sum(bits) == j:
            out.add(bits)
    return frozenset(out)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def fixture():
    return fixture_path


def random_monomial(ctx, rng: random.Random, degree: int):
    """Uniform-ish random monomial of the given degree in ctx (None if impossible)."""
    gens = list(ctx.generators)
    for _ in range(200):
        exps: dict[int, int] = {}
        left = degree
        while left > 0:
            choices = [j for j in gens if j <= left]
            if not choices:
                break
            j = rng.choice(choices)
            exps[j] = exps.get(j, 0) + 1
            left -= j
        if left == 0:
            return ctx.monomial(exps)
    return None


def random_poly(ctx, rng: random.Random, degree: int, terms: int = 4):
    """Random nonzero homogeneous polynomial of the given degree."""
    from sqobstruct.char_ring import SWPolynomial

    for _ in range(100):
        acc: set = set()
        for _ in range(rng.randint(1, terms)):
            m = random_monomial(ctx, rng, degree)
            if m is not None:
                acc ^= {m}
        if acc:
            return SWPolynomial(frozenset(acc), ctx)
    raise ValueError(f"no nonzero class of degree {degree} in {ctx}")


# --- acceptance summary -----------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
