from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import t_mul, t_word
from sqobstruct.steenrod import (
    NonHomogeneousError,
    SqWord,
    SteenrodElement,
    adem_expand,
    adem_normalize,
    admissible_words,
    binom2,
    excess,
    format_element,
    gsz_candidates,
    parse_element,
    parse_word,
    serre_generators,
)

words = st.lists(st.integers(min_value=1, max_value=8), min_size=1, max_size=4).map(
    lambda xs: SqWord(tuple(xs)))


def test_binom2_matches_math_comb():
    for m in range(40):
        for n in range(-2, 42):
            expected = comb(m, n) % 2 if 0 <= n <= m else 0
            assert binom2(m, n) == expected, (m, n)


def test_small_relations():
    assert format_element(adem_normalize(parse_word("Sq1.Sq1"))) == "0"
    assert format_element(adem_normalize(parse_word("Sq1.Sq10"))) == "Sq11"
    assert format_element(adem_normalize(parse_word("Sq2.Sq2"))) == "Sq3.Sq1"
    assert format_element(adem_normalize(parse_word("Sq1.Sq2"))) == "Sq3"
    assert format_element(adem_normalize(parse_word("Sq2.Sq3"))) == "Sq4.Sq1 + Sq5"
    assert format_element(adem_normalize(parse_word("Sq3.Sq2"))) == "0"


def test_adem_expand_rejects_admissible_pair():
    with pytest.raises(ValueError):
        adem_expand(4, 2)
    with pytest.raises(ValueError):
        adem_expand(0, 3)


def test_sq1_sq_even_and_odd():
    # Sq1 Sq^{2m} = Sq^{2m+1}; Sq1 Sq^{2m+1} = 0
    for m in range(1, 12):
        assert adem_normalize(SqWord((1, 2 * m))) == SteenrodElement.of((2 * m + 1,))
        assert adem_normalize(SqWord((1, 2 * m + 1))).is_zero()


def test_parse_roundtrip():
    e = parse_element("Sq4.Sq2 + Sq6 + Sq5.Sq1")
    assert parse_element(format_element(e)) == e
    assert parse_element("Sq2 + Sq2").is_zero()
    assert parse_word("Sq0.Sq3.Sq0") == SqWord((3,))
    assert parse_element("1") == SteenrodElement.one()
    with pytest.raises(ValueError):
        parse_word("Sq2.Xq1")


def test_nonhomogeneous_rejected():
    with pytest.raises(NonHomogeneousError):
        adem_normalize(parse_element("Sq2 + Sq3"))


def test_excess():
    assert excess((4, 2, 1)) == 1
    assert excess(SqWord((6, 2))) == 4
    assert excess(()) == 0
    assert SqWord((6, 2)).is_admissible
    assert not SqWord((2, 2)).is_admissible


@settings(max_examples=150, deadline=None)
@given(words)
def test_normal_form_is_admissible_and_idempotent(w):
    nf = adem_normalize(w)
    assert all(t.is_admissible for t in nf)
    assert all(t.degree == w.degree for t in nf)
    assert adem_normalize(nf) == nf


@settings(max_examples=150, deadline=None)
@given(words)
def test_excess_bounded_by_first_index(w):
    assert excess(w) <= w.indices[0]
    if w.is_admissible:
        # excess as sum of (i_j - 2 i_{j+1}) over the admissible word
        idx = w.indices + (0,)
        assert excess(w) == sum(idx[j] - 2 * idx[j + 1] for j in range(len(w.indices)))


@settings(max_examples=80, deadline=None)
@given(words, words)
def test_normalization_is_multiplicative(u, v):
    left = adem_normalize(SteenrodElement.of(u) * SteenrodElement.of(v))
    right = adem_normalize(adem_normalize(u) * adem_normalize(v))
    assert left == right


def _oracle_action(e: SteenrodElement, poly) -> frozenset:
    out: set = set()
    for w in e:
        out ^= t_word(w.indices, poly)
    return frozenset(out)


def test_normal_form_acts_like_the_word_on_products_of_lines():
    # x = t1 t2 t3 t4 t5 t6 is detecting in degree 6: Sq^I x for admissible I
    # of excess <= 6 are linearly independent, so this checks the relation
    # itself and not only some consequence of it.
    x = frozenset({(1,) * 6})
    for d in range(1, 11):
        for w in _all_words(d):
            assert _oracle_action(adem_normalize(w), x) == t_word(w.indices, x), w


def test_admissible_words_are_independent_on_lines():
    x = frozenset({(1,) * 6})
    seen = {}
    for w in admissible_words(10, max_excess=7):
        img = t_word(w.indices, x)
        assert img, w
        seen.setdefault(w.degree, []).append(img)
    for imgs in seen.values():
        assert _f2_rank(imgs) == len(imgs)


def _f2_rank(polys) -> int:
    monos = sorted({m for p in polys for m in p})
    rows = [sum(1 << monos.index(m) for m in p) for p in polys]
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
    return rank


def _all_words(d: int):
    if d == 0:
        yield SqWord(())
        return
    for first in range(1, d + 1):
        for rest in _all_words(d - first):
            yield SqWord((first,) + rest.indices)


def test_composite_action_on_lines():
    x = frozenset({(1, 0)})
    y = frozenset({(0, 2)})
    xy = t_mul(x, y)
    assert t_word((2, 2), xy) == t_word((3, 1), xy)


# --- Serre and GSZ enumerations -----------------------------------------------


def test_serre_k3_d10():
    got = [str(w) for w in serre_generators(3, 10)]
    assert got == ["1", "Sq1", "Sq2", "Sq2.Sq1", "Sq3.Sq1", "Sq4.Sq2", "Sq4.Sq2.Sq1"]


def test_serre_below_k_is_empty():
    assert serre_generators(5, 4) == []
    assert [str(w) for w in serre_generators(1, 5)] == ["1"]


def test_gsz_k3():
    assert [str(w) for w in gsz_candidates(3, 14)] == ["Sq2.Sq1", "Sq4.Sq2.Sq1"]
    with pytest.raises(ValueError):
        gsz_candidates(1, 10)


def test_gsz_candidates_have_odd_square():
    # |J| + k even and j_1 != 1 for every candidate
    for k in range(2, 6):
        for w in gsz_candidates(k, 24):
            assert w.indices[0] != 1
            assert (w.degree + k) % 2 == 0
            assert excess(w) < k


def test_idempotent_on_every_word_through_degree_12():
    for d in range(1, 13):
        for w in _all_words(d):
            nf = adem_normalize(w)
            assert all(t.is_admissible and t.degree == d for t in nf)
            assert adem_normalize(nf) == nf


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=12), min_size=2, max_size=5)
       .filter(lambda xs: sum(xs) <= 24))
def test_idempotent_through_degree_24(xs):
    nf = adem_normalize(SqWord(tuple(xs)))
    assert adem_normalize(nf) == nf
    assert all(t.degree == sum(xs) for t in nf)
