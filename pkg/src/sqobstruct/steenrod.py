"""The mod 2 Steenrod algebra as formal words in the squares Sq^i.

Words are composites ``Sq^{i1} Sq^{i2} ... Sq^{ir}`` (applied right to left),
elements are F2-linear combinations of words.  Normalisation into the
admissible (Serre-Cartan) basis goes through the Adem relations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class NonHomogeneousError(ValueError):
    """Raised when an operation needs a homogeneous element."""


class RewriteLimitExceeded(RuntimeError):
    pass


def binom2(m: int, n: int) -> int:
    """C(m, n) mod 2 for m >= 0 (Lucas: n must be a bit-subset of m)."""
    if m < 0:
        raise ValueError(f"binom2 needs a non-negative top argument, got {m}")
    if n < 0 or n > m:
        return 0
    return 1 if (m & n) == n else 0


@dataclass(frozen=True, order=True)
class SqWord:
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(i <= 0 for i in idx):
            raise ValueError(f"Steenrod word indices must be positive: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def degree(self) -> int:
        return sum(self.indices)

    @property
    def length(self) -> int:
        return len(self.indices)

    @property
    def is_admissible(self) -> bool:
        idx = self.indices
        return all(idx[j] >= 2 * idx[j + 1] for j in range(len(idx) - 1))

    @property
    def excess(self) -> int:
        return excess(self)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __str__(self) -> str:
        if not self.indices:
            return "1"
        return ".".join(f"Sq{i}" for i in self.indices)

    def __repr__(self) -> str:
        return f"SqWord({self.indices!r})"


def excess(w: SqWord | Iterable[int]) -> int:
    """Sum of (i_j - 2 i_{j+1}) with i_{r+1} = 0; zero for the empty word."""
    idx = tuple(w.indices if isinstance(w, SqWord) else w)
    padded = idx + (0,)
    return sum(padded[j] - 2 * padded[j + 1] for j in range(len(idx)))


@dataclass(frozen=True)
class SteenrodElement:
    """An F2-sum of words; a word present twice cancels."""

    terms: frozenset[SqWord] = frozenset()

    @classmethod
    def of(cls, *words: SqWord | Iterable[int]) -> SteenrodElement:
        acc: set[SqWord] = set()
        for w in words:
            acc ^= {w if isinstance(w, SqWord) else SqWord(tuple(w))}
        return cls(frozenset(acc))

    @classmethod
    def zero(cls) -> SteenrodElement:
        return cls()

    @classmethod
    def one(cls) -> SteenrodElement:
        return cls(frozenset({SqWord(())}))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> set[int]:
        return {w.degree for w in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Common degree of the terms, None for zero; raises if mixed."""
        degs = self.degrees
        if not degs:
            return None
        if len(degs) > 1:
            raise NonHomogeneousError(f"mixed degrees {sorted(degs)} in {self}")
        return next(iter(degs))

    def sorted_terms(self) -> list[SqWord]:
        return sorted(self.terms, key=lambda w: w.indices)

    def __iter__(self) -> Iterator[SqWord]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: SteenrodElement) -> SteenrodElement:
        return SteenrodElement(self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: SteenrodElement) -> SteenrodElement:
        """Composition: (self * other)(p) = self(other(p))."""
        acc: set[SqWord] = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {SqWord(a.indices + b.indices)}
        return SteenrodElement(frozenset(acc))

    def __str__(self) -> str:
        return format_element(self)


def format_element(e: SteenrodElement) -> str:
    if e.is_zero():
        return "0"
    return " + ".join(str(w) for w in e.sorted_terms())


_WORD_RE = re.compile(r"^Sq(\d+)$")


def parse_word(text: str) -> SqWord:
    """Parse ``Sq4.Sq2.Sq1`` (or ``1`` for the identity).  Sq0 factors drop out."""
    text = text.strip()
    if text == "1":
        return SqWord(())
    idx = []
    for part in text.split("."):
        m = _WORD_RE.match(part.strip())
        if m is None:
            raise ValueError(f"bad Steenrod word factor {part.strip()!r} in {text!r}")
        i = int(m.group(1))
        if i:
            idx.append(i)
    return SqWord(tuple(idx))


def parse_element(text: str) -> SteenrodElement:
    """Parse an F2-sum of words joined by ``+``; ``0`` is the zero element."""
    text = text.strip()
    if not text:
        raise ValueError("empty Steenrod element")
    acc: set[SqWord] = set()
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if chunk == "0":
            continue
        acc ^= {parse_word(chunk)}
    return SteenrodElement(frozenset(acc))


def adem_expand(a: int, b: int) -> list[SqWord]:
    """Right-hand side of the Adem relation for Sq^a Sq^b with 0 < a < 2b."""
    if not 0 < a < 2 * b:
        raise ValueError(f"Adem relation needs 0 < a < 2b, got a={a}, b={b}")
    out = []
    for j in range(a // 2 + 1):
        if binom2(b - 1 - j, a - 2 * j):
            out.append(SqWord((a + b - j, j) if j else (a + b,)))
    return out


def _leftmost_inadmissible(idx: tuple[int, ...]) -> int | None:
    for j in range(len(idx) - 1):
        if idx[j] < 2 * idx[j + 1]:
            return j
    return None


def _rewrite_cap(degree: int) -> int:
    return 10_000 + 200 * 2 ** (degree // 2)


_NORMAL_FORMS: dict[SqWord, frozenset[SqWord]] = {}


def _normalize_word(w: SqWord) -> frozenset[SqWord]:
    cached = _NORMAL_FORMS.get(w)
    if cached is not None:
        return cached
    cap = _rewrite_cap(w.degree)
    steps = 0
    pending = {w}
    result: set[SqWord] = set()
    while pending:
        cur = pending.pop()
        known = _NORMAL_FORMS.get(cur)
        if known is not None:
            result ^= known
            continue
        pos = _leftmost_inadmissible(cur.indices)
        if pos is None:
            result ^= {cur}
            continue
        steps += 1
        if steps > cap:
            raise RewriteLimitExceeded(
                f"Adem rewriting of {w} exceeded {cap} steps")
        head, tail = cur.indices[:pos], cur.indices[pos + 2:]
        for mid in adem_expand(cur.indices[pos], cur.indices[pos + 1]):
            # pending is a mod 2 multiset: a repeated word cancels
            pending ^= {SqWord(head + mid.indices + tail)}
    out = frozenset(result)
    _NORMAL_FORMS[w] = out
    return out


def adem_normalize(e: SteenrodElement | SqWord) -> SteenrodElement:
    """Rewrite ``e`` as the unique sum of admissible words."""
    if isinstance(e, SqWord):
        e = SteenrodElement(frozenset({e}))
    if not e.is_homogeneous:
        raise NonHomogeneousError(
            f"adem_normalize needs a homogeneous element; degrees {sorted(e.degrees)}")
    acc: set[SqWord] = set()
    for w in e.terms:
        acc ^= _normalize_word(w)
    return SteenrodElement(frozenset(acc))


def admissible_words(max_degree: int, max_excess: int | None = None) -> list[SqWord]:
    """All admissible words of degree <= max_degree (excess < max_excess if given).

    Built from the last index outwards: a word ending in i extends on the
    left by any j >= 2i.  Excess is i_1 - (i_2 + ... + i_r), which never
    decreases under such an extension, so the excess bound prunes subtrees.
    """
    out = [SqWord(())] if max_excess is None or max_excess > 0 else []

    def grow(idx: tuple[int, ...], deg: int):
        first = idx[0]
        if max_excess is not None and first - (deg - first) >= max_excess:
            return
        out.append(SqWord(idx))
        for j in range(2 * first, max_degree - deg + 1):
            grow((j,) + idx, deg + j)

    for last in range(1, max_degree + 1):
        grow((last,), last)
    return sorted(out, key=lambda w: (w.degree, w.indices))


def serre_generators(k: int, d_max: int) -> list[SqWord]:
    """Admissible I with excess(I) < k and k + |I| <= d_max.

    The classes Sq^I(iota_k) are the polynomial generators of
    H*(K(Z/2, k); F2) through degree d_max.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if d_max < k:
        return []
    return admissible_words(d_max - k, max_excess=k)


def gsz_candidates(k: int, d_max: int) -> list[SqWord]:
    """Nonempty admissible J, excess < k, j_1 != 1, |J| + k even, k + |J| <= d_max.

    For these, (Sq^J iota_k)^2 is not the reduction of an integral class.
    """
    if k <= 1:
        raise ValueError(f"gsz_candidates needs k > 1, got {k}")
    return [
        w for w in serre_generators(k, d_max)
        if w.indices and w.indices[0] != 1 and (w.degree + k) % 2 == 0
    ]
