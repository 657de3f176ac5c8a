"""Dense linear algebra over F_p on small integer vectors."""

from __future__ import annotations

from typing import Sequence

Vector = tuple[int, ...]


def reduce(v: Sequence[int], p: int) -> Vector:
    return tuple(x % p for x in v)


def add(u: Sequence[int], v: Sequence[int], p: int, scale: int = 1) -> Vector:
    return tuple((a + scale * b) % p for a, b in zip(u, v))


def rref(rows: Sequence[Sequence[int]], p: int) -> list[Vector]:
    """Reduced row echelon basis of the row span (zero rows dropped)."""
    work = [list(reduce(r, p)) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    out: list[list[int]] = []
    for col in range(ncols):
        pivot = next((r for r in work if r[col]), None)
        if pivot is None:
            continue
        work.remove(pivot)
        inv = pow(pivot[col], -1, p)
        pivot = [(x * inv) % p for x in pivot]
        for bucket in (work, out):
            for i, r in enumerate(bucket):
                if r[col]:
                    f = r[col]
                    bucket[i] = [(a - f * b) % p for a, b in zip(r, pivot)]
        out.append(pivot)
        work = [r for r in work if any(r)]
    return [tuple(r) for r in out]


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p))


def in_span(v: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> bool:
    if not any(x % p for x in v):
        return True
    return rank(list(basis) + [v], p) == rank(basis, p)


def is_invertible(matrix: Sequence[Sequence[int]], p: int) -> bool:
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        return False
    return rank(matrix, p) == n
