"""Linear algebra over F2 with rows packed into Python ints."""

from __future__ import annotations

from typing import Optional, Sequence


def row_reduce(rows: Sequence[int]) -> list[int]:
    """Reduced basis of the row space (pivot = highest set bit)."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis = [min(b, b ^ r) for b in basis]
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def rank(rows: Sequence[int]) -> int:
    return len(row_reduce(rows))


def solve(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> Optional[int]:
    """A solution x (bit j = x_j) of ``<row_i, x> = rhs_i`` or None if inconsistent.

    Each equation is augmented with its right-hand side in bit ``ncols``.
    """
    aug_bit = 1 << ncols
    pivots: dict[int, int] = {}
    for r, s in zip(rows, rhs):
        r |= aug_bit if s & 1 else 0
        for col in sorted(pivots, reverse=True):
            if r >> col & 1:
                r ^= pivots[col]
        body = r & (aug_bit - 1)
        if not body:
            if r:
                return None
            continue
        col = body.bit_length() - 1
        for c, pr in pivots.items():
            if pr >> col & 1:
                pivots[c] = pr ^ r
        pivots[col] = r
    x = 0
    for col, r in pivots.items():
        if r & aug_bit:
            x |= 1 << col
    return x
