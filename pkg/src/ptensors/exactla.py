"""Exact rank and row-space computations for small integer matrices.

All elimination is fraction-free over Python integers (cross-multiply and
divide rows by their gcd), so ranks are exact rational ranks with no
tolerance anywhere.
"""

from __future__ import annotations

from math import gcd

from .errors import ContractError


def _normalize(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        row = [x // g for x in row]
    return row


def exact_rank(rows) -> int:
    """Rank over the rationals of a matrix given as an iterable of rows."""
    mat = [_normalize([int(x) for x in row]) for row in rows]
    mat = [row for row in mat if any(row)]
    if not mat:
        return 0
    ncols = len(mat[0])
    if any(len(row) != ncols for row in mat):
        raise ContractError("ragged matrix")
    rank = 0
    col = 0
    while mat[rank:] and col < ncols:
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            f = mat[r][col]
            if f:
                mat[r] = _normalize(
                    [p * a - f * b for a, b in zip(mat[r], mat[rank])]
                )
        mat = mat[: rank + 1] + [row for row in mat[rank + 1 :] if any(row)]
        rank += 1
        col += 1
    return rank


def rowspace_equal(rows_a, rows_b) -> bool:
    """Whether two integer matrices span the same rational row space."""
    rows_a = [list(map(int, r)) for r in rows_a]
    rows_b = [list(map(int, r)) for r in rows_b]
    if rows_a and rows_b and len(rows_a[0]) != len(rows_b[0]):
        raise ContractError("row length mismatch between the two spans")
    rank_a = exact_rank(rows_a)
    rank_b = exact_rank(rows_b)
    if rank_a != rank_b:
        return False
    return exact_rank(rows_a + rows_b) == rank_a
